#include "qpic/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qpic {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Values may be written TOML-style with surrounding double quotes; one
// matching pair is removed so quoted paths do not leak quote characters
// into filenames.
std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    throw config_error("bad numeric value for '" + key + "': " + v);
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int n = static_cast<int>(std::lround(x));
  if (std::abs(x - n) > 1e-9)
    throw config_error("expected integer for '" + key + "': " + v);
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error("expected boolean for '" + key + "': " + v);
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key,
           const std::string& value) {
  const std::string qual = section + "." + key;
  if (section == "physics") {
    if (key == "alpha_bar") cfg.physics.alpha_bar = to_double(qual, value);
    else if (key == "T") cfg.physics.T = to_double(qual, value);
    else throw config_error("unknown key '" + qual + "'");
  } else if (section == "state") {
    if (key == "a") cfg.state_a = to_double(qual, value);
    else if (key == "b") cfg.state_b = to_double(qual, value);
    else throw config_error("unknown key '" + qual + "'");
  } else if (section == "grid") {
    if (key == "n_steps") cfg.n_steps = to_int(qual, value);
    else throw config_error("unknown key '" + qual + "'");
  } else if (section == "control") {
    if (key == "n_basis") cfg.control.n_basis = to_int(qual, value);
    else if (key == "trust_radius") cfg.control.trust_radius = to_double(qual, value);
    else if (key == "tol_res") cfg.control.tol_res = to_double(qual, value);
    else if (key == "max_iter") cfg.control.max_iter = to_int(qual, value);
    else if (key == "r_max") cfg.control.r_max = to_double(qual, value);
    else if (key == "continuation") cfg.control.continuation = to_bool(qual, value);
    else throw config_error("unknown key '" + qual + "'");
  } else if (section == "asymptotics") {
    if (key == "t_max") cfg.asym_t_max = to_double(qual, value);
    else if (key == "n_steps") cfg.asym_n_steps = to_int(qual, value);
    else throw config_error("unknown key '" + qual + "'");
  } else if (section == "output") {
    if (key == "dir") cfg.out_dir = value;
    else throw config_error("unknown key '" + qual + "'");
  } else {
    throw config_error("unknown section '" + section + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(physics.alpha_bar < 0.0))
    throw domain_error("physics.alpha_bar must be strictly negative");
  if (!(physics.T > 0.0)) throw domain_error("physics.T must be positive");
  if (!(state_a > 0.0) || !(state_b > 0.0))
    throw domain_error("state rates a, b must be positive");
  if (std::abs(state_a - state_b) <= 1e-9 * std::max(state_a, state_b))
    throw domain_error("state rates a, b must differ");
  if (n_steps < 64) throw domain_error("grid.n_steps must be at least 64");
  if (control.n_basis < 2) throw domain_error("control.n_basis must be >= 2");
  if (!(control.trust_radius > 0.0))
    throw domain_error("control.trust_radius must be positive");
  if (!(control.tol_res > 0.0)) throw domain_error("control.tol_res must be positive");
  if (control.max_iter < 1) throw domain_error("control.max_iter must be >= 1");
  if (!(control.r_max > 0.0)) throw domain_error("control.r_max must be positive");
  if (!(asym_t_max > 0.0) || asym_t_max > physics.T)
    throw domain_error("asymptotics.t_max must lie in (0, T]");
  if (asym_n_steps < 64)
    throw domain_error("asymptotics.n_steps must be at least 64");
}

RunConfig parse_config_ini(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("unterminated section header at line " +
                           std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw config_error("empty section name at line " + std::to_string(lineno));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw config_error("empty key or value at line " + std::to_string(lineno));
    if (section.empty())
      throw config_error("key '" + key + "' outside any section");
    apply(cfg, section, key, value);
  }
  return cfg;
}

RunConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("json parse failure: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");
  RunConfig cfg;
  for (auto& [section, body] : j.items()) {
    if (!body.is_object())
      throw config_error("section '" + section + "' must be an object");
    for (auto& [key, val] : body.items()) {
      std::string s;
      if (val.is_string()) s = val.get<std::string>();
      else if (val.is_boolean()) s = val.get<bool>() ? "true" : "false";
      else if (val.is_number_integer())
        s = std::to_string(val.get<long long>());
      else if (val.is_number_float()) {
        std::ostringstream os;
        os.precision(17);
        os << val.get<double>();
        s = os.str();
      } else {
        throw config_error("unsupported value type for '" + section + "." +
                           key + "'");
      }
      apply(cfg, section, key, s);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const bool is_json =
      path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  RunConfig cfg = is_json ? parse_config_json(text) : parse_config_ini(text);
  cfg.validate();
  return cfg;
}

}  // namespace qpic
