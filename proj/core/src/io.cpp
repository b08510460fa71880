#include "qpic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qpic {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw config_error("write failure on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw config_error("cannot move " + tmp + " into place");
}

void write_series_csv(const std::string& path, const TimeGrid& g,
                      const std::vector<cplx>& v) {
  if (int(v.size()) != g.size())
    throw domain_error("write_series_csv: series/grid size mismatch");
  std::ostringstream out;
  out << "t,re,im\n";
  for (int j = 0; j < g.size(); ++j)
    out << format_g17(g.node(j)) << ',' << format_g17(v[j].real()) << ','
        << format_g17(v[j].imag()) << '\n';
  write_text_atomic(path, out.str());
}

void write_radial_csv(const std::string& path, const std::vector<double>& r,
                      const std::vector<cplx>& v) {
  if (r.size() != v.size())
    throw domain_error("write_radial_csv: radius/value size mismatch");
  std::ostringstream out;
  out << "r,re,im\n";
  for (std::size_t j = 0; j < r.size(); ++j)
    out << format_g17(r[j]) << ',' << format_g17(v[j].real()) << ','
        << format_g17(v[j].imag()) << '\n';
  write_text_atomic(path, out.str());
}

void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_g17(row[i]);
    }
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

}  // namespace qpic
