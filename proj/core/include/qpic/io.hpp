#pragma once

#include <string>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"

namespace qpic {

// All writers go through a temp-file-plus-rename so readers never observe a
// half-written result. Numbers are printed with %.17g (round-trip exact).

void write_text_atomic(const std::string& path, const std::string& content);

// Header "t,re,im", one row per grid node.
void write_series_csv(const std::string& path, const TimeGrid& g,
                      const std::vector<cplx>& v);

// Header "r,re,im", one row per radius.
void write_radial_csv(const std::string& path, const std::vector<double>& r,
                      const std::vector<cplx>& v);

// Free-form numeric table under a caller-provided header line.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows);

std::string format_g17(double x);

}  // namespace qpic
