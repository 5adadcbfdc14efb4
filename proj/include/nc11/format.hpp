#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace nc11 {

// Six significant digits, as used for every CSV cell.
inline std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

inline double percent(double fraction) { return 100.0 * fraction; }

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const {
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

}  // namespace nc11
