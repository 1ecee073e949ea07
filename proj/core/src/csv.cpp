#include "selchow/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace selchow {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const csv_table& table, const std::string& path) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw parse_error("cannot open output file: " + tmp.string());
    auto emit = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
      }
      out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
    out.flush();
    if (!out) throw parse_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace selchow
