#pragma once

#include <string>
#include <vector>

#include "selchow/errors.hpp"

namespace selchow {

// 17 significant digits (round-trippable doubles).
std::string format_number(double x);

struct csv_table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Writes header + rows; atomic via a temporary file renamed into place.
void write_csv(const csv_table& table, const std::string& path);

}  // namespace selchow
