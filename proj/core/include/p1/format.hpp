#pragma once

#include <string>
#include <vector>

namespace p1 {

// 15 significant digits, "nan", "inf", "-inf"; -0 prints as 0.
std::string fmt(double x);

// Comma-joined row with a trailing newline.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace p1
