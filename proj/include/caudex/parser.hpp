#pragma once

#include "caudex/query.hpp"

#include <string_view>

namespace caudex {

// Parses a program of CQ/UCQ rules, denial constraints, and inclusion
// dependencies. '%' starts a line comment. Errors carry line/column.
Program parse(std::string_view text);

} // namespace caudex
