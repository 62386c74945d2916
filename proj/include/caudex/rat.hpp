#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace caudex {

using Int = boost::multiprecision::cpp_int;

// Exact rational scores. Denominators grow past 64 bits quickly
// (a 22-player Shapley computation needs 22!), hence cpp_int.
using Rat = boost::rational<Int>;

// Canonical "p/q" with q > 0, fully reduced; integers render as "n/1".
std::string to_string(const Rat& r);

// Accepts "p/q", a bare integer, or a plain decimal such as "0.25".
Rat rat_from_string(std::string_view text);

double to_double(const Rat& r);

std::string to_decimal_string(const Rat& r, int digits = 12);

Int factorial(int n);

Int binomial(int n, int k);

} // namespace caudex
