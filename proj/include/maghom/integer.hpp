#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace maghom {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

inline std::string to_string(const Integer& x) { return x.str(); }

// Rewrites a list of cyclic group orders as invariant factors
// d_1 | d_2 | ... with every d_i > 1. Entries equal to 0 or 1 are dropped.
inline std::vector<Integer> invariant_factors(std::vector<Integer> orders) {
  std::erase_if(orders, [](const Integer& d) { return d == 0 || abs_value(d) == 1; });
  for (auto& d : orders) d = abs_value(d);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      Integer g = gcd(orders[i], orders[j]);
      Integer l = orders[i] / g * orders[j];
      orders[i] = g;
      orders[j] = l;
    }
  }
  std::erase_if(orders, [](const Integer& d) { return d == 1; });
  return orders;
}

}  // namespace maghom
