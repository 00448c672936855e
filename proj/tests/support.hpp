#pragma once

#include <cmath>
#include <vector>

#include "sharpwt/corpus.hpp"
#include "sharpwt/gridfn.hpp"

namespace testsupport {

inline std::vector<double> random_values(sharpwt::Rng& rng, std::size_t n, int distinct = 0) {
  std::vector<double> v(n);
  for (auto& x : v) x = distinct > 0 ? static_cast<double>(rng.below(static_cast<std::size_t>(distinct))) - distinct / 2
                                     : rng.normal();
  return v;
}

inline sharpwt::GridFunction on_unit(std::vector<double> v) {
  int s = 0;
  while ((std::size_t{1} << s) < v.size()) ++s;
  return sharpwt::GridFunction(0, s, 0, std::move(v));
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol * (1 + std::fabs(a) + std::fabs(b)); }

}  // namespace testsupport
