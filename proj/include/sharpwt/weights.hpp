#pragma once

#include <map>
#include <vector>

#include "sharpwt/gridfn.hpp"

namespace sharpwt {

class Weight {
 public:
  // Dual prefix sums (of w^{-1/(p-1)}) are precomputed for each p in `cached_ps`.
  explicit Weight(GridFunction base, const std::vector<double>& cached_ps = {});

  const GridFunction& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  double operator[](std::size_t i) const { return base_[i]; }

  double mass(const CellRange& r) const;
  double dual_mass(const CellRange& r, double p) const;
  // Prefix sums of cell values (not multiplied by the cell width).
  const std::vector<long double>& prefix() const { return prefix_; }
  std::vector<long double> dual_prefix(double p) const;

 private:
  GridFunction base_;
  std::vector<long double> prefix_;
  std::map<double, std::vector<long double>> dual_;
};

// |x - center|^exponent sampled by exact cell averages.
struct PowerWeightSpec {
  double exponent = 0.0;
  double center = 0.0;

  double average(double a, double b) const;
  GridFunction sample(int level_L, int resolution_s, std::int64_t origin_cells) const;
};

// Sup of (avg w)(avg w^{-1/(p-1)})^{p-1} over aligned intervals of 2^m cells at every position.
double ap_characteristic(const Weight& w, double p);
// Same functional over every interval of whole cells; O(N^2).
double ap_characteristic_exhaustive(const Weight& w, double p);

// Sup over the same test family of (1/w(Q)) * integral over Q of M(w 1_Q).
double ainfty_fujii(const Weight& w);

double weighted_lp_norm(const GridFunction& f, const Weight& w, double p);

}  // namespace sharpwt
