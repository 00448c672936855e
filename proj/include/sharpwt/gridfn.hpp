#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sharpwt/dyadic.hpp"

namespace sharpwt {

struct CellRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  bool contains(const CellRange& o) const { return o.begin >= begin && o.end <= end; }
  friend bool operator==(const CellRange&, const CellRange&) = default;
};

// Step function on [origin, origin + 2^L) with 2^(L+s) cells of width 2^-s,
// extended by zero. The origin is stored as a whole number of cells.
class GridFunction {
 public:
  GridFunction(int level_L, int resolution_s, std::int64_t origin_cells, std::vector<double> values);

  static GridFunction zeros(int level_L, int resolution_s, std::int64_t origin_cells = 0);
  // `average(a, b)` returns the mean of the target function over [a, b).
  static GridFunction from_averages(int level_L, int resolution_s, std::int64_t origin_cells,
                                    const std::function<double(double, double)>& average);

  int level() const { return level_; }
  int resolution() const { return resolution_; }
  std::int64_t origin_cells() const { return origin_cells_; }
  double origin() const;
  double cell_width() const { return h_; }
  double length() const;
  std::size_t size() const { return values_.size(); }

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double cell_left(std::size_t i) const;
  double cell_center(std::size_t i) const;
  DyadicCube cell_cube(std::size_t i) const;

  // True when the domain itself is a dyadic interval.
  bool dyadic_domain() const;
  DyadicCube domain_cube() const;

  // Cells covered by a dyadic interval that is aligned to the grid and inside the domain.
  CellRange cells_of(const DyadicCube& q) const;
  DyadicCube cube_of(const CellRange& r) const;
  CellRange all() const { return {0, size()}; }
  double measure(const CellRange& r) const { return static_cast<double>(r.size()) * h_; }

  double integral(const CellRange& r) const;
  double abs_integral(const CellRange& r) const;
  // Integral of |f| over [a, b) for arbitrary reals, zero outside the domain.
  double abs_integral_between(double a, double b) const;
  double average(const CellRange& r) const { return integral(r) / measure(r); }

  bool same_grid(const GridFunction& other) const;
  GridFunction with_values(std::vector<double> v) const;
  GridFunction refined(int extra_levels) const;
  // Same function on a larger domain (pads with zeros); the new domain must contain the old.
  GridFunction embedded(int level_L, std::int64_t origin_cells) const;

 private:
  int level_;
  int resolution_;
  std::int64_t origin_cells_;
  double h_;
  std::vector<double> values_;
  std::vector<long double> prefix_, abs_prefix_;
};

struct MassPoint {
  double value;
  double mass;
};

// Distinct values on r in increasing order with their measures.
std::vector<MassPoint> mass_points(const GridFunction& f, const CellRange& r);

// Equal-mass samples, t measured in cells.
double sample_rearrangement(std::span<const double> values, double t_cells);
// Among all medians (both strict level sets at most half the mass) the one closest to
// zero. Equals the lower median when that is non-negative; with this choice
// |median| never exceeds the rearrangement at half the mass.
double sample_median(std::span<const double> values);
double sample_osc(std::span<const double> values, double lambda);
double sorted_osc(std::span<const double> sorted, double lambda);

double rearrangement_value(const GridFunction& f, const CellRange& r, double t);
double rearrangement_value(const GridFunction& f, const DyadicCube& q, double t);
double median(const GridFunction& f, const CellRange& r);
double median(const GridFunction& f, const DyadicCube& q);
double local_osc(const GridFunction& f, const CellRange& r, double lambda);
double local_osc(const GridFunction& f, const DyadicCube& q, double lambda);

// Per cell, max of local_osc over dyadic subcubes of q0 containing the cell; zero off q0.
GridFunction local_sharp_max_dyadic(const GridFunction& f, const DyadicCube& q0, double lambda);

}  // namespace sharpwt
