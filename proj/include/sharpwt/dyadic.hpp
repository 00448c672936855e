#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sharpwt {

// Product of half-open intervals [j_i 2^-level, (j_i+1) 2^-level).
struct DyadicCube {
  int level = 0;
  std::vector<std::int64_t> index;

  DyadicCube() = default;
  DyadicCube(int lvl, std::vector<std::int64_t> idx) : level(lvl), index(std::move(idx)) {}

  std::size_t dim() const { return index.size(); }
  double side() const;
  double volume() const;
  double lower(std::size_t i) const;
  double upper(std::size_t i) const;
  double center(std::size_t i) const;

  DyadicCube parent() const;
  // Bit i of `which` picks the upper half along coordinate i.
  DyadicCube child(unsigned which) const;
  std::vector<DyadicCube> children() const;
  // Ancestor or self at a coarser (or equal) level.
  DyadicCube ancestor(int coarser_level) const;
  bool contains(const DyadicCube& other) const;
  bool intersects(const DyadicCube& other) const;

  std::string to_string() const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

inline DyadicCube interval(int level, std::int64_t j) { return DyadicCube(level, {j}); }

// Box with exact dyadic-rational bounds: coordinate i is [lo_i, hi_i) * 2^-scale.
struct ExactBox {
  int scale = 0;
  std::vector<std::int64_t> lo, hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(const ExactBox& other) const;
  bool intersects(const ExactBox& other) const;
  bool nested_or_disjoint(const ExactBox& other) const {
    return !intersects(other) || contains(other) || other.contains(*this);
  }
};

ExactBox as_box(const DyadicCube& q);
// rQ for integer r >= 1, exactly.
ExactBox dilate_exact(const DyadicCube& q, int r);

struct RealCube {
  std::vector<double> center;
  double side = 0.0;

  double lower(std::size_t i) const { return center[i] - side / 2; }
  double upper(std::size_t i) const { return center[i] + side / 2; }
  bool contains_point(const std::vector<double>& x) const;
};

RealCube dilate(const DyadicCube& q, double r);

// Index in {0,...,3^n - 1} of the family containing q; within one family the
// tripled cubes are nested or disjoint.
int family_index(const DyadicCube& q);
int family_count(std::size_t dim);

// Same-level cube of family k with q inside its triple and the triple inside 5q.
DyadicCube companion(const DyadicCube& q, int k);

}  // namespace sharpwt
