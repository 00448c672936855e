#include <doctest.h>

#include <cmath>

#include "sharpwt/dyadic.hpp"

using namespace sharpwt;

namespace {

std::vector<DyadicCube> intervals_in(int lo_level, int hi_level, double a, double b) {
  std::vector<DyadicCube> out;
  for (int k = lo_level; k <= hi_level; ++k) {
    const double side = std::ldexp(1.0, -k);
    for (auto j = static_cast<std::int64_t>(std::floor(a / side)); static_cast<double>(j) * side < b; ++j)
      out.push_back(interval(k, j));
  }
  return out;
}

}  // namespace

TEST_CASE("cube geometry") {
  const DyadicCube q = interval(2, 3);
  CHECK(q.side() == 0.25);
  CHECK(q.lower(0) == 0.75);
  CHECK(q.upper(0) == 1.0);
  CHECK(q.parent() == interval(1, 1));
  for (const auto& c : q.children()) CHECK(c.parent() == q);
  CHECK(interval(-1, -1).lower(0) == -2.0);
  CHECK(interval(-1, -1).children()[0] == interval(0, -2));
  CHECK(interval(0, 0).contains(interval(3, 7)));
  CHECK_FALSE(interval(0, 0).contains(interval(3, 8)));
  CHECK(interval(3, 7).ancestor(0) == interval(0, 0));

  const DyadicCube sq(1, {1, -1});
  CHECK(sq.volume() == 0.25);
  CHECK(sq.children().size() == 4);
  for (const auto& c : sq.children()) CHECK(c.parent() == sq);
}

TEST_CASE("same-level cubes are equal or disjoint") {
  const auto all = intervals_in(2, 2, -1, 1);
  for (const auto& a : all)
    for (const auto& b : all) CHECK((a == b) == a.intersects(b));
}

TEST_CASE("dilation") {
  const RealCube r3 = dilate(interval(0, 0), 3);
  CHECK(r3.center[0] == 0.5);
  CHECK(r3.lower(0) == -1.0);
  CHECK(r3.upper(0) == 2.0);
  const RealCube r1 = dilate(interval(0, 0), 1);
  CHECK(r1.lower(0) == 0.0);
  CHECK(r1.upper(0) == 1.0);
  const RealCube r5 = dilate(interval(-1, 1), 5);
  // [2,4) has centre 3, so 5[2,4) = [-2,8).
  CHECK(r5.lower(0) == -2.0);
  CHECK(r5.upper(0) == 8.0);

  const ExactBox e = dilate_exact(interval(-1, 1), 5);
  const ExactBox big{0, {-2}, {8}};
  CHECK(e.contains(big));
  CHECK(big.contains(e));
}

TEST_CASE("family index examples") {
  CHECK(family_index(interval(0, 0)) == 2);
  CHECK(family_index(interval(-1, 0)) == 1);
  CHECK(family_index(interval(0, 3)) == 2);
  // 3[3,4) = [2,5) and 3[0,2) = [-2,4) overlap without nesting, and they are in different families.
  CHECK_FALSE(dilate_exact(interval(0, 3), 3).nested_or_disjoint(dilate_exact(interval(-1, 0), 3)));
  CHECK(family_index(DyadicCube(0, {0, 0})) == 8);
  CHECK(family_count(1) == 3);
  CHECK(family_count(2) == 9);
}

TEST_CASE("companion examples") {
  CHECK(companion(interval(0, 0), 2) == interval(0, 0));
  CHECK(companion(interval(0, 0), 0) == interval(0, 1));
  CHECK(companion(interval(0, 0), 1) == interval(0, -1));
}

TEST_CASE("triples within a family are nested or disjoint (levels -3..3)") {
  const auto all = intervals_in(-3, 3, -4, 4);
  std::size_t violations = 0;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (family_index(all[a]) == family_index(all[b]) &&
          !dilate_exact(all[a], 3).nested_or_disjoint(dilate_exact(all[b], 3)))
        ++violations;
  CHECK(violations == 0);
}

TEST_CASE("companion contract (levels -3..3)") {
  for (const auto& q : intervals_in(-3, 3, -4, 4)) {
    for (int k = 0; k < 3; ++k) {
      const DyadicCube c = companion(q, k);
      CHECK(c.level == q.level);
      CHECK(family_index(c) == k);
      const ExactBox t = dilate_exact(c, 3);
      CHECK(t.contains(as_box(q)));
      CHECK(dilate_exact(q, 5).contains(t));
    }
  }
}

TEST_CASE("two-dimensional product families") {
  std::vector<DyadicCube> all;
  for (int k = -1; k <= 1; ++k) {
    const auto side = std::ldexp(1.0, -k);
    const auto lo = static_cast<std::int64_t>(std::floor(-2 / side)), hi = static_cast<std::int64_t>(2 / side);
    for (auto i = lo; i < hi; ++i)
      for (auto j = lo; j < hi; ++j) all.push_back(DyadicCube(k, {i, j}));
  }
  std::size_t violations = 0;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (int k = 0; k < 9; ++k) {
      const DyadicCube c = companion(all[a], k);
      if (family_index(c) != k || !dilate_exact(c, 3).contains(as_box(all[a])) ||
          !dilate_exact(all[a], 5).contains(dilate_exact(c, 3)))
        ++violations;
    }
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (family_index(all[a]) == family_index(all[b]) &&
          !dilate_exact(all[a], 3).nested_or_disjoint(dilate_exact(all[b], 3)))
        ++violations;
  }
  CHECK(violations == 0);
}
