#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sharpwt/error.hpp"
#include "sharpwt/gridfn.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace sharpwt;
using testsupport::on_unit;
using testsupport::random_values;

using testsupport::brute_median;
using testsupport::brute_osc;
using testsupport::brute_rearrangement;
using testsupport::valid_median;

TEST_CASE("grid bookkeeping") {
  const GridFunction f(1, 2, -8, std::vector<double>(8, 1.0));  // [-2, 0)
  CHECK(f.origin() == -2.0);
  CHECK(f.length() == 2.0);
  CHECK(f.cell_width() == 0.25);
  CHECK(f.dyadic_domain());
  CHECK(f.domain_cube() == interval(-1, -1));
  CHECK(f.cells_of(interval(1, -2)) == CellRange{4, 6});
  CHECK(f.cube_of(CellRange{4, 6}) == interval(1, -2));
  CHECK(f.integral(f.all()) == doctest::Approx(2.0));
  CHECK(f.abs_integral_between(-0.875, 5) == doctest::Approx(0.875));

  const GridFunction odd(1, 2, -4, std::vector<double>(8, 1.0));  // [-1, 1)
  CHECK_FALSE(odd.dyadic_domain());
  CHECK_THROWS_AS(odd.domain_cube(), Error);
  CHECK_THROWS_AS(GridFunction(0, 2, 0, std::vector<double>(3, 1.0)), Error);

  const GridFunction r = f.refined(1);
  CHECK(r.size() == 16);
  CHECK(r.integral(r.all()) == doctest::Approx(2.0));
  const GridFunction e = f.embedded(2, -16);  // [-4, 0)
  CHECK(e.size() == 16);
  CHECK(e[8] == 1.0);
  CHECK(e[7] == 0.0);
}

TEST_CASE("exact cell averages") {
  const auto f = GridFunction::from_averages(0, 2, 0, [](double a, double b) { return (a + b) / 2; });
  CHECK(f[0] == 0.125);
  CHECK(f[3] == 0.875);
}

TEST_CASE("rearrangement examples") {
  const GridFunction f = on_unit({1, 1, 0, 0});
  CHECK(rearrangement_value(f, interval(0, 0), 0.25) == 1.0);
  CHECK(rearrangement_value(f, interval(0, 0), 0.5) == 0.0);
  const GridFunction c = on_unit({-3, -3, -3, -3});
  for (double t : {0.1, 0.5, 0.99}) CHECK(rearrangement_value(c, interval(0, 0), t) == 3.0);
  // At t = |Q| the level set {|f| > 0} already has measure <= t.
  CHECK(rearrangement_value(c, interval(0, 0), 1.0) == 0.0);
  CHECK_THROWS_AS(rearrangement_value(c, interval(0, 0), 0.0), Error);
  CHECK_THROWS_AS(rearrangement_value(c, interval(0, 0), 1.5), Error);
}

TEST_CASE("rearrangement against brute force and its defining property") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = random_values(rng, 16, trial % 2 ? 5 : 0);
    const GridFunction f = on_unit(v);
    for (int k = 1; k <= 16; ++k) {
      const double t = k / 16.0 - (trial % 3 == 0 ? 1.0 / 64 : 0.0);
      const double r = rearrangement_value(f, f.all(), t);
      CHECK(r == brute_rearrangement(v, t * 16));
      const auto above = [&](double tau) {
        return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double x) { return std::fabs(x) > tau; })) / 16;
      };
      CHECK(above(r) <= t);
      if (r > 0) CHECK(above(r - 1e-9 * (1 + r)) > t);
    }
  }
}

TEST_CASE("median examples") {
  CHECK(median(on_unit({1, 2, 3, 4}), interval(0, 0)) == 2.0);
  CHECK(median(on_unit({7, 7, 7, 7}), interval(0, 0)) == 7.0);
  CHECK(median(on_unit({-4, -3, -2, -1}), interval(0, 0)) == -2.0);
  // Every value in [-40, 3] is a median; the one nearest zero is returned.
  CHECK(median(on_unit({-40, 3}), interval(0, 0)) == 0.0);
}

TEST_CASE("median matches the exhaustive scan and is bounded by the half-mass rearrangement") {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = random_values(rng, 32, trial % 2 ? 6 : 0);
    const GridFunction f = on_unit(v);
    const double m = median(f, f.all());
    CHECK(valid_median(v, m));
    CHECK(m == brute_median(v));
    CHECK(std::fabs(m) <= rearrangement_value(f, f.all(), 0.5));
  }
}

TEST_CASE("local oscillation examples") {
  CHECK(local_osc(on_unit({1, 0, 0, 0}), interval(0, 0), 0.25) == 0.0);
  CHECK(local_osc(on_unit({2, 2, 2, 2}), interval(0, 0), 0.5) == 0.0);
  CHECK_THROWS_AS(local_osc(on_unit({2, 2}), interval(0, 0), 1.0), Error);
}

TEST_CASE("local oscillation against brute force over centres") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = random_values(rng, 64, trial % 3 ? 0 : 7);
    const GridFunction f = on_unit(v);
    const double lambda = trial % 2 ? 0.125 : 0.3;
    const double w = local_osc(f, f.all(), lambda);
    CHECK(std::fabs(w - brute_osc(v, lambda)) <= 1e-12);
    // Monotone in lambda and bounded through the median.
    CHECK(local_osc(f, f.all(), lambda / 2) >= w);
    std::vector<double> d(v);
    const double m = median(f, f.all());
    for (auto& x : d) x -= m;
    CHECK(w <= rearrangement_value(on_unit(d), interval(0, 0), lambda));
  }
}

TEST_CASE("oscillation of a sum is controlled by the summands at lambda/k") {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng.below(4);
    std::vector<std::vector<double>> parts;
    std::vector<double> sum(64, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      parts.push_back(random_values(rng, 64, trial % 2 ? 4 : 0));
      for (std::size_t c = 0; c < 64; ++c) sum[c] += parts.back()[c];
    }
    const int level = static_cast<int>(rng.below(7));
    const DyadicCube q = interval(level, static_cast<std::int64_t>(rng.below(std::size_t{1} << level)));
    const double lambda = 0.1 + 0.8 * rng.uniform();
    double rhs = 0;
    for (const auto& p : parts) rhs += local_osc(on_unit(p), q, lambda / static_cast<double>(k));
    CHECK(local_osc(on_unit(sum), q, lambda) <= rhs + 1e-12);
  }
}

TEST_CASE("dyadic local sharp maximal function") {
  CHECK(local_sharp_max_dyadic(on_unit(std::vector<double>(16, 3.0)), interval(0, 0), 0.25).values() ==
        std::vector<double>(16, 0.0));

  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_values(rng, 64, trial % 2 ? 5 : 0);
    const GridFunction f = on_unit(v);
    const GridFunction m = local_sharp_max_dyadic(f, interval(0, 0), 0.25);
    for (std::size_t c = 0; c < 64; ++c) {
      double best = 0;
      for (int level = 0; level <= 6; ++level) best = std::max(best, local_osc(f, f.cell_cube(c).ancestor(level), 0.25));
      CHECK(m[c] == best);
    }
  }

  // Monotone f: bounded by half the range.
  std::vector<double> inc(32);
  for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = std::sqrt(static_cast<double>(i));
  const GridFunction g = on_unit(inc);
  const GridFunction sharp = local_sharp_max_dyadic(g, interval(0, 0), 0.125);
  for (double x : sharp.values()) {
    CHECK(x >= 0);
    CHECK(x <= (inc.back() - inc.front()) / 2);
  }
}

TEST_CASE("mass points") {
  const auto mp = mass_points(on_unit({2, 1, 2, 2}), CellRange{0, 4});
  REQUIRE(mp.size() == 2);
  CHECK(mp[0].value == 1.0);
  CHECK(mp[0].mass == 0.25);
  CHECK(mp[1].mass == 0.75);
}
