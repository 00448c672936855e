#include <doctest.h>

#include <cmath>

#include "sharpwt/intrinsic.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace sharpwt;
using testsupport::on_unit;
using testsupport::random_values;

using testsupport::lattice_sup;

TEST_CASE("hat coefficients match numerical integration") {
  Rng rng(51);
  const GridFunction f = on_unit(random_values(rng, 64));
  for (const auto& [y, t] : std::vector<std::pair<double, double>>{{0.3, 0.1}, {0.5, 0.5}, {0.01, 0.2}, {0.77, 0.013}}) {
    const int q = 9;
    const auto c = hat_coefficients(f, y, t, q);
    for (int i = 1; i < q - 1; ++i) {
      const double d = 2.0 / (q - 1);
      double s = 0;
      const int n = 40000;
      for (int k = 0; k < n; ++k) {
        const double u = -1 + (k + 0.5) * 2.0 / n;
        const double hat = std::max(0.0, 1 - std::fabs(u - hat_node(q, i)) / d);
        const double x = y - t * u;
        const double fx = x < 0 || x >= 1 ? 0.0 : f[static_cast<std::size_t>(x * 64)];
        s += fx * hat * 2.0 / n;
      }
      CHECK(c[static_cast<std::size_t>(i - 1)] == doctest::Approx(s).epsilon(1e-3));
    }
  }
}

TEST_CASE("class supremum basics") {
  CHECK(holder_sup(on_unit(std::vector<double>(32, 0.0)), 0.5, 0.25, 0.5, 17) == 0.0);
  CHECK(holder_sup(on_unit(std::vector<double>(32, 4.0)), 0.5, 0.25, 0.5, 17) <= 1e-9);
  std::vector<double> one(32, 0.0);
  one[16] = 1;
  CHECK(holder_sup(on_unit(one), 0.5, 0.25, 0.5, 17) > 0);
}

TEST_CASE("LP supremum against lattice enumeration at q=5") {
  const HolderClass cls(0.5, 5);
  Rng rng(52);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<double> cell(64, 0.0);
    cell[rng.below(64)] = 1;
    const GridFunction f = on_unit(cell);
    const double y = rng.uniform(), t = 0.02 + 0.3 * rng.uniform();
    auto c = hat_coefficients(f, y, t, 5);
    if (trial >= 6)
      for (auto& x : c) x = rng.normal();
    double l1 = 0;
    for (double x : c) l1 += std::fabs(x);
    const double lp = cls.sup(c);
    const double lattice = lattice_sup(c, 0.5, 1e-3);
    CHECK(lattice <= lp + 1e-9);
    CHECK(std::fabs(lp - lattice) <= 1e-3 * l1 + 1e-15);
    CHECK(cls.argmax(c).feasible(1e-9));
  }
}

TEST_CASE("dictionary kernels are feasible lower bounds") {
  Rng rng(53);
  for (double alpha : {0.3, 0.5, 1.0}) {
    const HolderClass cls(alpha, 17);
    REQUIRE(cls.dictionary().size() == 8);
    for (const auto& k : cls.dictionary()) {
      CHECK(k.feasible(1e-12));
      CHECK(std::fabs(k.integral()) <= 1e-12);
      CHECK(k.samples().front() == 0.0);
      CHECK(k.samples().back() == 0.0);
    }
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> c(15);
      for (auto& x : c) x = rng.normal();
      CHECK(cls.dictionary_sup(c) <= cls.sup(c) + 1e-9);
    }
  }
}

TEST_CASE("kernel interpolation") {
  const HolderKernel k(0.5, {0, 0.5, 0, -0.5, 0});
  CHECK(k.evaluate(-0.5) == 0.5);
  CHECK(k.evaluate(-0.25) == 0.25);
  CHECK(k.evaluate(2) == 0.0);
  CHECK(k.integral() == doctest::Approx(0.0));
  CHECK(k.holder_ratio() == doctest::Approx(1.0));
}

TEST_CASE("quadrature nodes sit in their boxes") {
  const GridFunction f(1, 4, -16, std::vector<double>(32, 1.0));
  for (int npb : {1, 4, 9}) {
    const ConeQuadrature quad(f, npb);
    double total = 0;
    for (const auto& b : quad.boxes()) {
      double w = 0;
      for (std::size_t n = b.first_node; n < b.first_node + b.node_count; ++n) {
        const auto& nd = quad.nodes()[n];
        CHECK(nd.y >= b.left);
        CHECK(nd.y < b.left + b.side);
        CHECK(nd.t >= b.side / 2);
        CHECK(nd.t < b.side);
        w += nd.weight;
      }
      CHECK(w == doctest::Approx(b.side * b.side / 2));
      total += w;
    }
    CHECK(total > 0);
  }
  CHECK_THROWS(ConeQuadrature(f, 2));
}

TEST_CASE("cone and box square functions") {
  Rng rng(54);
  const GridFunction f = on_unit(random_values(rng, 64, 5));
  IntrinsicConfig cfg;
  const ConeQuadrature quad = make_quadrature(f, cfg);
  const auto amp = intrinsic_amplitudes(f, quad, cfg);

  const GridFunction g1 = cone_square(f, quad, amp, 1), g4 = cone_square(f, quad, amp, 4);
  const GridFunction g4c = cone_square(f, quad, amp, 4, true), gt = box_square(f, quad, amp);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(g1[i] <= g4[i]);
    CHECK(g1[i] <= gt[i] + 1e-12);
    CHECK(gt[i] <= g4c[i] + 1e-12);
  }

  // Box sum recomputed box by box.
  const auto energy = box_energies(quad, amp);
  std::vector<double> sq(f.size(), 0.0);
  for (std::size_t b = 0; b < quad.boxes().size(); ++b) {
    const auto& box = quad.boxes()[b];
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = f.cell_center(i);
      if (x >= box.left - box.side && x < box.left + 2 * box.side) sq[i] += energy[b];
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::fabs(gt[i] * gt[i] - sq[i]) <= 1e-12 * (1 + sq[i]));

  const GridFunction zero = g_tilde(on_unit(std::vector<double>(64, 0.0)), quad, cfg);
  for (double x : zero.values()) CHECK(x == 0.0);
}

TEST_CASE("single box quadrature lights up its triple") {
  std::vector<double> v(64, 0.0);
  v[20] = 1;
  const GridFunction f = on_unit(v);
  const ConeQuadrature one = ConeQuadrature::single_box(f, -3, 2);  // [0.25, 0.375)
  IntrinsicConfig cfg;
  const auto amp = intrinsic_amplitudes(f, one, cfg);
  const double gamma = std::sqrt(box_energies(one, amp)[0]);
  CHECK(gamma > 0);
  const GridFunction gt = box_square(f, one, amp);
  for (std::size_t i = 0; i < 64; ++i) {
    const double x = f.cell_center(i);
    CHECK(gt[i] == (x >= 0.125 && x < 0.5 ? gamma : 0.0));
  }
}

TEST_CASE("cone function under quadrature refinement") {
  std::vector<double> v(64, 0.0);
  for (std::size_t i = 0; i < 32; ++i) v[i] = 1;
  const GridFunction f = on_unit(v);
  auto run = [&](int npb) {
    IntrinsicConfig c;
    c.nodes_per_box = npb;
    return g_cone(f, 1, make_quadrature(f, c), c);
  };
  const GridFunction g1 = run(1), g4 = run(4), g16 = run(16);
  CHECK(g1[31] > 0);
  CHECK(g1[32] > 0);
  // From 4 nodes per box on, a fourfold refinement moves values by well under 20%.
  for (std::size_t i = 0; i < 64; ++i) CHECK(std::fabs(g4[i] / g16[i] - 1) <= 0.2);
  // A single centred node misses a jump sitting on box edges and reads low.
  double n1 = 0, n4 = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    n1 += g1[i] * g1[i];
    n4 += g4[i] * g4[i];
  }
  CHECK(n1 < n4);
}
