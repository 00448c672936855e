#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sharpwt/cone.hpp"
#include "sharpwt/operators.hpp"
#include "support.hpp"

using namespace sharpwt;
using testsupport::on_unit;
using testsupport::random_values;

TEST_CASE("maximal function examples") {
  std::vector<double> v(64, 0.0);
  for (std::size_t i = 32; i < 40; ++i) v[i] = 1.0;
  const GridFunction f(3, 3, -32, v);  // domain [-4, 4), f = indicator of [0, 1)
  const GridFunction m = maximal(f);
  for (std::size_t i = 32; i < 40; ++i) CHECK(m[i] == 1.0);
  CHECK(m[0] > 0);
  CHECK(m[0] < 1);

  const GridFunction c = maximal(on_unit(std::vector<double>(16, -2.5)));
  for (double x : c.values()) CHECK(x == 2.5);
}

TEST_CASE("maximal function against enumeration") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = random_values(rng, 128);
    const GridFunction m = maximal(on_unit(v));
    for (std::size_t x = 0; x < 128; ++x) {
      double full = 0, same_family = 0;
      for (std::size_t a = 0; a <= x; ++a)
        for (std::size_t b = x + 1; b <= 128; ++b) {
          double s = 0;
          for (std::size_t i = a; i < b; ++i) s += std::fabs(v[i]);
          const double avg = s / static_cast<double>(b - a);
          full = std::max(full, avg);
          if (((b - a) & (b - a - 1)) == 0) same_family = std::max(same_family, avg);
        }
      CHECK(m[x] == doctest::Approx(same_family).epsilon(1e-12));
      CHECK(m[x] <= full * (1 + 1e-12));
      CHECK(full <= 2 * m[x] * (1 + 1e-12));
    }
  }
}

TEST_CASE("centred weighted maximal function") {
  Rng rng(42);
  const auto v = random_values(rng, 32);
  std::vector<double> w(32);
  for (auto& x : w) x = std::exp(rng.normal());
  const GridFunction f = on_unit(v);
  const GridFunction m = maximal_centered(f, Weight(on_unit(w)));
  for (std::size_t x = 0; x < 32; ++x) {
    double best = 0;
    for (std::size_t r = 0; r <= 32; r = r ? 2 * r : 1) {
      const std::size_t a = x >= r ? x - r : 0, b = std::min<std::size_t>(32, x + r + 1);
      double num = 0, den = 0;
      for (std::size_t i = a; i < b; ++i) {
        num += std::fabs(v[i]) * w[i];
        den += w[i];
      }
      best = std::max(best, num / den);
    }
    CHECK(m[x] == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("dyadic square function") {
  const GridFunction sc = dyadic_square(on_unit(std::vector<double>(16, -3.0)));
  for (double x : sc.values()) CHECK(x == doctest::Approx(3.0));
  std::vector<double> haar(16, 1.0);
  for (std::size_t i = 8; i < 16; ++i) haar[i] = -1.0;
  const GridFunction sh = dyadic_square(on_unit(haar));
  for (double x : sh.values()) CHECK(x == doctest::Approx(1.0));

  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f = on_unit(random_values(rng, 256));
    const GridFunction s = dyadic_square(f);
    double a = 0, b = 0;
    for (std::size_t i = 0; i < 256; ++i) {
      a += s[i] * s[i];
      b += f[i] * f[i];
    }
    CHECK(std::fabs(a / b - 1) <= 1e-10);
  }
}

TEST_CASE("psi kernel") {
  const PsiKernel psi;
  CHECK(psi.zero_mean_coefficient().num == 7);
  CHECK(psi.zero_mean_coefficient().den == 6);
  CHECK(psi.antiderivative(-1) == 0.0);
  CHECK(std::fabs(psi.antiderivative(1)) <= 1e-12);
  CHECK(psi.value(1.5) == 0.0);
  for (double u : {0.1, 0.4, 0.9}) {
    CHECK(psi.value(u) == doctest::Approx(psi.value(-u)));
    const double x = 1 - u * u;
    CHECK(psi.value(u) == doctest::Approx(x * x - 7.0 / 6 * x * x * x));
  }
  // Antiderivative against a midpoint rule.
  double s = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) s += psi.value(-1 + (i + 0.5) * 0.3 / n) * 0.3 / n;
  CHECK(psi.antiderivative(-0.7) == doctest::Approx(s).epsilon(1e-8));
  CHECK(psi.holder_seminorm(0.5) > 0);
}

TEST_CASE("psi square functions") {
  const GridFunction c = on_unit(std::vector<double>(64, 2.0));
  const ConeQuadrature quad(c, 1);
  // Constants are killed except where the kernel reaches past the domain edge.
  const GridFunction s = s_psi(c, 1, ConeQuadrature(c, 1, -6, -3));
  for (std::size_t i = 16; i < 48; ++i) CHECK(s[i] <= 1e-9);
  const GridFunction big(3, 3, 0, std::vector<double>(64, 2.0));
  const GridFunction g = g_psi(big, -3, -1);
  for (std::size_t i = 8; i < 56; ++i) CHECK(g[i] <= 1e-9);

  std::vector<double> half(64 * 8, 0.0);
  for (std::size_t i = 0; i < 32; ++i) half[i] = 1.0;
  const GridFunction h(3, 6, 0, half);  // indicator of [0, 1/2) inside [0, 8)
  const GridFunction gh = g_psi(h, -6, -3);
  // Right at the jump the even kernel cancels; just beside it the response is large.
  CHECK(gh[31] > 0);
  CHECK(gh[32] > 0);
  CHECK(*std::max_element(gh.values().begin() + 16, gh.values().begin() + 48) > 0.01);
  CHECK(gh[256] == 0.0);
}

TEST_CASE("Hilbert transform of an indicator") {
  std::vector<double> v(8 * 64, 0.0);
  for (std::size_t i = 3 * 64; i < 5 * 64; ++i) v[i] = 1.0;
  const GridFunction f(3, 6, -4 * 64, v);  // indicator of [-1, 1) on [-4, 4)
  const GridFunction hf = hilbert(f);
  for (std::size_t i = 0; i < hf.size(); ++i) {
    const double x = hf.cell_center(i);
    if (std::fabs(std::fabs(x) - 1) < 8 * hf.cell_width()) continue;
    const double exact = std::log(std::fabs((x + 1) / (x - 1)));
    CHECK(std::fabs(hf[i] - exact) <= 0.02 * std::max(std::fabs(exact), 0.05));
  }
}

TEST_CASE("Hilbert symmetry and maximal truncation") {
  Rng rng(44);
  const auto v = random_values(rng, 256);
  std::vector<double> r(v.rbegin(), v.rend());
  const GridFunction f(1, 7, -128, v), fr(1, 7, -128, r);
  for (double delta : truncation_ladder(f)) {
    const GridFunction a = hilbert_truncated(f, delta), b = hilbert_truncated(fr, delta);
    for (std::size_t i = 0; i < 256; ++i) CHECK(std::fabs(a[i] + b[255 - i]) <= 1e-12 * (1 + std::fabs(a[i])));
  }
  const GridFunction m = hilbert_max(f);
  for (double delta : truncation_ladder(f)) {
    const GridFunction t = hilbert_truncated(f, delta);
    for (std::size_t i = 0; i < 256; ++i) CHECK(m[i] >= std::fabs(t[i]));
  }
}
