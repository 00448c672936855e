#include "sharpwt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sharpwt/convolve.hpp"
#include "sharpwt/error.hpp"
#include "window_max.hpp"

namespace sharpwt {

namespace {

std::vector<long double> abs_prefix(const GridFunction& f) {
  std::vector<long double> p(f.size() + 1, 0.0L);
  for (std::size_t i = 0; i < f.size(); ++i) p[i + 1] = p[i] + std::fabs(f[i]);
  return p;
}

Fraction reduce(std::int64_t num, std::int64_t den) {
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Fraction add(Fraction a, Fraction b) { return reduce(a.num * b.den + b.num * a.den, a.den * b.den); }

// Integral of (1-x^2)^n over [-1, 1] = 2 sum_k C(n,k) (-1)^k / (2k+1).
Fraction bump_integral(int n) {
  Fraction total{0, 1};
  std::int64_t binom = 1;
  for (int k = 0; k <= n; ++k) {
    total = add(total, reduce((k % 2 ? -2 : 2) * binom, 2 * k + 1));
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

double horner(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
  return v;
}

// Cells whose interiors meet (y - r, y + r).
std::pair<std::size_t, std::size_t> cells_near(const GridFunction& f, double y, double r) {
  const double n = static_cast<double>(f.size());
  const double a = std::clamp(std::floor((y - r - f.origin()) / f.cell_width()), 0.0, n);
  const double b = std::clamp(std::ceil((y + r - f.origin()) / f.cell_width()), 0.0, n);
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

std::vector<double> odd_offsets_kernel(std::size_t n, const std::function<double(std::size_t)>& positive) {
  std::vector<double> k(2 * n - 1, 0.0);
  for (std::size_t d = 1; d < n; ++d) {
    const double v = positive(d);
    k[n - 1 + d] = v;
    k[n - 1 - d] = -v;
  }
  return k;
}

}  // namespace

GridFunction maximal(const GridFunction& f) {
  const auto p = abs_prefix(f);
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  std::vector<long double> vals(n);
  for (std::size_t len = 1; len <= n; len *= 2) {
    const std::size_t count = n - len + 1;
    for (std::size_t j = 0; j < count; ++j) vals[j] = (p[j + len] - p[j]) / static_cast<long double>(len);
    detail::fold_cover_max(std::span<const long double>(vals.data(), count), len, std::span<double>(out));
  }
  return f.with_values(std::move(out));
}

GridFunction maximal_centered(const GridFunction& f, const Weight& nu) {
  if (!f.same_grid(nu.base())) fail(ErrorKind::grid_mismatch, "function and weight live on different grids");
  const std::size_t n = f.size();
  std::vector<long double> pf(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) pf[i + 1] = pf[i] + std::fabs(f[i]) * static_cast<long double>(nu[i]);
  const auto& pn = nu.prefix();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long double best = std::fabs(f[i]);
    for (std::size_t r = 1; r < 2 * n; r *= 2) {
      const std::size_t a = i >= r ? i - r : 0, b = std::min(n, i + r + 1);
      best = std::max(best, (pf[b] - pf[a]) / (pn[b] - pn[a]));
      if (a == 0 && b == n) break;
    }
    out[i] = static_cast<double>(best);
  }
  return f.with_values(std::move(out));
}

GridFunction dyadic_square(const GridFunction& f) {
  const std::size_t n = f.size();
  std::vector<long double> avg(f.values().begin(), f.values().end());
  std::vector<long double> sq(n, 0.0L);
  for (std::size_t width = 1; width < n; width *= 2) {
    // avg holds block means at `width`; parent means at 2*width
    for (std::size_t b = 0; b < n; b += 2 * width) {
      const long double parent = (avg[b] + avg[b + width]) / 2;
      for (std::size_t i = b; i < b + 2 * width; ++i) {
        const long double d = avg[i] - parent;
        sq[i] += d * d;
      }
      for (std::size_t i = b; i < b + 2 * width; ++i) avg[i] = parent;
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(std::sqrt(sq[i] + avg[i] * avg[i]));
  return f.with_values(std::move(out));
}

PsiKernel::PsiKernel() {
  const Fraction a = bump_integral(2), b = bump_integral(3);
  coefficient_ = reduce(a.num * b.den, a.den * b.num);
  const double c = coefficient_.value();
  // (1-u^2)^2 - c (1-u^2)^3 in ascending powers
  poly_ = {1 - c, 0, -2 + 3 * c, 0, 1 - 3 * c, 0, c};
}

double PsiKernel::value(double u) const {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return horner(poly_, u);
}

double PsiKernel::antiderivative(double u) const {
  u = std::clamp(u, -1.0, 1.0);
  std::vector<double> integ(poly_.size() + 1, 0.0);
  for (std::size_t k = 0; k < poly_.size(); ++k) integ[k + 1] = poly_[k] / static_cast<double>(k + 1);
  return horner(integ, u) - horner(integ, -1.0);
}

double PsiKernel::holder_seminorm(double alpha, int samples) const {
  require(samples >= 2, "need at least two samples");
  std::vector<double> u(static_cast<std::size_t>(samples)), v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = -1.0 + 2.0 * static_cast<double>(i) / (samples - 1);
    v[i] = value(u[i]);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      best = std::max(best, std::fabs(v[j] - v[i]) / std::pow(u[j] - u[i], alpha));
  return best;
}

double psi_convolution(const GridFunction& f, const PsiKernel& psi, double y, double t) {
  require(t > 0, "scale must be positive");
  const auto [first, last] = cells_near(f, y, t);
  long double s = 0.0L;
  for (std::size_t j = first; j < last; ++j) {
    if (f[j] == 0.0) continue;
    const double a = f.cell_left(j), b = a + f.cell_width();
    s += f[j] * (psi.antiderivative((y - a) / t) - psi.antiderivative((y - b) / t));
  }
  return static_cast<double>(s);
}

std::vector<double> psi_amplitudes(const GridFunction& f, const PsiKernel& psi, const ConeQuadrature& quad) {
  require(quad.matches(f), "quadrature was built for a different grid");
  std::vector<double> a(quad.nodes().size());
  for (std::size_t n = 0; n < a.size(); ++n)
    a[n] = std::fabs(psi_convolution(f, psi, quad.nodes()[n].y, quad.nodes()[n].t));
  return a;
}

GridFunction s_psi(const GridFunction& f, double beta, const ConeQuadrature& quad, bool closed) {
  return cone_square(f, quad, psi_amplitudes(f, PsiKernel(), quad), beta, closed);
}

GridFunction g_psi(const GridFunction& f, int min_log2_t, int max_log2_t) {
  require(min_log2_t <= max_log2_t, "empty scale range");
  const PsiKernel psi;
  const std::size_t n = f.size();
  const double h = f.cell_width();
  std::vector<long double> sq(n, 0.0L);
  for (int j = min_log2_t; j < max_log2_t; ++j) {
    const double t = std::ldexp(std::sqrt(2.0), j);
    auto weight = [&](std::ptrdiff_t d) {
      return psi.antiderivative((static_cast<double>(d) + 0.5) * h / t) -
             psi.antiderivative((static_cast<double>(d) - 0.5) * h / t);
    };
    std::vector<double> kernel(2 * n - 1);
    for (std::size_t k = 0; k < kernel.size(); ++k)
      kernel[k] = weight(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n - 1));
    const auto conv = convolve_offsets(f.values(), kernel);
    for (std::size_t i = 0; i < n; ++i) sq[i] += static_cast<long double>(conv[i]) * conv[i] * std::log(2.0L);
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(std::sqrt(sq[i]));
  return f.with_values(std::move(out));
}

GridFunction g_psi(const GridFunction& f) { return g_psi(f, -f.resolution(), f.level()); }

std::vector<double> truncation_ladder(const GridFunction& f) {
  std::vector<double> d;
  for (int m = 0; m <= f.level() + f.resolution(); ++m) d.push_back(std::ldexp(f.cell_width(), m));
  return d;
}

GridFunction hilbert_truncated(const GridFunction& f, double delta) {
  require(delta > 0, "truncation radius must be positive");
  const double h = f.cell_width();
  // Cell offset d covers u in ((d - 1/2) h, (d + 1/2) h]; the kernel is odd.
  const auto kernel = odd_offsets_kernel(f.size(), [&](std::size_t d) {
    const double hi = (static_cast<double>(d) + 0.5) * h;
    if (hi <= delta) return 0.0;
    const double lo = std::max((static_cast<double>(d) - 0.5) * h, delta);
    return std::log1p((hi - lo) / lo);
  });
  return f.with_values(convolve_offsets(f.values(), kernel));
}

GridFunction hilbert(const GridFunction& f) { return hilbert_truncated(f, f.cell_width()); }

GridFunction hilbert_max(const GridFunction& f) {
  std::vector<double> best(f.size(), 0.0);
  for (double delta : truncation_ladder(f)) {
    const auto g = hilbert_truncated(f, delta);
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], std::fabs(g[i]));
  }
  return f.with_values(std::move(best));
}

}  // namespace sharpwt
