#include "sharpwt/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

double spacing(int q) { return 2.0 / (q - 1); }

// Antiderivative of the hat centred at node i, zero to the left of its support.
double hat_antiderivative(int q, int i, double u) {
  const double d = spacing(q);
  const double left = hat_node(q, i - 1), mid = hat_node(q, i), right = hat_node(q, i + 1);
  if (u <= left) return 0.0;
  if (u >= right) return d;
  if (u <= mid) return (u - left) * (u - left) / (2 * d);
  return d - (right - u) * (right - u) / (2 * d);
}

void check_class(double alpha, int q) {
  require(alpha > 0 && alpha <= 1, "Hoelder exponent must lie in (0, 1]");
  require(q >= 3, "kernel needs at least 3 nodes");
}

double bump(double u, double c, double r) {
  const double v = (u - c) / r;
  return std::max(0.0, 1.0 - v * v);
}

std::vector<HolderKernel> make_dictionary(double alpha, int q) {
  using std::numbers::pi;
  const std::vector<std::function<double(double)>> shapes = {
      [](double u) { return u * (1 - u * u); },
      [](double u) { return bump(u, -0.5, 0.5) - bump(u, 0.5, 0.5); },
      [](double u) { return bump(u, -0.25, 0.25) - bump(u, 0.25, 0.25); },
      [](double u) { return std::sin(2 * pi * u); },
      [](double u) { return (1 - u * u) * (1 - u * u) - 7.0 / 6.0 * std::pow(1 - u * u, 3); },
      [](double u) { return bump(u, 0, 0.5) - 0.5 * (bump(u, -0.5, 0.5) + bump(u, 0.5, 0.5)); },
      [](double u) { return bump(u, 0, 0.25) - 0.5 * (bump(u, -0.25, 0.25) + bump(u, 0.25, 0.25)); },
      [](double u) { return (1 - u * u) * std::cos(2 * pi * u); },
  };
  std::vector<HolderKernel> out;
  for (const auto& shape : shapes) {
    std::vector<double> s(static_cast<std::size_t>(q), 0.0);
    double mean = 0.0;
    for (int i = 1; i < q - 1; ++i) mean += s[static_cast<std::size_t>(i)] = shape(hat_node(q, i));
    mean /= q - 2;
    for (int i = 1; i < q - 1; ++i) s[static_cast<std::size_t>(i)] -= mean;
    const double ratio = HolderKernel(alpha, s).holder_ratio();
    if (ratio > 0)
      for (auto& v : s) v /= ratio;
    out.emplace_back(alpha, std::move(s));
  }
  return out;
}

}  // namespace

double hat_node(int q, int i) { return -1.0 + i * spacing(q); }

HolderKernel::HolderKernel(double alpha, std::vector<double> samples) : alpha_(alpha), samples_(std::move(samples)) {
  check_class(alpha, q());
  require(samples_.front() == 0.0 && samples_.back() == 0.0, "kernel must vanish at both ends");
}

double HolderKernel::node(int i) const { return hat_node(q(), i); }

double HolderKernel::evaluate(double u) const {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  const double pos = (u + 1.0) / spacing(q());
  const int i = std::min(static_cast<int>(pos), q() - 2);
  const double frac = pos - i;
  return samples_[static_cast<std::size_t>(i)] * (1 - frac) + samples_[static_cast<std::size_t>(i + 1)] * frac;
}

double HolderKernel::holder_ratio() const {
  double best = 0.0;
  for (int i = 0; i < q(); ++i)
    for (int j = i + 1; j < q(); ++j)
      best = std::max(best, std::fabs(samples_[static_cast<std::size_t>(j)] - samples_[static_cast<std::size_t>(i)]) /
                                std::pow(node(j) - node(i), alpha_));
  return best;
}

double HolderKernel::integral() const {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s * spacing(q());
}

bool HolderKernel::feasible(double tol) const {
  return holder_ratio() <= 1.0 + tol && std::fabs(integral()) <= tol;
}

HolderClass::HolderClass(double alpha, int q) : alpha_(alpha), q_(q) {
  check_class(alpha, q);
  const int interior = q - 2;
  // The last interior sample is minus the sum of the others (mean zero).
  base_.vars = static_cast<std::size_t>(interior - 1);
  auto coeffs_of = [&](int node) {
    std::vector<double> e(base_.vars, 0.0);
    if (node == 0 || node == q - 1) return e;
    const int k = node - 1;
    if (k < interior - 1)
      e[static_cast<std::size_t>(k)] = 1.0;
    else
      std::fill(e.begin(), e.end(), -1.0);
    return e;
  };
  if (base_.vars > 0) {
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        auto ej = coeffs_of(j);
        const auto ei = coeffs_of(i);
        bool zero = true;
        for (std::size_t k = 0; k < ej.size(); ++k) {
          ej[k] -= ei[k];
          zero = zero && ej[k] == 0.0;
        }
        if (zero) continue;
        const double bound = std::pow(hat_node(q, j) - hat_node(q, i), alpha);
        base_.add_row(ej, bound);
        for (auto& v : ej) v = -v;
        base_.add_row(ej, bound);
      }
    }
  }
  dictionary_ = make_dictionary(alpha, q);
}

lp::Result HolderClass::solve(std::span<const double> coeffs) const {
  require(coeffs.size() == static_cast<std::size_t>(q_ - 2), "one coefficient per interior node expected");
  lp::Problem p = base_;
  p.c.resize(p.vars);
  const double last = coeffs.back();
  bool zero = true;
  for (std::size_t k = 0; k < p.vars; ++k) {
    p.c[k] = coeffs[k] - last;
    zero = zero && p.c[k] == 0.0;
  }
  if (zero) {
    lp::Result r;
    r.x.assign(p.vars, 0.0);
    return r;
  }
  auto r = lp::maximize(p);
  if (r.status != lp::Status::optimal) fail(ErrorKind::numeric, "Hoelder-class LP did not converge");
  return r;
}

double HolderClass::sup(std::span<const double> coeffs) const {
  return std::max(0.0, solve(coeffs).value);
}

HolderKernel HolderClass::argmax(std::span<const double> coeffs) const {
  const auto r = solve(coeffs);
  std::vector<double> s(static_cast<std::size_t>(q_), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < r.x.size(); ++k) {
    s[k + 1] = r.x[k];
    sum += r.x[k];
  }
  s[static_cast<std::size_t>(q_ - 2)] = -sum;
  return HolderKernel(alpha_, std::move(s));
}

double HolderClass::dictionary_sup(std::span<const double> coeffs) const {
  require(coeffs.size() == static_cast<std::size_t>(q_ - 2), "one coefficient per interior node expected");
  double best = 0.0;
  for (const auto& k : dictionary_) {
    double v = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * k.samples()[i + 1];
    best = std::max(best, std::fabs(v));
  }
  return best;
}

std::vector<double> hat_coefficients(const GridFunction& f, double y, double t, int q) {
  require(t > 0, "scale must be positive");
  require(q >= 3, "kernel needs at least 3 nodes");
  std::vector<double> c(static_cast<std::size_t>(q - 2), 0.0);
  const double h = f.cell_width(), d = spacing(q);
  const double n = static_cast<double>(f.size());
  const double first = std::clamp(std::floor((y - t - f.origin()) / h), 0.0, n);
  const double last = std::clamp(std::ceil((y + t - f.origin()) / h), 0.0, n);
  for (auto j = static_cast<std::size_t>(first); j < static_cast<std::size_t>(last); ++j) {
    const double v = f[j];
    if (v == 0.0) continue;
    const double a = f.cell_left(j);
    const double u1 = (y - (a + h)) / t, u2 = (y - a) / t;
    if (u2 <= -1.0 || u1 >= 1.0) continue;
    const int lo = std::max(1, static_cast<int>(std::floor((u1 + 1.0) / d)));
    const int hi = std::min(q - 2, static_cast<int>(std::ceil((u2 + 1.0) / d)));
    for (int i = lo; i <= hi; ++i)
      c[static_cast<std::size_t>(i - 1)] += v * (hat_antiderivative(q, i, u2) - hat_antiderivative(q, i, u1));
  }
  return c;
}

double holder_sup(const GridFunction& f, double y, double t, double alpha, int q) {
  return HolderClass(alpha, q).sup(hat_coefficients(f, y, t, q));
}

ConeQuadrature make_quadrature(const GridFunction& grid, const IntrinsicConfig& cfg) {
  return ConeQuadrature(grid, cfg.nodes_per_box, cfg.t_min_level.value_or(-grid.resolution()),
                        cfg.t_max_level.value_or(grid.level()));
}

std::vector<double> intrinsic_amplitudes(const GridFunction& f, const ConeQuadrature& quad,
                                         const IntrinsicConfig& cfg) {
  require(quad.matches(f), "quadrature was built for a different grid");
  const HolderClass cls(cfg.alpha, cfg.q);
  std::vector<double> a(quad.nodes().size(), 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const auto& nd = quad.nodes()[n];
    const auto c = hat_coefficients(f, nd.y, nd.t, cfg.q);
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) continue;
    a[n] = cfg.mode == SupMode::lp ? cls.sup(c) : cls.dictionary_sup(c);
  }
  return a;
}

GridFunction g_cone(const GridFunction& f, double beta, const ConeQuadrature& quad, const IntrinsicConfig& cfg,
                    bool closed) {
  require(beta >= 1, "cone aperture must be at least 1");
  return cone_square(f, quad, intrinsic_amplitudes(f, quad, cfg), beta, closed);
}

GridFunction g_tilde(const GridFunction& f, const ConeQuadrature& quad, const IntrinsicConfig& cfg) {
  return box_square(f, quad, intrinsic_amplitudes(f, quad, cfg));
}

}  // namespace sharpwt
