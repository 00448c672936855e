#include "sharpwt/weights.hpp"

#include <algorithm>
#include <cmath>

#include "sharpwt/error.hpp"
#include "window_max.hpp"

namespace sharpwt {

namespace {

std::vector<long double> prefix_of(const GridFunction& g, double power) {
  std::vector<long double> p(g.size() + 1, 0.0L);
  for (std::size_t i = 0; i < g.size(); ++i)
    p[i + 1] = p[i] + (power == 1.0 ? static_cast<long double>(g[i]) : std::pow(static_cast<long double>(g[i]), power));
  return p;
}

void require_p(double p) {
  if (!(p > 1.0)) fail(ErrorKind::invalid_argument, "A_p characteristic needs p > 1");
}

// (avg w)(avg sigma)^{p-1} from prefix sums over cells [i, j).
long double ap_ratio(const std::vector<long double>& pw, const std::vector<long double>& ps,
                     std::size_t i, std::size_t j, double p) {
  const long double len = static_cast<long double>(j - i);
  return (pw[j] - pw[i]) / len * std::pow((ps[j] - ps[i]) / len, static_cast<long double>(p - 1.0));
}

// (x^{a+1} - y^{a+1}) / ((a+1)(x - y)) for 0 <= y < x without cancellation.
double positive_power_mean(double y, double x, double a) {
  const double e = a + 1.0;
  if (y == 0.0) return std::pow(x, a) / e;
  return std::pow(y, e) * std::expm1(e * std::log1p((x - y) / y)) / (e * (x - y));
}

}  // namespace

Weight::Weight(GridFunction base, const std::vector<double>& cached_ps) : base_(std::move(base)) {
  for (double v : base_.values())
    if (!(v > 0.0)) fail(ErrorKind::domain, "weights must be strictly positive");
  prefix_ = prefix_of(base_, 1.0);
  for (double p : cached_ps) {
    require_p(p);
    dual_.emplace(p, prefix_of(base_, -1.0 / (p - 1.0)));
  }
}

double Weight::mass(const CellRange& r) const {
  return static_cast<double>((prefix_[r.end] - prefix_[r.begin]) * base_.cell_width());
}

std::vector<long double> Weight::dual_prefix(double p) const {
  require_p(p);
  if (auto it = dual_.find(p); it != dual_.end()) return it->second;
  return prefix_of(base_, -1.0 / (p - 1.0));
}

double Weight::dual_mass(const CellRange& r, double p) const {
  if (auto it = dual_.find(p); it != dual_.end())
    return static_cast<double>((it->second[r.end] - it->second[r.begin]) * base_.cell_width());
  const auto d = dual_prefix(p);
  return static_cast<double>((d[r.end] - d[r.begin]) * base_.cell_width());
}

double PowerWeightSpec::average(double a, double b) const {
  require(exponent > -1.0, "power weight exponent must exceed -1");
  require(b > a, "empty averaging interval");
  const double lo = a - center, hi = b - center;
  if (lo >= 0.0) return positive_power_mean(lo, hi, exponent);
  if (hi <= 0.0) return positive_power_mean(-hi, -lo, exponent);
  const double e = exponent + 1.0;
  return (std::pow(-lo, e) + std::pow(hi, e)) / (e * (hi - lo));
}

GridFunction PowerWeightSpec::sample(int level_L, int resolution_s, std::int64_t origin_cells) const {
  return GridFunction::from_averages(level_L, resolution_s, origin_cells,
                                     [this](double a, double b) { return average(a, b); });
}

double ap_characteristic(const Weight& w, double p) {
  require_p(p);
  const auto& pw = w.prefix();
  const auto ps = w.dual_prefix(p);
  const std::size_t n = w.size();
  long double best = 0.0L;
  for (std::size_t len = 1; len <= n; len *= 2)
    for (std::size_t i = 0; i + len <= n; ++i) best = std::max(best, ap_ratio(pw, ps, i, i + len, p));
  return static_cast<double>(best);
}

double ap_characteristic_exhaustive(const Weight& w, double p) {
  require_p(p);
  const auto& pw = w.prefix();
  const auto ps = w.dual_prefix(p);
  const std::size_t n = w.size();
  long double best = 0.0L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) best = std::max(best, ap_ratio(pw, ps, i, j, p));
  return static_cast<double>(best);
}

double ainfty_fujii(const Weight& w) {
  const auto& pw = w.prefix();
  const std::size_t n = w.size();
  std::vector<double> local(n);
  std::vector<long double> sums(n);
  long double best = 0.0L;
  for (std::size_t len = 1; len <= n; len *= 2) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const long double total = pw[i + len] - pw[i];
      std::span<double> out(local.data(), len);
      std::fill(out.begin(), out.end(), static_cast<double>(total / static_cast<long double>(len)));
      // Outside Q the function vanishes, so windows poking out of Q never beat a shifted one inside it.
      for (std::size_t k = 1; k < len; k *= 2) {
        const std::size_t count = len - k + 1;
        for (std::size_t j = 0; j < count; ++j)
          sums[j] = (pw[i + j + k] - pw[i + j]) / static_cast<long double>(k);
        detail::fold_cover_max(std::span<const long double>(sums.data(), count), k, out);
      }
      long double integral = 0.0L;
      for (double v : out) integral += v;
      best = std::max(best, integral / total);
    }
  }
  return static_cast<double>(best);
}

double weighted_lp_norm(const GridFunction& f, const Weight& w, double p) {
  if (!f.same_grid(w.base())) fail(ErrorKind::grid_mismatch, "function and weight live on different grids");
  require(p >= 1.0, "L^p norm needs p >= 1");
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += std::pow(std::fabs(static_cast<long double>(f[i])), static_cast<long double>(p)) * w[i];
  s *= f.cell_width();
  return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
}

}  // namespace sharpwt
