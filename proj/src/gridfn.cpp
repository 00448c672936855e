#include "sharpwt/gridfn.hpp"

#include <algorithm>
#include <cmath>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

constexpr int kMaxLog2Cells = 30;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t m) { return (a - floor_mod(a, m)) / m; }

std::size_t cells_for(int level_L, int resolution_s) {
  const int e = level_L + resolution_s;
  require(e >= 0, "resolution must be at least -L");
  require(e <= kMaxLog2Cells, "grid too large");
  return std::size_t{1} << e;
}

}  // namespace

GridFunction::GridFunction(int level_L, int resolution_s, std::int64_t origin_cells,
                           std::vector<double> values)
    : level_(level_L),
      resolution_(resolution_s),
      origin_cells_(origin_cells),
      h_(std::ldexp(1.0, -resolution_s)),
      values_(std::move(values)) {
  const std::size_t n = cells_for(level_L, resolution_s);
  require(values_.size() == n, "expected " + std::to_string(n) + " values, got " +
                                   std::to_string(values_.size()));
  prefix_.assign(n + 1, 0.0L);
  abs_prefix_.assign(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values_[i])) fail(ErrorKind::numeric, "non-finite grid value");
    prefix_[i + 1] = prefix_[i] + values_[i];
    abs_prefix_[i + 1] = abs_prefix_[i] + std::fabs(values_[i]);
  }
}

GridFunction GridFunction::zeros(int level_L, int resolution_s, std::int64_t origin_cells) {
  return GridFunction(level_L, resolution_s, origin_cells,
                      std::vector<double>(cells_for(level_L, resolution_s), 0.0));
}

GridFunction GridFunction::from_averages(int level_L, int resolution_s, std::int64_t origin_cells,
                                         const std::function<double(double, double)>& average) {
  const std::size_t n = cells_for(level_L, resolution_s);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::ldexp(static_cast<double>(origin_cells + static_cast<std::int64_t>(i)), -resolution_s);
    const double b = std::ldexp(static_cast<double>(origin_cells + static_cast<std::int64_t>(i) + 1), -resolution_s);
    v[i] = average(a, b);
  }
  return GridFunction(level_L, resolution_s, origin_cells, std::move(v));
}

double GridFunction::origin() const { return std::ldexp(static_cast<double>(origin_cells_), -resolution_); }

double GridFunction::length() const { return std::ldexp(1.0, level_); }

double GridFunction::cell_left(std::size_t i) const {
  return std::ldexp(static_cast<double>(origin_cells_ + static_cast<std::int64_t>(i)), -resolution_);
}

double GridFunction::cell_center(std::size_t i) const {
  return std::ldexp(static_cast<double>(2 * (origin_cells_ + static_cast<std::int64_t>(i)) + 1),
                    -resolution_ - 1);
}

DyadicCube GridFunction::cell_cube(std::size_t i) const {
  return interval(resolution_, origin_cells_ + static_cast<std::int64_t>(i));
}

bool GridFunction::dyadic_domain() const {
  return floor_mod(origin_cells_, static_cast<std::int64_t>(size())) == 0;
}

DyadicCube GridFunction::domain_cube() const {
  if (!dyadic_domain()) fail(ErrorKind::domain, "grid domain is not a dyadic interval");
  return interval(-level_, floor_div(origin_cells_, static_cast<std::int64_t>(size())));
}

CellRange GridFunction::cells_of(const DyadicCube& q) const {
  require(q.dim() == 1, "grid functions are one-dimensional");
  if (q.level > resolution_) fail(ErrorKind::domain, "cube " + q.to_string() + " is finer than the grid");
  const int shift = resolution_ - q.level;
  if (shift > kMaxLog2Cells) fail(ErrorKind::domain, "cube " + q.to_string() + " is outside the domain");
  const std::int64_t width = std::int64_t{1} << shift;
  const std::int64_t first = q.index[0] * width - origin_cells_;
  if (first < 0 || first + width > static_cast<std::int64_t>(size()))
    fail(ErrorKind::domain, "cube " + q.to_string() + " is outside the domain");
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(first + width)};
}

DyadicCube GridFunction::cube_of(const CellRange& r) const {
  const std::size_t m = r.size();
  require(m > 0 && (m & (m - 1)) == 0 && r.end <= size(), "cell range is not a dyadic interval");
  const std::int64_t start = origin_cells_ + static_cast<std::int64_t>(r.begin);
  const std::int64_t w = static_cast<std::int64_t>(m);
  require(floor_mod(start, w) == 0, "cell range is not a dyadic interval");
  int shift = 0;
  while ((std::size_t{1} << shift) < m) ++shift;
  return interval(resolution_ - shift, floor_div(start, w));
}

double GridFunction::integral(const CellRange& r) const {
  return static_cast<double>((prefix_[r.end] - prefix_[r.begin]) * h_);
}

double GridFunction::abs_integral(const CellRange& r) const {
  return static_cast<double>((abs_prefix_[r.end] - abs_prefix_[r.begin]) * h_);
}

double GridFunction::abs_integral_between(double a, double b) const {
  const double n = static_cast<double>(size());
  double u0 = std::clamp((a - origin()) / h_, 0.0, n);
  double u1 = std::clamp((b - origin()) / h_, 0.0, n);
  if (u1 <= u0) return 0.0;
  const auto i0 = static_cast<std::size_t>(std::floor(u0));
  const auto i1 = static_cast<std::size_t>(std::floor(u1));
  long double total;
  if (i0 == i1) {
    total = (u1 - u0) * std::fabs(values_[i0]);
  } else {
    total = (static_cast<double>(i0 + 1) - u0) * std::fabs(values_[i0]);
    total += abs_prefix_[i1] - abs_prefix_[i0 + 1];
    if (i1 < size()) total += (u1 - static_cast<double>(i1)) * std::fabs(values_[i1]);
  }
  return static_cast<double>(total * h_);
}

bool GridFunction::same_grid(const GridFunction& o) const {
  return level_ == o.level_ && resolution_ == o.resolution_ && origin_cells_ == o.origin_cells_;
}

GridFunction GridFunction::with_values(std::vector<double> v) const {
  return GridFunction(level_, resolution_, origin_cells_, std::move(v));
}

GridFunction GridFunction::refined(int extra) const {
  require(extra >= 0, "refinement must be non-negative");
  const std::size_t rep = std::size_t{1} << extra;
  std::vector<double> v;
  v.reserve(size() * rep);
  for (double x : values_) v.insert(v.end(), rep, x);
  return GridFunction(level_, resolution_ + extra, origin_cells_ * static_cast<std::int64_t>(rep), std::move(v));
}

GridFunction GridFunction::embedded(int level_L, std::int64_t origin_cells) const {
  const std::size_t n = cells_for(level_L, resolution_);
  const std::int64_t offset = origin_cells_ - origin_cells;
  require(offset >= 0 && offset + static_cast<std::int64_t>(size()) <= static_cast<std::int64_t>(n),
          "embedding domain must contain the original domain");
  std::vector<double> v(n, 0.0);
  std::copy(values_.begin(), values_.end(), v.begin() + offset);
  return GridFunction(level_L, resolution_, origin_cells, std::move(v));
}

std::vector<MassPoint> mass_points(const GridFunction& f, const CellRange& r) {
  std::vector<double> v(f.values().begin() + r.begin, f.values().begin() + r.end);
  std::sort(v.begin(), v.end());
  std::vector<MassPoint> out;
  for (double x : v) {
    if (!out.empty() && out.back().value == x)
      out.back().mass += f.cell_width();
    else
      out.push_back({x, f.cell_width()});
  }
  return out;
}

double sample_rearrangement(std::span<const double> values, double t_cells) {
  const std::size_t m = values.size();
  require(t_cells > 0 && t_cells <= static_cast<double>(m), "rearrangement level must lie in (0, |Q|]");
  const auto n = static_cast<std::size_t>(std::floor(t_cells));
  if (n >= m) return 0.0;
  std::vector<double> a(m);
  std::transform(values.begin(), values.end(), a.begin(), [](double x) { return std::fabs(x); });
  std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), a.end(), std::greater<>());
  return a[n];
}

double sample_median(std::span<const double> values) {
  require(!values.empty(), "median of an empty set");
  std::vector<double> a(values.begin(), values.end());
  // Valid medians form [a_(k), a_(m-k-1)] in sorted order; take the one nearest zero.
  const std::size_t k = (a.size() + 1) / 2 - 1;
  std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
  const double lower = a[k];
  const double upper = a.size() % 2 ? lower : *std::min_element(a.begin() + static_cast<std::ptrdiff_t>(k) + 1, a.end());
  return std::clamp(0.0, lower, upper);
}

double sorted_osc(std::span<const double> sorted, double lambda) {
  require(lambda > 0 && lambda < 1, "oscillation level must lie in (0, 1)");
  const std::size_t m = sorted.size();
  const auto n = static_cast<std::size_t>(std::floor(lambda * static_cast<double>(m)));
  const std::size_t k = m - n;
  double best = INFINITY;
  for (std::size_t i = 0; i + k <= m; ++i) best = std::min(best, (sorted[i + k - 1] - sorted[i]) / 2);
  return best;
}

double sample_osc(std::span<const double> values, double lambda) {
  std::vector<double> a(values.begin(), values.end());
  std::sort(a.begin(), a.end());
  return sorted_osc(a, lambda);
}

namespace {

std::span<const double> cells(const GridFunction& f, const CellRange& r) {
  return std::span<const double>(f.values()).subspan(r.begin, r.size());
}

}  // namespace

double rearrangement_value(const GridFunction& f, const CellRange& r, double t) {
  return sample_rearrangement(cells(f, r), t / f.cell_width());
}

double rearrangement_value(const GridFunction& f, const DyadicCube& q, double t) {
  return rearrangement_value(f, f.cells_of(q), t);
}

double median(const GridFunction& f, const CellRange& r) { return sample_median(cells(f, r)); }

double median(const GridFunction& f, const DyadicCube& q) { return median(f, f.cells_of(q)); }

double local_osc(const GridFunction& f, const CellRange& r, double lambda) {
  return sample_osc(cells(f, r), lambda);
}

double local_osc(const GridFunction& f, const DyadicCube& q, double lambda) {
  return local_osc(f, f.cells_of(q), lambda);
}

GridFunction local_sharp_max_dyadic(const GridFunction& f, const DyadicCube& q0, double lambda) {
  require(lambda > 0 && lambda < 1, "oscillation level must lie in (0, 1)");
  const CellRange root = f.cells_of(q0);
  std::vector<double> work(f.values().begin() + root.begin, f.values().begin() + root.end);
  std::vector<double> best(work.size(), 0.0);
  // Bottom-up merge: after each pass `work` is sorted within blocks of the current width.
  for (std::size_t width = 2; width <= work.size(); width *= 2) {
    for (std::size_t b = 0; b < work.size(); b += width) {
      auto first = work.begin() + static_cast<std::ptrdiff_t>(b);
      std::inplace_merge(first, first + static_cast<std::ptrdiff_t>(width / 2),
                         first + static_cast<std::ptrdiff_t>(width));
      const double w = sorted_osc(std::span<const double>(work).subspan(b, width), lambda);
      for (std::size_t i = b; i < b + width; ++i) best[i] = std::max(best[i], w);
    }
  }
  std::vector<double> out(f.size(), 0.0);
  std::copy(best.begin(), best.end(), out.begin() + static_cast<std::ptrdiff_t>(root.begin));
  return f.with_values(std::move(out));
}

}  // namespace sharpwt
