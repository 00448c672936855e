#include "sharpwt/cone.hpp"

#include <algorithm>
#include <cmath>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

int split_of(int nodes_per_box) {
  require(nodes_per_box >= 1, "nodes_per_box must be positive");
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nodes_per_box))));
  require(k * k == nodes_per_box, "nodes_per_box must be a perfect square");
  return k;
}

// Box indices at one level that could touch x; clipped to the level's range.
std::pair<std::int64_t, std::int64_t> clip(const QuadLevel& lv, double lo, double hi) {
  const std::int64_t last = lv.first_index + static_cast<std::int64_t>(lv.box_count) - 1;
  return {std::max(lv.first_index, static_cast<std::int64_t>(lo)), std::min(last, static_cast<std::int64_t>(hi))};
}

}  // namespace

ConeQuadrature::ConeQuadrature(const GridFunction& grid, int nodes_per_box)
    : ConeQuadrature(grid, nodes_per_box, -grid.resolution(), grid.level()) {}

ConeQuadrature::ConeQuadrature(const GridFunction& grid, int nodes_per_box, int min_log2_side, int max_log2_side)
    : level_(grid.level()),
      resolution_(grid.resolution()),
      origin_cells_(grid.origin_cells()),
      nodes_per_box_(nodes_per_box) {
  const int k = split_of(nodes_per_box);
  require(min_log2_side <= max_log2_side, "empty scale range");
  require(max_log2_side - min_log2_side <= 60, "scale range too wide");
  const double d0 = grid.origin(), d1 = grid.origin() + grid.length();
  for (int m = min_log2_side; m <= max_log2_side; ++m) {
    const double side = std::ldexp(1.0, m);
    // 9Q = [(i-4) side, (i+5) side) meets [d0, d1)
    const auto first = static_cast<std::int64_t>(std::floor(d0 / side)) - 4;
    const auto last = static_cast<std::int64_t>(std::ceil(d1 / side)) + 3;
    require(last - first < (std::int64_t{1} << 26), "quadrature too large");
    levels_.push_back({m, first, boxes_.size(), static_cast<std::size_t>(last - first + 1)});
    for (std::int64_t i = first; i <= last; ++i) add_box(m, i, k);
  }
}

ConeQuadrature ConeQuadrature::single_box(const GridFunction& grid, int log2_side, std::int64_t index,
                                          int nodes_per_box) {
  ConeQuadrature q;
  q.level_ = grid.level();
  q.resolution_ = grid.resolution();
  q.origin_cells_ = grid.origin_cells();
  q.nodes_per_box_ = nodes_per_box;
  q.levels_.push_back({log2_side, index, 0, 1});
  q.add_box(log2_side, index, split_of(nodes_per_box));
  return q;
}

void ConeQuadrature::add_box(int log2_side, std::int64_t index, int k) {
  const double side = std::ldexp(1.0, log2_side);
  const double left = static_cast<double>(index) * side;
  const std::size_t box = boxes_.size();
  boxes_.push_back({log2_side, index, left, side, nodes_.size(), static_cast<std::size_t>(k * k)});
  const double dy = side / k, dt = side / (2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      nodes_.push_back({left + (a + 0.5) * dy, side / 2 + (b + 0.5) * dt, dy * dt, box});
}

bool ConeQuadrature::matches(const GridFunction& grid) const {
  return grid.level() == level_ && grid.resolution() == resolution_ && grid.origin_cells() == origin_cells_;
}

GridFunction cone_square(const GridFunction& grid, const ConeQuadrature& quad,
                         const std::vector<double>& amplitudes, double beta, bool closed) {
  require(amplitudes.size() == quad.nodes().size(), "one amplitude per node expected");
  require(beta > 0, "cone aperture must be positive");
  std::vector<double> out(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const double x = grid.cell_center(c);
    long double s = 0.0L;
    for (const auto& lv : quad.levels()) {
      const double side = std::ldexp(1.0, lv.log2_side);
      const auto [i0, i1] = clip(lv, std::floor((x - beta * side) / side) - 1, std::floor((x + beta * side) / side));
      for (std::int64_t i = i0; i <= i1; ++i) {
        const auto& box = quad.boxes()[lv.first_box + static_cast<std::size_t>(i - lv.first_index)];
        for (std::size_t n = box.first_node; n < box.first_node + box.node_count; ++n) {
          const auto& nd = quad.nodes()[n];
          const double gap = std::fabs(nd.y - x), reach = beta * nd.t;
          if (closed ? gap <= reach : gap < reach) {
            const double a = amplitudes[n];
            s += static_cast<long double>(a) * a * nd.weight / (nd.t * nd.t);
          }
        }
      }
    }
    out[c] = static_cast<double>(std::sqrt(s));
  }
  return grid.with_values(std::move(out));
}

std::vector<double> box_energies(const ConeQuadrature& quad, const std::vector<double>& amplitudes) {
  require(amplitudes.size() == quad.nodes().size(), "one amplitude per node expected");
  std::vector<double> e(quad.boxes().size(), 0.0);
  for (std::size_t n = 0; n < quad.nodes().size(); ++n) {
    const auto& nd = quad.nodes()[n];
    e[nd.box] += amplitudes[n] * amplitudes[n] * nd.weight / (nd.t * nd.t);
  }
  return e;
}

GridFunction box_square(const GridFunction& grid, const ConeQuadrature& quad,
                        const std::vector<double>& amplitudes) {
  const auto energy = box_energies(quad, amplitudes);
  std::vector<double> out(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const double x = grid.cell_center(c);
    long double s = 0.0L;
    for (const auto& lv : quad.levels()) {
      const double side = std::ldexp(1.0, lv.log2_side);
      const double j = std::floor(x / side);
      const auto [i0, i1] = clip(lv, j - 2, j + 1);
      for (std::int64_t i = i0; i <= i1; ++i) {
        const std::size_t b = lv.first_box + static_cast<std::size_t>(i - lv.first_index);
        const auto& box = quad.boxes()[b];
        if (x >= box.left - side && x < box.left + 2 * side) s += energy[b];
      }
    }
    out[c] = static_cast<double>(std::sqrt(s));
  }
  return grid.with_values(std::move(out));
}

}  // namespace sharpwt
