#include "sharpwt/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sharpwt/config.hpp"
#include "sharpwt/error.hpp"
#include "sharpwt/serialize.hpp"

namespace sharpwt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

void arity(const std::vector<std::string>& parts, std::size_t lo, std::size_t hi, const std::string& spec) {
  if (parts.size() < lo || parts.size() > hi) fail(ErrorKind::parse, "malformed spec '" + spec + "'");
}

double overlap(double a, double b, double lo, double hi) { return std::max(0.0, std::min(b, hi) - std::max(a, lo)); }

GridFunction from_file(const std::string& path) { return function_from_json(read_json_file(path)); }

GridFunction at(const GridSpec& g, const std::function<double(double, double)>& avg) {
  return GridFunction::from_averages(g.level, g.resolution, g.origin_cells, avg);
}

GridFunction coarse_then_refined(const GridSpec& g, int base, std::vector<double> v) {
  const int extra = g.resolution - base;
  const std::int64_t origin = g.origin_cells >> extra;
  require(origin << extra == g.origin_cells, "domain origin is not aligned to the base resolution");
  return GridFunction(g.level, base, origin, std::move(v)).refined(extra);
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0;
  while (u == 0) u = uniform();
  const double v = uniform();
  const double r = std::sqrt(-2 * std::log(u));
  spare_ = r * std::sin(2 * std::numbers::pi * v);
  has_spare_ = true;
  return r * std::cos(2 * std::numbers::pi * v);
}

std::size_t Rng::below(std::size_t n) {
  require(n > 0, "empty range");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined input
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GridSpec GridSpec::with_origin(int level, int resolution, double origin) {
  const double cells = std::ldexp(origin, resolution);
  if (cells != std::floor(cells)) fail(ErrorKind::invalid_argument, "origin is not a multiple of the cell width");
  return {level, resolution, static_cast<std::int64_t>(cells)};
}

double GridSpec::origin() const { return std::ldexp(static_cast<double>(origin_cells), -resolution); }

double GridSpec::length() const { return std::ldexp(1.0, level); }

GridFunction make_function(const std::string& spec, const GridSpec& grid) {
  if (spec.rfind("file:", 0) == 0) return from_file(spec.substr(5));
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  auto num = [&](std::size_t i) { return parse_number(parts.at(i), spec); };
  if (kind == "const") {
    arity(parts, 2, 2, spec);
    const double c = num(1);
    return at(grid, [c](double, double) { return c; });
  }
  if (kind == "indicator" || kind == "haar") {
    arity(parts, 3, 3, spec);
    const double lo = num(1), hi = num(2);
    require(hi > lo, "empty interval in '" + spec + "'");
    const double mid = (lo + hi) / 2;
    if (kind == "indicator") return at(grid, [=](double a, double b) { return overlap(a, b, lo, hi) / (b - a); });
    return at(grid, [=](double a, double b) { return (overlap(a, b, lo, mid) - overlap(a, b, mid, hi)) / (b - a); });
  }
  if (kind == "power") {
    arity(parts, 2, 3, spec);
    PowerWeightSpec p{num(1), parts.size() > 2 ? num(2) : 0.0};
    return p.sample(grid.level, grid.resolution, grid.origin_cells);
  }
  if (kind == "bump") {
    arity(parts, 4, 4, spec);
    const double c = num(1), r = num(2);
    PowerWeightSpec p{num(3), c};
    require(r > 0, "bump radius must be positive");
    return at(grid, [=](double a, double b) {
      const double lo = std::max(a, c - r), hi = std::min(b, c + r);
      return hi > lo ? p.average(lo, hi) * (hi - lo) / (b - a) : 0.0;
    });
  }
  if (kind == "alternating") {
    arity(parts, 1, 1, spec);
    std::vector<double> v(std::size_t{1} << (grid.level + grid.resolution));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i % 2 ? -1.0 : 1.0;
    return GridFunction(grid.level, grid.resolution, grid.origin_cells, std::move(v));
  }
  if (kind == "random") {
    arity(parts, 2, 3, spec);
    const auto seed = static_cast<std::uint64_t>(parse_number(parts[1], spec));
    const int k = parts.size() > 2 ? parse_integer(parts[2], spec) : 0;
    return random_step(seed, k, grid, std::min(grid.resolution, 5));
  }
  fail(ErrorKind::parse, "unknown function spec '" + spec + "'");
}

Weight make_weight(const std::string& spec, const GridSpec& grid, const std::vector<double>& cached_ps) {
  if (spec.rfind("file:", 0) == 0) return Weight(from_file(spec.substr(5)), cached_ps);
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  if (kind == "const" || kind == "power") return Weight(make_function(spec, grid), cached_ps);
  if (kind == "random") {
    arity(parts, 2, 2, spec);
    const auto seed = static_cast<std::uint64_t>(parse_number(parts[1], spec));
    return Weight(random_weight(seed, grid, std::min(grid.resolution, 5)), cached_ps);
  }
  fail(ErrorKind::parse, "unknown weight spec '" + spec + "'");
}

GridFunction random_step(std::uint64_t seed, int kind, const GridSpec& grid, int base_resolution) {
  const int base = std::min(base_resolution, grid.resolution);
  require(grid.level + base >= 0, "base resolution too coarse for the domain");
  const std::size_t n = std::size_t{1} << (grid.level + base);
  Rng rng(seed);
  std::vector<double> v(n);
  double walk = 0;
  for (auto& x : v) {
    switch (((kind % kRandomKinds) + kRandomKinds) % kRandomKinds) {
      case 0: x = rng.normal(); break;
      case 1: x = rng.uniform(-1, 1); break;
      case 2: x = rng.uniform() < 0.1 ? rng.uniform(-8, 8) : 0.0; break;
      case 3: x = walk += rng.normal(); break;
      default: x = (rng.uniform() < 0.5 ? -1 : 1) * std::exp(1.5 * rng.normal()); break;
    }
  }
  return coarse_then_refined(grid, base, std::move(v));
}

GridFunction random_weight(std::uint64_t seed, const GridSpec& grid, int base_resolution) {
  const int base = std::min(base_resolution, grid.resolution);
  const std::size_t n = std::size_t{1} << (grid.level + base);
  Rng rng(seed);
  const double spread = rng.uniform(0.3, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(spread * rng.normal());
  return coarse_then_refined(grid, base, std::move(v));
}

std::vector<CorpusItem> make_corpus(const CorpusSpec& spec) {
  std::vector<CorpusItem> items;
  const double d0 = spec.origin, len = std::ldexp(1.0, spec.level);
  auto grid_at = [spec](int s) { return GridSpec::with_origin(spec.level, s, spec.origin); };
  for (int i = 0; i < spec.random_count; ++i) {
    const std::uint64_t seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
    const int kind = i % kRandomKinds, base = spec.base_resolution;
    items.push_back({"random-" + std::to_string(i), [=](int s) { return random_step(seed, kind, grid_at(s), base); }});
  }
  auto x = [=](double frac) { return format_number(d0 + frac * len); };
  const std::vector<std::pair<std::string, std::string>> structured = {
      {"indicator-quarter", "indicator:" + x(0.25) + ":" + x(0.5)},
      {"indicator-narrow", "indicator:" + x(0.375) + ":" + x(0.4375)},
      {"haar-root", "haar:" + x(0) + ":" + x(1)},
      {"haar-quarter", "haar:" + x(0.25) + ":" + x(0.5)},
      {"haar-eighth", "haar:" + x(0.625) + ":" + x(0.75)},
      {"bump-sharp", "bump:" + x(0.4) + ":" + format_number(0.25 * len) + ":-0.5"},
      {"bump-mild", "bump:" + x(0.7) + ":" + format_number(0.125 * len) + ":-0.3"},
      {"power-cusp", "power:0.5:" + x(0.5)},
      {"indicator-far", "indicator:" + x(0.875) + ":" + x(0.90625)},
      {"haar-tiny", "haar:" + x(0.125) + ":" + x(0.140625)},
  };
  for (int i = 0; i < spec.structured_count; ++i) {
    const auto& [name, fn] = structured[static_cast<std::size_t>(i) % structured.size()];
    items.push_back({name, [=](int s) { return make_function(fn, grid_at(s)); }});
  }
  return items;
}

}  // namespace sharpwt
