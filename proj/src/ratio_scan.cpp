#include "sharpwt/ratio_scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "sharpwt/decomp.hpp"
#include "sharpwt/error.hpp"
#include "sharpwt/operators.hpp"
#include "sharpwt/serialize.hpp"

namespace sharpwt {

namespace {

struct Outcome {
  double value = -INFINITY;
  std::string where = "-";

  void offer(double v, const std::function<std::string()>& at) {
    if (v > value || (std::isnan(v) && !std::isnan(value))) {
      value = v;
      where = at();
    }
  }
};

std::string cell_at(const GridFunction& g, std::size_t i) { return "x=" + format_number(g.cell_center(i)); }

// Largest a[i] / b[i] over cells where b exceeds `floor`.
Outcome pointwise_ratio(const GridFunction& a, const GridFunction& b, double floor) {
  Outcome o;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > floor) o.offer(a[i] / b[i], [&] { return cell_at(a, i); });
  return o;
}

Outcome pointwise_excess(const GridFunction& a, const GridFunction& b) {
  Outcome o;
  for (std::size_t i = 0; i < a.size(); ++i) o.offer(a[i] - b[i], [&] { return cell_at(a, i); });
  return o;
}

GridFunction squared(const GridFunction& g) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g[i] * g[i];
  return g.with_values(std::move(v));
}

// Everything the intrinsic scans share for one function.
struct IntrinsicFields {
  ConeQuadrature quad;
  std::vector<double> amp;
  GridFunction g1;

  IntrinsicFields(const GridFunction& f, const IntrinsicConfig& cfg)
      : quad(make_quadrature(f, cfg)), amp(intrinsic_amplitudes(f, quad, cfg)), g1(cone_square(f, quad, amp, 1)) {}
  GridFunction box(const GridFunction& f) const { return box_square(f, quad, amp); }
};

struct Context {
  const ScanSpec& spec;
  const std::vector<CorpusItem>& corpus;
  int resolution;
};

using ScanFn = std::function<Outcome(const GridFunction& f, std::size_t index, const Context& ctx)>;

Outcome median_bound(const GridFunction& f, std::size_t, const Context&) {
  Outcome o;
  const DyadicCube root = f.domain_cube();
  for (int level = root.level; level <= f.resolution(); ++level) {
    const std::int64_t count = std::int64_t{1} << (level - root.level);
    for (std::int64_t j = 0; j < count; ++j) {
      const DyadicCube q = interval(level, (root.index[0] << (level - root.level)) + j);
      const double m = median(f, q), r = rearrangement_value(f, q, q.side() / 2);
      o.offer(std::fabs(m) - r, [&] { return q.to_string(); });
    }
  }
  return o;
}

Outcome osc_subadditive(const GridFunction& f, std::size_t index, const Context& ctx) {
  const std::size_t k = 1 + index % 4;
  std::vector<GridFunction> parts{f};
  for (std::size_t j = 1; j < k; ++j) parts.push_back(ctx.corpus[(index + 7 * j) % ctx.corpus.size()].build(ctx.resolution));
  std::vector<double> sum(f.size(), 0.0);
  for (const auto& g : parts)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g[i];
  const GridFunction total = f.with_values(std::move(sum));
  Rng rng(derive_seed(ctx.spec.corpus.seed, 1000 + index));
  const DyadicCube root = f.domain_cube();
  const double lambdas[] = {0.125, 0.25, 0.5, 0.75};
  Outcome o;
  for (int trial = 0; trial < 16; ++trial) {
    const int level = root.level + static_cast<int>(rng.below(static_cast<std::size_t>(f.resolution() - root.level + 1)));
    const std::int64_t offset = static_cast<std::int64_t>(rng.below(std::size_t{1} << (level - root.level)));
    const DyadicCube q = interval(level, (root.index[0] << (level - root.level)) + offset);
    const double lambda = lambdas[rng.below(4)];
    double rhs = 0;
    for (const auto& g : parts) rhs += local_osc(g, q, lambda / static_cast<double>(k));
    o.offer(local_osc(total, q, lambda) - rhs, [&] { return q.to_string() + " k=" + std::to_string(k); });
  }
  return o;
}

Outcome cone_below_box(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  return pointwise_excess(in.g1, in.box(f));
}

Outcome box_below_cone(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  return pointwise_excess(in.box(f), cone_square(f, in.quad, in.amp, 4, true));
}

Outcome box_oscillation(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  const GridFunction g2 = squared(in.box(f));
  const double scale = *std::max_element(g2.values().begin(), g2.values().end());
  const DyadicCube root = f.domain_cube();
  const double d0 = f.origin(), d1 = f.origin() + f.length();
  Outcome o;
  for (int level = root.level + 2; level <= std::min(root.level + 6, f.resolution()); ++level) {
    const std::int64_t count = std::int64_t{1} << (level - root.level);
    for (std::int64_t j = 0; j < count; ++j) {
      const DyadicCube q = interval(level, (root.index[0] << (level - root.level)) + j);
      const double osc = local_osc(g2, q, 0.125);
      const double lo = std::max(d0, q.center(0) - 7.5 * q.side()), hi = std::min(d1, q.center(0) + 7.5 * q.side());
      const double avg = f.abs_integral_between(lo, hi) / (hi - lo);
      if (avg > 0)
        o.offer(osc / (avg * avg), [&] { return q.to_string(); });
      else if (osc > 1e-12 * scale)
        o.offer(INFINITY, [&] { return q.to_string() + " (f vanishes on 15Q)"; });
    }
  }
  return o;
}

Weight scan_weight(std::size_t index, const Context& ctx, const GridFunction& grid) {
  Rng rng(derive_seed(ctx.spec.corpus.seed, 5000 + index));
  const GridSpec g{grid.level(), grid.resolution(), grid.origin_cells()};
  if (index % 2 == 0) {
    const double c = grid.origin() + rng.uniform() * grid.length();
    const double a = rng.uniform(-0.7, 1.5);
    return Weight(PowerWeightSpec{a, c}.sample(g.level, g.resolution, g.origin_cells), {ctx.spec.p});
  }
  return Weight(random_weight(rng.next(), g, ctx.spec.corpus.base_resolution), {ctx.spec.p});
}

Outcome sparse_testing(const GridFunction& f, std::size_t index, const Context& ctx) {
  const double p = ctx.spec.p;
  const Weight w = scan_weight(index, ctx, f);
  const double norm = weighted_lp_norm(f, w, p);
  Outcome o;
  if (norm == 0) return o;
  const Decomposition d = decompose(f, f.domain_cube());
  const GridFunction a = a_gamma(f, d, ctx.spec.gamma);
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(static_cast<long double>(a[i]), p / 2) * w[i];
  const double lhs = static_cast<double>(std::pow(s * f.cell_width(), 2 / p));
  o.offer(lhs / (ap_characteristic(w, p) * norm * norm), [&] { return "whole domain"; });
  return o;
}

Outcome pointwise_box(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  const GridFunction g2 = squared(in.box(f));
  const Decomposition d = decompose(g2, g2.domain_cube());
  const GridFunction a = a_gamma(f, d, ctx.spec.gamma);
  const GridFunction mf = maximal(f);
  const double m = median(g2, g2.all());
  Outcome o;
  for (std::size_t i = 0; i < f.size(); ++i)
    o.offer(std::fabs(g2[i] - m) / (mf[i] * mf[i] + a[i] + 1e-9), [&] { return cell_at(f, i); });
  return o;
}

Outcome weak_type(const GridFunction& f, std::size_t, const Context& ctx) {
  Outcome o;
  const double l1 = f.abs_integral(f.all());
  if (l1 == 0) return o;
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  std::vector<double> v = in.g1.values();
  std::sort(v.begin(), v.end(), std::greater<>());
  // Just below level v[k] the superlevel set holds every value >= v[k].
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k + 1 < v.size() && v[k + 1] == v[k]) continue;
    const double t = v[k];
    o.offer(t * static_cast<double>(k + 1) * f.cell_width() / l1, [&] { return "level " + format_number(t); });
  }
  return o;
}

Outcome aperture(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  return pointwise_ratio(cone_square(f, in.quad, in.amp, 4), in.g1, 1e-6);
}

Outcome psi_vs_intrinsic(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  const PsiKernel psi;
  auto amp = psi_amplitudes(f, psi, in.quad);
  const double norm = psi.holder_seminorm(ctx.spec.intrinsic.alpha);
  for (auto& v : amp) v /= norm;
  return pointwise_ratio(cone_square(f, in.quad, amp, 1), in.g1, 1e-6);
}

Outcome hilbert_cone(const GridFunction& f, std::size_t, const Context& ctx) {
  const IntrinsicFields in(f, ctx.spec.intrinsic);
  const GridFunction hf = hilbert(f);
  const auto amp = psi_amplitudes(hf, PsiKernel(), in.quad);
  Outcome o;
  for (double beta : {1.0, 3.0}) {
    const Outcome b = pointwise_ratio(cone_square(hf, in.quad, amp, beta), in.g1, 1e-6);
    o.offer(b.value, [&] { return b.where + " beta=" + format_number(beta); });
  }
  return o;
}

GridFunction test_weight(std::size_t index, std::uint64_t seed, const GridSpec& g, int base) {
  Rng rng(derive_seed(seed, 9000 + index));
  switch (index % 3) {
    case 0: return random_weight(rng.next(), g, base);
    case 1: return PowerWeightSpec{rng.uniform(-0.9, 3.0), g.origin() + rng.uniform() * g.length()}.sample(
        g.level, g.resolution, g.origin_cells);
    default: {
      const double contrast = std::exp(rng.uniform(0, 4));
      const int level = static_cast<int>(rng.below(static_cast<std::size_t>(std::min(base, g.resolution) + g.level + 1)));
      const double side = std::ldexp(g.length(), -level);
      const double lo = g.origin() + side * static_cast<double>(rng.below(std::size_t{1} << level));
      return GridFunction::from_averages(g.level, g.resolution, g.origin_cells, [=](double a, double b) {
        const double in = std::max(0.0, std::min(b, lo + side) - std::max(a, lo));
        return 1 + (contrast - 1) * in / (b - a);
      });
    }
  }
}

const std::map<std::string, ScanFn>& registry() {
  static const std::map<std::string, ScanFn> r = {
      {"median-bound", median_bound},     {"osc-subadditive", osc_subadditive},
      {"cone-below-box", cone_below_box}, {"box-below-cone", box_below_cone},
      {"box-oscillation", box_oscillation}, {"sparse-testing", sparse_testing},
      {"pointwise-box", pointwise_box},   {"weak-type", weak_type},
      {"aperture", aperture},             {"psi-vs-intrinsic", psi_vs_intrinsic},
      {"hilbert-cone", hilbert_cone},
  };
  return r;
}

}  // namespace

std::vector<std::string> scan_names() {
  std::vector<std::string> names;
  for (const auto& [n, fn] : registry()) names.push_back(n);
  names.push_back("ainfty-vs-ap");
  std::sort(names.begin(), names.end());
  return names;
}

bool exact_scan(const std::string& name) {
  return name == "median-bound" || name == "osc-subadditive" || name == "cone-below-box" ||
         name == "box-below-cone";
}

ScanSpec ScanSpec::from_config(const Config& c) {
  c.expect_only({"scan", "seed", "random_count", "structured_count", "base_resolution", "resolution", "refine",
                 "max_drift", "exact_tolerance", "p", "gamma", "weight_count", "alpha", "q", "nodes_per_box",
                 "t_min_level", "t_max_level", "mode"});
  ScanSpec s;
  s.scan = c.text("scan", "");
  const auto names = scan_names();
  if (std::find(names.begin(), names.end(), s.scan) == names.end())
    fail(ErrorKind::parse, "unknown scan '" + s.scan + "'");
  s.corpus.seed = static_cast<std::uint64_t>(c.number("seed", 1));
  s.corpus.random_count = c.integer("random_count", s.corpus.random_count);
  s.corpus.structured_count = c.integer("structured_count", s.corpus.structured_count);
  s.corpus.base_resolution = c.integer("base_resolution", s.corpus.base_resolution);
  s.resolution = c.integer("resolution", s.resolution);
  s.refine = c.flag("refine", s.refine);
  s.max_drift = c.number("max_drift", s.max_drift);
  s.exact_tolerance = c.number("exact_tolerance", s.exact_tolerance);
  s.p = c.number("p", s.p);
  s.gamma = c.number("gamma", s.gamma);
  s.weight_count = c.integer("weight_count", s.weight_count);
  s.intrinsic.alpha = c.number("alpha", s.intrinsic.alpha);
  s.intrinsic.q = c.integer("q", s.intrinsic.q);
  s.intrinsic.nodes_per_box = c.integer("nodes_per_box", s.intrinsic.nodes_per_box);
  s.intrinsic.t_min_level = c.integer("t_min_level");
  s.intrinsic.t_max_level = c.integer("t_max_level");
  const std::string mode = c.text("mode", "lp");
  require(mode == "lp" || mode == "dictionary", "mode must be lp or dictionary");
  s.intrinsic.mode = mode == "lp" ? SupMode::lp : SupMode::dictionary;
  require(s.resolution >= s.corpus.base_resolution, "resolution must not be below base_resolution");
  return s;
}

Config ScanSpec::echo() const {
  Config c;
  c.set("scan", scan);
  c.set("seed", std::to_string(corpus.seed));
  c.set("random_count", std::to_string(corpus.random_count));
  c.set("structured_count", std::to_string(corpus.structured_count));
  c.set("base_resolution", std::to_string(corpus.base_resolution));
  c.set("resolution", std::to_string(resolution));
  c.set("refine", refine ? "true" : "false");
  c.set("max_drift", format_number(max_drift));
  c.set("exact_tolerance", format_number(exact_tolerance));
  c.set("p", format_number(p));
  c.set("gamma", format_number(gamma));
  c.set("weight_count", std::to_string(weight_count));
  c.set("alpha", format_number(intrinsic.alpha));
  c.set("q", std::to_string(intrinsic.q));
  c.set("nodes_per_box", std::to_string(intrinsic.nodes_per_box));
  if (intrinsic.t_min_level) c.set("t_min_level", std::to_string(*intrinsic.t_min_level));
  if (intrinsic.t_max_level) c.set("t_max_level", std::to_string(*intrinsic.t_max_level));
  c.set("mode", intrinsic.mode == SupMode::lp ? "lp" : "dictionary");
  return c;
}

bool ScanReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ScanReport ratio_scan(const ScanSpec& spec) {
  ScanReport rep;
  rep.spec = spec;
  const bool exact = exact_scan(spec.scan);
  rep.resolutions = {spec.resolution};
  if (spec.refine) rep.resolutions.push_back(spec.resolution + 1);
  const auto corpus = make_corpus(spec.corpus);

  for (int s : rep.resolutions) {
    Outcome best;
    std::string best_item = "-";
    auto record = [&](const std::string& item, const Outcome& o) {
      if (o.value == -INFINITY) return;
      if (!std::isfinite(o.value)) ++rep.flagged;
      rep.entries.push_back({item, s, o.value, o.where});
      if (o.value > best.value || (!std::isfinite(o.value) && std::isfinite(best.value))) {
        best = o;
        best_item = item;
      }
    };
    if (spec.scan == "ainfty-vs-ap") {
      const GridSpec g = GridSpec::with_origin(spec.corpus.level, s, spec.corpus.origin);
      for (int i = 0; i < spec.weight_count; ++i) {
        const Weight w(test_weight(static_cast<std::size_t>(i), spec.corpus.seed, g, spec.corpus.base_resolution));
        Outcome o;
        o.offer(ainfty_fujii(w) / ap_characteristic(w, 2), [] { return "whole domain"; });
        record("weight-" + std::to_string(i), o);
      }
    } else {
      const ScanFn& fn = registry().at(spec.scan);
      const Context ctx{spec, corpus, s};
      for (std::size_t i = 0; i < corpus.size(); ++i) record(corpus[i].name, fn(corpus[i].build(s), i, ctx));
    }
    rep.maxima.push_back(best.value);
    rep.argmax.push_back(best_item + " @ " + best.where);
  }

  if (rep.maxima.size() == 2) {
    const double a = rep.maxima[0], b = rep.maxima[1];
    rep.drift = a > 0 ? b / a : (b <= 0 ? 1.0 : INFINITY);
  }
  std::ostringstream max_text;
  for (std::size_t i = 0; i < rep.maxima.size(); ++i)
    max_text << (i ? ", " : "") << "s=" << rep.resolutions[i] << ": " << format_number(rep.maxima[i]);
  if (exact) {
    const double worst = *std::max_element(rep.maxima.begin(), rep.maxima.end());
    rep.assertions.push_back({"exact", worst <= spec.exact_tolerance && rep.flagged == 0,
                              "max violation " + max_text.str() + " (tolerance " + format_number(spec.exact_tolerance) + ")"});
  } else {
    rep.assertions.push_back({"finite", rep.flagged == 0, std::to_string(rep.flagged) + " non-finite entries"});
    if (spec.refine)
      rep.assertions.push_back({"drift", rep.drift <= spec.max_drift,
                                "max " + max_text.str() + ", drift " + format_number(rep.drift) + " (limit " +
                                    format_number(spec.max_drift) + ")"});
  }
  return rep;
}

}  // namespace sharpwt
