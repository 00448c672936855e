#include "sharpwt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sharpwt/corpus.hpp"
#include "sharpwt/error.hpp"
#include "sharpwt/operators.hpp"
#include "sharpwt/serialize.hpp"
#include "sharpwt/weights.hpp"

namespace sharpwt {

namespace {

const std::vector<std::pair<OperatorId, std::string>> kOperatorNames = {
    {OperatorId::identity, "identity"},   {OperatorId::maximal, "maximal"},
    {OperatorId::dyadic_square, "sd"},    {OperatorId::s_psi, "spsi"},
    {OperatorId::g_psi, "gpsi"},          {OperatorId::hilbert, "hilbert"},
    {OperatorId::hilbert_max, "hilbert-max"}, {OperatorId::g_alpha, "galpha"},
    {OperatorId::g_tilde, "gtilde"},
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

bool monotone_operator(OperatorId op) {
  return op == OperatorId::maximal || op == OperatorId::dyadic_square || op == OperatorId::hilbert ||
         op == OperatorId::hilbert_max;
}

std::vector<double> powers(const GridFunction& g, double e) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(g[i], e);
  return v;
}

}  // namespace

OperatorId parse_operator(const std::string& name) {
  for (const auto& [id, n] : kOperatorNames)
    if (n == name) return id;
  fail(ErrorKind::parse, "unknown operator '" + name + "'");
}

std::string operator_name(OperatorId op) {
  for (const auto& [id, n] : kOperatorNames)
    if (id == op) return n;
  return "?";
}

GridFunction apply_operator(OperatorId op, const GridFunction& f, const IntrinsicConfig& intrinsic, double beta) {
  switch (op) {
    case OperatorId::identity: return f;
    case OperatorId::maximal: return maximal(f);
    case OperatorId::dyadic_square: return dyadic_square(f);
    case OperatorId::s_psi: return s_psi(f, beta, make_quadrature(f, intrinsic));
    case OperatorId::g_psi: return g_psi(f);
    case OperatorId::hilbert: return hilbert(f);
    case OperatorId::hilbert_max: return hilbert_max(f);
    case OperatorId::g_alpha: return g_cone(f, beta, make_quadrature(f, intrinsic), intrinsic);
    case OperatorId::g_tilde: return g_tilde(f, make_quadrature(f, intrinsic), intrinsic);
  }
  fail(ErrorKind::invalid_argument, "unhandled operator");
}

ExperimentSpec ExperimentSpec::from_config(const Config& c) {
  c.expect_only({"operator", "p", "deltas", "resolution", "level", "origin", "family", "seed", "window_lo",
                 "window_hi", "target", "monotone_tolerance", "coarse_limit", "allow_coarse", "alpha", "q",
                 "nodes_per_box", "t_min_level", "t_max_level", "mode"});
  ExperimentSpec s;
  s.op = parse_operator(c.text("operator", "maximal"));
  s.p = c.number("p", s.p);
  s.deltas = c.numbers("deltas", s.deltas);
  s.resolution = c.integer("resolution", s.resolution);
  s.level = c.integer("level", s.level);
  s.origin = c.number("origin", s.origin);
  const std::string fam = c.text("family", "power");
  if (fam == "power")
    s.family = FamilyId::power;
  else if (fam == "dual")
    s.family = FamilyId::dual;
  else
    fail(ErrorKind::parse, "family must be power or dual, got '" + fam + "'");
  s.seed = static_cast<std::uint64_t>(c.number("seed", 0));
  const auto lo = c.number("window_lo"), hi = c.number("window_hi");
  if (lo.has_value() != hi.has_value()) fail(ErrorKind::parse, "window_lo and window_hi go together");
  if (lo) s.window = Window{*lo, *hi};
  s.target = c.number("target");
  s.monotone_tolerance = c.number("monotone_tolerance", s.monotone_tolerance);
  s.coarse_limit = c.number("coarse_limit", s.coarse_limit);
  s.allow_coarse = c.flag("allow_coarse", false);
  s.intrinsic.alpha = c.number("alpha", s.intrinsic.alpha);
  s.intrinsic.q = c.integer("q", s.intrinsic.q);
  s.intrinsic.nodes_per_box = c.integer("nodes_per_box", s.intrinsic.nodes_per_box);
  s.intrinsic.t_min_level = c.integer("t_min_level");
  s.intrinsic.t_max_level = c.integer("t_max_level");
  const std::string mode = c.text("mode", "dictionary");
  if (mode == "lp")
    s.intrinsic.mode = SupMode::lp;
  else if (mode == "dictionary")
    s.intrinsic.mode = SupMode::dictionary;
  else
    fail(ErrorKind::parse, "mode must be lp or dictionary");

  require(s.p > 1, "p must exceed 1");
  require(s.deltas.size() >= 4, "at least four deltas are needed for a slope fit");
  for (std::size_t i = 0; i < s.deltas.size(); ++i) {
    require(s.deltas[i] > 0 && s.deltas[i] < 1, "deltas must lie in (0, 1)");
    if (i) require(s.deltas[i] < s.deltas[i - 1], "deltas must be strictly decreasing");
  }
  return s;
}

Config ExperimentSpec::echo() const {
  Config c;
  c.set("operator", operator_name(op));
  c.set("p", format_number(p));
  c.set("deltas", join(deltas));
  c.set("resolution", std::to_string(resolution));
  c.set("level", std::to_string(level));
  c.set("origin", format_number(origin));
  c.set("family", family == FamilyId::power ? "power" : "dual");
  c.set("seed", std::to_string(seed));
  if (window) {
    c.set("window_lo", format_number(window->lo));
    c.set("window_hi", format_number(window->hi));
  }
  c.set("target", format_number(reference_exponent()));
  c.set("monotone_tolerance", format_number(monotone_tolerance));
  c.set("coarse_limit", format_number(coarse_limit));
  c.set("allow_coarse", allow_coarse ? "true" : "false");
  c.set("alpha", format_number(intrinsic.alpha));
  c.set("q", std::to_string(intrinsic.q));
  c.set("nodes_per_box", std::to_string(intrinsic.nodes_per_box));
  if (intrinsic.t_min_level) c.set("t_min_level", std::to_string(*intrinsic.t_min_level));
  if (intrinsic.t_max_level) c.set("t_max_level", std::to_string(*intrinsic.t_max_level));
  c.set("mode", intrinsic.mode == SupMode::lp ? "lp" : "dictionary");
  return c;
}

double ExperimentSpec::reference_exponent() const {
  if (target) return *target;
  const double dual = 1 / (p - 1);
  switch (op) {
    case OperatorId::identity: return 0;
    case OperatorId::maximal: return dual;
    case OperatorId::hilbert:
    case OperatorId::hilbert_max: return std::max(1.0, dual);
    default: return std::max(0.5, dual);
  }
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "need at least two points to fit");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) fail(ErrorKind::numeric, "degenerate fit: all abscissae equal");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r2 = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
  return r;
}

bool ExperimentReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ExperimentReport exponent_experiment(const ExperimentSpec& spec) {
  const GridSpec grid = GridSpec::with_origin(spec.level, spec.resolution, spec.origin);
  require(grid.origin() < 0 && grid.origin() + grid.length() >= 1, "domain must contain [0, 1) and negative reals");
  const double q = spec.family == FamilyId::power ? spec.p : spec.p / (spec.p - 1);

  std::vector<FitPoint> points;
  for (double delta : spec.deltas) {
    const GridFunction sigma = PowerWeightSpec{delta - 1, 0}.sample(grid.level, grid.resolution, grid.origin_cells);
    const Weight v(sigma.with_values(powers(sigma, 1 - q)));
    std::vector<double> fv(sigma.size(), 0.0);
    std::size_t first = sigma.size();
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma.cell_left(i) >= 0 && sigma.cell_left(i) + sigma.cell_width() <= 1) {
        fv[i] = sigma[i];
        first = std::min(first, i);
      }
    }
    const GridFunction f = sigma.with_values(std::move(fv));
    const double norm = weighted_lp_norm(f, v, q);
    const double head = std::pow(std::fabs(f[first]), q) * v[first] * f.cell_width() / std::pow(norm, q);
    if (head > spec.coarse_limit && !spec.allow_coarse) {
      std::ostringstream os;
      os << "resolution " << spec.resolution << " too coarse for delta " << delta << ": first cell carries "
         << head << " of the norm (limit " << spec.coarse_limit << ")";
      fail(ErrorKind::coarse_resolution, os.str());
    }
    const GridFunction g = apply_operator(spec.op, f, spec.intrinsic);
    const double ratio = weighted_lp_norm(g, v, q) / norm;
    const double ap = spec.family == FamilyId::power
                          ? ap_characteristic(v, spec.p)
                          : ap_characteristic(Weight(v.base().with_values(powers(v.base(), 1 - spec.p))), spec.p);
    points.push_back({delta, ap, ratio, std::log(ap), std::log(ratio), head});
  }

  std::vector<double> xs, ys;
  for (const auto& pt : points) xs.push_back(pt.log_ap), ys.push_back(pt.log_ratio);
  ExperimentReport rep;
  rep.spec = spec;
  rep.fit = fit_line(xs, ys);
  rep.fit.points = points;

  const double target = spec.reference_exponent();
  std::ostringstream os;
  os << "slope " << rep.fit.slope;
  if (spec.window) {
    const bool ok = rep.fit.slope >= spec.window->lo && rep.fit.slope <= spec.window->hi;
    rep.assertions.push_back({"window", ok, os.str() + " vs [" + format_number(spec.window->lo) + ", " +
                                               format_number(spec.window->hi) + "]"});
  }
  rep.assertions.push_back({"sharpness", rep.fit.slope <= target + 0.1,
                            os.str() + " vs reference " + format_number(target) + " + 0.1"});
  if (monotone_operator(spec.op)) {
    Assertion a{"monotone", true, "ratio non-decreasing as delta decreases"};
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].ratio < points[i - 1].ratio * (1 - spec.monotone_tolerance)) {
        a.passed = false;
        a.detail = "ratio drops from " + format_number(points[i - 1].ratio) + " to " + format_number(points[i].ratio) +
                   " at delta " + format_number(points[i].delta);
        break;
      }
    }
    rep.assertions.push_back(a);
  }
  return rep;
}

}  // namespace sharpwt
