#include "sharpwt/sharpwt.h"

#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "sharpwt/config.hpp"
#include "sharpwt/corpus.hpp"
#include "sharpwt/decomp.hpp"
#include "sharpwt/emit.hpp"
#include "sharpwt/error.hpp"
#include "sharpwt/experiment.hpp"
#include "sharpwt/ratio_scan.hpp"
#include "sharpwt/serialize.hpp"

using namespace sharpwt;

struct swt_function {
  GridFunction f;
};

struct swt_weight {
  Weight w;
};

struct swt_decomposition {
  GridFunction f;
  Decomposition d;
};

struct VerifyResult {
  VerificationReport report;
  std::size_t cube_count;
  std::size_t generations;
};

struct swt_report {
  std::variant<ExperimentReport, ScanReport, VerifyResult> body;
  std::string rendered;
  std::string failures;
  std::string summary;
};

namespace {

thread_local std::string last_error;

swt_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return SWT_ERR_INVALID_ARGUMENT;
    case ErrorKind::domain: return SWT_ERR_DOMAIN;
    case ErrorKind::grid_mismatch: return SWT_ERR_GRID_MISMATCH;
    case ErrorKind::io: return SWT_ERR_IO;
    case ErrorKind::parse: return SWT_ERR_PARSE;
    case ErrorKind::numeric: return SWT_ERR_NUMERIC;
    case ErrorKind::coarse_resolution: return SWT_ERR_COARSE_RESOLUTION;
  }
  return SWT_ERR_INTERNAL;
}

template <class Fn>
swt_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SWT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("json: ") + e.what();
    return SWT_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SWT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SWT_ERR_INTERNAL;
  }
}

const char* need(const char* s, const char* what) {
  if (!s) fail(ErrorKind::invalid_argument, std::string(what) + " is null");
  return s;
}

template <class T>
void need_out(T** out) {
  if (!out) fail(ErrorKind::invalid_argument, "output pointer is null");
  *out = nullptr;
}

template <class T>
const T& deref(const T* p) {
  if (!p) fail(ErrorKind::invalid_argument, "handle is null");
  return *p;
}

Config config_from(const char* text, const std::string& origin) {
  return text ? Config::parse(text, origin) : Config{};
}

std::string describe(const ExperimentReport& r) {
  std::ostringstream os;
  os << operator_name(r.spec.op) << " p=" << format_number(r.spec.p) << " slope=" << format_number(r.fit.slope)
     << " r2=" << format_number(r.fit.r2) << " reference=" << format_number(r.spec.reference_exponent()) << '\n';
  for (const auto& a : r.assertions) os << (a.passed ? "ok   " : "FAIL ") << a.name << ": " << a.detail << '\n';
  return os.str();
}

std::string describe(const ScanReport& r) {
  std::ostringstream os;
  os << r.spec.scan << (exact_scan(r.spec.scan) ? " (exact)" : " (bound)") << '\n';
  for (std::size_t i = 0; i < r.maxima.size(); ++i)
    os << "  s=" << r.resolutions[i] << " max " << format_number(r.maxima[i]) << " at " << r.argmax[i] << '\n';
  for (const auto& a : r.assertions) os << (a.passed ? "ok   " : "FAIL ") << a.name << ": " << a.detail << '\n';
  return os.str();
}

std::string describe(const VerifyResult& v) {
  std::ostringstream os;
  os << v.cube_count << " stopping cubes in " << v.generations << " generations\n";
  for (const auto& c : v.report.checks)
    os << (c.passed ? "ok   " : "FAIL ") << c.name << " (worst slack " << format_number(c.worst_slack) << ")"
       << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
  return os.str();
}

std::vector<Assertion> assertions_of(const swt_report& r) {
  if (auto* e = std::get_if<ExperimentReport>(&r.body)) return e->assertions;
  if (auto* s = std::get_if<ScanReport>(&r.body)) return s->assertions;
  std::vector<Assertion> out;
  for (const auto& c : std::get<VerifyResult>(r.body).report.checks) out.push_back({c.name, c.passed, c.detail});
  return out;
}

swt_report* make_report(decltype(swt_report::body) body) {
  auto* r = new swt_report{std::move(body), {}, {}, {}};
  r->failures = failure_list(assertions_of(*r));
  r->summary = std::visit([](const auto& b) { return describe(b); }, r->body);
  return r;
}

VerifyResult verify_result(const GridFunction& f, const Decomposition& d) {
  return {verify_decomposition(f, d), d.cube_count(), d.generations.size()};
}

std::string render_verify(const VerifyResult& v, Format fmt) {
  if (fmt == Format::csv) {
    std::ostringstream os;
    os << "check,passed,worst_slack,detail\n";
    for (const auto& c : v.report.checks)
      os << c.name << ',' << (c.passed ? 1 : 0) << ',' << format_number(c.worst_slack) << ",\"" << c.detail << "\"\n";
    return os.str();
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : v.report.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"worst_slack", std::isfinite(c.worst_slack) ? nlohmann::json(c.worst_slack)
                                                                   : nlohmann::json(format_number(c.worst_slack))},
                      {"detail", c.detail}});
  nlohmann::json j = {{"kind", "verify"},
                      {"git_describe", git_describe()},
                      {"cube_count", v.cube_count},
                      {"generations", v.generations},
                      {"checks", checks},
                      {"passed", v.report.passed()}};
  return j.dump(2) + "\n";
}

IntrinsicConfig intrinsic_from(const Config& c, IntrinsicConfig base) {
  base.alpha = c.number("alpha", base.alpha);
  base.q = c.integer("q", base.q);
  base.nodes_per_box = c.integer("nodes_per_box", base.nodes_per_box);
  if (auto v = c.integer("t_min_level")) base.t_min_level = v;
  if (auto v = c.integer("t_max_level")) base.t_max_level = v;
  const std::string mode = c.text("mode", base.mode == SupMode::lp ? "lp" : "dictionary");
  require(mode == "lp" || mode == "dictionary", "mode must be lp or dictionary");
  base.mode = mode == "lp" ? SupMode::lp : SupMode::dictionary;
  return base;
}

}  // namespace

extern "C" {

const char* swt_last_error(void) { return last_error.c_str(); }

const char* swt_status_name(swt_status s) {
  switch (s) {
    case SWT_OK: return "ok";
    case SWT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SWT_ERR_DOMAIN: return "domain error";
    case SWT_ERR_GRID_MISMATCH: return "grid mismatch";
    case SWT_ERR_IO: return "i/o error";
    case SWT_ERR_PARSE: return "parse error";
    case SWT_ERR_NUMERIC: return "numeric error";
    case SWT_ERR_COARSE_RESOLUTION: return "resolution too coarse";
    case SWT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* swt_version(void) {
  static const std::string v = git_describe();
  return v.c_str();
}

swt_status swt_function_create(int level, int resolution, int64_t origin_cells, const double* values, size_t count,
                               swt_function** out) {
  return guarded([&] {
    need_out(out);
    if (!values && count) fail(ErrorKind::invalid_argument, "values is null");
    std::vector<double> v(values, values + count);
    *out = new swt_function{GridFunction(level, resolution, origin_cells, std::move(v))};
  });
}

swt_status swt_function_from_spec(const char* spec, int level, int resolution, double origin, swt_function** out) {
  return guarded([&] {
    need_out(out);
    *out = new swt_function{make_function(need(spec, "spec"), GridSpec::with_origin(level, resolution, origin))};
  });
}

swt_status swt_function_load(const char* path, swt_function** out) {
  return guarded([&] {
    need_out(out);
    *out = new swt_function{function_from_json(read_json_file(need(path, "path")))};
  });
}

swt_status swt_function_save(const swt_function* f, const char* path, const char* format) {
  return guarded([&] {
    const Format fmt = parse_format(format ? format : "json");
    std::ostringstream os;
    if (fmt == Format::csv)
      write_csv(os, deref(f).f);
    else
      os << to_json(deref(f).f).dump() << '\n';
    write_text_file(need(path, "path"), os.str());
  });
}

size_t swt_function_size(const swt_function* f) { return f ? f->f.size() : 0; }

swt_status swt_function_grid(const swt_function* f, int* level, int* resolution, int64_t* origin_cells) {
  return guarded([&] {
    const GridFunction& g = deref(f).f;
    if (level) *level = g.level();
    if (resolution) *resolution = g.resolution();
    if (origin_cells) *origin_cells = g.origin_cells();
  });
}

swt_status swt_function_values(const swt_function* f, double* out, size_t count) {
  return guarded([&] {
    const GridFunction& g = deref(f).f;
    if (count != g.size())
      fail(ErrorKind::invalid_argument, "buffer holds " + std::to_string(count) + " values, function has " +
                                            std::to_string(g.size()));
    if (!out && count) fail(ErrorKind::invalid_argument, "output buffer is null");
    std::copy(g.values().begin(), g.values().end(), out);
  });
}

void swt_function_free(swt_function* f) { delete f; }

swt_status swt_weight_from_spec(const char* spec, int level, int resolution, double origin, swt_weight** out) {
  return guarded([&] {
    need_out(out);
    *out = new swt_weight{make_weight(need(spec, "spec"), GridSpec::with_origin(level, resolution, origin))};
  });
}

swt_status swt_weight_ap(const swt_weight* w, double p, double* out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::invalid_argument, "output pointer is null");
    *out = ap_characteristic(deref(w).w, p);
  });
}

swt_status swt_weight_ainfty(const swt_weight* w, double* out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::invalid_argument, "output pointer is null");
    *out = ainfty_fujii(deref(w).w);
  });
}

void swt_weight_free(swt_weight* w) { delete w; }

swt_status swt_apply(const char* op, const swt_function* f, const char* options, swt_function** out) {
  return guarded([&] {
    need_out(out);
    const Config c = config_from(options, "<options>");
    c.expect_only({"beta", "alpha", "q", "nodes_per_box", "t_min_level", "t_max_level", "mode"});
    const IntrinsicConfig ic = intrinsic_from(c, IntrinsicConfig{});
    *out = new swt_function{apply_operator(parse_operator(need(op, "op")), deref(f).f, ic, c.number("beta", 1))};
  });
}

swt_status swt_decompose(const swt_function* f, double lambda, swt_decomposition** out) {
  return guarded([&] {
    need_out(out);
    const GridFunction& g = deref(f).f;
    *out = new swt_decomposition{g, decompose(g, g.domain_cube(), lambda)};
  });
}

swt_status swt_decomposition_save(const swt_decomposition* d, const char* path) {
  return guarded([&] { write_text_file(need(path, "path"), to_json(deref(d).d, d->f).dump(1) + "\n"); });
}

size_t swt_decomposition_cube_count(const swt_decomposition* d) { return d ? d->d.cube_count() : 0; }
size_t swt_decomposition_generations(const swt_decomposition* d) { return d ? d->d.generations.size() : 0; }
void swt_decomposition_free(swt_decomposition* d) { delete d; }

swt_status swt_verify(const swt_decomposition* d, swt_report** out) {
  return guarded([&] {
    need_out(out);
    *out = make_report(verify_result(deref(d).f, d->d));
  });
}

swt_status swt_verify_file(const char* path, swt_report** out) {
  return guarded([&] {
    need_out(out);
    const auto j = read_json_file(need(path, "path"));
    if (!j.contains("function")) fail(ErrorKind::parse, std::string(path) + ": no embedded function");
    const GridFunction f = function_from_json(j.at("function"));
    *out = make_report(verify_result(f, decomposition_from_json(j, f)));
  });
}

swt_status swt_exponent(const char* config, swt_report** out) {
  return guarded([&] {
    need_out(out);
    *out = make_report(exponent_experiment(ExperimentSpec::from_config(config_from(config, "<config>"))));
  });
}

swt_status swt_ratio_scan(const char* config, swt_report** out) {
  return guarded([&] {
    need_out(out);
    *out = make_report(ratio_scan(ScanSpec::from_config(config_from(config, "<config>"))));
  });
}

int swt_report_passed(const swt_report* r) {
  if (!r) return 0;
  return std::visit(
      [](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, VerifyResult>)
          return b.report.passed();
        else
          return b.passed();
      },
      r->body) ? 1 : 0;
}

swt_status swt_report_render(swt_report* r, const char* format, const char** text) {
  return guarded([&] {
    if (!text) fail(ErrorKind::invalid_argument, "output pointer is null");
    *text = nullptr;
    if (!r) fail(ErrorKind::invalid_argument, "handle is null");
    const Format fmt = parse_format(format ? format : "json");
    if (auto* e = std::get_if<ExperimentReport>(&r->body))
      r->rendered = emit(*e, fmt);
    else if (auto* s = std::get_if<ScanReport>(&r->body))
      r->rendered = emit(*s, fmt);
    else
      r->rendered = render_verify(std::get<VerifyResult>(r->body), fmt);
    *text = r->rendered.c_str();
  });
}

const char* swt_report_failures(const swt_report* r) { return r ? r->failures.c_str() : ""; }
const char* swt_report_summary(const swt_report* r) { return r ? r->summary.c_str() : ""; }
void swt_report_free(swt_report* r) { delete r; }

const char* swt_scan_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : scan_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

}  // extern "C"
