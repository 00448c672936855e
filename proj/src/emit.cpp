#include "sharpwt/emit.hpp"

#include <cmath>
#include <sstream>

#include "sharpwt/error.hpp"
#include "sharpwt/serialize.hpp"

namespace sharpwt {

namespace {

nlohmann::json config_json(const Config& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : c.entries()) j[k] = v;
  return j;
}

nlohmann::json assertions_json(const std::vector<Assertion>& as) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : as) j.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return j;
}

// Non-finite numbers have no JSON literal; they go out as strings.
nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

void assertion_footer(std::ostream& os, const std::vector<Assertion>& as) {
  for (const auto& a : as) os << "# assert " << a.name << ' ' << (a.passed ? "PASS" : "FAIL") << ": " << a.detail << '\n';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  fail(ErrorKind::invalid_argument, "format must be csv or json, got '" + name + "'");
}

std::string git_describe() { return SHARPWT_GIT_DESCRIBE; }

std::string exponent_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "delta,ap_char,ratio,log_ap,log_ratio\n";
  for (const auto& p : r.fit.points)
    os << format_number(p.delta) << ',' << format_number(p.ap_char) << ',' << format_number(p.ratio) << ','
       << format_number(p.log_ap) << ',' << format_number(p.log_ratio) << '\n';
  os << "# slope " << format_number(r.fit.slope) << '\n';
  os << "# intercept " << format_number(r.fit.intercept) << '\n';
  os << "# r2 " << format_number(r.fit.r2) << '\n';
  os << "# reference_exponent " << format_number(r.spec.reference_exponent()) << '\n';
  assertion_footer(os, r.assertions);
  return os.str();
}

nlohmann::json exponent_json(const ExperimentReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.fit.points)
    points.push_back({{"delta", p.delta},
                      {"ap_char", number_json(p.ap_char)},
                      {"ratio", number_json(p.ratio)},
                      {"log_ap", number_json(p.log_ap)},
                      {"log_ratio", number_json(p.log_ratio)},
                      {"first_cell_fraction", number_json(p.first_cell_fraction)}});
  return {{"kind", "exponent"},
          {"spec", config_json(r.spec.echo())},
          {"seed", r.spec.seed},
          {"git_describe", git_describe()},
          {"fit",
           {{"slope", number_json(r.fit.slope)},
            {"intercept", number_json(r.fit.intercept)},
            {"r2", number_json(r.fit.r2)}}},
          {"reference_exponent", r.spec.reference_exponent()},
          {"points", points},
          {"assertions", assertions_json(r.assertions)},
          {"passed", r.passed()}};
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "item,resolution,value,where\n";
  for (const auto& e : r.entries)
    os << csv_field(e.item) << ',' << e.resolution << ',' << format_number(e.value) << ',' << csv_field(e.where) << '\n';
  for (std::size_t i = 0; i < r.maxima.size(); ++i)
    os << "# max s=" << r.resolutions[i] << ' ' << format_number(r.maxima[i]) << " at " << r.argmax[i] << '\n';
  if (r.maxima.size() == 2) os << "# drift " << format_number(r.drift) << '\n';
  os << "# flagged " << r.flagged << '\n';
  assertion_footer(os, r.assertions);
  return os.str();
}

nlohmann::json scan_json(const ScanReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"item", e.item}, {"resolution", e.resolution}, {"value", number_json(e.value)}, {"where", e.where}});
  nlohmann::json maxima = nlohmann::json::array();
  for (std::size_t i = 0; i < r.maxima.size(); ++i)
    maxima.push_back({{"resolution", r.resolutions[i]}, {"max", number_json(r.maxima[i])}, {"argmax", r.argmax[i]}});
  return {{"kind", "ratio-scan"},
          {"spec", config_json(r.spec.echo())},
          {"seed", r.spec.corpus.seed},
          {"git_describe", git_describe()},
          {"exact", exact_scan(r.spec.scan)},
          {"maxima", maxima},
          {"drift", number_json(r.drift)},
          {"flagged", r.flagged},
          {"entries", entries},
          {"assertions", assertions_json(r.assertions)},
          {"passed", r.passed()}};
}

std::string emit(const ExperimentReport& r, Format f) {
  return f == Format::csv ? exponent_csv(r) : exponent_json(r).dump(2) + "\n";
}

std::string emit(const ScanReport& r, Format f) {
  return f == Format::csv ? scan_csv(r) : scan_json(r).dump(2) + "\n";
}

std::string failure_list(const std::vector<Assertion>& assertions) {
  std::ostringstream os;
  for (const auto& a : assertions)
    if (!a.passed) os << "FAILED " << a.name << ": " << a.detail << '\n';
  return os.str();
}

}  // namespace sharpwt
