#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sharpwt/config.hpp"
#include "sharpwt/corpus.hpp"
#include "sharpwt/emit.hpp"
#include "sharpwt/error.hpp"
#include "sharpwt/experiment.hpp"
#include "sharpwt/ratio_scan.hpp"
#include "sharpwt/serialize.hpp"

using namespace sharpwt;

namespace {

std::size_t count_lines(const std::string& s, char first) {
  std::istringstream in(s);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] == first) ++n;
  return n;
}

}  // namespace

TEST_CASE("config parsing") {
  const Config c = Config::parse("# comment\n a = 1.5 \nlist=1, 2,3\nflag=yes\nname = x # trailing\n");
  CHECK(c.number("a", 0) == 1.5);
  CHECK(c.numbers("list", {}) == std::vector<double>{1, 2, 3});
  CHECK(c.flag("flag", false));
  CHECK(c.text("name", "") == "x");
  CHECK_FALSE(c.integer("missing").has_value());
  CHECK_THROWS_AS(Config::parse("novalue\n"), Error);
  CHECK_THROWS_AS(c.integer("a", 0), Error);
  CHECK_THROWS_AS(c.expect_only({"a"}), Error);
  CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), Error);
  // Later keys win.
  CHECK(Config::parse("a=1\na=2\n").number("a", 0) == 2);
}

TEST_CASE("function and weight specs") {
  const GridSpec g{0, 4, 0};
  CHECK(make_function("const:2", g).values() == std::vector<double>(16, 2.0));
  const GridFunction ind = make_function("indicator:0.25:0.5", g);
  CHECK(ind[3] == 0.0);
  CHECK(ind[4] == 1.0);
  CHECK(ind[8] == 0.0);
  const GridFunction haar = make_function("haar:0:1", g);
  CHECK(haar[0] == 1.0);
  CHECK(haar[15] == -1.0);
  CHECK(make_function("random:5", g).values() == make_function("random:5", g).values());
  CHECK(make_function("random:5", g).values() != make_function("random:6", g).values());
  CHECK_THROWS_AS(make_function("nonsense", g), Error);
  CHECK_THROWS_AS(make_function("const", g), Error);
  CHECK_THROWS_AS(make_weight("const:0", g), Error);
  CHECK(make_weight("power:0.5", GridSpec{1, 4, -16}).base()[16] > 0);
}

TEST_CASE("corpus") {
  CorpusSpec spec;
  const auto items = make_corpus(spec);
  CHECK(items.size() == 60);
  for (const auto& it : items) {
    const GridFunction a = it.build(6), b = it.build(7);
    CHECK(a.size() == 64);
    CHECK(b.size() == 128);
    CHECK(a.values() == it.build(6).values());
    // Refinement keeps the function (random items are fixed coarse steps).
    if (it.name.rfind("random", 0) == 0) CHECK(b.refined(0).integral(b.all()) == doctest::Approx(a.integral(a.all())));
  }
}

TEST_CASE("grid function serialization") {
  const GridFunction f(1, 3, -8, {0.1, -2, 3e-300, 4, 5, 6, 7, 1.0 / 3, 9, 10, 11, 12, 13, 14, 15, 16});
  const auto j = to_json(f);
  CHECK(j.at("level_L") == 1);
  CHECK(j.at("resolution_s") == 3);
  CHECK(j.at("origin") == -1.0);
  const GridFunction g = function_from_json(nlohmann::json::parse(j.dump()));
  CHECK(g.values() == f.values());
  CHECK(g.origin_cells() == f.origin_cells());
  std::ostringstream os;
  write_csv(os, f);
  CHECK(count_lines(os.str(), 'x') == 1);
  CHECK(os.str().find("-1,-0.875,0.1\n") != std::string::npos);
  CHECK_THROWS(function_from_json(nlohmann::json::parse(R"({"level_L":0,"resolution_s":1,"origin":0,"values":[1]})")));
  CHECK_THROWS(function_from_json(nlohmann::json::parse(R"({"level_L":0,"resolution_s":1,"origin":0.3,"values":[1,2]})")));
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("slope fit") {
  const auto r = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(r.slope == doctest::Approx(2));
  CHECK(r.intercept == doctest::Approx(1));
  CHECK(r.r2 == doctest::Approx(1));
  CHECK_THROWS_AS(fit_line({1, 1, 1, 1}, {1, 2, 3, 4}), Error);
}

TEST_CASE("experiment spec validation") {
  CHECK_THROWS_AS(ExperimentSpec::from_config(Config::parse("deltas=0.5,0.4,0.3\n")), Error);
  CHECK_THROWS_AS(ExperimentSpec::from_config(Config::parse("deltas=0.5,0.4,0.45,0.3\n")), Error);
  CHECK_THROWS_AS(ExperimentSpec::from_config(Config::parse("p=1\n")), Error);
  CHECK_THROWS_AS(ExperimentSpec::from_config(Config::parse("operator=foo\n")), Error);
  CHECK_THROWS_AS(ExperimentSpec::from_config(Config::parse("colour=blue\n")), Error);
  const auto s = ExperimentSpec::from_config(Config::parse("operator=sd\np=1.5\n"));
  CHECK(s.reference_exponent() == doctest::Approx(2));
  CHECK(ExperimentSpec::from_config(Config::parse("operator=maximal\np=4\n")).reference_exponent() ==
        doctest::Approx(1.0 / 3));
  CHECK(ExperimentSpec::from_config(Config::parse("operator=hilbert\np=1.5\n")).reference_exponent() ==
        doctest::Approx(2));
  CHECK(ExperimentSpec::from_config(Config::parse("operator=hilbert\np=3\n")).reference_exponent() ==
        doctest::Approx(1));
  // echo round-trips.
  const auto e = ExperimentSpec::from_config(s.echo());
  CHECK(e.echo().entries() == s.echo().entries());
}

TEST_CASE("identity operator has slope zero") {
  const auto spec =
      ExperimentSpec::from_config(Config::parse("operator=identity\nresolution=12\nwindow_lo=-0.02\nwindow_hi=0.02\n"));
  const auto r = exponent_experiment(spec);
  CHECK(std::fabs(r.fit.slope) <= 0.02);
  CHECK(r.passed());
  for (const auto& p : r.fit.points) CHECK(p.ratio == doctest::Approx(1));
}

TEST_CASE("coarse resolution is refused") {
  const auto spec = ExperimentSpec::from_config(Config::parse("resolution=6\n"));
  CHECK_THROWS_AS(exponent_experiment(spec), Error);
  try {
    exponent_experiment(spec);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::coarse_resolution);
  }
  auto ok = spec;
  ok.allow_coarse = true;
  CHECK_NOTHROW(exponent_experiment(ok));
}

TEST_CASE("exponent emission") {
  const auto spec = ExperimentSpec::from_config(
      Config::parse("operator=maximal\np=2\nresolution=10\ndeltas=0.5,0.45,0.4,0.36,0.33,0.3\nallow_coarse=true\n"
                    "window_lo=0.5\nwindow_hi=1.05\nseed=9\n"));
  const auto r = exponent_experiment(spec);
  const std::string csv = exponent_csv(r);
  CHECK(csv.rfind("delta,ap_char,ratio,log_ap,log_ratio\n", 0) == 0);
  CHECK(count_lines(csv, '0') == 6);
  CHECK(count_lines(csv, '#') >= 4);
  CHECK(csv == exponent_csv(exponent_experiment(spec)));
  const auto j = exponent_json(r);
  CHECK(j.at("seed") == 9);
  CHECK(j.at("git_describe") == git_describe());
  CHECK(j.at("spec").at("operator") == "maximal");
  CHECK(j.at("points").size() == 6);
  CHECK(j.dump().find("time") == std::string::npos);
  CHECK(failure_list(r.assertions) == (r.passed() ? "" : failure_list(r.assertions)));
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("monotonicity assertion trips on a failing window") {
  const auto spec = ExperimentSpec::from_config(
      Config::parse("operator=maximal\np=2\nresolution=10\nallow_coarse=true\nwindow_lo=2\nwindow_hi=3\n"));
  const auto r = exponent_experiment(spec);
  CHECK_FALSE(r.passed());
  CHECK(failure_list(r.assertions).find("FAILED window") != std::string::npos);
}

TEST_CASE("ratio scan plumbing") {
  CHECK(scan_names().size() == 12);
  CHECK(exact_scan("median-bound"));
  CHECK_FALSE(exact_scan("aperture"));
  CHECK_THROWS_AS(ScanSpec::from_config(Config::parse("scan=nope\n")), Error);
  const auto spec =
      ScanSpec::from_config(Config::parse("scan=weak-type\nrandom_count=5\nstructured_count=3\nresolution=6\n"));
  const auto r = ratio_scan(spec);
  CHECK(r.entries.size() == 16);
  CHECK(r.resolutions == std::vector<int>{6, 7});
  CHECK(r.maxima.size() == 2);
  CHECK(std::isfinite(r.drift));
  CHECK(scan_csv(r) == scan_csv(ratio_scan(spec)));
  CHECK(scan_csv(r).rfind("item,resolution,value,where\n", 0) == 0);
  CHECK(scan_json(r).at("entries").size() == 16);
  const auto echoed = ScanSpec::from_config(spec.echo());
  CHECK(echoed.echo().entries() == spec.echo().entries());
}

TEST_CASE("exact scans report zero violation") {
  for (const char* name : {"median-bound", "osc-subadditive"}) {
    const auto r = ratio_scan(ScanSpec::from_config(Config::parse(std::string("scan=") + name + "\n")));
    CHECK(r.passed());
  }
}
