// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sharpwt/sharpwt.h"

TEST_CASE("function handles") {
  const std::vector<double> v = {1, -2, 3, 4};
  swt_function* f = nullptr;
  REQUIRE(swt_function_create(0, 2, 0, v.data(), v.size(), &f) == SWT_OK);
  CHECK(swt_function_size(f) == 4);
  int level = 9, res = 9;
  int64_t origin = 9;
  CHECK(swt_function_grid(f, &level, &res, &origin) == SWT_OK);
  CHECK(level == 0);
  CHECK(res == 2);
  CHECK(origin == 0);
  std::vector<double> back(4);
  CHECK(swt_function_values(f, back.data(), back.size()) == SWT_OK);
  CHECK(back == v);
  CHECK(swt_function_values(f, back.data(), 3) == SWT_ERR_INVALID_ARGUMENT);

  swt_function* g = nullptr;
  REQUIRE(swt_apply("maximal", f, nullptr, &g) == SWT_OK);
  CHECK(swt_function_values(g, back.data(), back.size()) == SWT_OK);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] >= std::fabs(v[i]));
  swt_function_free(g);
  swt_function_free(f);
}

TEST_CASE("error codes") {
  swt_function* f = nullptr;
  const double one = 1;
  CHECK(swt_function_create(0, 2, 0, &one, 1, &f) == SWT_ERR_INVALID_ARGUMENT);
  CHECK(f == nullptr);
  CHECK(std::string(swt_last_error()).size() > 0);
  CHECK(swt_function_create(0, 0, 0, nullptr, 1, &f) == SWT_ERR_INVALID_ARGUMENT);
  CHECK(swt_function_from_spec("nonsense", 0, 4, 0, &f) == SWT_ERR_PARSE);
  CHECK(swt_function_load("/nonexistent.json", &f) == SWT_ERR_IO);
  REQUIRE(swt_function_from_spec("haar:0:1", 0, 4, 0, &f) == SWT_OK);
  swt_function* g = nullptr;
  CHECK(swt_apply("nope", f, nullptr, &g) == SWT_ERR_PARSE);
  CHECK(swt_apply("galpha", f, "alpha=2", &g) != SWT_OK);
  CHECK(swt_apply(nullptr, f, nullptr, &g) == SWT_ERR_INVALID_ARGUMENT);
  CHECK(swt_exponent("p=0.5\n", nullptr) == SWT_ERR_INVALID_ARGUMENT);
  swt_report* r = nullptr;
  CHECK(swt_exponent("resolution=6\n", &r) == SWT_ERR_COARSE_RESOLUTION);
  CHECK(std::string(swt_status_name(SWT_ERR_DOMAIN)) == "domain error");
  swt_function_free(f);
  swt_function_free(nullptr);
}

TEST_CASE("weights") {
  swt_weight* w = nullptr;
  REQUIRE(swt_weight_from_spec("const:3", 0, 4, 0, &w) == SWT_OK);
  double ap = 0, ainf = 0;
  CHECK(swt_weight_ap(w, 2, &ap) == SWT_OK);
  CHECK(ap == doctest::Approx(1));
  CHECK(swt_weight_ainfty(w, &ainf) == SWT_OK);
  CHECK(ainf == doctest::Approx(1));
  CHECK(swt_weight_ap(w, 1, &ap) != SWT_OK);
  swt_weight_free(w);
}

TEST_CASE("decompose, save and verify") {
  swt_function* f = nullptr;
  REQUIRE(swt_function_from_spec("random:3", 0, 8, 0, &f) == SWT_OK);
  swt_decomposition* d = nullptr;
  REQUIRE_MESSAGE(swt_decompose(f, 0.25, &d) == SWT_OK, std::string(swt_last_error()));
  CHECK(swt_decomposition_cube_count(d) > 1);
  CHECK(swt_decomposition_generations(d) >= 1);
  swt_report* r = nullptr;
  REQUIRE(swt_verify(d, &r) == SWT_OK);
  CHECK(swt_report_passed(r) == 1);
  CHECK(std::string(swt_report_failures(r)).empty());
  swt_report_free(r);

  const std::string path = "capi_tree.json";
  REQUIRE(swt_decomposition_save(d, path.c_str()) == SWT_OK);
  REQUIRE(swt_verify_file(path.c_str(), &r) == SWT_OK);
  CHECK(swt_report_passed(r) == 1);
  const char* text = nullptr;
  REQUIRE(swt_report_render(r, "csv", &text) == SWT_OK);
  CHECK(std::string(text).rfind("check,passed,worst_slack,detail", 0) == 0);
  CHECK(swt_report_render(r, "yaml", &text) == SWT_ERR_INVALID_ARGUMENT);
  swt_report_free(r);
  std::remove(path.c_str());
  swt_decomposition_free(d);
  swt_function_free(f);
}

TEST_CASE("reports") {
  swt_report* r = nullptr;
  REQUIRE(swt_exponent("operator=identity\nresolution=12\nwindow_lo=-0.02\nwindow_hi=0.02\n", &r) == SWT_OK);
  CHECK(swt_report_passed(r) == 1);
  const char* text = nullptr;
  REQUIRE(swt_report_render(r, "json", &text) == SWT_OK);
  CHECK(std::string(text).find("\"git_describe\"") != std::string::npos);
  CHECK(std::string(swt_report_summary(r)).size() > 0);
  swt_report_free(r);

  REQUIRE(swt_exponent("operator=maximal\nresolution=10\nallow_coarse=true\nwindow_lo=3\nwindow_hi=4\n", &r) ==
          SWT_OK);
  CHECK(swt_report_passed(r) == 0);
  CHECK(std::string(swt_report_failures(r)).find("window") != std::string::npos);
  swt_report_free(r);

  REQUIRE(swt_ratio_scan("scan=median-bound\nrandom_count=4\nstructured_count=2\nresolution=6\n", &r) == SWT_OK);
  CHECK(swt_report_passed(r) == 1);
  swt_report_free(r);
  CHECK(std::string(swt_scan_names()).find("median-bound") != std::string::npos);
}
