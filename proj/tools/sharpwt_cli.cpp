// Command-line front end. Talks to the library only through sharpwt.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sharpwt/sharpwt.h"

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(swt_status s) {
  if (s != SWT_OK) throw CliError(std::string(swt_status_name(s)) + ": " + swt_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using FunctionPtr = std::unique_ptr<swt_function, Deleter<swt_function, swt_function_free>>;
using WeightPtr = std::unique_ptr<swt_weight, Deleter<swt_weight, swt_weight_free>>;
using DecompPtr = std::unique_ptr<swt_decomposition, Deleter<swt_decomposition, swt_decomposition_free>>;
using ReportPtr = std::unique_ptr<swt_report, Deleter<swt_report, swt_report_free>>;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_out(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !(out.flush())) throw CliError("cannot write " + path);
}

// Shared options of the report-producing commands.
struct ReportOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "flat key=value config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", seed, "rng seed, overrides the config");
    cmd->add_option("--out", out, "output path (stdout if absent)");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--set", overrides, "extra key=value, applied after the config file");
  }

  // Later keys win, so overrides go last.
  std::string text(const std::vector<std::string>& extra = {}) const {
    std::string t = config.empty() ? "" : slurp(config) + "\n";
    for (const auto& kv : extra) t += kv + "\n";
    for (const auto& kv : overrides) t += kv + "\n";
    if (seed) t += "seed=" + std::to_string(*seed) + "\n";
    return t;
  }
};

int finish(swt_report* r, const std::string& out, const std::string& format) {
  const char* text = nullptr;
  check(swt_report_render(r, format.c_str(), &text));
  if (out.empty()) {
    std::cout << text;
  } else {
    write_out(out, text);
    std::cout << swt_report_summary(r);
  }
  if (swt_report_passed(r)) return 0;
  std::cerr << swt_report_failures(r);
  return 1;
}

struct GridOptions {
  int level = 0;
  int resolution = 10;
  double origin = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--level", level, "domain length is 2^level");
    cmd->add_option("--res", resolution, "2^res cells per unit length");
    cmd->add_option("--origin", origin, "left end of the domain");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted norm growth experiments for square functions and singular integrals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(swt_version()));

  ReportOptions exp_opts;
  auto* exponent = app.add_subcommand("exponent", "fit the growth exponent of an operator on an extremal family");
  exp_opts.attach(exponent);
  std::string exp_op;
  std::optional<double> exp_p;
  exponent->add_option("--op", exp_op, "operator, overrides the config");
  exponent->add_option("--p", exp_p, "exponent p, overrides the config");

  ReportOptions scan_opts;
  auto* scan = app.add_subcommand("ratio-scan", "scan an inequality over a seeded corpus");
  scan_opts.attach(scan);
  std::string scan_name;
  bool scan_list = false;
  scan->add_option("--scan", scan_name, "scan id, overrides the config");
  scan->add_flag("--list", scan_list, "print the scan ids and exit");

  GridOptions dec_grid;
  std::string dec_fn, dec_out;
  double dec_lambda = 0.125;
  auto* decompose = app.add_subcommand("decompose", "build the stopping-time decomposition of a function");
  dec_grid.attach(decompose);
  decompose->add_option("--fn", dec_fn, "function spec")->required();
  decompose->add_option("--lambda", dec_lambda, "stopping level");
  decompose->add_option("--out", dec_out, "tree JSON path")->required();

  std::string ver_tree, ver_out, ver_format = "csv";
  auto* verify = app.add_subcommand("verify", "re-check a saved decomposition tree");
  verify->add_option("tree", ver_tree, "tree JSON written by decompose")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", ver_out, "output path (stdout if absent)");
  verify->add_option("--format", ver_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  GridOptions app_grid;
  std::string app_op, app_fn, app_out, app_format = "csv";
  std::vector<std::string> app_sets;
  double app_beta = 1;
  auto* apply = app.add_subcommand("apply", "apply an operator to a function");
  app_grid.attach(apply);
  apply->add_option("--op", app_op, "maximal|sd|spsi|gpsi|hilbert|hilbert-max|galpha|gtilde|identity")->required();
  apply->add_option("--fn", app_fn, "function spec")->required();
  apply->add_option("--beta", app_beta, "cone aperture");
  apply->add_option("--set", app_sets, "intrinsic option key=value (alpha, q, nodes_per_box, mode, ...)");
  apply->add_option("--out", app_out, "output path (stdout if absent)");
  apply->add_option("--format", app_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  GridOptions ap_grid;
  std::string ap_weight;
  double ap_p = 2;
  bool ap_ainfty = false;
  auto* ap = app.add_subcommand("ap", "A_p characteristic of a weight");
  ap_grid.attach(ap);
  ap->add_option("--weight", ap_weight, "weight spec")->required();
  ap->add_option("--p", ap_p, "exponent p");
  ap->add_flag("--ainfty", ap_ainfty, "also print the A_infinity characteristic");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*exponent) {
      std::vector<std::string> extra;
      if (!exp_op.empty()) extra.push_back("operator=" + exp_op);
      if (exp_p) extra.push_back("p=" + std::to_string(*exp_p));
      swt_report* raw = nullptr;
      check(swt_exponent(exp_opts.text(extra).c_str(), &raw));
      ReportPtr r(raw);
      return finish(r.get(), exp_opts.out, exp_opts.format);
    }
    if (*scan) {
      if (scan_list) {
        std::cout << swt_scan_names();
        return 0;
      }
      std::vector<std::string> extra;
      if (!scan_name.empty()) extra.push_back("scan=" + scan_name);
      swt_report* raw = nullptr;
      check(swt_ratio_scan(scan_opts.text(extra).c_str(), &raw));
      ReportPtr r(raw);
      return finish(r.get(), scan_opts.out, scan_opts.format);
    }
    if (*decompose) {
      swt_function* fraw = nullptr;
      check(swt_function_from_spec(dec_fn.c_str(), dec_grid.level, dec_grid.resolution, dec_grid.origin, &fraw));
      FunctionPtr f(fraw);
      swt_decomposition* draw = nullptr;
      check(swt_decompose(f.get(), dec_lambda, &draw));
      DecompPtr d(draw);
      check(swt_decomposition_save(d.get(), dec_out.c_str()));
      std::cout << swt_decomposition_cube_count(d.get()) << " stopping cubes in "
                << swt_decomposition_generations(d.get()) << " generations written to " << dec_out << '\n';
      return 0;
    }
    if (*verify) {
      swt_report* raw = nullptr;
      check(swt_verify_file(ver_tree.c_str(), &raw));
      ReportPtr r(raw);
      return finish(r.get(), ver_out, ver_format);
    }
    if (*apply) {
      swt_function* fraw = nullptr;
      check(swt_function_from_spec(app_fn.c_str(), app_grid.level, app_grid.resolution, app_grid.origin, &fraw));
      FunctionPtr f(fraw);
      std::string options = "beta=" + std::to_string(app_beta) + "\n";
      for (const auto& kv : app_sets) options += kv + "\n";
      swt_function* graw = nullptr;
      check(swt_apply(app_op.c_str(), f.get(), options.c_str(), &graw));
      FunctionPtr g(graw);
      check(swt_function_save(g.get(), app_out.empty() ? "/dev/stdout" : app_out.c_str(), app_format.c_str()));
      return 0;
    }
    if (*ap) {
      swt_weight* wraw = nullptr;
      check(swt_weight_from_spec(ap_weight.c_str(), ap_grid.level, ap_grid.resolution, ap_grid.origin, &wraw));
      WeightPtr w(wraw);
      double value = 0;
      check(swt_weight_ap(w.get(), ap_p, &value));
      std::printf("ap %.17g\n", value);
      if (ap_ainfty) {
        check(swt_weight_ainfty(w.get(), &value));
        std::printf("ainfty %.17g\n", value);
      }
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "sharpwt: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
