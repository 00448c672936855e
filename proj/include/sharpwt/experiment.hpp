#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sharpwt/config.hpp"
#include "sharpwt/intrinsic.hpp"

namespace sharpwt {

struct Assertion {
  std::string name;
  bool passed = true;
  std::string detail;
};

enum class OperatorId { identity, maximal, dyadic_square, s_psi, g_psi, hilbert, hilbert_max, g_alpha, g_tilde };

// Names: identity, maximal, sd, spsi, gpsi, hilbert, hilbert-max, galpha, gtilde.
OperatorId parse_operator(const std::string& name);
std::string operator_name(OperatorId op);

// Cone operators use aperture `beta` and the quadrature described by `intrinsic`.
GridFunction apply_operator(OperatorId op, const GridFunction& f, const IntrinsicConfig& intrinsic, double beta = 1);

// Power pairs built from sigma = cell averages of |x|^(delta-1):
//   power: weight sigma^(1-p), function sigma on (0,1), norms in L^p;
//   dual:  the same pair at the conjugate exponent, the A_p axis taken for
//          w = v^(1-p) where v is the conjugate-exponent weight. Valid for
//          linear operators with antisymmetric kernels, whose weighted norms
//          agree under this exchange.
enum class FamilyId { power, dual };

struct Window {
  double lo;
  double hi;
};

struct ExperimentSpec {
  OperatorId op = OperatorId::maximal;
  double p = 2;
  std::vector<double> deltas{0.5, 0.42, 0.35, 0.3};
  int resolution = 14;
  int level = 1;
  double origin = -1;
  FamilyId family = FamilyId::power;
  std::uint64_t seed = 0;
  std::optional<Window> window;
  std::optional<double> target;
  double monotone_tolerance = 0.01;
  double coarse_limit = 0.1;
  bool allow_coarse = false;
  IntrinsicConfig intrinsic{.alpha = 0.5, .q = 17, .nodes_per_box = 1, .t_min_level = {}, .t_max_level = {},
                            .mode = SupMode::dictionary};

  static ExperimentSpec from_config(const Config& c);
  Config echo() const;
  // Conjectured growth exponent for this operator and p.
  double reference_exponent() const;
};

struct FitPoint {
  double delta;
  double ap_char;
  double ratio;
  double log_ap;
  double log_ratio;
  double first_cell_fraction;
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::vector<FitPoint> points;
};

// Least squares y = slope x + intercept.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentReport {
  ExperimentSpec spec;
  FitResult fit;
  std::vector<Assertion> assertions;

  bool passed() const;
};

ExperimentReport exponent_experiment(const ExperimentSpec& spec);

}  // namespace sharpwt
