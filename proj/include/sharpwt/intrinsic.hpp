#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sharpwt/cone.hpp"
#include "sharpwt/gridfn.hpp"
#include "sharpwt/simplex.hpp"

namespace sharpwt {

// Piecewise-linear kernel on q uniform nodes of [-1, 1], zero at both ends.
class HolderKernel {
 public:
  HolderKernel(double alpha, std::vector<double> samples);

  double alpha() const { return alpha_; }
  int q() const { return static_cast<int>(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }
  double node(int i) const;
  double evaluate(double u) const;
  // max over node pairs of |phi_i - phi_j| / |u_i - u_j|^alpha
  double holder_ratio() const;
  double integral() const;
  bool feasible(double tol = 1e-12) const;

 private:
  double alpha_;
  std::vector<double> samples_;
};

double hat_node(int q, int i);

// Feasible kernels for (alpha, q) as an LP over the q - 2 interior samples.
class HolderClass {
 public:
  HolderClass(double alpha, int q);

  double alpha() const { return alpha_; }
  int q() const { return q_; }

  // max |sum c_i phi_i| over the class; coeffs has one entry per interior node.
  double sup(std::span<const double> coeffs) const;
  HolderKernel argmax(std::span<const double> coeffs) const;

  // Eight fixed feasible kernels; their best value is a lower bound for sup.
  const std::vector<HolderKernel>& dictionary() const { return dictionary_; }
  double dictionary_sup(std::span<const double> coeffs) const;

 private:
  lp::Result solve(std::span<const double> coeffs) const;

  double alpha_;
  int q_;
  lp::Problem base_;
  std::vector<HolderKernel> dictionary_;
};

// c_i = integral of f(y - t u) H_i(u) du for the interior hat functions H_i.
std::vector<double> hat_coefficients(const GridFunction& f, double y, double t, int q);

double holder_sup(const GridFunction& f, double y, double t, double alpha, int q);

enum class SupMode { lp, dictionary };

struct IntrinsicConfig {
  double alpha = 0.5;
  int q = 17;
  int nodes_per_box = 1;
  std::optional<int> t_min_level;
  std::optional<int> t_max_level;
  SupMode mode = SupMode::lp;
};

ConeQuadrature make_quadrature(const GridFunction& grid, const IntrinsicConfig& cfg);

// Sup over the class at every node of quad, the shared input of g_cone and g_tilde.
std::vector<double> intrinsic_amplitudes(const GridFunction& f, const ConeQuadrature& quad,
                                         const IntrinsicConfig& cfg);

GridFunction g_cone(const GridFunction& f, double beta, const ConeQuadrature& quad, const IntrinsicConfig& cfg,
                    bool closed = false);
GridFunction g_tilde(const GridFunction& f, const ConeQuadrature& quad, const IntrinsicConfig& cfg);

}  // namespace sharpwt
