#pragma once

#include <cstdint>
#include <vector>

#include "sharpwt/cone.hpp"
#include "sharpwt/gridfn.hpp"
#include "sharpwt/weights.hpp"

namespace sharpwt {

// Sup of averages of |f| over windows of 2^m cells containing each cell.
GridFunction maximal(const GridFunction& f);
// Sup over windows centred at each cell (radii 0 and 2^m cells, clipped to the domain)
// of the nu-weighted average of |f|.
GridFunction maximal_centered(const GridFunction& f, const Weight& nu);

// Martingale square function on the dyadic tree rooted at the (dyadic) domain.
GridFunction dyadic_square(const GridFunction& f);

struct Fraction {
  std::int64_t num;
  std::int64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Even mean-zero bump (1-x^2)^2 - c (1-x^2)^3 on [-1, 1].
class PsiKernel {
 public:
  PsiKernel();

  // c = integral of (1-x^2)^2 over integral of (1-x^2)^3, reduced.
  const Fraction& zero_mean_coefficient() const { return coefficient_; }
  double value(double u) const;
  // Antiderivative, zero at -1 (and at +1 by the mean-zero property).
  double antiderivative(double u) const;
  double holder_seminorm(double alpha, int samples = 4001) const;

 private:
  Fraction coefficient_;
  std::vector<double> poly_;  // ascending powers of u
};

// (f * psi_t)(y) computed exactly against the step function.
double psi_convolution(const GridFunction& f, const PsiKernel& psi, double y, double t);
std::vector<double> psi_amplitudes(const GridFunction& f, const PsiKernel& psi, const ConeQuadrature& quad);

GridFunction s_psi(const GridFunction& f, double beta, const ConeQuadrature& quad, bool closed = false);
// Log-spaced scales t_j = 2^(j + 1/2), j in [min_log2_t, max_log2_t), each weighted by ln 2.
GridFunction g_psi(const GridFunction& f, int min_log2_t, int max_log2_t);
GridFunction g_psi(const GridFunction& f);

// Truncation radii 2^m cell widths up to the domain length.
std::vector<double> truncation_ladder(const GridFunction& f);
// Convolution with 1/x restricted to |x| > delta, evaluated at cell centres.
GridFunction hilbert_truncated(const GridFunction& f, double delta);
GridFunction hilbert(const GridFunction& f);
GridFunction hilbert_max(const GridFunction& f);

}  // namespace sharpwt
