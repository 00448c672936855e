#include "sharpwt/simplex.hpp"

#include <cmath>

#include "sharpwt/error.hpp"

namespace sharpwt::lp {

void Problem::add_row(const std::vector<double>& coeffs, double rhs) {
  require(coeffs.size() == vars, "constraint width does not match the variable count");
  a.insert(a.end(), coeffs.begin(), coeffs.end());
  b.push_back(rhs);
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;
constexpr int kDegenerateStreak = 50;

// Condensed tableau: basic_i = rhs_i - sum_k t(i,k) nonbasic_k, z = z0 + sum_k d_k nonbasic_k.
// Variable ids: [0, vars) are the free unknowns, [vars, vars + rows) the slacks.
class Tableau {
 public:
  explicit Tableau(const Problem& p)
      : m_(p.rows()), n_(p.vars), t_(p.a), rhs_(p.b), d_(p.c), basic_(m_), nonbasic_(n_), flipped_(n_, false) {
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = n_ + i;
    for (std::size_t k = 0; k < n_; ++k) nonbasic_[k] = k;
  }

  Result solve(int max_pivots) {
    Result res;
    int degenerate = 0;
    while (true) {
      const bool bland = degenerate >= kDegenerateStreak;
      const std::ptrdiff_t col = choose_entering(bland);
      if (col < 0) break;
      const auto k = static_cast<std::size_t>(col);
      if (d_[k] < 0) negate_column(k);  // free variable entering downwards
      const std::ptrdiff_t row = choose_leaving(k);
      if (row < 0) {
        res.status = Status::unbounded;
        return res;
      }
      const double step = rhs_[static_cast<std::size_t>(row)] / at(static_cast<std::size_t>(row), k);
      degenerate = step <= 0.0 ? degenerate + 1 : 0;
      pivot(static_cast<std::size_t>(row), k);
      if (++res.pivots >= max_pivots) {
        res.status = Status::iteration_limit;
        break;
      }
    }
    res.value = z0_;
    res.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] < n_) res.x[basic_[i]] = flipped_[basic_[i]] ? -rhs_[i] : rhs_[i];
    return res;
  }

 private:
  double& at(std::size_t i, std::size_t k) { return t_[i * n_ + k]; }
  bool is_free(std::size_t var) const { return var < n_; }

  std::ptrdiff_t choose_entering(bool bland) const {
    std::ptrdiff_t best = -1;
    double best_score = kCostTol;
    std::size_t best_id = SIZE_MAX;
    for (std::size_t k = 0; k < n_; ++k) {
      const double score = is_free(nonbasic_[k]) ? std::fabs(d_[k]) : d_[k];
      if (score <= kCostTol) continue;
      if (bland ? nonbasic_[k] < best_id : score > best_score) {
        best = static_cast<std::ptrdiff_t>(k);
        best_score = score;
        best_id = nonbasic_[k];
      }
    }
    return best;
  }

  std::ptrdiff_t choose_leaving(std::size_t k) {
    std::ptrdiff_t best = -1;
    double best_ratio = INFINITY;
    for (std::size_t i = 0; i < m_; ++i) {
      if (is_free(basic_[i])) continue;  // free basics never leave
      const double a = at(i, k);
      if (a <= kPivotTol) continue;
      const double r = rhs_[i] / a;
      if (r < best_ratio || (r == best_ratio && basic_[i] < basic_[static_cast<std::size_t>(best)])) {
        best_ratio = r;
        best = static_cast<std::ptrdiff_t>(i);
      }
    }
    return best;
  }

  void negate_column(std::size_t k) {
    for (std::size_t i = 0; i < m_; ++i) at(i, k) = -at(i, k);
    d_[k] = -d_[k];
    flipped_[nonbasic_[k]] = !flipped_[nonbasic_[k]];
  }

  void pivot(std::size_t r, std::size_t k) {
    const double p = at(r, k);
    double* row = &t_[r * n_];
    rhs_[r] /= p;
    for (std::size_t j = 0; j < n_; ++j) row[j] = j == k ? 1.0 / p : row[j] / p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = &t_[i * n_];
      const double f = ri[k];
      if (f == 0.0) continue;
      rhs_[i] -= f * rhs_[r];
      for (std::size_t j = 0; j < n_; ++j) ri[j] = j == k ? -f / p : ri[j] - f * row[j];
      if (!is_free(basic_[i]) && rhs_[i] < 0.0 && rhs_[i] > -1e-13) rhs_[i] = 0.0;
    }
    const double dk = d_[k];
    z0_ += dk * rhs_[r];
    for (std::size_t j = 0; j < n_; ++j) d_[j] = j == k ? -dk / p : d_[j] - dk * row[j];
    std::swap(basic_[r], nonbasic_[k]);
  }

  std::size_t m_, n_;
  std::vector<double> t_, rhs_, d_;
  std::vector<std::size_t> basic_, nonbasic_;
  std::vector<bool> flipped_;
  double z0_ = 0.0;
};

}  // namespace

Result maximize(const Problem& problem, int max_pivots) {
  require(problem.a.size() == problem.rows() * problem.vars && problem.c.size() == problem.vars,
          "inconsistent LP dimensions");
  for (double v : problem.b) require(v >= 0.0, "LP right-hand side must be non-negative");
  return Tableau(problem).solve(max_pivots);
}

}  // namespace sharpwt::lp
