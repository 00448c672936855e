#pragma once

#include <cstddef>
#include <vector>

namespace sharpwt::lp {

// maximize c.x subject to A x <= b with every x_j free. Requires b >= 0 so the
// origin is a feasible starting vertex.
struct Problem {
  std::size_t vars = 0;
  std::vector<double> a;  // row-major, rows x vars
  std::vector<double> b;
  std::vector<double> c;

  std::size_t rows() const { return b.size(); }
  void add_row(const std::vector<double>& coeffs, double rhs);
};

enum class Status { optimal, unbounded, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double value = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

Result maximize(const Problem& problem, int max_pivots = 100000);

}  // namespace sharpwt::lp
