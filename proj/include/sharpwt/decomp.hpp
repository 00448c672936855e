#pragma once

#include <string>
#include <vector>

#include "sharpwt/dyadic.hpp"
#include "sharpwt/gridfn.hpp"

namespace sharpwt {

struct StopCube {
  DyadicCube cube;
  CellRange cells;
  int parent = -1;        // index in the previous generation, -1 when the parent is the root
  double osc_coeff = 0;   // local_osc(f, dyadic parent of cube, lambda)
  double e_set_measure = 0;  // |cube minus next generation|
};

struct Decomposition {
  DyadicCube root;
  CellRange root_cells;
  double root_median = 0;
  double lambda = 0.125;
  std::vector<std::vector<StopCube>> generations;

  std::size_t cube_count() const;
};

constexpr double kDefaultStopLevel = 0.125;

Decomposition decompose(const GridFunction& f, const DyadicCube& q0, double lambda = kDefaultStopLevel);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  double worst_slack = 0;
  std::string detail;
};

struct VerificationReport {
  std::vector<PropertyCheck> checks;

  bool passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

// Checks disjointness per generation, nesting, the density bound, the sparse sets, pointwise
// domination |f - m| <= 4 M#(2 lambda) + 4 sum coeff, and that the recorded numbers match f.
VerificationReport verify_decomposition(const GridFunction& f, const Decomposition& d, double tolerance = 1e-9);

// x -> sum over stopping cubes Q containing x of (average of |f| over gamma Q)^2, f zero off the domain.
GridFunction a_gamma(const GridFunction& f, const Decomposition& d, double gamma);

}  // namespace sharpwt
