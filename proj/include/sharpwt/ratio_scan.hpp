#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sharpwt/config.hpp"
#include "sharpwt/corpus.hpp"
#include "sharpwt/experiment.hpp"
#include "sharpwt/intrinsic.hpp"

namespace sharpwt {

// Scans come in two kinds. A bound scan reports the largest ratio of two sides
// of an inequality with an unknown constant and checks that the maximum does
// not grow by more than max_drift when the resolution is doubled. An exact scan
// reports the largest violation of an inequality that holds exactly on the grid.
//
//   median-bound      |median| <= rearrangement at |Q|/2                         exact
//   osc-subadditive   osc of a sum <= sum of oscillations at lambda/k            exact
//   cone-below-box    G_1 <= box square function                                 exact
//   box-below-cone    box square function <= closed G_4                          exact
//   box-oscillation   osc_{1/8}(Gbox^2; Q) / (mean |f| on 15Q)^2                 bound
//   sparse-testing    (int A_45(f)^{3/2} w)^{2/3} / ([w]_{A_3} |f|^2_{L^3(w)})   bound
//   pointwise-box     |Gbox^2 - median| / (Mf^2 + A_45 f), family from Gbox^2     bound
//   weak-type         sup_t t |{G_1 f > t}| / |f|_1                              bound
//   aperture          G_4 / G_1                                                  bound
//   psi-vs-intrinsic  S_psi (psi scaled into the Hoelder class) / G_1            bound
//   ainfty-vs-ap      A_infinity / [w]_{A_2} over random weights                 bound
//   hilbert-cone      S_psi,beta(Hf) / G_1(f), beta in {1, 3}                     bound
struct ScanSpec {
  std::string scan;
  CorpusSpec corpus;
  int resolution = 7;
  bool refine = true;
  double max_drift = 1.5;
  double exact_tolerance = 1e-12;
  double p = 3;
  double gamma = 45;
  int weight_count = 100;
  IntrinsicConfig intrinsic;

  static ScanSpec from_config(const Config& c);
  Config echo() const;
};

std::vector<std::string> scan_names();
bool exact_scan(const std::string& name);

struct ScanEntry {
  std::string item;
  int resolution;
  double value;
  std::string where;
};

struct ScanReport {
  ScanSpec spec;
  std::vector<ScanEntry> entries;
  std::vector<int> resolutions;
  std::vector<double> maxima;  // per resolution
  std::vector<std::string> argmax;
  double drift = 1;
  int flagged = 0;  // non-finite entries
  std::vector<Assertion> assertions;

  bool passed() const;
};

ScanReport ratio_scan(const ScanSpec& spec);

}  // namespace sharpwt
