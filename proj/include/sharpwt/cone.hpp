#pragma once

#include <cstdint>
#include <vector>

#include "sharpwt/gridfn.hpp"

namespace sharpwt {

struct QuadNode {
  double y;
  double t;
  double weight;
  std::size_t box;
};

// Dyadic interval Q = [index, index+1) * side carrying the nodes of its box Q x [side/2, side).
struct QuadBox {
  int log2_side;
  std::int64_t index;
  double left;
  double side;
  std::size_t first_node;
  std::size_t node_count;
};

struct QuadLevel {
  int log2_side;
  std::int64_t first_index;
  std::size_t first_box;
  std::size_t box_count;
};

// Nodes over every box whose 9-fold dilate meets the grid domain, for sides 2^m with
// m in [min_log2_side, max_log2_side]. Each box holds nodes_per_box = k^2 midpoints of a
// k x k split of Q x [side/2, side), weighted by the sub-rectangle area.
class ConeQuadrature {
 public:
  ConeQuadrature(const GridFunction& grid, int nodes_per_box = 1);
  ConeQuadrature(const GridFunction& grid, int nodes_per_box, int min_log2_side, int max_log2_side);

  const std::vector<QuadBox>& boxes() const { return boxes_; }
  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const std::vector<QuadLevel>& levels() const { return levels_; }
  int nodes_per_box() const { return nodes_per_box_; }
  bool matches(const GridFunction& grid) const;

  // Single box, for isolating one term of the box sum.
  static ConeQuadrature single_box(const GridFunction& grid, int log2_side, std::int64_t index,
                                   int nodes_per_box = 1);

 private:
  ConeQuadrature() = default;
  void add_box(int log2_side, std::int64_t index, int split);

  int level_ = 0, resolution_ = 0;
  std::int64_t origin_cells_ = 0;
  int nodes_per_box_ = 1;
  std::vector<QuadBox> boxes_;
  std::vector<QuadNode> nodes_;
  std::vector<QuadLevel> levels_;
};

// Per-node amplitudes a(y, t) feed both aggregations below.
// Cone sum: per cell centre x, sqrt(sum over nodes with |y - x| < beta t (<= if closed) of a^2 w / t^2).
GridFunction cone_square(const GridFunction& grid, const ConeQuadrature& quad,
                         const std::vector<double>& amplitudes, double beta, bool closed = false);
// Per box: sum over its nodes of a^2 w / t^2.
std::vector<double> box_energies(const ConeQuadrature& quad, const std::vector<double>& amplitudes);
// Per cell centre x: sqrt(sum over boxes Q with x in 3Q of the box energy).
GridFunction box_square(const GridFunction& grid, const ConeQuadrature& quad,
                        const std::vector<double>& amplitudes);

}  // namespace sharpwt
