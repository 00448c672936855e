#include "sharpwt/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

std::span<const double> cells(const GridFunction& f, const CellRange& r) {
  return std::span<const double>(f.values()).subspan(r.begin, r.size());
}

// Maximal dyadic subranges of r (excluding r) where the marked cells have density > 1/2.
void maximal_dense(const std::vector<std::size_t>& marked_prefix, const CellRange& r,
                   std::vector<CellRange>& out) {
  if (r.size() < 2) return;
  const std::size_t half = r.size() / 2;
  for (const CellRange h : {CellRange{r.begin, r.begin + half}, CellRange{r.begin + half, r.end}}) {
    const std::size_t count = marked_prefix[h.end] - marked_prefix[h.begin];
    if (2 * count > h.size())
      out.push_back(h);
    else if (count > 0)
      maximal_dense(marked_prefix, h, out);
  }
}

std::vector<CellRange> stopping_children(const GridFunction& f, const CellRange& p, double lambda) {
  const auto v = cells(f, p);
  const double m = sample_median(v);
  std::vector<double> g(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) g[i] = v[i] - m;
  const double tau = sample_rearrangement(g, lambda * static_cast<double>(v.size()));
  std::vector<std::size_t> prefix(v.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + (std::fabs(g[i]) > tau ? 1 : 0);
  std::vector<CellRange> local;
  maximal_dense(prefix, {0, v.size()}, local);
  for (auto& c : local) c = {c.begin + p.begin, c.end + p.begin};
  return local;
}

CellRange parent_range(const CellRange& r) {
  const std::size_t w = r.size();
  const std::size_t start = r.begin - (r.begin / w % 2 ? w : 0);
  return {start, start + 2 * w};
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a)); }

}  // namespace

std::size_t Decomposition::cube_count() const {
  std::size_t n = 0;
  for (const auto& g : generations) n += g.size();
  return n;
}

Decomposition decompose(const GridFunction& f, const DyadicCube& q0, double lambda) {
  require(lambda > 0 && lambda < 0.5, "stopping level must lie in (0, 1/2)");
  Decomposition d;
  d.root = q0;
  d.root_cells = f.cells_of(q0);
  d.root_median = median(f, d.root_cells);
  d.lambda = lambda;

  std::vector<CellRange> parents{d.root_cells};
  std::vector<int> parent_ids{-1};
  while (true) {
    std::vector<StopCube> gen;
    for (std::size_t k = 0; k < parents.size(); ++k) {
      for (const auto& c : stopping_children(f, parents[k], lambda)) {
        StopCube s;
        s.cells = c;
        s.cube = f.cube_of(c);
        s.parent = parent_ids[k];
        // Relative to the root the parent range is aligned, so local offsets work.
        CellRange up = parent_range({c.begin - d.root_cells.begin, c.end - d.root_cells.begin});
        up = {up.begin + d.root_cells.begin, up.end + d.root_cells.begin};
        s.osc_coeff = local_osc(f, up, lambda);
        s.e_set_measure = f.measure(c);
        gen.push_back(s);
      }
    }
    if (gen.empty()) break;
    if (!d.generations.empty()) {
      auto& prev = d.generations.back();
      for (const auto& s : gen) prev[static_cast<std::size_t>(s.parent)].e_set_measure -= f.measure(s.cells);
    }
    parents.clear();
    parent_ids.clear();
    for (std::size_t i = 0; i < gen.size(); ++i) {
      parents.push_back(gen[i].cells);
      parent_ids.push_back(static_cast<int>(i));
    }
    d.generations.push_back(std::move(gen));
  }
  return d;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerificationReport verify_decomposition(const GridFunction& f, const Decomposition& d, double tolerance) {
  VerificationReport rep;
  const CellRange root = f.cells_of(d.root);
  const std::size_t n = f.size();
  const double h = f.cell_width();
  const std::size_t depth = d.generations.size();

  PropertyCheck shape{"structure", true, 0, ""};
  if (!(root == d.root_cells)) shape = {"structure", false, 0, "root cells do not match the root cube"};
  for (std::size_t k = 0; k < depth && shape.passed; ++k) {
    for (const auto& s : d.generations[k]) {
      bool ok = false;
      try {
        ok = f.cells_of(s.cube) == s.cells && root.contains(s.cells) && s.cells.size() < root.size();
      } catch (const Error&) {
      }
      if (!ok) {
        shape = {"structure", false, 0, "cube " + s.cube.to_string() + " is not a proper dyadic subcube of the root"};
        break;
      }
      const bool parent_ok = k == 0 ? s.parent == -1
                                    : s.parent >= 0 && static_cast<std::size_t>(s.parent) < d.generations[k - 1].size();
      if (!parent_ok) {
        shape = {"structure", false, 0, "dangling parent reference"};
        break;
      }
    }
  }
  rep.checks.push_back(shape);
  if (!shape.passed) return rep;

  // Coverage count per generation; generation 0 is the root.
  std::vector<std::vector<int>> cover(depth + 2, std::vector<int>(n, 0));
  for (std::size_t i = root.begin; i < root.end; ++i) cover[0][i] = 1;
  for (std::size_t k = 0; k < depth; ++k)
    for (const auto& s : d.generations[k])
      for (std::size_t i = s.cells.begin; i < s.cells.end; ++i) ++cover[k + 1][i];

  PropertyCheck disjoint{"disjoint", true, 0, ""};
  for (std::size_t k = 1; k <= depth; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (cover[k][i] > 1 && disjoint.passed)
        disjoint = {"disjoint", false, -h, "generation " + std::to_string(k) + " overlaps at cell " + std::to_string(i)};
  rep.checks.push_back(disjoint);

  PropertyCheck nested{"nested", true, 0, ""};
  for (std::size_t k = 1; k <= depth; ++k) {
    for (const auto& s : d.generations[k - 1]) {
      const CellRange up = k == 1 ? root : d.generations[k - 2][static_cast<std::size_t>(s.parent)].cells;
      if (!up.contains(s.cells) && nested.passed)
        nested = {"nested", false, -h, "cube " + s.cube.to_string() + " escapes its parent"};
    }
    for (std::size_t i = 0; i < n; ++i)
      if (cover[k][i] > 0 && cover[k - 1][i] == 0 && nested.passed)
        nested = {"nested", false, -h, "generation " + std::to_string(k) + " leaves the previous one at cell " + std::to_string(i)};
  }
  rep.checks.push_back(nested);

  // Density bound |next generation inside Q| <= |Q|/2 and the sparse sets E = Q minus next generation.
  PropertyCheck density{"density", true, INFINITY, ""};
  PropertyCheck sparse{"sparse", true, INFINITY, ""};
  std::vector<int> owners(n, 0);
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<std::size_t> next_prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) next_prefix[i + 1] = next_prefix[i] + (cover[k + 2][i] > 0 ? 1 : 0);
    for (const auto& s : d.generations[k]) {
      const std::size_t inside = next_prefix[s.cells.end] - next_prefix[s.cells.begin];
      const double slack = (static_cast<double>(s.cells.size()) / 2 - static_cast<double>(inside)) * h;
      density.worst_slack = std::min(density.worst_slack, slack);
      if (2 * inside > s.cells.size() && density.passed)
        density = {"density", false, slack, "cube " + s.cube.to_string() + " is more than half covered"};
      const double e = static_cast<double>(s.cells.size() - inside) * h;
      sparse.worst_slack = std::min(sparse.worst_slack, e - f.measure(s.cells) / 2);
      if (e != s.e_set_measure && sparse.passed)
        sparse = {"sparse", false, sparse.worst_slack, "recorded |E| differs for " + s.cube.to_string()};
      if (2 * (s.cells.size() - inside) < s.cells.size() && sparse.passed)
        sparse = {"sparse", false, sparse.worst_slack, "|E| < |Q|/2 for " + s.cube.to_string()};
      for (std::size_t i = s.cells.begin; i < s.cells.end; ++i)
        if (cover[k + 2][i] == 0) ++owners[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (owners[i] > 1 && sparse.passed) sparse = {"sparse", false, sparse.worst_slack, "E sets overlap at cell " + std::to_string(i)};
  if (depth == 0) density.worst_slack = sparse.worst_slack = 0;
  rep.checks.push_back(density);
  rep.checks.push_back(sparse);

  PropertyCheck recorded{"coefficients", true, 0, ""};
  if (!close(median(f, root), d.root_median)) recorded = {"coefficients", false, 0, "root median differs from f"};
  for (std::size_t k = 0; k < depth && recorded.passed; ++k) {
    for (const auto& s : d.generations[k]) {
      const double w = local_osc(f, f.cells_of(s.cube.parent()), d.lambda);
      if (!close(w, s.osc_coeff)) {
        recorded = {"coefficients", false, 0, "oscillation coefficient differs for " + s.cube.to_string()};
        break;
      }
    }
  }
  rep.checks.push_back(recorded);

  const auto sharp = local_sharp_max_dyadic(f, d.root, 2 * d.lambda);
  std::vector<long double> coeff(n, 0.0L);
  for (const auto& gen : d.generations)
    for (const auto& s : gen)
      for (std::size_t i = s.cells.begin; i < s.cells.end; ++i) coeff[i] += s.osc_coeff;
  PropertyCheck dom{"domination", true, INFINITY, ""};
  for (std::size_t i = root.begin; i < root.end; ++i) {
    const double lhs = std::fabs(f[i] - d.root_median);
    const double rhs = 4 * sharp[i] + 4 * static_cast<double>(coeff[i]);
    const double slack = rhs - lhs;
    if (slack < dom.worst_slack) {
      dom.worst_slack = slack;
      if (slack < -tolerance) {
        std::ostringstream os;
        os << "cell " << i << ": |f - m| = " << lhs << " exceeds bound " << rhs;
        dom.passed = false;
        dom.detail = os.str();
      }
    }
  }
  rep.checks.push_back(dom);
  return rep;
}

GridFunction a_gamma(const GridFunction& f, const Decomposition& d, double gamma) {
  require(gamma >= 1, "dilation must be at least 1");
  std::vector<double> out(f.size(), 0.0);
  for (const auto& gen : d.generations) {
    for (const auto& s : gen) {
      const double c = s.cube.center(0), side = gamma * s.cube.side();
      const double avg = f.abs_integral_between(c - side / 2, c + side / 2) / side;
      for (std::size_t i = s.cells.begin; i < s.cells.end; ++i) out[i] += avg * avg;
    }
  }
  return f.with_values(std::move(out));
}

}  // namespace sharpwt
