#include "sharpwt/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

using wide = __int128;

wide rescale(std::int64_t v, int from_scale, int to_scale) {
  const int shift = to_scale - from_scale;
  require(shift >= 0 && shift < 62, "dyadic scales too far apart");
  return static_cast<wide>(v) << shift;
}

std::int64_t floor_shift(std::int64_t v, int shift) {
  if (shift >= 63) return v < 0 ? -1 : 0;
  return v >> shift;  // arithmetic shift floors for negative values
}

int mod3(std::int64_t v) {
  const int r = static_cast<int>(v % 3);
  return r < 0 ? r + 3 : r;
}

int digit(int level, std::int64_t j) {
  const int odd = ((level % 2) + 2) % 2;
  return mod3((odd ? 2 : 1) * mod3(j - 1));
}

}  // namespace

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

double DyadicCube::volume() const {
  return std::ldexp(1.0, -level * static_cast<int>(dim()));
}

double DyadicCube::lower(std::size_t i) const {
  return std::ldexp(static_cast<double>(index[i]), -level);
}

double DyadicCube::upper(std::size_t i) const {
  return std::ldexp(static_cast<double>(index[i] + 1), -level);
}

double DyadicCube::center(std::size_t i) const {
  return std::ldexp(static_cast<double>(2 * index[i] + 1), -level - 1);
}

DyadicCube DyadicCube::parent() const { return ancestor(level - 1); }

DyadicCube DyadicCube::child(unsigned which) const {
  DyadicCube c(level + 1, index);
  for (std::size_t i = 0; i < dim(); ++i) c.index[i] = 2 * index[i] + ((which >> i) & 1u);
  return c;
}

std::vector<DyadicCube> DyadicCube::children() const {
  std::vector<DyadicCube> out;
  const unsigned n = 1u << dim();
  out.reserve(n);
  for (unsigned w = 0; w < n; ++w) out.push_back(child(w));
  return out;
}

DyadicCube DyadicCube::ancestor(int coarser_level) const {
  require(coarser_level <= level, "ancestor level must not be finer");
  DyadicCube a(coarser_level, index);
  for (auto& j : a.index) j = floor_shift(j, level - coarser_level);
  return a;
}

bool DyadicCube::contains(const DyadicCube& other) const {
  if (other.dim() != dim() || other.level < level) return false;
  return other.ancestor(level) == *this;
}

bool DyadicCube::intersects(const DyadicCube& other) const {
  return contains(other) || other.contains(*this);
}

std::string DyadicCube::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << " x ";
    os << '[' << lower(i) << ',' << upper(i) << ')';
  }
  return os.str();
}

ExactBox as_box(const DyadicCube& q) {
  ExactBox b;
  b.scale = q.level;
  b.lo = q.index;
  b.hi = q.index;
  for (auto& v : b.hi) ++v;
  return b;
}

ExactBox dilate_exact(const DyadicCube& q, int r) {
  require(r >= 1, "dilation factor must be >= 1");
  // centre (2j+1) 2^-(k+1), half-side r 2^-(k+1)
  ExactBox b;
  b.scale = q.level + 1;
  for (auto j : q.index) {
    b.lo.push_back(2 * j + 1 - r);
    b.hi.push_back(2 * j + 1 + r);
  }
  return b;
}

bool ExactBox::contains(const ExactBox& o) const {
  if (o.dim() != dim()) return false;
  const int s = std::max(scale, o.scale);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (rescale(lo[i], scale, s) > rescale(o.lo[i], o.scale, s)) return false;
    if (rescale(hi[i], scale, s) < rescale(o.hi[i], o.scale, s)) return false;
  }
  return true;
}

bool ExactBox::intersects(const ExactBox& o) const {
  if (o.dim() != dim()) return false;
  const int s = std::max(scale, o.scale);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (rescale(hi[i], scale, s) <= rescale(o.lo[i], o.scale, s)) return false;
    if (rescale(o.hi[i], o.scale, s) <= rescale(lo[i], scale, s)) return false;
  }
  return true;
}

bool RealCube::contains_point(const std::vector<double>& x) const {
  for (std::size_t i = 0; i < center.size(); ++i)
    if (x[i] < lower(i) || x[i] >= upper(i)) return false;
  return true;
}

RealCube dilate(const DyadicCube& q, double r) {
  require(r > 0, "dilation factor must be positive");
  RealCube c;
  for (std::size_t i = 0; i < q.dim(); ++i) c.center.push_back(q.center(i));
  c.side = r * q.side();
  return c;
}

int family_count(std::size_t dim) {
  int n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= 3;
  return n;
}

int family_index(const DyadicCube& q) {
  int k = 0, place = 1;
  for (auto j : q.index) {
    k += digit(q.level, j) * place;
    place *= 3;
  }
  return k;
}

DyadicCube companion(const DyadicCube& q, int k) {
  require(k >= 0 && k < family_count(q.dim()), "family index out of range");
  DyadicCube out = q;
  int rest = k;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const int want = rest % 3;
    rest /= 3;
    for (int shift = -1; shift <= 1; ++shift) {
      if (digit(q.level, q.index[i] + shift) == want) {
        out.index[i] = q.index[i] + shift;
        break;
      }
    }
  }
  return out;
}

}  // namespace sharpwt
