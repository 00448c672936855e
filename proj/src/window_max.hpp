#pragma once

#include <cstddef>
#include <deque>
#include <span>

namespace sharpwt::detail {

// vals[j] is attached to the window [j, j+len) inside [0, n), so vals has n-len+1
// entries. For every x in [0, n) fold the max over windows containing x into out[x].
template <class T>
void fold_cover_max(std::span<const T> vals, std::size_t len, std::span<double> out) {
  const std::size_t n = out.size();
  std::deque<std::size_t> q;
  std::size_t next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t hi = x < vals.size() ? x : vals.size() - 1;
    const std::size_t lo = x + 1 >= len ? x + 1 - len : 0;
    while (next <= hi) {
      while (!q.empty() && vals[q.back()] <= vals[next]) q.pop_back();
      q.push_back(next++);
    }
    while (q.front() < lo) q.pop_front();
    const double v = static_cast<double>(vals[q.front()]);
    if (v > out[x]) out[x] = v;
  }
}

}  // namespace sharpwt::detail
