#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sharpwt/gridfn.hpp"
#include "sharpwt/weights.hpp"

namespace sharpwt {

// Uniform and normal draws defined here rather than via <random> distributions,
// whose outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// Independent stream for a sub-task.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct GridSpec {
  int level = 0;
  int resolution = 8;
  std::int64_t origin_cells = 0;

  static GridSpec with_origin(int level, int resolution, double origin);
  double origin() const;
  double length() const;
};

// Function specs: const:<c>, indicator:<a>:<b>, haar:<a>:<b>, power:<a>[:<centre>],
// bump:<centre>:<radius>:<a>, alternating, random:<seed>[:<kind>], file:<json>.
GridFunction make_function(const std::string& spec, const GridSpec& grid);
// Weight specs: const:<c>, power:<a>[:<centre>], random:<seed>, file:<json>.
Weight make_weight(const std::string& spec, const GridSpec& grid, const std::vector<double>& cached_ps = {});

constexpr int kRandomKinds = 5;
// Step function constant on cells of width 2^-base_resolution (or finer if the grid is coarser).
GridFunction random_step(std::uint64_t seed, int kind, const GridSpec& grid, int base_resolution);
GridFunction random_weight(std::uint64_t seed, const GridSpec& grid, int base_resolution);

struct CorpusSpec {
  std::uint64_t seed = 1;
  int random_count = 50;
  int structured_count = 10;
  int base_resolution = 5;
  int level = 0;
  double origin = 0;
};

struct CorpusItem {
  std::string name;
  std::function<GridFunction(int resolution)> build;
};

std::vector<CorpusItem> make_corpus(const CorpusSpec& spec);

}  // namespace sharpwt
