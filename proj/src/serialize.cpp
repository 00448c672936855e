#include "sharpwt/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sharpwt/error.hpp"

namespace sharpwt {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json to_json(const DyadicCube& q) { return {{"level", q.level}, {"index", q.index}}; }

DyadicCube cube_from_json(const json& j) {
  try {
    return DyadicCube(j.at("level").get<int>(), j.at("index").get<std::vector<std::int64_t>>());
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("bad cube: ") + e.what());
  }
}

json to_json(const GridFunction& f) {
  return {{"level_L", f.level()}, {"resolution_s", f.resolution()}, {"origin", f.origin()}, {"values", f.values()}};
}

GridFunction function_from_json(const json& j) {
  int level = 0, res = 0;
  double origin = 0;
  std::vector<double> values;
  try {
    level = j.at("level_L").get<int>();
    res = j.at("resolution_s").get<int>();
    origin = j.value("origin", 0.0);
    values = j.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("bad grid function: ") + e.what());
  }
  const double cells = std::ldexp(origin, res);
  if (cells != std::floor(cells) || std::fabs(cells) > 9e15)
    fail(ErrorKind::parse, "origin is not a multiple of the cell width");
  return GridFunction(level, res, static_cast<std::int64_t>(cells), std::move(values));
}

json to_json(const Decomposition& d, const GridFunction& f) {
  json gens = json::array();
  for (const auto& g : d.generations) {
    json arr = json::array();
    for (const auto& s : g)
      arr.push_back({{"cube", to_json(s.cube)},
                     {"parent", s.parent},
                     {"osc_coeff", s.osc_coeff},
                     {"e_set_measure", s.e_set_measure}});
    gens.push_back(std::move(arr));
  }
  return {{"root", to_json(d.root)},
          {"root_median", d.root_median},
          {"lambda", d.lambda},
          {"function", to_json(f)},
          {"generations", std::move(gens)}};
}

Decomposition decomposition_from_json(const json& j, const GridFunction& f) {
  Decomposition d;
  try {
    d.root = cube_from_json(j.at("root"));
    d.root_median = j.at("root_median").get<double>();
    d.lambda = j.at("lambda").get<double>();
    d.root_cells = f.cells_of(d.root);
    for (const auto& g : j.at("generations")) {
      std::vector<StopCube> gen;
      for (const auto& s : g) {
        StopCube c;
        c.cube = cube_from_json(s.at("cube"));
        c.cells = f.cells_of(c.cube);
        c.parent = s.at("parent").get<int>();
        c.osc_coeff = s.at("osc_coeff").get<double>();
        c.e_set_measure = s.at("e_set_measure").get<double>();
        gen.push_back(c);
      }
      d.generations.push_back(std::move(gen));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("bad decomposition: ") + e.what());
  }
  return d;
}

void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_name) {
  os << "x_left,x_right," << value_name << '\n';
  for (std::size_t i = 0; i < f.size(); ++i)
    os << format_number(f.cell_left(i)) << ',' << format_number(f.cell_left(i) + f.cell_width()) << ','
       << format_number(f[i]) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path);
}

}  // namespace sharpwt
