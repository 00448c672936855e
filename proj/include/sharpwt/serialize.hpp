#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sharpwt/decomp.hpp"
#include "sharpwt/gridfn.hpp"

namespace sharpwt {

// Shortest representation that parses back to the same double.
std::string format_number(double v);

nlohmann::json to_json(const DyadicCube& q);
DyadicCube cube_from_json(const nlohmann::json& j);

// {level_L, resolution_s, origin, values[]}
nlohmann::json to_json(const GridFunction& f);
GridFunction function_from_json(const nlohmann::json& j);

// Decomposition together with the function it was built from, so it can be re-verified alone.
nlohmann::json to_json(const Decomposition& d, const GridFunction& f);
Decomposition decomposition_from_json(const nlohmann::json& j, const GridFunction& f);

// Columns: x_left, x_right, value.
void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_name = "value");

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sharpwt
