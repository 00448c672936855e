#pragma once

#include <string>

#include <json.hpp>

#include "sharpwt/experiment.hpp"
#include "sharpwt/ratio_scan.hpp"

namespace sharpwt {

enum class Format { csv, json };
Format parse_format(const std::string& name);

std::string git_describe();

// Header delta,ap_char,ratio,log_ap,log_ratio, one row per ladder point, then
// '#' footer lines with the fit and the assertions.
std::string exponent_csv(const ExperimentReport& r);
nlohmann::json exponent_json(const ExperimentReport& r);

// Header item,resolution,value,where, then '#' footer lines.
std::string scan_csv(const ScanReport& r);
nlohmann::json scan_json(const ScanReport& r);

std::string emit(const ExperimentReport& r, Format f);
std::string emit(const ScanReport& r, Format f);

// One line per failed assertion, empty when all pass.
std::string failure_list(const std::vector<Assertion>& assertions);

}  // namespace sharpwt
