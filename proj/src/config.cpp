#include "sharpwt/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_number(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  double v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
    fail(ErrorKind::parse, what + ": expected a number, got '" + s + "'");
  return v;
}

int parse_integer(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  int v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
    fail(ErrorKind::parse, what + ": expected an integer, got '" + s + "'");
  return v;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::parse, origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(ErrorKind::parse, origin + ":" + std::to_string(lineno) + ": empty key");
    c.entries_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::optional<std::string> Config::text(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return text(key).value_or(fallback);
}

std::optional<double> Config::number(const std::string& key) const {
  auto t = text(key);
  if (!t) return std::nullopt;
  return parse_number(*t, key);
}

double Config::number(const std::string& key, double fallback) const { return number(key).value_or(fallback); }

std::optional<int> Config::integer(const std::string& key) const {
  auto t = text(key);
  if (!t) return std::nullopt;
  return parse_integer(*t, key);
}

int Config::integer(const std::string& key, int fallback) const { return integer(key).value_or(fallback); }

bool Config::flag(const std::string& key, bool fallback) const {
  auto t = text(key);
  if (!t) return fallback;
  if (*t == "1" || *t == "true" || *t == "yes") return true;
  if (*t == "0" || *t == "false" || *t == "no") return false;
  fail(ErrorKind::parse, key + ": expected true or false, got '" + *t + "'");
}

std::vector<double> Config::numbers(const std::string& key, const std::vector<double>& fallback) const {
  auto t = text(key);
  if (!t) return fallback;
  std::vector<double> out;
  std::istringstream in(*t);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, key));
  return out;
}

void Config::expect_only(const std::set<std::string>& known) const {
  for (const auto& [k, v] : entries_)
    if (!known.count(k)) fail(ErrorKind::parse, origin_ + ": unknown key '" + k + "'");
}

}  // namespace sharpwt
