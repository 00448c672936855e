#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sharpwt {

// Flat key=value configuration; '#' starts a comment.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string text(const std::string& key, const std::string& fallback) const;
  std::optional<std::string> text(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::optional<double> number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  std::optional<int> integer(const std::string& key) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;

  // Rejects keys outside `known`, naming the offending key.
  void expect_only(const std::set<std::string>& known) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
};

double parse_number(const std::string& s, const std::string& what);
int parse_integer(const std::string& s, const std::string& what);

}  // namespace sharpwt
