#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "dunkl/params.hpp"
#include "dunkl/radial.hpp"

namespace dunkl::cli {

using json = nlohmann::ordered_json;

/// One JSON object of the config. Every accessor records the value it resolved
/// (default included) in `resolved`; finish() rejects keys nobody asked for.
class Section {
 public:
  Section(const nlohmann::json& in, std::string path);

  double num(const std::string& key);
  double num(const std::string& key, double def);
  std::vector<double> nums(const std::string& key, const std::vector<double>& def);
  bool has(const std::string& key) const { return in_.contains(key); }
  std::string str(const std::string& key, const std::string& def);
  bool flag(const std::string& key, bool def);
  long integer(const std::string& key, long def);
  Section sub(const std::string& key);
  /// Array of objects; empty when absent.
  std::vector<Section> list(const std::string& key);
  void put(const std::string& key, const Section& child) { resolved[key] = child.resolved; }
  void put(const std::string& key, const std::vector<Section>& children);
  void finish() const;

  json resolved = json::object();

 private:
  double to_number(const nlohmann::json& v, const std::string& key) const;
  const nlohmann::json* find(const std::string& key);

  nlohmann::json in_;
  std::string path_;
  std::set<std::string> used_;
};

DunklParams resolve_params(Section& s);
GridPtr resolve_grid(Section& s);
/// Profile: {"kind": gaussian|indicator|log_indicator|power|csv, ...}.
RadialFunction resolve_profile(Section& s, const GridPtr& grid);

}  // namespace dunkl::cli
