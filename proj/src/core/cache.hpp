#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace adlab {

// Content-addressed result store: one JSON file per canonical request key.
// Writers stage to a temp file and rename, so concurrent readers never see a
// partial entry.  Entries from other tool versions are ignored.
class Cache {
 public:
  explicit Cache(std::string dir);

  static std::string key_for(const nlohmann::json& request);

  std::optional<nlohmann::json> get(const nlohmann::json& request) const;
  void put(const nlohmann::json& request, const nlohmann::json& result) const;

  // Drops entries written by other tool versions; returns how many.
  std::size_t gc() const;

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

}  // namespace adlab
