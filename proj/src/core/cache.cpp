#include "cache.hpp"

#include <filesystem>
#include <fstream>

#include "error.hpp"
#include "hashing.hpp"
#include "version.hpp"

namespace fs = std::filesystem;

namespace adlab {

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail(Errc::io_error, "cannot create cache dir " + dir_);
}

std::string Cache::key_for(const nlohmann::json& request) {
  nlohmann::json keyed = request;
  keyed["tool_version"] = kToolVersion;
  return fnv1a64_hex(keyed.dump());
}

std::optional<nlohmann::json> Cache::get(const nlohmann::json& request) const {
  fs::path path = fs::path(dir_) / (key_for(request) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json entry = nlohmann::json::parse(in, nullptr, false);
  if (entry.is_discarded()) return std::nullopt;
  if (entry.value("tool_version", "") != kToolVersion) return std::nullopt;
  if (!entry.contains("result")) return std::nullopt;
  return entry.at("result");
}

void Cache::put(const nlohmann::json& request,
                const nlohmann::json& result) const {
  nlohmann::json entry = {{"tool_version", kToolVersion},
                          {"request", request},
                          {"result", result}};
  fs::path path = fs::path(dir_) / (key_for(request) + ".json");
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) fail(Errc::io_error, "cannot write cache entry " + tmp.string());
    out << entry.dump(2) << '\n';
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(Errc::io_error, "cannot publish cache entry " + path.string());
}

std::size_t Cache::gc() const {
  std::size_t removed = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    std::ifstream in(e.path());
    nlohmann::json entry = nlohmann::json::parse(in, nullptr, false);
    bool stale = entry.is_discarded() ||
                 entry.value("tool_version", "") != kToolVersion;
    if (stale) {
      std::error_code ec;
      fs::remove(e.path(), ec);
      if (!ec) ++removed;
    }
  }
  return removed;
}

}  // namespace adlab
