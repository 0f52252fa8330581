#pragma once

// On-disk result cache: a directory of JSON-lines files, one per report kind,
// one line per (parameters -> result). Appends go through a single writer.

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace addcount {

using Json = nlohmann::ordered_json;

// Bumped whenever a change could alter cached results.
inline constexpr const char* kCodeVersion = "1";
inline constexpr const char* kCacheDirEnv = "ADDCOUNT_CACHE_DIR";

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  // $ADDCOUNT_CACHE_DIR if set and non-empty.
  static std::optional<std::filesystem::path> default_dir();

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<Json> get(const std::string& kind, const std::string& key);
  void put(const std::string& kind, const std::string& key, const Json& value);

  // True exactly once per cache object: the first hit of a session is
  // re-computed and compared before it is trusted.
  bool claim_spot_check();

 private:
  std::map<std::string, Json>& load(const std::string& kind);
  std::filesystem::path file_for(const std::string& kind) const;

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, std::map<std::string, Json>> entries_;  // kind -> key -> value
  bool spot_checked_ = false;
};

}  // namespace addcount
