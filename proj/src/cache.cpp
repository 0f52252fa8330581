#include "addcount/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace addcount {

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::filesystem::path> ResultCache::default_dir() {
  const char* env = std::getenv(kCacheDirEnv);
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::filesystem::path ResultCache::file_for(const std::string& kind) const { return dir_ / (kind + ".jsonl"); }

std::map<std::string, Json>& ResultCache::load(const std::string& kind) {
  auto [it, inserted] = entries_.try_emplace(kind);
  if (!inserted) return it->second;
  std::ifstream in(file_for(kind));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // A torn trailing line from an interrupted run is skipped.
    Json row = Json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.contains("key") || !row.contains("value")) continue;
    if (row.value("version", "") != kCodeVersion) continue;
    it->second[row["key"].get<std::string>()] = row["value"];
  }
  return it->second;
}

std::optional<Json> ResultCache::get(const std::string& kind, const std::string& key) {
  std::lock_guard lock(mu_);
  auto& table = load(kind);
  auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

void ResultCache::put(const std::string& kind, const std::string& key, const Json& value) {
  std::lock_guard lock(mu_);
  auto& table = load(kind);
  table[key] = value;
  Json row;
  row["key"] = key;
  row["version"] = kCodeVersion;
  row["value"] = value;
  std::ofstream out(file_for(kind), std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache file " + file_for(kind).string());
  out << row.dump() << '\n';
}

bool ResultCache::claim_spot_check() {
  std::lock_guard lock(mu_);
  if (spot_checked_) return false;
  spot_checked_ = true;
  return true;
}

}  // namespace addcount
