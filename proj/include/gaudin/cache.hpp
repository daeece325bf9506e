#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gaudin/io.hpp"

namespace gaudin {

// Environment variable naming the cache root; unset disables caching.
inline constexpr const char* kCacheEnv = "GAUDIN_CACHE_DIR";

// 64-bit FNV-1a as 16 hex digits.
std::string content_hash(const std::string& text);

// One JSON document per key, written through a temporary file and renamed into
// place, so concurrent writers leave exactly one complete entry.
class Cache {
 public:
  explicit Cache(std::filesystem::path root);
  static std::optional<Cache> from_env();

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path entry(const std::string& key) const;

  // Missing entry -> nullopt. A corrupt entry is removed with a warning on stderr.
  std::optional<Json> lookup(const std::string& key) const;
  void store(const std::string& key, const Json& value) const;

 private:
  std::filesystem::path root_;
};

}  // namespace gaudin
