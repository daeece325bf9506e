#include "gaudin/cache.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

namespace gaudin {

namespace fs = std::filesystem;

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Cache::Cache(fs::path root) : root_(std::move(root)) {}

std::optional<Cache> Cache::from_env() {
  const char* dir = std::getenv(kCacheEnv);
  if (!dir || !*dir) return std::nullopt;
  return Cache(dir);
}

fs::path Cache::entry(const std::string& key) const { return root_ / (content_hash(key) + ".json"); }

std::optional<Json> Cache::lookup(const std::string& key) const {
  fs::path p = entry(key);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    Json doc = Json::parse(ss.str());
    if (!doc.is_object() || doc.value("key", std::string()) != key || !doc.contains("value")) throw std::runtime_error("bad envelope");
    return doc["value"];
  } catch (const std::exception&) {
    std::cerr << "warning: discarding corrupt cache entry " << p.string() << "\n";
    std::error_code ec;
    fs::remove(p, ec);
    return std::nullopt;
  }
}

void Cache::store(const std::string& key, const Json& value) const {
  static std::atomic<int> counter{0};
  fs::create_directories(root_);
  fs::path final_path = entry(key);
  fs::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    out << Json{{"key", key}, {"value", value}}.dump();
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

}  // namespace gaudin
