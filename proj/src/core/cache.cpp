#include "core/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zestlab {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("cache: " + msg);
}

fs::path entry_path(const std::string& key) {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(key)));
  return fs::path(cache_root()) / (std::string(hex) + ".json");
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_root() {
  const char* env = std::getenv("ZESTLAB_CACHE");
  if (env && *env) return env;
  return ".zestlab-cache";
}

std::optional<std::string> cache_get(const std::string& key) {
  fs::path path = entry_path(key);
  std::error_code ec;
  if (!fs::exists(path, ec) || ec) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read existing entry " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("payload") ||
      !j["key"].is_string() || !j["payload"].is_string()) {
    return std::nullopt;  // foreign or damaged file: treat as a miss
  }
  if (j["key"].get<std::string>() != key) return std::nullopt;
  return j["payload"].get<std::string>();
}

void cache_put(const std::string& key, const std::string& payload) {
  std::error_code ec;
  fs::create_directories(cache_root(), ec);
  if (ec) fail("cannot create directory " + cache_root() + ": " + ec.message());
  nlohmann::json j;
  j["key"] = key;
  j["payload"] = payload;
  fs::path path = entry_path(key);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open " + tmp.string() + " for writing");
    out << j.dump(1) << "\n";
    if (!out) fail("short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) fail("cannot finalize " + path.string() + ": " + ec.message());
}

}  // namespace zestlab
