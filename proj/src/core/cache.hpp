#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace zestlab {

// Content-addressed text cache for expensive results (invariant tensors,
// modular data), keyed by a descriptive string such as
// "invariants:p=5,q=11,n=3,u=1,sample=500,seed=2026,backend=exact".
// The store lives under $ZESTLAB_CACHE (default ".zestlab-cache"); each entry
// is one JSON file named by the FNV-1a hash of its key, carrying the key for
// collision detection. IO failures throw std::runtime_error naming the
// cache stage.

std::uint64_t fnv1a64(std::string_view data);

// Resolved cache root (does not create it).
std::string cache_root();

// Returns the payload stored under `key`, or nullopt on a miss. A hash
// collision with a different key reads as a miss.
std::optional<std::string> cache_get(const std::string& key);

// Stores `payload` under `key`, creating the cache directory if needed.
void cache_put(const std::string& key, const std::string& payload);

}  // namespace zestlab
