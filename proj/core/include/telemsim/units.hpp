#pragma once

#include <cstdint>
#include <string>

namespace telemsim {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;

inline constexpr u64 kKiB = 1024ull;
inline constexpr u64 kMiB = kKiB * 1024;
inline constexpr u64 kGiB = kMiB * 1024;
inline constexpr u64 kTiB = kGiB * 1024;

inline constexpr u64 kPageBytes = 4 * kKiB;

// Parses "512", "4KiB", "10 GiB", "5TiB" (also accepts KB/MB/GB/TB as the
// binary multiples). Throws std::invalid_argument on malformed input.
u64 parse_size(const std::string& text);

// "10 GiB", "50 MiB", "4 KiB", "123 B" -- exact multiples only, otherwise
// falls back to plain bytes.
std::string format_bytes(u64 bytes);

}  // namespace telemsim
