#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ransomguard {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr Digest kZeroDigest{};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

std::string to_hex(std::span<const std::uint8_t> data);
inline std::string to_hex(const Digest& d) { return to_hex(std::span<const std::uint8_t>(d)); }

}  // namespace ransomguard
