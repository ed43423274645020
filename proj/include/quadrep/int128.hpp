#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace quadrep {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
std::string to_string(i128 v);

// Strict decimal parsers: no leading zeros, no whitespace, no empty input.
std::optional<u128> parse_u128(std::string_view s);
std::optional<i128> parse_i128(std::string_view s);
std::optional<u64> parse_u64(std::string_view s);

constexpr u128 abs128(i128 v) {
    return v < 0 ? (u128(-(v + 1)) + 1) : u128(v);
}

u128 gcd128(u128 a, u128 b);
u128 isqrt128(u128 n);
u64 isqrt64(u64 n);

}  // namespace quadrep
