#include "quadrep/int128.hpp"

#include <cmath>

namespace quadrep {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int i = 40;
    while (v != 0) {
        buf[--i] = char('0' + unsigned(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 40);
}

std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(abs128(v));
    return to_string(u128(v));
}

std::optional<u128> parse_u128(std::string_view s) {
    if (s.empty() || s.size() > 39) return std::nullopt;
    if (s.size() > 1 && s[0] == '0') return std::nullopt;
    constexpr u128 max = ~u128(0);
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        unsigned d = unsigned(c - '0');
        if (v > (max - d) / 10) return std::nullopt;
        v = v * 10 + d;
    }
    return v;
}

std::optional<i128> parse_i128(std::string_view s) {
    bool neg = false;
    if (!s.empty() && s[0] == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    auto mag = parse_u128(s);
    if (!mag) return std::nullopt;
    constexpr u128 imax = ~u128(0) >> 1;  // 2^127 - 1
    if (neg) {
        if (*mag == 0 || *mag > imax + 1) return std::nullopt;  // reject "-0"
        return -i128(*mag - 1) - 1;
    }
    if (*mag > imax) return std::nullopt;
    return i128(*mag);
}

std::optional<u64> parse_u64(std::string_view s) {
    auto v = parse_u128(s);
    if (!v || *v > ~u64(0)) return std::nullopt;
    return u64(*v);
}

u128 gcd128(u128 a, u128 b) {
    // 64-bit fast path once both operands fit.
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            u64 x = u64(a), y = u64(b);
            while (y != 0) {
                u64 t = x % y;
                x = y;
                y = t;
            }
            return x;
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

int bit_width128(u128 v) {
    u64 hi = u64(v >> 64);
    if (hi != 0) return 128 - __builtin_clzll(hi);
    u64 lo = u64(v);
    if (lo == 0) return 0;
    return 64 - __builtin_clzll(lo);
}

}  // namespace

u128 isqrt128(u128 n) {
    if (n < 2) return n;
    u128 r = u128(1) << ((bit_width128(n) + 1) / 2);
    // Newton iteration converges from above.
    while (true) {
        u128 next = (r + n / r) / 2;
        if (next >= r) break;
        r = next;
    }
    while (r > n / r) --r;  // guard against the last overshoot
    return r;
}

u64 isqrt64(u64 n) {
    u64 r = u64(std::sqrt(double(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

}  // namespace quadrep
