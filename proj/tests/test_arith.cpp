#include <random>

#include "doctest.h"
#include "quadrep/arith.hpp"

using namespace quadrep;

TEST_CASE("pow_mod basics") {
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(pow_mod(5, 0, 7) == 1);
    CHECK(pow_mod(3, 40, 41) == 1);  // Fermat's little theorem
    CHECK_THROWS_AS(pow_mod(2, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(pow_mod(2, 3, 0), std::invalid_argument);
}

TEST_CASE("pow_mod agrees with naive multiplication") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 1000; ++i) {
        u64 base = rng() % 1000;
        u64 exp = rng() % 64;
        u64 mod = rng() % 998 + 2;
        u64 naive = 1 % mod;
        for (u64 k = 0; k < exp; ++k) naive = naive * base % mod;
        CHECK(pow_mod(base, exp, mod) == naive);
    }
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(-5, 41) == 1);  // 6^2 = -5 (mod 41)
    CHECK(legendre(-5, 11) == -1);
    CHECK(legendre(0, 7) == 0);
    CHECK(legendre(14, 7) == 0);
    CHECK_THROWS_AS(legendre(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
}

TEST_CASE("legendre(-5, p) tracks p mod 20") {
    for (u64 p : sieve_primes(100000)) {
        if (p == 2 || p == 5) continue;
        const u64 c = p % 20;
        const bool residue = (c == 1 || c == 3 || c == 7 || c == 9);
        CHECK(legendre(-5, p) == (residue ? 1 : -1));
    }
}

TEST_CASE("sqrt_mod basics") {
    CHECK(sqrt_mod(-5, 41) == 6);
    CHECK(sqrt_mod(-5, 29) == 13);
    CHECK(sqrt_mod(1, 7) == 1);
    CHECK_THROWS_AS(sqrt_mod(-5, 11), NoRootError);
    CHECK_THROWS_AS(sqrt_mod(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(sqrt_mod(3, 9), std::invalid_argument);
}

TEST_CASE("sqrt_mod over all residues of all odd primes below 10^4") {
    for (u64 p : sieve_primes(10000)) {
        if (p == 2) continue;
        for (u64 a = 0; a < p; ++a) {
            if (a != 0 && legendre(i64(a), p) != 1) continue;
            const u64 r = sqrt_mod(i64(a), p);
            CHECK(mul_mod(r, r, p) == a);
            CHECK(r <= (p - 1) / 2);
        }
    }
}

TEST_CASE("is_prime") {
    CHECK(is_prime(41));
    CHECK_FALSE(is_prime(21));
    CHECK(is_prime((u64(1) << 61) - 1));  // Mersenne prime 2^61 - 1
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(561));       // Carmichael
    CHECK_FALSE(is_prime(1373653));   // strong pseudoprime to bases 2, 3
    CHECK_FALSE(is_prime(3215031751ULL));
    CHECK(is_prime(4294967311ULL));   // smallest prime above 2^32
    CHECK_FALSE(is_prime((u64(1) << 61) + 1));
}

TEST_CASE("factorize basics") {
    CHECK(factorize(84) == FactorList{{2, 2}, {3, 1}, {7, 1}});
    CHECK(factorize(1) == FactorList{});
    CHECK(factorize(174) == FactorList{{2, 1}, {3, 1}, {29, 1}});
    CHECK(factorize(u64(1) << 40) == FactorList{{2, 40}});
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reaches Pollard rho for large semiprimes") {
    const u64 p = 1000003, q = 1000033;
    CHECK(factorize(p * q) == FactorList{{p, 1}, {q, 1}});
    const u64 r = 2147483647;  // prime
    CHECK(factorize(r * r) == FactorList{{r, 2}});
}

TEST_CASE("factorize reassembles everything below 10^6") {
    for (u64 m = 1; m <= 1000000; ++m) {
        FactorList f = factorize(m);
        CHECK(factor_product(f) == m);
        u64 prev = 0;
        for (const Factor& fac : f) {
            CHECK(fac.prime > prev);
            prev = fac.prime;
            CHECK(is_prime(fac.prime));
            CHECK(fac.exponent >= 1);
        }
    }
}

TEST_CASE("sieve_primes") {
    CHECK(sieve_primes(1).empty());
    CHECK(sieve_primes(10) == std::vector<u64>{2, 3, 5, 7});
    CHECK(sieve_primes(100000).size() == 9592);
}

TEST_CASE("int128 helpers") {
    CHECK(to_string(u128(0)) == "0");
    CHECK(to_string(~u128(0)) == "340282366920938463463374607431768211455");
    CHECK(to_string(i128(-7)) == "-7");
    CHECK(parse_u128("340282366920938463463374607431768211455") == ~u128(0));
    CHECK_FALSE(parse_u128("340282366920938463463374607431768211456").has_value());
    CHECK_FALSE(parse_u128("0123").has_value());
    CHECK_FALSE(parse_u128("").has_value());
    CHECK_FALSE(parse_u128("12a").has_value());
    CHECK(parse_i128("-12") == i128(-12));
    CHECK_FALSE(parse_i128("-0").has_value());
    CHECK(gcd128(0, 0) == 0);
    CHECK(gcd128(0, 9) == 9);
    CHECK(gcd128(u128(6) << 80, u128(9) << 80) == u128(3) << 80);
    for (u64 v : {u64(0), u64(1), u64(2), u64(3), u64(15), u64(16), u64(17),
                  u64(999999999999), ~u64(0)}) {
        u64 r = isqrt64(v);
        CHECK(u128(r) * r <= v);
        CHECK(u128(r + 1) * (r + 1) > v);
    }
    u128 big = (u128(1) << 124) - 1;
    u128 rb = isqrt128(big);
    CHECK(rb * rb <= big);
    CHECK((rb + 1) * (rb + 1) > big);
    CHECK(isqrt128(u128(1) << 124) == u128(1) << 62);
}
