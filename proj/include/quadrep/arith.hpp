#pragma once

#include <vector>

#include "quadrep/errors.hpp"
#include "quadrep/int128.hpp"

namespace quadrep {

struct Factor {
    u64 prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const Factor&, const Factor&) = default;
};

// Complete factorization, primes strictly increasing.
using FactorList = std::vector<Factor>;

u64 mul_mod(u64 a, u64 b, u64 m);

// base^exp mod modulus; modulus must be >= 2.
u64 pow_mod(u64 base, u64 exp, u64 modulus);

// Euler-criterion value of (a/p) in {-1, 0, +1}; p must be an odd prime.
int legendre(i64 a, u64 p);

// Smaller square root of a mod p, i.e. the root x with x <= (p-1)/2.
// Throws NoRootError when a is a non-residue mod p.
u64 sqrt_mod(i64 a, u64 p);

// Exact for all 64-bit inputs (fixed Miller-Rabin witness set).
bool is_prime(u64 m);

// m >= 1; factorize(1) is empty. Trial division below 10^6, then
// Brent's cycle variant of Pollard rho with input-seeded parameters.
FactorList factorize(u64 m);

u128 factor_product(const FactorList& factors);

std::vector<u64> sieve_primes(u64 limit);

}  // namespace quadrep
