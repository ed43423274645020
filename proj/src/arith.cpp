#include "quadrep/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace quadrep {

namespace {

// Primality below this limit is answered from a sieve built once.
constexpr u64 SMALL_SIEVE_LIMIT = u64(1) << 21;
constexpr u64 TRIAL_LIMIT = 1'000'000;

const std::vector<bool>& small_sieve() {
    static const std::vector<bool> sieve = [] {
        std::vector<bool> s(SMALL_SIEVE_LIMIT, true);
        s[0] = s[1] = false;
        for (u64 i = 2; i * i < SMALL_SIEVE_LIMIT; ++i) {
            if (!s[i]) continue;
            for (u64 j = i * i; j < SMALL_SIEVE_LIMIT; j += i) s[j] = false;
        }
        return s;
    }();
    return sieve;
}

// Fixed witness set, exact for everything below 3.3 * 10^24 (so all of u64).
constexpr u64 MR_WITNESSES[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_round(u64 n, u64 a, u64 d, int s) {
    u64 x = 1;
    {
        u64 base = a % n;
        u64 e = d;
        while (e != 0) {
            if (e & 1) x = mul_mod(x, base, n);
            base = mul_mod(base, base, n);
            e >>= 1;
        }
    }
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Brent's cycle variant; parameters derived from n so runs are reproducible.
u64 pollard_brent(u64 n) {
    for (u64 salt = 0;; ++salt) {
        u64 c = splitmix64(n ^ (salt * 0xda942042e4dd58b5ULL)) % (n - 2) + 1;
        u64 y = splitmix64(c) % n;
        const u64 m = 128;
        u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto step = [&](u64 v) { return u64((u128(v) * v + c) % n); };
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) {
    return u64((u128(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 modulus) {
    if (modulus < 2) throw std::invalid_argument("pow_mod: modulus must be >= 2");
    u64 result = 1;
    u64 b = base % modulus;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, b, modulus);
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 m) {
    if (m < SMALL_SIEVE_LIMIT) return small_sieve()[m];
    if (m % 2 == 0 || m % 3 == 0 || m % 5 == 0 || m % 7 == 0) return false;
    u64 d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : MR_WITNESSES) {
        if (a % m == 0) continue;
        if (!miller_rabin_round(m, a, d, s)) return false;
    }
    return true;
}

int legendre(i64 a, u64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    u64 am = u64(((i128(a) % i128(p)) + i128(p)) % i128(p));
    if (am == 0) return 0;
    u64 t = pow_mod(am, (p - 1) / 2, p);
    if (t == 1) return 1;
    if (t == p - 1) return -1;
    throw InternalError("legendre: Euler criterion returned a nonunit");
}

u64 sqrt_mod(i64 a, u64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("sqrt_mod: p must be an odd prime");
    u64 am = u64(((i128(a) % i128(p)) + i128(p)) % i128(p));
    if (am == 0) return 0;
    if (pow_mod(am, (p - 1) / 2, p) != 1)
        throw NoRootError("sqrt_mod: a is not a quadratic residue mod p");

    u64 root;
    if (p % 4 == 3) {
        root = pow_mod(am, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks. The non-residue search is deterministic.
        u64 q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
        u64 m = u64(s);
        u64 c = pow_mod(z, q, p);
        u64 t = pow_mod(am, q, p);
        root = pow_mod(am, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mul_mod(t2, t2, p);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            root = mul_mod(root, b, p);
        }
    }
    return std::min(root, p - root);
}

FactorList factorize(u64 m) {
    if (m == 0) throw std::invalid_argument("factorize: m must be >= 1");
    std::map<u64, unsigned> acc;

    for (u64 p : {u64(2), u64(3), u64(5)}) {
        while (m % p == 0) {
            ++acc[p];
            m /= p;
        }
    }
    // Wheel mod 30 starting at 7.
    static constexpr unsigned WHEEL[] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 d = 7;
    unsigned w = 0;
    while (d <= TRIAL_LIMIT && u128(d) * d <= m) {
        while (m % d == 0) {
            ++acc[d];
            m /= d;
        }
        d += WHEEL[w];
        w = (w + 1) & 7;
    }

    if (m > 1) {
        std::vector<u64> pending{m};
        while (!pending.empty()) {
            u64 t = pending.back();
            pending.pop_back();
            if (is_prime(t)) {
                ++acc[t];
                continue;
            }
            u64 f = pollard_brent(t);
            pending.push_back(f);
            pending.push_back(t / f);
        }
    }

    FactorList out;
    out.reserve(acc.size());
    for (auto& [p, e] : acc) out.push_back({p, e});
    return out;
}

u128 factor_product(const FactorList& factors) {
    u128 prod = 1;
    for (const auto& f : factors)
        for (unsigned i = 0; i < f.exponent; ++i) prod *= f.prime;
    return prod;
}

std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> s(limit + 1, true);
    s[0] = s[1] = false;
    for (u64 i = 2; i * i <= limit; ++i) {
        if (!s[i]) continue;
        for (u64 j = i * i; j <= limit; j += i) s[j] = false;
    }
    for (u64 i = 2; i <= limit; ++i)
        if (s[i]) primes.push_back(i);
    return primes;
}

}  // namespace quadrep
