#pragma once

#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quadrep/certificate.hpp"

namespace quadrep {

// Classification of a prime by its residue mod 20.
enum class ResidueClass {
    one_nine,    // p = 1, 9 (mod 20):  p = x^2 + 5y^2
    three_seven, // p = 3, 7 (mod 20):  2p = x^2 + 5y^2 and p = 2x'^2+2x'y+3y^2
    two,
    five,
    other,       // no (1,5)-representation exists
};

ResidueClass classify_mod20(u64 p);

// p = 2x'^2 + 2x'y + 3y^2 where x' may be negative.
struct Form223Val {
    i64 xp = 0;
    u64 y = 0;
    u128 value = 0;

    friend bool operator==(const Form223Val&, const Form223Val&) = default;
};

Form223Val make_form(i64 xp, u64 y);

// (2x^2+2xy+3y^2)(2a^2+2ab+3b^2) = (2ax+bx+ay+3by)^2 + 5(bx-ay)^2
QuadRep compose_form(const Form223Val& f1, const Form223Val& f2);

// 2(2x^2+2xy+3y^2) = (2x+y)^2 + 5y^2
QuadRep double_form(const Form223Val& f);

// Largest prime the descent engines accept. Inputs up to here keep every
// intermediate (the pair step reaches pi^4) inside 128-bit integers.
constexpr u64 REPRESENT_MAX = (u64(1) << 31) - 1;

// Default 10^8; override with the QUADREP_ORACLE_BOUND environment variable.
u64 oracle_bound();

// Exhaustive enumeration of all (x, y) with x^2 + n*y^2 = m, ascending y.
std::vector<QuadRep> brute_force_rep(u64 m, u64 n, bool require_nontrivial = false);

// Memoized descent engines. All operations are deterministic functions of
// their inputs; the memo tables only cache results and may be shared between
// threads (lookups and inserts are mutex-guarded, computation runs outside
// the lock).
class DescentEngine {
public:
    struct Result {
        QuadRep rep;
        Certificate cert;
    };

    struct FormResult {
        Form223Val form;
        Certificate cert;
    };

    // p = 1, 9 (mod 20): proper representation of p itself.
    Result represent_n5(u64 p);

    // q, q2 = 3, 7 (mod 20), or one of them 2 (not both): nontrivial
    // representation of q * q2. q = q2 allowed (then the value is q^2).
    Result represent_pair(u64 q, u64 q2);

    // p = 3, 7 (mod 20): representation of 2p; both coordinates come out odd.
    Result represent_2p(u64 p);

    // Euler's descents for n in {1,2,3}.
    Result represent_fermat(u64 p, u64 n);

    // p = 3, 7 (mod 20): derived from represent_2p via x' = (x - y)/2.
    Form223Val represent_form_2_2_3(u64 p);
    FormResult represent_form_2_2_3_cert(u64 p);

private:
    struct Core {
        QuadRep rep;     // representation of pi * cofactor
        u64 cofactor;    // 1, or the terminal prime q' (3,7 mod 20 or 2)
        std::vector<Step> steps;
    };

    // Seed pi*r = x^2 + 5y^2 and minimize r: factors 1,9 (mod 20) cancel one
    // by one, factors 3,7 (mod 20) and 2 cancel pair by pair.
    Core descend(u64 pi);

    bool find_memo(const std::unordered_map<u64, Result>& memo, u64 key, Result& out);
    void store_memo(std::unordered_map<u64, Result>& memo, u64 key, const Result& res);

    std::mutex mu_;
    std::unordered_map<u64, Result> memo_n5_;
    std::unordered_map<u64, Result> memo_pair_;    // key: (min << 32) | max
    std::unordered_map<u64, Result> memo_fermat_;  // key: (n << 32) | p
};

DescentEngine& default_engine();

// Convenience wrappers over the shared default engine.
QuadRep represent_fermat(u64 p, u64 n);
std::pair<QuadRep, Certificate> represent_n5(u64 p);
std::pair<QuadRep, Certificate> represent_pair(u64 q, u64 q2);
std::pair<QuadRep, Certificate> represent_2p(u64 p);
Form223Val represent_form_2_2_3(u64 p);

}  // namespace quadrep
