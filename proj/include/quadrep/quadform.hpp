#pragma once

#include "quadrep/arith.hpp"

namespace quadrep {

// Coordinates are capped so that x^2 + 5*y^2 and every signed intermediate
// of the identities below stay inside 128-bit integers.
constexpr u128 COORD_LIMIT = u128(1) << 62;

// A (1,n)-representation x^2 + n*y^2 with nonnegative coordinates, n in {1,2,3,5}.
struct QuadRep {
    u64 n = 1;
    u128 x = 0;
    u128 y = 0;
    u128 value = 0;  // always x^2 + n*y^2

    bool is_nontrivial() const { return x != 0 && y != 0; }
    bool is_proper() const { return gcd128(x, y) == 1; }

    friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

enum class Sign { plus, minus };

// Which divisibility case of a cancelation fired.
enum class Branch { proper_plus, proper_minus, common_divisor };

const char* branch_name(Branch b);

struct CancelOutcome {
    QuadRep result;
    Branch branch = Branch::proper_plus;
};

QuadRep make_rep(u64 n, u128 x, u128 y);

// (a^2+nb^2)(x^2+ny^2) = (ax +- nby)^2 + n(ay -+ bx)^2, with r1 = (a,b).
// Signed intermediates are normalized to nonnegative coordinates.
QuadRep compose(const QuadRep& r1, const QuadRep& r2, Sign sign);

// Cancel a prime p = key.value from big (p | big.value). Tests p | ay - bx
// first, so the proper_plus branch wins when both divisibilities hold.
CancelOutcome cancel_prime(const QuadRep& key, const QuadRep& big);

// Cancel q^2 = key.value, q an odd prime, key nontrivial. Falls back to the
// common-divisor case (q | x and q | y) when q^2 divides neither ay - bx
// nor ay + bx.
CancelOutcome cancel_square(const QuadRep& key, const QuadRep& big);

// The q = 2, n = 5 cancelation: 4 | value forces x, y both even.
QuadRep halve(const QuadRep& big);

// s = a^2 + 5b^2 odd, 5 ∤ s, nontrivial and proper;
// returns s^2 = (a^2 - 5b^2)^2 + 5(2ab)^2, again nontrivial and proper.
QuadRep square_rep(const QuadRep& s_rep);

}  // namespace quadrep
