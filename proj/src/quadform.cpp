#include "quadrep/quadform.hpp"

namespace quadrep {

namespace {

bool divides(u128 d, i128 v) {
    return abs128(v) % d == 0;
}

void require_same_n(const QuadRep& a, const QuadRep& b, const char* op) {
    if (a.n != b.n)
        throw std::invalid_argument(std::string(op) + ": mismatched n");
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::proper_plus: return "plus";
        case Branch::proper_minus: return "minus";
        case Branch::common_divisor: return "common";
    }
    return "?";
}

QuadRep make_rep(u64 n, u128 x, u128 y) {
    if (n != 1 && n != 2 && n != 3 && n != 5)
        throw std::invalid_argument("make_rep: n must be one of 1, 2, 3, 5");
    if (x >= COORD_LIMIT || y >= COORD_LIMIT)
        throw std::invalid_argument("make_rep: coordinate exceeds 2^62");
    QuadRep r;
    r.n = n;
    r.x = x;
    r.y = y;
    r.value = x * x + u128(n) * y * y;
    return r;
}

QuadRep compose(const QuadRep& r1, const QuadRep& r2, Sign sign) {
    require_same_n(r1, r2, "compose");
    const i128 a = i128(r1.x), b = i128(r1.y);
    const i128 x = i128(r2.x), y = i128(r2.y);
    const i128 n = i128(r1.n);
    i128 X, Y;
    if (sign == Sign::plus) {
        X = a * x + n * b * y;
        Y = a * y - b * x;
    } else {
        X = a * x - n * b * y;
        Y = a * y + b * x;
    }
    QuadRep out = make_rep(r1.n, abs128(X), abs128(Y));
    if (out.value != r1.value * r2.value)
        throw InternalError("compose: Euler identity violated");
    return out;
}

CancelOutcome cancel_prime(const QuadRep& key, const QuadRep& big) {
    require_same_n(key, big, "cancel_prime");
    if (key.value < 2 || key.value > ~u64(0) || !is_prime(u64(key.value)))
        throw std::invalid_argument("cancel_prime: key value is not prime");
    const u128 p = key.value;
    if (big.value % p != 0)
        throw std::invalid_argument("cancel_prime: key prime does not divide the value");

    const i128 a = i128(key.x), b = i128(key.y);
    const i128 X = i128(big.x), Y = i128(big.y);
    const i128 n = i128(key.n);

    QuadRep result;
    Branch branch;
    const i128 d1 = a * Y - b * X;
    if (divides(p, d1)) {
        // p | ay - bx, hence p | ax + nby.
        result = make_rep(big.n, u128(a * X + n * b * Y) / p, abs128(d1) / p);
        branch = Branch::proper_plus;
    } else {
        const i128 d2 = a * Y + b * X;
        if (!divides(p, d2))
            throw InternalError("cancel_prime: neither ay-bx nor ay+bx divisible");
        result = make_rep(big.n, abs128(a * X - n * b * Y) / p, u128(d2) / p);
        branch = Branch::proper_minus;
    }
    if (result.value * p != big.value)
        throw InternalError("cancel_prime: quotient value mismatch");
    return {result, branch};
}

CancelOutcome cancel_square(const QuadRep& key, const QuadRep& big) {
    require_same_n(key, big, "cancel_square");
    if (!key.is_nontrivial())
        throw std::invalid_argument("cancel_square: key representation must be nontrivial");
    const u128 q2 = key.value;
    const u128 qroot = isqrt128(q2);
    if (qroot * qroot != q2 || qroot > ~u64(0))
        throw std::invalid_argument("cancel_square: key value is not a prime square");
    const u64 q = u64(qroot);
    if (q % 2 == 0)
        throw std::invalid_argument("cancel_square: q must be odd (use halve for q = 2)");
    if (!is_prime(q))
        throw std::invalid_argument("cancel_square: key value is not a prime square");
    if (big.value % q2 != 0)
        throw std::invalid_argument("cancel_square: q^2 does not divide the value");

    const i128 a = i128(key.x), b = i128(key.y);
    const i128 X = i128(big.x), Y = i128(big.y);
    const i128 n = i128(key.n);

    QuadRep result;
    Branch branch;
    const i128 d1 = a * Y - b * X;
    const i128 d2 = a * Y + b * X;
    if (divides(q2, d1)) {
        result = make_rep(big.n, u128(a * X + n * b * Y) / q2, abs128(d1) / q2);
        branch = Branch::proper_plus;
    } else if (divides(q2, d2)) {
        result = make_rep(big.n, abs128(a * X - n * b * Y) / q2, u128(d2) / q2);
        branch = Branch::proper_minus;
    } else {
        // q^2 divides neither, so q | x and q | y.
        if (big.x % q != 0 || big.y % q != 0)
            throw InternalError("cancel_square: common-divisor case without q | x, q | y");
        result = make_rep(big.n, big.x / q, big.y / q);
        branch = Branch::common_divisor;
    }
    if (result.value * q2 != big.value)
        throw InternalError("cancel_square: quotient value mismatch");
    return {result, branch};
}

QuadRep halve(const QuadRep& big) {
    if (big.n != 5) throw std::invalid_argument("halve: defined for n = 5 only");
    if (big.value % 4 != 0) throw std::invalid_argument("halve: 4 must divide the value");
    if (big.x % 2 != 0 || big.y % 2 != 0)
        throw InternalError("halve: odd coordinate although 4 | value");
    return make_rep(5, big.x / 2, big.y / 2);
}

QuadRep square_rep(const QuadRep& s_rep) {
    if (s_rep.n != 5) throw std::invalid_argument("square_rep: defined for n = 5 only");
    if (s_rep.value % 2 == 0) throw std::invalid_argument("square_rep: value must be odd");
    if (s_rep.value % 5 == 0) throw std::invalid_argument("square_rep: value must not be divisible by 5");
    if (!s_rep.is_nontrivial()) throw std::invalid_argument("square_rep: representation must be nontrivial");
    if (!s_rep.is_proper()) throw std::invalid_argument("square_rep: representation must be proper");

    const i128 a = i128(s_rep.x), b = i128(s_rep.y);
    QuadRep out = make_rep(5, abs128(a * a - 5 * b * b), u128(2 * a * b));
    if (out.value != s_rep.value * s_rep.value)
        throw InternalError("square_rep: value is not the square");
    return out;
}

}  // namespace quadrep
