#include "quadrep/descent.hpp"

#include <algorithm>
#include <cstdlib>

namespace quadrep {

namespace {

Coords coords_of(const QuadRep& r) {
    return {i128(r.x), i128(r.y)};
}

Step make_step(StepKind kind, const QuadRep& in, const QuadRep& out) {
    Step st;
    st.kind = kind;
    st.in = coords_of(in);
    st.out = coords_of(out);
    return st;
}

Step keyed_step(StepKind kind, const QuadRep& key, const QuadRep& in, const QuadRep& out,
                Branch branch) {
    Step st = make_step(kind, in, out);
    st.has_key = true;
    st.key = coords_of(key);
    st.has_branch = true;
    st.branch = branch;
    return st;
}

void check_range(u64 p, const char* op) {
    if (p > REPRESENT_MAX)
        throw std::out_of_range(std::string(op) + ": input exceeds the supported range (2^31 - 1)");
}

void check_prime(u64 p, const char* op) {
    if (!is_prime(p))
        throw std::invalid_argument(std::string(op) + ": input is not prime");
}

}  // namespace

ResidueClass classify_mod20(u64 p) {
    if (p == 2) return ResidueClass::two;
    if (p == 5) return ResidueClass::five;
    switch (p % 20) {
        case 1:
        case 9:
            return ResidueClass::one_nine;
        case 3:
        case 7:
            return ResidueClass::three_seven;
        default:
            return ResidueClass::other;
    }
}

Form223Val make_form(i64 xp, u64 y) {
    constexpr i64 FORM_LIMIT = i64(1) << 32;
    if (xp <= -FORM_LIMIT || xp >= FORM_LIMIT || y >= u64(FORM_LIMIT))
        throw std::invalid_argument("make_form: coordinate exceeds 2^32");
    Form223Val f;
    f.xp = xp;
    f.y = y;
    const i128 x = xp, yy = i128(y);
    f.value = u128(2 * x * x + 2 * x * yy + 3 * yy * yy);  // positive definite
    return f;
}

QuadRep compose_form(const Form223Val& f1, const Form223Val& f2) {
    const i128 x = f1.xp, y = i128(f1.y);
    const i128 a = f2.xp, b = i128(f2.y);
    const i128 X = 2 * a * x + b * x + a * y + 3 * b * y;
    const i128 Y = b * x - a * y;
    QuadRep out = make_rep(5, abs128(X), abs128(Y));
    if (out.value != f1.value * f2.value)
        throw InternalError("compose_form: product identity violated");
    return out;
}

QuadRep double_form(const Form223Val& f) {
    const i128 x = f.xp, y = i128(f.y);
    QuadRep out = make_rep(5, abs128(2 * x + y), u128(y));
    if (out.value != 2 * f.value)
        throw InternalError("double_form: doubling identity violated");
    return out;
}

u64 oracle_bound() {
    static const u64 bound = [] {
        if (const char* env = std::getenv("QUADREP_ORACLE_BOUND")) {
            if (auto v = parse_u64(env); v && *v > 0) return *v;
        }
        return u64(100'000'000);
    }();
    return bound;
}

std::vector<QuadRep> brute_force_rep(u64 m, u64 n, bool require_nontrivial) {
    if (n != 1 && n != 2 && n != 3 && n != 5)
        throw std::invalid_argument("brute_force_rep: n must be one of 1, 2, 3, 5");
    if (m > oracle_bound())
        throw std::out_of_range("brute_force_rep: m exceeds the oracle bound");
    std::vector<QuadRep> out;
    const u64 ymax = isqrt64(m / n);
    for (u64 y = 0; y <= ymax; ++y) {
        const u64 t = m - n * y * y;
        const u64 x = isqrt64(t);
        if (x * x != t) continue;
        QuadRep r = make_rep(n, x, y);
        if (require_nontrivial && !r.is_nontrivial()) continue;
        out.push_back(r);
    }
    return out;
}

bool DescentEngine::find_memo(const std::unordered_map<u64, Result>& memo, u64 key, Result& out) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo.find(key);
    if (it == memo.end()) return false;
    out = it->second;
    return true;
}

void DescentEngine::store_memo(std::unordered_map<u64, Result>& memo, u64 key, const Result& res) {
    std::lock_guard<std::mutex> lock(mu_);
    memo.emplace(key, res);
}

DescentEngine::Core DescentEngine::descend(u64 pi) {
    // pi is a prime with -5 a quadratic residue, i.e. pi = 1,9,3,7 (mod 20).
    const u64 x = sqrt_mod(-5, pi);  // x <= (pi-1)/2, hence r < pi
    QuadRep rep = make_rep(5, x, 1);
    if (rep.value % pi != 0) throw InternalError("descend: seed not divisible by pi");
    u64 r = u64(rep.value / pi);

    Core core;
    {
        Step st = make_step(StepKind::seed, rep, rep);
        st.has_key = true;
        st.key = {i128(pi), i128(r)};
        core.steps.push_back(st);
    }

    // 5 | r forces 5 | x; one strip always suffices, but loop anyway.
    while (r % 5 == 0) {
        QuadRep next = make_rep(5, rep.y, rep.x / 5);
        core.steps.push_back(make_step(StepKind::strip_five, rep, next));
        rep = next;
        r /= 5;
    }

    std::vector<u64> good, bad;
    for (const Factor& f : factorize(r)) {
        ResidueClass cls = classify_mod20(f.prime);
        for (unsigned e = 0; e < f.exponent; ++e) {
            if (cls == ResidueClass::one_nine)
                good.push_back(f.prime);
            else if (cls == ResidueClass::three_seven || cls == ResidueClass::two)
                bad.push_back(f.prime);
            else
                throw InternalError("descend: cofactor factor in impossible residue class");
        }
    }
    std::sort(good.begin(), good.end());
    std::sort(bad.begin(), bad.end(), std::greater<>());

    // Factors 1,9 (mod 20) cancel one by one via their own representations.
    for (u64 q : good) {
        const QuadRep key = represent_n5(q).rep;
        CancelOutcome oc = cancel_prime(key, rep);
        core.steps.push_back(keyed_step(StepKind::cancel_prime, key, rep, oc.result, oc.branch));
        rep = oc.result;
        r /= q;
    }

    // Factors 3,7 (mod 20) and 2 cancel pair by pair, largest first, 2 last.
    std::size_t i = 0;
    while (bad.size() - i >= 2) {
        const u64 qa = bad[i], qb = bad[i + 1];
        i += 2;
        if (qa == qb) {
            // qa^2 already divides the value; cancel it directly.
            if (qa == 2) {
                QuadRep next = halve(rep);
                core.steps.push_back(make_step(StepKind::halve, rep, next));
                rep = next;
            } else {
                const QuadRep key = represent_pair(qa, qa).rep;
                CancelOutcome oc = cancel_square(key, rep);
                core.steps.push_back(
                    keyed_step(StepKind::cancel_square, key, rep, oc.result, oc.branch));
                rep = oc.result;
            }
        } else {
            // qa*qb*(pi*r) = qa^2*qb^2*(pi*r'): compose, then cancel both squares.
            const QuadRep link = represent_pair(qb, qa).rep;
            QuadRep composed = compose(link, rep, Sign::plus);
            core.steps.push_back(
                keyed_step(StepKind::compose, link, rep, composed, Branch::proper_plus));
            rep = composed;

            const QuadRep key_a = represent_pair(qa, qa).rep;  // qa > qb >= 2, so qa is odd
            CancelOutcome oc = cancel_square(key_a, rep);
            core.steps.push_back(
                keyed_step(StepKind::cancel_square, key_a, rep, oc.result, oc.branch));
            rep = oc.result;

            if (qb == 2) {
                QuadRep next = halve(rep);
                core.steps.push_back(make_step(StepKind::halve, rep, next));
                rep = next;
            } else {
                const QuadRep key_b = represent_pair(qb, qb).rep;
                oc = cancel_square(key_b, rep);
                core.steps.push_back(
                    keyed_step(StepKind::cancel_square, key_b, rep, oc.result, oc.branch));
                rep = oc.result;
            }
        }
        r /= qa * qb;
    }

    core.cofactor = (i < bad.size()) ? bad[i] : 1;
    if (r != core.cofactor) throw InternalError("descend: cofactor bookkeeping diverged");
    if (rep.value != u128(pi) * core.cofactor)
        throw InternalError("descend: value is not pi * cofactor");
    core.rep = rep;
    return core;
}

DescentEngine::Result DescentEngine::represent_n5(u64 p) {
    check_range(p, "represent_n5");
    check_prime(p, "represent_n5");
    if (classify_mod20(p) != ResidueClass::one_nine)
        throw NotRepresentableError("represent_n5: p mod 20 not in {1, 9}", p, 20,
                                    unsigned(p % 20));

    Result res;
    if (find_memo(memo_n5_, p, res)) return res;

    Core core = descend(p);
    // r = q' would force x^2 = +-2 (mod 5), which is impossible.
    if (core.cofactor != 1)
        throw InternalError("represent_n5: descent terminated with r != 1");
    if (!core.rep.is_nontrivial() || !core.rep.is_proper())
        throw InternalError("represent_n5: representation of a prime must be proper");

    res.rep = core.rep;
    res.cert.n = 5;
    res.cert.target = p;
    res.cert.steps = std::move(core.steps);
    res.cert.final = coords_of(res.rep);
    store_memo(memo_n5_, p, res);
    return res;
}

DescentEngine::Result DescentEngine::represent_pair(u64 q, u64 q2) {
    check_range(q, "represent_pair");
    check_range(q2, "represent_pair");
    check_prime(q, "represent_pair");
    check_prime(q2, "represent_pair");
    const bool bq = classify_mod20(q) == ResidueClass::three_seven;
    const bool bq2 = classify_mod20(q2) == ResidueClass::three_seven;
    if (!((bq && bq2) || (bq && q2 == 2) || (q == 2 && bq2)))
        throw std::invalid_argument(
            "represent_pair: need both primes = 3,7 (mod 20), or one of them = 2");

    const u64 pi = std::max(q, q2);
    const u64 partner = std::min(q, q2);
    const u64 memo_key = (partner << 32) | pi;

    Result res;
    if (find_memo(memo_pair_, memo_key, res)) return res;

    Core core = descend(pi);
    const u64 q0 = core.cofactor;
    if (q0 == 1)
        throw InternalError("represent_pair: descent gave r = 1 for pi = 3,7 (mod 20)");

    QuadRep rep;
    std::vector<Step> steps = std::move(core.steps);

    if (partner == q0) {
        rep = core.rep;
    } else if (partner == pi) {
        // Target pi^2: square the pi*q0 representation, then cancel q0^2.
        if (q0 == 2) {
            QuadRep squared = compose(core.rep, core.rep, Sign::minus);
            steps.push_back(keyed_step(StepKind::compose, core.rep, core.rep, squared,
                                       Branch::proper_minus));
            rep = halve(squared);
            steps.push_back(make_step(StepKind::halve, squared, rep));
        } else {
            QuadRep squared = square_rep(core.rep);
            steps.push_back(make_step(StepKind::square, core.rep, squared));
            const QuadRep key = represent_pair(q0, q0).rep;
            CancelOutcome oc = cancel_square(key, squared);
            steps.push_back(keyed_step(StepKind::cancel_square, key, squared, oc.result, oc.branch));
            rep = oc.result;
        }
    } else {
        // pi*partner*q0^2 = (pi*q0)(q0*partner): compose, then cancel q0^2.
        const QuadRep link = represent_pair(std::min(q0, partner), std::max(q0, partner)).rep;
        QuadRep composed = compose(link, core.rep, Sign::plus);
        steps.push_back(
            keyed_step(StepKind::compose, link, core.rep, composed, Branch::proper_plus));
        if (q0 == 2) {
            rep = halve(composed);
            steps.push_back(make_step(StepKind::halve, composed, rep));
        } else {
            const QuadRep key = represent_pair(q0, q0).rep;
            CancelOutcome oc = cancel_square(key, composed);
            steps.push_back(
                keyed_step(StepKind::cancel_square, key, composed, oc.result, oc.branch));
            rep = oc.result;
        }
    }

    const u128 target = u128(q) * q2;
    if (rep.value != target) throw InternalError("represent_pair: value is not q * q'");
    if (!rep.is_nontrivial())
        throw InternalError("represent_pair: representation must be nontrivial");
    if (q == q2 && !rep.is_proper())
        throw InternalError("represent_pair: representation of q^2 must be proper");

    res.rep = rep;
    res.cert.n = 5;
    res.cert.target = target;
    res.cert.steps = std::move(steps);
    res.cert.final = coords_of(rep);
    store_memo(memo_pair_, memo_key, res);
    return res;
}

DescentEngine::Result DescentEngine::represent_2p(u64 p) {
    check_range(p, "represent_2p");
    check_prime(p, "represent_2p");
    if (classify_mod20(p) != ResidueClass::three_seven)
        throw std::invalid_argument("represent_2p: p mod 20 not in {3, 7}");
    Result res = represent_pair(2, p);
    // 2p = 2 (mod 4) forces both coordinates odd.
    if (res.rep.x % 2 == 0 || res.rep.y % 2 == 0)
        throw InternalError("represent_2p: coordinates must both be odd");
    return res;
}

DescentEngine::Result DescentEngine::represent_fermat(u64 p, u64 n) {
    if (n != 1 && n != 2 && n != 3)
        throw std::invalid_argument("represent_fermat: n must be one of 1, 2, 3");
    check_range(p, "represent_fermat");
    check_prime(p, "represent_fermat");

    if ((n == 2 || n == 3) && p == n) {
        Result res;
        res.rep = make_rep(n, 0, 1);
        res.cert.n = n;
        res.cert.target = p;
        res.cert.final = coords_of(res.rep);
        return res;
    }
    if (n == 1 && p % 4 != 1)
        throw NotRepresentableError("represent_fermat: p mod 4 != 1", p, 4, unsigned(p % 4));
    if (n == 2 && p % 8 != 1 && p % 8 != 3)
        throw NotRepresentableError("represent_fermat: p mod 8 not in {1, 3}", p, 8,
                                    unsigned(p % 8));
    if (n == 3 && p % 3 != 1)
        throw NotRepresentableError("represent_fermat: p mod 3 != 1", p, 3, unsigned(p % 3));

    const u64 memo_key = (n << 32) | p;
    Result res;
    if (find_memo(memo_fermat_, memo_key, res)) return res;

    u64 x = sqrt_mod(-i64(n), p);
    // For n = 1, 3 the even root makes x^2 + n odd, so no factor 2 appears.
    if ((n == 1 || n == 3) && x % 2 != 0) x = p - x;

    QuadRep rep = make_rep(n, x, 1);
    if (rep.value % p != 0) throw InternalError("represent_fermat: seed not divisible by p");
    u64 r = u64(rep.value / p);

    std::vector<Step> steps;
    {
        Step st = make_step(StepKind::seed, rep, rep);
        st.has_key = true;
        st.key = {i128(p), i128(r)};
        steps.push_back(st);
    }

    for (const Factor& f : factorize(r)) {
        const u64 q = f.prime;
        const bool in_class = (n == 1 && q % 4 == 1) ||
                              (n == 2 && (q == 2 || q % 8 == 1 || q % 8 == 3)) ||
                              (n == 3 && (q == 3 || q % 3 == 1));
        if (!in_class)
            throw InternalError("represent_fermat: cofactor factor in impossible class");
        for (unsigned e = 0; e < f.exponent; ++e) {
            const QuadRep key =
                (q == n) ? make_rep(n, 0, 1) : represent_fermat(q, n).rep;
            CancelOutcome oc = cancel_prime(key, rep);
            steps.push_back(keyed_step(StepKind::cancel_prime, key, rep, oc.result, oc.branch));
            rep = oc.result;
            r /= q;
        }
    }

    if (r != 1 || rep.value != p)
        throw InternalError("represent_fermat: descent did not reach the prime");
    if (!rep.is_nontrivial() || !rep.is_proper())
        throw InternalError("represent_fermat: representation of a prime must be proper");

    res.rep = rep;
    res.cert.n = n;
    res.cert.target = p;
    res.cert.steps = std::move(steps);
    res.cert.final = coords_of(rep);
    store_memo(memo_fermat_, memo_key, res);
    return res;
}

Form223Val DescentEngine::represent_form_2_2_3(u64 p) {
    return represent_form_2_2_3_cert(p).form;
}

DescentEngine::FormResult DescentEngine::represent_form_2_2_3_cert(u64 p) {
    Result two_p = represent_2p(p);  // validates class and primality
    const i128 x = i128(two_p.rep.x), y = i128(two_p.rep.y);
    const i128 xp = (x - y) / 2;  // both odd, difference even

    FormResult res;
    res.form = make_form(i64(xp), u64(two_p.rep.y));
    if (res.form.value != p)
        throw InternalError("represent_form_2_2_3: form value is not p");

    res.cert = std::move(two_p.cert);
    res.cert.target = p;
    Step st;
    st.kind = StepKind::form_convert;
    st.in = coords_of(two_p.rep);
    st.out = {xp, y};
    res.cert.steps.push_back(st);
    res.cert.final = st.out;
    return res;
}

DescentEngine& default_engine() {
    static DescentEngine engine;
    return engine;
}

QuadRep represent_fermat(u64 p, u64 n) {
    return default_engine().represent_fermat(p, n).rep;
}

std::pair<QuadRep, Certificate> represent_n5(u64 p) {
    auto res = default_engine().represent_n5(p);
    return {res.rep, std::move(res.cert)};
}

std::pair<QuadRep, Certificate> represent_pair(u64 q, u64 q2) {
    auto res = default_engine().represent_pair(q, q2);
    return {res.rep, std::move(res.cert)};
}

std::pair<QuadRep, Certificate> represent_2p(u64 p) {
    auto res = default_engine().represent_2p(p);
    return {res.rep, std::move(res.cert)};
}

Form223Val represent_form_2_2_3(u64 p) {
    return default_engine().represent_form_2_2_3(p);
}

}  // namespace quadrep
