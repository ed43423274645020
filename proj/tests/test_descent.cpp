#include <cstdlib>
#include <random>

#include "doctest.h"
#include "quadrep/descent.hpp"

using namespace quadrep;

namespace {

bool oracle_has(u64 m, u64 n, const QuadRep& rep, bool nontrivial = false) {
    for (const QuadRep& r : brute_force_rep(m, n, nontrivial))
        if (r == rep) return true;
    return false;
}

}  // namespace

TEST_CASE("classify_mod20") {
    CHECK(classify_mod20(41) == ResidueClass::one_nine);
    CHECK(classify_mod20(29) == ResidueClass::one_nine);
    CHECK(classify_mod20(3) == ResidueClass::three_seven);
    CHECK(classify_mod20(23) == ResidueClass::three_seven);
    CHECK(classify_mod20(2) == ResidueClass::two);
    CHECK(classify_mod20(5) == ResidueClass::five);
    CHECK(classify_mod20(11) == ResidueClass::other);
    CHECK(classify_mod20(13) == ResidueClass::other);
}

TEST_CASE("brute_force_rep") {
    auto reps21 = brute_force_rep(21, 5, true);
    REQUIRE(reps21.size() == 2);
    CHECK(reps21[0] == make_rep(5, 4, 1));
    CHECK(reps21[1] == make_rep(5, 1, 2));
    CHECK(brute_force_rep(7, 5).empty());
    auto reps4 = brute_force_rep(4, 5);
    REQUIRE(reps4.size() == 1);
    CHECK(reps4[0] == make_rep(5, 2, 0));
    CHECK_THROWS_AS(brute_force_rep(21, 4), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_rep(oracle_bound() + 1, 5), std::out_of_range);
}

TEST_CASE("represent_fermat examples") {
    QuadRep r13 = represent_fermat(13, 1);
    CHECK(r13.value == 13);
    CHECK(oracle_has(13, 1, r13));
    CHECK(represent_fermat(11, 2) == make_rep(2, 3, 1));
    CHECK(represent_fermat(7, 3) == make_rep(3, 2, 1));
    CHECK(represent_fermat(2, 2) == make_rep(2, 0, 1));
    CHECK(represent_fermat(3, 3) == make_rep(3, 0, 1));
    CHECK(represent_fermat(5, 1) == make_rep(1, 2, 1));
    CHECK_THROWS_AS(represent_fermat(7, 1), NotRepresentableError);
    CHECK_THROWS_AS(represent_fermat(5, 2), NotRepresentableError);
    CHECK_THROWS_AS(represent_fermat(2, 3), NotRepresentableError);
    CHECK_THROWS_AS(represent_fermat(15, 1), std::invalid_argument);
    CHECK_THROWS_AS(represent_fermat(13, 4), std::invalid_argument);
}

TEST_CASE("represent_n5 examples") {
    auto [r41, c41] = represent_n5(41);
    CHECK(r41 == make_rep(5, 6, 1));
    CHECK(verify(c41).ok);

    auto [r29, c29] = represent_n5(29);
    CHECK(r29 == make_rep(5, 3, 2));
    CHECK(verify(c29).ok);
    CHECK(serialize(c29).find("Seed key=(29,6) in=(13,1)") != std::string::npos);

    auto [r89, c89] = represent_n5(89);
    CHECK(r89 == make_rep(5, 3, 4));
    CHECK(verify(c89).ok);

    CHECK_THROWS_AS(represent_n5(7), NotRepresentableError);
    CHECK_THROWS_AS(represent_n5(11), NotRepresentableError);
    CHECK_THROWS_AS(represent_n5(5), NotRepresentableError);
    CHECK_THROWS_AS(represent_n5(55), std::invalid_argument);
    CHECK_THROWS_AS(represent_n5(REPRESENT_MAX + 1), std::out_of_range);
}

TEST_CASE("represent_pair examples") {
    auto [r21, c21] = represent_pair(3, 7);
    CHECK(r21.value == 21);
    CHECK(r21.is_nontrivial());
    CHECK(oracle_has(21, 5, r21, true));
    CHECK(verify(c21).ok);

    auto [r9, c9] = represent_pair(3, 3);
    CHECK(r9 == make_rep(5, 2, 1));
    CHECK(verify(c9).ok);

    auto [r6, c6] = represent_pair(2, 3);
    CHECK(r6 == make_rep(5, 1, 1));
    CHECK(verify(c6).ok);

    auto [r14, c14] = represent_pair(2, 7);
    CHECK(r14 == make_rep(5, 3, 1));
    CHECK(verify(c14).ok);

    CHECK(represent_pair(7, 2).first == r14);  // argument order is immaterial

    CHECK_THROWS_AS(represent_pair(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(represent_pair(3, 11), std::invalid_argument);
    CHECK_THROWS_AS(represent_pair(41, 3), std::invalid_argument);
    CHECK_THROWS_AS(represent_pair(3, 9), std::invalid_argument);
}

TEST_CASE("represent_2p examples") {
    auto [r6, c6] = represent_2p(3);
    CHECK(r6 == make_rep(5, 1, 1));
    auto [r46, c46] = represent_2p(23);
    CHECK(r46 == make_rep(5, 1, 3));
    CHECK(verify(c46).ok);
    auto [r94, c94] = represent_2p(47);
    CHECK(r94 == make_rep(5, 7, 3));
    CHECK(verify(c94).ok);
    CHECK_THROWS_AS(represent_2p(41), std::invalid_argument);
    CHECK_THROWS_AS(represent_2p(2), std::invalid_argument);
}

TEST_CASE("represent_form_2_2_3 examples") {
    Form223Val f3 = represent_form_2_2_3(3);
    CHECK(f3.xp == 0);
    CHECK(f3.y == 1);
    CHECK(f3.value == 3);

    Form223Val f23 = represent_form_2_2_3(23);
    CHECK(f23.xp == -1);
    CHECK(f23.y == 3);
    CHECK(f23.value == 23);

    Form223Val f7 = represent_form_2_2_3(7);
    CHECK(f7.xp == 1);
    CHECK(f7.y == 1);
    CHECK(f7.value == 7);

    CHECK_THROWS_AS(represent_form_2_2_3(41), std::invalid_argument);
}

TEST_CASE("form identities") {
    Form223Val f7 = make_form(1, 1);
    Form223Val f3 = make_form(0, 1);
    CHECK(f7.value == 7);
    CHECK(f3.value == 3);
    CHECK(compose_form(f7, f7) == make_rep(5, 7, 0));
    CHECK(compose_form(f3, f3) == make_rep(5, 3, 0));
    CHECK(compose_form(f7, f3) == make_rep(5, 4, 1));
    CHECK(double_form(f7) == make_rep(5, 3, 1));
    CHECK(double_form(f3) == make_rep(5, 1, 1));
    CHECK(double_form(make_form(-1, 3)) == make_rep(5, 1, 3));
}

TEST_CASE("form identity values over signed coordinate ranges") {
    for (i64 x = -12; x <= 12; ++x)
        for (u64 y = 0; y <= 12; ++y) {
            Form223Val f1 = make_form(x, y);
            CHECK(double_form(f1).value == 2 * f1.value);
            for (i64 a = -8; a <= 8; ++a)
                for (u64 b = 0; b <= 8; ++b) {
                    Form223Val f2 = make_form(a, b);
                    CHECK(compose_form(f1, f2).value == f1.value * f2.value);
                }
        }
}

TEST_CASE("descent agrees with the oracle at small scale") {
    DescentEngine engine;
    for (u64 p : sieve_primes(3000)) {
        switch (classify_mod20(p)) {
            case ResidueClass::one_nine: {
                auto res = engine.represent_n5(p);
                auto reps = brute_force_rep(p, 5);
                REQUIRE(reps.size() == 1);
                CHECK(res.rep == reps[0]);
                CHECK(res.rep.is_proper());
                CHECK(verify(res.cert).ok);
                CHECK(u128(res.cert.target) == p);
                break;
            }
            case ResidueClass::three_seven: {
                CHECK(brute_force_rep(p, 5).empty());
                auto res = engine.represent_2p(p);
                CHECK(res.rep.x % 2 == 1);
                CHECK(res.rep.y % 2 == 1);
                CHECK(oracle_has(2 * p, 5, res.rep, true));
                CHECK(engine.represent_form_2_2_3(p).value == p);
                break;
            }
            case ResidueClass::other:
                CHECK(brute_force_rep(p, 5).empty());
                break;
            default:
                break;
        }
    }
}

TEST_CASE("pair descent matches the oracle for small admissible pairs") {
    DescentEngine engine;
    std::vector<u64> bad;
    for (u64 p : sieve_primes(200))
        if (classify_mod20(p) == ResidueClass::three_seven) bad.push_back(p);

    for (u64 q : bad) {
        auto res2 = engine.represent_pair(2, q);
        CHECK(oracle_has(2 * q, 5, res2.rep, true));
        CHECK(verify(res2.cert).ok);
        for (u64 q2 : bad) {
            if (q2 < q) continue;
            auto res = engine.represent_pair(q, q2);
            CHECK(res.rep.is_nontrivial());
            CHECK(oracle_has(q * q2, 5, res.rep, true));
            CHECK(verify(res.cert).ok);
            if (q == q2) CHECK(res.rep.is_proper());
        }
    }
}

TEST_CASE("fermat descent matches the oracle at small scale") {
    DescentEngine engine;
    for (u64 p : sieve_primes(3000)) {
        if (p % 4 == 1) {
            QuadRep r = engine.represent_fermat(p, 1).rep;
            CHECK(oracle_has(p, 1, r));
        }
        if (p % 8 == 1 || p % 8 == 3) {
            QuadRep r = engine.represent_fermat(p, 2).rep;
            CHECK(oracle_has(p, 2, r));
        }
        if (p % 3 == 1) {
            QuadRep r = engine.represent_fermat(p, 3).rep;
            CHECK(oracle_has(p, 3, r));
        }
    }
}

TEST_CASE("seed roots divisible by 5 are stripped") {
    // p = 181: the smaller root of -5 is 30, so the seed is 181*5 = 30^2 + 5.
    auto [rep, cert] = represent_n5(181);
    CHECK(rep == make_rep(5, 1, 6));
    REQUIRE(cert.steps.size() == 2);
    CHECK(cert.steps[1].kind == StepKind::strip_five);
    CHECK(verify(cert).ok);
}

TEST_CASE("random primes near the range cap") {
    DescentEngine engine;
    std::mt19937_64 rng(31337);
    int n5 = 0, pairs = 0, fermat = 0;
    while (n5 < 12 || pairs < 12 || fermat < 12) {
        const u64 p = rng() % REPRESENT_MAX + 1;
        if (!is_prime(p)) continue;
        switch (classify_mod20(p)) {
            case ResidueClass::one_nine: {
                if (n5 >= 12) break;
                ++n5;
                auto res = engine.represent_n5(p);
                CHECK(res.rep.value == p);
                CHECK(res.rep.is_proper());
                CHECK(verify(res.cert).ok);
                break;
            }
            case ResidueClass::three_seven: {
                if (pairs >= 12) break;
                ++pairs;
                auto res = engine.represent_2p(p);
                CHECK(res.rep.value == u128(2) * p);
                CHECK(res.rep.x % 2 == 1);
                CHECK(res.rep.y % 2 == 1);
                CHECK(verify(res.cert).ok);
                CHECK(engine.represent_form_2_2_3(p).value == p);
                auto sq = engine.represent_pair(p, p);
                CHECK(sq.rep.value == u128(p) * p);
                CHECK(sq.rep.is_proper());
                CHECK(verify(sq.cert).ok);
                break;
            }
            default:
                break;
        }
        if (fermat < 12) {
            if (p % 4 == 1) {
                QuadRep r = engine.represent_fermat(p, 1).rep;
                CHECK(r.value == p);
                ++fermat;
            } else if (p % 8 == 3) {
                QuadRep r = engine.represent_fermat(p, 2).rep;
                CHECK(r.value == p);
                ++fermat;
            }
        }
    }
}

TEST_CASE("seed cofactor bound holds on every certificate") {
    DescentEngine engine;
    for (u64 p : sieve_primes(2000)) {
        if (classify_mod20(p) != ResidueClass::one_nine) continue;
        const Certificate& cert = engine.represent_n5(p).cert;
        REQUIRE(!cert.steps.empty());
        const Step& seed = cert.steps.front();
        REQUIRE(seed.kind == StepKind::seed);
        CHECK(seed.key.y < seed.key.x);  // r < pi
        CHECK(seed.in.x <= (seed.key.x - 1) / 2);
    }
}

TEST_CASE("oracle bound") {
    // oracle_bound() latches on first use. The ctest entry oracle_bound_env
    // runs this binary again with QUADREP_ORACLE_BOUND exported.
    if (const char* env = std::getenv("QUADREP_ORACLE_BOUND")) {
        const u64 expected = *parse_u64(env);
        CHECK(oracle_bound() == expected);
        CHECK_THROWS_AS(brute_force_rep(expected + 1, 5), std::out_of_range);
        CHECK_NOTHROW(brute_force_rep(expected, 5));
    } else {
        CHECK(oracle_bound() == 100000000);
    }
}
