#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quadrep/quadform.hpp"

namespace quadrep {

enum class StepKind {
    seed,          // x^2 + n = pi * r, recorded as key=(pi,r), rep (x,1)
    strip_five,    // n = 5 only: (x,y) -> (y, x/5), value / 5
    cancel_prime,  // cancel the prime key.value from the chain value
    cancel_square, // cancel the odd prime square key.value
    halve,         // q = 2 cancelation: (x,y) -> (x/2, y/2), value / 4
    compose,       // Euler identity with the key representation
    square,        // (a,b) -> (|a^2-5b^2|, 2ab), value squared
    form_convert,  // 2p = x^2+5y^2, x,y odd -> p = 2x'^2+2x'y+3y', x' = (x-y)/2
};

const char* step_kind_name(StepKind k);

// A coordinate pair as recorded in a certificate. Only the first coordinate
// of a form_convert output (and of the final of such a chain) may be negative.
struct Coords {
    i128 x = 0;
    i128 y = 0;

    friend bool operator==(const Coords&, const Coords&) = default;
};

struct Step {
    StepKind kind = StepKind::seed;
    bool has_key = false;
    Coords key;  // seed: (pi, r); cancel/compose: the key representation
    Coords in;
    Coords out;
    bool has_branch = false;
    Branch branch = Branch::proper_plus;  // cancel branches; compose sign

    friend bool operator==(const Step&, const Step&) = default;
};

// Replayable descent log. Verification needs nothing but the recorded
// integers and the arithmetic identities of the step kinds.
struct Certificate {
    u64 n = 5;
    u128 target = 0;
    std::vector<Step> steps;
    Coords final;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct VerifyResult {
    bool ok = true;
    // Failing step index (0-based); SIZE_MAX marks the header/final checks.
    std::size_t step = static_cast<std::size_t>(-1);
    std::string detail;

    explicit operator bool() const { return ok; }
};

VerifyResult verify(const Certificate& cert);

// Line-oriented UTF-8: "CERT n=<n> target=<m>", one step per line,
// "FINAL (x,y)" last. Byte-deterministic, LF endings, no padding.
std::string serialize(const Certificate& cert);

// Throws ParseError (with 1-based line number) on malformed text.
Certificate deserialize(std::string_view text);

}  // namespace quadrep
