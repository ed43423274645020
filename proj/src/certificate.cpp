#include "quadrep/certificate.hpp"

#include <array>

namespace quadrep {

namespace {

// Verifier-side coordinate cap: keeps every product below formed here inside
// a signed 128-bit integer.
constexpr i128 VERIFY_COORD_LIMIT = i128(1) << 62;

struct KindInfo {
    StepKind kind;
    const char* name;
};

constexpr std::array<KindInfo, 8> KINDS = {{
    {StepKind::seed, "Seed"},
    {StepKind::strip_five, "StripFive"},
    {StepKind::cancel_prime, "CancelPrime"},
    {StepKind::cancel_square, "CancelSquare"},
    {StepKind::halve, "Halve"},
    {StepKind::compose, "Compose"},
    {StepKind::square, "Square"},
    {StepKind::form_convert, "FormConvert"},
}};

std::string pair_text(const Coords& c) {
    return "(" + to_string(c.x) + "," + to_string(c.y) + ")";
}

bool in_range(const Coords& c) {
    return c.x > -VERIFY_COORD_LIMIT && c.x < VERIFY_COORD_LIMIT &&
           c.y > -VERIFY_COORD_LIMIT && c.y < VERIFY_COORD_LIMIT;
}

bool nonneg(const Coords& c) {
    return c.x >= 0 && c.y >= 0;
}

// x^2 + n*y^2 for a nonnegative in-range pair.
u128 rep_value(const Coords& c, u64 n) {
    u128 x = u128(c.x), y = u128(c.y);
    return x * x + u128(n) * y * y;
}

VerifyResult fail(std::size_t step, std::string detail) {
    VerifyResult r;
    r.ok = false;
    r.step = step;
    r.detail = std::move(detail);
    return r;
}

const VerifyResult VERIFY_OK{};

}  // namespace

const char* step_kind_name(StepKind k) {
    for (const auto& info : KINDS)
        if (info.kind == k) return info.name;
    return "?";
}

std::string serialize(const Certificate& cert) {
    std::string s;
    s += "CERT n=" + std::to_string(cert.n) + " target=" + to_string(cert.target) + "\n";
    for (const Step& st : cert.steps) {
        s += step_kind_name(st.kind);
        if (st.has_key) s += " key=" + pair_text(st.key);
        s += " in=" + pair_text(st.in);
        s += " out=" + pair_text(st.out);
        if (st.has_branch) s += std::string(" branch=") + branch_name(st.branch);
        s += "\n";
    }
    s += "FINAL " + pair_text(cert.final) + "\n";
    return s;
}

namespace {

// "(a,b)" with strict decimal integers.
Coords parse_pair(std::string_view tok, std::size_t line) {
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
        throw ParseError("expected a pair \"(x,y)\"", line);
    std::string_view body = tok.substr(1, tok.size() - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
        throw ParseError("expected a pair \"(x,y)\"", line);
    auto x = parse_i128(body.substr(0, comma));
    auto y = parse_i128(body.substr(comma + 1));
    if (!x || !y) throw ParseError("invalid integer in pair", line);
    return {*x, *y};
}

std::vector<std::string_view> split_tokens(std::string_view line_text, std::size_t line) {
    std::vector<std::string_view> toks;
    std::size_t pos = 0;
    while (pos < line_text.size()) {
        std::size_t sp = line_text.find(' ', pos);
        if (sp == std::string_view::npos) sp = line_text.size();
        if (sp == pos) throw ParseError("stray space", line);
        toks.push_back(line_text.substr(pos, sp - pos));
        pos = sp + 1;
    }
    if (!line_text.empty() && line_text.back() == ' ')
        throw ParseError("trailing space", line);
    return toks;
}

std::string_view expect_field(std::string_view tok, std::string_view name, std::size_t line) {
    if (tok.size() <= name.size() + 1 || tok.substr(0, name.size()) != name ||
        tok[name.size()] != '=')
        throw ParseError("expected field \"" + std::string(name) + "=\"", line);
    return tok.substr(name.size() + 1);
}

}  // namespace

Certificate deserialize(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            pos = text.size();
        } else {
            lines.push_back(text.substr(pos, nl - pos));
            pos = nl + 1;
        }
    }
    if (lines.empty()) throw ParseError("empty certificate", 1);

    Certificate cert;

    // Header: CERT n=<n> target=<m>
    {
        auto toks = split_tokens(lines[0], 1);
        if (toks.size() != 3 || toks[0] != "CERT")
            throw ParseError("expected \"CERT n=<n> target=<m>\"", 1);
        auto n = parse_u64(expect_field(toks[1], "n", 1));
        auto target = parse_u128(expect_field(toks[2], "target", 1));
        if (!n || !target) throw ParseError("invalid header integer", 1);
        cert.n = *n;
        cert.target = *target;
    }

    bool saw_final = false;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t lineno = li + 1;
        if (lines[li].empty()) {
            // A single trailing newline leaves one empty slice at the end.
            if (li + 1 == lines.size()) break;
            throw ParseError("unexpected blank line", lineno);
        }
        if (saw_final) throw ParseError("content after FINAL line", lineno);

        auto toks = split_tokens(lines[li], lineno);
        if (toks[0] == "FINAL") {
            if (toks.size() != 2) throw ParseError("expected \"FINAL (x,y)\"", lineno);
            cert.final = parse_pair(toks[1], lineno);
            saw_final = true;
            continue;
        }

        Step st;
        bool kind_ok = false;
        for (const auto& info : KINDS) {
            if (toks[0] == info.name) {
                st.kind = info.kind;
                kind_ok = true;
                break;
            }
        }
        if (!kind_ok) throw ParseError("unknown step kind \"" + std::string(toks[0]) + "\"", lineno);

        std::size_t t = 1;
        if (t < toks.size() && toks[t].substr(0, 4) == "key=") {
            st.has_key = true;
            st.key = parse_pair(expect_field(toks[t], "key", lineno), lineno);
            ++t;
        }
        if (t >= toks.size()) throw ParseError("missing \"in=\" field", lineno);
        st.in = parse_pair(expect_field(toks[t], "in", lineno), lineno);
        ++t;
        if (t >= toks.size()) throw ParseError("missing \"out=\" field", lineno);
        st.out = parse_pair(expect_field(toks[t], "out", lineno), lineno);
        ++t;
        if (t < toks.size()) {
            auto tag = expect_field(toks[t], "branch", lineno);
            st.has_branch = true;
            if (tag == "plus")
                st.branch = Branch::proper_plus;
            else if (tag == "minus")
                st.branch = Branch::proper_minus;
            else if (tag == "common")
                st.branch = Branch::common_divisor;
            else
                throw ParseError("unknown branch tag \"" + std::string(tag) + "\"", lineno);
            ++t;
        }
        if (t != toks.size()) throw ParseError("trailing garbage on step line", lineno);
        cert.steps.push_back(st);
    }
    if (!saw_final) throw ParseError("missing FINAL line", lines.size());
    return cert;
}

namespace {

VerifyResult check_seed(const Step& st, u64 n, std::size_t i) {
    if (!st.has_key) return fail(i, "Seed: missing key=(pi,r)");
    if (st.has_branch) return fail(i, "Seed: unexpected branch");
    if (st.key.x < 2 || st.key.y < 1) return fail(i, "Seed: pi < 2 or r < 1");
    if (u128(st.key.x) > ~u64(0) || !is_prime(u64(st.key.x)))
        return fail(i, "Seed: pi is not prime");
    if (!(st.in == st.out)) return fail(i, "Seed: in and out differ");
    if (st.in.y != 1) return fail(i, "Seed: seed y must be 1");
    if (st.in.x < 0 || st.in.x >= st.key.x) return fail(i, "Seed: seed x not in [0, pi)");
    if (st.key.y >= st.key.x) return fail(i, "Seed: cofactor r must be < pi");
    if (n == 5 && st.in.x > (st.key.x - 1) / 2)
        return fail(i, "Seed: seed x exceeds (pi-1)/2");
    if (rep_value(st.in, n) != u128(st.key.x) * u128(st.key.y))
        return fail(i, "Seed: x^2 + n != pi * r");
    return VERIFY_OK;
}

VerifyResult check_strip_five(const Step& st, u64 n, std::size_t i) {
    if (n != 5) return fail(i, "StripFive: only defined for n = 5");
    if (st.has_key || st.has_branch) return fail(i, "StripFive: unexpected field");
    if (!nonneg(st.in) || !nonneg(st.out)) return fail(i, "StripFive: negative coordinate");
    if (st.in.x % 5 != 0) return fail(i, "StripFive: 5 does not divide x");
    if (st.out.x != st.in.y || st.out.y != st.in.x / 5)
        return fail(i, "StripFive: output is not (y, x/5)");
    return VERIFY_OK;
}

VerifyResult check_cancel(const Step& st, u64 n, std::size_t i, bool square) {
    const char* kn = square ? "CancelSquare" : "CancelPrime";
    if (!st.has_key) return fail(i, std::string(kn) + ": missing key");
    if (!st.has_branch) return fail(i, std::string(kn) + ": missing branch");
    if (!nonneg(st.key) || !nonneg(st.in) || !nonneg(st.out))
        return fail(i, std::string(kn) + ": negative coordinate");

    const u128 key_value = rep_value(st.key, n);
    u128 divisor;  // p, or q^2
    if (square) {
        if (st.key.x == 0 || st.key.y == 0)
            return fail(i, "CancelSquare: key representation is trivial");
        u128 q = isqrt128(key_value);
        if (q * q != key_value || q > u64(1) << 32)
            return fail(i, "CancelSquare: key value is not an odd prime square");
        if (q % 2 == 0 || !is_prime(u64(q)))
            return fail(i, "CancelSquare: key value is not an odd prime square");
        divisor = key_value;
        if (st.branch == Branch::common_divisor) {
            if (i128(q) * st.out.x != st.in.x || i128(q) * st.out.y != st.in.y)
                return fail(i, "CancelSquare: common branch is not (x/q, y/q)");
            const u128 in_value = rep_value(st.in, n);
            if (in_value % divisor != 0 || in_value / divisor != rep_value(st.out, n))
                return fail(i, "CancelSquare: quotient value mismatch");
            return VERIFY_OK;
        }
    } else {
        if (st.branch == Branch::common_divisor)
            return fail(i, "CancelPrime: common branch not allowed");
        if (key_value < 2 || key_value > ~u64(0) || !is_prime(u64(key_value)))
            return fail(i, "CancelPrime: key value is not prime");
        divisor = key_value;
    }

    const i128 a = st.key.x, b = st.key.y;
    const i128 X = st.in.x, Y = st.in.y;
    const i128 d = i128(divisor);
    const i128 nn = i128(n);
    if (st.branch == Branch::proper_plus) {
        if (d * st.out.x != a * X + nn * b * Y)
            return fail(i, std::string(kn) + ": plus branch x-quotient mismatch");
        if (abs128(d * st.out.y) != abs128(a * Y - b * X))
            return fail(i, std::string(kn) + ": plus branch y-quotient mismatch");
    } else {
        if (abs128(d * st.out.x) != abs128(a * X - nn * b * Y))
            return fail(i, std::string(kn) + ": minus branch x-quotient mismatch");
        if (d * st.out.y != a * Y + b * X)
            return fail(i, std::string(kn) + ": minus branch y-quotient mismatch");
    }
    const u128 in_value = rep_value(st.in, n);
    if (in_value % divisor != 0 || in_value / divisor != rep_value(st.out, n))
        return fail(i, std::string(kn) + ": quotient value mismatch");
    return VERIFY_OK;
}

VerifyResult check_halve(const Step& st, u64 n, std::size_t i) {
    if (n != 5) return fail(i, "Halve: only defined for n = 5");
    if (st.has_key || st.has_branch) return fail(i, "Halve: unexpected field");
    if (!nonneg(st.in) || !nonneg(st.out)) return fail(i, "Halve: negative coordinate");
    if (st.in.x % 2 != 0 || st.in.y % 2 != 0)
        return fail(i, "Halve: coordinates must both be even");
    if (st.out.x * 2 != st.in.x || st.out.y * 2 != st.in.y)
        return fail(i, "Halve: output is not (x/2, y/2)");
    return VERIFY_OK;
}

VerifyResult check_compose(const Step& st, u64 n, std::size_t i) {
    if (!st.has_key) return fail(i, "Compose: missing key");
    if (!st.has_branch || st.branch == Branch::common_divisor)
        return fail(i, "Compose: branch must be plus or minus");
    if (!nonneg(st.key) || !nonneg(st.in) || !nonneg(st.out))
        return fail(i, "Compose: negative coordinate");
    const i128 a = st.key.x, b = st.key.y;
    const i128 X = st.in.x, Y = st.in.y;
    const i128 nn = i128(n);
    if (st.branch == Branch::proper_plus) {
        if (st.out.x != a * X + nn * b * Y || abs128(st.out.y) != abs128(a * Y - b * X))
            return fail(i, "Compose: plus output mismatch");
    } else {
        if (abs128(st.out.x) != abs128(a * X - nn * b * Y) || st.out.y != a * Y + b * X)
            return fail(i, "Compose: minus output mismatch");
    }
    const u128 in_value = rep_value(st.in, n);
    if (in_value != 0) {
        const u128 out_value = rep_value(st.out, n);
        if (out_value % in_value != 0 || out_value / in_value != rep_value(st.key, n))
            return fail(i, "Compose: product value mismatch");
    }
    return VERIFY_OK;
}

VerifyResult check_square(const Step& st, u64 n, std::size_t i) {
    if (n != 5) return fail(i, "Square: only defined for n = 5");
    if (st.has_key || st.has_branch) return fail(i, "Square: unexpected field");
    if (!nonneg(st.in) || !nonneg(st.out)) return fail(i, "Square: negative coordinate");
    const u128 s = rep_value(st.in, n);
    if (s % 2 == 0) return fail(i, "Square: input value must be odd");
    if (s % 5 == 0) return fail(i, "Square: input value divisible by 5");
    if (st.in.x == 0 || st.in.y == 0) return fail(i, "Square: input must be nontrivial");
    if (gcd128(u128(st.in.x), u128(st.in.y)) != 1)
        return fail(i, "Square: input must be proper");
    const i128 a = st.in.x, b = st.in.y;
    if (abs128(st.out.x) != abs128(a * a - 5 * b * b) || st.out.y != 2 * a * b)
        return fail(i, "Square: output mismatch");
    return VERIFY_OK;
}

VerifyResult check_form_convert(const Step& st, u64 n, std::size_t i) {
    if (n != 5) return fail(i, "FormConvert: only defined for n = 5");
    if (st.has_key || st.has_branch) return fail(i, "FormConvert: unexpected field");
    if (!nonneg(st.in)) return fail(i, "FormConvert: negative input coordinate");
    if (st.in.x % 2 != 1 || st.in.y % 2 != 1)
        return fail(i, "FormConvert: input coordinates must both be odd");
    if (st.out.y != st.in.y) return fail(i, "FormConvert: y must be preserved");
    if (st.in.x != 2 * st.out.x + st.in.y)
        return fail(i, "FormConvert: x != 2x' + y");
    return VERIFY_OK;
}

}  // namespace

VerifyResult verify(const Certificate& cert) {
    constexpr std::size_t HEADER = static_cast<std::size_t>(-1);

    if (cert.n != 1 && cert.n != 2 && cert.n != 3 && cert.n != 5)
        return fail(HEADER, "n must be one of 1, 2, 3, 5");
    if (!in_range(cert.final)) return fail(HEADER, "final coordinate out of range");

    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const Step& st = cert.steps[i];
        if (!in_range(st.in) || !in_range(st.out) || (st.has_key && !in_range(st.key)))
            return fail(i, "coordinate out of range");
        if (i > 0 && !(st.in == cert.steps[i - 1].out))
            return fail(i, "chain breaks: input differs from previous output");
        if (st.kind == StepKind::form_convert && i + 1 != cert.steps.size())
            return fail(i, "FormConvert must be the last step");

        VerifyResult r;
        switch (st.kind) {
            case StepKind::seed: r = check_seed(st, cert.n, i); break;
            case StepKind::strip_five: r = check_strip_five(st, cert.n, i); break;
            case StepKind::cancel_prime: r = check_cancel(st, cert.n, i, false); break;
            case StepKind::cancel_square: r = check_cancel(st, cert.n, i, true); break;
            case StepKind::halve: r = check_halve(st, cert.n, i); break;
            case StepKind::compose: r = check_compose(st, cert.n, i); break;
            case StepKind::square: r = check_square(st, cert.n, i); break;
            case StepKind::form_convert: r = check_form_convert(st, cert.n, i); break;
        }
        if (!r.ok) return r;
    }

    if (!cert.steps.empty() && !(cert.final == cert.steps.back().out))
        return fail(HEADER, "final differs from last step output");

    const bool form_final =
        !cert.steps.empty() && cert.steps.back().kind == StepKind::form_convert;
    if (form_final) {
        if (cert.final.y < 0) return fail(HEADER, "final form y negative");
        const i128 x = cert.final.x, y = cert.final.y;
        const i128 v = 2 * x * x + 2 * x * y + 3 * y * y;
        if (v < 0 || u128(v) != cert.target)
            return fail(HEADER, "final form value differs from target");
    } else {
        if (!nonneg(cert.final)) return fail(HEADER, "final coordinate negative");
        if (rep_value(cert.final, cert.n) != cert.target)
            return fail(HEADER, "final value differs from target");
    }
    return VERIFY_OK;
}

}  // namespace quadrep
