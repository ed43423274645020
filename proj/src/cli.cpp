#include "quadrep/cli.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace quadrep::cli {

namespace {

std::string rep_line(u128 target, const QuadRep& r) {
    return to_string(target) + " = " + to_string(r.x) + "^2 + " + std::to_string(r.n) + "*" +
           to_string(r.y) + "^2";
}

bool write_cert_file(const std::string& path, const Certificate& cert, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    f << serialize(cert);
    f.close();
    if (!f) {
        err << "error: failed writing " << path << "\n";
        return false;
    }
    return true;
}

int range_error(u64 p, std::ostream& err) {
    err << "error: " << p << " exceeds the supported range (max " << REPRESENT_MAX << ")\n";
    return exit_out_of_range;
}

int not_prime_error(u64 p, std::ostream& err) {
    err << "error: " << p << " is not prime\n";
    return exit_not_prime;
}

bool representable_class(u64 p, u64 n) {
    switch (n) {
        case 1: return p % 4 == 1;
        case 2: return p == 2 || p % 8 == 1 || p % 8 == 3;
        case 3: return p == 3 || p % 3 == 1;
        default: return classify_mod20(p) == ResidueClass::one_nine;
    }
}

int wrong_class_error(u64 p, u64 n, std::ostream& err) {
    switch (n) {
        case 1:
            err << "error: " << p << " mod 4 = " << p % 4
                << "; only primes = 1 (mod 4) are sums x^2 + y^2\n";
            break;
        case 2:
            err << "error: " << p << " mod 8 = " << p % 8
                << "; only primes = 1,3 (mod 8) are sums x^2 + 2*y^2\n";
            break;
        case 3:
            err << "error: " << p << " mod 3 = " << p % 3
                << "; only primes = 1 (mod 3) are sums x^2 + 3*y^2\n";
            break;
        default:
            err << "error: " << p << " mod 20 = " << p % 20
                << "; only primes = 1,9 (mod 20) are sums x^2 + 5*y^2\n";
            break;
    }
    return exit_wrong_class;
}

}  // namespace

int cmd_repr(u64 p, u64 n, const std::string& cert_path, std::ostream& out, std::ostream& err) {
    if (p > REPRESENT_MAX) return range_error(p, err);
    if (!is_prime(p)) return not_prime_error(p, err);
    if (!representable_class(p, n)) return wrong_class_error(p, n, err);

    DescentEngine::Result res = (n == 5) ? default_engine().represent_n5(p)
                                         : default_engine().represent_fermat(p, n);
    out << rep_line(p, res.rep) << "\n";
    if (!cert_path.empty() && !write_cert_file(cert_path, res.cert, err)) return 1;
    return exit_ok;
}

int cmd_pair(u64 q, u64 q2, const std::string& cert_path, std::ostream& out, std::ostream& err) {
    if (q > REPRESENT_MAX) return range_error(q, err);
    if (q2 > REPRESENT_MAX) return range_error(q2, err);
    if (!is_prime(q)) return not_prime_error(q, err);
    if (!is_prime(q2)) return not_prime_error(q2, err);
    const bool bq = classify_mod20(q) == ResidueClass::three_seven;
    const bool bq2 = classify_mod20(q2) == ResidueClass::three_seven;
    if (!((bq && bq2) || (bq && q2 == 2) || (q == 2 && bq2))) {
        err << "error: need both primes = 3,7 (mod 20), or exactly one of them = 2 "
            << "(got " << q << " mod 20 = " << q % 20 << ", " << q2 << " mod 20 = " << q2 % 20
            << ")\n";
        return exit_wrong_class;
    }

    DescentEngine::Result res = default_engine().represent_pair(q, q2);
    out << rep_line(u128(q) * q2, res.rep) << "\n";
    if (!cert_path.empty() && !write_cert_file(cert_path, res.cert, err)) return 1;
    return exit_ok;
}

int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.n != 1 && opt.n != 2 && opt.n != 3 && opt.n != 5) {
        err << "error: --n must be one of 1, 2, 3, 5\n";
        return 1;
    }
    if (opt.max > REPRESENT_MAX) return range_error(opt.max, err);

    std::vector<u64> primes;
    for (u64 p : sieve_primes(opt.max)) {
        if (!representable_class(p, opt.n)) continue;
        if (opt.n != 5 && p == opt.n) continue;  // trivial representation, skip in tables
        if (!opt.classes.empty() &&
            std::find(opt.classes.begin(), opt.classes.end(), unsigned(p % 20)) ==
                opt.classes.end())
            continue;
        primes.push_back(p);
    }

    struct Row {
        u64 p = 0;
        QuadRep rep;
        bool ok = false;
    };
    std::vector<Row> rows(primes.size());
    std::mutex err_mu;
    std::string first_error;

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < primes.size(); i += stride) {
            const u64 p = primes[i];
            Row row;
            row.p = p;
            try {
                DescentEngine::Result res = (opt.n == 5)
                                                ? default_engine().represent_n5(p)
                                                : default_engine().represent_fermat(p, opt.n);
                row.rep = res.rep;
                row.ok = (res.rep.value == p);
                if (opt.verify && row.ok) row.ok = verify(res.cert).ok;
            } catch (const std::exception& e) {
                row.ok = false;
                std::lock_guard<std::mutex> lock(err_mu);
                if (first_error.empty()) first_error = e.what();
            }
            rows[i] = row;
        }
    };

    unsigned threads = std::min(std::thread::hardware_concurrency(), 8u);
    if (threads < 2 || primes.size() < 512) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }

    u64 verified = 0;
    for (const Row& row : rows) {
        if (row.ok) ++verified;
        out << row.p << "\t" << row.p % 20 << "\t" << to_string(row.rep.x) << "\t"
            << to_string(row.rep.y) << "\t" << (row.ok ? 1 : 0) << "\n";
    }
    out << rows.size() << " primes, " << verified << " verified\n";
    if (!first_error.empty()) err << "error: " << first_error << "\n";
    return verified == rows.size() ? exit_ok : exit_verify_failed;
}

int cmd_form(u64 p, std::ostream& out, std::ostream& err) {
    if (p > REPRESENT_MAX) return range_error(p, err);
    if (!is_prime(p)) return not_prime_error(p, err);
    if (classify_mod20(p) != ResidueClass::three_seven) {
        err << "error: " << p << " mod 20 = " << p % 20
            << "; only primes = 3,7 (mod 20) are sums 2*x'^2 + 2*x'*y + 3*y^2\n";
        return exit_wrong_class;
    }

    Form223Val f = default_engine().represent_form_2_2_3(p);
    out << p << " = 2*(" << f.xp << ")^2 + 2*(" << f.xp << ")*" << f.y << " + 3*" << f.y
        << "^2\n";
    return exit_ok;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    (void)out;  // verification success is silent; the exit code is the result
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << path << "\n";
        return exit_parse_error;
    }
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    Certificate cert;
    try {
        cert = deserialize(text);
    } catch (const ParseError& e) {
        err << "parse error at line " << e.line << ": " << e.what() << "\n";
        return exit_parse_error;
    }
    VerifyResult vr = verify(cert);
    if (!vr.ok) {
        err << "verification failed at ";
        if (vr.step == static_cast<std::size_t>(-1))
            err << "the final check";
        else
            err << "step " << (vr.step + 1) << " ("
                << step_kind_name(cert.steps[vr.step].kind) << ")";
        err << ": " << vr.detail << "\n";
        return exit_verify_failed;
    }
    return exit_ok;
}

}  // namespace quadrep::cli
