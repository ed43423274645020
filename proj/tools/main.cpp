#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quadrep/cli.hpp"

namespace {

using quadrep::u64;

// Returns cli::exit codes on failure; 0 and the parsed value on success.
int parse_positive(const std::string& text, u64& out) {
    auto v = quadrep::parse_u64(text);
    if (v) {
        out = *v;
        return 0;
    }
    // All digits but too large for 64 bits: out of supported range.
    bool digits = !text.empty();
    for (char c : text)
        if (c < '0' || c > '9') digits = false;
    if (digits) {
        std::cerr << "error: " << text << " exceeds the supported range (max "
                  << quadrep::REPRESENT_MAX << ")\n";
        return quadrep::cli::exit_out_of_range;
    }
    std::cerr << "error: \"" << text << "\" is not a positive integer\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representations of primes by the quadratic forms x^2 + n*y^2 "
                 "(n = 1, 2, 3, 5) and 2*x^2 + 2*x*y + 3*y^2, with descent certificates"};
    app.require_subcommand(1);

    std::string repr_p, pair_q, pair_q2, form_p, verify_file, cert_path;
    u64 repr_n = 5;
    quadrep::cli::ScanOptions scan_opt;
    std::vector<unsigned> scan_classes;
    std::string scan_max;

    CLI::App* repr = app.add_subcommand("repr", "Represent a prime as x^2 + n*y^2");
    repr->add_option("p", repr_p, "prime to represent")->required();
    repr->add_option("--n", repr_n, "form parameter n")->check(CLI::IsMember({1, 2, 3, 5}));
    repr->add_option("--cert", cert_path, "write the descent certificate to FILE");

    CLI::App* pair = app.add_subcommand("pair", "Represent a product q*q' as x^2 + 5*y^2");
    pair->add_option("q", pair_q, "first prime")->required();
    pair->add_option("q2", pair_q2, "second prime")->required();
    pair->add_option("--cert", cert_path, "write the descent certificate to FILE");

    CLI::App* scan = app.add_subcommand("scan", "Tabulate representations for all primes <= max");
    scan->add_option("--n", scan_opt.n, "form parameter n")->required()->check(CLI::IsMember({1, 2, 3, 5}));
    scan->add_option("--max", scan_max, "upper bound for the prime scan")->required();
    scan->add_option("--classes", scan_classes, "only residues mod 20 from this list")
        ->delimiter(',');
    scan->add_flag("--verify", scan_opt.verify, "verify a full certificate per row");

    CLI::App* form = app.add_subcommand("form", "Represent a prime as 2*x'^2 + 2*x'*y + 3*y^2");
    form->add_option("p", form_p, "prime to represent")->required();

    CLI::App* verify = app.add_subcommand("verify", "Check a certificate file");
    verify->add_option("file", verify_file, "certificate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 1;
    }

    try {
        if (repr->parsed()) {
            u64 p = 0;
            if (int rc = parse_positive(repr_p, p)) return rc;
            return quadrep::cli::cmd_repr(p, repr_n, cert_path, std::cout, std::cerr);
        }
        if (pair->parsed()) {
            u64 q = 0, q2 = 0;
            if (int rc = parse_positive(pair_q, q)) return rc;
            if (int rc = parse_positive(pair_q2, q2)) return rc;
            return quadrep::cli::cmd_pair(q, q2, cert_path, std::cout, std::cerr);
        }
        if (scan->parsed()) {
            if (int rc = parse_positive(scan_max, scan_opt.max)) return rc;
            scan_opt.classes = scan_classes;
            return quadrep::cli::cmd_scan(scan_opt, std::cout, std::cerr);
        }
        if (form->parsed()) {
            u64 p = 0;
            if (int rc = parse_positive(form_p, p)) return rc;
            return quadrep::cli::cmd_form(p, std::cout, std::cerr);
        }
        if (verify->parsed()) {
            return quadrep::cli::cmd_verify(verify_file, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
