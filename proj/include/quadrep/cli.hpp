#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "quadrep/descent.hpp"

namespace quadrep::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_not_prime = 2;
inline constexpr int exit_wrong_class = 3;
inline constexpr int exit_out_of_range = 4;
inline constexpr int exit_parse_error = 5;
inline constexpr int exit_verify_failed = 6;

// repr <p> [--n 1|2|3|5] [--cert FILE]
int cmd_repr(u64 p, u64 n, const std::string& cert_path, std::ostream& out, std::ostream& err);

// pair <q> <q'> [--cert FILE]
int cmd_pair(u64 q, u64 q2, const std::string& cert_path, std::ostream& out, std::ostream& err);

struct ScanOptions {
    u64 n = 5;
    u64 max = 0;
    std::vector<unsigned> classes;  // residues mod 20; empty = no filter
    bool verify = false;            // additionally verify a full certificate per row
};

// scan --n N --max M [--classes LIST] [--verify]
// Rows "p<TAB>class<TAB>x<TAB>y<TAB>ok" in ascending prime order, then a
// summary line; exit 0 iff every row verified.
int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);

// form <p>
int cmd_form(u64 p, std::ostream& out, std::ostream& err);

// verify <FILE>
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace quadrep::cli
