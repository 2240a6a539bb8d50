#pragma once

#include <string>
#include <string_view>

#include "tcsat/model.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"

namespace tcsat::io {

// Line-oriented text formats. '#' starts a comment; tokens are separated by
// whitespace; integers are decimal in [-2^31, 2^31). Errors are ParseError
// with the offending line number.
//
//   tc2 <n> <m>
//   gate <t> <idx>:<w> ...                    (m lines)
//   top <T> g<j>:<w> ... x<i>:<w> ...
//
//   sc2 <n> <m> <c>
//   sgate <pred> <idx>:<w> ...                (m lines)
//   stop <pred> g<j>:<w> ... x<i>:<w> ...
//   <pred> := ge <t> | eq <v> | mod <m> <r> | set <v1,v2,...>
//
//   ilp <n> <m> <arity>
//   row <ge|gt|le|lt|eq> <rhs> <idx>:<w> ...  (m lines)

ThresholdCircuit parse_circuit(std::string_view text);
SymmetricCircuit parse_symmetric(std::string_view text);
IneqSystem parse_ilp(std::string_view text);

std::string emit_circuit(const ThresholdCircuit& circuit);
std::string emit_symmetric(const SymmetricCircuit& circuit);
std::string emit_ilp(const IneqSystem& sys);

/// Witness as one digit per variable, variable 0 first.
std::string format_witness(const Assignment& a);

std::string read_file(const std::string& path);

}  // namespace tcsat::io
