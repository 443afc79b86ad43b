#pragma once
#include "okmod/pseudo.hpp"

#include <iosfwd>
#include <string>
#include <variant>

// Line-oriented exact text formats; '#' starts a comment.
//
// field file:
//   degree n
//   poly c0 c1 ... 1
//   [basis]                      optional keyword
//   a1 ... an [/ den]            n rows, optional (default: power basis)
//   [symbol s]
//
// matrix file:
//   pseudo n m | bipseudo n
//   ideal blocks: n for pseudo; n row ideals then n column ideals for bipseudo
//     ideal hnf / d rows of d integers / den k
//     ideal gens / elements separated by ';' on one line
//     ideal unit
//   n rows of elements separated by '|'
//   element: a1 ... ad [/ den], or a single integer

namespace okmod {

struct ParseError : Error {
    size_t line, col;
    ParseError(const std::string &what, size_t l, size_t c);
};

struct FieldSpec {
    IntVec f;
    RatMatrix basis;
    std::string symbol = "x";
};

FieldSpec parse_field_spec(const std::string &text);
std::shared_ptr<const NumberField> parse_field(const std::string &text);

using MatrixInput = std::variant<PseudoMatrix, BiPseudoMatrix>;
MatrixInput parse_matrix(const NumberField &K, const std::string &text);
FractionalIdeal parse_ideal(const NumberField &K, const std::string &text);

std::string format_element(const FieldElement &x);               // "a1 ... ad [/ den]"
std::string pretty_element(const NumberField &K, const FieldElement &x); // power basis, e.g. 3+3i
std::string format_ideal(const FractionalIdeal &a);              // an "ideal hnf" block
std::string format_pseudo(const PseudoMatrix &P);
std::string format_bipseudo(const BiPseudoMatrix &B);
std::string format_int_matrix(const IntMatrix &M);

std::string read_file(const std::string &path);

} // namespace okmod
