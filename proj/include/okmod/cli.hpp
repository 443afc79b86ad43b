#pragma once
#include "okmod/pseudo.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace okmod {

struct JobSpec {
    std::string command; // hnf, snf, det, detideal, canonical, absolute, check
    std::string field_path, matrix_path, detideal_path;
    bool canonical = false;
    bool check = false;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
};

enum ExitCode : int { kOk = 0, kComputeError = 1, kParseError = 2, kCheckFailed = 3 };

bool is_command(const std::string &c);

// runs one job; results go to out, diagnostics to err
int run(const JobSpec &job, std::ostream &out, std::ostream &err);

// oracles behind --check; each returns an empty string on success, else the reason
std::string check_hnf(const NumberField &K, const PseudoMatrix &in, const PseudoMatrix &out);
std::string check_snf(const NumberField &K, const BiPseudoMatrix &B,
                      const std::vector<FractionalIdeal> &chain);
std::string check_det(const NumberField &K, const ElemMatrix &A, const FieldElement &dt);

// Z-basis of the module sum_i a_i A_i scaled by L into Z^(dm), L chosen so
// that both modules are integral
IntMatrix absolute_scaled(const NumberField &K, const PseudoMatrix &P, const Int &L);
Int integral_scale(const PseudoMatrix &P);

// dn x dn integer matrix of the inclusion sum a_j e_j -> sum b_i e_i given by A,
// in the HNF bases of the a_j and b_i
IntMatrix inclusion_matrix(const NumberField &K, const BiPseudoMatrix &B);

} // namespace okmod
