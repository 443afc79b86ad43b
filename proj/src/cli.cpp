#include "okmod/cli.hpp"

#include "okmod/determinant.hpp"
#include "okmod/exact_linalg.hpp"
#include "okmod/pseudo_hnf.hpp"
#include "okmod/pseudo_snf.hpp"
#include "okmod/text_io.hpp"

#include <ostream>

namespace okmod {

namespace {

const char *const kCommands[] = {"hnf", "snf", "det", "detideal", "canonical", "absolute", "check"};

// cofactor expansion along the first row; only used for small n
FieldElement cofactor_det(const NumberField &K, const ElemMatrix &A) {
    size_t n = A.size();
    if (n == 0)
        return K.one();
    if (n == 1)
        return A[0][0];
    FieldElement s = K.zero();
    for (size_t j = 0; j < n; ++j) {
        if (A[0][j].is_zero())
            continue;
        ElemMatrix minor;
        for (size_t i = 1; i < n; ++i) {
            ElemRow r;
            for (size_t k = 0; k < n; ++k)
                if (k != j)
                    r.push_back(A[i][k]);
            minor.push_back(std::move(r));
        }
        FieldElement t = mul(K, A[0][j], cofactor_det(K, minor));
        s = j % 2 ? sub(s, t) : add(s, t);
    }
    return s;
}

// Gaussian elimination directly over K
FieldElement gauss_det(const NumberField &K, ElemMatrix A) {
    size_t n = A.size();
    FieldElement d = K.one();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && A[p][c].is_zero())
            ++p;
        if (p == n)
            return K.zero();
        if (p != c) {
            std::swap(A[p], A[c]);
            d = neg(d);
        }
        d = mul(K, d, A[c][c]);
        FieldElement pinv = inv(K, A[c][c]);
        for (size_t i = c + 1; i < n; ++i) {
            if (A[i][c].is_zero())
                continue;
            FieldElement f = mul(K, A[i][c], pinv);
            for (size_t k = c; k < n; ++k)
                A[i][k] = sub(A[i][k], mul(K, f, A[c][k]));
        }
    }
    return d;
}

FieldElement oracle_det(const NumberField &K, const ElemMatrix &A) {
    return A.size() <= 7 ? cofactor_det(K, A) : gauss_det(K, A);
}

bool is_square(const ElemMatrix &A) {
    for (auto &r : A)
        if (r.size() != A.size())
            return false;
    return true;
}

FractionalIdeal read_detideal(const JobSpec &job, const NumberField &K) {
    return parse_ideal(K, read_file(job.detideal_path));
}

FractionalIdeal hnf_modulus(const JobSpec &job, const NumberField &K, const PseudoMatrix &P) {
    if (!job.detideal_path.empty())
        return read_detideal(job, K);
    if (P.rows() == P.cols())
        return determinantal_ideal(K, P, job.jobs);
    return determinantal_ideal_multiple(K, P, job.jobs);
}

// pseudo-HNF of any full-rank module: scaled into O_K^m by an integer L first,
// coefficient ideals divided by L afterwards
PseudoMatrix module_hnf(const JobSpec &job, const NumberField &K, const PseudoMatrix &P) {
    Int L = integral_scale(P);
    if (L == 1)
        return pseudo_hnf(K, P, hnf_modulus(job, K, P));
    PseudoMatrix S = P;
    for (auto &a : S.ideals)
        a = scale(a, Rat(L));
    FractionalIdeal dd;
    if (job.detideal_path.empty()) {
        dd = hnf_modulus(job, K, S);
    } else {
        Int Lm = 1;
        for (size_t j = 0; j < P.cols(); ++j)
            Lm *= L;
        dd = scale(read_detideal(job, K), Rat(Lm));
    }
    PseudoMatrix H = pseudo_hnf(K, S, dd);
    for (auto &a : H.ideals)
        a = scale(a, Rat(1) / Rat(L));
    return H;
}

FractionalIdeal snf_modulus(const JobSpec &job, const NumberField &K, const BiPseudoMatrix &B) {
    if (!job.detideal_path.empty())
        return read_detideal(job, K);
    return bipseudo_det_ideal(K, B, job.jobs);
}

void require_integral(const NumberField &K, const BiPseudoMatrix &B) {
    size_t bi = 0, bj = 0;
    if (!is_integral_bipseudo(K, B, &bi, &bj))
        throw ParseError("entry (" + std::to_string(bi + 1) + ", " + std::to_string(bj + 1) +
                             ") is not in b_i a_j^-1",
                         0, 0);
}

std::string format_chain(const std::vector<FractionalIdeal> &chain) {
    std::string s = "divisors " + std::to_string(chain.size()) + "\n";
    for (auto &a : chain)
        s += format_ideal(a);
    return s;
}

int report(const std::string &why, std::ostream &out) {
    if (why.empty()) {
        out << "PASS\n";
        return kOk;
    }
    out << "FAIL: " << why << "\n";
    return kCheckFailed;
}

int dispatch(const JobSpec &job, std::ostream &out) {
    auto K = parse_field(read_file(job.field_path));
    MatrixInput in = parse_matrix(*K, read_file(job.matrix_path));
    const std::string &cmd = job.command;

    if (cmd == "det") {
        const ElemMatrix &A = std::holds_alternative<PseudoMatrix>(in)
                                  ? std::get<PseudoMatrix>(in).A
                                  : std::get<BiPseudoMatrix>(in).A;
        if (!is_square(A))
            throw Error("det: square matrix expected");
        FieldElement dt = det(*K, A, job.jobs);
        out << pretty_element(*K, dt) << "\n";
        return job.check ? report(check_det(*K, A, dt), out) : kOk;
    }

    if (auto *B = std::get_if<BiPseudoMatrix>(&in)) {
        if (cmd == "detideal") {
            out << format_ideal(bipseudo_det_ideal(*K, *B, job.jobs));
            return kOk;
        }
        if (cmd != "snf" && cmd != "check")
            throw Error(cmd + ": pseudo-matrix input expected");
        require_integral(*K, *B);
        auto chain = pseudo_snf(*K, *B, snf_modulus(job, *K, *B));
        if (cmd == "check")
            return report(check_snf(*K, *B, chain), out);
        out << format_chain(chain);
        return job.check ? report(check_snf(*K, *B, chain), out) : kOk;
    }

    const PseudoMatrix &P = std::get<PseudoMatrix>(in);
    if (cmd == "snf")
        throw Error("snf: bi-pseudo-matrix input expected");
    if (cmd == "absolute") {
        out << format_int_matrix(to_absolute(*K, P));
        return kOk;
    }
    if (cmd == "detideal") {
        FractionalIdeal dd = P.rows() == P.cols()
                                 ? determinantal_ideal(*K, P, job.jobs)
                                 : ideal_product(*K, module_hnf(job, *K, P).ideals);
        out << format_ideal(dd);
        return kOk;
    }
    // hnf, canonical, check
    PseudoMatrix H = module_hnf(job, *K, P);
    if (job.canonical || cmd == "canonical")
        H = canonicalize(*K, H);
    if (cmd == "check")
        return report(check_hnf(*K, P, H), out);
    out << format_pseudo(H);
    return job.check ? report(check_hnf(*K, P, H), out) : kOk;
}

} // namespace

bool is_command(const std::string &c) {
    for (auto *k : kCommands)
        if (c == k)
            return true;
    return false;
}

Int integral_scale(const PseudoMatrix &P) {
    Int L = 1;
    for (size_t i = 0; i < P.rows(); ++i)
        for (auto &x : P.A[i])
            L = lcm(L, P.ideals[i].den * x.den);
    return L;
}

IntMatrix absolute_scaled(const NumberField &K, const PseudoMatrix &P, const Int &L) {
    size_t n = P.rows(), m = P.cols(), d = K.d;
    IntMatrix M(d * n, d * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < d; ++k) {
            FieldElement a = scalar_mul(L, basis_element(P.ideals[i], k));
            for (size_t j = 0; j < m; ++j) {
                FieldElement x = mul(K, a, P.A[i][j]);
                if (!x.is_integral())
                    throw Error("absolute_scaled: scale does not clear denominators");
                for (size_t t = 0; t < d; ++t)
                    M(i * d + k, j * d + t) = x.c[t];
            }
        }
    return M;
}

IntMatrix inclusion_matrix(const NumberField &K, const BiPseudoMatrix &B) {
    size_t n = B.size(), d = K.d;
    IntMatrix M(d * n, d * n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < d; ++k) {
            FieldElement w = basis_element(B.col_ideals[j], k);
            for (size_t i = 0; i < n; ++i) {
                FieldElement x = mul(K, B.A[i][j], w);
                const FractionalIdeal &b = B.row_ideals[i];
                RatVec v(d);
                for (size_t t = 0; t < d; ++t)
                    v[t] = make_rat(x.c[t] * b.den, x.den);
                IntVec c;
                if (!in_lattice(b.num, v, &c))
                    throw Error("inclusion_matrix: entry outside its target ideal");
                for (size_t t = 0; t < d; ++t)
                    M(j * d + k, i * d + t) = c[t];
            }
        }
    return M;
}

std::string check_hnf(const NumberField &K, const PseudoMatrix &in, const PseudoMatrix &out) {
    size_t m = in.cols();
    if (out.rows() != m || out.cols() != m || out.ideals.size() != m)
        return "output is not square of size " + std::to_string(m);
    // integral coefficient ideals are only required for modules inside O_K^m
    bool integral = true;
    for (size_t i = 0; i < in.rows(); ++i)
        for (auto &x : in.A[i])
            integral = integral && (x.is_zero() || mul(K, x, in.ideals[i]).is_integral());
    for (size_t i = 0; i < m; ++i) {
        if (integral && !out.ideals[i].is_integral())
            return "coefficient ideal " + std::to_string(i + 1) + " is not integral";
        for (size_t j = i; j < m; ++j) {
            const FieldElement &x = out.A[i][j];
            if (j == i ? !(x == K.one()) : !x.is_zero())
                return "output is not triangular with unit diagonal";
        }
    }
    Int L = lcm(integral_scale(in), integral_scale(out));
    IntMatrix Hin, Hout;
    try {
        Hin = hnf(absolute_scaled(K, in, L));
        Hout = hnf(absolute_scaled(K, out, L));
    } catch (const Error &e) {
        return e.what();
    }
    if (!(Hin == Hout))
        return "absolute Hermite forms differ";
    return "";
}

std::string check_snf(const NumberField &K, const BiPseudoMatrix &B,
                      const std::vector<FractionalIdeal> &chain) {
    size_t n = B.size();
    if (chain.size() != n)
        return "chain length " + std::to_string(chain.size()) + ", expected " + std::to_string(n);
    for (size_t i = 0; i < n; ++i) {
        if (!chain[i].is_integral())
            return "divisor " + std::to_string(i + 1) + " is not integral";
        if (i > 0 && !is_subset(K, chain[i - 1], chain[i]))
            return "divisor " + std::to_string(i) + " is not inside divisor " + std::to_string(i + 1);
    }
    FieldElement dt = oracle_det(K, B.A);
    if (dt.is_zero())
        return "matrix is singular";
    FractionalIdeal dd =
        div(K, mul(K, dt, ideal_product(K, B.col_ideals)), ideal_product(K, B.row_ideals));
    if (!(ideal_product(K, chain) == dd))
        return "product of divisors differs from the determinantal ideal";
    IntMatrix M = inclusion_matrix(K, B);
    Int index = abs(det(M));
    if (Rat(index) != norm(ideal_product(K, chain)))
        return "quotient order differs from the norm of the divisor product";
    if (K.d == 1) {
        IntMatrix S = z_snf(M);
        for (size_t i = 0; i < n; ++i) {
            Int s = abs(S(n - 1 - i, n - 1 - i));
            if (!(chain[i] == principal(K, K.from_int(s))))
                return "divisor " + std::to_string(i + 1) + " differs from the integer Smith form";
        }
    }
    return "";
}

std::string check_det(const NumberField &K, const ElemMatrix &A, const FieldElement &dt) {
    return oracle_det(K, A) == dt ? "" : "determinant differs from the direct expansion";
}

int run(const JobSpec &job, std::ostream &out, std::ostream &err) {
    if (!is_command(job.command)) {
        err << "error: unknown command '" << job.command << "'\n";
        return kParseError;
    }
    try {
        return dispatch(job, out);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kComputeError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kComputeError;
    }
}

} // namespace okmod
