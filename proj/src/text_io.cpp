#include "okmod/text_io.hpp"

#include "okmod/exact_linalg.hpp"

#include <fstream>
#include <sstream>

namespace okmod {

ParseError::ParseError(const std::string &what, size_t l, size_t c)
    : Error(l ? "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what : what),
      line(l), col(c) {}

namespace {

struct Tok {
    std::string s;
    size_t col;
};

struct Line {
    size_t no;
    std::vector<Tok> toks;
};

std::vector<Line> lex(const std::string &text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        Line L{no, {}};
        size_t i = 0;
        while (i < raw.size()) {
            char ch = raw[i];
            if (ch == '#')
                break;
            if (std::isspace((unsigned char)ch)) {
                ++i;
                continue;
            }
            if (ch == '|' || ch == ';' || ch == '/') {
                L.toks.push_back({std::string(1, ch), i + 1});
                ++i;
                continue;
            }
            size_t j = i;
            while (j < raw.size() && !std::isspace((unsigned char)raw[j]) && raw[j] != '|' &&
                   raw[j] != ';' && raw[j] != '/' && raw[j] != '#')
                ++j;
            L.toks.push_back({raw.substr(i, j - i), i + 1});
            i = j;
        }
        if (!L.toks.empty())
            out.push_back(std::move(L));
    }
    return out;
}

class Cursor {
  public:
    explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

    bool done() const { return pos_ >= lines_.size(); }
    const Line &peek() const {
        if (done())
            throw ParseError("unexpected end of input", last_line(), 1);
        return lines_[pos_];
    }
    const Line &next() {
        const Line &l = peek();
        ++pos_;
        return l;
    }
    size_t last_line() const { return lines_.empty() ? 1 : lines_.back().no + 1; }

  private:
    std::vector<Line> lines_;
    size_t pos_ = 0;
};

[[noreturn]] void fail(const std::string &what, const Line &l, size_t k) {
    size_t col = k < l.toks.size() ? l.toks[k].col : (l.toks.empty() ? 1 : l.toks.back().col + 1);
    throw ParseError(what, l.no, col);
}

Int parse_int(const Line &l, size_t k) {
    if (k >= l.toks.size())
        fail("integer expected", l, k);
    const std::string &s = l.toks[k].s;
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        fail("integer expected, got '" + s + "'", l, k);
    for (size_t i = start; i < s.size(); ++i)
        if (!std::isdigit((unsigned char)s[i]))
            fail("integer expected, got '" + s + "'", l, k);
    Int v;
    v.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    return v;
}

size_t parse_size(const Line &l, size_t k) {
    Int v = parse_int(l, k);
    if (v < 0 || v > 100000)
        fail("dimension out of range", l, k);
    return v.get_ui();
}

void expect_keyword(const Line &l, const std::string &kw) {
    if (l.toks[0].s != kw)
        fail("expected '" + kw + "'", l, 0);
}

void expect_end(const Line &l, size_t k) {
    if (k != l.toks.size())
        fail("unexpected token '" + l.toks[k].s + "'", l, k);
}

// tokens [b, e) of l: "a1 ... ad [/ den]" or a single integer
FieldElement parse_element_range(size_t d, const Line &l, size_t b, size_t e) {
    size_t slash = e;
    for (size_t k = b; k < e; ++k)
        if (l.toks[k].s == "/") {
            slash = k;
            break;
        }
    size_t nc = slash - b;
    IntVec c(d);
    if (nc == d) {
        for (size_t k = 0; k < d; ++k)
            c[k] = parse_int(l, b + k);
    } else if (nc == 1) {
        c[0] = parse_int(l, b);
    } else {
        fail("element needs " + std::to_string(d) + " coefficients (or one integer), got " +
                 std::to_string(nc),
             l, b);
    }
    Int den = 1;
    if (slash < e) {
        if (slash + 2 != e)
            fail("one denominator expected after '/'", l, slash);
        den = parse_int(l, slash + 1);
        if (den == 0)
            fail("zero denominator", l, slash + 1);
    }
    return FieldElement(std::move(c), den);
}

std::vector<FieldElement> parse_element_list(size_t d, const Line &l, size_t from,
                                             const std::string &sep) {
    std::vector<FieldElement> out;
    size_t b = from;
    for (size_t k = from; k <= l.toks.size(); ++k) {
        if (k == l.toks.size() || l.toks[k].s == sep) {
            if (k == b)
                fail("empty element", l, k);
            out.push_back(parse_element_range(d, l, b, k));
            b = k + 1;
        }
    }
    return out;
}

FractionalIdeal parse_ideal_block(const NumberField &K, Cursor &cur) {
    const Line &h = cur.next();
    expect_keyword(h, "ideal");
    if (h.toks.size() != 2)
        fail("expected 'ideal hnf', 'ideal gens' or 'ideal unit'", h, 1);
    const std::string &kind = h.toks[1].s;
    size_t d = K.d;
    if (kind == "unit")
        return unit_ideal(K);
    if (kind == "gens") {
        const Line &l = cur.next();
        std::vector<FieldElement> g = parse_element_list(d, l, 0, ";");
        bool nz = false;
        for (auto &x : g)
            nz = nz || !x.is_zero();
        if (!nz)
            fail("zero ideal", l, 0);
        return from_generators(K, g);
    }
    if (kind == "hnf") {
        IntMatrix M(d, d);
        size_t first = 0;
        for (size_t i = 0; i < d; ++i) {
            const Line &l = cur.next();
            if (i == 0)
                first = l.no;
            if (l.toks.size() != d)
                fail("ideal basis row needs " + std::to_string(d) + " integers", l, 0);
            for (size_t j = 0; j < d; ++j)
                M(i, j) = parse_int(l, j);
        }
        const Line &dl = cur.next();
        expect_keyword(dl, "den");
        Int den = parse_int(dl, 1);
        expect_end(dl, 2);
        if (den <= 0)
            fail("denominator must be positive", dl, 1);
        if (det(M) == 0)
            throw ParseError("ideal basis is singular (zero ideal or not full rank)", first, 1);
        FractionalIdeal a = from_basis(K, M, den);
        // the rows must span an O_K-module
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k)
                if (!contains(K, a, mul(K, basis_element(a, i), K.basis(k))))
                    throw ParseError("basis does not span an ideal", first, 1);
        return a;
    }
    fail("unknown ideal kind '" + kind + "'", h, 1);
}

ElemMatrix parse_rows(const NumberField &K, Cursor &cur, size_t n, size_t m) {
    ElemMatrix A;
    for (size_t i = 0; i < n; ++i) {
        const Line &l = cur.next();
        ElemRow row = parse_element_list(K.d, l, 0, "|");
        if (row.size() != m)
            fail("row needs " + std::to_string(m) + " entries, got " + std::to_string(row.size()), l,
                 0);
        A.push_back(std::move(row));
    }
    return A;
}

} // namespace

FieldSpec parse_field_spec(const std::string &text) {
    Cursor cur(lex(text));
    FieldSpec fs;
    const Line &dl = cur.next();
    expect_keyword(dl, "degree");
    size_t d = parse_size(dl, 1);
    expect_end(dl, 2);
    if (d == 0)
        fail("degree must be positive", dl, 1);
    const Line &pl = cur.next();
    expect_keyword(pl, "poly");
    if (pl.toks.size() != d + 2)
        fail("poly needs " + std::to_string(d + 1) + " coefficients", pl, 0);
    for (size_t i = 0; i <= d; ++i)
        fs.f.push_back(parse_int(pl, i + 1));
    if (fs.f.back() != 1)
        fail("polynomial must be monic", pl, d + 1);
    if (!cur.done() && cur.peek().toks[0].s == "basis") {
        expect_end(cur.next(), 1);
    }
    bool have_basis = !cur.done() && cur.peek().toks[0].s != "symbol";
    if (have_basis) {
        std::vector<IntVec> num;
        std::vector<Int> dens;
        Int l = 1;
        for (size_t i = 0; i < d; ++i) {
            const Line &bl = cur.next();
            FieldElement e = parse_element_range(d, bl, 0, bl.toks.size());
            num.push_back(e.c);
            dens.push_back(e.den);
            l = lcm(l, e.den);
        }
        IntMatrix N(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                N(i, j) = num[i][j] * (l / dens[i]);
        fs.basis = RatMatrix(N, l);
    } else {
        fs.basis = RatMatrix(IntMatrix::identity(d), 1);
    }
    if (!cur.done()) {
        const Line &sl = cur.next();
        expect_keyword(sl, "symbol");
        if (sl.toks.size() != 2)
            fail("symbol expects one name", sl, 1);
        fs.symbol = sl.toks[1].s;
    }
    if (!cur.done())
        fail("unexpected trailing input", cur.peek(), 0);
    return fs;
}

std::shared_ptr<const NumberField> parse_field(const std::string &text) {
    FieldSpec fs = parse_field_spec(text);
    std::shared_ptr<const NumberField> K;
    try {
        K = build_field(fs.f, fs.basis);
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        // singular basis, basis not starting with 1, not an order, ...
        throw ParseError(e.what(), 1, 1);
    }
    auto M = std::make_shared<NumberField>(*K);
    M->symbol = fs.symbol;
    return M;
}

MatrixInput parse_matrix(const NumberField &K, const std::string &text) {
    Cursor cur(lex(text));
    const Line &h = cur.next();
    MatrixInput out;
    if (h.toks[0].s == "pseudo") {
        size_t n = parse_size(h, 1), m = parse_size(h, 2);
        expect_end(h, 3);
        if (n == 0 || m == 0)
            fail("empty matrix", h, 1);
        PseudoMatrix P;
        for (size_t i = 0; i < n; ++i)
            P.ideals.push_back(parse_ideal_block(K, cur));
        P.A = parse_rows(K, cur, n, m);
        out = std::move(P);
    } else if (h.toks[0].s == "bipseudo") {
        size_t n = parse_size(h, 1);
        expect_end(h, 2);
        if (n == 0)
            fail("empty matrix", h, 1);
        BiPseudoMatrix B;
        for (size_t i = 0; i < n; ++i)
            B.row_ideals.push_back(parse_ideal_block(K, cur));
        for (size_t i = 0; i < n; ++i)
            B.col_ideals.push_back(parse_ideal_block(K, cur));
        B.A = parse_rows(K, cur, n, n);
        out = std::move(B);
    } else {
        fail("expected 'pseudo n m' or 'bipseudo n'", h, 0);
    }
    if (!cur.done())
        fail("unexpected trailing input", cur.peek(), 0);
    return out;
}

FractionalIdeal parse_ideal(const NumberField &K, const std::string &text) {
    Cursor cur(lex(text));
    FractionalIdeal a = parse_ideal_block(K, cur);
    if (!cur.done())
        fail("unexpected trailing input", cur.peek(), 0);
    return a;
}

std::string format_element(const FieldElement &x) {
    std::string s;
    for (size_t i = 0; i < x.c.size(); ++i) {
        if (i)
            s += ' ';
        s += x.c[i].get_str();
    }
    if (x.den != 1)
        s += " / " + x.den.get_str();
    return s;
}

std::string pretty_element(const NumberField &K, const FieldElement &x) {
    RatVec p = to_power_basis(K, x);
    std::string s;
    for (size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0)
            continue;
        Rat a = abs(p[k]);
        bool neg = p[k] < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? "-" : "+";
        std::string mono = k == 0 ? "" : (k == 1 ? K.symbol : K.symbol + "^" + std::to_string(k));
        if (k == 0)
            s += a.get_str();
        else if (a == 1)
            s += mono;
        else if (a.get_den() == 1)
            s += a.get_str() + mono;
        else
            s += a.get_str() + "*" + mono;
    }
    return s.empty() ? "0" : s;
}

std::string format_int_matrix(const IntMatrix &M) {
    std::string s;
    for (size_t i = 0; i < M.rows; ++i) {
        for (size_t j = 0; j < M.cols; ++j) {
            if (j)
                s += ' ';
            s += M(i, j).get_str();
        }
        s += '\n';
    }
    return s;
}

std::string format_ideal(const FractionalIdeal &a) {
    return "ideal hnf\n" + format_int_matrix(a.num) + "den " + a.den.get_str() + "\n";
}

namespace {

std::string format_rows(const ElemMatrix &A) {
    std::string s;
    for (auto &row : A) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j)
                s += " | ";
            s += format_element(row[j]);
        }
        s += '\n';
    }
    return s;
}

} // namespace

std::string format_pseudo(const PseudoMatrix &P) {
    std::string s = "pseudo " + std::to_string(P.rows()) + " " + std::to_string(P.cols()) + "\n";
    for (auto &a : P.ideals)
        s += format_ideal(a);
    return s + format_rows(P.A);
}

std::string format_bipseudo(const BiPseudoMatrix &B) {
    std::string s = "bipseudo " + std::to_string(B.size()) + "\n";
    for (auto &a : B.row_ideals)
        s += format_ideal(a);
    for (auto &a : B.col_ideals)
        s += format_ideal(a);
    return s + format_rows(B.A);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read " + path, 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace okmod
