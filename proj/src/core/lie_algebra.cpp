#include "core/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace twistdeform {

namespace {

using Json = nlohmann::ordered_json;

Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/* Dense m x m matrix over Q(i), row-major; enough for exact commutators. */
struct CRat {
    Rational re = 0;
    Rational im = 0;
};

CRat cr_mul(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

using CMat = std::vector<CRat>;

CMat commutator(const CMat& a, const CMat& b, int m) {
    CMat out(m * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            CRat acc;
            for (int l = 0; l < m; ++l) {
                CRat ab = cr_mul(a[i * m + l], b[l * m + j]);
                CRat ba = cr_mul(b[i * m + l], a[l * m + j]);
                acc.re += ab.re - ba.re;
                acc.im += ab.im - ba.im;
            }
            out[i * m + j] = acc;
        }
    }
    return out;
}

CMat su_matrix_exact(int m, const SuBasisElement& e) {
    CMat out(m * m);
    if (e.kind == 'X') {
        out[(e.i - 1) * m + (e.j - 1)].re = 1;
        out[(e.j - 1) * m + (e.i - 1)].re = -1;
    } else if (e.kind == 'Y') {
        out[(e.i - 1) * m + (e.j - 1)].im = 1;
        out[(e.j - 1) * m + (e.i - 1)].im = 1;
    } else {
        out[(e.i - 1) * m + (e.i - 1)].im = 1;
        out[(m - 1) * m + (m - 1)].im = -1;
    }
    return out;
}

/* Expand an anti-hermitian traceless C over the su(m) basis; exact, and the
 * reconstruction is asserted so a bad expansion cannot slip through. */
SparseVector su_expand(const CMat& c, int m,
                       const std::vector<SuBasisElement>& basis) {
    SparseVector out;
    for (int a = 0; a < static_cast<int>(basis.size()); ++a) {
        const SuBasisElement& e = basis[a];
        Rational coeff;
        if (e.kind == 'X') {
            coeff = c[(e.i - 1) * m + (e.j - 1)].re;
        } else if (e.kind == 'Y') {
            coeff = c[(e.i - 1) * m + (e.j - 1)].im;
        } else {
            coeff = c[(e.i - 1) * m + (e.i - 1)].im;
        }
        if (coeff != 0) out[a + 1] = coeff;
    }
    CMat recon(m * m);
    for (const auto& [idx, coeff] : out) {
        CMat b = su_matrix_exact(m, basis[idx - 1]);
        for (int p = 0; p < m * m; ++p) {
            recon[p].re += coeff * b[p].re;
            recon[p].im += coeff * b[p].im;
        }
    }
    for (int p = 0; p < m * m; ++p) {
        if (recon[p].re != c[p].re || recon[p].im != c[p].im)
            throw Error(ErrorCode::Numeric, "su expansion failed to reconstruct");
    }
    return out;
}

}  // namespace

std::string rational_to_string(const Rational& r) { return r.str(); }

namespace {

/* [sign] digits [. digits]; decimals become exact p / 10^k. */
Rational parse_decimal(const std::string& t) {
    size_t pos = 0;
    bool neg = false;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
        neg = t[pos] == '-';
        ++pos;
    }
    std::string digits;
    int frac = 0;
    bool dot = false;
    for (; pos < t.size(); ++pos) {
        char ch = t[pos];
        if (ch == '.') {
            if (dot) throw std::invalid_argument("second dot");
            dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            if (dot) ++frac;
        } else {
            throw std::invalid_argument("bad digit");
        }
    }
    if (digits.empty()) throw std::invalid_argument("no digits");
    /* cpp_int reads a leading zero as an octal prefix */
    auto nz = digits.find_first_not_of('0');
    boost::multiprecision::cpp_int num(
        nz == std::string::npos ? "0" : digits.substr(nz));
    boost::multiprecision::cpp_int den = 1;
    for (int k = 0; k < frac; ++k) den *= 10;
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

}  // namespace

Rational rational_from_string(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw Error(ErrorCode::Parse, "empty rational literal");
    try {
        auto slash = t.find('/');
        if (slash == std::string::npos) return parse_decimal(t);
        Rational num = parse_decimal(t.substr(0, slash));
        Rational den = parse_decimal(t.substr(slash + 1));
        if (den == 0)
            throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
        return num / den;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad rational literal '" + s + "'");
    }
}

std::vector<SuBasisElement> su_basis_elements(int m) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "su(m) needs m >= 2");
    std::vector<SuBasisElement> out;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) out.push_back({'X', i, j});
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) out.push_back({'Y', i, j});
    for (int k = 1; k <= m - 1; ++k) out.push_back({'Z', k, 0});
    return out;
}

std::string su_basis_label(const SuBasisElement& e) {
    std::ostringstream os;
    os << e.kind;
    if (e.kind == 'Z') {
        os << e.i;
    } else if (e.i < 10 && e.j < 10) {
        os << e.i << e.j;
    } else {
        os << e.i << '_' << e.j;
    }
    return os.str();
}

void LieAlgebra::finalize() {
    for (int i = 0; i < dim_; ++i) {
        if (labels_[i].empty())
            throw Error(ErrorCode::InvalidArgument, "empty basis label");
        if (!label_index_.emplace(labels_[i], i + 1).second)
            throw Error(ErrorCode::InvalidArgument,
                        "duplicate basis label '" + labels_[i] + "'");
    }
    for (const auto& [key, value] : c_) {
        auto [i, j, k] = key;
        if (i < 1 || i > dim_ || j < 1 || j > dim_ || k < 1 || k > dim_)
            throw Error(ErrorCode::InvalidArgument,
                        "structure constant index out of range");
        if (value != 0) table_[{i, j}][k] = value;
    }
}

AlgebraPtr LieAlgebra::create(int dim, std::vector<std::string> labels, Tensor c,
                              std::string name) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
    if (labels.empty()) {
        for (int i = 1; i <= dim; ++i) labels.push_back("e" + std::to_string(i));
    }
    if (static_cast<int>(labels.size()) != dim)
        throw Error(ErrorCode::InvalidArgument, "labels.size() != dim");
    auto g = std::shared_ptr<LieAlgebra>(new LieAlgebra());
    g->dim_ = dim;
    g->name_ = std::move(name);
    g->labels_ = std::move(labels);
    g->c_ = std::move(c);
    g->finalize();
    return g;
}

AlgebraPtr LieAlgebra::su(int m) {
    auto basis = su_basis_elements(m);
    int dim = static_cast<int>(basis.size());
    std::vector<std::string> labels;
    labels.reserve(dim);
    for (const auto& e : basis) labels.push_back(su_basis_label(e));

    std::vector<CMat> mats;
    mats.reserve(dim);
    for (const auto& e : basis) mats.push_back(su_matrix_exact(m, e));

    Tensor c;
    for (int i = 1; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
            CMat comm = commutator(mats[i - 1], mats[j - 1], m);
            SparseVector coeffs = su_expand(comm, m, basis);
            for (const auto& [k, v] : coeffs) {
                c[{i, j, k}] = v;
                c[{j, i, k}] = -v;
            }
        }
    }
    return create(dim, std::move(labels), std::move(c),
                  "su(" + std::to_string(m) + ")");
}

AlgebraPtr LieAlgebra::abelian(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "abelian(n) needs n >= 1");
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
    return create(n, std::move(labels), {}, "abelian(" + std::to_string(n) + ")");
}

const std::string& LieAlgebra::label(int i) const {
    if (i < 1 || i > dim_)
        throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    return labels_[i - 1];
}

int LieAlgebra::index_of(const std::string& label) const {
    auto it = label_index_.find(label);
    return it == label_index_.end() ? 0 : it->second;
}

Rational LieAlgebra::structure_constant(int i, int j, int k) const {
    auto it = c_.find({i, j, k});
    return it == c_.end() ? Rational(0) : it->second;
}

SparseVector LieAlgebra::bracket_basis(int i, int j) const {
    auto it = table_.find({i, j});
    return it == table_.end() ? SparseVector{} : it->second;
}

SparseVector LieAlgebra::bracket(const SparseVector& x,
                                 const SparseVector& y) const {
    SparseVector out;
    for (const auto& [i, xi] : x) {
        for (const auto& [j, yj] : y) {
            auto it = table_.find({i, j});
            if (it == table_.end()) continue;
            for (const auto& [k, c] : it->second) {
                Rational& acc = out[k];
                acc += xi * yj * c;
                if (acc == 0) out.erase(k);
            }
        }
    }
    return out;
}

ValidationReport LieAlgebra::validate() const {
    ValidationReport rep;
    for (const auto& [key, value] : c_) {
        auto [i, j, k] = key;
        Rational residual = (i == j) ? value : value + structure_constant(j, i, k);
        Rational a = abs_r(residual);
        if (a > rep.max_antisymmetry_residual) rep.max_antisymmetry_residual = a;
        if (a != 0 && rep.antisymmetry_ok) {
            rep.antisymmetry_ok = false;
            rep.antisymmetry_violation = {i, j, k};
        }
    }
    for (int i = 1; i <= dim_; ++i) {
        for (int j = i + 1; j <= dim_; ++j) {
            for (int k = j + 1; k <= dim_; ++k) {
                SparseVector jac =
                    bracket(bracket_basis(i, j), SparseVector{{k, 1}});
                for (const auto& [m, v] :
                     bracket(bracket_basis(j, k), SparseVector{{i, 1}})) {
                    Rational& acc = jac[m];
                    acc += v;
                    if (acc == 0) jac.erase(m);
                }
                for (const auto& [m, v] :
                     bracket(bracket_basis(k, i), SparseVector{{j, 1}})) {
                    Rational& acc = jac[m];
                    acc += v;
                    if (acc == 0) jac.erase(m);
                }
                for (const auto& [m, v] : jac) {
                    (void)m;
                    Rational a = abs_r(v);
                    if (a > rep.max_jacobi_residual) rep.max_jacobi_residual = a;
                }
                if (!jac.empty() && rep.jacobi_ok) {
                    rep.jacobi_ok = false;
                    rep.jacobi_violation = {i, j, k};
                }
            }
        }
    }
    return rep;
}

std::string LieAlgebra::to_json() const {
    Json j;
    j["dim"] = dim_;
    j["labels"] = labels_;
    Json rows = Json::array();
    for (const auto& [key, value] : c_) {
        auto [i, jj, k] = key;
        if (i < jj && value != 0)
            rows.push_back(Json::array({i, jj, k, rational_to_string(value)}));
    }
    j["c"] = rows;
    return j.dump(2) + "\n";
}

AlgebraPtr LieAlgebra::from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad algebra JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("c"))
        throw Error(ErrorCode::Parse, "algebra JSON needs 'dim' and 'c'");
    if (!j["dim"].is_number_integer())
        throw Error(ErrorCode::Parse, "'dim' must be an integer");
    int dim = j["dim"].get<int>();
    if (dim < 1) throw Error(ErrorCode::Parse, "'dim' must be >= 1");

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw Error(ErrorCode::Parse, "'labels' must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string())
                throw Error(ErrorCode::Parse, "labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }

    if (!j["c"].is_array()) throw Error(ErrorCode::Parse, "'c' must be an array");
    Tensor c;
    for (const auto& row : j["c"]) {
        if (!row.is_array() || row.size() != 4)
            throw Error(ErrorCode::Parse, "each 'c' row must be [i,j,k,value]");
        if (!row[0].is_number_integer() || !row[1].is_number_integer() ||
            !row[2].is_number_integer())
            throw Error(ErrorCode::Parse, "'c' indices must be integers");
        int i = row[0].get<int>();
        int jj = row[1].get<int>();
        int k = row[2].get<int>();
        if (i < 1 || i > dim || jj < 1 || jj > dim || k < 1 || k > dim)
            throw Error(ErrorCode::Parse, "'c' index out of range");
        if (i >= jj)
            throw Error(ErrorCode::Parse,
                        "'c' rows must have i < j (lower half is implied)");
        Rational value;
        if (row[3].is_string()) {
            value = rational_from_string(row[3].get<std::string>());
        } else if (row[3].is_number_integer()) {
            value = Rational(row[3].get<long long>());
        } else {
            throw Error(ErrorCode::Parse, "'c' value must be a rational string");
        }
        if (c.count({i, jj, k}))
            throw Error(ErrorCode::Parse, "duplicate 'c' row");
        if (value != 0) {
            c[{i, jj, k}] = value;
            c[{jj, i, k}] = -value;
        }
    }
    std::string name = "custom";
    if (j.contains("name") && j["name"].is_string())
        name = j["name"].get<std::string>();
    return create(dim, std::move(labels), std::move(c), std::move(name));
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const {
    return dim_ == other.dim_ && labels_ == other.labels_ && c_ == other.c_;
}

bool compatible(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (!a || !b) return false;
    return a == b || a->same_structure(*b);
}

}  // namespace twistdeform
