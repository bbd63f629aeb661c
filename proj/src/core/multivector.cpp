#include "core/multivector.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace twistdeform {

namespace {

using Json = nlohmann::ordered_json;

/* Sorts idx in place and returns the permutation sign, or 0 when an index
 * repeats. */
int canonicalize(std::vector<int>& idx) {
    int sign = 1;
    for (size_t a = 1; a < idx.size(); ++a) {
        size_t b = a;
        while (b > 0 && idx[b - 1] > idx[b]) {
            std::swap(idx[b - 1], idx[b]);
            sign = -sign;
            --b;
        }
        if (b > 0 && idx[b - 1] == idx[b]) return 0;
    }
    return sign;
}

}  // namespace

Multivector::Multivector(AlgebraPtr algebra, int grade)
    : algebra_(std::move(algebra)), grade_(grade) {
    if (!algebra_) throw Error(ErrorCode::InvalidArgument, "null algebra");
    if (grade_ < 0) throw Error(ErrorCode::InvalidArgument, "negative grade");
}

Multivector Multivector::zero(AlgebraPtr algebra, int grade) {
    return Multivector(std::move(algebra), grade);
}

Multivector Multivector::scalar(AlgebraPtr algebra, const Rational& c) {
    Multivector m(std::move(algebra), 0);
    m.add_term({}, c);
    return m;
}

Multivector Multivector::basis_vector(AlgebraPtr algebra, int i) {
    Multivector m(std::move(algebra), 1);
    m.add_term({i}, 1);
    return m;
}

Multivector Multivector::from_sparse(AlgebraPtr algebra, const SparseVector& x) {
    Multivector m(std::move(algebra), 1);
    for (const auto& [i, c] : x) m.add_term({i}, c);
    return m;
}

void Multivector::add_term(std::vector<int> idx, const Rational& coeff) {
    if (static_cast<int>(idx.size()) != grade_)
        throw Error(ErrorCode::InvalidArgument, "tuple length != grade");
    for (int i : idx)
        if (i < 1 || i > algebra_->dim())
            throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    if (coeff == 0) return;
    int sign = canonicalize(idx);
    if (sign == 0) return;
    Rational& acc = terms_[idx];
    acc += sign * coeff;
    if (acc == 0) terms_.erase(idx);
}

Rational Multivector::coefficient(std::vector<int> idx) const {
    if (static_cast<int>(idx.size()) != grade_)
        throw Error(ErrorCode::InvalidArgument, "tuple length != grade");
    int sign = canonicalize(idx);
    if (sign == 0) return 0;
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : Rational(sign * it->second);
}

Rational Multivector::sup_norm() const {
    Rational best = 0;
    for (const auto& [idx, c] : terms_) {
        (void)idx;
        Rational a = c < 0 ? Rational(-c) : c;
        if (a > best) best = a;
    }
    return best;
}

std::string Multivector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1) && !idx.empty();
        if (!unit) os << rational_to_string(a);
        for (size_t p = 0; p < idx.size(); ++p) {
            if (p > 0)
                os << "^";
            else if (!unit)
                os << "*";
            os << algebra_->label(idx[p]);
        }
    }
    return os.str();
}

std::string Multivector::to_json() const {
    Json j;
    j["grade"] = grade_;
    Json rows = Json::array();
    for (const auto& [idx, c] : terms_)
        rows.push_back(Json::array({idx, rational_to_string(c)}));
    j["terms"] = rows;
    return j.dump(2) + "\n";
}

Multivector Multivector::from_json(AlgebraPtr algebra, const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::Parse,
                    std::string("bad multivector JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("grade") || !j.contains("terms"))
        throw Error(ErrorCode::Parse, "multivector JSON needs 'grade' and 'terms'");
    if (!j["grade"].is_number_integer() || j["grade"].get<int>() < 0)
        throw Error(ErrorCode::Parse, "'grade' must be a non-negative integer");
    Multivector m(std::move(algebra), j["grade"].get<int>());
    if (!j["terms"].is_array())
        throw Error(ErrorCode::Parse, "'terms' must be an array");
    for (const auto& row : j["terms"]) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_array())
            throw Error(ErrorCode::Parse, "each term must be [[i...], value]");
        std::vector<int> idx;
        for (const auto& e : row[0]) {
            if (!e.is_number_integer())
                throw Error(ErrorCode::Parse, "term indices must be integers");
            idx.push_back(e.get<int>());
        }
        Rational value;
        if (row[1].is_string()) {
            value = rational_from_string(row[1].get<std::string>());
        } else if (row[1].is_number_integer()) {
            value = Rational(row[1].get<long long>());
        } else {
            throw Error(ErrorCode::Parse, "term value must be a rational string");
        }
        try {
            m.add_term(std::move(idx), value);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, e.what());
        }
    }
    return m;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
    if (!compatible(algebra_, rhs.algebra_))
        throw Error(ErrorCode::DimensionMismatch, "algebra mismatch");
    if (grade_ != rhs.grade_)
        throw Error(ErrorCode::DimensionMismatch, "grade mismatch");
    for (const auto& [idx, c] : rhs.terms_) {
        Rational& acc = terms_[idx];
        acc += c;
        if (acc == 0) terms_.erase(idx);
    }
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
    if (!compatible(algebra_, rhs.algebra_))
        throw Error(ErrorCode::DimensionMismatch, "algebra mismatch");
    if (grade_ != rhs.grade_)
        throw Error(ErrorCode::DimensionMismatch, "grade mismatch");
    for (const auto& [idx, c] : rhs.terms_) {
        Rational& acc = terms_[idx];
        acc -= c;
        if (acc == 0) terms_.erase(idx);
    }
    return *this;
}

Multivector& Multivector::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [idx, v] : terms_) {
        (void)idx;
        v *= c;
    }
    return *this;
}

Multivector operator+(Multivector lhs, const Multivector& rhs) {
    lhs += rhs;
    return lhs;
}

Multivector operator-(Multivector lhs, const Multivector& rhs) {
    lhs -= rhs;
    return lhs;
}

bool operator==(const Multivector& lhs, const Multivector& rhs) {
    return compatible(lhs.algebra(), rhs.algebra()) &&
           lhs.grade() == rhs.grade() && lhs.terms() == rhs.terms();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    if (!compatible(a.algebra(), b.algebra()))
        throw Error(ErrorCode::DimensionMismatch, "algebra mismatch");
    Multivector out(a.algebra(), a.grade() + b.grade());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add_term(std::move(idx), ca * cb);
        }
    }
    return out;
}

Multivector schouten_square(const Multivector& t) {
    if (t.grade() != 2)
        throw Error(ErrorCode::InvalidArgument, "schouten_square needs grade 2");
    const auto& g = *t.algebra();
    /* Ordered-pair expansion of each stored a<b term. */
    std::vector<std::tuple<int, int, Rational>> pairs;
    for (const auto& [idx, c] : t.terms()) {
        pairs.emplace_back(idx[0], idx[1], c);
        pairs.emplace_back(idx[1], idx[0], -c);
    }
    Multivector out(t.algebra(), 3);
    for (const auto& [i, j, ci] : pairs) {
        for (const auto& [k, l, cj] : pairs) {
            for (const auto& [m, cm] : g.bracket_basis(i, k))
                out.add_term({m, j, l}, -(ci * cj * cm));
        }
    }
    return out;
}

Multivector ad_derivation(const SparseVector& x, const Multivector& m) {
    const auto& g = *m.algebra();
    Multivector out(m.algebra(), m.grade());
    for (const auto& [idx, c] : m.terms()) {
        for (size_t pos = 0; pos < idx.size(); ++pos) {
            for (const auto& [j, xj] : x) {
                for (const auto& [k, ck] : g.bracket_basis(j, idx[pos])) {
                    std::vector<int> repl = idx;
                    repl[pos] = k;
                    out.add_term(std::move(repl), c * xj * ck);
                }
            }
        }
    }
    return out;
}

RMatrixReport r_matrix_check(const Multivector& t) {
    RMatrixReport rep{false, schouten_square(t), {}};
    rep.is_r_matrix = true;
    for (int a = 1; a <= t.algebra()->dim(); ++a) {
        Multivector res = ad_derivation(SparseVector{{a, 1}}, rep.square);
        if (!res.is_zero()) rep.is_r_matrix = false;
        rep.residuals.emplace_back(a, std::move(res));
    }
    return rep;
}

SubalgebraBasisSet::SubalgebraBasisSet(AlgebraPtr algebra,
                                       std::vector<int> indices)
    : algebra_(std::move(algebra)), indices_(std::move(indices)) {
    if (!algebra_) throw Error(ErrorCode::InvalidArgument, "null algebra");
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()),
                   indices_.end());
    for (int i : indices_)
        if (i < 1 || i > algebra_->dim())
            throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    for (size_t a = 0; a < indices_.size(); ++a) {
        for (size_t b = a + 1; b < indices_.size(); ++b) {
            for (const auto& [k, c] :
                 algebra_->bracket_basis(indices_[a], indices_[b])) {
                (void)c;
                if (!contains(k))
                    throw Error(ErrorCode::InvalidArgument,
                                "not a subalgebra: [" +
                                    algebra_->label(indices_[a]) + "," +
                                    algebra_->label(indices_[b]) +
                                    "] leaves the span at " +
                                    algebra_->label(k));
            }
        }
    }
}

bool SubalgebraBasisSet::contains(int i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<int> SubalgebraBasisSet::complement() const {
    std::vector<int> out;
    for (int i = 1; i <= algebra_->dim(); ++i)
        if (!contains(i)) out.push_back(i);
    return out;
}

Multivector quotient_project(const Multivector& m, const SubalgebraBasisSet& h) {
    if (!compatible(m.algebra(), h.algebra()))
        throw Error(ErrorCode::DimensionMismatch, "algebra mismatch");
    std::vector<int> comp = h.complement();
    if (comp.empty())
        throw Error(ErrorCode::InvalidArgument, "h spans the whole algebra");
    std::map<int, int> reindex;
    std::vector<std::string> labels;
    for (size_t p = 0; p < comp.size(); ++p) {
        reindex[comp[p]] = static_cast<int>(p) + 1;
        labels.push_back(m.algebra()->label(comp[p]));
    }
    AlgebraPtr quotient = LieAlgebra::create(
        static_cast<int>(comp.size()), std::move(labels), {}, "quotient");
    Multivector out(quotient, m.grade());
    for (const auto& [idx, c] : m.terms()) {
        std::vector<int> mapped;
        mapped.reserve(idx.size());
        bool keep = true;
        for (int i : idx) {
            auto it = reindex.find(i);
            if (it == reindex.end()) {
                keep = false;
                break;
            }
            mapped.push_back(it->second);
        }
        if (keep) out.add_term(std::move(mapped), c);
    }
    return out;
}

}  // namespace twistdeform
