#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/lie_algebra.hpp"

namespace twistdeform {

/* Element of Lambda^k g with exact coefficients.  Keys are strictly
 * increasing 1-based index tuples of length grade(); grade 0 uses the
 * empty tuple.  Zero coefficients are never stored. */
class Multivector {
public:
    using Terms = std::map<std::vector<int>, Rational>;

    Multivector(AlgebraPtr algebra, int grade);

    static Multivector zero(AlgebraPtr algebra, int grade);
    static Multivector scalar(AlgebraPtr algebra, const Rational& c);
    static Multivector basis_vector(AlgebraPtr algebra, int i);
    static Multivector from_sparse(AlgebraPtr algebra, const SparseVector& x);

    /* Canonicalizing insert: sorts idx, applies the permutation sign,
     * drops repeated-index tuples, accumulates, prunes zeros. */
    void add_term(std::vector<int> idx, const Rational& coeff);

    const AlgebraPtr& algebra() const { return algebra_; }
    int grade() const { return grade_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    /* Coefficient of the canonical tuple; idx may be unsorted. */
    Rational coefficient(std::vector<int> idx) const;
    /* sup-norm of the coefficient list. */
    Rational sup_norm() const;

    std::string to_string() const;
    std::string to_json() const;
    static Multivector from_json(AlgebraPtr algebra, const std::string& text);

    Multivector& operator+=(const Multivector& rhs);
    Multivector& operator-=(const Multivector& rhs);
    Multivector& operator*=(const Rational& c);

    /* Hidden friend: keeps the Rational overload out of unrelated
     * operator* lookups (boost's rational constructor is not SFINAE-safe
     * against Eigen expressions). */
    friend Multivector operator*(const Rational& c, Multivector m) {
        m *= c;
        return m;
    }

private:
    AlgebraPtr algebra_;
    int grade_;
    Terms terms_;
};

Multivector operator+(Multivector lhs, const Multivector& rhs);
Multivector operator-(Multivector lhs, const Multivector& rhs);
bool operator==(const Multivector& lhs, const Multivector& rhs);

Multivector wedge(const Multivector& a, const Multivector& b);

/* Schouten square [t,t] of a bivector t; the normalization is pinned by
 * [X^Y, X^Y] = 2 X ^ [X,Y] ^ Y on decomposables. */
Multivector schouten_square(const Multivector& t);

/* Extension of ad_X as a derivation of the exterior algebra. */
Multivector ad_derivation(const SparseVector& x, const Multivector& m);

struct RMatrixReport {
    bool is_r_matrix = false;
    Multivector square;
    /* ad_{e_a}[t,t] for each basis index a; all zero iff is_r_matrix. */
    std::vector<std::pair<int, Multivector>> residuals;
};

/* t is (here) an r-matrix when [t,t] is ad-invariant. */
RMatrixReport r_matrix_check(const Multivector& t);

/* Subset of basis indices spanning a subalgebra; closure is checked
 * exactly on construction. */
class SubalgebraBasisSet {
public:
    SubalgebraBasisSet(AlgebraPtr algebra, std::vector<int> indices);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<int>& indices() const { return indices_; }
    bool contains(int i) const;
    std::vector<int> complement() const;

private:
    AlgebraPtr algebra_;
    std::vector<int> indices_;
};

/* Projection Lambda^k g -> Lambda^k (g/h): tuples meeting h are dropped,
 * the rest are reindexed over the complement.  The result lives over an
 * abelian placeholder algebra that inherits the complement's labels. */
Multivector quotient_project(const Multivector& m, const SubalgebraBasisSet& h);

}  // namespace twistdeform
