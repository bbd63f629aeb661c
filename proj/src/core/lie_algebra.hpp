#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/error.hpp"

namespace twistdeform {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/* Sparse coefficient vector over a basis: 1-based index -> coefficient. */
using SparseVector = std::map<int, Rational>;

struct ValidationReport {
    bool antisymmetry_ok = true;
    bool jacobi_ok = true;
    /* First violating (i,j,k) triple, empty when the axiom holds. */
    std::vector<int> antisymmetry_violation;
    std::vector<int> jacobi_violation;
    Rational max_antisymmetry_residual = 0;
    Rational max_jacobi_residual = 0;

    bool ok() const { return antisymmetry_ok && jacobi_ok; }
};

/* Standard basis of su(m), m >= 2, in block order: X_ij (i<j, lex),
 * Y_ij (i<j, lex), Z_k (1 <= k <= m-1).  kind is 'X', 'Y' or 'Z';
 * Z entries use i = k, j = 0. */
struct SuBasisElement {
    char kind;
    int i;
    int j;
};

std::vector<SuBasisElement> su_basis_elements(int m);
std::string su_basis_label(const SuBasisElement& e);

/* Finite-dimensional Lie algebra given by structure constants over Q.
 * The raw tensor is stored exactly as provided; validate() checks the
 * axioms against it rather than against a symmetrized copy. */
class LieAlgebra {
public:
    /* (i,j,k) -> c_ij^k, all indices 1-based. */
    using Tensor = std::map<std::tuple<int, int, int>, Rational>;

    static AlgebraPtr su(int m);
    static AlgebraPtr abelian(int n);
    /* pre: labels.size() == dim (or empty for defaults e1..en);
     * tensor indices within [1, dim].  Antisymmetric completion is NOT
     * applied: the caller owns the raw tensor. */
    static AlgebraPtr create(int dim, std::vector<std::string> labels, Tensor c,
                             std::string name = "custom");
    /* Accepts {"dim", "labels", "c": [[i,j,k,"p/q"], ...]} with i < j only;
     * the j > i half is completed by antisymmetry.  Duplicate (i,j,k) rows
     * and out-of-range indices are Parse errors. */
    static AlgebraPtr from_json(const std::string& text);

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::string& label(int i) const;
    /* 1-based index, 0 when the label is unknown. */
    int index_of(const std::string& label) const;

    Rational structure_constant(int i, int j, int k) const;
    /* [e_i, e_j] as a sparse vector. */
    SparseVector bracket_basis(int i, int j) const;
    SparseVector bracket(const SparseVector& x, const SparseVector& y) const;

    ValidationReport validate() const;
    std::string to_json() const;

    /* Same dim, labels and raw tensor. */
    bool same_structure(const LieAlgebra& other) const;

    const Tensor& tensor() const { return c_; }

private:
    LieAlgebra() = default;

    int dim_ = 0;
    std::string name_;
    std::vector<std::string> labels_;
    std::map<std::string, int> label_index_;
    Tensor c_;
    /* (i,j) -> [e_i,e_j], derived from c_ verbatim (no symmetrization). */
    std::map<std::pair<int, int>, SparseVector> table_;

    void finalize();
};

/* Two multivectors/operations may mix algebras iff the pointers match or
 * the structures compare equal. */
bool compatible(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace twistdeform
