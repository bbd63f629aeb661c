#include "core/grassmann.hpp"

namespace twistdeform {

namespace {

int su_rank_m(const AlgebraPtr& g) {
    /* dim su(m) = m^2 - 1 */
    int dim = g->dim();
    int m = 2;
    while (m * m - 1 < dim) ++m;
    if (m * m - 1 != dim || g->name() != "su(" + std::to_string(m) + ")")
        throw Error(ErrorCode::InvalidArgument, "expected an su(m) algebra");
    return m;
}

}  // namespace

Multivector canonical_r_matrix(const AlgebraPtr& su_n) {
    int n = su_rank_m(su_n);
    int pairs = n * (n - 1) / 2;
    Multivector t(su_n, 2);
    for (int pos = 0; pos < pairs; ++pos) {
        /* X block occupies [1, pairs], Y block [pairs+1, 2*pairs], in the
         * same lexicographic (i,j) order. */
        t.add_term({pos + 1, pairs + pos + 1}, Rational(1, 4 * n));
    }
    return t;
}

SubalgebraBasisSet grassmann_subalgebra(const AlgebraPtr& su_n, int r) {
    int n = su_rank_m(su_n);
    if (r < 1 || r >= n)
        throw Error(ErrorCode::InvalidArgument, "need 1 <= r < n");
    auto basis = su_basis_elements(n);
    std::vector<int> idx;
    for (int a = 0; a < static_cast<int>(basis.size()); ++a) {
        const SuBasisElement& e = basis[a];
        bool keep;
        if (e.kind == 'Z') {
            keep = true;
        } else {
            keep = (e.j <= r) || (e.i > r);
        }
        if (keep) idx.push_back(a + 1);
    }
    return SubalgebraBasisSet(su_n, std::move(idx));
}

GrassmannReport grassmann_verify(int n, int r) {
    AlgebraPtr g = LieAlgebra::su(n);
    Multivector t = canonical_r_matrix(g);
    RMatrixReport rm = r_matrix_check(t);
    SubalgebraBasisSet h = grassmann_subalgebra(g, r);
    Multivector q = quotient_project(rm.square, h);

    GrassmannReport rep;
    rep.n = n;
    rep.r = r;
    rep.is_r_matrix = rm.is_r_matrix;
    rep.square_nonzero = !rm.square.is_zero();
    rep.quotient_vanishes = q.is_zero();
    rep.n_terms_square = rm.square.term_count();
    rep.quotient_norm = rational_to_string(q.sup_norm());
    return rep;
}

}  // namespace twistdeform
