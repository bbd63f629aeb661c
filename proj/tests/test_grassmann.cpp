#include <doctest.h>

#include "core/grassmann.hpp"

using namespace twistdeform;

TEST_CASE("canonical r-matrix layout") {
    auto g2 = LieAlgebra::su(2);
    auto t2 = canonical_r_matrix(g2);
    CHECK(t2.term_count() == 1);
    CHECK(t2.coefficient({1, 2}) == Rational(1, 8));

    auto g3 = LieAlgebra::su(3);
    auto t3 = canonical_r_matrix(g3);
    CHECK(t3.term_count() == 3);
    /* X12^Y12, X13^Y13, X23^Y23 at 1/12 */
    CHECK(t3.coefficient({1, 4}) == Rational(1, 12));
    CHECK(t3.coefficient({2, 5}) == Rational(1, 12));
    CHECK(t3.coefficient({3, 6}) == Rational(1, 12));

    CHECK_THROWS_AS(canonical_r_matrix(LieAlgebra::abelian(3)), Error);
}

TEST_CASE("su(2): the square of the canonical r-matrix") {
    auto g = LieAlgebra::su(2);
    auto sq = schouten_square(canonical_r_matrix(g));
    CHECK(sq.term_count() == 1);
    CHECK(sq.coefficient({1, 2, 3}) == Rational(-1, 16));
}

TEST_CASE("block bracket identities") {
    auto g = LieAlgebra::su(4);
    auto idx = [&](const std::string& l) { return g->index_of(l); };
    /* same row, j < l: [X_ij, X_il] = -X_jl, [Y_ij, Y_il] = -X_jl,
     * [X_ij, Y_il] = -Y_jl, [Y_ij, X_il] = +Y_jl */
    CHECK(g->bracket_basis(idx("X12"), idx("X13")) ==
          SparseVector{{idx("X23"), -1}});
    CHECK(g->bracket_basis(idx("Y12"), idx("Y13")) ==
          SparseVector{{idx("X23"), -1}});
    CHECK(g->bracket_basis(idx("X12"), idx("Y13")) ==
          SparseVector{{idx("Y23"), -1}});
    CHECK(g->bracket_basis(idx("Y12"), idx("X13")) ==
          SparseVector{{idx("Y23"), 1}});
    CHECK(g->bracket_basis(idx("Y13"), idx("X12")) ==
          SparseVector{{idx("Y23"), 1}});
    /* same column: [X_il, X_jl] = -X_ij for i < j (up to sign symmetry) */
    CHECK(g->bracket_basis(idx("X13"), idx("X23")) ==
          SparseVector{{idx("X12"), -1}});
    /* diagonal pair: [X_ij, Y_ij] = 2(Z_i - Z_j), Z_4 = 0 */
    CHECK(g->bracket_basis(idx("X14"), idx("Y14")) ==
          SparseVector{{idx("Z1"), 2}});
    CHECK(g->bracket_basis(idx("X23"), idx("Y23")) ==
          SparseVector{{idx("Z2"), 2}, {idx("Z3"), -2}});
}

TEST_CASE("isotropy subalgebra span") {
    auto g = LieAlgebra::su(3);
    auto h = grassmann_subalgebra(g, 1);
    CHECK(h.indices() == std::vector<int>{3, 6, 7, 8}); /* X23 Y23 Z1 Z2 */
    CHECK(h.complement() == std::vector<int>{1, 2, 4, 5});
    auto h2 = grassmann_subalgebra(g, 2);
    CHECK(h2.indices() == std::vector<int>{1, 4, 7, 8}); /* X12 Y12 Z1 Z2 */
    CHECK_THROWS_AS(grassmann_subalgebra(g, 0), Error);
    CHECK_THROWS_AS(grassmann_subalgebra(g, 3), Error);
}

TEST_CASE("grassmann verification over all small splittings") {
    for (int n = 2; n <= 4; ++n) {
        for (int r = 1; r < n; ++r) {
            auto rep = grassmann_verify(n, r);
            CHECK(rep.ok());
            CHECK(rep.is_r_matrix);
            CHECK(rep.square_nonzero);
            CHECK(rep.quotient_vanishes);
            CHECK(rep.quotient_norm == "0");
            CHECK(rep.n_terms_square > 0);
        }
    }
}
