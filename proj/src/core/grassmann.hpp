#pragma once

#include <string>

#include "core/multivector.hpp"

namespace twistdeform {

/* t = (1/4n) sum_{i<j<=n} X_ij ^ Y_ij over su(n). */
Multivector canonical_r_matrix(const AlgebraPtr& su_n);

/* Basis span of the isotropy subalgebra of the (r, n-r) splitting:
 * X_ij, Y_ij with i<j<=r or r<i<j<=n, plus every Z_k. */
SubalgebraBasisSet grassmann_subalgebra(const AlgebraPtr& su_n, int r);

struct GrassmannReport {
    int n = 0;
    int r = 0;
    bool is_r_matrix = false;     /* [t,t] is ad-invariant */
    bool square_nonzero = false;  /* [t,t] != 0, so t is not triangular */
    bool quotient_vanishes = false;
    int n_terms_square = 0;
    std::string quotient_norm;  /* sup-norm of the projected square, exact */

    bool ok() const { return is_r_matrix && square_nonzero && quotient_vanishes; }
};

/* Full check for one (n, r): exact throughout. */
GrassmannReport grassmann_verify(int n, int r);

}  // namespace twistdeform
