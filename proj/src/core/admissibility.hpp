#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/multivector.hpp"

namespace twistdeform {

/* A(t,xi)[i][l] = -delta_il - sum_{j,k} t^{ij} c_{lj}^k xi_k, with
 * t^{ij} twice the stored coefficient of e_i^e_j (antisymmetric matrix
 * convention t = (1/2) t^{ij} e_i^e_j).  A(0,xi) = -I. */
Eigen::MatrixXd dressing_matrix(const Multivector& t, const Eigen::VectorXd& xi);

/* f_t(xi) := (-1)^n det A(t,xi), normalized so f_0 = +1; the dual frame is
 * admissible at xi iff f_t(xi) != 0. */
double admissibility_determinant(const Multivector& t, const Eigen::VectorXd& xi);

/* Same value over Q, via fraction-free row elimination. */
Rational admissibility_determinant_exact(const Multivector& t,
                                         const std::vector<Rational>& xi);

/* Deterministic sphere covering in R^3: `count` spiral points whose first
 * coordinate steps through a uniform grid of pitch 2r/count (golden-angle
 * longitudes), followed by the six axis points (+-r,0,0),(0,+-r,0),(0,0,+-r).
 * Total size count + 6. */
std::vector<Eigen::VectorXd> sphere_samples(double radius, int count);

struct AdmissibilityReport {
    int n_samples = 0;
    double tolerance = 0.0;
    double min_abs = 0.0;
    Eigen::VectorXd argmin;
    bool admissible = false;
    /* f_t at each sample, in input order. */
    std::vector<double> values;
};

/* Scans |f_t| over the samples; admissible iff min exceeds tol. */
AdmissibilityReport admissible_on(const Multivector& t,
                                  const std::vector<Eigen::VectorXd>& samples,
                                  double tol = 1e-9);

/* For [X,Y] = aX + bY (checked exactly), the affine form
 * 1 + sum_k (a X^k + b Y^k) xi_k whose zero set is exactly the zero set
 * of f_{X^Y/2} (the determinant is the square of this form). */
double affine_form_value(const AlgebraPtr& g, const SparseVector& x,
                         const SparseVector& y, const Rational& a,
                         const Rational& b, const Eigen::VectorXd& xi);

/* Regularity of A_t at xi for t = X^Y/2 via the affine form. */
bool affine_case_check(const AlgebraPtr& g, const SparseVector& x,
                       const SparseVector& y, const Rational& a,
                       const Rational& b, const Eigen::VectorXd& xi,
                       double tol = 1e-9);

/* (1/2) X ^ Y as a bivector. */
Multivector half_wedge(const AlgebraPtr& g, const SparseVector& x,
                       const SparseVector& y);

}  // namespace twistdeform
