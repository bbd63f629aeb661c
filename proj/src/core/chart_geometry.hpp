#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "core/multivector.hpp"

namespace twistdeform {

/* Points live in the standard affine chart of CP^n, real coordinates
 * interleaved as (x1, y1, ..., xn, yn) for w_k = x_k + i y_k. */

/* The su(m) basis element as an m x m anti-Hermitian matrix. */
Eigen::MatrixXcd su_basis_matrix(int m, const SuBasisElement& e);

/* Smooth action of a group on the chart, described infinitesimally by the
 * fundamental fields of a basis of its Lie algebra, plus a moment map. */
class CpAction {
public:
    virtual ~CpAction() = default;

    virtual int chart_n() const = 0;
    virtual const AlgebraPtr& algebra() const = 0;
    virtual std::string name() const = 0;
    /* Field of basis element `index` (1-based) at p, as a 2n real vector. */
    virtual Eigen::VectorXd fundamental_field(int index,
                                              const Eigen::VectorXd& p) const = 0;
    virtual Eigen::VectorXd moment(const Eigen::VectorXd& p) const = 0;

    Eigen::VectorXd fundamental_field(const SparseVector& x,
                                      const Eigen::VectorXd& p) const;

protected:
    void check_point(const Eigen::VectorXd& p) const;
};

using ActionPtr = std::shared_ptr<const CpAction>;

/* SU(n+1) acting projectively; algebra() is su(n+1).  On homogeneous
 * z = (1, w), the field of X is w_i' = (Xz)_{i+1} - w_i (Xz)_1 and the
 * moment is mu_X = Im(z* X z) / (2 z*z), so d(mu_X) = omega(., X_M). */
class SuCpAction : public CpAction {
public:
    explicit SuCpAction(int n);

    using CpAction::fundamental_field;
    int chart_n() const override { return n_; }
    const AlgebraPtr& algebra() const override { return algebra_; }
    std::string name() const override { return "su"; }
    Eigen::VectorXd fundamental_field(int index,
                                      const Eigen::VectorXd& p) const override;
    Eigen::VectorXd moment(const Eigen::VectorXd& p) const override;

private:
    int n_;
    AlgebraPtr algebra_;
};

/* Diagonal torus w_k -> e^{i s_k} w_k; algebra() is abelian(n).  Field of
 * the k-th generator is i w_k, moment mu_k = -|w_k|^2 / (2(1+|w|^2)),
 * so d(mu_k) = omega(v_k, .) (the opposite contraction from SuCpAction). */
class TorusCpAction : public CpAction {
public:
    explicit TorusCpAction(int n);

    using CpAction::fundamental_field;
    int chart_n() const override { return n_; }
    const AlgebraPtr& algebra() const override { return algebra_; }
    std::string name() const override { return "torus"; }
    Eigen::VectorXd fundamental_field(int index,
                                      const Eigen::VectorXd& p) const override;
    Eigen::VectorXd moment(const Eigen::VectorXd& p) const override;

private:
    int n_;
    AlgebraPtr algebra_;
};

/* Hermitian metric h_{j kbar} = d_jk / D - wbar_j w_k / D^2, D = 1 + |w|^2. */
Eigen::MatrixXcd fs_hermitian(int n, const Eigen::VectorXd& p);

/* Fubini-Study form as a real antisymmetric 2n x 2n matrix,
 * Omega[a][b] = Omega(e_a, e_b). */
Eigen::MatrixXd fubini_study(int n, const Eigen::VectorXd& p);

/* Form -> bivector and back: both are M -> -M^{-1}, so the pair is
 * involutive.  Throws Singular (with point and |det| in the message)
 * when the matrix is rank-deficient relative to its largest pivot, or
 * when |det| <= tol for a positive tol. */
Eigen::MatrixXd invert_form(const Eigen::MatrixXd& omega,
                            const Eigen::VectorXd& p, double tol = 0.0);
Eigen::MatrixXd invert_bivector(const Eigen::MatrixXd& pi,
                                const Eigen::VectorXd& p, double tol = 0.0);

/* t_M = sum_{a<b} t_ab (v_a v_b^T - v_b v_a^T) over the stored terms. */
Eigen::MatrixXd twist_field(const CpAction& action, const Multivector& t,
                            const Eigen::VectorXd& p);

/* Twist pipeline on a chart: pi = -Omega^{-1}, pi_t = pi - t_M,
 * omega_t = -pi_t^{-1}. */
class Deformation {
public:
    Deformation(ActionPtr action, Multivector twist);

    const ActionPtr& action() const { return action_; }
    const Multivector& twist() const { return twist_; }

    Eigen::MatrixXd base_form(const Eigen::VectorXd& p) const;
    Eigen::MatrixXd base_poisson(const Eigen::VectorXd& p) const;
    Eigen::MatrixXd twist_field_at(const Eigen::VectorXd& p) const;
    Eigen::MatrixXd deformed_poisson(const Eigen::VectorXd& p) const;
    Eigen::MatrixXd deformed_form(const Eigen::VectorXd& p) const;
    Eigen::VectorXd moment(const Eigen::VectorXd& p) const;

private:
    ActionPtr action_;
    Multivector twist_;
};

using FormField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/* max over a<b<c of |d_a F_bc + d_b F_ca + d_c F_ab|, central differences
 * of step h.  Zero when the chart has fewer than three directions. */
double closedness_residual(const FormField& form, const Eigen::VectorXd& p,
                           double h = 1e-4);

struct NondegeneracyReport {
    double min_proxy = 0.0;  /* min over the grid of |det F|^{1/2} */
    Eigen::VectorXd argmin;
    bool nondegenerate = false;
};

NondegeneracyReport nondegeneracy_scan(const FormField& form,
                                       const std::vector<Eigen::VectorXd>& grid,
                                       double tol = 1e-9);

/* Uniform lattice on [-extent, extent]^dim with per_axis points per axis,
 * in row-major order. */
std::vector<Eigen::VectorXd> uniform_grid(int dim, double extent, int per_axis);

}  // namespace twistdeform
