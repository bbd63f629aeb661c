#include "core/chart_geometry.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace twistdeform {

namespace {

using Complex = std::complex<double>;

Eigen::VectorXcd chart_w(const Eigen::VectorXd& p) {
    Eigen::VectorXcd w(p.size() / 2);
    for (Eigen::Index k = 0; k < w.size(); ++k)
        w[k] = Complex(p[2 * k], p[2 * k + 1]);
    return w;
}

std::string point_to_string(const Eigen::VectorXd& p) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << p[i];
    }
    os << ")";
    return os.str();
}

Eigen::MatrixXd negate_inverse(const Eigen::MatrixXd& m,
                               const Eigen::VectorXd& p, double tol) {
    if (m.rows() != m.cols() || m.rows() != p.size())
        throw Error(ErrorCode::DimensionMismatch, "matrix/point size mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    double det = lu.determinant();
    if (!lu.isInvertible() || std::abs(det) <= tol) {
        std::ostringstream os;
        os << "degenerate at p = " << point_to_string(p) << ", |det| = "
           << std::abs(det);
        throw Error(ErrorCode::Singular, os.str());
    }
    return -lu.inverse();
}

}  // namespace

Eigen::MatrixXcd su_basis_matrix(int m, const SuBasisElement& e) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m);
    if (e.kind == 'X') {
        b(e.i - 1, e.j - 1) = Complex(1, 0);
        b(e.j - 1, e.i - 1) = Complex(-1, 0);
    } else if (e.kind == 'Y') {
        b(e.i - 1, e.j - 1) = Complex(0, 1);
        b(e.j - 1, e.i - 1) = Complex(0, 1);
    } else {
        b(e.i - 1, e.i - 1) = Complex(0, 1);
        b(m - 1, m - 1) = Complex(0, -1);
    }
    return b;
}

void CpAction::check_point(const Eigen::VectorXd& p) const {
    if (p.size() != 2 * chart_n())
        throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
}

Eigen::VectorXd CpAction::fundamental_field(const SparseVector& x,
                                            const Eigen::VectorXd& p) const {
    check_point(p);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(p.size());
    for (const auto& [i, c] : x)
        out += c.convert_to<double>() * fundamental_field(i, p);
    return out;
}

SuCpAction::SuCpAction(int n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "chart needs n >= 1");
    algebra_ = LieAlgebra::su(n + 1);
}

Eigen::VectorXd SuCpAction::fundamental_field(int index,
                                              const Eigen::VectorXd& p) const {
    check_point(p);
    if (index < 1 || index > algebra_->dim())
        throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    int m = n_ + 1;
    Eigen::MatrixXcd b = su_basis_matrix(m, su_basis_elements(m)[index - 1]);
    Eigen::VectorXcd z(m);
    z[0] = Complex(1, 0);
    z.tail(n_) = chart_w(p);
    Eigen::VectorXcd xz = b * z;
    Eigen::VectorXd out(2 * n_);
    for (int i = 0; i < n_; ++i) {
        Complex wp = xz[i + 1] - z[i + 1] * xz[0];
        out[2 * i] = wp.real();
        out[2 * i + 1] = wp.imag();
    }
    return out;
}

Eigen::VectorXd SuCpAction::moment(const Eigen::VectorXd& p) const {
    check_point(p);
    int m = n_ + 1;
    Eigen::VectorXcd z(m);
    z[0] = Complex(1, 0);
    z.tail(n_) = chart_w(p);
    double zz = z.squaredNorm();
    auto basis = su_basis_elements(m);
    Eigen::VectorXd mu(algebra_->dim());
    for (int a = 0; a < algebra_->dim(); ++a) {
        Complex pairing = z.dot(su_basis_matrix(m, basis[a]) * z);
        mu[a] = pairing.imag() / (2.0 * zz);
    }
    return mu;
}

TorusCpAction::TorusCpAction(int n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "chart needs n >= 1");
    algebra_ = LieAlgebra::abelian(n);
}

Eigen::VectorXd TorusCpAction::fundamental_field(int index,
                                                 const Eigen::VectorXd& p) const {
    check_point(p);
    if (index < 1 || index > n_)
        throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n_);
    out[2 * (index - 1)] = -p[2 * (index - 1) + 1];
    out[2 * (index - 1) + 1] = p[2 * (index - 1)];
    return out;
}

Eigen::VectorXd TorusCpAction::moment(const Eigen::VectorXd& p) const {
    check_point(p);
    double d = 1.0 + p.squaredNorm();
    Eigen::VectorXd mu(n_);
    for (int k = 0; k < n_; ++k) {
        double wk2 = p[2 * k] * p[2 * k] + p[2 * k + 1] * p[2 * k + 1];
        mu[k] = -wk2 / (2.0 * d);
    }
    return mu;
}

Eigen::MatrixXcd fs_hermitian(int n, const Eigen::VectorXd& p) {
    if (p.size() != 2 * n)
        throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
    Eigen::VectorXcd w = chart_w(p);
    double d = 1.0 + w.squaredNorm();
    Eigen::MatrixXcd h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            h(j, k) = (j == k ? 1.0 / d : 0.0) - std::conj(w[j]) * w[k] / (d * d);
    return h;
}

Eigen::MatrixXd fubini_study(int n, const Eigen::VectorXd& p) {
    Eigen::MatrixXcd h = fs_hermitian(n, p);
    Eigen::MatrixXd omega(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double re = h(j, k).real();
            double im = h(j, k).imag();
            omega(2 * j, 2 * k) = -im;
            omega(2 * j, 2 * k + 1) = re;
            omega(2 * j + 1, 2 * k) = -re;
            omega(2 * j + 1, 2 * k + 1) = -im;
        }
    }
    return omega;
}

Eigen::MatrixXd invert_form(const Eigen::MatrixXd& omega,
                            const Eigen::VectorXd& p, double tol) {
    return negate_inverse(omega, p, tol);
}

Eigen::MatrixXd invert_bivector(const Eigen::MatrixXd& pi,
                                const Eigen::VectorXd& p, double tol) {
    return negate_inverse(pi, p, tol);
}

Eigen::MatrixXd twist_field(const CpAction& action, const Multivector& t,
                            const Eigen::VectorXd& p) {
    if (t.grade() != 2)
        throw Error(ErrorCode::InvalidArgument, "twist must have grade 2");
    if (!compatible(t.algebra(), action.algebra()))
        throw Error(ErrorCode::DimensionMismatch,
                    "twist algebra does not match the action");
    int d = 2 * action.chart_n();
    if (p.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    for (const auto& [idx, c] : t.terms()) {
        Eigen::VectorXd va = action.fundamental_field(idx[0], p);
        Eigen::VectorXd vb = action.fundamental_field(idx[1], p);
        out += c.convert_to<double>() *
               (va * vb.transpose() - vb * va.transpose());
    }
    return out;
}

Deformation::Deformation(ActionPtr action, Multivector twist)
    : action_(std::move(action)), twist_(std::move(twist)) {
    if (!action_) throw Error(ErrorCode::InvalidArgument, "null action");
    if (twist_.grade() != 2)
        throw Error(ErrorCode::InvalidArgument, "twist must have grade 2");
    if (!compatible(twist_.algebra(), action_->algebra()))
        throw Error(ErrorCode::DimensionMismatch,
                    "twist algebra does not match the action");
}

Eigen::MatrixXd Deformation::base_form(const Eigen::VectorXd& p) const {
    return fubini_study(action_->chart_n(), p);
}

Eigen::MatrixXd Deformation::base_poisson(const Eigen::VectorXd& p) const {
    return invert_form(base_form(p), p);
}

Eigen::MatrixXd Deformation::twist_field_at(const Eigen::VectorXd& p) const {
    return twist_field(*action_, twist_, p);
}

Eigen::MatrixXd Deformation::deformed_poisson(const Eigen::VectorXd& p) const {
    return base_poisson(p) - twist_field_at(p);
}

Eigen::MatrixXd Deformation::deformed_form(const Eigen::VectorXd& p) const {
    return invert_bivector(deformed_poisson(p), p);
}

Eigen::VectorXd Deformation::moment(const Eigen::VectorXd& p) const {
    return action_->moment(p);
}

double closedness_residual(const FormField& form, const Eigen::VectorXd& p,
                           double h) {
    if (h <= 0.0) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    int d = static_cast<int>(p.size());
    /* dF[a](b,c) = (F_bc(p + h e_a) - F_bc(p - h e_a)) / (2h) */
    std::vector<Eigen::MatrixXd> df(d);
    for (int a = 0; a < d; ++a) {
        Eigen::VectorXd pp = p, pm = p;
        pp[a] += h;
        pm[a] -= h;
        df[a] = (form(pp) - form(pm)) / (2.0 * h);
    }
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                double r = df[a](b, c) + df[b](c, a) + df[c](a, b);
                worst = std::max(worst, std::abs(r));
            }
    return worst;
}

NondegeneracyReport nondegeneracy_scan(const FormField& form,
                                       const std::vector<Eigen::VectorXd>& grid,
                                       double tol) {
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
    NondegeneracyReport rep;
    rep.min_proxy = std::numeric_limits<double>::infinity();
    for (const auto& p : grid) {
        double proxy = std::sqrt(std::abs(form(p).determinant()));
        if (proxy < rep.min_proxy) {
            rep.min_proxy = proxy;
            rep.argmin = p;
        }
    }
    rep.nondegenerate = rep.min_proxy > tol;
    return rep;
}

std::vector<Eigen::VectorXd> uniform_grid(int dim, double extent, int per_axis) {
    if (dim < 1 || per_axis < 1 || extent <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "bad grid parameters");
    std::vector<Eigen::VectorXd> out;
    long long total = 1;
    for (int i = 0; i < dim; ++i) {
        total *= per_axis;
        if (total > 2'000'000)
            throw Error(ErrorCode::InvalidArgument, "grid too large");
    }
    for (long long flat = 0; flat < total; ++flat) {
        Eigen::VectorXd p(dim);
        long long rest = flat;
        for (int a = dim - 1; a >= 0; --a) {
            int step = static_cast<int>(rest % per_axis);
            rest /= per_axis;
            p[a] = per_axis == 1
                       ? 0.0
                       : -extent + 2.0 * extent * step / (per_axis - 1);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace twistdeform
