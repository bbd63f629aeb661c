#include "core/admissibility.hpp"

#include <cmath>
#include <limits>

namespace twistdeform {

namespace {

void check_point_dim(const Multivector& t, Eigen::Index size) {
    if (size != t.algebra()->dim())
        throw Error(ErrorCode::DimensionMismatch, "xi has the wrong dimension");
}

/* S[l][j] = sum_k c_{lj}^k xi_k. */
template <typename Scalar, typename Xi>
std::vector<std::vector<Scalar>> pairing_matrix(const LieAlgebra& g,
                                                const Xi& xi) {
    int n = g.dim();
    std::vector<std::vector<Scalar>> s(n, std::vector<Scalar>(n, Scalar(0)));
    for (const auto& [key, c] : g.tensor()) {
        auto [l, j, k] = key;
        if constexpr (std::is_same_v<Scalar, double>) {
            s[l - 1][j - 1] += c.template convert_to<double>() * xi[k - 1];
        } else {
            s[l - 1][j - 1] += c * xi[k - 1];
        }
    }
    return s;
}

template <typename Scalar>
std::vector<std::vector<Scalar>> t_upper(const Multivector& t) {
    int n = t.algebra()->dim();
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar(0)));
    for (const auto& [idx, c] : t.terms()) {
        Scalar v;
        if constexpr (std::is_same_v<Scalar, double>) {
            v = 2.0 * c.template convert_to<double>();
        } else {
            v = Scalar(2) * c;
        }
        m[idx[0] - 1][idx[1] - 1] = v;
        m[idx[1] - 1][idx[0] - 1] = -v;
    }
    return m;
}

}  // namespace

Eigen::MatrixXd dressing_matrix(const Multivector& t, const Eigen::VectorXd& xi) {
    if (t.grade() != 2)
        throw Error(ErrorCode::InvalidArgument, "twist must have grade 2");
    check_point_dim(t, xi.size());
    const auto& g = *t.algebra();
    int n = g.dim();
    auto t2 = t_upper<double>(t);
    auto s = pairing_matrix<double>(g, xi);
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j) a(i, l) -= t2[i][j] * s[l][j];
    return a;
}

double admissibility_determinant(const Multivector& t,
                                 const Eigen::VectorXd& xi) {
    Eigen::MatrixXd a = dressing_matrix(t, xi);
    double det = a.determinant();
    return (t.algebra()->dim() % 2 == 0) ? det : -det;
}

Rational admissibility_determinant_exact(const Multivector& t,
                                         const std::vector<Rational>& xi) {
    if (t.grade() != 2)
        throw Error(ErrorCode::InvalidArgument, "twist must have grade 2");
    check_point_dim(t, static_cast<Eigen::Index>(xi.size()));
    const auto& g = *t.algebra();
    int n = g.dim();
    auto t2 = t_upper<Rational>(t);
    auto s = pairing_matrix<Rational>(g, xi);
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        a[i][i] = -1;
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j) a[i][l] -= t2[i][j] * s[l][j];
    }
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            Rational factor = a[row][col] / a[col][col];
            for (int cc = col; cc < n; ++cc) a[row][cc] -= factor * a[col][cc];
        }
    }
    return (n % 2 == 0) ? det : Rational(-det);
}

std::vector<Eigen::VectorXd> sphere_samples(double radius, int count) {
    if (radius <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    if (count < 1)
        throw Error(ErrorCode::InvalidArgument, "count must be positive");
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Eigen::VectorXd> out;
    out.reserve(count + 6);
    for (int i = 0; i < count; ++i) {
        double x1 = radius * (1.0 - 2.0 * (i + 0.5) / count);
        double rho = std::sqrt(std::max(0.0, radius * radius - x1 * x1));
        double theta = golden_angle * i;
        Eigen::VectorXd p(3);
        p << x1, rho * std::cos(theta), rho * std::sin(theta);
        out.push_back(std::move(p));
    }
    for (int axis = 0; axis < 3; ++axis) {
        for (double sgn : {1.0, -1.0}) {
            Eigen::VectorXd p = Eigen::VectorXd::Zero(3);
            p[axis] = sgn * radius;
            out.push_back(std::move(p));
        }
    }
    return out;
}

AdmissibilityReport admissible_on(const Multivector& t,
                                  const std::vector<Eigen::VectorXd>& samples,
                                  double tol) {
    if (samples.empty())
        throw Error(ErrorCode::InvalidArgument, "no sample points");
    if (tol <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    AdmissibilityReport rep;
    rep.n_samples = static_cast<int>(samples.size());
    rep.tolerance = tol;
    rep.min_abs = std::numeric_limits<double>::infinity();
    rep.values.reserve(samples.size());
    for (const auto& xi : samples) {
        double f = admissibility_determinant(t, xi);
        rep.values.push_back(f);
        if (std::abs(f) < rep.min_abs) {
            rep.min_abs = std::abs(f);
            rep.argmin = xi;
        }
    }
    rep.admissible = rep.min_abs > tol;
    return rep;
}

Multivector half_wedge(const AlgebraPtr& g, const SparseVector& x,
                       const SparseVector& y) {
    Multivector t =
        wedge(Multivector::from_sparse(g, x), Multivector::from_sparse(g, y));
    t *= Rational(1, 2);
    return t;
}

double affine_form_value(const AlgebraPtr& g, const SparseVector& x,
                         const SparseVector& y, const Rational& a,
                         const Rational& b, const Eigen::VectorXd& xi) {
    if (xi.size() != g->dim())
        throw Error(ErrorCode::DimensionMismatch, "xi has the wrong dimension");
    SparseVector want;
    for (const auto& [k, v] : x) {
        Rational& acc = want[k];
        acc += a * v;
        if (acc == 0) want.erase(k);
    }
    for (const auto& [k, v] : y) {
        Rational& acc = want[k];
        acc += b * v;
        if (acc == 0) want.erase(k);
    }
    if (g->bracket(x, y) != want)
        throw Error(ErrorCode::InvalidArgument, "[X,Y] != aX + bY");
    double val = 1.0;
    for (const auto& [k, v] : want)
        val += v.convert_to<double>() * xi[k - 1];
    return val;
}

bool affine_case_check(const AlgebraPtr& g, const SparseVector& x,
                       const SparseVector& y, const Rational& a,
                       const Rational& b, const Eigen::VectorXd& xi,
                       double tol) {
    if (!(tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    return std::abs(affine_form_value(g, x, y, a, b, xi)) > tol;
}

}  // namespace twistdeform
