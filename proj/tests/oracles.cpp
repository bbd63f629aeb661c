#include "oracles.hpp"

#include "core/chart_geometry.hpp"

namespace oracles {

using twistdeform::wedge;

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
}

SparseVector random_sparse(const AlgebraPtr& g, std::mt19937& rng) {
    SparseVector x;
    for (int i = 1; i <= g->dim(); ++i) {
        Rational c = random_rational(rng);
        if (c != 0) x[i] = c;
    }
    return x;
}

Multivector random_bivector(const AlgebraPtr& g, std::mt19937& rng) {
    Multivector t(g, 2);
    for (int i = 1; i <= g->dim(); ++i)
        for (int j = i + 1; j <= g->dim(); ++j)
            t.add_term({i, j}, random_rational(rng));
    return t;
}

Multivector schouten_square_reference(const Multivector& t) {
    const AlgebraPtr& g = t.algebra();
    auto basis_1 = [&](int i) { return Multivector::basis_vector(g, i); };
    auto bracket_1 = [&](int i, int j) {
        return Multivector::from_sparse(g, g->bracket_basis(i, j));
    };
    Multivector out(g, 3);
    for (const auto& [ta, ca] : t.terms()) {
        for (const auto& [tb, cb] : t.terms()) {
            int i = ta[0], j = ta[1], k = tb[0], l = tb[1];
            Multivector s =
                wedge(bracket_1(i, k), wedge(basis_1(j), basis_1(l))) -
                wedge(bracket_1(i, l), wedge(basis_1(j), basis_1(k))) -
                wedge(bracket_1(j, k), wedge(basis_1(i), basis_1(l))) +
                wedge(bracket_1(j, l), wedge(basis_1(i), basis_1(k)));
            s *= Rational(-1) * ca * cb;
            out += s;
        }
    }
    return out;
}

double cp1_deformed_density(double lambda, double x, double y) {
    double r2 = x * x + y * y;
    return 1.0 /
           ((1.0 + lambda / 2.0) * r2 * r2 + 2.0 * r2 + (1.0 - lambda / 2.0));
}

Eigen::MatrixXd toric_deformed_correction(const Eigen::MatrixXd& lam,
                                          const Eigen::VectorXd& p) {
    int n = static_cast<int>(lam.rows());
    double d = 1.0 + p.squaredNorm();
    double d3 = d * d * d;
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            double c = lam(i - 1, j - 1) / d3;
            double xi = p[2 * i - 2], yi = p[2 * i - 1];
            double xj = p[2 * j - 2], yj = p[2 * j - 1];
            corr(2 * i - 2, 2 * j - 2) += c * xi * xj;
            corr(2 * i - 2, 2 * j - 1) += c * xi * yj;
            corr(2 * i - 1, 2 * j - 2) += c * yi * xj;
            corr(2 * i - 1, 2 * j - 1) += c * yi * yj;
        }
    }
    return corr - corr.transpose().eval();
}

Eigen::MatrixXd toric_dmu_correction(const Eigen::MatrixXd& lam,
                                     const Eigen::VectorXd& p) {
    int n = static_cast<int>(lam.rows());
    double d = 1.0 + p.squaredNorm();
    std::vector<Eigen::VectorXd> dmu(n);
    for (int i = 0; i < n; ++i) {
        double ri2 = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
        Eigen::VectorXd g = (ri2 / (d * d)) * p;
        g[2 * i] -= p[2 * i] / d;
        g[2 * i + 1] -= p[2 * i + 1] / d;
        dmu[i] = g;
    }
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            corr += lam(i, j) *
                    (dmu[i] * dmu[j].transpose() - dmu[j] * dmu[i].transpose());
    return corr;
}

Eigen::VectorXd su_expand_numeric(int m, const Eigen::MatrixXcd& a) {
    int pairs = m * (m - 1) / 2;
    Eigen::VectorXd coeffs(m * m - 1);
    int pos = 0;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            coeffs[pos] = a(i - 1, j - 1).real();
            coeffs[pairs + pos] = a(i - 1, j - 1).imag();
            ++pos;
        }
    for (int k = 1; k < m; ++k) coeffs[2 * pairs + k - 1] = a(k - 1, k - 1).imag();
    return coeffs;
}

Eigen::MatrixXcd su_matrix_numeric(int m, const Eigen::VectorXd& coeffs) {
    auto basis = twistdeform::su_basis_elements(m);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k < static_cast<int>(basis.size()); ++k)
        a += coeffs[k] * twistdeform::su_basis_matrix(m, basis[k]);
    return a;
}

Eigen::MatrixXd cp2_deformed_correction(double lambda,
                                        const Eigen::VectorXd& p) {
    double x1 = p[0], y1 = p[1], x2 = p[2], y2 = p[3];
    double d = 1.0 + p.squaredNorm();
    double c = lambda / (d * d * d);
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(4, 4);
    corr(0, 1) = c * (x1 * y2 - x2 * y1);
    corr(0, 2) = c * (x1 * x1 - x2 * x2);
    corr(0, 3) = c * (x1 * y1 - x2 * y2);
    corr(1, 2) = c * (x1 * y1 - x2 * y2);
    corr(1, 3) = c * (y1 * y1 - y2 * y2);
    corr(2, 3) = -c * (x1 * y2 - x2 * y1);
    return corr - corr.transpose().eval();
}

}  // namespace oracles
