#include "twistdeform.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include <json.hpp>

#include "core/admissibility.hpp"
#include "core/chart_geometry.hpp"
#include "core/error.hpp"
#include "core/grassmann.hpp"
#include "core/lie_algebra.hpp"
#include "core/multivector.hpp"
#include "core/twist_parse.hpp"
#include "core/volume.hpp"

using Json = nlohmann::ordered_json;
namespace td = twistdeform;

struct td_algebra {
    td::AlgebraPtr ptr;
};

struct td_twist {
    td::Multivector mv;
};

struct td_action {
    td::ActionPtr ptr;
};

struct td_deformation {
    td::Deformation d;
};

namespace {

thread_local std::string g_last_error;

td_status fail(td_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

td_status map_code(td::ErrorCode code) {
    switch (code) {
        case td::ErrorCode::InvalidArgument: return TD_EINVAL;
        case td::ErrorCode::DimensionMismatch: return TD_EDIM;
        case td::ErrorCode::Parse: return TD_EPARSE;
        case td::ErrorCode::Singular: return TD_ESINGULAR;
        case td::ErrorCode::Domain: return TD_EDOMAIN;
        case td::ErrorCode::Numeric: return TD_ENUMERIC;
    }
    return TD_EUNKNOWN;
}

/* Runs fn inside the exception wall; fn performs all output writes. */
template <typename Fn>
td_status wrap(Fn&& fn) {
    try {
        fn();
        return TD_OK;
    } catch (const td::Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(TD_EUNKNOWN, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

double* dup_doubles(const std::vector<double>& v) {
    double* p = static_cast<double*>(std::malloc(v.size() * sizeof(double)));
    if (!p && !v.empty()) throw std::bad_alloc();
    std::memcpy(p, v.data(), v.size() * sizeof(double));
    return p;
}

void require(bool ok, const char* message) {
    if (!ok) throw td::Error(td::ErrorCode::InvalidArgument, message);
}

Eigen::VectorXd to_vector(const double* data, int len, const char* name) {
    require(data != nullptr, name);
    require(len >= 0, "negative length");
    Eigen::VectorXd v(len);
    for (int i = 0; i < len; ++i) v[i] = data[i];
    return v;
}

void write_matrix(const Eigen::MatrixXd& m, double* out) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
}

using FormMember = Eigen::MatrixXd (td::Deformation::*)(const Eigen::VectorXd&)
    const;

td_status eval_matrix(const td_deformation* d, const double* p, int len,
                      double* out, FormMember member) {
    return wrap([&] {
        require(d != nullptr, "null deformation");
        require(out != nullptr, "null output");
        Eigen::VectorXd point = to_vector(p, len, "null point");
        write_matrix((d->d.*member)(point), out);
    });
}

}  // namespace

extern "C" {

const char* td_version(void) { return "1.0.0"; }

const char* td_last_error(void) { return g_last_error.c_str(); }

void td_string_free(char* s) { std::free(s); }

void td_doubles_free(double* p) { std::free(p); }

/* ---- Lie algebras ---- */

td_status td_algebra_su(int m, td_algebra** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new td_algebra{td::LieAlgebra::su(m)};
    });
}

td_status td_algebra_abelian(int n, td_algebra** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new td_algebra{td::LieAlgebra::abelian(n)};
    });
}

td_status td_algebra_from_json(const char* text, td_algebra** out) {
    return wrap([&] {
        require(text != nullptr, "null text");
        require(out != nullptr, "null output handle");
        *out = new td_algebra{td::LieAlgebra::from_json(text)};
    });
}

void td_algebra_free(td_algebra* a) { delete a; }

int td_algebra_dim(const td_algebra* a) { return a ? a->ptr->dim() : 0; }

const char* td_algebra_name(const td_algebra* a) {
    return a ? a->ptr->name().c_str() : "";
}

const char* td_algebra_label(const td_algebra* a, int i) {
    if (!a || i < 1 || i > a->ptr->dim()) return "";
    return a->ptr->label(i).c_str();
}

int td_algebra_index_of(const td_algebra* a, const char* label) {
    if (!a || !label) return 0;
    return a->ptr->index_of(label);
}

td_status td_algebra_to_json(const td_algebra* a, char** out) {
    return wrap([&] {
        require(a != nullptr, "null algebra");
        require(out != nullptr, "null output");
        *out = dup_string(a->ptr->to_json());
    });
}

td_status td_algebra_validate(const td_algebra* a, int* ok, char** report_json) {
    return wrap([&] {
        require(a != nullptr, "null algebra");
        require(ok != nullptr, "null output");
        td::ValidationReport rep = a->ptr->validate();
        *ok = rep.ok() ? 1 : 0;
        if (report_json) {
            Json j;
            j["antisymmetry_ok"] = rep.antisymmetry_ok;
            j["jacobi_ok"] = rep.jacobi_ok;
            j["antisymmetry_violation"] = rep.antisymmetry_violation;
            j["jacobi_violation"] = rep.jacobi_violation;
            j["max_antisymmetry_residual"] =
                td::rational_to_string(rep.max_antisymmetry_residual);
            j["max_jacobi_residual"] =
                td::rational_to_string(rep.max_jacobi_residual);
            *report_json = dup_string(j.dump());
        }
    });
}

/* ---- Twists ---- */

td_status td_twist_new(const td_algebra* a, td_twist** out) {
    return wrap([&] {
        require(a != nullptr, "null algebra");
        require(out != nullptr, "null output handle");
        *out = new td_twist{td::Multivector::zero(a->ptr, 2)};
    });
}

void td_twist_free(td_twist* t) { delete t; }

td_status td_twist_add(td_twist* t, int i, int j, const char* coeff) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        require(coeff != nullptr, "null coefficient");
        t->mv.add_term({i, j}, td::rational_from_string(coeff));
    });
}

td_status td_twist_parse(const td_algebra* a, const char* spec,
                         td_twist** out) {
    return wrap([&] {
        require(a != nullptr, "null algebra");
        require(spec != nullptr, "null spec");
        require(out != nullptr, "null output handle");
        *out = new td_twist{td::parse_twist(a->ptr, spec)};
    });
}

td_status td_twist_term_count(const td_twist* t, int* out) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        require(out != nullptr, "null output");
        *out = t->mv.term_count();
    });
}

td_status td_twist_to_string(const td_twist* t, char** out) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        require(out != nullptr, "null output");
        *out = dup_string(t->mv.to_string());
    });
}

td_status td_twist_to_json(const td_twist* t, char** out) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        require(out != nullptr, "null output");
        *out = dup_string(t->mv.to_json());
    });
}

td_status td_twist_rmatrix(const td_twist* t, int* is_r_matrix,
                           int* square_zero, int* n_terms_square) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        td::RMatrixReport rep = td::r_matrix_check(t->mv);
        if (is_r_matrix) *is_r_matrix = rep.is_r_matrix ? 1 : 0;
        if (square_zero) *square_zero = rep.square.is_zero() ? 1 : 0;
        if (n_terms_square) *n_terms_square = rep.square.term_count();
    });
}

td_status td_twist_determinant(const td_twist* t, const double* xi, int len,
                               double* out) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        require(out != nullptr, "null output");
        Eigen::VectorXd v = to_vector(xi, len, "null xi");
        *out = td::admissibility_determinant(t->mv, v);
    });
}

td_status td_sphere_samples(double radius, int count, double** out,
                            int* n_points) {
    return wrap([&] {
        require(out != nullptr, "null output");
        auto samples = td::sphere_samples(radius, count);
        std::vector<double> flat;
        flat.reserve(samples.size() * 3);
        for (const auto& s : samples)
            for (int k = 0; k < 3; ++k) flat.push_back(s[k]);
        *out = dup_doubles(flat);
        if (n_points) *n_points = static_cast<int>(samples.size());
    });
}

td_status td_twist_admissible_sphere(const td_twist* t, double radius,
                                     int samples, double tol, int* verdict,
                                     double* min_abs, double argmin[3],
                                     char** report_json) {
    return wrap([&] {
        require(t != nullptr, "null twist");
        if (t->mv.algebra()->dim() != 3)
            throw td::Error(td::ErrorCode::DimensionMismatch,
                            "sphere scan needs a 3-dimensional algebra");
        auto grid = td::sphere_samples(radius, samples);
        td::AdmissibilityReport rep = td::admissible_on(t->mv, grid, tol);
        if (verdict) *verdict = rep.admissible ? 1 : 0;
        if (min_abs) *min_abs = rep.min_abs;
        if (argmin)
            for (int k = 0; k < 3; ++k) argmin[k] = rep.argmin[k];
        if (report_json) {
            Json j;
            j["twist"] = t->mv.to_string();
            j["n_samples"] = rep.n_samples;
            j["min_abs"] = rep.min_abs;
            j["argmin"] = {rep.argmin[0], rep.argmin[1], rep.argmin[2]};
            j["verdict"] = rep.admissible;
            j["tolerance"] = rep.tolerance;
            *report_json = dup_string(j.dump());
        }
    });
}

/* ---- Chart actions ---- */

td_status td_action_su(int n, td_action** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new td_action{std::make_shared<td::SuCpAction>(n)};
    });
}

td_status td_action_torus(int n, td_action** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new td_action{std::make_shared<td::TorusCpAction>(n)};
    });
}

void td_action_free(td_action* a) { delete a; }

int td_action_chart_n(const td_action* a) { return a ? a->ptr->chart_n() : 0; }

td_status td_action_algebra(const td_action* a, td_algebra** out) {
    return wrap([&] {
        require(a != nullptr, "null action");
        require(out != nullptr, "null output handle");
        *out = new td_algebra{a->ptr->algebra()};
    });
}

td_status td_action_field(const td_action* a, int index, const double* p,
                          int len, double* v) {
    return wrap([&] {
        require(a != nullptr, "null action");
        require(v != nullptr, "null output");
        Eigen::VectorXd point = to_vector(p, len, "null point");
        Eigen::VectorXd field = a->ptr->fundamental_field(index, point);
        for (int k = 0; k < field.size(); ++k) v[k] = field[k];
    });
}

td_status td_action_moment(const td_action* a, const double* p, int len,
                           double* mu) {
    return wrap([&] {
        require(a != nullptr, "null action");
        require(mu != nullptr, "null output");
        Eigen::VectorXd point = to_vector(p, len, "null point");
        Eigen::VectorXd m = a->ptr->moment(point);
        for (int k = 0; k < m.size(); ++k) mu[k] = m[k];
    });
}

/* ---- Deformation pipeline ---- */

td_status td_deformation_new(const td_action* act, const td_twist* t,
                             td_deformation** out) {
    return wrap([&] {
        require(act != nullptr, "null action");
        require(t != nullptr, "null twist");
        require(out != nullptr, "null output handle");
        *out = new td_deformation{td::Deformation(act->ptr, t->mv)};
    });
}

void td_deformation_free(td_deformation* d) { delete d; }

td_status td_deformation_base_form(const td_deformation* d, const double* p,
                                   int len, double* out) {
    return eval_matrix(d, p, len, out, &td::Deformation::base_form);
}

td_status td_deformation_base_poisson(const td_deformation* d, const double* p,
                                      int len, double* out) {
    return eval_matrix(d, p, len, out, &td::Deformation::base_poisson);
}

td_status td_deformation_twist_field(const td_deformation* d, const double* p,
                                     int len, double* out) {
    return eval_matrix(d, p, len, out, &td::Deformation::twist_field_at);
}

td_status td_deformation_poisson(const td_deformation* d, const double* p,
                                 int len, double* out) {
    return eval_matrix(d, p, len, out, &td::Deformation::deformed_poisson);
}

td_status td_deformation_form(const td_deformation* d, const double* p,
                              int len, double* out) {
    return eval_matrix(d, p, len, out, &td::Deformation::deformed_form);
}

td_status td_deformation_closedness(const td_deformation* d, const double* p,
                                    int len, double h, double* out) {
    return wrap([&] {
        require(d != nullptr, "null deformation");
        require(out != nullptr, "null output");
        Eigen::VectorXd point = to_vector(p, len, "null point");
        td::FormField field = [d](const Eigen::VectorXd& q) {
            return d->d.deformed_form(q);
        };
        *out = td::closedness_residual(field, point, h);
    });
}

td_status td_uniform_grid(int dim, double extent, int per_axis, double** out,
                          int* n_points) {
    return wrap([&] {
        require(out != nullptr, "null output");
        auto grid = td::uniform_grid(dim, extent, per_axis);
        std::vector<double> flat;
        flat.reserve(grid.size() * dim);
        for (const auto& p : grid)
            for (int k = 0; k < dim; ++k) flat.push_back(p[k]);
        *out = dup_doubles(flat);
        if (n_points) *n_points = static_cast<int>(grid.size());
    });
}

/* ---- Volume ---- */

td_status td_volume_closed(double lambda, double* out) {
    return wrap([&] {
        require(out != nullptr, "null output");
        *out = td::closed_volume(lambda);
    });
}

td_status td_volume_k(double lambda, double* out) {
    return wrap([&] {
        require(out != nullptr, "null output");
        *out = td::k_lambda(lambda);
    });
}

td_status td_volume_numeric(double lambda, long long node_budget,
                            double* numeric, double* closed, double* k,
                            double* rel_error, long long* nodes) {
    return wrap([&] {
        td::VolumeResult res = td::numeric_volume(lambda, node_budget);
        if (numeric) *numeric = res.numeric;
        if (closed) *closed = res.closed;
        if (k) *k = res.k;
        if (rel_error) *rel_error = res.rel_error;
        if (nodes) *nodes = res.nodes;
    });
}

/* ---- Grassmannian ---- */

td_status td_grassmann_verify(int n, int r, int* is_r_matrix,
                              int* square_nonzero, int* quotient_vanishes,
                              int* n_terms_square, char** quotient_norm) {
    return wrap([&] {
        td::GrassmannReport rep = td::grassmann_verify(n, r);
        if (is_r_matrix) *is_r_matrix = rep.is_r_matrix ? 1 : 0;
        if (square_nonzero) *square_nonzero = rep.square_nonzero ? 1 : 0;
        if (quotient_vanishes) *quotient_vanishes = rep.quotient_vanishes ? 1 : 0;
        if (n_terms_square) *n_terms_square = rep.n_terms_square;
        if (quotient_norm) *quotient_norm = dup_string(rep.quotient_norm);
    });
}

}  /* extern "C" */
