#ifndef TWISTDEFORM_H
#define TWISTDEFORM_H

/* C API for the twist-deformation toolkit.
 *
 * Conventions:
 *   - Every fallible call returns td_status; TD_OK is 0.  On failure the
 *     thread-local message from td_last_error() describes the fault and
 *     no output parameter is written.
 *   - Handles are opaque; each td_*_free accepts NULL.
 *   - Strings returned through a char** are owned by the caller and must
 *     be released with td_string_free; double arrays returned through a
 *     double** with td_doubles_free.
 *   - Basis indices are 1-based, matching the algebra's label order.
 *   - Chart points are real vectors (x1, y1, ..., xn, yn) of length 2n;
 *     matrices are returned row-major.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_EINVAL = 1,    /* invalid argument */
    TD_EDIM = 2,      /* dimension mismatch */
    TD_EPARSE = 3,    /* malformed input text */
    TD_ESINGULAR = 4, /* matrix not invertible at the given point */
    TD_EDOMAIN = 5,   /* parameter outside the mathematical domain */
    TD_ENUMERIC = 6,  /* convergence budget exhausted */
    TD_EUNKNOWN = 7
} td_status;

typedef struct td_algebra td_algebra;
typedef struct td_twist td_twist;
typedef struct td_action td_action;
typedef struct td_deformation td_deformation;

/* Semantic version of the library, e.g. "1.0.0".  Static storage. */
const char* td_version(void);

/* Message of the most recent failing call on this thread ("" initially).
 * Valid until the next failing call on the same thread. */
const char* td_last_error(void);

void td_string_free(char* s);
void td_doubles_free(double* p);

/* ---- Lie algebras ---- */

/* su(m), m >= 2: basis X_ij (i<j), Y_ij (i<j), Z_1..Z_{m-1}. */
td_status td_algebra_su(int m, td_algebra** out);
td_status td_algebra_abelian(int n, td_algebra** out);
/* JSON {"dim": n, "labels": [...], "c": [[i,j,k,"p/q"], ...]}, i < j. */
td_status td_algebra_from_json(const char* text, td_algebra** out);
void td_algebra_free(td_algebra* a);

int td_algebra_dim(const td_algebra* a);
/* Static within the algebra's lifetime. */
const char* td_algebra_name(const td_algebra* a);
const char* td_algebra_label(const td_algebra* a, int i);
/* 1-based index, 0 when the label is unknown. */
int td_algebra_index_of(const td_algebra* a, const char* label);
td_status td_algebra_to_json(const td_algebra* a, char** out);
/* ok = antisymmetry and Jacobi both hold; report_json (optional) carries
 * the residuals and first violating triples. */
td_status td_algebra_validate(const td_algebra* a, int* ok, char** report_json);

/* ---- Twists (bivectors with exact rational coefficients) ---- */

td_status td_twist_new(const td_algebra* a, td_twist** out);
void td_twist_free(td_twist* t);
/* Adds coeff * e_i ^ e_j; coeff is a rational or decimal literal. */
td_status td_twist_add(td_twist* t, int i, int j, const char* coeff);
/* Twist mini-language, comma/space-separated clauses: "lij=v" (dot form
 * "li.j=v" for multi-digit indices) adds (v/2) e_i ^ e_j, matching
 * t = (1/2) sum lambda_ij e_i ^ e_j; "A^B:c" adds c * A ^ B with A, B
 * basis labels or integer combinations like "(2Z1-Z2)"; "0" is the zero
 * twist.  Values are rational or decimal literals. */
td_status td_twist_parse(const td_algebra* a, const char* spec,
                         td_twist** out);
td_status td_twist_term_count(const td_twist* t, int* out);
td_status td_twist_to_string(const td_twist* t, char** out);
td_status td_twist_to_json(const td_twist* t, char** out);

/* Schouten square and its ad-invariance, all exact. */
td_status td_twist_rmatrix(const td_twist* t, int* is_r_matrix,
                           int* square_zero, int* n_terms_square);

/* f_t(xi) = (-1)^n det A(t, xi); xi has length dim. */
td_status td_twist_determinant(const td_twist* t, const double* xi, int len,
                               double* out);

/* Deterministic covering of the radius-r sphere in R^3: `count` spiral
 * points plus the six axis points; *out has (count+6)*3 entries. */
td_status td_sphere_samples(double radius, int count, double** out,
                            int* n_points);

/* Scans |f_t| over the sphere covering (algebra dim must be 3).
 * verdict = 1 iff the minimum exceeds tol.  report_json (optional):
 * {twist, n_samples, min_abs, argmin, verdict, tolerance}. */
td_status td_twist_admissible_sphere(const td_twist* t, double radius,
                                     int samples, double tol, int* verdict,
                                     double* min_abs, double argmin[3],
                                     char** report_json);

/* ---- Chart actions on CP^n ---- */

/* SU(n+1) acting projectively; the algebra is su(n+1). */
td_status td_action_su(int n, td_action** out);
/* Diagonal torus; the algebra is abelian(n). */
td_status td_action_torus(int n, td_action** out);
void td_action_free(td_action* a);

int td_action_chart_n(const td_action* a);
/* Fresh algebra handle (caller frees) sharing the underlying structure. */
td_status td_action_algebra(const td_action* a, td_algebra** out);
/* Fundamental field of basis element `index` at p; v has length 2n. */
td_status td_action_field(const td_action* a, int index, const double* p,
                          int len, double* v);
/* Moment map at p; mu has length dim(algebra). */
td_status td_action_moment(const td_action* a, const double* p, int len,
                           double* mu);

/* ---- Deformation pipeline ---- */

/* Twist must live over the action's algebra. */
td_status td_deformation_new(const td_action* act, const td_twist* t,
                             td_deformation** out);
void td_deformation_free(td_deformation* d);

/* Each evaluator writes a 2n x 2n row-major matrix (len = point length,
 * must equal 2n; out has (2n)^2 entries). */
td_status td_deformation_base_form(const td_deformation* d, const double* p,
                                   int len, double* out);
td_status td_deformation_base_poisson(const td_deformation* d, const double* p,
                                      int len, double* out);
td_status td_deformation_twist_field(const td_deformation* d, const double* p,
                                     int len, double* out);
td_status td_deformation_poisson(const td_deformation* d, const double* p,
                                 int len, double* out);
td_status td_deformation_form(const td_deformation* d, const double* p,
                              int len, double* out);
/* Finite-difference d(omega_t) residual at p, central step h. */
td_status td_deformation_closedness(const td_deformation* d, const double* p,
                                    int len, double h, double* out);

/* Row-major lattice on [-extent, extent]^dim, per_axis points per axis;
 * *out has per_axis^dim * dim entries. */
td_status td_uniform_grid(int dim, double extent, int per_axis, double** out,
                          int* n_points);

/* ---- Deformed CP^1 volume ---- */

/* pi at 0, (pi/lambda) log|(2+lambda)/(2-lambda)| otherwise; |lambda| != 2. */
td_status td_volume_closed(double lambda, double* out);
/* closed / pi. */
td_status td_volume_k(double lambda, double* out);
/* Adaptive radial quadrature of the deformed density; |lambda| < 2.
 * Any output pointer may be NULL. */
td_status td_volume_numeric(double lambda, long long node_budget,
                            double* numeric, double* closed, double* k,
                            double* rel_error, long long* nodes);

/* ---- Grassmannian r-matrix check ---- */

/* Exact verification for su(n) and the (r, n-r) splitting; quotient_norm
 * (optional) is the exact sup-norm of the projected square as "p/q". */
td_status td_grassmann_verify(int n, int r, int* is_r_matrix,
                              int* square_nonzero, int* quotient_vanishes,
                              int* n_terms_square, char** quotient_norm);

#ifdef __cplusplus
}
#endif

#endif /* TWISTDEFORM_H */
