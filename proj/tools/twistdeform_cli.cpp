#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistdeform.h"

using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

/* Thrown for config/runtime faults; lands on stderr as a structured
 * diagnostic naming the offending field. */
struct CliError {
    std::string field;
    std::string message;
    td_status status = TD_EINVAL;
};

[[noreturn]] void fail(const std::string& field, const std::string& message,
                       td_status status = TD_EINVAL) {
    throw CliError{field, message, status};
}

/* Checks a C API call attributed to a config field. */
void call(td_status rc, const std::string& field) {
    if (rc != TD_OK) fail(field, td_last_error(), rc);
}

/* RAII for the opaque handles. */
using AlgebraHandle = std::unique_ptr<td_algebra, decltype(&td_algebra_free)>;
using TwistHandle = std::unique_ptr<td_twist, decltype(&td_twist_free)>;
using ActionHandle = std::unique_ptr<td_action, decltype(&td_action_free)>;
using DeformationHandle =
    std::unique_ptr<td_deformation, decltype(&td_deformation_free)>;

std::string take_string(char* s) {
    std::string out = s ? s : "";
    td_string_free(s);
    return out;
}

/* Shortest round-trip formatting, shared by JSON and CSV output. */
std::string fmt(double x) { return Json(x).dump(); }

AlgebraHandle load_algebra(const std::string& spec) {
    td_algebra* a = nullptr;
    std::smatch m;
    if (std::regex_match(spec, m, std::regex("su([0-9]+)"))) {
        call(td_algebra_su(std::stoi(m[1]), &a), "--algebra");
    } else if (std::regex_match(spec, m, std::regex("abelian([0-9]+)"))) {
        call(td_algebra_abelian(std::stoi(m[1]), &a), "--algebra");
    } else {
        std::ifstream in(spec);
        if (!in) fail("--algebra", "cannot open '" + spec + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        call(td_algebra_from_json(buf.str().c_str(), &a), "--algebra");
    }
    return AlgebraHandle(a, td_algebra_free);
}

TwistHandle load_twist(const td_algebra* g, const std::string& spec) {
    td_twist* t = nullptr;
    call(td_twist_parse(g, spec.c_str(), &t), "--twist");
    return TwistHandle(t, td_twist_free);
}

/* Relative output paths are placed under TWISTDEFORM_OUTPUT_DIR when set. */
std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    const char* dir = std::getenv("TWISTDEFORM_OUTPUT_DIR");
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    return p;
}

void write_text(const std::string& path, const std::string& text,
                const std::string& field) {
    auto full = resolve_out(path);
    std::ofstream out(full);
    if (!out) fail(field, "cannot write '" + full.string() + "'");
    out << text;
}

/* Report skeleton; every command embeds its config and the tool version. */
Json report_base(const std::string& command, Json config) {
    Json j;
    j["version"] = td_version();
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

void emit_report(const Json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text, "--out");
}

struct SphereImage {
    double radius = 0.5;
};

SphereImage parse_image(const std::string& spec) {
    std::smatch m;
    if (!std::regex_match(spec, m,
                          std::regex("sphere:([0-9.eE+-]+)")))
        fail("--image", "expected 'sphere:RADIUS', got '" + spec + "'");
    SphereImage img;
    try {
        img.radius = std::stod(m[1]);
    } catch (const std::exception&) {
        fail("--image", "bad radius in '" + spec + "'");
    }
    if (!(img.radius > 0)) fail("--image", "radius must be positive");
    return img;
}

std::vector<double> parse_point(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail("--point", "bad coordinate '" + item + "'");
        }
    }
    if (out.empty()) fail("--point", "empty point");
    return out;
}

/* ---- validate-algebra ---- */

int run_validate(const std::string& algebra, const std::string& out_path) {
    auto g = load_algebra(algebra);
    int ok = 0;
    char* rep = nullptr;
    call(td_algebra_validate(g.get(), &ok, &rep), "--algebra");

    Json j = report_base("validate-algebra", {{"algebra", algebra}});
    j["dim"] = td_algebra_dim(g.get());
    j["name"] = td_algebra_name(g.get());
    j["ok"] = ok == 1;
    j["report"] = Json::parse(take_string(rep));
    emit_report(j, out_path);
    return ok == 1 ? kExitTrue : kExitFalse;
}

/* ---- rmatrix ---- */

int run_rmatrix(const std::string& algebra, const std::string& twist,
                const std::string& out_path) {
    auto g = load_algebra(algebra);
    auto t = load_twist(g.get(), twist);
    int is_r = 0, square_zero = 0, n_terms = 0;
    call(td_twist_rmatrix(t.get(), &is_r, &square_zero, &n_terms), "--twist");

    char* text = nullptr;
    call(td_twist_to_string(t.get(), &text), "--twist");
    Json j = report_base("rmatrix", {{"algebra", algebra}, {"twist", twist}});
    j["twist_normalized"] = take_string(text);
    j["is_r_matrix"] = is_r == 1;
    j["square_zero"] = square_zero == 1;
    j["n_terms_square"] = n_terms;
    emit_report(j, out_path);
    return is_r == 1 ? kExitTrue : kExitFalse;
}

/* ---- admissible ---- */

int run_admissible(const std::string& algebra, const std::string& twist,
                   const std::string& image, int samples, double tol,
                   const std::string& out_path, const std::string& csv_path) {
    auto g = load_algebra(algebra);
    auto t = load_twist(g.get(), twist);
    SphereImage img = parse_image(image);
    if (samples < 1) fail("--samples", "sample count must be >= 1");
    if (!(tol > 0)) fail("--tol", "tolerance must be positive");

    int verdict = 0;
    double min_abs = 0.0;
    double argmin[3] = {0, 0, 0};
    char* rep = nullptr;
    call(td_twist_admissible_sphere(t.get(), img.radius, samples, tol,
                                    &verdict, &min_abs, argmin, &rep),
         "--twist");

    Json j = report_base("admissible", {{"algebra", algebra},
                                        {"twist", twist},
                                        {"image", image},
                                        {"samples", samples},
                                        {"tolerance", tol}});
    j["report"] = Json::parse(take_string(rep));
    emit_report(j, out_path);

    if (!csv_path.empty()) {
        double* pts = nullptr;
        int n_pts = 0;
        call(td_sphere_samples(img.radius, samples, &pts, &n_pts), "--image");
        std::ostringstream csv;
        csv << "xi1,xi2,xi3,f\n";
        for (int i = 0; i < n_pts; ++i) {
            double f = 0.0;
            call(td_twist_determinant(t.get(), pts + 3 * i, 3, &f), "--twist");
            csv << fmt(pts[3 * i]) << ',' << fmt(pts[3 * i + 1]) << ','
                << fmt(pts[3 * i + 2]) << ',' << fmt(f) << '\n';
        }
        td_doubles_free(pts);
        write_text(csv_path, csv.str(), "--csv");
    }
    return verdict == 1 ? kExitTrue : kExitFalse;
}

/* ---- deform ---- */

ActionHandle make_action(const std::string& kind, int chart_n) {
    td_action* act = nullptr;
    if (kind == "su")
        call(td_action_su(chart_n, &act), "--chart-n");
    else if (kind == "torus")
        call(td_action_torus(chart_n, &act), "--chart-n");
    else
        fail("--action", "expected 'su' or 'torus', got '" + kind + "'");
    return ActionHandle(act, td_action_free);
}

int run_deform(const std::string& action, int chart_n,
               const std::string& twist, const std::string& grid_spec,
               const std::string& point_spec, double closedness_tol,
               const std::string& out_path, const std::string& csv_path) {
    auto act = make_action(action, chart_n);
    td_algebra* g_raw = nullptr;
    call(td_action_algebra(act.get(), &g_raw), "--action");
    AlgebraHandle g(g_raw, td_algebra_free);
    auto t = load_twist(g.get(), twist);
    td_deformation* d_raw = nullptr;
    call(td_deformation_new(act.get(), t.get(), &d_raw), "--twist");
    DeformationHandle d(d_raw, td_deformation_free);

    const int dim = 2 * chart_n;
    Json j = report_base("deform", {{"action", action},
                                    {"chart_n", chart_n},
                                    {"twist", twist},
                                    {"grid", grid_spec},
                                    {"point", point_spec},
                                    {"closedness_tol", closedness_tol}});

    std::vector<std::vector<double>> points;
    if (!point_spec.empty()) {
        auto p = parse_point(point_spec);
        if (static_cast<int>(p.size()) != dim)
            fail("--point", "expected " + std::to_string(dim) +
                                " coordinates, got " +
                                std::to_string(p.size()));
        points.push_back(std::move(p));
    } else {
        std::smatch m;
        if (!std::regex_match(grid_spec, m,
                              std::regex("([0-9.eE+-]+):([0-9]+)")))
            fail("--grid", "expected 'EXTENT:PER_AXIS', got '" + grid_spec +
                               "'");
        double extent = 0.0;
        try {
            extent = std::stod(m[1]);
        } catch (const std::exception&) {
            fail("--grid", "bad extent in '" + grid_spec + "'");
        }
        int per_axis = std::stoi(m[2]);
        double* flat = nullptr;
        int n_pts = 0;
        call(td_uniform_grid(dim, extent, per_axis, &flat, &n_pts), "--grid");
        points.reserve(n_pts);
        for (int i = 0; i < n_pts; ++i)
            points.emplace_back(flat + i * dim, flat + (i + 1) * dim);
        td_doubles_free(flat);
    }

    std::ostringstream csv;
    for (int k = 1; k <= chart_n; ++k)
        csv << (k > 1 ? "," : "") << "x" << k << ",y" << k;
    for (int a = 1; a <= dim; ++a)
        for (int b = a + 1; b <= dim; ++b) csv << ",o_" << a << "_" << b;
    csv << "\n";

    std::vector<double> form(dim * dim);
    int n_singular = 0;
    double max_residual = 0.0;
    for (const auto& p : points) {
        td_status rc = td_deformation_form(d.get(), p.data(),
                                           static_cast<int>(p.size()),
                                           form.data());
        if (rc == TD_ESINGULAR) {
            ++n_singular;
            continue;
        }
        call(rc, "--twist");
        double res = 0.0;
        call(td_deformation_closedness(d.get(), p.data(),
                                       static_cast<int>(p.size()), 1e-4, &res),
             "--twist");
        if (res > max_residual) max_residual = res;
        for (int k = 0; k < dim; ++k) csv << (k > 0 ? "," : "") << fmt(p[k]);
        for (int a = 0; a < dim; ++a)
            for (int b = a + 1; b < dim; ++b)
                csv << ',' << fmt(form[a * dim + b]);
        csv << "\n";
    }

    j["n_points"] = static_cast<int>(points.size());
    j["n_singular"] = n_singular;
    j["max_closedness_residual"] = max_residual;
    bool verdict = n_singular == 0 && max_residual < closedness_tol;
    j["verdict"] = verdict;
    if (points.size() == 1 && n_singular == 0) {
        Json upper = Json::array();
        for (int a = 0; a < dim; ++a)
            for (int b = a + 1; b < dim; ++b)
                upper.push_back(form[a * dim + b]);
        j["omega_upper"] = upper;
    }
    emit_report(j, out_path);
    if (!csv_path.empty()) write_text(csv_path, csv.str(), "--csv");
    return verdict ? kExitTrue : kExitFalse;
}

/* ---- volume ---- */

Json volume_row(double lambda, long long budget) {
    double numeric = 0, closed = 0, k = 0, rel = 0;
    long long nodes = 0;
    call(td_volume_numeric(lambda, budget, &numeric, &closed, &k, &rel,
                           &nodes),
         "--lambda");
    Json row;
    row["lambda"] = lambda;
    row["numeric"] = numeric;
    row["closed"] = closed;
    row["k_lambda"] = k;
    row["rel_error"] = rel;
    row["nodes"] = nodes;
    row["label"] = std::abs(lambda) < 1.0 ? "ok" : "outside_admissible_range";
    return row;
}

int run_volume(double lambda, long long budget, double tol,
               const std::string& out_path) {
    if (budget < 1) fail("--budget", "node budget must be >= 1");
    if (!(tol > 0)) fail("--tol", "tolerance must be positive");
    Json j = report_base("volume", {{"lambda", lambda},
                                    {"budget", budget},
                                    {"tolerance", tol}});
    Json row = volume_row(lambda, budget);
    for (auto& [key, value] : row.items()) j[key] = value;
    bool verdict = row["rel_error"].get<double>() < tol;
    j["verdict"] = verdict;
    emit_report(j, out_path);
    return verdict ? kExitTrue : kExitFalse;
}

/* ---- grassmann ---- */

Json grassmann_row(int n, int r) {
    int is_r = 0, nonzero = 0, vanishes = 0, n_terms = 0;
    char* norm = nullptr;
    call(td_grassmann_verify(n, r, &is_r, &nonzero, &vanishes, &n_terms,
                             &norm),
         "--n");
    Json row;
    row["n"] = n;
    row["r"] = r;
    row["is_r_matrix"] = is_r == 1;
    row["square_nonzero"] = nonzero == 1;
    row["quotient_vanishes"] = vanishes == 1;
    row["n_terms_square"] = n_terms;
    row["quotient_norm"] = take_string(norm);
    return row;
}

int run_grassmann(int n, int r, const std::string& out_path) {
    Json j = report_base("grassmann", {{"n", n}, {"r", r}});
    Json row = grassmann_row(n, r);
    for (auto& [key, value] : row.items()) j[key] = value;
    bool verdict = row["is_r_matrix"].get<bool>() &&
                   row["square_nonzero"].get<bool>() &&
                   row["quotient_vanishes"].get<bool>();
    j["verdict"] = verdict;
    emit_report(j, out_path);
    return verdict ? kExitTrue : kExitFalse;
}

/* ---- sweeps ---- */

std::vector<double> parse_range(const std::string& spec) {
    std::smatch m;
    if (!std::regex_match(
            spec, m,
            std::regex("([0-9.eE+-]+):([0-9.eE+-]+):([0-9.eE+-]+)")))
        fail("--lambdas", "expected 'START:STOP:STEP', got '" + spec + "'");
    double start = 0, stop = 0, step = 0;
    try {
        start = std::stod(m[1]);
        stop = std::stod(m[2]);
        step = std::stod(m[3]);
    } catch (const std::exception&) {
        fail("--lambdas", "bad number in '" + spec + "'");
    }
    if (!(step > 0)) fail("--lambdas", "step must be positive");
    if (stop < start) fail("--lambdas", "empty range");
    std::vector<double> out;
    for (long long k = 0;; ++k) {
        double x = start + step * static_cast<double>(k);
        if (x > stop + step * 1e-9) break;
        if (std::abs(x) < step * 1e-12) x = 0.0; /* range-walk residue */
        out.push_back(x);
    }
    return out;
}

std::vector<double> parse_list(const std::string& spec,
                               const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail(field, "bad number '" + item + "'");
        }
    }
    if (out.empty()) fail(field, "empty list");
    return out;
}

int emit_sweep(Json j, const Json& rows, const std::string& csv_header,
               const std::vector<std::string>& csv_rows, bool all_true,
               const std::string& out_path, const std::string& csv_path) {
    j["rows"] = rows;
    j["all_true"] = all_true;
    emit_report(j, out_path);
    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << csv_header << "\n";
        for (const auto& r : csv_rows) csv << r << "\n";
        write_text(csv_path, csv.str(), "--csv");
    }
    return all_true ? kExitTrue : kExitFalse;
}

int run_sweep_volume(const std::string& lambdas, long long budget, double tol,
                     const std::string& out_path, const std::string& csv_path) {
    if (budget < 1) fail("--budget", "node budget must be >= 1");
    if (!(tol > 0)) fail("--tol", "tolerance must be positive");
    Json j = report_base("sweep volume", {{"lambdas", lambdas},
                                          {"budget", budget},
                                          {"tolerance", tol}});
    Json rows = Json::array();
    std::vector<std::string> csv_rows;
    bool all_true = true;
    for (double lambda : parse_range(lambdas)) {
        Json row = volume_row(lambda, budget);
        bool ok = row["rel_error"].get<double>() < tol;
        row["verdict"] = ok;
        all_true = all_true && ok;
        csv_rows.push_back(fmt(lambda) + "," + fmt(row["numeric"]) + "," +
                           fmt(row["closed"]) + "," + fmt(row["k_lambda"]) +
                           "," + fmt(row["rel_error"]));
        rows.push_back(std::move(row));
    }
    return emit_sweep(std::move(j), rows, "lambda,numeric,closed,k_lambda,rel_error",
                      csv_rows, all_true, out_path, csv_path);
}

int run_sweep_admissible(const std::string& magnitudes, double radius,
                         int samples, double tol, const std::string& out_path,
                         const std::string& csv_path) {
    if (samples < 1) fail("--samples", "sample count must be >= 1");
    if (!(tol > 0)) fail("--tol", "tolerance must be positive");
    if (!(radius > 0)) fail("--radius", "radius must be positive");
    Json j = report_base("sweep admissible", {{"magnitudes", magnitudes},
                                              {"radius", radius},
                                              {"samples", samples},
                                              {"tolerance", tol}});
    auto g = load_algebra("su2");
    Json rows = Json::array();
    std::vector<std::string> csv_rows;
    bool all_true = true;
    for (double mag : parse_list(magnitudes, "--magnitudes")) {
        /* magnitude placed in the l23 slot: f depends on xi1 alone, and the
         * spiral grid steps xi1 uniformly */
        std::string spec = "l23=" + fmt(mag);
        auto t = load_twist(g.get(), spec);
        int verdict = 0;
        double min_abs = 0.0;
        double argmin[3] = {0, 0, 0};
        call(td_twist_admissible_sphere(t.get(), radius, samples, tol,
                                        &verdict, &min_abs, argmin, nullptr),
             "--magnitudes");
        Json row;
        row["magnitude"] = mag;
        row["twist"] = spec;
        row["min_abs"] = min_abs;
        row["verdict"] = verdict == 1;
        all_true = all_true && verdict == 1;
        csv_rows.push_back(fmt(mag) + "," + fmt(min_abs) + "," +
                           (verdict == 1 ? "true" : "false"));
        rows.push_back(std::move(row));
    }
    return emit_sweep(std::move(j), rows, "magnitude,min_abs,verdict",
                      csv_rows, all_true, out_path, csv_path);
}

int run_sweep_grassmann(int max_n, const std::string& out_path,
                        const std::string& csv_path) {
    if (max_n < 2) fail("--max-n", "need max-n >= 2");
    Json j = report_base("sweep grassmann", {{"max_n", max_n}});
    Json rows = Json::array();
    std::vector<std::string> csv_rows;
    bool all_true = true;
    for (int n = 2; n <= max_n; ++n) {
        for (int r = 1; r < n; ++r) {
            Json row = grassmann_row(n, r);
            bool ok = row["is_r_matrix"].get<bool>() &&
                      row["square_nonzero"].get<bool>() &&
                      row["quotient_vanishes"].get<bool>();
            row["verdict"] = ok;
            all_true = all_true && ok;
            csv_rows.push_back(
                std::to_string(n) + "," + std::to_string(r) + "," +
                (row["is_r_matrix"].get<bool>() ? "true" : "false") + "," +
                (row["square_nonzero"].get<bool>() ? "true" : "false") + "," +
                (row["quotient_vanishes"].get<bool>() ? "true" : "false") +
                "," + std::to_string(row["n_terms_square"].get<int>()) + "," +
                row["quotient_norm"].get<std::string>());
            rows.push_back(std::move(row));
        }
    }
    return emit_sweep(
        std::move(j), rows,
        "n,r,is_r_matrix,square_nonzero,quotient_vanishes,n_terms_square,"
        "quotient_norm",
        csv_rows, all_true, out_path, csv_path);
}

const char* status_name(td_status s) {
    switch (s) {
        case TD_OK: return "TD_OK";
        case TD_EINVAL: return "TD_EINVAL";
        case TD_EDIM: return "TD_EDIM";
        case TD_EPARSE: return "TD_EPARSE";
        case TD_ESINGULAR: return "TD_ESINGULAR";
        case TD_EDOMAIN: return "TD_EDOMAIN";
        case TD_ENUMERIC: return "TD_ENUMERIC";
        case TD_EUNKNOWN: return "TD_EUNKNOWN";
    }
    return "TD_EUNKNOWN";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twist deformations of symplectic structures: r-matrix, "
                 "admissibility, chart and volume computations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", td_version());

    std::string algebra = "su2";
    std::string twist = "0";
    std::string out_path;
    std::string csv_path;
    std::function<int()> runner;

    auto* validate = app.add_subcommand("validate-algebra",
                                        "Check antisymmetry and Jacobi");
    validate->add_option("--algebra", algebra,
                         "Builtin (suN, abelianN) or JSON file path");
    validate->add_option("--out", out_path, "Write the JSON report here");
    validate->callback([&] { runner = [&] { return run_validate(algebra, out_path); }; });

    auto* rmatrix = app.add_subcommand("rmatrix",
                                       "Schouten square and ad-invariance");
    rmatrix->add_option("--algebra", algebra);
    rmatrix->add_option("--twist", twist, "Twist spec (lij=v or A^B:c)")
        ->required();
    rmatrix->add_option("--out", out_path);
    rmatrix->callback(
        [&] { runner = [&] { return run_rmatrix(algebra, twist, out_path); }; });

    std::string image = "sphere:0.5";
    int samples = 10000;
    double tol = 1e-9;
    auto* admissible = app.add_subcommand(
        "admissible", "Scan |f_t| over a sphere of dual-frame points");
    admissible->add_option("--algebra", algebra);
    admissible->add_option("--twist", twist)->required();
    admissible->add_option("--image", image, "sphere:RADIUS");
    admissible->add_option("--samples", samples, "Spiral sample count");
    admissible->add_option("--tol", tol, "Admissibility tolerance");
    admissible->add_option("--out", out_path);
    admissible->add_option("--csv", csv_path, "Per-sample (xi, f_t) CSV");
    admissible->callback([&] {
        runner = [&] {
            return run_admissible(algebra, twist, image, samples, tol,
                                  out_path, csv_path);
        };
    });

    std::string action = "su";
    int chart_n = 1;
    std::string grid = "1.5:5";
    std::string point;
    double closedness_tol = 1e-5;
    auto* deform = app.add_subcommand(
        "deform", "Deformed symplectic form on a CP^n chart");
    deform->add_option("--action", action, "su or torus");
    deform->add_option("--chart-n", chart_n, "Chart dimension n");
    deform->add_option("--twist", twist)->required();
    deform->add_option("--grid", grid, "EXTENT:PER_AXIS lattice");
    deform->add_option("--point", point, "Single chart point x1,y1,...");
    deform->add_option("--closedness-tol", closedness_tol,
                       "Max allowed finite-difference d(omega) residual");
    deform->add_option("--out", out_path);
    deform->add_option("--csv", csv_path,
                       "Rows: coords..., upper-triangle omega_t entries");
    deform->callback([&] {
        runner = [&] {
            return run_deform(action, chart_n, twist, grid, point,
                              closedness_tol, out_path, csv_path);
        };
    });

    double lambda = 0.0;
    long long budget = 10000;
    double vol_tol = 1e-6;
    auto* volume = app.add_subcommand(
        "volume", "Deformed CP^1 volume: quadrature vs closed form");
    volume->add_option("--lambda", lambda, "Deformation parameter");
    volume->add_option("--budget", budget, "Quadrature node budget");
    volume->add_option("--tol", vol_tol, "Relative-error verdict threshold");
    volume->add_option("--out", out_path);
    volume->callback([&] {
        runner = [&] { return run_volume(lambda, budget, vol_tol, out_path); };
    });

    int gr_n = 3;
    int gr_r = 1;
    auto* grassmann = app.add_subcommand(
        "grassmann", "Exact r-matrix check for the Grassmannian splitting");
    grassmann->add_option("--n", gr_n, "su(n)");
    grassmann->add_option("--r", gr_r, "Splitting (r, n-r)");
    grassmann->add_option("--out", out_path);
    grassmann->callback(
        [&] { runner = [&] { return run_grassmann(gr_n, gr_r, out_path); }; });

    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps (CSV/JSON)");
    sweep->require_subcommand(1);

    std::string lambdas = "-0.9:0.9:0.3";
    auto* sweep_volume = sweep->add_subcommand("volume", "Sweep over lambda");
    sweep_volume->add_option("--lambdas", lambdas, "START:STOP:STEP");
    sweep_volume->add_option("--budget", budget);
    sweep_volume->add_option("--tol", vol_tol);
    sweep_volume->add_option("--out", out_path);
    sweep_volume->add_option("--csv", csv_path);
    sweep_volume->callback([&] {
        runner = [&] {
            return run_sweep_volume(lambdas, budget, vol_tol, out_path,
                                    csv_path);
        };
    });

    std::string magnitudes = "0.5,0.9,1.1";
    double radius = 0.5;
    double adm_tol = 1e-6;
    auto* sweep_adm = sweep->add_subcommand(
        "admissible", "Sweep twist magnitudes on the su(2) sphere");
    sweep_adm->add_option("--magnitudes", magnitudes, "Comma-separated list");
    sweep_adm->add_option("--radius", radius, "Sphere radius");
    sweep_adm->add_option("--samples", samples);
    sweep_adm->add_option("--tol", adm_tol, "Scan tolerance");
    sweep_adm->add_option("--out", out_path);
    sweep_adm->add_option("--csv", csv_path);
    sweep_adm->callback([&] {
        runner = [&] {
            return run_sweep_admissible(magnitudes, radius, samples, adm_tol,
                                        out_path, csv_path);
        };
    });

    int max_n = 4;
    auto* sweep_gr = sweep->add_subcommand("grassmann",
                                           "All (n, r) up to max-n");
    sweep_gr->add_option("--max-n", max_n);
    sweep_gr->add_option("--out", out_path);
    sweep_gr->add_option("--csv", csv_path);
    sweep_gr->callback([&] {
        runner = [&] { return run_sweep_grassmann(max_n, out_path, csv_path); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); /* --help, --version */
        Json err;
        err["error"] = {{"kind", "config"},
                        {"field", e.get_name()},
                        {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return kExitError;
    }

    try {
        return runner();
    } catch (const CliError& e) {
        Json err;
        err["error"] = {{"kind", "run"},
                        {"field", e.field},
                        {"status", status_name(e.status)},
                        {"message", e.message}};
        std::cerr << err.dump(2) << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = {{"kind", "internal"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return kExitError;
    }
}
