// Python bindings for the main operations. Arrays come in as NumPy float64
// with one point per row; reports come back as plain dicts.
#include "sepscope/activation.hpp"
#include "sepscope/cli.hpp"
#include "sepscope/dataset.hpp"
#include "sepscope/errors.hpp"
#include "sepscope/maxls.hpp"
#include "sepscope/matrix_io.hpp"
#include "sepscope/md_aggregates.hpp"
#include "sepscope/measures.hpp"
#include "sepscope/plm.hpp"
#include "sepscope/report.hpp"
#include "sepscope/synthetic.hpp"
#include "sepscope/tracking.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace sepscope;

namespace {

py::object to_python(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

BinaryTask make_task(const Matrix& a, const Matrix& b) {
    return BinaryTask::from_sets(a, b);
}

MeasureOptions options(const std::string& weight, std::optional<double> zero_tol, double ridge) {
    MeasureOptions o;
    o.mode = parse_weight_mode(weight);
    o.zero_tol = zero_tol;
    o.ridge_rel = ridge;
    return o;
}

py::dict study_row(const StudyRow& r) {
    py::dict d;
    d["size"] = r.size;
    d["trials"] = r.trials;
    d["increase_count"] = r.increase_count;
    d["degenerate_count"] = r.degenerate_count;
    d["fraction"] = r.fraction;
    d["ci_low"] = r.ci_low;
    d["ci_high"] = r.ci_high;
    return d;
}

StudyOptions study_options(const std::string& kind, const std::string& init, double scale, std::uint64_t seed,
                           Index trials, unsigned threads) {
    StudyOptions o;
    o.kind = parse_activation(kind);
    o.init = {parse_init(init), scale};
    o.seed = seed;
    o.trials = trials;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Minkowski-difference linear separability measures";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<LabelError>(m, "LabelError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
    py::register_exception<SingularError>(m, "SingularError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<TrainingError>(m, "TrainingError", base.ptr());

    m.def(
        "measure",
        [](const Matrix& points, std::vector<int> labels, const std::string& weight, std::optional<double> zero_tol,
           double ridge, std::optional<int> positive_class, unsigned threads) {
            const LabeledDataset ds(points, std::move(labels));
            const auto o = options(weight, zero_tol, ridge);
            if (positive_class) return to_python(report_to_json(measure_task(binary_task(ds, *positive_class), o)));
            return to_python(report_to_json(measure_dataset(ds, o, threads)));
        },
        py::arg("points"), py::arg("labels"), py::arg("weight") = "approx", py::arg("zero_tol") = py::none(),
        py::arg("ridge") = 1e-10, py::arg("positive_class") = py::none(), py::arg("threads") = 1,
        "Binary report for two classes (or the given positive class), one-vs-rest aggregate otherwise.");

    m.def(
        "measure_sets",
        [](const Matrix& a, const Matrix& b, const std::string& weight, std::optional<double> zero_tol, double ridge) {
            return to_python(report_to_json(measure_task(make_task(a, b), options(weight, zero_tol, ridge))));
        },
        py::arg("a"), py::arg("b"), py::arg("weight") = "approx", py::arg("zero_tol") = py::none(),
        py::arg("ridge") = 1e-10);

    m.def(
        "measure_at",
        [](const Matrix& a, const Matrix& b, const Vector& omega, std::optional<double> zero_tol) {
            MeasureOptions o;
            o.zero_tol = zero_tol;
            return to_python(report_to_json(measure_at(make_task(a, b), WeightVector(omega, WeightProvenance::user), o)));
        },
        py::arg("a"), py::arg("b"), py::arg("omega"), py::arg("zero_tol") = py::none());

    m.def("md_sum", [](const Matrix& a, const Matrix& b) { return md_sum(make_task(a, b)); }, py::arg("a"), py::arg("b"));
    m.def(
        "md_gram", [](const Matrix& a, const Matrix& b) { return Eigen::MatrixXd(md_gram(make_task(a, b)).dense()); },
        py::arg("a"), py::arg("b"));

    m.def(
        "pair_stats",
        [](const Vector& alpha, const Vector& beta, std::optional<double> zero_tol) {
            const double tol = zero_tol.value_or(default_zero_tol(as_span(alpha), as_span(beta)));
            const auto s = pair_stats_fast(as_span(alpha), as_span(beta), tol);
            py::dict d;
            d["pos"] = s.pos_count;
            d["neg"] = s.neg_count;
            d["zero"] = s.zero_count;
            d["abs_sum"] = s.abs_sum;
            d["signed_sum"] = s.signed_sum;
            return d;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("zero_tol") = py::none());

    m.def(
        "approx_weight", [](const Matrix& a, const Matrix& b) { return approx_weight(make_task(a, b)).omega(); },
        py::arg("a"), py::arg("b"));
    m.def(
        "exact_weight",
        [](const Matrix& a, const Matrix& b, double ridge) { return exact_weight(make_task(a, b), ridge).omega(); },
        py::arg("a"), py::arg("b"), py::arg("ridge") = 1e-10);

    m.def(
        "greedy_maxls",
        [](const Matrix& a, const Matrix& b, std::optional<Vector> omega, const std::string& weight,
           std::optional<double> zero_tol) {
            const auto task = make_task(a, b);
            const Vector w = omega ? *omega
                                   : (parse_weight_mode(weight) == WeightMode::exact ? exact_weight(task).omega()
                                                                                      : approx_weight(task).omega());
            const auto graph = violation_edges(task, w, zero_tol);
            const auto res = greedy_maxls(graph, task.i_count(), task.j_count());
            return to_python(maxls_to_json(task, res, verify_separable(kept_task(task, res), w, graph.zero_tol)));
        },
        py::arg("a"), py::arg("b"), py::arg("omega") = py::none(), py::arg("weight") = "approx",
        py::arg("zero_tol") = py::none());

    m.def(
        "act_eval",
        [](const std::string& kind, double x) {
            const auto v = act_eval(parse_activation(kind), x);
            return py::make_tuple(v.value, v.d1, v.d2);
        },
        py::arg("kind"), py::arg("x"), "(value, first derivative, second derivative)");
    m.def(
        "f_sigma", [](const std::string& kind, double x, double y) { return f_sigma(parse_activation(kind), x, y); },
        py::arg("kind"), py::arg("x"), py::arg("y"));
    m.def(
        "f_sigma_grid",
        [](const std::string& kind, double lo, double hi, double step, double threshold) {
            const auto rows = f_sigma_grid(parse_activation(kind), lo, hi, lo, hi, step, threshold);
            Eigen::MatrixXd out(static_cast<Index>(rows.size()), 4);
            for (std::size_t k = 0; k < rows.size(); ++k)
                out.row(static_cast<Index>(k)) << rows[k].x, rows[k].y, rows[k].f, rows[k].above ? 1.0 : 0.0;
            return out;
        },
        py::arg("kind"), py::arg("lo") = -10.0, py::arg("hi") = 10.0, py::arg("step") = 0.5, py::arg("threshold") = 2.0,
        "Rows of (x, y, F, above_threshold); F is NaN where undefined.");

    m.def(
        "width_study",
        [](const Matrix& a, const Matrix& b, const std::vector<Index>& widths, Index trials, const std::string& kind,
           const std::string& init, double scale, std::uint64_t seed, unsigned threads) {
            py::list out;
            for (const auto& r : width_study(make_task(a, b), widths, study_options(kind, init, scale, seed, trials, threads)))
                out.append(study_row(r));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("widths"), py::arg("trials") = 100, py::arg("kind") = "sigmoid",
        py::arg("init") = "gaussian", py::arg("scale") = 1.0, py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "depth_study",
        [](const Matrix& a, const Matrix& b, const std::vector<Index>& depths, Index width, Index trials,
           const std::string& kind, const std::string& init, double scale, std::uint64_t seed, unsigned threads) {
            const auto d = depth_study(make_task(a, b), depths, width, study_options(kind, init, scale, seed, trials, threads));
            py::list rows;
            for (const auto& r : d.rows) rows.append(study_row(r));
            py::dict out;
            out["rows"] = rows;
            out["trajectory"] = d.trajectory;
            out["baseline"] = d.baseline;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("depths"), py::arg("width") = 16, py::arg("trials") = 100,
        py::arg("kind") = "sigmoid", py::arg("init") = "gaussian", py::arg("scale") = 1.0, py::arg("seed") = 0,
        py::arg("threads") = 1);

    m.def(
        "make_synthetic",
        [](const std::string& kind, Index n_per_class, double noise, double margin, Index dim, std::uint64_t seed) {
            SyntheticOptions o;
            o.kind = parse_synthetic(kind);
            o.n_per_class = n_per_class;
            o.noise = noise;
            o.margin = margin;
            o.dim = dim;
            o.seed = seed;
            const auto ds = make_synthetic(o);
            return py::make_tuple(ds.points(), ds.labels());
        },
        py::arg("kind") = "gaussians", py::arg("n_per_class") = 100, py::arg("noise") = 0.2, py::arg("margin") = 2.0,
        py::arg("dim") = 2, py::arg("seed") = 0, "(points, labels)");

    m.def("spearman", &spearman, py::arg("x"), py::arg("y"));

    m.def(
        "load_matrix", [](const std::filesystem::path& p) { return load_matrix_binary(p); }, py::arg("path"));
    m.def(
        "write_matrix",
        [](const std::filesystem::path& p, const Matrix& x, const std::string& dtype) {
            if (dtype != "f64" && dtype != "f32") throw ConfigError("dtype must be f32 or f64");
            write_matrix_binary(x, p, dtype == "f32" ? DType::f32 : DType::f64);
        },
        py::arg("path"), py::arg("matrix"), py::arg("dtype") = "f64");
    m.def(
        "load_labels", [](const std::filesystem::path& p) { return load_labels(p); }, py::arg("path"));
    m.def(
        "write_labels",
        [](const std::filesystem::path& p, const std::vector<std::int64_t>& labels) { write_labels_binary(labels, p); },
        py::arg("path"), py::arg("labels"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in process; returns (exit code, stdout, stderr).");
}
