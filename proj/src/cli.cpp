#include "sepscope/cli.hpp"

#include "sepscope/dataset.hpp"
#include "sepscope/errors.hpp"
#include "sepscope/manifest.hpp"
#include "sepscope/matrix_io.hpp"
#include "sepscope/maxls.hpp"
#include "sepscope/measures.hpp"
#include "sepscope/mlp.hpp"
#include "sepscope/parallel.hpp"
#include "sepscope/plm.hpp"
#include "sepscope/report.hpp"
#include "sepscope/rng.hpp"
#include "sepscope/synthetic.hpp"
#include "sepscope/tracking.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace sepscope::cli {

namespace {

namespace fs = std::filesystem;

struct Global {
    std::uint64_t seed = 0;
    std::optional<unsigned> threads;
    bool deterministic = false;
    std::string out = ".";
    std::string format = "json";

    unsigned thread_count() const { return resolve_threads(threads); }
    bool json() const { return format == "json"; }
};

struct InputArgs {
    std::vector<std::string> data;
    std::vector<std::string> labels;
    int label_column = -1;
};

void add_input(CLI::App* sub, InputArgs& in, bool many) {
    auto* d = sub->add_option("--data", in.data, "points: CSV or LSMX")->required();
    auto* l = sub->add_option("--labels", in.labels, "labels: LSMY or one per line (default: CSV label column)");
    if (!many) {
        d->expected(1);
        l->expected(1);
    }
    sub->add_option("--label-column", in.label_column, "label column of a CSV without --labels (negative counts from the end)");
}

LabeledDataset load_input(const InputArgs& in, std::size_t k) {
    const fs::path data = in.data.at(k);
    if (!fs::exists(data)) throw ParseError("no such file: " + data.string());
    if (k < in.labels.size()) {
        if (!fs::exists(in.labels[k])) throw ParseError("no such file: " + in.labels[k]);
        return load_dataset(data, in.labels[k]);
    }
    if (is_matrix_binary(data)) throw ConfigError("binary points need --labels");
    return load_csv(data, LabelColumn{in.label_column});
}

std::ofstream open_out(const Global& g, const std::string& name) {
    fs::create_directories(g.out);
    const auto path = fs::path(g.out) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path.string());
    return os;
}

std::string ext(const Global& g) { return g.json() ? ".json" : ".csv"; }

void print_report(std::ostream& out, const MeasureReport& r) {
    out << r.task << ": ls_star=" << format_double(r.ls_star) << " ls0=" << format_double(r.ls0)
        << " ls1=" << format_double(r.ls1) << " ls2=" << format_double(r.ls2);
    if (r.j_omega) out << " j_omega=" << format_double(*r.j_omega);
    if (r.degenerate) out << " degenerate";
    out << '\n';
}

void write_reports(const Global& g, const std::string& stem, const std::vector<MeasureReport>& reports) {
    auto os = open_out(g, stem + ext(g));
    if (g.json()) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        os << arr.dump(2) << '\n';
    } else {
        write_reports_csv(os, reports);
    }
}

std::vector<Index> parse_index_list(const std::string& text) {
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<Index>(v));
        } catch (const std::logic_error&) {
            throw ConfigError("bad integer list '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("range must be lo:hi");
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError("bad range '" + text + "'");
    }
}

// ---- measure

struct MeasureArgs {
    InputArgs in;
    std::optional<int> positive_class;
    bool multiclass = false;
    std::string weight = "approx";
    std::optional<double> zero_tol;
    double ridge = 1e-10;
    std::optional<Index> probe;
};

MeasureOptions measure_options(const std::string& weight, std::optional<double> zero_tol, double ridge) {
    MeasureOptions o;
    o.mode = parse_weight_mode(weight);
    o.zero_tol = zero_tol;
    o.ridge_rel = ridge;
    return o;
}

LabeledDataset maybe_probe(const LabeledDataset& ds, std::optional<Index> probe, std::uint64_t seed) {
    return probe ? subsample_probe(ds, *probe, seed) : ds;
}

int cmd_measure(const Global& g, const MeasureArgs& a, std::ostream& out) {
    const auto ds = maybe_probe(load_input(a.in, 0), a.probe, g.seed);
    const auto opts = measure_options(a.weight, a.zero_tol, a.ridge);
    std::vector<MeasureReport> reports;
    const bool multi = a.multiclass || (!a.positive_class && ds.class_count() > 2);
    if (multi) {
        auto m = multi_ls(ds, opts, g.thread_count());
        reports.push_back(m.aggregate);
        for (auto& r : m.per_class) reports.push_back(std::move(r));
    } else {
        const int pc = a.positive_class.value_or(0);
        if (pc < 0 || pc >= ds.class_count()) throw LabelError("positive class " + std::to_string(pc) + " not present");
        auto r = measure_task(binary_task(ds, pc), opts);
        r.task = "class" + std::to_string(pc) + "_vs_rest";
        reports.push_back(std::move(r));
    }
    for (const auto& r : reports) print_report(out, r);
    write_reports(g, "measure", reports);
    const bool all_degenerate =
        std::all_of(reports.begin(), reports.end(), [](const MeasureReport& r) { return r.degenerate; });
    return all_degenerate ? degenerate_only : ok;
}

// ---- maxls

int cmd_maxls(const Global& g, const MeasureArgs& a, std::ostream& out) {
    const auto ds = maybe_probe(load_input(a.in, 0), a.probe, g.seed);
    const int pc = a.positive_class.value_or(0);
    if (pc < 0 || pc >= ds.class_count()) throw LabelError("positive class " + std::to_string(pc) + " not present");
    const auto task = binary_task(ds, pc);
    const auto mode = parse_weight_mode(a.weight);
    const auto w = mode == WeightMode::exact ? exact_weight(task, a.ridge) : approx_weight(task);
    const auto graph = violation_edges(task, w.omega(), a.zero_tol);
    const auto result = greedy_maxls(graph, task.i_count(), task.j_count());
    const bool verified = verify_separable(kept_task(task, result), w.omega(), graph.zero_tol);

    out << "kept " << result.kept_a.size() << '/' << task.i_count() << " of A, " << result.kept_b.size() << '/'
        << task.j_count() << " of B, removed " << result.removed.size() << ", verified "
        << (verified ? "yes" : "no") << '\n';
    auto os = open_out(g, "maxls" + ext(g));
    if (g.json()) {
        os << maxls_to_json(task, result, verified).dump(2) << '\n';
    } else {
        const auto j = maxls_to_json(task, result, verified);
        os << "set,index,status,removal_order,degree\n";
        for (const auto& v : j["kept_a"]) os << "A," << v.get<Index>() << ",kept,,\n";
        for (const auto& v : j["kept_b"]) os << "B," << v.get<Index>() << ",kept,,\n";
        std::size_t k = 0;
        for (const auto& r : j["removed"])
            os << r["set"].get<std::string>() << ',' << r["index"].get<Index>() << ",removed," << ++k << ','
               << r["degree"].get<Index>() << '\n';
    }
    return ok;
}

// ---- track

void write_series(const Global& g, const TrackSeries& series) {
    auto os = open_out(g, "track" + ext(g));
    if (g.json())
        write_series_json(os, series);
    else
        write_series_csv(os, series);
}

int cmd_track(const Global& g, const std::string& manifest_path, const std::string& weight, std::ostream& out) {
    if (!fs::exists(manifest_path)) throw ParseError("no such file: " + manifest_path);
    const auto manifest = load_manifest(manifest_path);
    MeasureOptions opts;
    opts.mode = parse_weight_mode(weight);
    const auto series = track_manifest(manifest, opts, g.thread_count());
    write_series(g, series);
    std::size_t good = 0, total = 0;
    for (const auto& e : series.epochs)
        for (const auto& c : e.layers) {
            ++total;
            good += c.ok ? 1 : 0;
        }
    out << "epochs " << series.epochs.size() << ", cells " << total << ", failed " << total - good << '\n';
    return total > 0 && good == 0 ? degenerate_only : ok;
}

// ---- demo-train

struct DemoConfig {
    SyntheticOptions data;
    Index test_per_class = 200;
    MlpConfig mlp;
    bool dump = false;
};

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("bad boolean '" + v + "'");
}

DemoConfig default_demo(std::uint64_t seed) {
    DemoConfig c;
    c.data.kind = SyntheticKind::rings;
    c.data.n_per_class = 200;
    c.data.noise = 0.15;
    c.data.margin = 1.0;
    c.data.seed = seed;
    c.mlp.widths = {2, 32, 32, 2};
    c.mlp.hidden = ActivationKind::relu;
    c.mlp.learning_rate = 0.01;
    c.mlp.batch_size = 32;
    c.mlp.epochs = 100;
    c.mlp.seed = seed;
    c.mlp.probe.size = 200;
    return c;
}

DemoConfig load_demo_config(const std::optional<std::string>& path, std::uint64_t seed) {
    DemoConfig c = default_demo(seed);
    if (!path) return c;
    std::ifstream in(*path);
    if (!in) throw ParseError("cannot open config " + *path);
    std::string line;
    int lineno = 0;
    auto num = [&](const std::string& v) {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::logic_error&) {
            throw ConfigError("line " + std::to_string(lineno) + ": bad number '" + v + "'");
        }
    };
    auto integer = [&](const std::string& v) {
        const double d = num(v);
        if (d != std::floor(d)) throw ConfigError("line " + std::to_string(lineno) + ": expected an integer");
        return static_cast<Index>(d);
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key == "dataset") c.data.kind = parse_synthetic(value);
        else if (key == "n_per_class") c.data.n_per_class = integer(value);
        else if (key == "test_per_class") c.test_per_class = integer(value);
        else if (key == "noise") c.data.noise = num(value);
        else if (key == "margin") c.data.margin = num(value);
        else if (key == "dim") c.data.dim = integer(value);
        else if (key == "widths") c.mlp.widths = parse_index_list(value);
        else if (key == "hidden") c.mlp.hidden = parse_activation(value);
        else if (key == "output") c.mlp.output = parse_output(value);
        else if (key == "learning_rate" || key == "lr") c.mlp.learning_rate = num(value);
        else if (key == "batch_size") c.mlp.batch_size = integer(value);
        else if (key == "epochs") c.mlp.epochs = integer(value);
        else if (key == "seed") c.data.seed = c.mlp.seed = static_cast<std::uint64_t>(integer(value));
        else if (key == "probe_size") c.mlp.probe.size = integer(value);
        else if (key == "probe_weight") c.mlp.probe.weight_mode = parse_weight_mode(value);
        else if (key == "probe_resample") c.mlp.probe.resample = parse_bool(value);
        else if (key == "dump") c.dump = parse_bool(value);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return c;
}

int cmd_demo_train(const Global& g, const std::optional<std::string>& config_path, std::ostream& out) {
    auto c = load_demo_config(config_path, g.seed);
    c.mlp.threads = g.thread_count();
    if (c.data.dim != c.mlp.widths.front()) throw ConfigError("dim must equal the first width");
    if (c.dump) c.mlp.dump_dir = fs::path(g.out) / "dumps";
    const auto train = make_synthetic(c.data);
    auto test_opts = c.data;
    test_opts.n_per_class = c.test_per_class;
    test_opts.seed = splitmix64(c.data.seed ^ 0x7465737473ull);
    const auto test = make_synthetic(test_opts);
    TrackSeries series;
    int code = ok;
    try {
        series = train_mlp(c.mlp, train, test);
    } catch (const TrainingError& e) {
        series = e.partial();
        write_series(g, series);
        throw;
    }
    write_series(g, series);
    const auto& last = series.epochs.back();
    out << "epochs " << series.epochs.size() << ", train_acc " << format_double(*last.train_acc) << ", test_acc "
        << format_double(*last.test_acc) << '\n';
    const auto top = series.layer_names.back();
    try {
        out << "spearman(" << top << ".ls1, train_acc) = " << format_double(sync_correlation(series, top)) << '\n';
    } catch (const Error& e) {
        out << "spearman(" << top << ".ls1, train_acc) undefined: " << e.what() << '\n';
    }
    return code;
}

// ---- plm-study

struct PlmArgs {
    std::optional<std::string> widths;
    std::optional<std::string> depths;
    Index width = 16;
    Index trials = 200;
    std::string kind = "sigmoid";
    std::string init = "gaussian";
    double scale = 1.0;
    std::string dataset = "gaussians";
    Index n_per_class = 50;
    double noise = 1.0;
    double margin = 1.0;
    Index dim = 2;
    std::optional<std::string> data;
    std::optional<std::string> labels;
    int positive_class = 0;
};

int cmd_plm_study(const Global& g, const PlmArgs& a, std::ostream& out) {
    if (a.widths.has_value() == a.depths.has_value()) throw ConfigError("give exactly one of --widths and --depths");
    LabeledDataset ds = [&] {
        if (a.data) {
            InputArgs in;
            in.data = {*a.data};
            if (a.labels) in.labels = {*a.labels};
            return load_input(in, 0);
        }
        SyntheticOptions so;
        so.kind = parse_synthetic(a.dataset);
        so.n_per_class = a.n_per_class;
        so.noise = a.noise;
        so.margin = a.margin;
        so.dim = a.dim;
        so.seed = g.seed;
        return make_synthetic(so);
    }();
    const auto task = binary_task(ds, a.positive_class);
    StudyOptions so;
    so.kind = parse_activation(a.kind);
    so.init = {parse_init(a.init), a.scale};
    so.seed = g.seed;
    so.trials = a.trials;
    so.threads = g.thread_count();

    std::vector<StudyRow> rows;
    std::string column;
    std::optional<DepthStudy> depth;
    std::vector<Index> sizes;
    if (a.widths) {
        sizes = parse_index_list(*a.widths);
        rows = width_study(task, sizes, so);
        column = "width";
    } else {
        sizes = parse_index_list(*a.depths);
        depth = depth_study(task, sizes, a.width, so);
        rows = depth->rows;
        column = "depth";
    }
    for (const auto& r : rows)
        out << column << ' ' << r.size << ": " << r.increase_count << '/' << r.trials << " increased ("
            << format_double(r.fraction) << ", 95% CI " << format_double(r.ci_low) << ".." << format_double(r.ci_high)
            << "), degenerate " << r.degenerate_count << '\n';
    {
        auto os = open_out(g, "plm_" + column + ext(g));
        if (g.json()) {
            Json arr = Json::array();
            for (const auto& r : rows)
                arr.push_back({{column, r.size},
                               {"trials", r.trials},
                               {"increase_count", r.increase_count},
                               {"degenerate_count", r.degenerate_count},
                               {"fraction", r.fraction},
                               {"ci_low", r.ci_low},
                               {"ci_high", r.ci_high}});
            os << arr.dump(2) << '\n';
        } else {
            write_study_csv(os, column, rows);
        }
    }
    if (depth) {
        auto os = open_out(g, "plm_depth_trajectory.csv");
        write_trajectory_csv(os, sizes, *depth);
    }
    return ok;
}

// ---- fsigma-grid

int cmd_fsigma_grid(const Global& g, const std::string& kind_text, const std::string& range, double step,
                    double threshold, std::ostream& out) {
    const auto kind = parse_activation(kind_text);
    const auto [lo, hi] = parse_range(range);
    const auto rows = f_sigma_grid(kind, lo, hi, lo, hi, step, threshold);
    auto os = open_out(g, "fsigma_" + kind_text + ext(g));
    if (g.json()) {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back({{"x", r.x}, {"y", r.y}, {"f", std::isnan(r.f) ? Json(nullptr) : Json(r.f)}, {"above_threshold", r.above}});
        os << arr.dump(1) << '\n';
    } else {
        write_grid_csv(os, rows);
    }
    const auto above = std::count_if(rows.begin(), rows.end(), [](const GridRow& r) { return r.above; });
    out << rows.size() << " cells, " << above << " above " << format_double(threshold) << '\n';
    return ok;
}

// ---- compare-lda

int cmd_compare_lda(const Global& g, const MeasureArgs& a, std::ostream& out) {
    const auto opts = measure_options(a.weight, a.zero_tol, a.ridge);
    std::vector<MeasureReport> reports;
    std::vector<std::string> sources;
    for (std::size_t k = 0; k < a.in.data.size(); ++k) {
        const auto ds = maybe_probe(load_input(a.in, k), a.probe, g.seed);
        const int pc = a.positive_class.value_or(0);
        const auto task = binary_task(ds, pc);
        const std::string name = fs::path(a.in.data[k]).stem().string();

        auto md = measure_task(task, opts);
        md.task = name;
        reports.push_back(md);
        sources.emplace_back(opts.mode == WeightMode::exact ? "md_exact" : "md_approx");

        // Fisher direction S_w^-1 (mu_a - mu_b)
        MeasureReport lda;
        try {
            const auto s = lda_stats(task);
            const Vector dir = solve_spd_ridge(s.s_w, s.mu_a - s.mu_b, a.ridge);
            lda = measure_at(task, WeightVector(dir / dir.norm(), WeightProvenance::user), opts);
        } catch (const DegenerateError&) {
            lda.degenerate = true;
        } catch (const SingularError&) {
            lda.degenerate = true;
        } catch (const DataError&) {
            lda.degenerate = true;
        }
        lda.task = name;
        lda.weight_mode = opts.mode;
        reports.push_back(lda);
        sources.emplace_back("lda");
    }
    auto os = open_out(g, "compare_lda" + ext(g));
    if (g.json()) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            Json j = report_to_json(reports[i]);
            j["weight_source"] = sources[i];
            arr.push_back(std::move(j));
        }
        os << arr.dump(2) << '\n';
    } else {
        os << "weight_source," << report_csv_header() << '\n';
        for (std::size_t i = 0; i < reports.size(); ++i) os << sources[i] << ',' << report_csv_row(reports[i]) << '\n';
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out << '[' << sources[i] << "] ";
        print_report(out, reports[i]);
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minkowski-difference linear separability measures", "sepscope"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.set_help_all_flag("--help-all");
    Global g;
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--threads", g.threads, "worker threads (default: SEPSCOPE_THREADS or 1)")->check(CLI::PositiveNumber);
    app.add_flag("--deterministic", g.deterministic, "omit timing from the console summary");
    app.add_option("--out", g.out, "output directory (created if absent)");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

    MeasureArgs measure;
    auto* m = app.add_subcommand("measure", "separability measures of a labeled point set");
    add_input(m, measure.in, false);
    auto* pc = m->add_option("--positive-class", measure.positive_class, "binary task: this class against the rest");
    m->add_flag("--multiclass", measure.multiclass, "one-vs-rest aggregate plus every class")->excludes(pc);
    m->add_option("--weight", measure.weight, "weight")->check(CLI::IsMember({"approx", "exact"}));
    m->add_option("--zero-tol", measure.zero_tol, "zero band half-width for MD projections");
    m->add_option("--ridge", measure.ridge, "relative ridge of the exact solve");
    m->add_option("--probe", measure.probe, "measure a random subsample of this many rows");

    MeasureArgs maxls;
    auto* x = app.add_subcommand("maxls", "greedy linearly separable subset");
    add_input(x, maxls.in, false);
    x->add_option("--positive-class", maxls.positive_class, "class forming set A");
    x->add_option("--weight", maxls.weight, "weight")->check(CLI::IsMember({"approx", "exact"}));
    x->add_option("--zero-tol", maxls.zero_tol, "zero band half-width");
    x->add_option("--ridge", maxls.ridge, "relative ridge of the exact solve");
    x->add_option("--probe", maxls.probe, "use a random subsample of this many rows");

    std::string manifest, track_weight = "approx";
    auto* t = app.add_subcommand("track", "per-epoch, per-layer measures of dumped activations");
    t->add_option("--manifest", manifest, "run manifest JSON")->required();
    t->add_option("--weight", track_weight, "weight")->check(CLI::IsMember({"approx", "exact"}));

    std::optional<std::string> demo_config;
    auto* d = app.add_subcommand("demo-train", "train a small MLP on synthetic data and track its layers");
    d->add_option("--config", demo_config, "key = value file");

    PlmArgs plm;
    auto* p = app.add_subcommand("plm-study", "random pseudo-linear map studies");
    auto* pw = p->add_option("--widths", plm.widths, "comma-separated widths");
    p->add_option("--depths", plm.depths, "comma-separated depths")->excludes(pw);
    p->add_option("--width", plm.width, "layer width of the depth study");
    p->add_option("--trials", plm.trials, "trials per width or depth");
    p->add_option("--kind", plm.kind, "activation");
    p->add_option("--init", plm.init, "weight init")->check(CLI::IsMember({"gaussian", "uniform"}));
    p->add_option("--scale", plm.scale, "init scale");
    p->add_option("--dataset", plm.dataset, "synthetic task")->check(CLI::IsMember({"gaussians", "xor", "rings"}));
    p->add_option("--n-per-class", plm.n_per_class, "synthetic points per class");
    p->add_option("--noise", plm.noise, "synthetic noise");
    p->add_option("--margin", plm.margin, "synthetic margin");
    p->add_option("--dim", plm.dim, "synthetic dimension");
    p->add_option("--data", plm.data, "points instead of a synthetic task");
    p->add_option("--labels", plm.labels, "labels for --data");
    p->add_option("--positive-class", plm.positive_class, "class forming set A");

    std::string fs_kind = "sigmoid", fs_range = "-10:10";
    double fs_step = 0.5, fs_threshold = 2.0;
    auto* f = app.add_subcommand("fsigma-grid", "grid of the side-flip ratio of an activation");
    f->add_option("--kind", fs_kind, "activation");
    f->add_option("--range", fs_range, "lo:hi on both axes");
    f->add_option("--step", fs_step, "grid step");
    f->add_option("--threshold", fs_threshold, "flag cells above this value");

    MeasureArgs cmp;
    auto* c = app.add_subcommand("compare-lda", "MD measures against the Fisher direction for one or more point sets");
    add_input(c, cmp.in, true);
    c->add_option("--positive-class", cmp.positive_class, "class forming set A");
    c->add_option("--weight", cmp.weight, "weight")->check(CLI::IsMember({"approx", "exact"}));
    c->add_option("--zero-tol", cmp.zero_tol, "zero band half-width");
    c->add_option("--ridge", cmp.ridge, "relative ridge");
    c->add_option("--probe", cmp.probe, "use a random subsample of this many rows");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = ok;
    try {
        if (*m) code = cmd_measure(g, measure, out);
        else if (*x) code = cmd_maxls(g, maxls, out);
        else if (*t) code = cmd_track(g, manifest, track_weight, out);
        else if (*d) code = cmd_demo_train(g, demo_config, out);
        else if (*p) code = cmd_plm_study(g, plm, out);
        else if (*f) code = cmd_fsigma_grid(g, fs_kind, fs_range, fs_step, fs_threshold, out);
        else if (*c) code = cmd_compare_lda(g, cmp, out);
    } catch (const DegenerateError& e) {
        err << "degenerate: " << e.what() << '\n';
        return degenerate_only;
    } catch (const TrainingError& e) {
        err << "training failed: " << e.what() << '\n';
        return input_error;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const LabelError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
    if (!g.deterministic) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", ms);
        out << "elapsed " << buf << " ms, threads " << g.thread_count() << '\n';
    }
    return code;
}

}  // namespace sepscope::cli
