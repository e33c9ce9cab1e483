// Acceptance gates. One line per criterion:
//   [PASS] criterion N: <summary>
// `acceptance N` runs a single criterion, no argument runs all of them.
// Exit status is nonzero when any selected criterion fails.

#include "oracles.hpp"
#include "tmpdir.hpp"

#include "sepscope/activation.hpp"
#include "sepscope/cli.hpp"
#include "sepscope/errors.hpp"
#include "sepscope/linalg.hpp"
#include "sepscope/maxls.hpp"
#include "sepscope/md_aggregates.hpp"
#include "sepscope/measures.hpp"
#include "sepscope/mlp.hpp"
#include "sepscope/plm.hpp"
#include "sepscope/rng.hpp"
#include "sepscope/synthetic.hpp"
#include "sepscope/tracking.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace sepscope;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// ---- 1: pair statistics

Outcome pair_stats_oracle() {
    Timer t;
    std::mt19937_64 gen(101);
    std::uniform_int_distribution<int> size(1, 40), dim(1, 8), pick(0, 2);
    int count_mismatch = 0, sum_mismatch = 0;
    for (int k = 0; k < 200; ++k) {
        const Index i = size(gen), j = size(gen);
        auto task = oracle::random_task(gen, i, j, dim(gen));
        // coarse grids make exact ties and near-ties
        if (k % 3 == 0) {
            task.set_a = (task.set_a * 2).array().round() / 2;
            task.set_b = (task.set_b * 2).array().round() / 2;
        }
        const Vector w = oracle::random_matrix(gen, task.dim(), 1).col(0);
        const auto p = project(task, w);
        double tol = 0.0;
        switch (pick(gen)) {
            case 0: tol = 0.0; break;
            case 1: tol = default_zero_tol(as_span(p.alpha), as_span(p.beta)); break;
            default: tol = 0.05; break;
        }
        const auto fast = pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol);
        const auto slow = pair_stats_naive(as_span(p.alpha), as_span(p.beta), tol);
        if (fast.pos_count != slow.pos_count || fast.neg_count != slow.neg_count || fast.zero_count != slow.zero_count)
            ++count_mismatch;
        if (std::abs(fast.abs_sum - slow.abs_sum) > 1e-9 * std::max(1.0, std::abs(slow.abs_sum))) ++sum_mismatch;
    }
    const double s = t.seconds();
    return {count_mismatch == 0 && sum_mismatch == 0 && s < 5.0,
            "pair stats fast == naive on 200 instances (count mismatches " + std::to_string(count_mismatch) +
                ", abs_sum mismatches " + std::to_string(sum_mismatch) + ", " + fmt("%.2f s)", s)};
}

// ---- 2: closed-form aggregates

Outcome closed_form_aggregates() {
    Timer t;
    std::mt19937_64 gen(102);
    std::uniform_int_distribution<int> size(1, 30), dim(1, 10);
    double worst_sum = 0, worst_gram = 0, worst_sb = 0;
    for (int k = 0; k < 100; ++k) {
        auto task = oracle::random_task(gen, size(gen), size(gen), dim(gen), 1.5);
        const Vector ms = md_sum(task), ms_ref = oracle::md_sum(task);
        const Eigen::MatrixXd g = md_gram(task).dense(), g_ref = oracle::md_gram(task);
        worst_sum = std::max(worst_sum, (ms - ms_ref).norm() / std::max(ms_ref.norm(), 1e-300));
        worst_gram = std::max(worst_gram, (g - g_ref).norm() / g_ref.norm());
        const auto lda = lda_stats(task);
        const double ij = static_cast<double>(task.i_count() * task.j_count());
        const Eigen::MatrixXd outer = ms_ref * ms_ref.transpose();
        if (outer.norm() > 0)
            worst_sb = std::max(worst_sb, (ij * ij * lda.s_b.dense() - outer).norm() / outer.norm());
    }
    const double s = t.seconds();
    return {worst_sum <= 1e-10 && worst_gram <= 1e-10 && worst_sb <= 1e-8 && s < 5.0,
            "md_sum/md_gram vs enumeration on 100 instances (max rel " + fmt("%.2e", worst_sum) + ", " +
                fmt("%.2e", worst_gram) + "; mean-difference identity " + fmt("%.2e", worst_sb) + ", " +
                fmt("%.2f s)", s)};
}

// ---- 3: accuracy / LS_* / MaxLS chain

Outcome accuracy_chain() {
    Timer t;
    std::mt19937_64 gen(103);
    std::uniform_int_distribution<int> size(1, 6);
    const int instances = 120;
    int upper = 0, lower = 0, iff = 0, separable = 0;
    std::string example;
    for (int k = 0; k < instances; ++k) {
        const Index i = size(gen), j = size(gen);
        auto task = oracle::random_task(gen, i, j, 2, k % 2 ? 0.5 : 2.5);
        const auto sweep = oracle::line_sweep(task.set_a, task.set_b);
        const double n = static_cast<double>(i + j);
        const double acc = static_cast<double>(sweep.best_total) / n;

        Matrix all(i + j, 2);
        all << task.set_a, task.set_b;
        double ls = 0.0;
        for (const auto& w : oracle::candidate_directions(all)) ls = std::max(ls, ls_star_at(task, w).value);

        // lenient over optimal splits: the smallest max(|A0|/|A|, |B0|/|B|)
        double bound = 1.0;
        for (auto [ka, kb] : sweep.best_splits)
            bound = std::min(bound, std::max(static_cast<double>(ka) / i, static_cast<double>(kb) / j));

        const bool sep = sweep.best_total == i + j;
        separable += sep;
        const double eps = 1e-12;
        if (acc + eps < ls) ++upper;
        if (ls + eps < bound) ++lower;
        if ((std::abs(acc - ls) <= eps) != sep) ++iff;
        if (example.empty() && (acc + eps < ls || ls + eps < bound || (std::abs(acc - ls) <= eps) != sep))
            example = "instance " + std::to_string(k) + " |A|=" + std::to_string(i) + " |B|=" + std::to_string(j) +
                      " ACC=" + fmt("%.4f", acc) + " LS*=" + fmt("%.4f", ls) + " bound=" + fmt("%.4f", bound);
    }
    const double s = t.seconds();
    std::string detail = "ACC_line >= LS_* >= MaxLS bound, equality iff separable on " + std::to_string(instances) +
                         " instances (" + std::to_string(separable) + " separable; violations: upper " +
                         std::to_string(upper) + ", lower " + std::to_string(lower) + ", iff " + std::to_string(iff) +
                         ", " + fmt("%.2f s)", s);
    if (!example.empty()) detail += "; first: " + example;
    return {upper == 0 && lower == 0 && iff == 0 && s < 60.0, detail};
}

// ---- 4: separable Gaussians reach 1

BinaryTask truncated_gaussians(std::uint64_t seed, Index n_per_side, Index dim, double centre_gap, double cut) {
    auto gen = make_stream(seed, 4);
    std::normal_distribution<double> d(0.0, 1.0);
    auto draw = [&](double centre) {
        Matrix m(n_per_side, dim);
        for (Index r = 0; r < n_per_side; ++r)
            for (Index c = 0; c < dim; ++c) {
                double v = d(gen);
                if (c == 0)
                    while (std::abs(v) > cut) v = d(gen);
                m(r, c) = (c == 0 ? centre : 0.0) + v;
            }
        return m;
    };
    Matrix a = draw(centre_gap / 2), b = draw(-centre_gap / 2);
    return BinaryTask::from_sets(std::move(a), std::move(b));
}

Outcome separable_exactness() {
    int hits = 0;
    double slowest = 0.0, worst = 1.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        // centres 10 sigma apart, first axis cut at 3 sigma: margin 4 sigma
        const auto task = truncated_gaussians(seed, 1000, 50, 10.0, 3.0);
        Timer t;
        MeasureOptions o;
        o.mode = WeightMode::exact;
        o.with_lda = false;
        const auto r = measure_task(task, o);
        slowest = std::max(slowest, t.seconds());
        worst = std::min({worst, r.ls0, r.ls1});
        hits += r.ls0 == 1.0 && r.ls1 == 1.0;
    }
    return {hits == 20 && slowest < 1.0,
            "exact weight gives LS_0 = LS_1 = 1 on " + std::to_string(hits) + "/20 seeds (I=J=1000, N=50; min " +
                fmt("%.6f", worst) + ", slowest " + fmt("%.3f s)", slowest)};
}

// ---- 5: invariance under full-rank linear maps

Outcome linear_invariance() {
    std::mt19937_64 gen(105);
    std::uniform_int_distribution<int> size(5, 40), dim(1, 6), mult(0, 2);
    int count_diff = 0, bad = 0, measured = 0;
    double worst = 0.0;
    MeasureOptions o;
    o.mode = WeightMode::exact;
    o.with_lda = false;
    for (int k = 0; k < 50; ++k) {
        const Index n = dim(gen);
        const auto task = oracle::random_task(gen, size(gen), size(gen), n, 0.8);
        const Index h = n << mult(gen);
        const Matrix v = oracle::random_matrix(gen, n, h);
        const auto mapped = BinaryTask::from_sets(task.set_a * v, task.set_b * v);
        const auto a = measure_task(task, o), b = measure_task(mapped, o);
        ++measured;
        if (a.pair_stats.pos_count != b.pair_stats.pos_count || a.pair_stats.neg_count != b.pair_stats.neg_count ||
            a.pair_stats.zero_count != b.pair_stats.zero_count || a.ls_star != b.ls_star || a.ls0 != b.ls0)
            ++count_diff;
        const double e = std::max(rel_err(b.ls1, a.ls1), rel_err(b.ls2, a.ls2));
        worst = std::max(worst, e);
        if (e > 1e-6) ++bad;
    }
    return {count_diff == 0 && bad == 0,
            "LS_* / LS_0 counts identical and LS_1, LS_2 within 1e-6 under x -> xV on " + std::to_string(measured) +
                " tasks (count differences " + std::to_string(count_diff) + ", max rel " + fmt("%.2e)", worst)};
}

// ---- 6: rank-one solve against the eigenvalue

Outcome rank_one_eigen() {
    std::mt19937_64 gen(106);
    std::uniform_int_distribution<int> size(3, 40), dim(1, 12);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Index n = dim(gen);
        const auto task = oracle::random_task(gen, std::max<Index>(size(gen), n), std::max<Index>(size(gen), n), n, 0.7);
        const auto w = exact_weight(task);
        const double ls2 = ls2_at(task, w.omega()).value;
        const Eigen::MatrixXd g = oracle::md_gram(task);
        const Vector m = oracle::md_sum(task);
        const Eigen::MatrixXd root = oracle::inv_sqrt(g);
        const Vector u = root * m;
        const Eigen::MatrixXd sigma = u * u.transpose();
        const auto top = power_iter_max_eig(SymMatrix::from_dense(0.5 * (sigma + sigma.transpose())));
        worst = std::max(worst, rel_err(ls2, top.value));
    }
    return {worst <= 1e-6, "LS_2 at the exact weight equals the top eigenvalue on 50 tasks (max rel " +
                               fmt("%.2e)", worst)};
}

// ---- 7: greedy separable subsets

Outcome greedy_subsets() {
    Timer t;
    std::mt19937_64 gen(107);
    std::uniform_int_distribution<int> size(1, 40), dim(1, 6);
    int unverified = 0;
    for (int k = 0; k < 500; ++k) {
        const auto task = oracle::random_task(gen, size(gen), size(gen), dim(gen), k % 4 * 0.5);
        const Vector w = k % 2 ? exact_weight(task).omega() : approx_weight(task).omega();
        const auto graph = violation_edges(task, w);
        const auto res = greedy_maxls(graph, task.i_count(), task.j_count());
        if (!verify_separable(kept_task(task, res), w, graph.zero_tol)) ++unverified;
    }

    // every split of up to 10 points, several draws each
    int small = 0, short_of = 0;
    double worst = 1.0;
    for (Index total = 2; total <= 10; ++total)
        for (Index i = 1; i < total; ++i)
            for (int rep = 0; rep < 12; ++rep) {
                const auto task = oracle::random_task(gen, i, total - i, 2, rep % 3 * 0.6);
                for (auto mode : {WeightMode::approx, WeightMode::exact}) {
                    Vector w;
                    try {
                        w = mode == WeightMode::exact ? exact_weight(task).omega() : approx_weight(task).omega();
                    } catch (const DegenerateError&) {
                        continue;
                    }
                    const auto graph = violation_edges(task, w);
                    const auto res = greedy_maxls(graph, task.i_count(), task.j_count());
                    const auto p = project(task, w);
                    const Index opt = oracle::max_kept_along(p.alpha, p.beta, graph.zero_tol);
                    const Index kept = static_cast<Index>(res.kept_a.size() + res.kept_b.size());
                    ++small;
                    const double ratio = static_cast<double>(kept) / static_cast<double>(opt);
                    worst = std::min(worst, ratio);
                    if (ratio < 0.8) ++short_of;
                }
            }
    const double s = t.seconds();
    return {unverified == 0 && short_of == 0 && s < 60.0,
            "greedy subsets verified on 500 tasks (failures " + std::to_string(unverified) + "); kept >= 0.8 x optimum on " +
                std::to_string(small) + " small instances (below " + std::to_string(short_of) + ", worst ratio " +
                fmt("%.3f", worst) + ", " + fmt("%.2f s)", s)};
}

// ---- 8: activation derivatives and F_sigma

Outcome activation_checks() {
    const ActivationKind kinds[] = {ActivationKind::sigmoid, ActivationKind::tanh, ActivationKind::arctan,
                                    ActivationKind::softsign};
    std::mt19937_64 gen(108);
    std::uniform_real_distribution<double> u(-10, 10);
    int f_bad = 0;
    double worst = 0.0;
    for (auto k : kinds) {
        for (int s = 0; s < 10000; ++s) {
            const double x = u(gen), y = u(gen);
            if (f_sigma(k, x, x) != 0.0 || f_sigma(k, x, y) != f_sigma(k, y, x)) ++f_bad;
        }
        // softsign'' jumps at 0, so the first difference there is O(h)
        const double h = 1e-7;
        for (int s = 0; s <= 4000; ++s) {
            const double x = (s - 2000) / 200.0;
            const auto e = act_eval(k, x);
            worst = std::max(worst, std::abs((act_value(k, x + h) - act_value(k, x - h)) / (2 * h) - e.d1));
            worst = std::max(worst, std::abs((act_d1(k, x + h) - act_d1(k, x - h)) / (2 * h) - e.d2));
        }
    }
    return {f_bad == 0 && worst <= 1e-6, "F symmetric and zero on the diagonal at 4 x 10^4 pairs (failures " +
                                             std::to_string(f_bad) + "); derivatives vs central differences max abs " +
                                             fmt("%.2e", worst)};
}

// ---- 9: accuracy and last-layer LS_1 move together

double gradient_check(const MlpConfig& cfg, const LabeledDataset& ds) {
    Mlp net(cfg);
    // zero biases can put relu units exactly on their kink
    std::mt19937_64 gen(cfg.seed + 1);
    std::normal_distribution<double> jitter(0.0, 0.1);
    for (auto& b : net.biases())
        for (Index k = 0; k < b.size(); ++k) b[k] = jitter(gen);
    Gradients g;
    const auto& y = ds.labels();
    net.loss_and_gradients(ds.points(), y, g);
    const double h = 1e-6;
    double worst = 0.0;
    auto probe = [&](double& param, double analytic) {
        const double keep = param;
        param = keep + h;
        const double up = net.loss(ds.points(), y);
        param = keep - h;
        const double down = net.loss(ds.points(), y);
        param = keep;
        const double num = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(num - analytic) / std::max(1.0, std::abs(num)));
    };
    for (std::size_t l = 0; l < net.weights().size(); ++l) {
        for (Index k = 0; k < net.weights()[l].size(); ++k) probe(net.weights()[l].data()[k], g.weights[l].data()[k]);
        for (Index k = 0; k < net.biases()[l].size(); ++k) probe(net.biases()[l][k], g.biases[l][k]);
    }
    return worst;
}

Outcome synchronicity() {
    Timer t;
    SyntheticOptions so;
    so.kind = SyntheticKind::rings;
    so.n_per_class = 200;
    so.noise = 0.15;
    so.margin = 1.0;
    so.seed = 0;
    const auto train = make_synthetic(so);
    so.seed = splitmix64(so.seed ^ 0x7465737473ull);
    const auto test = make_synthetic(so);

    MlpConfig c;
    c.widths = {2, 32, 32, 2};
    c.hidden = ActivationKind::relu;
    c.learning_rate = 0.01;
    c.batch_size = 32;
    c.epochs = 100;
    c.seed = 0;
    c.probe.size = 200;
    const auto series = train_mlp(c, train, test);
    const double rho = sync_correlation(series, "hidden2");
    const double grad = gradient_check(c, train.select(std::vector<Index>{0, 1, 2, 3, 200, 201, 202, 203}));
    const double s = t.seconds();
    return {rho >= 0.8 && grad <= 1e-4 && s < 60.0,
            "rings MLP [2,32,32,2], 100 epochs: spearman(hidden2 LS_1, train acc) = " + fmt("%.3f", rho) +
                ", final train acc " + fmt("%.3f", *series.epochs.back().train_acc) + ", gradient check " +
                fmt("%.2e", grad) + ", " + fmt("%.2f s", s)};
}

// ---- 10: increase fraction over widths

Outcome width_trend() {
    Timer t;
    SyntheticOptions so;
    so.kind = SyntheticKind::gaussians;
    so.n_per_class = 50;
    so.noise = 1.0;
    so.margin = 1.0;
    so.seed = 0;
    const auto task = binary_task(make_synthetic(so), 0);
    StudyOptions o;
    o.trials = 200;
    o.seed = 0;
    const std::vector<Index> widths{4, 16, 64, 256};
    const auto rows = width_study(task, widths, o);
    std::ostringstream table;
    write_study_csv(table, "width", rows);
    std::fputs(table.str().c_str(), stdout);

    // longest non-decreasing run of fractions, in width order
    std::vector<int> best(rows.size(), 1);
    int longest = 0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b)
            if (rows[b].fraction <= rows[a].fraction) best[a] = std::max(best[a], best[b] + 1);
        longest = std::max(longest, best[a]);
    }
    std::string fr;
    for (const auto& r : rows) fr += (fr.empty() ? "" : ", ") + fmt("%.3f", r.fraction);
    const double s = t.seconds();
    return {longest >= 3 && s < 120.0, "increase fractions over widths 4,16,64,256: " + fr +
                                           " (non-decreasing across " + std::to_string(longest) + " of 4, " +
                                           fmt("%.2f s)", s)};
}

// ---- 11: byte-identical CLI outputs

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream f(e.path(), std::ios::binary);
        files[fs::relative(e.path(), dir).generic_string()] = {std::istreambuf_iterator<char>(f),
                                                               std::istreambuf_iterator<char>()};
    }
    return files;
}

Outcome cli_determinism() {
    const auto root = scratch("determinism");
    const auto data = root / "data.csv";
    {
        SyntheticOptions so;
        so.kind = SyntheticKind::xor_blobs;
        so.n_per_class = 60;
        so.noise = 0.4;
        so.margin = 2.0;
        so.dim = 3;
        so.seed = 5;
        const auto ds = make_synthetic(so);
        std::ofstream f(data);
        f.precision(17);
        for (Index r = 0; r < ds.rows(); ++r) {
            for (Index c = 0; c < ds.cols(); ++c) f << ds.points()(r, c) << ',';
            f << ds.labels()[static_cast<std::size_t>(r)] << '\n';
        }
    }
    const auto cfg = root / "demo.cfg";
    {
        std::ofstream f(cfg);
        f << "dataset = rings\nn_per_class = 60\ntest_per_class = 30\nwidths = 2,8,8,2\nepochs = 8\nprobe_size = 50\n"
             "dump = true\n";
    }
    std::ostringstream sink;
    {
        const int code = cli::run({"--out", (root / "source").string(), "--deterministic", "demo-train", "--config",
                                   cfg.string()},
                                  sink, sink);
        if (code != 0) return {false, "could not prepare a manifest (exit " + std::to_string(code) + ")"};
    }
    const auto manifest = (root / "source" / "dumps" / "manifest.json").string();

    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"measure", {"measure", "--data", data.string(), "--multiclass", "--probe", "100"}},
        {"measure-csv", {"--format", "csv", "measure", "--data", data.string(), "--weight", "exact"}},
        {"maxls", {"maxls", "--data", data.string(), "--positive-class", "1"}},
        {"maxls-csv", {"--format", "csv", "maxls", "--data", data.string()}},
        {"track", {"track", "--manifest", manifest}},
        {"track-csv", {"--format", "csv", "track", "--manifest", manifest, "--weight", "exact"}},
        {"demo-train", {"demo-train", "--config", cfg.string()}},
        {"plm-width", {"plm-study", "--widths", "4,16", "--trials", "20"}},
        {"plm-depth", {"--format", "csv", "plm-study", "--depths", "0,1,3", "--width", "8", "--trials", "20"}},
        {"fsigma-grid", {"fsigma-grid", "--kind", "arctan", "--range", "-4:4", "--step", "0.25"}},
        {"compare-lda", {"compare-lda", "--data", data.string(), "--data", data.string(), "--positive-class", "1"}},
    };
    int mismatched = 0, failed = 0;
    std::string first_bad;
    for (const auto& [name, args] : commands) {
        std::map<std::string, std::string> reference;
        std::string console;
        bool have = false;
        for (const char* threads : {"1", "8"})
            for (int rep = 0; rep < 2; ++rep) {
                const auto out = root / name / (std::string("t") + threads + "_r" + std::to_string(rep));
                std::vector<std::string> full{"--out", out.string(), "--threads", threads, "--seed", "7",
                                              "--deterministic"};
                full.insert(full.end(), args.begin(), args.end());
                std::ostringstream os, es;
                if (cli::run(full, os, es) != 0) {
                    ++failed;
                    if (first_bad.empty()) first_bad = name + ": " + es.str();
                    continue;
                }
                auto files = snapshot(out);
                if (!have) {
                    reference = std::move(files);
                    console = os.str();
                    have = true;
                } else if (files != reference || os.str() != console) {
                    ++mismatched;
                    if (first_bad.empty()) first_bad = name + " differs at threads " + threads;
                }
            }
    }
    std::string detail = std::to_string(commands.size()) +
                         " subcommand runs byte-identical across reruns and threads {1, 8} (mismatches " +
                         std::to_string(mismatched) + ", failures " + std::to_string(failed) + ")";
    if (!first_bad.empty()) detail += "; " + first_bad;
    return {mismatched == 0 && failed == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{
        pair_stats_oracle, closed_form_aggregates, accuracy_chain, separable_exactness, linear_invariance,
        rank_one_eigen,    greedy_subsets,         activation_checks, synchronicity,     width_trend,
        cli_determinism,
    };
    std::vector<int> selected;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
            return 2;
        }
        selected.push_back(n);
    } else {
        for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) selected.push_back(n);
    }
    int failures = 0;
    for (int n : selected) {
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(n - 1)]();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
