#include "sepscope/plm.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/measures.hpp"
#include "sepscope/parallel.hpp"
#include "sepscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <tuple>

namespace sepscope {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Index grid_points(double lo, double hi, double step) {
    if (!(step > 0) || !std::isfinite(step)) throw ConfigError("grid step must be positive");
    if (!(hi > lo)) throw ConfigError("grid range is empty");
    // absorb the rounding of ratios like 2 / 0.1
    const double r = (hi - lo) / step;
    return static_cast<Index>(std::ceil(r - 1e-9 * std::max(1.0, r)));
}

std::vector<GridRow> f_sigma_grid(ActivationKind kind, double x_lo, double x_hi, double y_lo, double y_hi,
                                  double step, double threshold) {
    if (!is_smooth(kind)) throw UnsupportedError("F_sigma grid needs a twice differentiable activation");
    const Index nx = grid_points(x_lo, x_hi, step);
    const Index ny = grid_points(y_lo, y_hi, step);
    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(nx * ny));
    for (Index i = 0; i < nx; ++i) {
        const double x = x_lo + static_cast<double>(i) * step;
        for (Index j = 0; j < ny; ++j) {
            const double y = y_lo + static_cast<double>(j) * step;
            GridRow row{x, y, std::numeric_limits<double>::quiet_NaN(), false};
            try {
                row.f = f_sigma(kind, x, y);
                row.above = row.f > threshold;
            } catch (const DegenerateError&) {
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows) {
    os << "x,y,f,above_threshold\n";
    for (const auto& r : rows) os << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.f) << ',' << (r.above ? 1 : 0) << '\n';
}

std::string_view to_string(InitKind kind) { return kind == InitKind::gaussian ? "gaussian" : "uniform"; }

InitKind parse_init(std::string_view text) {
    if (text == "gaussian") return InitKind::gaussian;
    if (text == "uniform") return InitKind::uniform;
    throw ConfigError("unknown init '" + std::string(text) + "'");
}

PlmStack random_plm_stack(Index n_in, const std::vector<Index>& widths, ActivationKind kind, PlmInit init,
                          std::uint64_t seed) {
    if (n_in < 1) throw ShapeError("input dimension must be positive");
    if (widths.empty()) throw ConfigError("a stack needs at least one layer");
    if (!(init.scale > 0) || !std::isfinite(init.scale)) throw ConfigError("init scale must be positive");
    PlmStack s;
    s.activation = kind;
    s.init = init;
    s.seed = seed;
    auto gen = make_stream(seed, 0);
    Index fan_in = n_in;
    for (Index w : widths) {
        if (w < 1) throw ShapeError("layer widths must be positive");
        Matrix v(fan_in, w);
        if (init.kind == InitKind::gaussian) {
            std::normal_distribution<double> dist(0.0, init.scale / std::sqrt(static_cast<double>(fan_in)));
            for (Index r = 0; r < fan_in; ++r)
                for (Index c = 0; c < w; ++c) v(r, c) = dist(gen);
        } else {
            std::uniform_real_distribution<double> dist(-init.scale, init.scale);
            for (Index r = 0; r < fan_in; ++r)
                for (Index c = 0; c < w; ++c) v(r, c) = dist(gen);
        }
        s.layers.push_back(std::move(v));
        fan_in = w;
    }
    return s;
}

void validate_stack(const PlmStack& stack) {
    for (std::size_t l = 0; l < stack.layers.size(); ++l) {
        if (!stack.layers[l].allFinite()) throw DataError("non-finite weight in layer " + std::to_string(l + 1));
        if (l > 0 && stack.layers[l].rows() != stack.layers[l - 1].cols())
            throw ShapeError("layer " + std::to_string(l + 1) + " does not chain with the previous layer");
    }
}

std::vector<Matrix> apply_plm(const PlmStack& stack, const Matrix& x) {
    validate_stack(stack);
    if (!stack.layers.empty() && x.cols() != stack.input_dim())
        throw ShapeError("input has " + std::to_string(x.cols()) + " columns, stack expects " +
                         std::to_string(stack.input_dim()));
    std::vector<Matrix> out;
    out.reserve(stack.layers.size());
    const Matrix* in = &x;
    for (const auto& v : stack.layers) {
        Matrix h = (*in) * v;
        apply_activation(stack.activation, h);
        out.push_back(std::move(h));
        in = &out.back();
    }
    return out;
}

std::vector<BinaryTask> map_task(const PlmStack& stack, const BinaryTask& task) {
    auto a = apply_plm(stack, task.set_a);
    auto b = apply_plm(stack, task.set_b);
    std::vector<BinaryTask> out;
    out.reserve(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        auto t = BinaryTask::from_sets(std::move(a[l]), std::move(b[l]));
        t.rows_a = task.rows_a;
        t.rows_b = task.rows_b;
        out.push_back(std::move(t));
    }
    return out;
}

std::pair<double, double> wilson_interval(Index successes, Index trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::uint64_t trial_seed(std::uint64_t seed, Index trial) {
    return splitmix64(splitmix64(seed) + 0x632BE59BD9B4E019ull * static_cast<std::uint64_t>(trial + 1));
}

Ls2Result exact_ls2(const BinaryTask& task, double ridge_rel) {
    try {
        const auto agg = md_aggregates(task);
        const auto w = exact_weight(agg, ridge_rel);
        const auto m = ls2_at(agg, w.omega());
        return {m.value, m.degenerate};
    } catch (const DegenerateError&) {
        return {0.0, true};
    } catch (const SingularError&) {
        return {0.0, true};
    }
}

bool is_increase(double mapped, double original) {
    return mapped > original + 1e-9 * std::max(1.0, std::abs(original));
}

namespace {

StudyRow tally(Index size, const std::vector<Ls2Result>& results, double baseline) {
    StudyRow row;
    row.size = size;
    row.trials = static_cast<Index>(results.size());
    for (const auto& r : results) {
        if (r.degenerate)
            ++row.degenerate_count;
        else if (is_increase(r.value, baseline))
            ++row.increase_count;
    }
    row.fraction = row.trials > 0 ? static_cast<double>(row.increase_count) / static_cast<double>(row.trials) : 0.0;
    std::tie(row.ci_low, row.ci_high) = wilson_interval(row.increase_count, row.trials);
    return row;
}

void check_study(const StudyOptions& options) {
    if (options.trials < 1) throw ConfigError("trials must be at least 1");
}

}  // namespace

std::vector<StudyRow> width_study(const BinaryTask& task, const std::vector<Index>& widths,
                                  const StudyOptions& options) {
    check_study(options);
    const auto base = exact_ls2(task, options.ridge_rel);
    if (base.degenerate) throw DegenerateError("LS_2 of the original task is degenerate");
    std::vector<StudyRow> rows;
    for (Index w : widths) {
        std::vector<Ls2Result> results(static_cast<std::size_t>(options.trials));
        parallel_for(results.size(), options.threads, [&](std::size_t t) {
            const auto stack = random_plm_stack(task.dim(), {w}, options.kind, options.init,
                                                trial_seed(options.seed, static_cast<Index>(t)));
            const auto mapped = map_task(stack, task);
            results[t] = exact_ls2(mapped.back(), options.ridge_rel);
        });
        rows.push_back(tally(w, results, base.value));
    }
    return rows;
}

DepthStudy depth_study(const BinaryTask& task, const std::vector<Index>& depths, Index width,
                       const StudyOptions& options) {
    check_study(options);
    const auto base = exact_ls2(task, options.ridge_rel);
    if (base.degenerate) throw DegenerateError("LS_2 of the original task is degenerate");
    DepthStudy study;
    study.baseline = base.value;
    for (Index depth : depths) {
        if (depth < 0) throw ConfigError("depth must be non-negative");
        if (depth == 0) {
            StudyRow row;
            row.trials = options.trials;
            std::tie(row.ci_low, row.ci_high) = wilson_interval(0, row.trials);
            study.rows.push_back(row);
            study.trajectory.emplace_back();
            continue;
        }
        const auto n = static_cast<std::size_t>(options.trials);
        std::vector<std::vector<Ls2Result>> per_layer(n);
        parallel_for(n, options.threads, [&](std::size_t t) {
            const auto stack = random_plm_stack(task.dim(), std::vector<Index>(static_cast<std::size_t>(depth), width),
                                                options.kind, options.init,
                                                trial_seed(options.seed, static_cast<Index>(t)));
            const auto mapped = map_task(stack, task);
            for (const auto& m : mapped) per_layer[t].push_back(exact_ls2(m, options.ridge_rel));
        });
        std::vector<Ls2Result> last(n);
        std::vector<double> traj(static_cast<std::size_t>(depth), 0.0);
        std::vector<Index> counts(static_cast<std::size_t>(depth), 0);
        for (std::size_t t = 0; t < n; ++t) {
            last[t] = per_layer[t].back();
            for (std::size_t l = 0; l < per_layer[t].size(); ++l) {
                if (per_layer[t][l].degenerate) continue;
                traj[l] += per_layer[t][l].value;
                ++counts[l];
            }
        }
        for (std::size_t l = 0; l < traj.size(); ++l)
            traj[l] = counts[l] > 0 ? traj[l] / static_cast<double>(counts[l]) : std::numeric_limits<double>::quiet_NaN();
        study.rows.push_back(tally(depth, last, base.value));
        study.trajectory.push_back(std::move(traj));
    }
    return study;
}

void write_study_csv(std::ostream& os, std::string_view size_column, const std::vector<StudyRow>& rows) {
    os << size_column << ",trials,increase_count,degenerate_count,fraction,ci_low,ci_high\n";
    for (const auto& r : rows)
        os << r.size << ',' << r.trials << ',' << r.increase_count << ',' << r.degenerate_count << ','
           << fmt(r.fraction) << ',' << fmt(r.ci_low) << ',' << fmt(r.ci_high) << '\n';
}

void write_trajectory_csv(std::ostream& os, const std::vector<Index>& depths, const DepthStudy& study) {
    os << "depth,layer,mean_ls2\n";
    for (std::size_t d = 0; d < study.trajectory.size() && d < depths.size(); ++d) {
        os << depths[d] << ",0," << fmt(study.baseline) << '\n';
        for (std::size_t l = 0; l < study.trajectory[d].size(); ++l)
            os << depths[d] << ',' << l + 1 << ',' << fmt(study.trajectory[d][l]) << '\n';
    }
}

FlipCheck flip_check(const Vector& a, const Vector& b, const Matrix& v, const Vector& omega, ActivationKind kind,
                     double threshold, double tol) {
    if (!is_smooth(kind)) throw UnsupportedError("flip check needs a twice differentiable activation");
    if (a.size() != b.size() || a.size() != v.rows() || omega.size() != v.rows())
        throw ShapeError("point, weight and map dimensions disagree");
    const Vector pa = v.transpose() * a;
    const Vector pb = v.transpose() * b;
    FlipCheck out;
    out.condition.resize(static_cast<std::size_t>(v.cols()));
    out.all_hold = v.cols() > 0;
    for (Index h = 0; h < v.cols(); ++h) {
        const bool ok = f_sigma(kind, pa(h), pb(h)) > threshold;
        out.condition[static_cast<std::size_t>(h)] = ok;
        out.all_hold = out.all_hold && ok;
    }
    auto side = [tol](double s) { return s > tol ? 1 : (s < -tol ? -1 : 0); };
    out.side_before = side(omega.dot(a - b));
    const Vector n = pa.unaryExpr([kind](double x) { return act_value(kind, x); }) -
                     pb.unaryExpr([kind](double x) { return act_value(kind, x); });
    out.side_after = side((v.transpose() * omega).dot(n));
    return out;
}

}  // namespace sepscope
