#include "sepscope/measures.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/parallel.hpp"

#include <cassert>
#include <cmath>

namespace sepscope {

namespace {

constexpr double kRatioFloor = 1e-14;

double pair_total(const PairStats& s) { return static_cast<double>(s.total()); }

double tol_for(const Projections& p, std::optional<double> zero_tol) {
    return zero_tol.value_or(default_zero_tol(as_span(p.alpha), as_span(p.beta)));
}

// m~ vanishes relative to the two terms J*sum(a) and I*sum(b) it is built from.
bool md_sum_vanishes(const BinaryTask& task, const Vector& m_tilde) {
    const double scale = static_cast<double>(task.j_count()) * task.set_a.colwise().sum().norm() +
                         static_cast<double>(task.i_count()) * task.set_b.colwise().sum().norm();
    return m_tilde.norm() <= 1e-12 * scale;
}

bool md_sum_vanishes(const MdAggregates& agg) {
    // Without the side sums, compare against the Gram scale: ||m~||^2 <= I*J*trace(G).
    const double scale = std::sqrt(static_cast<double>(agg.i_count) * static_cast<double>(agg.j_count) *
                                   std::max(agg.md_gram.trace(), 0.0));
    return agg.m_tilde.norm() <= 1e-12 * scale;
}

WeightVector solve_exact(const MdAggregates& agg, double ridge_rel) {
    Vector omega = solve_spd_ridge(agg.md_gram, agg.m_tilde, ridge_rel);
    const double norm = omega.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateError("exact weight solve produced a zero vector");
    return WeightVector(omega / norm, WeightProvenance::exact);
}

}  // namespace

std::string_view to_string(WeightMode mode) { return mode == WeightMode::approx ? "approx" : "exact"; }

std::string_view to_string(WeightProvenance p) {
    switch (p) {
        case WeightProvenance::approximate: return "approximate";
        case WeightProvenance::exact: return "exact";
        case WeightProvenance::user: return "user";
    }
    return "user";
}

WeightMode parse_weight_mode(std::string_view text) {
    if (text == "approx" || text == "approximate") return WeightMode::approx;
    if (text == "exact") return WeightMode::exact;
    throw ConfigError("unknown weight mode '" + std::string(text) + "'");
}

WeightVector::WeightVector(Vector omega, WeightProvenance provenance)
    : omega_(std::move(omega)), provenance_(provenance) {
    if (!omega_.allFinite()) throw DataError("weight vector has non-finite entries");
    if (omega_.size() == 0 || omega_.cwiseAbs().maxCoeff() == 0.0) throw DataError("weight vector is all zero");
}

Measured ls_star_from(const PairStats& s) {
    if (s.total() == 0) return {0.0, true};
    const auto major = std::max(s.pos_count, s.neg_count);
    return {static_cast<double>(major) / pair_total(s), s.zero_count == s.total()};
}

Measured ls0_from(const PairStats& s) {
    if (s.total() == 0) return {0.0, true};
    const auto diff = s.pos_count > s.neg_count ? s.pos_count - s.neg_count : s.neg_count - s.pos_count;
    return {static_cast<double>(diff) / pair_total(s), s.zero_count == s.total()};
}

Measured ls1_from(const PairStats& s, double zero_tol) {
    if (s.abs_sum <= zero_tol * pair_total(s) || !(s.abs_sum > 0.0)) return {0.0, true};
    // one-signed terms: |sum| equals sum of |.| exactly, whatever the rounding
    if (s.pos_count == s.total() || s.neg_count == s.total()) return {1.0, false};
    return {std::min(1.0, std::abs(s.signed_sum) / s.abs_sum), false};
}

Measured ls_star_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    const auto p = project(task, omega);
    return ls_star_from(pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol_for(p, zero_tol)));
}

Measured ls0_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    const auto p = project(task, omega);
    return ls0_from(pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol_for(p, zero_tol)));
}

Measured ls1_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    const auto p = project(task, omega);
    const double tol = tol_for(p, zero_tol);
    return ls1_from(pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol), tol);
}

Measured ls2_at(const MdAggregates& agg, const Vector& omega) {
    if (omega.size() != agg.m_tilde.size()) throw ShapeError("weight length does not match dimension");
    const double num = omega.dot(agg.m_tilde);
    const double den = agg.md_gram.quad_form(omega);
    if (!(den > kRatioFloor * omega.squaredNorm() * agg.md_gram.trace())) return {0.0, true};
    return {num * num / den, false};
}

Measured ls2_at(const BinaryTask& task, const Vector& omega) { return ls2_at(md_aggregates(task), omega); }

WeightVector approx_weight(const BinaryTask& task) {
    const Vector m = md_sum(task);
    if (md_sum_vanishes(task, m)) throw DegenerateError("Minkowski-difference sum vanishes");
    return WeightVector(m / m.norm(), WeightProvenance::approximate);
}

WeightVector approx_weight(const MdAggregates& agg) {
    if (md_sum_vanishes(agg)) throw DegenerateError("Minkowski-difference sum vanishes");
    return WeightVector(agg.m_tilde / agg.m_tilde.norm(), WeightProvenance::approximate);
}

WeightVector exact_weight(const BinaryTask& task, double ridge_rel) {
    const auto agg = md_aggregates(task);
    if (md_sum_vanishes(task, agg.m_tilde)) throw DegenerateError("Minkowski-difference sum vanishes");
    return solve_exact(agg, ridge_rel);
}

WeightVector exact_weight(const MdAggregates& agg, double ridge_rel) {
    if (md_sum_vanishes(agg)) throw DegenerateError("Minkowski-difference sum vanishes");
    return solve_exact(agg, ridge_rel);
}

LdaStats lda_stats(const BinaryTask& task) {
    LdaStats s;
    const Index n = task.dim();
    s.mu_a = task.set_a.colwise().mean().transpose();
    s.mu_b = task.set_b.colwise().mean().transpose();
    s.s_w = SymMatrix(n);
    gram_accumulate(Matrix(task.set_a.rowwise() - s.mu_a.transpose()), 1.0, s.s_w);
    gram_accumulate(Matrix(task.set_b.rowwise() - s.mu_b.transpose()), 1.0, s.s_w);
    s.s_b = SymMatrix(n);
    s.s_b.rank1_update(s.mu_a - s.mu_b, 1.0);
#ifndef NDEBUG
    {
        const double ij = static_cast<double>(task.i_count()) * static_cast<double>(task.j_count());
        const Vector m = md_sum(task);
        const Eigen::MatrixXd outer = m * m.transpose();
        const double err = (ij * ij * s.s_b.dense() - outer).norm();
        assert(err <= 1e-8 * std::max(outer.norm(), 1e-300) + 1e-300 || outer.norm() == 0.0);
        (void)err;
    }
#endif
    return s;
}

Measured j_omega_at(const LdaStats& lda, const Vector& omega) {
    if (omega.size() != lda.mu_a.size()) throw ShapeError("weight length does not match dimension");
    const double num = lda.s_b.quad_form(omega);
    const double den = lda.s_w.quad_form(omega);
    if (!(den > kRatioFloor * omega.squaredNorm() * lda.s_w.trace())) return {0.0, true};
    return {num / den, false};
}

Measured j_omega_at(const BinaryTask& task, const Vector& omega) { return j_omega_at(lda_stats(task), omega); }

namespace {

MeasureReport evaluate(const BinaryTask& task, const MdAggregates& agg, const WeightVector& w,
                       const MeasureOptions& options) {
    MeasureReport r;
    r.weight_mode = options.mode;
    r.i_count = task.i_count();
    r.j_count = task.j_count();
    const auto p = project(task, w.omega());
    const double tol = tol_for(p, options.zero_tol);
    r.pair_stats = pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol);
    const auto star = ls_star_from(r.pair_stats);
    const auto zero = ls0_from(r.pair_stats);
    const auto one = ls1_from(r.pair_stats, tol);
    const auto two = ls2_at(agg, w.omega());
    r.ls_star = star.value;
    r.ls0 = zero.value;
    r.ls1 = one.value;
    r.ls2 = two.value;
    r.degenerate = star.degenerate || one.degenerate || two.degenerate;
    if (options.with_lda) {
        const auto j = j_omega_at(lda_stats(task), w.omega());
        r.j_omega = j.value;
        r.j_omega_degenerate = j.degenerate;
    }
    r.weight = w;
    return r;
}

}  // namespace

MeasureReport measure_at(const BinaryTask& task, const WeightVector& weight, const MeasureOptions& options) {
    if (weight.size() != task.dim()) throw ShapeError("weight length does not match dimension");
    return evaluate(task, md_aggregates(task), weight, options);
}

MeasureReport measure_task(const BinaryTask& task, const MeasureOptions& options) {
    const auto agg = md_aggregates(task);
    std::optional<WeightVector> w;
    try {
        if (options.mode == WeightMode::approx) {
            if (md_sum_vanishes(task, agg.m_tilde)) throw DegenerateError("Minkowski-difference sum vanishes");
            w.emplace(agg.m_tilde / agg.m_tilde.norm(), WeightProvenance::approximate);
        } else {
            if (md_sum_vanishes(task, agg.m_tilde)) throw DegenerateError("Minkowski-difference sum vanishes");
            w.emplace(solve_exact(agg, options.ridge_rel));
        }
    } catch (const DegenerateError&) {
    } catch (const SingularError&) {
    }
    if (!w) {
        MeasureReport r;
        r.weight_mode = options.mode;
        r.i_count = task.i_count();
        r.j_count = task.j_count();
        r.pair_stats.zero_count = static_cast<std::uint64_t>(task.i_count()) * static_cast<std::uint64_t>(task.j_count());
        r.degenerate = true;
        if (options.with_lda) {
            r.j_omega = 0.0;
            r.j_omega_degenerate = true;
        }
        return r;
    }
    auto r = evaluate(task, agg, *w, options);
    r.weight_mode = options.mode;
    return r;
}

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::ls_star: return "ls_star";
        case MeasureKind::ls0: return "ls0";
        case MeasureKind::ls1: return "ls1";
        case MeasureKind::ls2: return "ls2";
        case MeasureKind::j_omega: return "j_omega";
    }
    return "ls1";
}

MeasureKind parse_measure_kind(std::string_view text) {
    for (auto k : {MeasureKind::ls_star, MeasureKind::ls0, MeasureKind::ls1, MeasureKind::ls2, MeasureKind::j_omega})
        if (to_string(k) == text) return k;
    throw ConfigError("unknown measure '" + std::string(text) + "'");
}

double value_of(const MeasureReport& r, MeasureKind kind) {
    switch (kind) {
        case MeasureKind::ls_star: return r.ls_star;
        case MeasureKind::ls0: return r.ls0;
        case MeasureKind::ls1: return r.ls1;
        case MeasureKind::ls2: return r.ls2;
        case MeasureKind::j_omega: return r.j_omega.value_or(0.0);
    }
    return 0.0;
}

MultiLs multi_ls(const LabeledDataset& ds, const MeasureOptions& options, unsigned threads) {
    const int s = ds.class_count();
    if (s < 2) throw LabelError("multi-class measure needs at least two classes");
    MultiLs out;
    out.class_sizes = ds.class_sizes();
    out.per_class.resize(static_cast<std::size_t>(s));
    parallel_for(static_cast<std::size_t>(s), threads, [&](std::size_t c) {
        auto report = measure_task(binary_task(ds, static_cast<int>(c)), options);
        report.task = "class" + std::to_string(c) + "_vs_rest";
        out.per_class[c] = std::move(report);
    });

    auto& agg = out.aggregate;
    agg.task = "multiclass";
    agg.weight_mode = options.mode;
    double total = 0.0;
    bool any_j = false;
    double j_sum = 0.0;
    for (std::size_t c = 0; c < out.per_class.size(); ++c) {
        const auto& r = out.per_class[c];
        const double w = static_cast<double>(out.class_sizes[c]);
        total += w;
        agg.ls_star += w * r.ls_star;
        agg.ls0 += w * r.ls0;
        agg.ls1 += w * r.ls1;
        agg.ls2 += w * r.ls2;
        if (r.j_omega) {
            any_j = true;
            j_sum += w * *r.j_omega;
        }
        agg.j_omega_degenerate = agg.j_omega_degenerate || r.j_omega_degenerate;
        agg.pair_stats.pos_count += r.pair_stats.pos_count;
        agg.pair_stats.neg_count += r.pair_stats.neg_count;
        agg.pair_stats.zero_count += r.pair_stats.zero_count;
        agg.pair_stats.abs_sum += r.pair_stats.abs_sum;
        agg.pair_stats.signed_sum += r.pair_stats.signed_sum;
        agg.degenerate = agg.degenerate || r.degenerate;
    }
    agg.ls_star /= total;
    agg.ls0 /= total;
    agg.ls1 /= total;
    agg.ls2 /= total;
    if (any_j) agg.j_omega = j_sum / total;
    agg.i_count = ds.rows();
    agg.j_count = 0;
    return out;
}

MeasureReport measure_dataset(const LabeledDataset& ds, const MeasureOptions& options, unsigned threads) {
    if (ds.class_count() == 2) {
        auto r = measure_task(binary_task(ds, 0), options);
        r.task = "class0_vs_rest";
        return r;
    }
    return multi_ls(ds, options, threads).aggregate;
}

}  // namespace sepscope
