#include "sepscope/md_aggregates.hpp"

#include "sepscope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace sepscope {

namespace {

struct SideStats {
    Vector sum;
    Vector mean;
    SymMatrix scatter;  // sum of (x - mean)(x - mean)^T
};

SideStats side_stats(const Matrix& x) {
    SideStats s;
    s.sum = x.colwise().sum().transpose();
    s.mean = s.sum / static_cast<double>(x.rows());
    Matrix centered = x.rowwise() - s.mean.transpose();
    s.scatter = SymMatrix(x.cols());
    gram_accumulate(centered, 1.0, s.scatter);
    return s;
}

SymMatrix gram_from_sides(const SideStats& a, const SideStats& b, Index i, Index j) {
    SymMatrix g = a.scatter;
    g *= static_cast<double>(j);
    SymMatrix gb = b.scatter;
    gb *= static_cast<double>(i);
    g += gb;
    g.rank1_update(a.mean - b.mean, static_cast<double>(i) * static_cast<double>(j));
    return g;
}

}  // namespace

Vector md_sum(const BinaryTask& task) {
    const Vector sa = task.set_a.colwise().sum().transpose();
    const Vector sb = task.set_b.colwise().sum().transpose();
    return static_cast<double>(task.j_count()) * sa - static_cast<double>(task.i_count()) * sb;
}

SymMatrix md_gram(const BinaryTask& task) {
    return gram_from_sides(side_stats(task.set_a), side_stats(task.set_b), task.i_count(), task.j_count());
}

MdAggregates md_aggregates(const BinaryTask& task) {
    const auto a = side_stats(task.set_a);
    const auto b = side_stats(task.set_b);
    MdAggregates agg;
    agg.i_count = task.i_count();
    agg.j_count = task.j_count();
    agg.m_tilde = static_cast<double>(agg.j_count) * a.sum - static_cast<double>(agg.i_count) * b.sum;
    agg.md_gram = gram_from_sides(a, b, agg.i_count, agg.j_count);
    return agg;
}

Projections project(const BinaryTask& task, const Vector& omega) {
    if (omega.size() != task.dim())
        throw ShapeError("weight length " + std::to_string(omega.size()) + " does not match dimension " +
                         std::to_string(task.dim()));
    return {task.set_a * omega, task.set_b * omega};
}

double default_zero_tol(std::span<const double> alpha, std::span<const double> beta) {
    auto max_abs = [](std::span<const double> v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    return 1e-12 * (max_abs(alpha) + max_abs(beta) + 1.0);
}

PairStats pair_stats_naive(std::span<const double> alpha, std::span<const double> beta, double zero_tol) {
    PairStats s;
    zero_tol = std::max(zero_tol, 0.0);
    for (double a : alpha) {
        for (double b : beta) {
            const double d = a - b;
            if (std::abs(d) <= zero_tol)
                ++s.zero_count;
            else if (d > 0.0)
                ++s.pos_count;
            else
                ++s.neg_count;
            s.abs_sum += std::abs(d);
            s.signed_sum += d;
        }
    }
    return s;
}

PairStats pair_stats_fast(std::span<const double> alpha, std::span<const double> beta, double zero_tol) {
    PairStats s;
    zero_tol = std::max(zero_tol, 0.0);
    const std::size_t nb = beta.size();
    if (alpha.empty() || nb == 0) return s;

    std::vector<double> sorted(beta.begin(), beta.end());
    std::sort(sorted.begin(), sorted.end());

    // Shift for the absolute sums only; counts use the raw values so they
    // agree with the naive loop bit for bit.
    double shift = 0.0;
    for (double b : sorted) shift += b;
    shift /= static_cast<double>(nb);
    std::vector<double> prefix(nb + 1, 0.0);
    for (std::size_t k = 0; k < nb; ++k) prefix[k + 1] = prefix[k] + (sorted[k] - shift);
    const double total = prefix[nb];

    double sum_alpha = 0.0;
    double sum_beta = 0.0;
    for (double b : beta) sum_beta += b;

    for (double a : alpha) {
        sum_alpha += a;
        // fl(a - b) is non-increasing in b, so each predicate splits sorted beta once.
        const auto pos_end = std::partition_point(sorted.begin(), sorted.end(),
                                                  [a, zero_tol](double b) { return a - b > zero_tol; });
        const auto neg_begin = std::partition_point(pos_end, sorted.end(),
                                                    [a, zero_tol](double b) { return a - b >= -zero_tol; });
        const auto pos = static_cast<std::uint64_t>(pos_end - sorted.begin());
        const auto neg = static_cast<std::uint64_t>(sorted.end() - neg_begin);
        s.pos_count += pos;
        s.neg_count += neg;
        s.zero_count += nb - pos - neg;

        const double as = a - shift;
        const auto below = static_cast<std::size_t>(
            std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin());
        const double lower_part = static_cast<double>(below) * as - prefix[below];
        const double upper_part = (total - prefix[below]) - static_cast<double>(nb - below) * as;
        s.abs_sum += lower_part + upper_part;
    }
    s.signed_sum = static_cast<double>(nb) * sum_alpha - static_cast<double>(alpha.size()) * sum_beta;
    return s;
}

PairStats pair_stats(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    const auto p = project(task, omega);
    const double tol = zero_tol.value_or(default_zero_tol(as_span(p.alpha), as_span(p.beta)));
    return pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol);
}

}  // namespace sepscope
