#include "sepscope/maxls.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/md_aggregates.hpp"

#include <algorithm>
#include <numeric>

namespace sepscope {

ViolationGraph violation_edges(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    const auto p = project(task, omega);
    const double tol = std::max(0.0, zero_tol.value_or(default_zero_tol(as_span(p.alpha), as_span(p.beta))));
    const auto stats = pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol);
    if (stats.pos_count + stats.neg_count == 0)
        throw DegenerateError("every MD projection lies in the zero band");

    ViolationGraph g;
    g.zero_tol = tol;
    g.major_side = stats.pos_count >= stats.neg_count ? +1 : -1;
    const Index ni = task.i_count();
    const Index nj = task.j_count();
    g.a_degree.assign(static_cast<std::size_t>(ni), 0);
    g.b_degree.assign(static_cast<std::size_t>(nj), 0);

    std::vector<Index> order(static_cast<std::size_t>(nj));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return p.beta(x) < p.beta(y); });

    std::vector<Index> row;
    for (Index i = 0; i < ni; ++i) {
        const double a = p.alpha(i);
        row.clear();
        if (g.major_side > 0) {
            // violations: a - b <= tol, i.e. the tail of ascending beta
            auto first = std::partition_point(order.begin(), order.end(),
                                              [&](Index j) { return a - p.beta(j) > tol; });
            row.assign(first, order.end());
        } else {
            // violations: a - b >= -tol, the head of ascending beta
            auto last = std::partition_point(order.begin(), order.end(),
                                             [&](Index j) { return a - p.beta(j) >= -tol; });
            row.assign(order.begin(), last);
        }
        std::sort(row.begin(), row.end());
        for (Index j : row) {
            g.edges.emplace_back(i, j);
            ++g.a_degree[static_cast<std::size_t>(i)];
            ++g.b_degree[static_cast<std::size_t>(j)];
        }
    }
    for (Index i = 0; i < ni; ++i)
        if (g.a_degree[static_cast<std::size_t>(i)] > 0) g.a_vertices.push_back(i);
    for (Index j = 0; j < nj; ++j)
        if (g.b_degree[static_cast<std::size_t>(j)] > 0) g.b_vertices.push_back(j);
    return g;
}

MaxLsResult greedy_maxls(const ViolationGraph& graph, Index i_count, Index j_count) {
    const auto ni = static_cast<std::size_t>(i_count);
    const auto nj = static_cast<std::size_t>(j_count);
    std::vector<std::vector<Index>> a_adj(ni), b_adj(nj);
    for (auto [i, j] : graph.edges) {
        a_adj[static_cast<std::size_t>(i)].push_back(j);
        b_adj[static_cast<std::size_t>(j)].push_back(i);
    }
    std::vector<Index> a_deg = graph.a_degree;
    std::vector<Index> b_deg = graph.b_degree;
    std::vector<char> a_alive(ni, 1), b_alive(nj, 1);
    Index a_live = i_count;
    Index b_live = j_count;
    std::size_t live_edges = graph.edges.size();

    MaxLsResult out;
    out.major_side = graph.major_side;
    while (live_edges > 0) {
        Index best_a = -1, best_b = -1;
        Index deg_a = 0, deg_b = 0;
        for (std::size_t i = 0; i < ni; ++i)
            if (a_alive[i] && a_deg[i] > deg_a) deg_a = a_deg[i], best_a = static_cast<Index>(i);
        for (std::size_t j = 0; j < nj; ++j)
            if (b_alive[j] && b_deg[j] > deg_b) deg_b = b_deg[j], best_b = static_cast<Index>(j);

        bool take_a = deg_a > deg_b || (deg_a == deg_b && a_live >= b_live);
        if (take_a) {
            const auto i = static_cast<std::size_t>(best_a);
            out.removed.push_back({SetSide::a, best_a, deg_a});
            a_alive[i] = 0;
            --a_live;
            for (Index j : a_adj[i])
                if (b_alive[static_cast<std::size_t>(j)]) --b_deg[static_cast<std::size_t>(j)];
            live_edges -= static_cast<std::size_t>(deg_a);
            a_deg[i] = 0;
        } else {
            const auto j = static_cast<std::size_t>(best_b);
            out.removed.push_back({SetSide::b, best_b, deg_b});
            b_alive[j] = 0;
            --b_live;
            for (Index i : b_adj[j])
                if (a_alive[static_cast<std::size_t>(i)]) --a_deg[static_cast<std::size_t>(i)];
            live_edges -= static_cast<std::size_t>(deg_b);
            b_deg[j] = 0;
        }
    }
    for (std::size_t i = 0; i < ni; ++i)
        if (a_alive[i]) out.kept_a.push_back(static_cast<Index>(i));
    for (std::size_t j = 0; j < nj; ++j)
        if (b_alive[j]) out.kept_b.push_back(static_cast<Index>(j));
    out.empty_side = out.kept_a.empty() || out.kept_b.empty();
    return out;
}

MaxLsResult greedy_maxls(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    return greedy_maxls(violation_edges(task, omega, zero_tol), task.i_count(), task.j_count());
}

bool verify_separable(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol) {
    if (task.i_count() == 0 || task.j_count() == 0) return true;
    const auto p = project(task, omega);
    const double tol = zero_tol.value_or(default_zero_tol(as_span(p.alpha), as_span(p.beta)));
    const auto s = pair_stats_fast(as_span(p.alpha), as_span(p.beta), tol);
    return s.pos_count == s.total() || s.neg_count == s.total();
}

BinaryTask kept_task(const BinaryTask& task, const MaxLsResult& result) {
    return task.subset(result.kept_a, result.kept_b);
}

}  // namespace sepscope
