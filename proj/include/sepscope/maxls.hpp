#pragma once

#include "sepscope/dataset.hpp"
#include "sepscope/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sepscope {

enum class SetSide { a, b };

/// Bipartite graph whose edges are the MD pairs that are not strictly on the
/// major side of omega . m = 0 (minor side or inside the zero band).
struct ViolationGraph {
    int major_side = +1;  // +1: omega . (a_i - b_j) > 0 is the major side
    double zero_tol = 0.0;
    std::vector<std::pair<Index, Index>> edges;  // (i, j), sorted
    std::vector<Index> a_degree;                 // length I
    std::vector<Index> b_degree;                 // length J
    std::vector<Index> a_vertices;               // i with a_degree > 0
    std::vector<Index> b_vertices;
};

struct Removal {
    SetSide set = SetSide::a;
    Index index = 0;   // local row in set_a / set_b
    Index degree = 0;  // degree when removed
};

/// Greedy separable subset. The name follows the usual "maximum linearly
/// separable subset" terminology, but greedy vertex deletion is not optimal.
struct MaxLsResult {
    int major_side = +1;
    std::vector<Index> kept_a;  // local rows, ascending
    std::vector<Index> kept_b;
    std::vector<Removal> removed;
    bool empty_side = false;
};

/// Ties in the side counts pick the positive side. All-zero projections throw
/// DegenerateError.
ViolationGraph violation_edges(const BinaryTask& task, const Vector& omega,
                               std::optional<double> zero_tol = std::nullopt);

/// Removes a maximum-degree vertex until no violation edge is left. Ties go
/// to the side with more surviving points (A on equal counts), then to the
/// lower index.
MaxLsResult greedy_maxls(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);
MaxLsResult greedy_maxls(const ViolationGraph& graph, Index i_count, Index j_count);

/// True iff every MD projection of the task lies strictly on one side beyond
/// the zero band. Empty sides are vacuously separable.
bool verify_separable(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);

/// The task restricted to the kept rows of a result.
BinaryTask kept_task(const BinaryTask& task, const MaxLsResult& result);

}  // namespace sepscope
