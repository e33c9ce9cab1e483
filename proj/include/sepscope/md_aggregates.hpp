#pragma once

#include "sepscope/dataset.hpp"
#include "sepscope/linalg.hpp"
#include "sepscope/types.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace sepscope {

/// Sum vector and Gram matrix of the Minkowski difference {a_i - b_j},
/// obtained from per-side statistics without forming the I*J points.
struct MdAggregates {
    Vector m_tilde;    // sum of all a_i - b_j
    SymMatrix md_gram;  // sum of (a_i - b_j)(a_i - b_j)^T
    Index i_count = 0;
    Index j_count = 0;
};

/// J * sum(a) - I * sum(b).
Vector md_sum(const BinaryTask& task);

/// J * S_A + I * S_B + I*J * d d^T, with S_X the centered scatter of a side and
/// d the difference of the side means. This equals
/// J*A^T A + I*B^T B - (sum a)(sum b)^T - (sum b)(sum a)^T but has no
/// cancellation between large terms.
SymMatrix md_gram(const BinaryTask& task);

MdAggregates md_aggregates(const BinaryTask& task);

struct Projections {
    Vector alpha;  // omega . a_i
    Vector beta;   // omega . b_j
};

Projections project(const BinaryTask& task, const Vector& omega);

/// Sign tallies of omega . (a_i - b_j) = alpha_i - beta_j over all pairs.
struct PairStats {
    std::uint64_t pos_count = 0;
    std::uint64_t neg_count = 0;
    std::uint64_t zero_count = 0;
    double abs_sum = 0.0;
    double signed_sum = 0.0;

    std::uint64_t total() const noexcept { return pos_count + neg_count + zero_count; }
};

/// 1e-12 * (max|alpha| + max|beta| + 1).
double default_zero_tol(std::span<const double> alpha, std::span<const double> beta);

/// Reference O(I*J) double loop. A pair is zero when |alpha_i - beta_j| <= zero_tol.
PairStats pair_stats_naive(std::span<const double> alpha, std::span<const double> beta, double zero_tol);

/// Same counts as the naive loop in O((I+J) log J): beta is sorted once, and
/// for each alpha_i the zero band edges and the split point are located by
/// binary search; absolute sums come from prefix sums of sorted beta.
PairStats pair_stats_fast(std::span<const double> alpha, std::span<const double> beta, double zero_tol);

inline std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

/// Projects and tallies; zero_tol defaults to default_zero_tol.
PairStats pair_stats(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);

}  // namespace sepscope
