#pragma once

#include "sepscope/dataset.hpp"
#include "sepscope/linalg.hpp"
#include "sepscope/md_aggregates.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sepscope {

enum class WeightProvenance { approximate, exact, user };
enum class WeightMode { approx, exact };

std::string_view to_string(WeightMode mode);
std::string_view to_string(WeightProvenance p);
WeightMode parse_weight_mode(std::string_view text);

/// Hyperplane normal for the MD hyperplane omega . m = 0.
/// Must be finite and not identically zero.
class WeightVector {
public:
    WeightVector(Vector omega, WeightProvenance provenance);

    const Vector& omega() const noexcept { return omega_; }
    WeightProvenance provenance() const noexcept { return provenance_; }
    Index size() const noexcept { return omega_.size(); }

private:
    Vector omega_;
    WeightProvenance provenance_;
};

/// A measure value; degenerate denominators give value 0 with the flag set.
struct Measured {
    double value = 0.0;
    bool degenerate = false;
};

// Measures at a fixed weight. A missing zero_tol means default_zero_tol of
// the projections.

/// max(pos, neg) / (I*J)
Measured ls_star_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);
/// |sum sgn(omega . m)| / (I*J) = |pos - neg| / (I*J)
Measured ls0_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);
/// |sum omega . m| / sum |omega . m|
Measured ls1_at(const BinaryTask& task, const Vector& omega, std::optional<double> zero_tol = std::nullopt);
/// (omega . m~)^2 / (omega^T M M^T omega)
Measured ls2_at(const BinaryTask& task, const Vector& omega);
Measured ls2_at(const MdAggregates& agg, const Vector& omega);

Measured ls_star_from(const PairStats& s);
Measured ls0_from(const PairStats& s);
Measured ls1_from(const PairStats& s, double zero_tol);

/// m~ / ||m~||. Throws DegenerateError when m~ vanishes.
WeightVector approx_weight(const BinaryTask& task);
WeightVector approx_weight(const MdAggregates& agg);

/// Maximizer of the LS_2 Rayleigh ratio. Sigma = G^{-1/2} m~ m~^T G^{-1/2} has
/// rank one, so its top eigenvector maps back to omega proportional to
/// G^{-1} m~; this solves (G + ridge) omega = m~ and normalizes.
/// Throws DegenerateError for m~ = 0 and propagates SingularError.
WeightVector exact_weight(const BinaryTask& task, double ridge_rel = 1e-10);
WeightVector exact_weight(const MdAggregates& agg, double ridge_rel = 1e-10);

struct LdaStats {
    Vector mu_a;
    Vector mu_b;
    SymMatrix s_w;  // sum of centered scatters of both sides
    SymMatrix s_b;  // (mu_a - mu_b)(mu_a - mu_b)^T
};

LdaStats lda_stats(const BinaryTask& task);
/// (omega^T S_b omega) / (omega^T S_w omega)
Measured j_omega_at(const LdaStats& lda, const Vector& omega);
Measured j_omega_at(const BinaryTask& task, const Vector& omega);

struct MeasureOptions {
    WeightMode mode = WeightMode::approx;
    std::optional<double> zero_tol;
    double ridge_rel = 1e-10;
    bool with_lda = true;
};

struct MeasureReport {
    std::string task;
    WeightMode weight_mode = WeightMode::approx;
    double ls_star = 0.0;
    double ls0 = 0.0;
    double ls1 = 0.0;
    double ls2 = 0.0;
    std::optional<double> j_omega;
    bool j_omega_degenerate = false;
    PairStats pair_stats;
    std::optional<WeightVector> weight;
    bool degenerate = false;
    Index i_count = 0;
    Index j_count = 0;
};

/// Chooses the weight per options.mode, then evaluates every measure at that
/// single weight. Weight failures give an all-zero report with the degenerate
/// flag instead of throwing.
MeasureReport measure_task(const BinaryTask& task, const MeasureOptions& options = {});

/// All measures at a caller-supplied weight.
MeasureReport measure_at(const BinaryTask& task, const WeightVector& weight, const MeasureOptions& options = {});

enum class MeasureKind { ls_star, ls0, ls1, ls2, j_omega };
std::string_view to_string(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view text);
double value_of(const MeasureReport& r, MeasureKind kind);

/// One-vs-rest aggregate: sum_s |A_s| LS(A_s, rest) / sum_s |A_s|.
struct MultiLs {
    std::vector<MeasureReport> per_class;
    std::vector<Index> class_sizes;
    MeasureReport aggregate;  // size-weighted averages, summed counts

    double value(MeasureKind kind) const { return value_of(aggregate, kind); }
};

MultiLs multi_ls(const LabeledDataset& ds, const MeasureOptions& options = {}, unsigned threads = 1);

/// Binary report for S = 2 (positive class 0), OvR aggregate otherwise.
MeasureReport measure_dataset(const LabeledDataset& ds, const MeasureOptions& options = {}, unsigned threads = 1);

}  // namespace sepscope
