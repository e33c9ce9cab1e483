#pragma once

#include "sepscope/activation.hpp"
#include "sepscope/dataset.hpp"
#include "sepscope/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace sepscope {

// ---- F_sigma grids

struct GridRow {
    double x = 0.0;
    double y = 0.0;
    double f = 0.0;  // NaN where the denominator vanishes
    bool above = false;
};

/// Points per axis: ceil((hi - lo) / step), starting at lo.
Index grid_points(double lo, double hi, double step);

/// Row-major over x then y. Throws UnsupportedError for relu, ConfigError for
/// an empty range or non-positive step.
std::vector<GridRow> f_sigma_grid(ActivationKind kind, double x_lo, double x_hi, double y_lo, double y_hi,
                                  double step, double threshold = 2.0);

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows);

// ---- random pseudo-linear stacks

enum class InitKind { gaussian, uniform };

std::string_view to_string(InitKind kind);
InitKind parse_init(std::string_view text);

/// gaussian: N(0, scale^2 / fan_in); uniform: U(-scale, scale).
struct PlmInit {
    InitKind kind = InitKind::gaussian;
    double scale = 1.0;
};

/// layers[l] has shape (width of layer l-1) x (width of layer l); layer 0 is
/// the input. Each layer maps a row x to act(x V).
struct PlmStack {
    std::vector<Matrix> layers;
    ActivationKind activation = ActivationKind::sigmoid;
    PlmInit init;
    std::uint64_t seed = 0;

    Index input_dim() const { return layers.empty() ? 0 : layers.front().rows(); }
    Index depth() const { return static_cast<Index>(layers.size()); }
};

/// Layers are drawn in order from a single stream, so the first k layers of a
/// deeper stack equal the stack of depth k with the same seed.
PlmStack random_plm_stack(Index n_in, const std::vector<Index>& widths, ActivationKind kind, PlmInit init,
                          std::uint64_t seed);

/// Throws ShapeError when consecutive layer shapes do not chain.
void validate_stack(const PlmStack& stack);

/// Output of every layer for the rows of x, in layer order.
std::vector<Matrix> apply_plm(const PlmStack& stack, const Matrix& x);

/// Both sides mapped through every layer.
std::vector<BinaryTask> map_task(const PlmStack& stack, const BinaryTask& task);

// ---- Monte-Carlo studies

struct StudyRow {
    Index size = 0;  // width or depth
    Index trials = 0;
    Index increase_count = 0;
    Index degenerate_count = 0;
    double fraction = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct StudyOptions {
    ActivationKind kind = ActivationKind::sigmoid;
    PlmInit init;
    std::uint64_t seed = 0;
    Index trials = 100;
    double ridge_rel = 1e-10;
    unsigned threads = 1;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(Index successes, Index trials);

/// Seed of trial t. Depends on (seed, t) only, so studies with different
/// widths or depths share their random streams trial by trial.
std::uint64_t trial_seed(std::uint64_t seed, Index trial);

/// LS_2 at the exact weight. Counts as an increase when the mapped value
/// exceeds the original by more than 1e-9 relative.
struct Ls2Result {
    double value = 0.0;
    bool degenerate = false;
};
Ls2Result exact_ls2(const BinaryTask& task, double ridge_rel = 1e-10);
bool is_increase(double mapped, double original);

/// One single-layer map per trial and width.
std::vector<StudyRow> width_study(const BinaryTask& task, const std::vector<Index>& widths,
                                  const StudyOptions& options);

struct DepthStudy {
    std::vector<StudyRow> rows;
    /// trajectory[d][l]: mean LS_2 after layer l+1 at depth depths[d], over
    /// the non-degenerate trials.
    std::vector<std::vector<double>> trajectory;
    double baseline = 0.0;
};

/// Stacks of `width` repeated per depth. Depth 0 applies no map and reports 0.
DepthStudy depth_study(const BinaryTask& task, const std::vector<Index>& depths, Index width,
                       const StudyOptions& options);

void write_study_csv(std::ostream& os, std::string_view size_column, const std::vector<StudyRow>& rows);
void write_trajectory_csv(std::ostream& os, const std::vector<Index>& depths, const DepthStudy& study);

// ---- side flips of a single MD point

struct FlipCheck {
    std::vector<bool> condition;  // F > 2 per hidden column
    bool all_hold = false;
    int side_before = 0;  // sign of omega . (a - b)
    int side_after = 0;   // sign of (V^T omega) . (act(aV) - act(bV))
};

/// v has shape N x H, omega length N. Sides within tol of zero are 0.
FlipCheck flip_check(const Vector& a, const Vector& b, const Matrix& v, const Vector& omega, ActivationKind kind,
                     double threshold = 2.0, double tol = 1e-12);

}  // namespace sepscope
