#pragma once

#include "sepscope/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sepscope {

/// Points (one per row) with dense class labels 0..S-1.
///
/// Construction validates: label count equals row count, every label lies in
/// [0, S), every class occurs at least once, and all coordinates are finite.
/// Instances are immutable afterwards.
class LabeledDataset {
public:
    LabeledDataset(Matrix points, std::vector<int> labels);
    LabeledDataset(Matrix points, std::vector<int> labels, int class_count);

    const Matrix& points() const noexcept { return points_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    int class_count() const noexcept { return class_count_; }
    Index rows() const noexcept { return points_.rows(); }
    Index cols() const noexcept { return points_.cols(); }

    std::vector<Index> class_sizes() const;

    /// Rows in the given order; the class count is kept.
    LabeledDataset select(std::span<const Index> rows) const;

private:
    Matrix points_;
    std::vector<int> labels_;
    int class_count_ = 0;
};

/// One-vs-rest split: set_a holds the positive class, set_b the rest.
/// Source row indices are kept so subsets can be reported against the input.
struct BinaryTask {
    Matrix set_a;
    Matrix set_b;
    std::vector<Index> rows_a;
    std::vector<Index> rows_b;

    static BinaryTask from_sets(Matrix a, Matrix b);

    Index i_count() const noexcept { return set_a.rows(); }
    Index j_count() const noexcept { return set_b.rows(); }
    Index dim() const noexcept { return set_a.cols(); }

    BinaryTask swapped() const;
    /// Keeps the listed local rows of each side.
    BinaryTask subset(std::span<const Index> keep_a, std::span<const Index> keep_b) const;
};

BinaryTask binary_task(const LabeledDataset& ds, int positive_class);

/// Where the labels of a CSV table come from.
struct LabelColumn {
    int index = -1;  // negative counts from the end (-1 = last column)
};
using LabelSource = std::variant<LabelColumn, std::filesystem::path>;

LabeledDataset load_csv(const std::filesystem::path& path, const LabelSource& labels);

/// Plain numeric CSV without labels.
Matrix load_csv_matrix(const std::filesystem::path& path);

/// Label file: LSMY binary or one label per line. Integer labels are kept
/// as-is; anything else is mapped by first appearance.
std::vector<int> load_labels(const std::filesystem::path& path);

/// Loads points from LSMX or CSV (by magic) and labels from a separate file.
LabeledDataset load_dataset(const std::filesystem::path& points, const std::filesystem::path& labels);

/// Uniform sample of n rows without replacement, returned in source order.
/// When n >= rows the dataset is returned unchanged. Stratified mode
/// allocates rows per class by largest remainder.
LabeledDataset subsample_probe(const LabeledDataset& ds, Index n, std::uint64_t seed,
                               bool stratified = false);

/// Row indices chosen by subsample_probe.
std::vector<Index> subsample_indices(const LabeledDataset& ds, Index n, std::uint64_t seed,
                                     bool stratified = false);

}  // namespace sepscope
