#pragma once

#include "sepscope/dataset.hpp"

#include <cstdint>
#include <string_view>

namespace sepscope {

enum class SyntheticKind { gaussians, xor_blobs, rings };

std::string_view to_string(SyntheticKind kind);
SyntheticKind parse_synthetic(std::string_view text);

/// gaussians: two isotropic blobs with centres `margin` apart on the first
///            axis, standard deviation `noise`.
/// xor:       four blobs at (+-margin/2, +-margin/2); opposite quadrants share
///            a label.
/// rings:     class 0 on radius 1, class 1 on radius 1 + margin, radial
///            noise `noise`.
/// Extra dimensions beyond the first two carry pure noise. Rows are grouped
/// by class.
struct SyntheticOptions {
    SyntheticKind kind = SyntheticKind::gaussians;
    Index n_per_class = 100;
    double noise = 0.2;
    double margin = 2.0;
    Index dim = 2;
    std::uint64_t seed = 0;
};

LabeledDataset make_synthetic(const SyntheticOptions& options);

}  // namespace sepscope
