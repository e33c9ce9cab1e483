#include "sepscope/synthetic.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace sepscope {

std::string_view to_string(SyntheticKind kind) {
    switch (kind) {
    case SyntheticKind::gaussians: return "gaussians";
    case SyntheticKind::xor_blobs: return "xor";
    case SyntheticKind::rings: return "rings";
    }
    return "?";
}

SyntheticKind parse_synthetic(std::string_view text) {
    for (auto k : {SyntheticKind::gaussians, SyntheticKind::xor_blobs, SyntheticKind::rings})
        if (text == to_string(k)) return k;
    throw ConfigError("unknown synthetic dataset '" + std::string(text) + "'");
}

LabeledDataset make_synthetic(const SyntheticOptions& o) {
    if (o.n_per_class < 2) throw ConfigError("need at least 2 points per class");
    if (o.dim < 1 || (o.kind != SyntheticKind::gaussians && o.dim < 2))
        throw ConfigError("dimension too small for this dataset");
    if (!(o.noise >= 0) || !std::isfinite(o.margin)) throw ConfigError("noise and margin must be finite, noise >= 0");

    auto gen = make_stream(o.seed, 0x73796E7468);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    const Index n = o.n_per_class;
    Matrix x(2 * n, o.dim);
    std::vector<int> labels(static_cast<std::size_t>(2 * n));
    for (Index r = 0; r < 2 * n; ++r) {
        const int label = r < n ? 0 : 1;
        labels[static_cast<std::size_t>(r)] = label;
        for (Index c = 0; c < o.dim; ++c) x(r, c) = o.noise * normal(gen);
        switch (o.kind) {
        case SyntheticKind::gaussians:
            x(r, 0) += label == 0 ? -o.margin / 2 : o.margin / 2;
            break;
        case SyntheticKind::xor_blobs: {
            // alternate between the two blobs of the class
            const bool first = (r % 2) == 0;
            const double h = o.margin / 2;
            const double sx = first ? h : -h;
            const double sy = label == 0 ? sx : -sx;
            x(r, 0) += sx;
            x(r, 1) += sy;
            break;
        }
        case SyntheticKind::rings: {
            const double radius = (label == 0 ? 1.0 : 1.0 + o.margin) + x(r, 0);
            const double t = angle(gen);
            x(r, 0) = radius * std::cos(t);
            x(r, 1) = radius * std::sin(t);
            break;
        }
        }
    }
    return LabeledDataset(std::move(x), std::move(labels), 2);
}

}  // namespace sepscope
