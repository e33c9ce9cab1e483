#pragma once

#include "sepscope/errors.hpp"
#include "sepscope/manifest.hpp"
#include "sepscope/measures.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sepscope {

/// Measures of one layer at one epoch. A failed cell keeps a zero report
/// and the error text in message.
struct LayerCell {
    std::string layer;
    MeasureReport report;
    bool ok = true;
    std::string message;

    /// "ok", "degenerate" or "error".
    std::string_view status() const;
};

/// Builds the dataset (class count = largest label + 1) and measures it.
/// Errors are caught into the cell.
LayerCell measure_layer(std::string layer, const Matrix& points, const std::vector<int>& labels,
                        const MeasureOptions& options);

struct EpochRecord {
    int epoch = 0;
    std::optional<double> train_acc;
    std::optional<double> test_acc;
    std::vector<LayerCell> layers;
};

struct TrackSeries {
    std::vector<std::string> layer_names;
    std::vector<EpochRecord> epochs;

    /// Measure per epoch for one layer; failed cells give nullopt.
    std::vector<std::optional<double>> column(const std::string& layer, MeasureKind kind) const;
};

/// Raised when training diverges. Carries the epochs completed so far.
class TrainingError : public Error {
public:
    TrainingError(const std::string& what, TrackSeries partial)
        : Error(what), partial_(std::move(partial)) {}
    const TrackSeries& partial() const noexcept { return partial_; }

private:
    TrackSeries partial_;
};

/// Spearman rank correlation; ties get mid-ranks. Throws DegenerateError
/// when either series is constant, ConfigError for fewer than 3 points.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Correlation of a layer measure with training accuracy over epochs.
/// Epochs whose cell failed or lack an accuracy are skipped.
double sync_correlation(const TrackSeries& series, const std::string& layer, MeasureKind kind = MeasureKind::ls1);

/// Measures every (epoch, layer) cell of a manifest. Cell failures are
/// recorded per cell; the series always covers every epoch.
TrackSeries track_manifest(const RunManifest& manifest, const MeasureOptions& options = {}, unsigned threads = 1);

/// Columns: epoch, train_acc, test_acc, then per layer
/// <layer>.ls_star, .ls0, .ls1, .ls2, .j_omega, .zero_count, .status.
void write_series_csv(std::ostream& os, const TrackSeries& series);
void write_series_json(std::ostream& os, const TrackSeries& series);

}  // namespace sepscope
