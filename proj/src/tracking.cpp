#include "sepscope/tracking.hpp"

#include "sepscope/dataset.hpp"
#include "sepscope/parallel.hpp"
#include "sepscope/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace sepscope {

std::string_view LayerCell::status() const {
    if (!ok) return "error";
    return report.degenerate ? "degenerate" : "ok";
}

LayerCell measure_layer(std::string layer, const Matrix& points, const std::vector<int>& labels,
                        const MeasureOptions& options) {
    LayerCell cell;
    cell.layer = std::move(layer);
    try {
        LabeledDataset ds(points, labels);
        cell.report = measure_dataset(ds, options);
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.message = e.what();
        cell.report = MeasureReport{};
        cell.report.weight_mode = options.mode;
        cell.report.degenerate = true;
    }
    return cell;
}

std::vector<std::optional<double>> TrackSeries::column(const std::string& layer, MeasureKind kind) const {
    std::vector<std::optional<double>> out;
    out.reserve(epochs.size());
    for (const auto& e : epochs) {
        auto it = std::find_if(e.layers.begin(), e.layers.end(), [&](const LayerCell& c) { return c.layer == layer; });
        if (it == e.layers.end() || !it->ok)
            out.emplace_back();
        else
            out.emplace_back(value_of(it->report, kind));
    }
    return out;
}

namespace {

std::vector<double> mid_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ShapeError("series lengths differ");
    if (x.size() < 3) throw ConfigError("rank correlation needs at least 3 points");
    const auto rx = mid_ranks(x);
    const auto ry = mid_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateError("rank correlation of a constant series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double sync_correlation(const TrackSeries& series, const std::string& layer, MeasureKind kind) {
    const auto col = series.column(layer, kind);
    std::vector<double> m, acc;
    for (std::size_t e = 0; e < col.size(); ++e) {
        if (!col[e] || !series.epochs[e].train_acc) continue;
        m.push_back(*col[e]);
        acc.push_back(*series.epochs[e].train_acc);
    }
    return spearman(m, acc);
}

TrackSeries track_manifest(const RunManifest& manifest, const MeasureOptions& options, unsigned threads) {
    TrackSeries series;
    for (const auto& e : manifest.epochs)
        for (const auto& l : e.layers)
            if (std::find(series.layer_names.begin(), series.layer_names.end(), l.name) == series.layer_names.end())
                series.layer_names.push_back(l.name);

    struct Job {
        std::size_t epoch;
        std::size_t layer;
        const LayerDump* dump;
    };
    std::vector<Job> jobs;
    series.epochs.resize(manifest.epochs.size());
    for (std::size_t e = 0; e < manifest.epochs.size(); ++e) {
        const auto& src = manifest.epochs[e];
        auto& rec = series.epochs[e];
        rec.epoch = src.epoch;
        rec.train_acc = src.train_acc;
        rec.test_acc = src.test_acc;
        rec.layers.resize(series.layer_names.size());
        for (std::size_t l = 0; l < series.layer_names.size(); ++l) {
            rec.layers[l].layer = series.layer_names[l];
            auto it = std::find_if(src.layers.begin(), src.layers.end(),
                                   [&](const LayerDump& d) { return d.name == series.layer_names[l]; });
            if (it == src.layers.end()) {
                rec.layers[l].ok = false;
                rec.layers[l].message = "layer missing from epoch";
                rec.layers[l].report.degenerate = true;
                rec.layers[l].report.weight_mode = options.mode;
            } else {
                jobs.push_back({e, l, &*it});
            }
        }
    }
    parallel_for(jobs.size(), threads, [&](std::size_t k) {
        const auto& job = jobs[k];
        auto& cell = series.epochs[job.epoch].layers[job.layer];
        try {
            const auto ds = load_dataset(job.dump->matrix, job.dump->labels);
            cell = measure_layer(job.dump->name, ds.points(), ds.labels(), options);
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.message = e.what();
            cell.report.degenerate = true;
            cell.report.weight_mode = options.mode;
        }
    });
    return series;
}

namespace {

std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

void write_series_csv(std::ostream& os, const TrackSeries& series) {
    os << "epoch,train_acc,test_acc";
    for (const auto& name : series.layer_names)
        for (const char* col : {"ls_star", "ls0", "ls1", "ls2", "j_omega", "zero_count", "status"})
            os << ',' << name << '.' << col;
    os << '\n';
    for (const auto& e : series.epochs) {
        os << e.epoch << ',' << opt_double(e.train_acc) << ',' << opt_double(e.test_acc);
        for (const auto& c : e.layers) {
            const auto& r = c.report;
            os << ',' << format_double(r.ls_star) << ',' << format_double(r.ls0) << ',' << format_double(r.ls1) << ','
               << format_double(r.ls2) << ',' << opt_double(r.j_omega) << ',' << r.pair_stats.zero_count << ','
               << c.status();
        }
        os << '\n';
    }
}

void write_series_json(std::ostream& os, const TrackSeries& series) {
    Json doc;
    doc["layers"] = series.layer_names;
    Json epochs = Json::array();
    for (const auto& e : series.epochs) {
        Json je;
        je["epoch"] = e.epoch;
        je["train_acc"] = e.train_acc ? Json(*e.train_acc) : Json(nullptr);
        je["test_acc"] = e.test_acc ? Json(*e.test_acc) : Json(nullptr);
        Json layers = Json::object();
        for (const auto& c : e.layers) {
            Json jc = report_to_json(c.report);
            jc["status"] = std::string(c.status());
            if (!c.message.empty()) jc["message"] = c.message;
            layers[c.layer] = std::move(jc);
        }
        je["layers"] = std::move(layers);
        epochs.push_back(std::move(je));
    }
    doc["epochs"] = std::move(epochs);
    os << doc.dump(2) << '\n';
}

}  // namespace sepscope
