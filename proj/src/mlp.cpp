#include "sepscope/mlp.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/manifest.hpp"
#include "sepscope/matrix_io.hpp"
#include "sepscope/parallel.hpp"
#include "sepscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sepscope {

std::string_view to_string(OutputKind kind) { return kind == OutputKind::softmax ? "softmax" : "sigmoid"; }

OutputKind parse_output(std::string_view text) {
    if (text == "softmax") return OutputKind::softmax;
    if (text == "sigmoid") return OutputKind::sigmoid;
    throw ConfigError("unknown output '" + std::string(text) + "'");
}

void MlpConfig::validate() const {
    if (widths.size() < 2) throw ConfigError("widths need at least input and output");
    for (Index w : widths)
        if (w < 1) throw ConfigError("widths must be positive");
    if (classes() < 2) throw ConfigError("need at least 2 classes");
    if (output == OutputKind::sigmoid && classes() != 2) throw ConfigError("sigmoid output needs exactly 2 classes");
    if (epochs < 1) throw ConfigError("epochs must be at least 1");
    if (batch_size < 1) throw ConfigError("batch size must be at least 1");
    if (!(learning_rate >= 0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be >= 0");
    if (hidden == ActivationKind::linear) throw ConfigError("hidden activation must be nonlinear");
    if (probe.size < 1) throw ConfigError("probe size must be at least 1");
}

Mlp::Mlp(const MlpConfig& config) : hidden_(config.hidden), output_(config.output) {
    config.validate();
    auto gen = make_stream(config.seed, 1);
    const std::size_t n = config.widths.size();
    for (std::size_t l = 0; l + 1 < n; ++l) {
        const Index fan_in = config.widths[l];
        Index fan_out = config.widths[l + 1];
        if (l + 2 == n && output_ == OutputKind::sigmoid) fan_out = 1;
        std::normal_distribution<double> dist(0.0, 1.0 / std::sqrt(static_cast<double>(fan_in)));
        Matrix w(fan_in, fan_out);
        for (Index r = 0; r < fan_in; ++r)
            for (Index c = 0; c < fan_out; ++c) w(r, c) = dist(gen);
        w_.push_back(std::move(w));
        b_.push_back(Vector::Zero(fan_out));
    }
}

std::vector<Matrix> Mlp::pre_activations(const Matrix& x, std::vector<Matrix>* post) const {
    if (x.cols() != w_.front().rows())
        throw ShapeError("input has " + std::to_string(x.cols()) + " columns, network expects " +
                         std::to_string(w_.front().rows()));
    std::vector<Matrix> pre;
    pre.reserve(w_.size());
    Matrix h = x;
    for (std::size_t l = 0; l < w_.size(); ++l) {
        Matrix z = h * w_[l];
        z.rowwise() += b_[l].transpose();
        pre.push_back(z);
        if (l + 1 < w_.size()) {
            apply_activation(hidden_, z);
            if (post) post->push_back(z);
            h = std::move(z);
        }
    }
    return pre;
}

namespace {

// Row-wise softmax, stable against large logits.
Matrix softmax(const Matrix& z) {
    Matrix p(z.rows(), z.cols());
    for (Index r = 0; r < z.rows(); ++r) {
        const double mx = z.row(r).maxCoeff();
        double s = 0;
        for (Index c = 0; c < z.cols(); ++c) s += (p(r, c) = std::exp(z(r, c) - mx));
        p.row(r) /= s;
    }
    return p;
}

double log_sum_exp(const Matrix& z, Index r) {
    const double mx = z.row(r).maxCoeff();
    double s = 0;
    for (Index c = 0; c < z.cols(); ++c) s += std::exp(z(r, c) - mx);
    return mx + std::log(s);
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

}  // namespace

std::vector<Matrix> Mlp::forward(const Matrix& x) const {
    std::vector<Matrix> post;
    auto pre = pre_activations(x, &post);
    if (output_ == OutputKind::softmax) {
        post.push_back(softmax(pre.back()));
    } else {
        Matrix p = pre.back();
        apply_activation(ActivationKind::sigmoid, p);
        post.push_back(std::move(p));
    }
    return post;
}

Matrix Mlp::predict_proba(const Matrix& x) const {
    auto out = forward(x).back();
    if (output_ == OutputKind::softmax) return out;
    Matrix p(out.rows(), 2);
    p.col(1) = out.col(0);
    p.col(0) = Vector::Ones(out.rows()) - out.col(0);
    return p;
}

std::vector<int> Mlp::predict(const Matrix& x) const {
    const auto out = forward(x).back();
    std::vector<int> labels(static_cast<std::size_t>(out.rows()));
    for (Index r = 0; r < out.rows(); ++r) {
        if (output_ == OutputKind::sigmoid) {
            labels[static_cast<std::size_t>(r)] = out(r, 0) > 0.5 ? 1 : 0;
        } else {
            Index best = 0;
            out.row(r).maxCoeff(&best);
            labels[static_cast<std::size_t>(r)] = static_cast<int>(best);
        }
    }
    return labels;
}

double Mlp::accuracy(const LabeledDataset& ds) const {
    const auto pred = predict(ds.points());
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == ds.labels()[i];
    return pred.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(pred.size());
}

double Mlp::loss(const Matrix& x, std::span<const int> labels) const {
    if (static_cast<Index>(labels.size()) != x.rows()) throw ShapeError("label count does not match rows");
    const auto pre = pre_activations(x, nullptr);
    const Matrix& z = pre.back();
    double total = 0;
    for (Index r = 0; r < z.rows(); ++r) {
        const int y = labels[static_cast<std::size_t>(r)];
        if (output_ == OutputKind::softmax)
            total += log_sum_exp(z, r) - z(r, y);
        else
            total += softplus(z(r, 0)) - (y == 1 ? z(r, 0) : 0.0);
    }
    return total / static_cast<double>(z.rows());
}

double Mlp::loss_and_gradients(const Matrix& x, std::span<const int> labels, Gradients& grads) const {
    if (static_cast<Index>(labels.size()) != x.rows()) throw ShapeError("label count does not match rows");
    std::vector<Matrix> post;
    const auto pre = pre_activations(x, &post);
    const Matrix& z = pre.back();
    const double inv_b = 1.0 / static_cast<double>(x.rows());

    double total = 0;
    Matrix delta;
    if (output_ == OutputKind::softmax) {
        delta = softmax(z);
        for (Index r = 0; r < z.rows(); ++r) {
            const int y = labels[static_cast<std::size_t>(r)];
            if (y < 0 || y >= z.cols()) throw LabelError("label out of range for the output layer");
            total += log_sum_exp(z, r) - z(r, y);
            delta(r, y) -= 1.0;
        }
    } else {
        delta = z;
        apply_activation(ActivationKind::sigmoid, delta);
        for (Index r = 0; r < z.rows(); ++r) {
            const int y = labels[static_cast<std::size_t>(r)];
            if (y < 0 || y > 1) throw LabelError("label out of range for the output layer");
            total += softplus(z(r, 0)) - (y == 1 ? z(r, 0) : 0.0);
            delta(r, 0) -= y;
        }
    }
    delta *= inv_b;

    const std::size_t n = w_.size();
    grads.weights.resize(n);
    grads.biases.resize(n);
    for (std::size_t l = n; l-- > 0;) {
        const Matrix& in = l == 0 ? x : post[l - 1];
        grads.weights[l].noalias() = in.transpose() * delta;
        grads.biases[l] = delta.colwise().sum().transpose();
        if (l == 0) break;
        Matrix back = delta * w_[l].transpose();
        const Matrix& zl = pre[l - 1];
        for (Index r = 0; r < back.rows(); ++r)
            for (Index c = 0; c < back.cols(); ++c) back(r, c) *= act_d1(hidden_, zl(r, c));
        delta = std::move(back);
    }
    return total * inv_b;
}

void Mlp::sgd_step(const Gradients& grads, double lr) {
    for (std::size_t l = 0; l < w_.size(); ++l) {
        w_[l] -= lr * grads.weights[l];
        b_[l] -= lr * grads.biases[l];
    }
}

std::vector<std::string> layer_names(Index hidden_layers) {
    std::vector<std::string> names{"input"};
    for (Index l = 1; l <= hidden_layers; ++l) names.push_back("hidden" + std::to_string(l));
    return names;
}

namespace {

constexpr std::uint64_t kProbeSalt = 0x9B05688C2B3E6C1Full;

std::uint64_t probe_seed(std::uint64_t seed, int epoch) {
    return splitmix64(seed ^ kProbeSalt) + static_cast<std::uint64_t>(epoch);
}

std::vector<int> take_labels(const LabeledDataset& ds, const std::vector<Index>& rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (Index r : rows) out.push_back(ds.labels()[static_cast<std::size_t>(r)]);
    return out;
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
    return out;
}

}  // namespace

TrackSeries train_mlp(const MlpConfig& config, const LabeledDataset& train, const LabeledDataset& test,
                      Mlp* final_model) {
    config.validate();
    if (train.cols() != config.widths.front() || test.cols() != config.widths.front())
        throw ShapeError("dataset dimension does not match the input width");
    if (train.class_count() > config.classes() || test.class_count() > config.classes())
        throw LabelError("dataset has more classes than the output layer");

    Mlp net(config);
    auto shuffle_gen = make_stream(config.seed, 2);
    const bool observe = config.track || config.dump_dir.has_value();

    TrackSeries series;
    series.layer_names = layer_names(net.hidden_layers());
    MeasureOptions mopts;
    mopts.mode = config.probe.weight_mode;

    RunManifest manifest;
    manifest.run_id = "mlp-seed" + std::to_string(config.seed);
    std::filesystem::path shared_labels;
    if (config.dump_dir) std::filesystem::create_directories(*config.dump_dir);

    std::vector<Index> probe_rows;
    if (observe && !config.probe.resample) probe_rows = subsample_indices(train, config.probe.size, probe_seed(config.seed, 0));

    std::vector<Index> order(static_cast<std::size_t>(train.rows()));
    std::iota(order.begin(), order.end(), Index{0});
    const auto& x_all = train.points();
    Gradients grads;

    for (int epoch = 1; epoch <= static_cast<int>(config.epochs); ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_gen);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
            std::vector<Index> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                     order.begin() + static_cast<std::ptrdiff_t>(stop));
            const Matrix xb = take_rows(x_all, batch);
            const auto yb = take_labels(train, batch);
            const double loss = net.loss_and_gradients(xb, yb, grads);
            if (!std::isfinite(loss))
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch), series);
            net.sgd_step(grads, config.learning_rate);
        }
        bool finite = true;
        for (const auto& w : net.weights()) finite = finite && w.allFinite();
        if (!finite) throw TrainingError("non-finite weights after epoch " + std::to_string(epoch), series);

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_acc = net.accuracy(train);
        rec.test_acc = net.accuracy(test);

        if (observe) {
            if (config.probe.resample) probe_rows = subsample_indices(train, config.probe.size, probe_seed(config.seed, epoch));
            const Matrix px = take_rows(x_all, probe_rows);
            const auto py = take_labels(train, probe_rows);
            auto outs = net.forward(px);
            outs.pop_back();  // output layer is not measured
            std::vector<const Matrix*> layers{&px};
            for (const auto& h : outs) layers.push_back(&h);

            if (config.track) {
                rec.layers.resize(layers.size());
                parallel_for(layers.size(), config.threads, [&](std::size_t l) {
                    rec.layers[l] = measure_layer(series.layer_names[l], *layers[l], py, mopts);
                });
            }
            if (config.dump_dir) {
                const auto& dir = *config.dump_dir;
                EpochEntry entry;
                entry.epoch = epoch;
                entry.train_acc = rec.train_acc;
                entry.test_acc = rec.test_acc;
                std::filesystem::path labels_path;
                if (config.probe.resample || shared_labels.empty()) {
                    labels_path = config.probe.resample ? dir / ("e" + std::to_string(epoch) + "_labels.lsmy")
                                                        : dir / "probe_labels.lsmy";
                    write_labels_binary(std::span<const int>(py), labels_path);
                    if (!config.probe.resample) shared_labels = labels_path;
                } else {
                    labels_path = shared_labels;
                }
                for (std::size_t l = 0; l < layers.size(); ++l) {
                    const auto file = dir / ("e" + std::to_string(epoch) + "_" + series.layer_names[l] + ".lsmx");
                    write_matrix_binary(*layers[l], file, DType::f64);
                    entry.layers.push_back({series.layer_names[l], file, labels_path});
                }
                manifest.epochs.push_back(std::move(entry));
                save_manifest(manifest, dir / "manifest.json");
            }
        }
        series.epochs.push_back(std::move(rec));
    }
    if (final_model) *final_model = std::move(net);
    return series;
}

}  // namespace sepscope
