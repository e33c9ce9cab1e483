#pragma once

#include "sepscope/activation.hpp"
#include "sepscope/dataset.hpp"
#include "sepscope/measures.hpp"
#include "sepscope/tracking.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sepscope {

enum class OutputKind { softmax, sigmoid };

std::string_view to_string(OutputKind kind);
OutputKind parse_output(std::string_view text);

struct ProbeConfig {
    Index size = 500;
    WeightMode weight_mode = WeightMode::approx;
    bool resample = false;  // draw a new probe every epoch
};

/// widths = [N, H_1, ..., H_L, C]. The sigmoid output needs C = 2 and uses a
/// single logit.
struct MlpConfig {
    std::vector<Index> widths{2, 32, 32, 2};
    ActivationKind hidden = ActivationKind::relu;
    OutputKind output = OutputKind::softmax;
    double learning_rate = 0.1;
    Index batch_size = 32;
    Index epochs = 100;
    std::uint64_t seed = 0;
    ProbeConfig probe;
    bool track = true;
    /// Writes per-epoch probe activations and a manifest when set.
    std::optional<std::filesystem::path> dump_dir;
    unsigned threads = 1;

    void validate() const;
    Index classes() const { return widths.back(); }
};

struct Gradients {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
};

/// Fully connected network with manual backpropagation.
class Mlp {
public:
    explicit Mlp(const MlpConfig& config);

    /// Post-activation output of every hidden layer, then the output
    /// probabilities (one column for the sigmoid output).
    std::vector<Matrix> forward(const Matrix& x) const;
    /// Class probabilities; softmax rows sum to 1.
    Matrix predict_proba(const Matrix& x) const;
    std::vector<int> predict(const Matrix& x) const;
    double accuracy(const LabeledDataset& ds) const;

    /// Mean cross-entropy over the rows and its gradient.
    double loss(const Matrix& x, std::span<const int> labels) const;
    double loss_and_gradients(const Matrix& x, std::span<const int> labels, Gradients& grads) const;
    void sgd_step(const Gradients& grads, double lr);

    std::vector<Matrix>& weights() { return w_; }
    std::vector<Vector>& biases() { return b_; }
    const std::vector<Matrix>& weights() const { return w_; }
    const std::vector<Vector>& biases() const { return b_; }
    Index hidden_layers() const { return static_cast<Index>(w_.size()) - 1; }

private:
    std::vector<Matrix> pre_activations(const Matrix& x, std::vector<Matrix>* post) const;

    ActivationKind hidden_;
    OutputKind output_;
    std::vector<Matrix> w_;  // fan_in x fan_out
    std::vector<Vector> b_;
};

/// Layer names used by tracking: "input", "hidden1", ... "hiddenL".
std::vector<std::string> layer_names(Index hidden_layers);

/// Trains with minibatch SGD. After each epoch the probe is pushed through
/// the network and every hidden layer plus the input is measured. Probe
/// sampling and measurement never touch the training generator, so the
/// weight trajectory does not depend on config.track. Throws TrainingError
/// on a non-finite loss.
TrackSeries train_mlp(const MlpConfig& config, const LabeledDataset& train, const LabeledDataset& test,
                      Mlp* final_model = nullptr);

}  // namespace sepscope
