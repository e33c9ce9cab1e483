#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sepscope {

struct LayerDump {
    std::string name;
    std::filesystem::path matrix;
    std::filesystem::path labels;
};

struct EpochEntry {
    int epoch = 0;
    std::vector<LayerDump> layers;  // in capture order
    std::optional<double> train_acc;
    std::optional<double> test_acc;
};

/// Per-epoch hidden-layer dumps of one training run.
///
/// JSON form:
///   {"run_id": "...",
///    "epochs": [{"epoch": 1, "train_acc": 0.91, "test_acc": 0.88,
///                "layers": {"input": {"matrix": "e1_input.lsmx", "labels": "labels.lsmy"}, ...}}]}
/// Relative paths resolve against the manifest's directory.
struct RunManifest {
    std::string run_id;
    std::vector<EpochEntry> epochs;
};

RunManifest load_manifest(const std::filesystem::path& path);

/// Paths are written relative to the manifest directory when they live under it.
void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// Checks that every referenced file exists and parses and that layers of one
/// epoch agree on row count and labels. Returns one message per problem.
std::vector<std::string> validate_manifest(const RunManifest& manifest);

}  // namespace sepscope
