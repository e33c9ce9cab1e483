#include "sepscope/manifest.hpp"

#include "sepscope/dataset.hpp"
#include "sepscope/errors.hpp"
#include "sepscope/matrix_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace sepscope {

using ordered_json = nlohmann::ordered_json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::string relative_to(const std::filesystem::path& base, const std::filesystem::path& p) {
    if (p.is_relative()) return p.generic_string();
    auto rel = p.lexically_relative(base);
    if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
    return p.generic_string();
}

std::optional<double> optional_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number()) throw ParseError(std::string("manifest field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what());
    }
    const auto base = path.parent_path();
    RunManifest m;
    try {
        m.run_id = doc.value("run_id", std::string{});
        if (!doc.contains("epochs")) return m;
        int ordinal = 0;
        for (const auto& e : doc.at("epochs")) {
            EpochEntry entry;
            entry.epoch = e.value("epoch", ++ordinal);
            ordinal = entry.epoch;
            entry.train_acc = optional_number(e, "train_acc");
            entry.test_acc = optional_number(e, "test_acc");
            const auto& layers = e.at("layers");
            if (layers.is_object()) {
                for (const auto& [name, files] : layers.items())
                    entry.layers.push_back({name, resolve(base, files.at("matrix").get<std::string>()),
                                            resolve(base, files.at("labels").get<std::string>())});
            } else {
                for (const auto& l : layers)
                    entry.layers.push_back({l.at("name").get<std::string>(),
                                            resolve(base, l.at("matrix").get<std::string>()),
                                            resolve(base, l.at("labels").get<std::string>())});
            }
            m.epochs.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what());
    }
    return m;
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    const auto base = path.parent_path();
    ordered_json doc;
    doc["run_id"] = manifest.run_id;
    doc["epochs"] = ordered_json::array();
    for (const auto& e : manifest.epochs) {
        ordered_json je;
        je["epoch"] = e.epoch;
        if (e.train_acc) je["train_acc"] = *e.train_acc;
        if (e.test_acc) je["test_acc"] = *e.test_acc;
        ordered_json layers = ordered_json::object();
        for (const auto& l : e.layers)
            layers[l.name] = {{"matrix", relative_to(base, l.matrix)}, {"labels", relative_to(base, l.labels)}};
        je["layers"] = std::move(layers);
        doc["epochs"].push_back(std::move(je));
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("cannot create manifest " + path.string());
    out << doc.dump(2) << '\n';
}

std::vector<std::string> validate_manifest(const RunManifest& manifest) {
    std::vector<std::string> problems;
    for (const auto& e : manifest.epochs) {
        std::optional<std::vector<int>> labels0;
        std::optional<Index> rows0;
        for (const auto& l : e.layers) {
            const std::string cell = "epoch " + std::to_string(e.epoch) + " layer " + l.name + ": ";
            try {
                auto m = load_matrix_binary(l.matrix);
                auto lab = load_labels(l.labels);
                if (static_cast<Index>(lab.size()) != m.rows())
                    problems.push_back(cell + "label count does not match rows");
                if (rows0 && *rows0 != m.rows()) problems.push_back(cell + "row count differs from other layers");
                if (labels0 && *labels0 != lab) problems.push_back(cell + "labels differ from other layers");
                rows0 = m.rows();
                labels0 = std::move(lab);
            } catch (const Error& err) {
                problems.push_back(cell + err.what());
            }
        }
    }
    return problems;
}

}  // namespace sepscope
