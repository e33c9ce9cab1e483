#include "sepscope/dataset.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/matrix_io.hpp"
#include "sepscope/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace sepscope {

namespace {

void check_finite(const Matrix& m) {
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            if (!std::isfinite(m(r, c)))
                throw DataError("non-finite value at row " + std::to_string(r) + ", column " +
                                std::to_string(c));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<long long> parse_integer(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct CsvTable {
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    std::size_t width = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_commas(line);
        if (table.rows.empty())
            width = cells.size();
        else if (cells.size() != width)
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " columns, found " +
                             std::to_string(cells.size()));
        table.rows.emplace_back(cells.begin(), cells.end());
    }
    if (table.rows.empty()) throw ParseError(path.string() + ": empty file");
    return table;
}

// A first row with a non-numeric cell outside the label column is a header.
bool has_header(const CsvTable& t, int label_col = -1) {
    const auto& first = t.rows.front();
    for (std::size_t c = 0; c < first.size(); ++c) {
        if (static_cast<int>(c) == label_col) continue;
        const auto& cell = first[c];
        if (!parse_double(cell).has_value() && cell != "nan" && cell != "NaN" && cell != "inf" && cell != "-inf")
            return true;
    }
    return false;
}

double cell_value(const std::string& cell, std::size_t row, std::size_t col) {
    auto v = parse_double(cell);
    if (!v)
        throw ParseError("non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    if (!std::isfinite(*v))
        throw DataError("non-finite value at row " + std::to_string(row) + ", column " +
                        std::to_string(col));
    return *v;
}

// Integer labels are used verbatim; any other token set is mapped by first
// appearance.
std::vector<int> labels_from_tokens(const std::vector<std::string>& tokens) {
    std::vector<int> out;
    out.reserve(tokens.size());
    bool all_int = true;
    for (const auto& t : tokens) {
        auto v = parse_integer(t);
        if (!v || *v < 0 || *v > std::numeric_limits<int>::max()) {
            all_int = false;
            break;
        }
        out.push_back(static_cast<int>(*v));
    }
    if (all_int) return out;
    out.clear();
    std::unordered_map<std::string, int> ids;
    for (const auto& t : tokens) {
        auto [it, inserted] = ids.emplace(t, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

LabeledDataset::LabeledDataset(Matrix points, std::vector<int> labels)
    : LabeledDataset(std::move(points), labels,
                     labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1) {}

LabeledDataset::LabeledDataset(Matrix points, std::vector<int> labels, int class_count)
    : points_(std::move(points)), labels_(std::move(labels)), class_count_(class_count) {
    if (static_cast<Index>(labels_.size()) != points_.rows())
        throw LabelError("label count " + std::to_string(labels_.size()) + " does not match " +
                         std::to_string(points_.rows()) + " rows");
    if (class_count_ <= 0) throw LabelError("dataset needs at least one class");
    std::vector<Index> seen(static_cast<std::size_t>(class_count_), 0);
    for (int l : labels_) {
        if (l < 0 || l >= class_count_)
            throw LabelError("label " + std::to_string(l) + " outside [0, " +
                             std::to_string(class_count_) + ")");
        ++seen[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < class_count_; ++c)
        if (seen[static_cast<std::size_t>(c)] == 0)
            throw LabelError("class " + std::to_string(c) + " has no members");
    check_finite(points_);
}

std::vector<Index> LabeledDataset::class_sizes() const {
    std::vector<Index> sizes(static_cast<std::size_t>(class_count_), 0);
    for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

LabeledDataset LabeledDataset::select(std::span<const Index> rows) const {
    Matrix pts(static_cast<Index>(rows.size()), cols());
    std::vector<int> lab;
    lab.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        pts.row(static_cast<Index>(k)) = points_.row(rows[k]);
        lab.push_back(labels_[static_cast<std::size_t>(rows[k])]);
    }
    return LabeledDataset(std::move(pts), std::move(lab), class_count_);
}

BinaryTask BinaryTask::from_sets(Matrix a, Matrix b) {
    if (a.rows() < 1 || b.rows() < 1) throw ShapeError("both sides of a task need at least one point");
    if (a.cols() != b.cols())
        throw ShapeError("side dimensions differ: " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()));
    BinaryTask t;
    t.rows_a.resize(static_cast<std::size_t>(a.rows()));
    std::iota(t.rows_a.begin(), t.rows_a.end(), Index{0});
    t.rows_b.resize(static_cast<std::size_t>(b.rows()));
    std::iota(t.rows_b.begin(), t.rows_b.end(), a.rows());
    t.set_a = std::move(a);
    t.set_b = std::move(b);
    return t;
}

BinaryTask BinaryTask::swapped() const {
    BinaryTask t;
    t.set_a = set_b;
    t.set_b = set_a;
    t.rows_a = rows_b;
    t.rows_b = rows_a;
    return t;
}

BinaryTask BinaryTask::subset(std::span<const Index> keep_a, std::span<const Index> keep_b) const {
    BinaryTask t;
    t.set_a.resize(static_cast<Index>(keep_a.size()), dim());
    t.set_b.resize(static_cast<Index>(keep_b.size()), dim());
    for (std::size_t k = 0; k < keep_a.size(); ++k) {
        t.set_a.row(static_cast<Index>(k)) = set_a.row(keep_a[k]);
        t.rows_a.push_back(rows_a[static_cast<std::size_t>(keep_a[k])]);
    }
    for (std::size_t k = 0; k < keep_b.size(); ++k) {
        t.set_b.row(static_cast<Index>(k)) = set_b.row(keep_b[k]);
        t.rows_b.push_back(rows_b[static_cast<std::size_t>(keep_b[k])]);
    }
    return t;
}

BinaryTask binary_task(const LabeledDataset& ds, int positive_class) {
    if (positive_class < 0 || positive_class >= ds.class_count())
        throw LabelError("positive class " + std::to_string(positive_class) + " outside [0, " +
                         std::to_string(ds.class_count()) + ")");
    BinaryTask t;
    for (Index r = 0; r < ds.rows(); ++r)
        (ds.labels()[static_cast<std::size_t>(r)] == positive_class ? t.rows_a : t.rows_b).push_back(r);
    if (t.rows_a.empty()) throw LabelError("class " + std::to_string(positive_class) + " has no members");
    if (t.rows_b.empty()) throw LabelError("no rows outside class " + std::to_string(positive_class));
    t.set_a.resize(static_cast<Index>(t.rows_a.size()), ds.cols());
    t.set_b.resize(static_cast<Index>(t.rows_b.size()), ds.cols());
    for (std::size_t k = 0; k < t.rows_a.size(); ++k) t.set_a.row(static_cast<Index>(k)) = ds.points().row(t.rows_a[k]);
    for (std::size_t k = 0; k < t.rows_b.size(); ++k) t.set_b.row(static_cast<Index>(k)) = ds.points().row(t.rows_b[k]);
    return t;
}

LabeledDataset load_csv(const std::filesystem::path& path, const LabelSource& labels) {
    auto table = read_csv_table(path);
    const auto width = static_cast<int>(table.rows.front().size());

    int label_col = -1;
    if (const auto* col = std::get_if<LabelColumn>(&labels)) {
        label_col = col->index < 0 ? width + col->index : col->index;
        if (label_col < 0 || label_col >= width)
            throw ParseError("label column " + std::to_string(col->index) + " outside table of width " +
                             std::to_string(width));
        if (width < 2) throw ParseError(path.string() + ": no feature columns besides labels");
    }
    const std::size_t first = has_header(table, label_col) ? 1 : 0;
    const std::size_t n_rows = table.rows.size() - first;
    if (n_rows == 0) throw ParseError(path.string() + ": header without data");

    const Index n_cols = label_col >= 0 ? width - 1 : width;
    Matrix pts(static_cast<Index>(n_rows), n_cols);
    std::vector<std::string> tokens;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& row = table.rows[r + first];
        Index c_out = 0;
        for (int c = 0; c < width; ++c) {
            if (c == label_col) {
                tokens.push_back(row[static_cast<std::size_t>(c)]);
                continue;
            }
            pts(static_cast<Index>(r), c_out++) = cell_value(row[static_cast<std::size_t>(c)], r + first, static_cast<std::size_t>(c));
        }
    }

    std::vector<int> lab;
    if (label_col >= 0)
        lab = labels_from_tokens(tokens);
    else
        lab = load_labels(std::get<std::filesystem::path>(labels));
    return LabeledDataset(std::move(pts), std::move(lab));
}

Matrix load_csv_matrix(const std::filesystem::path& path) {
    auto table = read_csv_table(path);
    const std::size_t first = has_header(table) ? 1 : 0;
    const std::size_t n_rows = table.rows.size() - first;
    if (n_rows == 0) throw ParseError(path.string() + ": header without data");
    const auto width = table.rows.front().size();
    Matrix pts(static_cast<Index>(n_rows), static_cast<Index>(width));
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t c = 0; c < width; ++c)
            pts(static_cast<Index>(r), static_cast<Index>(c)) = cell_value(table.rows[r + first][c], r + first, c);
    return pts;
}

std::vector<int> load_labels(const std::filesystem::path& path) {
    if (is_label_binary(path)) {
        auto raw = load_labels_binary(path);
        std::vector<int> out;
        out.reserve(raw.size());
        for (auto v : raw) {
            if (v < 0 || v > std::numeric_limits<int>::max())
                throw LabelError("label " + std::to_string(v) + " out of range");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (!t.empty()) tokens.emplace_back(t);
    }
    if (tokens.empty()) throw ParseError(path.string() + ": empty label file");
    return labels_from_tokens(tokens);
}

LabeledDataset load_dataset(const std::filesystem::path& points, const std::filesystem::path& labels) {
    if (is_matrix_binary(points)) return LabeledDataset(load_matrix_binary(points), load_labels(labels));
    return load_csv(points, labels);
}

std::vector<Index> subsample_indices(const LabeledDataset& ds, Index n, std::uint64_t seed,
                                     bool stratified) {
    if (n < 1) throw ConfigError("probe size must be at least 1");
    const Index m = ds.rows();
    std::vector<Index> out;
    if (n >= m) {
        out.resize(static_cast<std::size_t>(m));
        std::iota(out.begin(), out.end(), Index{0});
        return out;
    }
    auto rng = make_stream(seed, 0x70726F6265ull);
    // Partial Fisher-Yates over a pool of candidate rows.
    auto draw = [&rng](std::vector<Index> pool, Index k, std::vector<Index>& dst) {
        for (Index i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
            dst.push_back(pool[static_cast<std::size_t>(i)]);
        }
    };
    if (!stratified) {
        std::vector<Index> pool(static_cast<std::size_t>(m));
        std::iota(pool.begin(), pool.end(), Index{0});
        draw(std::move(pool), n, out);
    } else {
        const auto sizes = ds.class_sizes();
        const auto s = sizes.size();
        std::vector<Index> quota(s);
        std::vector<std::pair<double, std::size_t>> remainder;
        Index assigned = 0;
        for (std::size_t c = 0; c < s; ++c) {
            const double exact = static_cast<double>(n) * static_cast<double>(sizes[c]) / static_cast<double>(m);
            quota[c] = static_cast<Index>(std::floor(exact));
            assigned += quota[c];
            remainder.emplace_back(exact - std::floor(exact), c);
        }
        std::stable_sort(remainder.begin(), remainder.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        for (std::size_t k = 0; assigned < n && k < remainder.size(); ++k, ++assigned)
            ++quota[remainder[k].second];
        for (std::size_t c = 0; c < s; ++c) {
            std::vector<Index> pool;
            for (Index r = 0; r < m; ++r)
                if (ds.labels()[static_cast<std::size_t>(r)] == static_cast<int>(c)) pool.push_back(r);
            draw(std::move(pool), std::min(quota[c], sizes[c]), out);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

LabeledDataset subsample_probe(const LabeledDataset& ds, Index n, std::uint64_t seed, bool stratified) {
    if (n >= ds.rows()) {
        if (n < 1) throw ConfigError("probe size must be at least 1");
        return ds;
    }
    auto idx = subsample_indices(ds, n, seed, stratified);
    return ds.select(idx);
}

}  // namespace sepscope
