#include "sepscope/matrix_io.hpp"

#include "sepscope/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace sepscope {

namespace {

constexpr std::array<char, 4> kMatrixMagic{'L', 'S', 'M', 'X'};
constexpr std::array<char, 4> kLabelMagic{'L', 'S', 'M', 'Y'};
constexpr std::size_t kMatrixHeaderSize = 4 + 4 + 1 + 3 + 8 + 8;
constexpr std::size_t kLabelHeaderSize = 4 + 4 + 8;

template <class T>
void put_le(std::vector<unsigned char>& buf, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    buf.insert(buf.end(), bytes, bytes + sizeof(T));
}

template <class T>
T get_le(const unsigned char* p) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<unsigned char>& buf) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("write failed for " + path.string());
}

bool has_magic(const std::filesystem::path& path, const std::array<char, 4>& magic) {
    std::ifstream in(path, std::ios::binary);
    std::array<char, 4> got{};
    if (!in.read(got.data(), 4)) return false;
    return got == magic;
}

}  // namespace

Matrix load_matrix_binary(const std::filesystem::path& path, MatrixHeader* header) {
    const auto buf = read_all(path);
    const std::string where = path.string() + ": ";
    if (buf.size() < kMatrixHeaderSize) throw FormatError(where + "truncated header");
    if (std::memcmp(buf.data(), kMatrixMagic.data(), 4) != 0) throw FormatError(where + "bad magic");
    const auto version = get_le<std::uint32_t>(buf.data() + 4);
    if (version != kMatrixFormatVersion)
        throw FormatError(where + "unsupported version " + std::to_string(version));
    const auto code = buf[8];
    if (code != 1 && code != 2) throw FormatError(where + "unknown dtype code " + std::to_string(code));
    MatrixHeader h;
    h.dtype = static_cast<DType>(code);
    h.rows = get_le<std::uint64_t>(buf.data() + 12);
    h.cols = get_le<std::uint64_t>(buf.data() + 20);
    const std::size_t width = h.dtype == DType::f32 ? 4 : 8;
    if (h.cols != 0 && h.rows > (std::uint64_t{1} << 62) / width / h.cols)
        throw FormatError(where + "declared size overflows");
    const std::uint64_t expected = h.rows * h.cols * width;
    const std::uint64_t actual = buf.size() - kMatrixHeaderSize;
    if (actual < expected) throw FormatError(where + "truncated payload");
    if (actual > expected) throw FormatError(where + "trailing bytes after payload");

    Matrix m(static_cast<Index>(h.rows), static_cast<Index>(h.cols));
    const unsigned char* p = buf.data() + kMatrixHeaderSize;
    double* dst = m.data();
    const std::size_t count = static_cast<std::size_t>(h.rows * h.cols);
    if (h.dtype == DType::f64)
        for (std::size_t k = 0; k < count; ++k, p += 8) dst[k] = get_le<double>(p);
    else
        for (std::size_t k = 0; k < count; ++k, p += 4) dst[k] = static_cast<double>(get_le<float>(p));
    if (header) *header = h;
    return m;
}

void write_matrix_binary(const Matrix& m, const std::filesystem::path& path, DType dtype) {
    std::vector<unsigned char> buf;
    const std::size_t width = dtype == DType::f32 ? 4 : 8;
    buf.reserve(kMatrixHeaderSize + static_cast<std::size_t>(m.size()) * width);
    buf.insert(buf.end(), kMatrixMagic.begin(), kMatrixMagic.end());
    put_le<std::uint32_t>(buf, kMatrixFormatVersion);
    buf.push_back(static_cast<unsigned char>(dtype));
    buf.insert(buf.end(), 3, 0);
    put_le<std::uint64_t>(buf, static_cast<std::uint64_t>(m.rows()));
    put_le<std::uint64_t>(buf, static_cast<std::uint64_t>(m.cols()));
    const double* src = m.data();
    for (Index k = 0; k < m.size(); ++k) {
        if (dtype == DType::f64)
            put_le<double>(buf, src[k]);
        else
            put_le<float>(buf, static_cast<float>(src[k]));
    }
    write_all(path, buf);
}

std::vector<std::int64_t> load_labels_binary(const std::filesystem::path& path) {
    const auto buf = read_all(path);
    const std::string where = path.string() + ": ";
    if (buf.size() < kLabelHeaderSize) throw FormatError(where + "truncated header");
    if (std::memcmp(buf.data(), kLabelMagic.data(), 4) != 0) throw FormatError(where + "bad magic");
    const auto version = get_le<std::uint32_t>(buf.data() + 4);
    if (version != kMatrixFormatVersion)
        throw FormatError(where + "unsupported version " + std::to_string(version));
    const auto count = get_le<std::uint64_t>(buf.data() + 8);
    const std::uint64_t actual = buf.size() - kLabelHeaderSize;
    if (count > actual / 8 || actual != count * 8)
        throw FormatError(where + (actual < count * 8 ? "truncated payload" : "trailing bytes after payload"));
    std::vector<std::int64_t> out(static_cast<std::size_t>(count));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = get_le<std::int64_t>(buf.data() + kLabelHeaderSize + 8 * k);
    return out;
}

void write_labels_binary(std::span<const std::int64_t> labels, const std::filesystem::path& path) {
    std::vector<unsigned char> buf;
    buf.reserve(kLabelHeaderSize + labels.size() * 8);
    buf.insert(buf.end(), kLabelMagic.begin(), kLabelMagic.end());
    put_le<std::uint32_t>(buf, kMatrixFormatVersion);
    put_le<std::uint64_t>(buf, labels.size());
    for (auto v : labels) put_le<std::int64_t>(buf, v);
    write_all(path, buf);
}

void write_labels_binary(std::span<const int> labels, const std::filesystem::path& path) {
    std::vector<std::int64_t> wide(labels.begin(), labels.end());
    write_labels_binary(std::span<const std::int64_t>(wide), path);
}

bool is_matrix_binary(const std::filesystem::path& path) { return has_magic(path, kMatrixMagic); }
bool is_label_binary(const std::filesystem::path& path) { return has_magic(path, kLabelMagic); }

}  // namespace sepscope
