#pragma once

#include "sepscope/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace sepscope {

// LSMX layout (little-endian):
//   "LSMX" | u32 version=1 | u8 dtype (1=f32, 2=f64) | u8 pad[3] | u64 rows | u64 cols | payload
// Payload is row-major. LSMY: "LSMY" | u32 version=1 | u64 count | i64 payload.

enum class DType : std::uint8_t { f32 = 1, f64 = 2 };

inline constexpr std::uint32_t kMatrixFormatVersion = 1;

struct MatrixHeader {
    DType dtype = DType::f64;
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
};

/// Reads an LSMX file; 32-bit payloads are widened to double.
Matrix load_matrix_binary(const std::filesystem::path& path, MatrixHeader* header = nullptr);

/// Writes an LSMX file. Narrowing to f32 rounds to nearest.
void write_matrix_binary(const Matrix& m, const std::filesystem::path& path, DType dtype = DType::f64);

std::vector<std::int64_t> load_labels_binary(const std::filesystem::path& path);
void write_labels_binary(std::span<const std::int64_t> labels, const std::filesystem::path& path);
void write_labels_binary(std::span<const int> labels, const std::filesystem::path& path);

/// Magic sniffing; false for missing or short files.
bool is_matrix_binary(const std::filesystem::path& path);
bool is_label_binary(const std::filesystem::path& path);

}  // namespace sepscope
