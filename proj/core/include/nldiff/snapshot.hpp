#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "nldiff/field.hpp"

namespace nldiff {

/// Binary snapshot layout (little-endian):
///   "NLDF" | u32 version | u32 N | u64 n | f64 L | f64 time | n^N f64 values
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 4 + 4 + 4 + 8 + 8 + 8;

/// Writes atomically (temp file + rename). Throws IoError.
void save(const Field& field, const std::filesystem::path& path);

/// Throws IoError when unreadable, CorruptSnapshot on bad magic, version,
/// header values or length.
Field load(const std::filesystem::path& path);

/// Serialized bytes of a snapshot, as written by save().
std::vector<std::byte> encode_snapshot(const Field& field);
Field decode_snapshot(std::span<const std::byte> bytes);

/// Write-temp-then-rename helper shared by every file the tools emit.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::byte> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace nldiff
