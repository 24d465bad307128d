#include "nldiff/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <optional>
#include <iterator>
#include <system_error>

#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff {

static_assert(std::endian::native == std::endian::little,
              "snapshot encoding assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'N', 'L', 'D', 'F'};

template <class T>
void put(std::vector<std::byte>& out, const T& value) {
  const auto* p = reinterpret_cast<const std::byte*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

template <class T>
T get(std::span<const std::byte> bytes, std::size_t& offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  offset += sizeof(T);
  return value;
}

}  // namespace

std::vector<std::byte> encode_snapshot(const Field& field) {
  const Grid& g = field.grid();
  std::vector<std::byte> out;
  out.reserve(kSnapshotHeaderBytes + field.size() * sizeof(double));
  for (char c : kMagic) out.push_back(static_cast<std::byte>(c));
  put(out, kSnapshotVersion);
  put(out, static_cast<std::uint32_t>(g.dimension()));
  put(out, static_cast<std::uint64_t>(g.points_per_axis()));
  put(out, g.half_length());
  put(out, field.time());
  const auto* p = reinterpret_cast<const std::byte*>(field.values().data());
  out.insert(out.end(), p, p + field.size() * sizeof(double));
  return out;
}

Field decode_snapshot(std::span<const std::byte> bytes) {
  if (bytes.size() < kSnapshotHeaderBytes) {
    throw CorruptSnapshot(fmt::format("snapshot too short: {} bytes", bytes.size()));
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CorruptSnapshot("bad snapshot magic");
  std::size_t offset = 4;
  const auto version = get<std::uint32_t>(bytes, offset);
  if (version != kSnapshotVersion) {
    throw CorruptSnapshot(fmt::format("unsupported snapshot version {}", version));
  }
  const auto dim = get<std::uint32_t>(bytes, offset);
  const auto n = get<std::uint64_t>(bytes, offset);
  const auto half_length = get<double>(bytes, offset);
  const auto time = get<double>(bytes, offset);
  std::optional<Grid> grid;
  try {
    grid.emplace(static_cast<int>(dim), static_cast<std::size_t>(n), half_length);
  } catch (const InvalidArgument& e) {
    throw CorruptSnapshot(fmt::format("bad snapshot header: {}", e.what()));
  }
  const std::size_t expected = kSnapshotHeaderBytes + grid->size() * sizeof(double);
  if (bytes.size() != expected) {
    throw CorruptSnapshot(
        fmt::format("snapshot length {} does not match header ({})", bytes.size(), expected));
  }
  std::vector<double> values(grid->size());
  std::memcpy(values.data(), bytes.data() + offset, values.size() * sizeof(double));
  return Field(*grid, std::move(values), time);
}

void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::byte> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open {} for writing", tmp.string()));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(fmt::format("cannot rename {} to {}", tmp.string(), path.string()));
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::as_bytes(std::span(text.data(), text.size())));
}

void save(const Field& field, const std::filesystem::path& path) {
  write_file_atomic(path, encode_snapshot(field));
}

Field load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("read of {} failed", path.string()));
  return decode_snapshot(std::as_bytes(std::span(raw.data(), raw.size())));
}

}  // namespace nldiff
