#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "nldiff/error.hpp"
#include "nldiff/snapshot.hpp"

using namespace nldiff;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nldiff_snapshot_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("Snapshots round-trip bit for bit", "[snapshot]") {
  for (int N : {1, 2}) {
    const Grid g(N, 256, 7.5);
    Field f = Field::sample(g, [](const Point& x) { return std::sin(x[0]) / 3.0 + std::exp(x[1]); }, 1.0 / 3.0);
    f[5] = -0.0;
    f[6] = 5e-324;
    const auto path = scratch(fmt::format("round_trip_{}.nldf", N));
    save(f, path);
    const Field g2 = load(path);
    CHECK(g2.grid() == f.grid());
    CHECK(g2.time() == f.time());
    REQUIRE(g2.size() == f.size());
    CHECK(std::memcmp(g2.values().data(), f.values().data(), f.size() * sizeof(double)) == 0);
    CHECK(std::filesystem::file_size(path) == kSnapshotHeaderBytes + f.size() * sizeof(double));
  }
}

TEST_CASE("Corrupt snapshots are rejected", "[snapshot]") {
  const Grid g(1, 256, 1.0);
  const Field f(g, 2.0);
  auto bytes = encode_snapshot(f);

  SECTION("truncated") {
    bytes.resize(bytes.size() - 8);
    CHECK_THROWS_AS(decode_snapshot(bytes), CorruptSnapshot);
    bytes.resize(10);
    CHECK_THROWS_AS(decode_snapshot(bytes), CorruptSnapshot);
  }
  SECTION("wrong magic") {
    bytes[0] = std::byte{'X'};
    CHECK_THROWS_AS(decode_snapshot(bytes), CorruptSnapshot);
  }
  SECTION("wrong version") {
    bytes[4] = std::byte{2};
    CHECK_THROWS_AS(decode_snapshot(bytes), CorruptSnapshot);
  }
  SECTION("bad header values") {
    bytes[8] = std::byte{3};
    CHECK_THROWS_AS(decode_snapshot(bytes), CorruptSnapshot);
  }
  SECTION("truncated file on disk") {
    const auto path = scratch("truncated.nldf");
    {
      std::ofstream out(path, std::ios::binary);
      out.write(reinterpret_cast<const char*>(bytes.data()), 20);
    }
    CHECK_THROWS_AS(load(path), CorruptSnapshot);
  }
}

TEST_CASE("Missing files raise IoError", "[snapshot]") {
  CHECK_THROWS_AS(load(scratch("does_not_exist.nldf")), IoError);
  CHECK_THROWS_AS(save(Field(Grid(1, 256, 1.0)), "/nonexistent_dir/x.nldf"), IoError);
}
