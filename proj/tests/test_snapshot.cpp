#include <doctest.h>

#include <filesystem>
#include <random>

#include "boat/snapshot.hpp"
#include "support/random_frames.hpp"

using namespace boat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("boat_snap_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("snapshot round-trips frames column by column") {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 5; ++iter) {
    auto f = testsupport::random_frame(rng, {.max_rows = 2000});
    TempDir dir;
    write_snapshot(f, dir.path);
    auto back = read_snapshot(dir.path);
    CHECK(back == f);
    CHECK(back.roles() == f.roles());
  }
}

TEST_CASE("snapshot preserves empty frames and real columns") {
  Frame f;
  f.add_column("label", Column::from_strings({}));
  f.add_column("std", Column::real({}));
  TempDir dir;
  write_snapshot(f, dir.path);
  auto back = read_snapshot(dir.path);
  CHECK(back == f);
  CHECK(back.row_count() == 0);

  Frame g;
  g.add_column("std", Column::real({1.5, 2.5}, {0, 0}));
  TempDir dir2;
  write_snapshot(g, dir2.path);
  CHECK(read_snapshot(dir2.path) == g);
}

TEST_CASE("snapshot detects a missing manifest") {
  TempDir dir;
  CHECK(!is_snapshot_dir(dir.path));
  CHECK_THROWS_WITH_AS(read_snapshot(dir.path), doctest::Contains("io-error"), Error);
}
