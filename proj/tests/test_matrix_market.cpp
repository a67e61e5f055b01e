#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "saddleprec/errors.hpp"
#include "saddleprec/matrix_market.hpp"
#include "saddleprec/rng.hpp"

using namespace saddleprec;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("saddleprec_mm_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}
}  // namespace

TEST_CASE("array write/read round-trip is exact") {
  TempDir tmp;
  Rng rng(99);
  const DenseMatrix m = rng.normal_matrix(7, 3);
  const std::string path = (tmp.path / "m.mtx").string();
  write_matrix_market_array(path, m);
  const DenseMatrix back = read_matrix_market_array(path);
  CHECK(back == m);  // %.17g round-trips doubles exactly
}

TEST_CASE("writes are byte-deterministic") {
  TempDir tmp;
  Rng rng(5);
  const DenseMatrix m = rng.normal_matrix(4, 4);
  write_matrix_market_array((tmp.path / "a.mtx").string(), m);
  write_matrix_market_array((tmp.path / "b.mtx").string(), m);
  CHECK(slurp(tmp.path / "a.mtx") == slurp(tmp.path / "b.mtx"));
}

TEST_CASE("zero-row matrices survive the round-trip") {
  TempDir tmp;
  const DenseMatrix m(0, 5);
  const std::string path = (tmp.path / "empty.mtx").string();
  write_matrix_market_array(path, m);
  const DenseMatrix back = read_matrix_market_array(path);
  CHECK(back.rows() == 0);
  CHECK(back.cols() == 5);
}

TEST_CASE("rejects unsupported headers and malformed bodies") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path / "bad1.mtx");
    out << "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2.0\n";
  }
  CHECK_THROWS_AS(read_matrix_market_array((tmp.path / "bad1.mtx").string()),
                  IoError);
  {
    std::ofstream out(tmp.path / "bad2.mtx");
    out << "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n3.0\n";
  }
  CHECK_THROWS_AS(read_matrix_market_array((tmp.path / "bad2.mtx").string()),
                  IoError);
  CHECK_THROWS_AS(read_matrix_market_array((tmp.path / "missing.mtx").string()),
                  IoError);
}

TEST_CASE("column-major layout matches the format spec") {
  TempDir tmp;
  const DenseMatrix m{{1.0, 3.0}, {2.0, 4.0}};
  const std::string path = (tmp.path / "cm.mtx").string();
  write_matrix_market_array(path, m);
  const std::string text = slurp(path);
  // Entries down each column first: 1, 2, 3, 4.
  CHECK(text ==
        "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
}
