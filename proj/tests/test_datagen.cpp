#include "pcpr/datagen.hpp"
#include "pcpr/io.hpp"
#include "pcpr/selfcheck.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace pcpr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("pcpr-test-" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("orthonormal factors") {
  Rng rng(2);
  for (auto [rows, cols] :
       {std::pair<Index, Index>{60, 40}, {40, 40}, {300, 200}}) {
    const Matrix q = random_orthonormal(rng, rows, cols);
    const Matrix gram = q.transpose() * q;
    CHECK((gram - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff() <=
          1e-10);
  }
  CHECK_THROWS_AS(random_orthonormal(rng, 3, 5), validation_error);
}

TEST_CASE("spectrum placement and eigengap") {
  const SynthSpec spec{60, 40, 0.1, 0.1, 5, 0.1};
  const Dataset ds = gen_random_a(spec);
  const Vector& evals = ds.truth->eigenvalues;
  int above = 0, below = 0;
  for (Index i = 0; i < evals.size(); ++i) {
    const bool hi = evals[i] >= spec.lambda * (1.0 + spec.a);
    const bool lo = evals[i] <= spec.lambda * (1.0 - spec.a);
    CHECK((hi || lo));  // nothing inside the gap
    above += hi;
    below += lo;
  }
  CHECK(above == 20);
  CHECK(below == 20);
  CHECK(ds.a.sigma_max_estimate() <= 1.0 + 1e-9);

  // gap-free generation also works
  const Dataset gf = gen_random_a({60, 40, 0.0, 0.1, 5, 0.1});
  CHECK(gf.a.sigma_max_estimate() <= 1.0 + 1e-9);
}

TEST_CASE("generation is deterministic per seed") {
  const SynthSpec spec{40, 20, 0.05, 0.1, 9, 0.1};
  const Dataset d1 = gen_random_a(spec);
  const Dataset d2 = gen_random_a(spec);
  CHECK((d1.a.a() - d2.a.a()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((d1.b - d2.b).cwiseAbs().maxCoeff() == 0.0);

  SynthSpec other = spec;
  other.seed = 10;
  const Dataset d3 = gen_random_a(other);
  CHECK((d1.a.a() - d3.a.a()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("regressand construction") {
  SynthSpec spec{40, 20, 0.1, 0.1, 11, 0.0};
  const Dataset noiseless = gen_random_a(spec);
  CHECK((noiseless.b - noiseless.a.apply(noiseless.truth->x_true)).norm() ==
        0.0);
  spec.noise_scale = 0.1;
  const Dataset noisy = gen_random_a(spec);
  CHECK(noisy.b.dot(noisy.a.apply(noisy.truth->x_true)) > 0.0);
  CHECK(std::abs(noisy.truth->x_true.norm() - 1.0) < 1e-12);
}

TEST_CASE("generation rejects bad specs") {
  CHECK_THROWS_WITH_AS(gen_random_a({40, 21, 0.1, 0.1, 1, 0.1}).b.norm(),
                       doctest::Contains("even"), validation_error);
  CHECK_THROWS_AS(gen_random_a({10, 20, 0.1, 0.1, 1, 0.1}), validation_error);
  CHECK_THROWS_AS(gen_random_a({40, 20, 12.0, 0.1, 1, 0.1}), validation_error);
  CHECK_THROWS_AS(gen_random_a({40, 20, 0.1, 0.0, 1, 0.1}), validation_error);
  CHECK_THROWS_AS(gen_random_a({1 << 20, 1 << 18, 0.1, 0.1, 1, 0.1}),
                  validation_error);
}

TEST_CASE("bundle round trip is bit exact") {
  TempDir dir("bundle");
  const SynthSpec spec{30, 20, 0.1, 0.1, 13, 0.1};
  const Dataset ds = gen_random_a(spec);
  const std::string stem = dir.file("ds");
  save_dataset(stem, ds, &spec);
  const Dataset back = load_dataset(stem);
  CHECK((back.a.a() - ds.a.a()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.b - ds.b).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(back.truth.has_value());
  CHECK((back.truth->eigenvalues - ds.truth->eigenvalues).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((back.truth->x_true - ds.truth->x_true).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv interop round trip") {
  TempDir dir("csv");
  const Dataset ds = gen_random_a({20, 10, 0.1, 0.1, 15, 0.1});
  write_matrix_csv(dir.file("a.csv"), ds.a.a());
  const Matrix a = read_matrix_csv(dir.file("a.csv"));
  REQUIRE(a.rows() == 20);
  double rel = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      rel = std::max(rel, std::abs(a(i, j) - ds.a.a()(i, j)) /
                              std::max(1e-300, std::abs(ds.a.a()(i, j))));
  CHECK(rel <= 1e-15);

  write_vector_csv(dir.file("b.csv"), ds.b);
  const Vector b = read_vector_csv(dir.file("b.csv"));
  CHECK((b - ds.b).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("external datasets load from the csv interop form") {
  TempDir dir("external");
  const Dataset ds = gen_random_a({20, 10, 0.1, 0.1, 21, 0.1});
  const std::string stem = dir.file("ext");
  write_matrix_csv(stem + ".a.csv", ds.a.a());
  write_vector_csv(stem + ".b.csv", ds.b);
  {
    std::ofstream manifest(stem + ".manifest.txt");
    manifest << "pcpr-dataset-v1\n"
             << "kind: external\n"
             << "matrix: " << stem << ".a.csv\n"
             << "rhs: " << stem << ".b.csv\n"
             << "truth: none\n";
  }
  const Dataset back = load_dataset(stem);
  CHECK(!back.truth.has_value());
  CHECK((back.a.a() - ds.a.a()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((back.b - ds.b).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("loading rejects an out-of-contract matrix with the measurement") {
  TempDir dir("badsigma");
  const SynthSpec spec{30, 20, 0.1, 0.1, 17, 0.1};
  const Dataset ds = gen_random_a(spec);
  const std::string stem = dir.file("ds");
  save_dataset(stem, ds, &spec);
  write_matrix_bin(stem + ".a.bin", 1.25 * ds.a.a());  // out of contract
  try {
    load_dataset(stem);
    FAIL("expected rejection");
  } catch (const validation_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("sigma_max") != std::string::npos);
    CHECK(msg.find("= 1.") != std::string::npos);  // the measured estimate
  }
}

TEST_CASE("container read failures are distinct") {
  TempDir dir("faults");
  const Dataset ds = gen_random_a({20, 10, 0.1, 0.1, 19, 0.1});
  const std::string good = dir.file("m.bin");
  write_matrix_bin(good, ds.a.a());

  // malformed header
  {
    std::fstream f(good, std::ios::in | std::ios::out | std::ios::binary);
    f.write("JUNK", 4);
  }
  try {
    read_matrix_bin(good);
    FAIL("expected malformed header");
  } catch (const io_error& e) {
    CHECK(e.fault() == io_fault::malformed_header);
  }

  // truncated payload
  const std::string trunc = dir.file("t.bin");
  write_matrix_bin(trunc, ds.a.a());
  fs::resize_file(trunc, fs::file_size(trunc) / 2);
  try {
    read_matrix_bin(trunc);
    FAIL("expected truncation");
  } catch (const io_error& e) {
    CHECK(e.fault() == io_fault::truncated_payload);
  }

  // dimension overflow
  const std::string huge = dir.file("h.bin");
  {
    std::ofstream f(huge, std::ios::binary);
    f.write("PCPRMAT1", 8);
    const std::uint64_t rows = 1ull << 60, cols = 4;
    f.write(reinterpret_cast<const char*>(&rows), 8);
    f.write(reinterpret_cast<const char*>(&cols), 8);
  }
  try {
    read_matrix_bin(huge);
    FAIL("expected overflow");
  } catch (const io_error& e) {
    CHECK(e.fault() == io_fault::dimension_overflow);
  }

  // missing file
  CHECK_THROWS_AS(read_matrix_bin(dir.file("absent.bin")), io_error);
  CHECK_THROWS_AS(load_dataset(dir.file("absent")), io_error);
}

TEST_CASE("module property suite") {
  const SuiteResult suite = check_datagen_properties(3);
  INFO(suite.name);
  CHECK(suite.pass);
}
