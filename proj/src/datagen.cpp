#include "pcpr/datagen.hpp"

#include "pcpr/io.hpp"
#include "pcpr/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

namespace pcpr {

namespace {

constexpr char kTruthMagic[8] = {'P', 'C', 'P', 'R', 'T', 'R', 'U', '1'};
constexpr char kManifestVersion[] = "pcpr-dataset-v1";
constexpr std::int64_t kMaxBytes = std::int64_t{2} << 30;  // 2 GiB

void write_truth(const std::string& path, const GroundTruth& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw io_error(io_fault::not_found, "cannot open for writing: " + path);
  out.write(kTruthMagic, 8);
  const Index d = t.eigenvalues.size();
  detail::write_i64(out, d);
  detail::write_doubles(out, t.eigenvalues.data(), d);
  for (Index i = 0; i < d; ++i) {
    const Vector row = t.eigenvectors.row(i);
    detail::write_doubles(out, row.data(), d);
  }
  detail::write_doubles(out, t.x_true.data(), d);
  if (!out) throw io_error(io_fault::bad_value, "write failed: " + path);
}

GroundTruth read_truth(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(io_fault::not_found, "cannot open: " + path);
  detail::check_magic(in, kTruthMagic, path);
  const std::int64_t d = detail::read_i64(in, path);
  detail::check_dim(d, path);
  GroundTruth t;
  t.eigenvalues.resize(d);
  detail::read_doubles(in, t.eigenvalues.data(), d, path);
  t.eigenvectors.resize(d, d);
  std::vector<double> row(static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < d; ++i) {
    detail::read_doubles(in, row.data(), d, path);
    for (std::int64_t j = 0; j < d; ++j) t.eigenvectors(i, j) = row[j];
  }
  t.x_true.resize(d);
  detail::read_doubles(in, t.x_true.data(), d, path);
  return t;
}

}  // namespace

Matrix random_orthonormal(Rng& rng, Index rows, Index cols) {
  if (cols > rows)
    throw validation_error("random_orthonormal: need rows >= cols");
  const Matrix g = rng.gaussian_matrix(rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

Dataset gen_random_a(const SynthSpec& spec) {
  if (spec.d < 2 || spec.d % 2 != 0)
    throw validation_error(
        "gen_random_a: d must be even and >= 2 (half the singular values go "
        "to each interval)");
  if (spec.d > spec.d_prime)
    throw validation_error("gen_random_a: need d <= d_prime");
  if (!(spec.lambda > 0.0 && spec.lambda < 1.0))
    throw validation_error("gen_random_a: lambda must be in (0, 1)");
  if (!(spec.a >= 0.0) || spec.lambda * (1.0 + spec.a) > 1.0)
    throw validation_error(
        "gen_random_a: need a >= 0 and lambda (1+a) <= 1 so the upper "
        "interval is non-empty");
  if (!(spec.noise_scale >= 0.0))
    throw validation_error("gen_random_a: noise_scale must be >= 0");
  const std::int64_t bytes = std::int64_t{8} * spec.d_prime * spec.d;
  if (bytes > kMaxBytes)
    throw validation_error("gen_random_a: matrix would need " +
                           std::to_string(bytes) + " bytes (cap " +
                           std::to_string(kMaxBytes) + ")");

  Rng rng(spec.seed);
  const Index dp = spec.d_prime;
  const Index d = spec.d;
  const Matrix u = random_orthonormal(rng, dp, d);
  const Matrix v = random_orthonormal(rng, d, d);

  const double lo_hi = std::sqrt(spec.lambda * (1.0 - spec.a));
  const double hi_lo = std::sqrt(spec.lambda * (1.0 + spec.a));
  std::vector<double> sigma(static_cast<std::size_t>(d));
  for (Index i = 0; i < d / 2; ++i)
    sigma[static_cast<std::size_t>(i)] = rng.uniform(hi_lo, 1.0);
  for (Index i = d / 2; i < d; ++i)
    sigma[static_cast<std::size_t>(i)] = rng.uniform(0.0, lo_hi);

  // sort descending and carry the singular-vector pairing along
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&sigma](Index a_, Index b_) {
    return sigma[static_cast<std::size_t>(a_)] >
           sigma[static_cast<std::size_t>(b_)];
  });
  Vector sig(d);
  Matrix u_s(dp, d), v_s(d, d);
  for (Index i = 0; i < d; ++i) {
    sig[i] = sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    u_s.col(i) = u.col(order[static_cast<std::size_t>(i)]);
    v_s.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }

  Matrix a = u_s * sig.asDiagonal() * v_s.transpose();

  Vector coeff = rng.gaussian_vector(d / 2);
  coeff /= coeff.norm();
  const Vector x_true = v_s.leftCols(d / 2) * coeff;
  const Vector ax = a * x_true;
  Vector b = ax;
  if (spec.noise_scale > 0.0)
    b += spec.noise_scale * ax.norm() * rng.unit_vector(dp);

  GroundTruth truth{sig.cwiseProduct(sig), v_s, x_true};
  return Dataset{DataMatrix(std::move(a)), std::move(b), std::move(truth)};
}

void save_dataset(const std::string& stem, const Dataset& ds,
                  const SynthSpec* spec) {
  write_matrix_bin(stem + ".a.bin", ds.a.a());
  write_vector_bin(stem + ".b.bin", ds.b);
  if (ds.truth) write_truth(stem + ".truth.bin", *ds.truth);

  std::ofstream out(stem + ".manifest.txt");
  if (!out)
    throw io_error(io_fault::not_found,
                   "cannot open for writing: " + stem + ".manifest.txt");
  out.precision(17);
  out << kManifestVersion << '\n';
  out << "kind: " << (spec ? "synthetic-random-a" : "external") << '\n';
  out << "d_prime: " << ds.a.rows() << '\n';
  out << "d: " << ds.a.cols() << '\n';
  if (spec) {
    out << "a: " << spec->a << '\n';
    out << "lambda: " << spec->lambda << '\n';
    out << "seed: " << spec->seed << '\n';
    out << "noise_scale: " << spec->noise_scale << '\n';
  }
  out << "matrix: " << stem << ".a.bin\n";
  out << "rhs: " << stem << ".b.bin\n";
  out << "truth: " << (ds.truth ? stem + ".truth.bin" : std::string("none"))
      << '\n';
}

Dataset load_dataset(const std::string& stem) {
  std::ifstream in(stem + ".manifest.txt");
  if (!in)
    throw io_error(io_fault::not_found,
                   "cannot open: " + stem + ".manifest.txt");
  std::string line;
  if (!std::getline(in, line) || line != kManifestVersion)
    throw io_error(io_fault::malformed_header,
                   stem + ".manifest.txt: malformed header (expected '" +
                       std::string(kManifestVersion) + "')");
  bool have_truth = false;
  while (std::getline(in, line)) {
    if (line.rfind("truth: ", 0) == 0)
      have_truth = line.substr(7) != "none";
  }

  // external datasets may supply the CSV interop form instead
  const auto exists = [](const std::string& p) {
    return std::filesystem::exists(p);
  };
  Matrix a = exists(stem + ".a.bin") ? read_matrix_bin(stem + ".a.bin")
                                     : read_matrix_csv(stem + ".a.csv");
  Vector b = exists(stem + ".b.bin") ? read_vector_bin(stem + ".b.bin")
                                     : read_vector_csv(stem + ".b.csv");
  if (b.size() != a.rows())
    throw io_error(io_fault::bad_value,
                   stem + ": rhs length does not match matrix rows");
  std::optional<GroundTruth> truth;
  if (have_truth) {
    truth = read_truth(stem + ".truth.bin");
    if (truth->eigenvalues.size() != a.cols())
      throw io_error(io_fault::bad_value,
                     stem + ": truth dimension does not match matrix columns");
  }
  return Dataset{DataMatrix(std::move(a)), std::move(b), std::move(truth)};
}

}  // namespace pcpr
