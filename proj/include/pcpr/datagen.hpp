#pragma once

#include "pcpr/metrics.hpp"
#include "pcpr/ridge.hpp"
#include "pcpr/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pcpr {

// Synthetic matrix with a controlled spectrum split around sqrt(lambda):
// half of the d singular values uniform in [0, sqrt(lambda (1-a))], half in
// [sqrt(lambda (1+a)), 1]. a = 0 is the gap-free regime.
struct SynthSpec {
  Index d_prime = 0;
  Index d = 0;
  double a = 0.0;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  double noise_scale = 0.1;  // ||noise|| relative to ||A x_true||
};

// Spectral factors kept from generation so tests need not re-decompose.
struct GroundTruth {
  Vector eigenvalues;   // sigma_i^2 of A^T A, descending
  Matrix eigenvectors;  // right singular vectors, columns matching
  Vector x_true;

  EigenReference reference() const {
    return EigenReference(eigenvalues, eigenvectors);
  }
};

struct Dataset {
  DataMatrix a;
  Vector b;
  std::optional<GroundTruth> truth;
};

// Thin orthonormal factor: QR of a seeded Gaussian matrix (rows >= cols).
Matrix random_orthonormal(Rng& rng, Index rows, Index cols);

// A = U Sigma V^T with U, V orthonormalized seeded Gaussian matrices;
// b = A x_true + noise for a random unit x_true in the span of the top-half
// right singular vectors. Deterministic per seed.
Dataset gen_random_a(const SynthSpec& spec);

// Bundle on disk: <stem>.a.bin, <stem>.b.bin, <stem>.truth.bin (optional),
// <stem>.manifest.txt. The matrix is re-validated on load (sigma_max <= 1).
void save_dataset(const std::string& stem, const Dataset& ds,
                  const SynthSpec* spec = nullptr);
Dataset load_dataset(const std::string& stem);

}  // namespace pcpr
