#include "negmon/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "negmon/random.hpp"

namespace negmon {

DensityMatrix::DensityMatrix(ComplexMatrix matrix, DimSpec dims, std::size_t transpose_party,
                             double tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), transpose_party_(transpose_party) {
  if (!matrix_.square()) throw InvalidStateError("DensityMatrix: matrix must be square");
  if (!matrix_.is_finite()) throw InvalidStateError("DensityMatrix: non-finite entries");
  if (dims_.size() < 2) {
    throw DimMismatchError("DensityMatrix: need at least two subsystems");
  }
  if (dims_.product() != matrix_.rows()) {
    throw DimMismatchError("DensityMatrix: dims product " + std::to_string(dims_.product()) +
                           " does not match matrix side " + std::to_string(matrix_.rows()));
  }
  if (transpose_party_ >= dims_.size()) {
    throw DimMismatchError("DensityMatrix: transpose_party out of range");
  }
  if (!matrix_.is_hermitian(tol)) {
    throw InvalidStateError("DensityMatrix: not Hermitian within tolerance");
  }
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > tol) {
    throw InvalidStateError("DensityMatrix: trace differs from 1 by more than tolerance");
  }
  if (min_eigenvalue_hermitian(matrix_) < -tol) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue beyond tolerance");
  }
}

ComplexMatrix DensityMatrix::partial_transpose() const {
  return negmon::partial_transpose(matrix_, dims_, transpose_party_);
}

Ensemble::Ensemble(std::vector<EnsembleMember> members, double tol)
    : members_(std::move(members)) {
  if (members_.empty()) throw EmptyEnsembleError("Ensemble: no members");
  double sum = 0.0;
  for (const auto& m : members_) {
    if (m.weight < -tol) throw InvalidStateError("Ensemble: negative weight");
    if (m.state.dims() != members_.front().state.dims() ||
        m.state.transpose_party() != members_.front().state.transpose_party()) {
      throw DimMismatchError("Ensemble: members must share dims and transpose party");
    }
    sum += m.weight;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvalidStateError("Ensemble: weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

DensityMatrix pure_state(const std::vector<Complex>& amplitudes, const DimSpec& dims,
                         std::size_t transpose_party) {
  if (amplitudes.size() != dims.product()) {
    throw DimMismatchError("pure_state: amplitude count does not match dims");
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kStateTol) {
    throw NotNormalizedError("pure_state: amplitudes have norm " + std::to_string(std::sqrt(norm2)));
  }
  const std::size_t n = amplitudes.size();
  ComplexMatrix proj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
  }
  return DensityMatrix(std::move(proj), dims, transpose_party);
}

DensityMatrix max_entangled(std::size_t d) {
  if (d == 0) throw OutOfRangeError("max_entangled: dimension must be positive");
  std::vector<Complex> amps(d * d, Complex{0.0, 0.0});
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = a;
  return pure_state(amps, DimSpec{d, d});
}

DensityMatrix werner(double p) {
  if (p < 0.0 || p > 1.0) {
    throw OutOfRangeError("werner: parameter " + std::to_string(p) + " outside [0, 1]");
  }
  const double s = 1.0 / std::sqrt(2.0);
  const DensityMatrix singlet = pure_state({0.0, s, -s, 0.0}, DimSpec{2, 2});
  ComplexMatrix m = singlet.matrix();
  m *= p;
  ComplexMatrix noise = ComplexMatrix::identity(4);
  noise *= (1.0 - p) / 4.0;
  m += noise;
  return DensityMatrix(std::move(m), DimSpec{2, 2});
}

DensityMatrix random_density(const DimSpec& dims, std::size_t rank, std::uint64_t seed,
                             std::size_t transpose_party) {
  const std::size_t n = dims.product();
  if (rank < 1 || rank > n) {
    throw OutOfRangeError("random_density: rank " + std::to_string(rank) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  Rng rng(seed);
  const ComplexMatrix g = rng.ginibre(n, rank);
  ComplexMatrix rho = g * dagger(g);
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  return DensityMatrix(std::move(rho), dims, transpose_party);
}

Ensemble random_ensemble(const DimSpec& dims, std::size_t members, std::uint64_t seed) {
  if (members == 0) throw EmptyEnsembleError("random_ensemble: no members requested");
  Rng rng(seed);
  const std::size_t n = dims.product();
  // Exponential draws normalized to the simplex (flat Dirichlet).
  std::vector<double> weights(members);
  double total = 0.0;
  for (auto& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  std::vector<EnsembleMember> out;
  out.reserve(members);
  for (std::size_t i = 0; i < members; ++i) {
    const std::size_t rank = 1 + rng.uniform_index(n);
    out.push_back({weights[i] / total, random_density(dims, rank, derive_seed(seed, i + 1))});
  }
  return Ensemble(std::move(out));
}

DensityMatrix marker_extension(const Ensemble& ensemble) {
  const auto& members = ensemble.members();
  const DimSpec& dims = ensemble.dims();
  if (dims.size() != 2) {
    throw DimMismatchError("marker_extension: members must be bipartite");
  }
  const std::size_t k = members.size();
  const std::size_t n = dims.product();
  ComplexMatrix out(n * k, n * k);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix marker(k, k);
    marker(i, i) = 1.0;
    ComplexMatrix block = tensor(members[i].state.matrix(), marker);
    block *= members[i].weight;
    out += block;
  }
  return DensityMatrix(std::move(out), dims.append(k), members.front().state.transpose_party());
}

DensityMatrix mix(const Ensemble& ensemble) {
  const auto& members = ensemble.members();
  const std::size_t n = members.front().state.dim();
  ComplexMatrix out(n, n);
  for (const auto& m : members) {
    ComplexMatrix term = m.state.matrix();
    term *= m.weight;
    out += term;
  }
  return DensityMatrix(std::move(out), members.front().state.dims(),
                       members.front().state.transpose_party());
}

}  // namespace negmon
