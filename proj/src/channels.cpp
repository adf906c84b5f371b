#include "negmon/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "negmon/random.hpp"

namespace negmon {

namespace {

// DimSpec of out⊗in, as carried by a Choi matrix.
DimSpec joint_dims(const DimSpec& out_dims, const DimSpec& in_dims) {
  std::vector<std::size_t> joint = out_dims.dims();
  joint.insert(joint.end(), in_dims.dims().begin(), in_dims.dims().end());
  return DimSpec(std::move(joint));
}

ComplexMatrix sum_kdk(const KrausMap& psi) {
  ComplexMatrix sum(psi.in_dim(), psi.in_dim());
  for (const auto& k : psi.operators) sum += dagger(k) * k;
  return sum;
}

}  // namespace

void KrausMap::validate(double tol) const {
  if (operators.empty()) throw Error("KrausMap: no operators");
  const std::size_t rows = out_dim();
  const std::size_t cols = in_dim();
  for (const auto& k : operators) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimMismatchError("KrausMap: operator shape does not match in/out dims");
    }
    if (!k.is_finite()) throw Error("KrausMap: non-finite Kraus entries");
  }
  ComplexMatrix gram = sum_kdk(*this);
  const double max_eig = hermitian_eigen(gram).eigenvalues.back();
  if (max_eig > 1.0 + tol) {
    throw Error("KrausMap: branch is trace increasing (max eigenvalue of ΣK†K is " +
                std::to_string(max_eig) + ")");
  }
}

Instrument::Instrument(std::vector<KrausMap> branches, double tol)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw Error("Instrument: no branches");
  const DimSpec& in = branches_.front().in_dims;
  const DimSpec& out = branches_.front().out_dims;
  ComplexMatrix total(in.product(), in.product());
  for (const auto& b : branches_) {
    b.validate(tol);
    if (b.in_dims != in || b.out_dims != out) {
      throw DimMismatchError("Instrument: branches must share in/out dims");
    }
    total += sum_kdk(b);
  }
  total -= ComplexMatrix::identity(in.product());
  if (total.max_norm() > tol) {
    throw Error("Instrument: not trace preserving (‖ΣK†K − I‖_max = " +
                std::to_string(total.max_norm()) + ")");
  }
}

ComplexMatrix apply_map(const KrausMap& psi, const ComplexMatrix& x) {
  if (!x.square() || x.rows() != psi.in_dim()) {
    throw DimMismatchError("apply_map: input side " + std::to_string(x.rows()) +
                           " does not match map input dimension " + std::to_string(psi.in_dim()));
  }
  ComplexMatrix out(psi.out_dim(), psi.out_dim());
  for (const auto& k : psi.operators) out += k * x * dagger(k);
  return out;
}

ComplexMatrix apply_map(const KrausMap& psi, const DensityMatrix& rho) {
  return apply_map(psi, rho.matrix());
}

ComplexMatrix apply_map_pt_conjugated(const KrausMap& psi, const ComplexMatrix& x) {
  const ComplexMatrix x_pt = partial_transpose(x, psi.in_dims, psi.in_party);
  return partial_transpose(apply_map(psi, x_pt), psi.out_dims, psi.out_party);
}

Ensemble apply_instrument(const Instrument& instr, const DensityMatrix& rho) {
  if (rho.dims() != instr.in_dims()) {
    throw DimMismatchError("apply_instrument: state dims do not match instrument input dims");
  }
  std::vector<std::pair<double, ComplexMatrix>> raw;
  raw.reserve(instr.size());
  double total = 0.0;
  for (const auto& branch : instr.branches()) {
    ComplexMatrix sigma = apply_map(branch, rho.matrix());
    const double p = sigma.trace().real();
    total += p;
    raw.emplace_back(p, std::move(sigma));
  }
  if (std::abs(total - 1.0) > kInstrTol) {
    throw Error("apply_instrument: outcome probabilities sum to " + std::to_string(total));
  }
  double discarded = 0.0;
  std::vector<EnsembleMember> members;
  for (auto& [p, sigma] : raw) {
    if (p < kBranchEps) {
      discarded += std::max(p, 0.0);
      continue;
    }
    sigma *= 1.0 / p;
    members.push_back({p, DensityMatrix(std::move(sigma), instr.out_dims(),
                                        instr.branches().front().out_party)});
  }
  if (discarded >= kMaxDiscardedWeight) {
    throw Error("apply_instrument: discarded branch weight " + std::to_string(discarded) +
                " exceeds bound");
  }
  return Ensemble(std::move(members), kInstrTol + kMaxDiscardedWeight);
}

ChoiMatrix choi(const KrausMap& psi) {
  const std::size_t din = psi.in_dim();
  const std::size_t dout = psi.out_dim();
  const std::size_t n = dout * din;
  ComplexMatrix c(n, n);
  // (Ψ⊗id)(Σ_ij |ii⟩⟨jj|) = Σ_k v_k v_k† with v_k the row-major flattening
  // of K_k: v_k[(a,i)] = K_k(a,i).
  for (const auto& k : psi.operators) {
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = k(r / din, r % din);
      if (vr == Complex{0.0, 0.0}) continue;
      for (std::size_t s = 0; s < n; ++s) {
        c(r, s) += vr * std::conj(k(s / din, s % din));
      }
    }
  }
  return ChoiMatrix{std::move(c), psi.in_dims, psi.out_dims, psi.in_party, psi.out_party};
}

ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& x) {
  const std::size_t din = c.in_dims.product();
  const std::size_t dout = c.out_dims.product();
  if (!x.square() || x.rows() != din) {
    throw DimMismatchError("apply_choi: input side does not match Choi input dimension");
  }
  const ComplexMatrix lifted = tensor(ComplexMatrix::identity(dout), transpose(x));
  return partial_trace(lifted * c.matrix, DimSpec{dout, din}, 1);
}

bool is_cp(const ChoiMatrix& c, double tol) {
  return min_eigenvalue_hermitian(c.matrix, kStateTol) >= -tol;
}

ChoiMatrix choi_pt_conjugated(const KrausMap& psi) {
  if (psi.in_dims.size() < 2 || psi.out_dims.size() < 2) {
    throw DimMismatchError("choi_pt_conjugated: in/out dims must be bipartite");
  }
  ChoiMatrix c = choi(psi);
  const DimSpec joint = joint_dims(psi.out_dims, psi.in_dims);
  // Conjugating by Γ on both sides transposes the A factor of each side of
  // the Choi matrix.
  c.matrix = partial_transpose(c.matrix, joint, psi.out_party);
  c.matrix = partial_transpose(c.matrix, joint, psi.out_dims.size() + psi.in_party);
  return c;
}

bool is_ppt_map(const KrausMap& psi, double tol) {
  return min_eigenvalue_hermitian(choi_pt_conjugated(psi).matrix, kStateTol) >= -tol;
}

Instrument random_local_instrument(std::size_t dim_a, std::size_t dim_b, std::size_t n_branches,
                                   std::size_t kraus_per_branch, std::uint64_t seed) {
  if (dim_a == 0 || dim_b == 0 || n_branches == 0 || kraus_per_branch == 0) {
    throw OutOfRangeError("random_local_instrument: parameters must be positive");
  }
  Rng rng(seed);
  const ComplexMatrix iso = rng.haar_isometry(n_branches * kraus_per_branch * dim_a, dim_a);
  const ComplexMatrix id_b = ComplexMatrix::identity(dim_b);
  const DimSpec dims{dim_a, dim_b};
  std::vector<KrausMap> branches;
  branches.reserve(n_branches);
  for (std::size_t i = 0; i < n_branches; ++i) {
    KrausMap branch{{}, dims, dims};
    for (std::size_t j = 0; j < kraus_per_branch; ++j) {
      ComplexMatrix block(dim_a, dim_a);
      const std::size_t row0 = (i * kraus_per_branch + j) * dim_a;
      for (std::size_t r = 0; r < dim_a; ++r) {
        for (std::size_t col = 0; col < dim_a; ++col) block(r, col) = iso(row0 + r, col);
      }
      branch.operators.push_back(tensor(block, id_b));
    }
    branches.push_back(std::move(branch));
  }
  return Instrument(std::move(branches));
}

Instrument random_one_round_locc(std::size_t dim_a, std::size_t dim_b, std::size_t n_outcomes,
                                 std::uint64_t seed) {
  if (dim_a == 0 || dim_b == 0 || n_outcomes == 0) {
    throw OutOfRangeError("random_one_round_locc: parameters must be positive");
  }
  Rng rng(seed);
  const ComplexMatrix iso = rng.haar_isometry(n_outcomes * dim_a, dim_a);
  const DimSpec dims{dim_a, dim_b};
  std::vector<KrausMap> branches;
  branches.reserve(n_outcomes);
  for (std::size_t i = 0; i < n_outcomes; ++i) {
    ComplexMatrix povm_block(dim_a, dim_a);
    for (std::size_t r = 0; r < dim_a; ++r) {
      for (std::size_t col = 0; col < dim_a; ++col) povm_block(r, col) = iso(i * dim_a + r, col);
    }
    const ComplexMatrix conditioned = rng.haar_unitary(dim_b);
    branches.push_back(KrausMap{{tensor(povm_block, conditioned)}, dims, dims});
  }
  return Instrument(std::move(branches));
}

}  // namespace negmon
