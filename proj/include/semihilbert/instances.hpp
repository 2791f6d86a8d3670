#pragma once

#include "semihilbert/metric.hpp"
#include "semihilbert/rng.hpp"

namespace semihilbert {

/// Seeded random test instances. Every generator is deterministic in the
/// state of the Rng passed in.

/// V·diag(λ)·V* with Haar-like V, λ uniform in [0.2, 2] and `zeros` of the
/// eigenvalues set to exactly zero.
CMatrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index zeros = 0);

/// Gaussian G with the block P_A·G·(I − P_A) removed, so A^{1/2}T vanishes
/// on N(A).
CMatrix random_a_bounded(Rng& rng, const Metric& m);

/// (A^{1/2})†·K·A^{1/2} + (I − P_A)·G with K Hermitian: AT = T*A.
CMatrix random_a_selfadjoint(Rng& rng, const Metric& m);

/// (I − P_A)·G, so AT = 0.
CMatrix random_a_null(Rng& rng, const Metric& m);

/// E·diag(e^{iφ})·E* with E the eigenvectors of A; commutes with A.
CMatrix random_a_unitary(Rng& rng, const Metric& m);

/// Operator whose compression is β·u·v* with orthonormal u, v ∈ C^r
/// (requires rank ≥ 2). Nilpotent on range(A) with ‖T‖_A = β.
CMatrix random_nilpotent_type(Rng& rng, const Metric& m, double beta);

/// Random A-bounded operator rescaled to ‖X‖_A = b (b = 0 gives AX = 0).
CMatrix random_with_seminorm(Rng& rng, const Metric& m, double b);

/// Operator with the given compression N (r×r): (A^{1/2})†·basis·N·basis*·A^{1/2}.
CMatrix lift_compressed(const Metric& m, const CMatrix& n);

} // namespace semihilbert
