#pragma once

#include "roelab/roe_ops.hpp"
#include "roelab/spectral.hpp"

namespace roelab {

/// Global sign convention for the pairing: chosen so the clean Hofstadter
/// model with flux +2pi/3 and E_F in the first gap carries index +1,
/// matching the real-space Chern oracle with counterclockwise sectors.
inline constexpr int kPairingSign = +1;

struct PairingOptions {
  double tau = 0.05;    // singular-value threshold for the conditioning report
  double kappa = 0.0;   // Dirac coupling; 0 selects the window-adapted default
  int sign = kPairingSign;
  // Phase center; empty = window center offset by (1/2, ..., 1/2) so it
  // never sits on a lattice site. The index is insensitive to moving it
  // by a lattice step once the ladder has converged.
  std::vector<double> center;
};

struct PairingWindowRecord {
  int L = 0;
  int raw_index = 0;
  double kappa = 0.0;
  double sigma_min = 0.0;         // smallest retained singular value
  double largest_discarded = 0.0; // largest singular value below tau (0 if none)
  int n_discarded = 0;
  bool ill_conditioned = false;   // singular values within 10x of tau
};

struct PairingResult {
  int index = 0;
  bool converged = false;
  double tau = 0.0;
  std::vector<PairingWindowRecord> windows;
  std::string warning;
};

/// Finite-volume fundamental-class pairing for even d. The Fermi
/// projection is flattened to h = 1 - 2P and coupled to the site-diagonal
/// Dirac operator sum_j (x_j - c_j) gamma_j on the irreducible graded
/// Clifford module, with the phase center c at the window center offset
/// by (1/2, ..., 1/2). The index is half the signature of
///
///   [[ h,        kappa D0^* ],
///    [ kappa D0, -h         ]]
///
/// computed per ladder window by compressing P to the sub-window. The
/// signature is an exact integer at every finite volume and converges to
/// the index pairing of [P] with the torus fundamental class.
PairingResult index_pairing(const FermiProjection& p, const std::vector<int>& l_list,
                            const PairingOptions& options = {});

/// Three disjoint 120-degree bulk sectors in counterclockwise order,
/// carved from the disk of the given radius around the window center.
struct Tripartition {
  std::vector<int> a, b, c;  // site indices
  double radius = 0.0;
  double angle0 = 0.0;
  bool touches_boundary = false;
};

Tripartition default_tripartition(const Window& window, double radius, double angle0 = 0.1);

/// Real-space Chern number: 12 pi i sum_{j in A, k in B, l in C}
/// (P_jk P_kl P_lj - P_jl P_lk P_kj), traced over internal indices.
/// Near-integer for exponentially localized P; serves as the independent
/// brute-force oracle for index_pairing.
double kitaev_chern_oracle(const BlockOperator& p, const Tripartition& sectors);

/// Inertia of a hermitian matrix (Bunch-Kaufman factorization), plus the
/// smallest singular value estimated by inverse iteration on the factors.
struct HermitianInertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  double sigma_min = 0.0;
};

HermitianInertia hermitian_inertia(const Matrix& a);

}  // namespace roelab
