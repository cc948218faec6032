#ifndef SPINNET_OPERATORS_HPP
#define SPINNET_OPERATORS_HPP

#include <array>
#include <vector>

#include "spinnet/network.hpp"
#include "spinnet/types.hpp"

namespace spinnet {

/// Single-spin Pauli matrix with the 1/2 prefactor,
/// sigma_y = 1/2 [[0, i], [-i, 0]].
Matrix pauli(Axis a);

/// sigma_a acting on spin pos (0-based, leftmost factor first) of n spins.
Matrix single_spin(Axis a, int pos, int n);

/// Collective spin operator S_a = sum of n single-spin embeddings.
Matrix collective_S(Axis a, int n);

/// Two-position sum I_gb over distinct spin pairs. For g == b each unordered
/// pair is counted once, so that S_g^2 = (n/4) 1 + 2 I_gg holds exactly.
/// Zero matrix for n == 1.
Matrix pair_sum_I(Axis g, Axis b, int n);

/// Casimir operator S_x^2 + S_y^2 + S_z^2 on n spins; scalar f/2 (f/2 + 1)
/// on every spin-f/2 irreducible component.
Matrix casimir(int n);

/// Embeds a 2^{n_j}-dimensional operator at cluster j of the network,
/// identities elsewhere.
Matrix cluster_operator(const Matrix& op, int j, const SpinNetworkSpec& spec);

/// Full-space collective operator S_a^j of cluster j.
Matrix cluster_collective(Axis a, int j, const SpinNetworkSpec& spec);

/// Skew-Hermitian drift generator i * sum over couplings of
/// (zz S_z^j S_z^k + xx S_x^j S_x^k + yy S_y^j S_y^k).
Matrix drift_generator(const SpinNetworkSpec& spec);

/// Skew-Hermitian control generators iB_a = i sum_j gamma_j S_a^j, a = x,y,z.
std::array<Matrix, 3> control_generators(const SpinNetworkSpec& spec);

/// The reduced generating set {iS^j_{x,y,z}} plus one iS_g^j S_g^k per
/// nonzero coupling component. Generates the same Lie algebra as
/// {drift, controls}; requires pairwise distinct nonzero gammas.
std::vector<Matrix> reduced_generators(const SpinNetworkSpec& spec);

Matrix spin_level_drift(const SpinLevelSpec& spec);
std::array<Matrix, 3> spin_level_controls(const SpinLevelSpec& spec);

/// Oracle generating set for the per-spin model: the whole drift as one
/// generator plus collective locals per distinct nonzero gamma value.
std::vector<Matrix> spin_level_generators(const SpinLevelSpec& spec);

}  // namespace spinnet

#endif
