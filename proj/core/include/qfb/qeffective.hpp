#pragma once

#include "qfb/algebra.hpp"
#include "qfb/models.hpp"

namespace qfb {

// Which effective family a q-Hamiltonian belongs to. DpsType carries the
// one-step symmetrized interaction, LeType the two-step one, IntOnly is the
// bare solvable interaction with no diagonal part.
enum class QFamily { DpsType, LeType, IntOnly };

struct QModelSpec {
    QFamily family = QFamily::DpsType;
    double z = 0.0;
    double chi = 0.0;     // interaction scale, the free stand-in for a chosen chi(q)
    double omega_f = 1.0;
    double omega_b = 1.0;
    HalfInt omega_cap = HalfInt::from_twice(2); // Omega of the matched model
    HalfInt l_value = 0;                        // charge L of the matched subspace
    HalfInt j = HalfInt::from_twice(2);         // representation label
};

// Representation label matching the one-step model's subspace dimension:
// j = Omega for L >= 0 and j = Omega + L/2 for L < 0. Requires integer L.
HalfInt dps_j_mapping(HalfInt omega_cap, HalfInt l);

// q^{T0/2} (T+ + T-) q^{T0/2} on the spin-j multiplet. Symmetric tridiagonal
// with entries q^{m+1/2} sqrt([j+m+1]_q [j-m]_q); its spectrum is exactly
// the q-numbers [2m]_q, m = -j..j.
HamiltonianMatrix build_hq_int(HalfInt j, double z);

// omega_b L + (omega_f + omega_b)(T0 + Omega) + chi q^{T0/2}(T+ + T-) q^{T0/2}
// on the spin-j multiplet. The matrix dimension must equal the matched
// one-step subspace dimension (2 Omega + 1 for L >= 0, 2 Omega + L + 1 for
// L < 0); anything else is rejected.
HamiltonianMatrix build_hq_dps(const QModelSpec& spec);

// omega_b L + (omega_f - omega_b/2)(T0 + Omega) + chi q^{T0}(T+^2 + T-^2) q^{T0},
// restricted to the parity sublattice m = -j, -j+2, ..., consistent with the
// two-step interaction. Off-diagonal entries chi q^{2(m+1)}
// sqrt([j+m+2]_q [j+m+1]_q [j-m]_q [j-m-1]_q); couplings between sublattice
// neighbours sit on the first off-diagonal of the returned matrix.
HamiltonianMatrix build_hq_le(const QModelSpec& spec);

} // namespace qfb
