#pragma once

#include "qfb/algebra.hpp"
#include "qfb/common.hpp"

#include <vector>

namespace qfb {

// Sign of the boson factor attached to T+^k in the interaction term:
// PlusPlus couples T+^k with bdag^p, PlusMinus couples T+^k with b^p.
enum class Variant { PlusPlus, PlusMinus };

// H = omega_f (T0 + Omega) + omega_b bdag b + g (T+^k X^p + T-^k X'^p)
// on the pseudospin-Omega multiplet tensored with a boson mode, where
// (X, X') = (bdag, b) for PlusPlus and (b, bdag) for PlusMinus.
struct ModelSpec {
    Variant variant = Variant::PlusPlus;
    int k = 1;
    int p = 1;
    double omega_f = 1.0;
    double omega_b = 1.0;
    double g = 0.0;
    HalfInt omega_cap = HalfInt::from_twice(1);
};

// Named members of the family.
enum class ModelKind { DPS, Dicke, LE_pm, LE_pp, LMG, Generic };

ModelKind classify(const ModelSpec& spec);

ModelSpec dps_model(double omega_f, double omega_b, double g, HalfInt omega_cap);
ModelSpec dicke_model(double omega_f, double omega_b, double g, HalfInt omega_cap);
ModelSpec le_pm_model(double omega_f, double omega_b, double g, HalfInt omega_cap);
ModelSpec le_pp_model(double omega_f, double omega_b, double g, HalfInt omega_cap);
ModelSpec lmg_model(double omega_f, double omega_b, double g, HalfInt omega_cap);

struct SubspaceState {
    HalfInt m_omega;
    int n = 0;
};

// Eigenspace of the conserved charge P with eigenvalue l_value, spanned by
// product states |m_omega, n>. States are ordered by ascending m_omega.
struct InvariantSubspace {
    HalfInt l_value;
    std::vector<SubspaceState> states;
    int dim = 0;
    int max_n = 0;
};

// Real symmetric matrix over an ordered basis. band_step is the index offset
// of the interaction band in that ordering: couplings sit only at
// |row - col| == band_step. Note this is an index stride, not the spin step
// k itself; on subspaces holding a single m-parity class the k = 2 coupling
// lands on adjacent basis vectors.
struct HamiltonianMatrix {
    int dim = 0;
    Matrix entries;
    int band_step = 1;
};

// Enumerates |m_omega, n> with n determined by the P-eigenvalue relation of
// the model (PlusPlus: n = L + (p/k)(m+Omega), PlusMinus: n = L - (p/k)(m+Omega)).
// For p = 0 the boson decouples; the full multiplet at n = 0 is returned and
// L is ignored (with a note on the diagnostic stream).
//
// Throws SubspaceError when L's parity admits no state (class mismatch) or
// when every admissible n is negative (empty subspace).
InvariantSubspace enumerate_subspace(const ModelSpec& spec, HalfInt l);

bool is_valid_l(const ModelSpec& spec, HalfInt l);

// Closed-form matrix elements for the named models; any other (variant, k, p)
// falls back to build_oracle with a note on the diagnostic stream.
HamiltonianMatrix build_hamiltonian(const ModelSpec& spec, const InvariantSubspace& sub);

// Independent route: assembles H on SpinRep(Omega) (x) BosonOps(n_max) with
// n_max = max n over the subspace basis, then cuts out the block spanned by
// the subspace states in enumerate_subspace order. The truncation is exact
// inside the block because the interaction maps basis states onto basis
// states or annihilates them.
HamiltonianMatrix build_oracle(const ModelSpec& spec, HalfInt l);

// Full tensor-space Hamiltonian on SpinRep(Omega) (x) BosonOps(n_max), used
// for symmetry and block-structure checks.
Matrix build_full_hamiltonian(const ModelSpec& spec, int n_max);

// Conserved charge on the tensor space: bdag b + c (T0 + Omega) with
// c = -p/k for PlusPlus and +p/k for PlusMinus (diagonal).
Matrix symmetry_operator(const ModelSpec& spec, int n_max);

} // namespace qfb
