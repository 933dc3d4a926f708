#pragma once

#include "qfb/algebra.hpp"
#include "qfb/models.hpp"

#include <utility>
#include <vector>

namespace qfb {

// Ladder triples closing on a polynomial (or q-) deformation of su(2).
// Fermion-boson realizations act on the invariant subspace of the matching
// model; the q-realizations act on a su_q(2) multiplet.
enum class Realization { DPS, LMG, LE_pm, LE_pp, qDPS, qLE };

struct KOperators {
    Matrix k0;      // diagonal of ladder labels
    Matrix kplus;
    Matrix kminus;  // transpose of kplus
    int step = 1;   // [k0, k+-] = +- step * k+-
    Realization realization = Realization::DPS;

    int dim() const { return static_cast<int>(k0.rows()); }
};

// Commutator polynomial [K+, K-] = F(K0): monomial coefficients ascending in
// degree. step mirrors the ladder step of the realization.
struct PolynomialAlgebra {
    std::vector<double> coeffs;
    int degree = 0;
    int step = 1;
    // Set when the subspace supplied fewer nodes than the full fermion-boson
    // degree 2k + p - 1 needs; coeffs then hold the minimal interpolant.
    bool underdetermined = false;
};

// Casimir C = K+ K- + sum_i beta_i K0^i together with its eigenvalue on the
// realization subspace.
struct CasimirSpec {
    std::vector<double> beta; // beta_0 .. beta_5
    double expected_eigenvalue = 0.0;
};

// Fermion-boson realizations (DPS, LMG, LE_pm, LE_pp): K+ = T+^k X^p
// restricted to the invariant subspace of the matching model, with z and
// n_max ignored (the subspace fixes the boson range; pass n_max = -1).
// q-realizations: omega is read as the representation label j, l is ignored,
// and K+ = q^{T0/2} T+ q^{T0/2} (qDPS) or q^{T0} T+^2 q^{T0} (qLE).
KOperators make_k_operators(Realization realization, HalfInt omega, HalfInt l = 0,
                            double z = 0.0, int n_max = -1);

// Interpolates F through the pairs (K0 diagonal, [K+, K-] diagonal) by Newton
// divided differences, then trims trailing coefficients below 1e-8 relative
// to the largest commutator entry. Requires the commutator to be diagonal in
// the K0 basis and the K0 eigenvalues to be distinct.
PolynomialAlgebra extract_commutator_polynomial(const KOperators& k);

// Closed-form structure constants. Provided for DPS (any admissible integer
// L; the same quadratic holds verbatim on the L < 0 subspaces), LMG, LE_pm on
// L >= Omega integer subspaces and LE_pp on L >= 0 integer subspaces.
// Rejected for the q-realizations (no polynomial closed form) and for LE
// classes without published constants.
PolynomialAlgebra expected_structure_constants(Realization realization, HalfInt omega,
                                               HalfInt l = 0);

// Builds the Casimir matrix and its spec, asserting centrality
// ||C - lambda I|| <= 1e-9 (1 + |lambda|) and commutation with K+-.
std::pair<Matrix, CasimirSpec> build_casimir(Realization realization, HalfInt omega,
                                             HalfInt l, const KOperators& k);

// Residuals of the deformed ladder identities of the qDPS realization, each
// normalized by max(1, largest entry of its right-hand side):
//   q K+ K- - q^{-1} K- K+ = q^{2 K0} [2 K0]_q
//   C_q = [K0]_q [K0 - 1]_q + q^{-2 K0 + 1} K+ K-   with eigenvalue [j]_q [j+1]_q
//   [K+, K-] = (q^{2j+2} + q^{-2j})/(1 - q^2) q^{2 K0} - (1 + q^2)/(1 - q^2) q^{4 K0}
// The third form has a pole at q = 1 and is evaluated directly only for
// |z| >= 1e-4; closer to q = 1 the pole-free first identity stands in for it
// and qconm_direct reports that substitution.
struct QRelationReport {
    double z = 0.0;
    HalfInt j;
    double newconm_residual = 0.0;
    double ncas_residual = 0.0;
    double qconm_residual = 0.0;
    bool qconm_direct = true;
    double cq_eigenvalue = 0.0; // observed
    double cq_expected = 0.0;   // [j]_q [j+1]_q

    double max_residual() const;
    bool pass(double tol = 1e-10) const { return max_residual() <= tol; }
};

QRelationReport verify_q_relations(const KOperators& k, HalfInt j, double z);

// One row per L of the strong-field diagnostics: J+- = K+- / sqrt(L) is
// compared against the contracted target F_inf(J0) (2 J0 for DPS, the cubic
// 4(2 Omega(Omega+1) - 1) J0 - 8 J0^3 for the LE realizations), and the
// Casimir eigenvalue is rescaled by 1/L against its contracted value.
struct ContractionRow {
    HalfInt l;
    double delta = 0.0;          // ||[J+,J-] - F_inf(J0)||_max / ||F_inf(J0)||_max
    double casimir_scaled = 0.0; // lambda(C) / L
    double casimir_limit = 0.0;
    double casimir_gap = 0.0;    // |casimir_scaled - casimir_limit|
    std::vector<double> commutator_coeffs; // interpolant of [J+, J-], ascending degree
};

// Requires at least three ascending positive L values. Whenever the list
// contains a doubling pair (L, 2L) the expected O(1/L) decay
// delta(2L) <= 0.6 delta(L) is asserted.
std::vector<ContractionRow> contraction_diagnostics(Realization realization, HalfInt omega,
                                                    const std::vector<HalfInt>& l_list);

} // namespace qfb
