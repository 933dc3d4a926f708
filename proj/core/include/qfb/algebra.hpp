#pragma once

#include "qfb/common.hpp"

#include <cmath>

namespace qfb {

// Deformation parameter of su_q(2), q = e^z with z real, so q > 0 always.
// z = 0 is the undeformed su(2) limit.
struct DeformationParam {
    double z = 0.0;
    double q() const { return std::exp(z); }
};

// Threshold below which q_number switches to its analytic z -> 0 limit.
// Both branches agree to better than ten significant digits at the switch.
inline constexpr double kQNumberLimitSwitch = 1e-8;

// q-number [x]_q = (q^x - q^{-x}) / (q - q^{-1}) = sinh(z x) / sinh(z).
// Odd in x, even in z, and equal to x at z = 0.
double q_number(double x, double z);

// Irreducible representation of su(2) (z = 0) or su_q(2) on the (2j+1)-plet.
//
// Basis convention used by every module: m = -j, -j+1, ..., j ascending, so
// t0 = diag(m), tplus carries the ladder coefficients on its first
// subdiagonal (row of m+1, column of m), and tminus is exactly the transpose
// of tplus. The commutator [tplus, tminus] equals diag([2m]_q) up to rounding.
struct SpinRep {
    HalfInt j;
    double z = 0.0;
    Matrix t0;
    Matrix tplus;
    Matrix tminus;

    int dim() const { return j.twice() + 1; }
};

// Ladder coefficients sqrt([j+m+1]_q [j-m]_q); rejects negative j.
SpinRep make_spin_rep(HalfInt j, double z = 0.0);

// Boson ladder operators truncated to Fock levels n = 0..n_max:
// b|n> = sqrt(n)|n-1>, bdag|n> = sqrt(n+1)|n+1> with the transition out of
// level n_max dropped. Consequently bdag*b = diag(0..n_max) exactly and
// [b, bdag] = 1 everywhere except the (n_max, n_max) entry.
struct BosonOps {
    int n_max = 0;
    Matrix b;
    Matrix bdag;

    int dim() const { return n_max + 1; }
};

BosonOps make_boson_ops(int n_max);

// Kronecker product with the spin-major index convention shared by all
// modules: the row index of tensor(a, b) is i_a * b.rows() + i_b, i.e. the
// left (spin) factor varies slowest.
Matrix tensor(const Matrix& a, const Matrix& b);

// a b - b a; both operands must be square and of equal dimension.
Matrix commutator(const Matrix& a, const Matrix& b);

} // namespace qfb
