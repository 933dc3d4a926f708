#include "qfb/algebra.hpp"

#include <cstdlib>

namespace qfb {

std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.twice() / 2);
    return std::to_string(h.twice()) + "/2";
}

HalfInt HalfInt::from_double(double v) {
    const double t = 2.0 * v;
    const double r = std::round(t);
    if (!std::isfinite(t) || std::abs(t - r) > 1e-9 || std::abs(r) > 1e9) {
        throw InvalidInput("not a half-integer: " + std::to_string(v));
    }
    return from_twice(static_cast<int>(r));
}

double q_number(double x, double z) {
    if (std::abs(z) < kQNumberLimitSwitch) return x;
    return std::sinh(z * x) / std::sinh(z);
}

namespace {

// Ladder coefficients are accumulated in extended precision so that the
// stored double entries are correctly rounded; the [t+, t-] residual is then
// dominated by the final double product alone.
long double q_number_ld(long double x, long double z) {
    if (std::abs(static_cast<double>(z)) < kQNumberLimitSwitch) return x;
    return sinhl(z * x) / sinhl(z);
}

} // namespace

SpinRep make_spin_rep(HalfInt j, double z) {
    if (j.twice() < 0) throw InvalidInput("spin label j must be nonnegative, got " + to_string(j));

    const int dim = j.twice() + 1;
    SpinRep rep;
    rep.j = j;
    rep.z = z;
    rep.t0 = Matrix::Zero(dim, dim);
    rep.tplus = Matrix::Zero(dim, dim);

    const long double jl = j.twice() / 2.0L;
    const long double zl = z;
    for (int i = 0; i < dim; ++i) {
        const long double m = -jl + i;
        rep.t0(i, i) = static_cast<double>(m);
        if (i + 1 < dim) {
            const long double c =
                sqrtl(q_number_ld(jl + m + 1, zl) * q_number_ld(jl - m, zl));
            rep.tplus(i + 1, i) = static_cast<double>(c);
        }
    }
    rep.tminus = rep.tplus.transpose();
    return rep;
}

BosonOps make_boson_ops(int n_max) {
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative, got " + std::to_string(n_max));

    const int dim = n_max + 1;
    BosonOps ops;
    ops.n_max = n_max;
    ops.b = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        ops.b(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    ops.bdag = ops.b.transpose();
    return ops;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("commutator needs square matrices of equal dimension");
    }
    return a * b - b * a;
}

} // namespace qfb
