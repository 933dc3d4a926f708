#include "qfb/qeffective.hpp"

#include <cmath>

namespace qfb {

namespace {

long double qn_ld(long double x, long double z) {
    if (std::abs(static_cast<double>(z)) < kQNumberLimitSwitch) return x;
    return sinhl(z * x) / sinhl(z);
}

void symmetrize(Matrix& h) {
    h = 0.5 * (h + h.transpose()).eval();
}

} // namespace

HalfInt dps_j_mapping(HalfInt omega_cap, HalfInt l) {
    if (!l.is_integer()) {
        throw InvalidInput("one-step subspaces carry integer L, got " + to_string(l));
    }
    const int j2 = l.twice() >= 0 ? omega_cap.twice() : omega_cap.twice() + l.twice() / 2;
    if (j2 < 0) {
        throw SubspaceError("no representation matches L = " + to_string(l) +
                            " at Omega = " + to_string(omega_cap));
    }
    return HalfInt::from_twice(j2);
}

HamiltonianMatrix build_hq_int(HalfInt j, double z) {
    if (j.twice() < 0) throw InvalidInput("j must be nonnegative");

    const int dim = j.twice() + 1;
    const long double jl = j.twice() / 2.0L;
    const long double zl = z;

    HamiltonianMatrix h;
    h.dim = dim;
    h.band_step = 1;
    h.entries = Matrix::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; ++i) {
        const long double m = -jl + i;
        const long double v = expl(zl * (m + 0.5L)) *
                              sqrtl(qn_ld(jl + m + 1, zl) * qn_ld(jl - m, zl));
        h.entries(i + 1, i) = static_cast<double>(v);
        h.entries(i, i + 1) = static_cast<double>(v);
    }
    return h;
}

HamiltonianMatrix build_hq_dps(const QModelSpec& spec) {
    if (spec.family != QFamily::DpsType) {
        throw InvalidInput("build_hq_dps expects the one-step family");
    }

    const int expected_dim = spec.l_value.twice() >= 0
                                 ? spec.omega_cap.twice() + 1
                                 : spec.omega_cap.twice() + spec.l_value.twice() / 2 + 1;
    if (spec.j.twice() + 1 != expected_dim) {
        throw DimensionError("representation dimension " + std::to_string(spec.j.twice() + 1) +
                             " does not match the subspace dimension " +
                             std::to_string(expected_dim));
    }

    HamiltonianMatrix h = build_hq_int(spec.j, spec.z);
    h.entries *= spec.chi;

    const double omega = spec.omega_cap.value();
    const double lval = spec.l_value.value();
    for (int i = 0; i < h.dim; ++i) {
        const double m = -spec.j.value() + i;
        h.entries(i, i) = spec.omega_b * lval + (spec.omega_f + spec.omega_b) * (m + omega);
    }
    symmetrize(h.entries);
    return h;
}

HamiltonianMatrix build_hq_le(const QModelSpec& spec) {
    if (spec.family != QFamily::LeType) throw InvalidInput("build_hq_le expects the two-step family");
    if (spec.j.twice() < 0) throw InvalidInput("j must be nonnegative");

    // parity sublattice m = -j, -j+2, ..., <= j
    const long double jl = spec.j.twice() / 2.0L;
    const long double zl = spec.z;
    std::vector<long double> ms;
    for (long double m = -jl; m <= jl + 0.25L; m += 2.0L) ms.push_back(m);
    const int dim = static_cast<int>(ms.size());
    if (dim == 0) throw DimensionError("empty sublattice for j = " + to_string(spec.j));

    HamiltonianMatrix h;
    h.dim = dim;
    h.band_step = 1;
    h.entries = Matrix::Zero(dim, dim);

    const double omega = spec.omega_cap.value();
    const double lval = spec.l_value.value();
    for (int i = 0; i < dim; ++i) {
        const double m = static_cast<double>(ms[i]);
        h.entries(i, i) =
            spec.omega_b * lval + (spec.omega_f - 0.5 * spec.omega_b) * (omega + m);
        if (i + 1 < dim) {
            const long double m_l = ms[i];
            const long double v = expl(zl * 2 * (m_l + 1)) *
                                  sqrtl(qn_ld(jl + m_l + 2, zl) * qn_ld(jl + m_l + 1, zl) *
                                        qn_ld(jl - m_l, zl) * qn_ld(jl - m_l - 1, zl));
            const double off = spec.chi * static_cast<double>(v);
            h.entries(i + 1, i) = off;
            h.entries(i, i + 1) = off;
        }
    }
    symmetrize(h.entries);
    return h;
}

} // namespace qfb
