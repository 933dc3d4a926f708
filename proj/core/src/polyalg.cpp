#include "qfb/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qfb {

namespace {

long double qn_ld(long double x, long double z) {
    if (std::abs(static_cast<double>(z)) < kQNumberLimitSwitch) return x;
    return sinhl(z * x) / sinhl(z);
}

// sqrt((j - m)(j + m + 1)) in twice-integer labels
long double spin_ladder(int j2, int m2) {
    const long double j = j2 / 2.0L;
    const long double m = m2 / 2.0L;
    return sqrtl((j - m) * (j + m + 1));
}

struct FBRealization {
    Variant variant;
    int k;
    int p;
};

FBRealization fb_params(Realization r) {
    switch (r) {
        case Realization::DPS:   return {Variant::PlusPlus, 1, 1};
        case Realization::LMG:   return {Variant::PlusPlus, 2, 0};
        case Realization::LE_pm: return {Variant::PlusMinus, 2, 1};
        case Realization::LE_pp: return {Variant::PlusPlus, 2, 1};
        default: throw InvalidInput("not a fermion-boson realization");
    }
}

bool is_q_realization(Realization r) {
    return r == Realization::qDPS || r == Realization::qLE;
}

KOperators make_fb_k_operators(Realization realization, HalfInt omega, HalfInt l) {
    const FBRealization fb = fb_params(realization);
    ModelSpec spec;
    spec.variant = fb.variant;
    spec.k = fb.k;
    spec.p = fb.p;
    spec.omega_cap = omega;
    const InvariantSubspace sub = enumerate_subspace(spec, l);

    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < sub.dim; ++i) {
        index[{sub.states[i].m_omega.twice(), sub.states[i].n}] = i;
    }

    KOperators k;
    k.realization = realization;
    k.step = fb.k;
    k.k0 = Matrix::Zero(sub.dim, sub.dim);
    k.kplus = Matrix::Zero(sub.dim, sub.dim);

    const int omega2 = omega.twice();
    for (int c = 0; c < sub.dim; ++c) {
        const int m2 = sub.states[c].m_omega.twice();
        const int n = sub.states[c].n;
        k.k0(c, c) = m2 / 2.0;

        const int tn = fb.variant == Variant::PlusPlus ? n + fb.p : n - fb.p;
        const auto it = index.find({m2 + 2 * fb.k, tn});
        if (it == index.end()) continue;

        long double f = 1.0L;
        for (int s = 0; s < fb.k; ++s) f *= spin_ladder(omega2, m2 + 2 * s);
        for (int s = 0; s < fb.p; ++s) {
            f *= fb.variant == Variant::PlusPlus ? sqrtl(n + 1.0L + s) : sqrtl(n - static_cast<long double>(s));
        }
        k.kplus(it->second, c) = static_cast<double>(f);
    }
    k.kminus = k.kplus.transpose();
    return k;
}

KOperators make_q_k_operators(Realization realization, HalfInt j, double z) {
    if (j.twice() < 0) throw InvalidInput("j must be nonnegative");
    const int dim = j.twice() + 1;
    const int step = realization == Realization::qDPS ? 1 : 2;
    const long double jl = j.twice() / 2.0L;
    const long double zl = z;

    KOperators k;
    k.realization = realization;
    k.step = step;
    k.k0 = Matrix::Zero(dim, dim);
    k.kplus = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const long double m = -jl + i;
        k.k0(i, i) = static_cast<double>(m);
        if (i + step >= dim) continue;
        long double v;
        if (realization == Realization::qDPS) {
            // q^{T0/2} T+ q^{T0/2}
            v = expl(zl * (m + 0.5L)) * sqrtl(qn_ld(jl + m + 1, zl) * qn_ld(jl - m, zl));
        } else {
            // q^{T0} T+^2 q^{T0}
            v = expl(zl * 2 * (m + 1)) *
                sqrtl(qn_ld(jl + m + 2, zl) * qn_ld(jl + m + 1, zl) * qn_ld(jl - m, zl) *
                      qn_ld(jl - m - 1, zl));
        }
        k.kplus(i + step, i) = static_cast<double>(v);
    }
    k.kminus = k.kplus.transpose();
    return k;
}

// Monomial coefficients of the Newton interpolant through (xs, ys),
// accumulated in extended precision.
std::vector<double> newton_interpolant(const std::vector<long double>& xs,
                                       std::vector<long double> ys) {
    const int n = static_cast<int>(xs.size());
    for (int lev = 1; lev < n; ++lev) {
        for (int i = n - 1; i >= lev; --i) {
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - lev]);
        }
    }
    std::vector<long double> poly(n, 0.0L);
    poly[0] = ys[n - 1];
    int deg = 0;
    for (int i = n - 2; i >= 0; --i) {
        for (int d = deg + 1; d >= 1; --d) poly[d] = poly[d - 1] - xs[i] * poly[d];
        poly[0] = -xs[i] * poly[0] + ys[i];
        ++deg;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = static_cast<double>(poly[i]);
    return out;
}

int theoretical_degree(Realization r) {
    const FBRealization fb = fb_params(r);
    return 2 * fb.k + fb.p - 1;
}

double lmg_cubic(double omega, double m) {
    return 4.0 * (2.0 * omega * (omega + 1.0) - 1.0) * m - 8.0 * m * m * m;
}

} // namespace

KOperators make_k_operators(Realization realization, HalfInt omega, HalfInt l, double z,
                            int n_max) {
    if (is_q_realization(realization)) return make_q_k_operators(realization, omega, z);
    KOperators k = make_fb_k_operators(realization, omega, l);
    if (n_max >= 0) {
        ModelSpec spec;
        const FBRealization fb = fb_params(realization);
        spec.variant = fb.variant;
        spec.k = fb.k;
        spec.p = fb.p;
        spec.omega_cap = omega;
        if (enumerate_subspace(spec, l).max_n > n_max) {
            throw InvalidInput("n_max too small for the invariant subspace");
        }
    }
    return k;
}

PolynomialAlgebra extract_commutator_polynomial(const KOperators& k) {
    const Matrix comm = k.kplus * k.kminus - k.kminus * k.kplus;
    const int n = k.dim();
    if (n == 0) throw InvalidInput("empty realization");

    const double comm_scale = std::max(1.0, comm.cwiseAbs().maxCoeff());
    double offdiag = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (r != c) offdiag = std::max(offdiag, std::abs(comm(r, c)));
        }
    }
    if (offdiag > 1e-10 * comm_scale) {
        throw InvalidInput("[K+, K-] is not diagonal in the K0 basis");
    }

    std::vector<long double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = k.k0(i, i);
        ys[i] = comm(i, i);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(static_cast<double>(xs[i] - xs[j])) < 1e-9) {
                throw InvalidInput("repeated K0 eigenvalues");
            }
        }
    }

    PolynomialAlgebra poly;
    poly.step = k.step;
    poly.coeffs = newton_interpolant(xs, std::move(ys));

    const double trim = 1e-8 * std::max(1.0, comm.diagonal().cwiseAbs().maxCoeff());
    while (poly.coeffs.size() > 1 && std::abs(poly.coeffs.back()) < trim) {
        poly.coeffs.pop_back();
    }
    poly.degree = static_cast<int>(poly.coeffs.size()) - 1;
    if (!is_q_realization(k.realization)) {
        poly.underdetermined = n <= theoretical_degree(k.realization);
    }
    return poly;
}

PolynomialAlgebra expected_structure_constants(Realization realization, HalfInt omega,
                                               HalfInt l) {
    if (is_q_realization(realization)) {
        throw InvalidInput("q-realizations close on q-identities, not a polynomial of K0");
    }
    const double om = omega.value();
    const double lv = l.value();

    PolynomialAlgebra poly;
    switch (realization) {
        case Realization::DPS:
            if (!l.is_integer()) throw InvalidInput("one-step subspaces carry integer L");
            poly.coeffs = {-om * (om + 1.0), 1.0 + 2.0 * lv + 2.0 * om, 3.0};
            poly.step = 1;
            break;
        case Realization::LMG:
            poly.coeffs = {0.0, 4.0 * (2.0 * om * (om + 1.0) - 1.0), 0.0, -8.0};
            poly.step = 2;
            break;
        case Realization::LE_pm:
            if (!l.is_integer() || l.twice() < omega.twice()) {
                throw InvalidInput("closed-form constants cover L >= Omega, L integer only");
            }
            poly.coeffs = {om * (om * om - 1.0) * (om + 2.0),
                           2.0 * (1.0 - 2.0 * om * (om + 1.0)) * (om - 2.0 * lv - 1.0),
                           7.0 - 6.0 * om * (om + 1.0),
                           4.0 * (om - 2.0 * lv - 1.0),
                           5.0};
            poly.step = 2;
            break;
        case Realization::LE_pp:
            if (!l.is_integer() || l.twice() < 0) {
                throw InvalidInput("closed-form constants cover L >= 0, L integer only");
            }
            poly.coeffs = {-om * (om * om - 1.0) * (om + 2.0),
                           -2.0 * (1.0 - 2.0 * om * (om + 1.0)) * (om + 2.0 * lv + 1.0),
                           -7.0 + 6.0 * om * (om + 1.0),
                           -4.0 * (om + 2.0 * lv + 1.0),
                           -5.0};
            poly.step = 2;
            break;
        default:
            throw InvalidInput("unsupported realization");
    }
    poly.degree = static_cast<int>(poly.coeffs.size()) - 1;
    return poly;
}

std::pair<Matrix, CasimirSpec> build_casimir(Realization realization, HalfInt omega, HalfInt l,
                                             const KOperators& k) {
    if (k.realization != realization) throw InvalidInput("realization mismatch");
    if (is_q_realization(realization)) {
        throw InvalidInput("the deformed Casimir is handled by verify_q_relations");
    }

    const double om = omega.value();
    const double lv = l.value();
    CasimirSpec spec;
    switch (realization) {
        case Realization::DPS:
            spec.beta = {0.0, -((lv + om) + om * (om + 1.0)), lv + om - 1.0, 1.0, 0.0, 0.0};
            spec.expected_eigenvalue = om * (om + 1.0) * (om + lv);
            break;
        case Realization::LMG: {
            const double x = 2.0 * om * (om + 1.0);
            spec.beta = {0.0, -2.0 * (x - 1.0), x - 5.0, 4.0, -1.0, 0.0};
            spec.expected_eigenvalue = om * (om * om - 1.0) * (om + 2.0);
            break;
        }
        case Realization::LE_pm:
            spec.beta = {-om * (om * om - 1.0) * (om + 2.0),
                         2.0 * (lv + 1.0) +
                             0.5 * om * (-12.0 + om * (om * om + 6.0 * om - 5.0) -
                                         8.0 * (om + 1.0) * lv),
                         -6.0 - 5.0 * lv +
                             0.5 * om * (13.0 + 2.0 * om * (3.0 - om) + 4.0 * (om + 1.0) * lv),
                         6.5 - om * (om + 3.0) + 4.0 * lv,
                         0.5 * om - 3.0 - lv,
                         0.5};
            spec.expected_eigenvalue =
                -0.5 * om * (om * om - 1.0) * (om + 2.0) * (om - 2.0 * lv);
            break;
        case Realization::LE_pp:
            spec.beta = {om * (om * om - 1.0) * (om + 2.0),
                         2.0 * lv - 0.5 * om * (-4.0 + om * (om * om + 6.0 * om + 3.0) +
                                                8.0 * (om + 1.0) * lv),
                         1.0 - 5.0 * lv +
                             0.5 * om * (-9.0 + 2.0 * om * (om - 1.0) + 4.0 * (om + 1.0) * lv),
                         -2.5 + om * (om + 3.0) + 4.0 * lv,
                         -0.5 * om + 2.0 - lv,
                         -0.5};
            spec.expected_eigenvalue =
                0.5 * om * (om * om - 1.0) * (om + 2.0) * (2.0 + om + 2.0 * lv);
            break;
        default:
            throw InvalidInput("unsupported realization");
    }

    const int n = k.dim();
    Matrix c = k.kplus * k.kminus;
    for (int i = 0; i < n; ++i) {
        const double m = k.k0(i, i);
        double acc = 0.0;
        for (int d = 5; d >= 0; --d) acc = acc * m + spec.beta[d];
        c(i, i) += acc;
    }

    const double lam = spec.expected_eigenvalue;
    const double central =
        (c - lam * Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (central > 1e-9 * (1.0 + std::abs(lam))) {
        throw VerificationError("Casimir centrality violation, residual " +
                                std::to_string(central));
    }
    const double comm_tol = 1e-10 * std::max(1.0, 1.0 + std::abs(lam));
    if (commutator(c, k.kplus).cwiseAbs().maxCoeff() > comm_tol ||
        commutator(c, k.kminus).cwiseAbs().maxCoeff() > comm_tol) {
        throw VerificationError("Casimir fails to commute with the ladder operators");
    }
    return {std::move(c), std::move(spec)};
}

double QRelationReport::max_residual() const {
    return std::max({newconm_residual, ncas_residual, qconm_residual});
}

QRelationReport verify_q_relations(const KOperators& k, HalfInt j, double z) {
    if (k.realization != Realization::qDPS) {
        throw InvalidInput("verify_q_relations applies to the qDPS realization");
    }
    const int n = k.dim();
    if (n != j.twice() + 1) throw DimensionError("j does not match the realization dimension");

    QRelationReport rep;
    rep.z = z;
    rep.j = j;
    const double q = std::exp(z);
    const double jv = j.value();

    const Matrix kpkm = k.kplus * k.kminus;
    const Matrix kmkp = k.kminus * k.kplus;

    {
        Matrix lhs = q * kpkm - (1.0 / q) * kmkp;
        Matrix rhs = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double m = k.k0(i, i);
            rhs(i, i) = std::exp(2.0 * z * m) * q_number(2.0 * m, z);
        }
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        rep.newconm_residual = (lhs - rhs).cwiseAbs().maxCoeff() / scale;
    }

    {
        Matrix cq = kpkm;
        for (int r = 0; r < n; ++r) {
            const double m = k.k0(r, r);
            cq.row(r) *= std::exp(z * (-2.0 * m + 1.0));
        }
        for (int i = 0; i < n; ++i) {
            const double m = k.k0(i, i);
            cq(i, i) += q_number(m, z) * q_number(m - 1.0, z);
        }
        rep.cq_expected = q_number(jv, z) * q_number(jv + 1.0, z);
        rep.cq_eigenvalue = cq.trace() / n;
        const double scale = std::max(1.0, std::abs(rep.cq_expected));
        rep.ncas_residual =
            (cq - rep.cq_expected * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() / scale;
    }

    if (std::abs(z) >= 1e-4) {
        const double q2 = q * q;
        const double a = (std::pow(q, 2.0 * jv + 2.0) + std::pow(q, -2.0 * jv)) / (1.0 - q2);
        const double b = (1.0 + q2) / (1.0 - q2);
        Matrix rhs = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double m = k.k0(i, i);
            rhs(i, i) = a * std::exp(2.0 * z * m) - b * std::exp(4.0 * z * m);
        }
        const Matrix lhs = kpkm - kmkp;
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        rep.qconm_residual = (lhs - rhs).cwiseAbs().maxCoeff() / scale;
        rep.qconm_direct = true;
    } else {
        // The fixed-j commutation rule has a 1/(1 - q^2) pole at q = 1; the
        // pole-free deformed rule carries the same content there.
        rep.qconm_residual = rep.newconm_residual;
        rep.qconm_direct = false;
    }
    return rep;
}

std::vector<ContractionRow> contraction_diagnostics(Realization realization, HalfInt omega,
                                                    const std::vector<HalfInt>& l_list) {
    if (realization != Realization::DPS && realization != Realization::LE_pm &&
        realization != Realization::LE_pp) {
        throw InvalidInput("contraction diagnostics cover the DPS and LE realizations");
    }
    if (l_list.size() < 3) throw InvalidInput("need at least three L values");
    for (std::size_t i = 0; i < l_list.size(); ++i) {
        if (l_list[i].twice() <= 0 || (i > 0 && l_list[i] <= l_list[i - 1])) {
            throw InvalidInput("L values must be positive and ascending");
        }
    }

    const double om = omega.value();
    std::vector<ContractionRow> rows;
    rows.reserve(l_list.size());

    for (const HalfInt l : l_list) {
        const KOperators k = make_k_operators(realization, omega, l);
        const double scale = 1.0 / std::sqrt(l.value());

        KOperators j_ops;
        j_ops.realization = realization;
        j_ops.step = k.step;
        j_ops.k0 = k.k0;
        j_ops.kplus = scale * k.kplus;
        j_ops.kminus = scale * k.kminus;

        const int n = k.dim();
        Matrix target = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double m = k.k0(i, i);
            target(i, i) = realization == Realization::DPS ? 2.0 * m : lmg_cubic(om, m);
        }

        ContractionRow row;
        row.l = l;
        const Matrix comm = commutator(j_ops.kplus, j_ops.kminus);
        row.delta = (comm - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff();

        const auto [c, cas] = build_casimir(realization, omega, l, k);
        row.casimir_scaled = c.trace() / n / l.value();
        row.casimir_limit = realization == Realization::DPS
                                ? om * (om + 1.0)
                                : om * (om * om - 1.0) * (om + 2.0);
        row.casimir_gap = std::abs(row.casimir_scaled - row.casimir_limit);

        if (n >= 2) row.commutator_coeffs = extract_commutator_polynomial(j_ops).coeffs;
        rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (l_list[i + 1].twice() == 2 * l_list[i].twice() &&
            rows[i + 1].delta > 0.6 * rows[i].delta) {
            throw VerificationError("contraction deviation fails the O(1/L) decay check at L = " +
                                    to_string(l_list[i + 1]));
        }
    }
    return rows;
}

} // namespace qfb
