#include "qfb/models.hpp"

#include <cmath>
#include <iostream>

namespace qfb {

namespace {

void check_spec(const ModelSpec& spec) {
    if (spec.k < 1 || spec.k > 2) throw InvalidInput("k must be 1 or 2, got " + std::to_string(spec.k));
    if (spec.p < 0 || spec.p > 2) throw InvalidInput("p must be 0, 1 or 2, got " + std::to_string(spec.p));
    if (spec.omega_cap.twice() <= 0) {
        throw InvalidInput("omega_cap must be positive, got " + to_string(spec.omega_cap));
    }
}

// Enforce H = H^T exactly; the correction must be at rounding level.
void symmetrize(Matrix& h) {
    const Matrix sym = 0.5 * (h + h.transpose());
    const double corr = (sym - h).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    if (corr > 1e-13 * scale) {
        throw VerificationError("asymmetric construction, correction " + std::to_string(corr));
    }
    h = sym;
}

int band_step_of(const InvariantSubspace& sub, int k) {
    if (sub.dim < 2) return 1;
    const int stride2 = sub.states[1].m_omega.twice() - sub.states[0].m_omega.twice();
    const int d = 2 * k / stride2;
    return d >= 1 ? d : 1;
}

} // namespace

ModelKind classify(const ModelSpec& spec) {
    if (spec.p == 0) return spec.k == 2 ? ModelKind::LMG : ModelKind::Generic;
    if (spec.k == 1 && spec.p == 1) {
        return spec.variant == Variant::PlusPlus ? ModelKind::DPS : ModelKind::Dicke;
    }
    if (spec.k == 2 && spec.p == 1) {
        return spec.variant == Variant::PlusPlus ? ModelKind::LE_pp : ModelKind::LE_pm;
    }
    return ModelKind::Generic;
}

ModelSpec dps_model(double omega_f, double omega_b, double g, HalfInt omega_cap) {
    return {Variant::PlusPlus, 1, 1, omega_f, omega_b, g, omega_cap};
}

ModelSpec dicke_model(double omega_f, double omega_b, double g, HalfInt omega_cap) {
    return {Variant::PlusMinus, 1, 1, omega_f, omega_b, g, omega_cap};
}

ModelSpec le_pm_model(double omega_f, double omega_b, double g, HalfInt omega_cap) {
    return {Variant::PlusMinus, 2, 1, omega_f, omega_b, g, omega_cap};
}

ModelSpec le_pp_model(double omega_f, double omega_b, double g, HalfInt omega_cap) {
    return {Variant::PlusPlus, 2, 1, omega_f, omega_b, g, omega_cap};
}

ModelSpec lmg_model(double omega_f, double omega_b, double g, HalfInt omega_cap) {
    return {Variant::PlusPlus, 2, 0, omega_f, omega_b, g, omega_cap};
}

InvariantSubspace enumerate_subspace(const ModelSpec& spec, HalfInt l) {
    check_spec(spec);

    InvariantSubspace sub;
    sub.l_value = l;

    const int omega2 = spec.omega_cap.twice();
    if (spec.p == 0) {
        if (l.twice() != 0) {
            std::cerr << "note: boson decoupled (p = 0), ignoring L = " << to_string(l) << "\n";
        }
        for (int x = 0; x <= omega2; ++x) {
            sub.states.push_back({HalfInt::from_twice(-omega2 + 2 * x), 0});
        }
        sub.dim = static_cast<int>(sub.states.size());
        sub.max_n = 0;
        return sub;
    }

    // n = L -+ (p/k)(m + Omega), exact in twice-integer arithmetic.
    const int sign = spec.variant == Variant::PlusPlus ? +1 : -1;
    bool parity_found = false;
    for (int x = 0; x <= omega2; ++x) {
        const int num = l.twice() * spec.k + sign * 2 * spec.p * x;
        if (num % (2 * spec.k) != 0) continue;
        parity_found = true;
        const int n = num / (2 * spec.k);
        if (n < 0) continue;
        sub.states.push_back({HalfInt::from_twice(-omega2 + 2 * x), n});
        sub.max_n = std::max(sub.max_n, n);
    }

    if (sub.states.empty()) {
        if (!parity_found) {
            throw SubspaceError("class mismatch: L = " + to_string(l) +
                                " selects no parity class of this model");
        }
        throw SubspaceError("empty subspace for L = " + to_string(l));
    }
    sub.dim = static_cast<int>(sub.states.size());
    return sub;
}

bool is_valid_l(const ModelSpec& spec, HalfInt l) {
    check_spec(spec);
    if (spec.p == 0) return true;
    const int omega2 = spec.omega_cap.twice();
    const int sign = spec.variant == Variant::PlusPlus ? +1 : -1;
    for (int x = 0; x <= omega2; ++x) {
        const int num = l.twice() * spec.k + sign * 2 * spec.p * x;
        if (num % (2 * spec.k) == 0 && num / (2 * spec.k) >= 0) return true;
    }
    return false;
}

HamiltonianMatrix build_hamiltonian(const ModelSpec& spec, const InvariantSubspace& sub) {
    check_spec(spec);
    const ModelKind kind = classify(spec);
    if (kind == ModelKind::Generic) {
        std::cerr << "note: no closed-form elements for (variant, k = " << spec.k
                  << ", p = " << spec.p << "), using the tensor-product route\n";
        return build_oracle(spec, sub.l_value);
    }

    const long double omega = spec.omega_cap.twice() / 2.0L;
    const long double lval = sub.l_value.twice() / 2.0L;
    const long double wf = spec.omega_f;
    const long double wb = spec.omega_b;
    const long double g = spec.g;

    HamiltonianMatrix h;
    h.dim = sub.dim;
    h.band_step = band_step_of(sub, spec.k);
    h.entries = Matrix::Zero(sub.dim, sub.dim);

    for (int c = 0; c < sub.dim; ++c) {
        const long double m = sub.states[c].m_omega.twice() / 2.0L;
        long double diag = 0;
        long double off = 0;
        switch (kind) {
            case ModelKind::DPS:
                diag = wb * lval + (wf + wb) * (omega + m);
                off = g * sqrtl((omega + m + 1) * (omega - m) * (lval + omega + m + 1));
                break;
            case ModelKind::Dicke:
                diag = wb * lval + (wf - wb) * (omega + m);
                off = g * sqrtl((omega + m + 1) * (omega - m) * (lval - omega - m));
                break;
            case ModelKind::LE_pm:
                diag = wb * lval + (wf - wb / 2) * (omega + m);
                off = g * sqrtl(lval - (omega + m) / 2) *
                      sqrtl((omega + m + 2) * (omega + m + 1) * (omega - m) * (omega - m - 1));
                break;
            case ModelKind::LE_pp:
                diag = wb * lval + (wf + wb / 2) * (omega + m);
                off = g * sqrtl(lval + (omega + m) / 2 + 1) *
                      sqrtl((omega + m + 2) * (omega + m + 1) * (omega - m) * (omega - m - 1));
                break;
            case ModelKind::LMG:
                diag = wf * (omega + m);
                off = g * sqrtl((omega + m + 2) * (omega + m + 1) * (omega - m) * (omega - m - 1));
                break;
            case ModelKind::Generic:
                break;
        }
        h.entries(c, c) = static_cast<double>(diag);
        const int r = c + h.band_step;
        if (r < sub.dim &&
            sub.states[r].m_omega.twice() == sub.states[c].m_omega.twice() + 2 * spec.k) {
            h.entries(r, c) = static_cast<double>(off);
            h.entries(c, r) = static_cast<double>(off);
        }
    }

    symmetrize(h.entries);
    return h;
}

Matrix build_full_hamiltonian(const ModelSpec& spec, int n_max) {
    check_spec(spec);
    const SpinRep rep = make_spin_rep(spec.omega_cap, 0.0);
    const BosonOps bos = make_boson_ops(n_max);
    const int dim = rep.dim() * bos.dim();

    Matrix tp_k = rep.tplus;
    for (int i = 1; i < spec.k; ++i) tp_k = tp_k * rep.tplus;

    Matrix x_p = Matrix::Identity(bos.dim(), bos.dim());
    const Matrix& raise_boson = spec.variant == Variant::PlusPlus ? bos.bdag : bos.b;
    for (int i = 0; i < spec.p; ++i) x_p = x_p * raise_boson;

    const Matrix eye_b = Matrix::Identity(bos.dim(), bos.dim());
    const Matrix eye_s = Matrix::Identity(rep.dim(), rep.dim());
    const Matrix raising = tensor(tp_k, x_p);

    Matrix h = spec.omega_f * (tensor(rep.t0, eye_b) +
                               spec.omega_cap.value() * Matrix::Identity(dim, dim)) +
               spec.omega_b * tensor(eye_s, bos.bdag * bos.b) +
               spec.g * (raising + raising.transpose());
    return h;
}

HamiltonianMatrix build_oracle(const ModelSpec& spec, HalfInt l) {
    const InvariantSubspace sub = enumerate_subspace(spec, l);
    const Matrix full = build_full_hamiltonian(spec, sub.max_n);

    const int omega2 = spec.omega_cap.twice();
    const int boson_dim = sub.max_n + 1;
    std::vector<int> idx(sub.dim);
    for (int i = 0; i < sub.dim; ++i) {
        const int spin_index = (sub.states[i].m_omega.twice() + omega2) / 2;
        idx[i] = spin_index * boson_dim + sub.states[i].n;
    }

    HamiltonianMatrix h;
    h.dim = sub.dim;
    h.band_step = band_step_of(sub, spec.k);
    h.entries = Matrix::Zero(sub.dim, sub.dim);
    for (int r = 0; r < sub.dim; ++r) {
        for (int c = 0; c < sub.dim; ++c) {
            h.entries(r, c) = full(idx[r], idx[c]);
        }
    }

    symmetrize(h.entries);
    return h;
}

Matrix symmetry_operator(const ModelSpec& spec, int n_max) {
    check_spec(spec);
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative");

    const int omega2 = spec.omega_cap.twice();
    const int dim_s = omega2 + 1;
    const int dim_b = n_max + 1;
    const double coeff = (spec.variant == Variant::PlusPlus ? -1.0 : 1.0) *
                         static_cast<double>(spec.p) / static_cast<double>(spec.k);

    Matrix p = Matrix::Zero(dim_s * dim_b, dim_s * dim_b);
    for (int i = 0; i < dim_s; ++i) {
        const double m_plus_omega = i; // m + Omega = 0, 1, ..., 2 Omega
        for (int n = 0; n < dim_b; ++n) {
            p(i * dim_b + n, i * dim_b + n) = n + coeff * m_plus_omega;
        }
    }
    return p;
}

} // namespace qfb
