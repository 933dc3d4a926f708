#include "qfb/fit.hpp"

#include <cmath>
#include <limits>

namespace qfb {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kScanPoints = 33;
constexpr double kFlatTie = 1e-12;

struct ScalarMin {
    double x = 0.0;
    double f = 0.0;
    bool converged = true;
};

// Golden-section search with parabolic acceleration on [a, b]; deterministic
// for fixed inputs. xtol is an absolute window on the argument.
template <typename F>
ScalarMin minimize_scalar(F&& f, double a, double b, double xtol) {
    constexpr double kGolden = 0.3819660112501051;
    ScalarMin out;
    if (!(b > a)) {
        out.x = a;
        out.f = f(a);
        return out;
    }

    double x = a + kGolden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    int it = 0;
    for (; it < kMaxIterations; ++it) {
        const double mid = 0.5 * (a + b);
        const double tol1 = xtol + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;

        bool golden = true;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            if (std::abs(p) < std::abs(0.5 * q * e) && p > q * (a - x) && p < q * (b - x)) {
                e = d;
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = mid > x ? tol1 : -tol1;
                golden = false;
            }
        }
        if (golden) {
            e = x < mid ? b - x : a - x;
            d = kGolden * e;
        }

        const double u = x + (std::abs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; w = x; x = u;
            fv = fw; fw = fx; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    out.x = x;
    out.f = fx;
    out.converged = it < kMaxIterations;
    return out;
}

} // namespace

FitResult fit_q_chi(const Spectrum& target, const FamilyBuilder& builder, Metric metric,
                    const FitBounds& bounds) {
    if (!(bounds.z_hi >= bounds.z_lo) || !(bounds.chi_hi >= bounds.chi_lo)) {
        throw InvalidInput("empty search box");
    }

    long evaluations = 0;
    const auto objective = [&](double z, double chi) {
        const Matrix h = builder(z, chi);
        if (h.rows() != target.size()) {
            throw DimensionError("builder dimension " + std::to_string(h.rows()) +
                                 " does not match the target spectrum of size " +
                                 std::to_string(target.size()));
        }
        ++evaluations;
        const double val = spectral_distance(eigh(h), target, metric);
        if (!std::isfinite(val)) throw Error("non-finite objective");
        return val;
    };

    const double chi_tol = 1e-10 * std::max(1.0, bounds.chi_hi - bounds.chi_lo);
    bool all_converged = true;
    const auto best_chi_at = [&](double z) {
        ScalarMin m = minimize_scalar([&](double chi) { return objective(z, chi); },
                                      bounds.chi_lo, bounds.chi_hi, chi_tol);
        all_converged = all_converged && m.converged;
        return m;
    };

    // The z = 0 member is the undeformed family; its slice is the baseline.
    const ScalarMin base = best_chi_at(0.0);

    double best_z = 0.0;
    ScalarMin best = base;
    const auto consider = [&](double z, const ScalarMin& m) {
        if (m.f < best.f) {
            best = m;
            best_z = z;
        }
    };

    if (bounds.z_hi > bounds.z_lo) {
        for (int i = 0; i < kScanPoints; ++i) {
            const double z =
                bounds.z_lo + (bounds.z_hi - bounds.z_lo) * i / (kScanPoints - 1.0);
            consider(z, best_chi_at(z));
        }
        const double width = (bounds.z_hi - bounds.z_lo) / (kScanPoints - 1.0);
        const double lo = std::max(bounds.z_lo, best_z - width);
        const double hi = std::min(bounds.z_hi, best_z + width);
        const ScalarMin outer = minimize_scalar(
            [&](double z) { return best_chi_at(z).f; }, lo, hi, 1e-9);
        all_converged = all_converged && outer.converged;
        consider(outer.x, best_chi_at(outer.x));
    }

    FitResult result;
    result.baseline_q1 = base.f;
    // Flat landscape in z: prefer the undeformed point.
    if (base.f <= best.f + kFlatTie) {
        best = base;
        best_z = 0.0;
    }
    result.z_opt = best_z == 0.0 ? 0.0 : best_z; // normalizes -0.0
    result.chi_opt = best.x;
    result.objective = best.f;

    // The interaction enters linearly; when the spectrum is even in chi the
    // two signs are equivalent and the nonnegative representative is reported.
    if (result.chi_opt < 0.0 && -result.chi_opt >= bounds.chi_lo &&
        -result.chi_opt <= bounds.chi_hi &&
        objective(result.z_opt, -result.chi_opt) <= result.objective + kFlatTie) {
        result.chi_opt = -result.chi_opt;
    }
    if (std::abs(result.chi_opt) < chi_tol) result.chi_opt = 0.0;

    result.evaluations = evaluations;
    result.converged = all_converged;
    return result;
}

FamilyBuilder dps_family(double omega_f, double omega_b, HalfInt omega_cap, HalfInt l) {
    const HalfInt j = dps_j_mapping(omega_cap, l);
    return [=](double z, double chi) {
        QModelSpec spec;
        spec.family = QFamily::DpsType;
        spec.z = z;
        spec.chi = chi;
        spec.omega_f = omega_f;
        spec.omega_b = omega_b;
        spec.omega_cap = omega_cap;
        spec.l_value = l;
        spec.j = j;
        return build_hq_dps(spec).entries;
    };
}

FamilyBuilder le_family(double omega_f, double omega_b, HalfInt omega_cap, HalfInt l,
                        HalfInt j) {
    return [=](double z, double chi) {
        QModelSpec spec;
        spec.family = QFamily::LeType;
        spec.z = z;
        spec.chi = chi;
        spec.omega_f = omega_f;
        spec.omega_b = omega_b;
        spec.omega_cap = omega_cap;
        spec.l_value = l;
        spec.j = j;
        return build_hq_le(spec).entries;
    };
}

std::vector<SweepRow> sweep(const std::vector<SweepPoint>& grid, Metric metric) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const SweepPoint& point : grid) {
        SweepRow row;
        row.point = point;
        try {
            const ModelSpec& spec = point.spec;
            const Spectrum target = eigh(build_hamiltonian(spec, enumerate_subspace(spec, point.l)));
            const FamilyBuilder family =
                spec.k == 1 ? dps_family(spec.omega_f, spec.omega_b, spec.omega_cap, point.l)
                            : le_family(spec.omega_f, spec.omega_b, spec.omega_cap, point.l,
                                        spec.omega_cap);
            row.fit = fit_q_chi(target, family, metric, FitBounds::for_scale(spec.g));
            row.q_opt = DeformationParam{row.fit.z_opt}.q();
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qfb
