#include "qfb/spectra.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qfb {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form.
// On exit d holds the diagonal, e the subdiagonal (e[0] unused), and v the
// accumulated orthogonal transformation.
void tridiagonalize(Matrix& v, Vector& d, Vector& e) {
    const int n = static_cast<int>(v.rows());
    for (int i = 0; i < n; ++i) d[i] = v(n - 1, i);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) v(k, j) -= f * e[k] + g * d[k];
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL iteration on the tridiagonal (d, e); accumulates the
// rotations into v when requested.
void ql_implicit(Matrix& v, Vector& d, Vector& e, bool want_vectors) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 64) throw Error("eigensolver failed to converge");

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (want_vectors) {
                        for (int k = 0; k < n; ++k) {
                            h = v(k, i + 1);
                            v(k, i + 1) = s * v(k, i) + c * h;
                            v(k, i) = c * v(k, i) - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

} // namespace

Spectrum eigh(const Matrix& h, bool want_vectors) {
    if (h.rows() != h.cols()) throw DimensionError("eigh needs a square matrix");
    const int n = static_cast<int>(h.rows());
    if (n == 0) throw DimensionError("eigh needs a nonempty matrix");

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw InvalidInput("non-symmetric input, asymmetry " + std::to_string(asym));
    }

    Matrix v = 0.5 * (h + h.transpose());
    Vector d(n);
    Vector e = Vector::Zero(n);

    tridiagonalize(v, d, e);
    ql_implicit(v, d, e, want_vectors);

    // ascending order, stable with respect to the QL output
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    Spectrum out;
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = d[order[i]];
    if (want_vectors) {
        out.eigenvectors.resize(n, n);
        for (int i = 0; i < n; ++i) out.eigenvectors.col(i) = v.col(order[i]);
    }
    return out;
}

double spectral_distance(const Spectrum& a, const Spectrum& b, Metric metric) {
    if (metric == Metric::GroundState) {
        if (a.size() == 0 || b.size() == 0) throw DimensionError("empty spectrum");
        return std::abs(a.eigenvalues[0] - b.eigenvalues[0]);
    }
    if (a.size() != b.size()) {
        throw DimensionError("spectral_distance needs equal lengths, got " +
                             std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    const Vector diff = a.eigenvalues - b.eigenvalues;
    if (metric == Metric::MaxAbs) return diff.cwiseAbs().maxCoeff();
    return std::sqrt(diff.squaredNorm() / diff.size());
}

} // namespace qfb
