#pragma once

#include "qfb/common.hpp"
#include "qfb/models.hpp"

namespace qfb {

struct Spectrum {
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // column i pairs with eigenvalues[i]; empty unless requested

    int size() const { return static_cast<int>(eigenvalues.size()); }
    bool has_vectors() const { return eigenvectors.size() != 0; }
};

enum class Metric { RMS, MaxAbs, GroundState };

// Dense symmetric eigensolver: Householder reduction to tridiagonal form
// followed by implicit-shift QL sweeps, then an ascending sort. Fully
// sequential with a fixed sweep order, so identical inputs give bit-identical
// output. Rejects inputs whose asymmetry exceeds 1e-12 relative to the
// largest entry.
Spectrum eigh(const Matrix& h, bool want_vectors = false);

inline Spectrum eigh(const HamiltonianMatrix& h, bool want_vectors = false) {
    return eigh(h.entries, want_vectors);
}

// RMS: root mean square of elementwise differences; MaxAbs: largest
// elementwise difference; GroundState: |min a - min b|. RMS and MaxAbs
// require equal lengths.
double spectral_distance(const Spectrum& a, const Spectrum& b, Metric metric);

} // namespace qfb
