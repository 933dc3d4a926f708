#pragma once

#include <Eigen/Dense>

#include <compare>
#include <stdexcept>
#include <string>

namespace qfb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected input: malformed labels, incompatible dimensions, inadmissible subspaces.
struct InvalidInput : Error {
    using Error::Error;
};

struct SubspaceError : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct DimensionError : InvalidInput {
    using InvalidInput::InvalidInput;
};

// An internal consistency check failed. Signals a construction bug rather than
// bad input, or a diagnostic whose asserted decay/centrality did not hold.
struct VerificationError : Error {
    using Error::Error;
};

// Half-integer quantum label (spin projection m, shell pseudospin Omega,
// subspace charge L). Stored as twice the value so that parity distinctions
// between integer and half-odd labels stay exact.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    // Accepts values representable as n/2; anything else is rejected.
    static HalfInt from_double(double v);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return twice_ / 2.0; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice_ <=> b.twice_; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }

    HalfInt& operator+=(HalfInt o) {
        twice_ += o.twice_;
        return *this;
    }

private:
    int twice_ = 0;
};

std::string to_string(HalfInt h);

} // namespace qfb
