#include <doctest.h>

#include "qfb/algebra.hpp"

#include <cmath>

using namespace qfb;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("half-integer labels") {
    CHECK(HalfInt(2).twice() == 4);
    CHECK(HalfInt::from_twice(3).value() == doctest::Approx(1.5));
    CHECK(HalfInt::from_double(1.5).twice() == 3);
    CHECK(HalfInt::from_double(-0.5).twice() == -1);
    CHECK(HalfInt(1).is_integer());
    CHECK_FALSE(HalfInt::from_twice(1).is_integer());
    CHECK(to_string(HalfInt::from_twice(3)) == "3/2");
    CHECK(to_string(HalfInt(2)) == "2");
    CHECK_THROWS_AS(HalfInt::from_double(0.3), InvalidInput);
    CHECK_THROWS_AS(HalfInt::from_double(std::nan("")), InvalidInput);
}

TEST_CASE("q_number closed forms") {
    // [2]_q = q + 1/q at q = 2
    CHECK(q_number(2.0, kLn2) == doctest::Approx(2.5).epsilon(1e-14));
    // undeformed limit
    CHECK(q_number(5.0, 0.0) == 5.0);
    // sinh(0.3)/sinh(0.1), frozen from a 40-digit evaluation
    CHECK(q_number(3.0, 0.1) == doctest::Approx(3.0401335112381517).epsilon(1e-15));
}

TEST_CASE("q_number properties") {
    const double xs[] = {0.0, 0.5, 1.0, 2.0, 3.5, 7.0, 12.0};
    const double zs[] = {-1.0, -0.3, -0.01, 1e-9, 0.01, 0.3, 1.0};
    for (double z : zs) {
        for (double x : xs) {
            const double v = q_number(x, z);
            CHECK(q_number(-x, z) == doctest::Approx(-v).epsilon(1e-14)); // odd in x
            CHECK(q_number(x, -z) == doctest::Approx(v).epsilon(1e-14)); // even in z
        }
        // strictly increasing in x >= 0
        for (std::size_t i = 0; i + 1 < std::size(xs); ++i) {
            CHECK(q_number(xs[i + 1], z) > q_number(xs[i], z));
        }
    }
}

TEST_CASE("q_number limit branch consistency") {
    for (double x : {0.5, 1.0, 3.0, 10.0}) {
        CHECK(std::abs(q_number(x, 1e-8) - x) <= 1e-10 * std::abs(x));
        // continuity across the switchover
        const double lo = q_number(x, 0.999e-8);
        const double hi = q_number(x, 1.001e-8);
        CHECK(std::abs(hi - lo) <= 1e-10 * std::abs(x));
    }
}

TEST_CASE("spin representation small cases") {
    const SpinRep half = make_spin_rep(HalfInt::from_twice(1), 0.0);
    CHECK(half.dim() == 2);
    CHECK(half.tplus(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(half.tplus.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(half.t0(0, 0) == doctest::Approx(-0.5));
    CHECK(half.t0(1, 1) == doctest::Approx(0.5));

    const SpinRep one = make_spin_rep(HalfInt(1), 0.0);
    CHECK(one.tplus(1, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(one.tplus(2, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const SpinRep deformed = make_spin_rep(HalfInt(1), kLn2);
    CHECK(deformed.tplus(1, 0) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
    CHECK(deformed.tplus(2, 1) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));

    CHECK_THROWS_AS(make_spin_rep(HalfInt::from_twice(-1), 0.0), InvalidInput);
}

TEST_CASE("spin representation invariants over j and z") {
    for (int j2 = 1; j2 <= 12; ++j2) {
        const HalfInt j = HalfInt::from_twice(j2);
        for (double z : {-1.0, -0.3, 0.0, 0.3, 1.0}) {
            const SpinRep rep = make_spin_rep(j, z);

            // t0 diagonal, tminus the exact transpose
            CHECK((rep.tminus - rep.tplus.transpose()).cwiseAbs().maxCoeff() == 0.0);

            // [t0, t+-] = +- t+-
            const double ladder_scale = std::max(1.0, rep.tplus.cwiseAbs().maxCoeff());
            CHECK((commutator(rep.t0, rep.tplus) - rep.tplus).cwiseAbs().maxCoeff() <=
                  1e-13 * ladder_scale);
            CHECK((commutator(rep.t0, rep.tminus) + rep.tminus).cwiseAbs().maxCoeff() <=
                  1e-13 * ladder_scale);

            // [t+, t-] = diag([2m]_q); the bound scales with the magnitude of
            // the q-numbers involved (they reach ~7e4 at j = 6, z = 1, where a
            // one-ulp rounding already exceeds 1e-12 absolute)
            Matrix expect = Matrix::Zero(rep.dim(), rep.dim());
            for (int i = 0; i < rep.dim(); ++i) {
                expect(i, i) = q_number(2.0 * rep.t0(i, i), z);
            }
            const double scale = std::max(1.0, expect.cwiseAbs().maxCoeff());
            const double resid =
                (commutator(rep.tplus, rep.tminus) - expect).cwiseAbs().maxCoeff();
            CHECK(resid <= 1e-12 * scale);
        }
    }
}

TEST_CASE("boson ladder operators") {
    const BosonOps zero = make_boson_ops(0);
    CHECK(zero.b.rows() == 1);
    CHECK(zero.b(0, 0) == 0.0);

    const BosonOps ops = make_boson_ops(2);
    CHECK(ops.bdag(1, 0) == doctest::Approx(1.0));
    CHECK(ops.bdag(2, 1) == doctest::Approx(std::sqrt(2.0)));

    const Matrix number = ops.bdag * ops.b;
    for (int n = 0; n <= 2; ++n) CHECK(number(n, n) == doctest::Approx(n).epsilon(1e-15));
    CHECK((number - Matrix(number.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    // [b, bdag] = 1 except the truncated corner
    const Matrix comm = commutator(ops.b, ops.bdag);
    for (int n = 0; n < 2; ++n) CHECK(comm(n, n) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(comm(2, 2) == doctest::Approx(-2.0).epsilon(1e-15));

    CHECK_THROWS_AS(make_boson_ops(-1), InvalidInput);
}

TEST_CASE("tensor product and commutator") {
    CHECK((tensor(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) - Matrix::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // spin-major convention: row = i_a * rows(b) + i_b
    Matrix a(2, 2), b(3, 3);
    a << 1, 2, 3, 4;
    b.setZero();
    b(0, 2) = 5;
    const Matrix t = tensor(a, b);
    CHECK(t(0, 2) == doctest::Approx(5.0));   // a(0,0) * b(0,2)
    CHECK(t(3, 5) == doctest::Approx(20.0));  // a(1,1) * b(0,2)

    const SpinRep rep = make_spin_rep(HalfInt(1), 0.0);
    const BosonOps ops = make_boson_ops(3);
    CHECK(commutator(rep.t0, rep.t0).cwiseAbs().maxCoeff() == 0.0);
    const Matrix lhs = tensor(rep.t0, Matrix::Identity(4, 4));
    const Matrix rhs = tensor(Matrix::Identity(3, 3), ops.bdag * ops.b);
    CHECK(commutator(lhs, rhs).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(commutator(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), DimensionError);
}
