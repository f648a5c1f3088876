#include <doctest.h>

#include "maass/geometry.hpp"
#include "testutil.hpp"

using namespace maass;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;
using testutil::close;

namespace {
const Precision prec(50);
Real tol() { return pow10(-45); }
} // namespace

TEST_CASE("moebius apply on the upper half-plane") {
    ScopedPrecision scope(50);
    HPoint z(Real("0.3"), Real("0.7"));
    HPoint im = apply(MoebiusMap::identity(), z, prec);
    CHECK(close(im.x, Real("0.3"), tol()));
    CHECK(close(im.y, Real("0.7"), tol()));

    HPoint t = apply(MoebiusMap::translation(Real(1)), HPoint(Real("0.2"), Real("0.5")), prec);
    CHECK(close(t.x, Real("1.2"), tol()));
    CHECK(close(t.y, Real("0.5"), tol()));

    // Inversion z -> -r^2/z with r = 0.35: 0.1 + 0.05i -> -0.98 + 0.49i.
    Real r("0.35");
    MoebiusMap inv(Complex(Real(0)), Complex(-r), Complex(1 / r), Complex(Real(0)));
    HPoint w = apply(inv, HPoint(Real("0.1"), Real("0.05")), prec);
    CHECK(close(w.x, Real("-0.98"), tol()));
    CHECK(close(w.y, Real("0.49"), tol()));
}

TEST_CASE("moebius determinant is validated") {
    CHECK_THROWS_AS(MoebiusMap(Complex(Real(2)), Complex(Real(0)), Complex(Real(0)),
                               Complex(Real(2))),
                    DomainError);
}

TEST_CASE("half-plane points reject the boundary") {
    CHECK_THROWS_AS(HPoint(Real(1), Real(0)), BoundaryError);
    CHECK_THROWS_AS(HPoint(Real(1), Real(-1)), BoundaryError);
}

TEST_CASE("cayley transform and inverse") {
    ScopedPrecision scope(50);
    DPoint c = cayley(HPoint(Real(0), Real(1)), prec);
    CHECK(abs(c.w) < tol());

    HPoint z = cayley_inv(DPoint(Complex(Real(0))), prec);
    CHECK(close(z.x, Real(0), tol()));
    CHECK(close(z.y, Real(1), tol()));

    DPoint c2 = cayley(HPoint(Real(0), Real(2)), prec);
    CHECK(close(c2.w.re, Real(1) / 3, tol()));
    CHECK(close(c2.w.im, Real(0), tol()));
}

TEST_CASE("cayley round trip on random disk points") {
    ScopedPrecision scope(50);
    testutil::Rng rng(1234);
    for (int i = 0; i < 50; ++i) {
        Real a = rng.uniform(-0.9, 0.9);
        Real b = rng.uniform(-0.9, 0.9);
        if (a * a + b * b >= Real("0.95")) continue;
        DPoint w{Complex(a, b)};
        DPoint back = cayley(cayley_inv(w, prec), prec);
        CHECK(close(back.w.re, a, tol()));
        CHECK(close(back.w.im, b, tol()));
    }
}

TEST_CASE("polar coordinates") {
    ScopedPrecision scope(50);
    Real pi = pi_value();
    PolarPoint p = to_polar(HPoint(Real(0), Real(1)));
    CHECK(close(p.r, Real(1), tol()));
    CHECK(close(p.theta, pi / 2, tol()));

    PolarPoint q = to_polar(HPoint(Real(1), Real(1)));
    CHECK(close(q.r, sqrt(Real(2)), tol()));
    CHECK(close(q.theta, pi / 4, tol()));

    HPoint z = from_polar(PolarPoint(Real(2), pi / 3));
    CHECK(close(z.x, Real(1), tol()));
    CHECK(close(z.y, sqrt(Real(3)), tol()));

    testutil::Rng rng(99);
    for (int i = 0; i < 30; ++i) {
        HPoint w(rng.uniform(-3, 3), rng.uniform(0.01, 4));
        HPoint back = from_polar(to_polar(w));
        CHECK(close(back.x, w.x, tol()));
        CHECK(close(back.y, w.y, tol()));
    }
}

TEST_CASE("fixed points of hyperbolic maps") {
    ScopedPrecision scope(50);
    // A = T S for the Hecke group: fixed points (1 -+ sqrt(1 - 4 r^2))/2.
    auto check_r = [&](const char* rs) {
        Real r(rs);
        MoebiusMap A(Complex(1 / r), Complex(-r), Complex(1 / r), Complex(Real(0)));
        auto [p1, p2] = fixed_points(A, prec);
        REQUIRE(!p1.at_infinity);
        REQUIRE(!p2.at_infinity);
        Real root = sqrt(1 - 4 * r * r);
        CHECK(close(p1.value, (1 - root) / 2, tol()));
        CHECK(close(p2.value, (1 + root) / 2, tol()));
        CHECK(p1.value < p2.value);
    };
    check_r("0.35");
    check_r("0.45");

    // Numeric spot value for r = 0.35.
    Real r("0.35");
    MoebiusMap A(Complex(1 / r), Complex(-r), Complex(1 / r), Complex(Real(0)));
    auto [p1, p2] = fixed_points(A, prec);
    CHECK(close(p1.value, Real("0.1429285786"), Real("1e-9")));
    CHECK(close(p2.value, Real("0.8570714214"), Real("1e-9")));

    // Diagonal map fixes 0 and infinity.
    Real k("4.0");
    MoebiusMap D(Complex(sqrt(k)), Complex(Real(0)), Complex(Real(0)), Complex(1 / sqrt(k)));
    auto [d1, d2] = fixed_points(D, prec);
    CHECK(!d1.at_infinity);
    CHECK(close(d1.value, Real(0), tol()));
    CHECK(d2.at_infinity);

    // Parabolic rejected.
    MoebiusMap P = MoebiusMap::translation(Real(1));
    CHECK_THROWS_AS(fixed_points(P, prec), DomainError);
}

TEST_CASE("fixed points are fixed by the map") {
    ScopedPrecision scope(50);
    Real r("0.4");
    MoebiusMap A(Complex(1 / r), Complex(-r), Complex(1 / r), Complex(Real(0)));
    auto [p1, p2] = fixed_points(A, prec);
    for (const Real& z : {p1.value, p2.value}) {
        Complex im = moebius(A, Complex(z));
        CHECK(close(im.re, z, tol()));
        CHECK(abs(im.im) < tol());
    }
}

TEST_CASE("flare conjugator") {
    ScopedPrecision scope(50);
    Real r("0.35");
    Real root = sqrt(1 - 4 * r * r);
    Real z1 = (1 - root) / 2, z2 = (1 + root) / 2;
    MoebiusMap U = flare_conjugator(z1, z2, r);

    CHECK(abs(moebius(U, Complex(z1))) < tol());
    CHECK(close(moebius(U, Complex(r)).re, Real(1), tol()));

    // Scale constant (r - z2)/(r - z1) for r = 0.35.
    Real c = (r - z2) / (r - z1);
    CHECK(close(c, Real("-2.44877549"), Real("1e-8")));

    // U diagonalizes any hyperbolic map fixing {z1, z2}.
    MoebiusMap A(Complex(1 / r), Complex(-r), Complex(1 / r), Complex(Real(0)));
    MoebiusMap D = U * A * U.inverse();
    CHECK(abs(D.b()) < tol());
    CHECK(abs(D.c()) < tol());

    CHECK_THROWS_AS(flare_conjugator(z1, z2, z2 + 1), DomainError);
}

TEST_CASE("inverse composes to the identity on random points") {
    ScopedPrecision scope(50);
    testutil::Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        Real a = rng.uniform(0.5, 2), b = rng.uniform(-2, 2), c = rng.uniform(-1, 1);
        Real d = (1 + b * c) / a;
        MoebiusMap m{Complex(a), Complex(b), Complex(c), Complex(d)};
        HPoint z(rng.uniform(-2, 2), rng.uniform(0.05, 3));
        HPoint im = apply(m, z, prec);
        CHECK(im.y > 0); // real maps preserve the upper half-plane
        HPoint back = apply(m.inverse(), im, prec);
        CHECK(close(back.x, z.x, pow10(-40)));
        CHECK(close(back.y, z.y, pow10(-40)));
    }
}
