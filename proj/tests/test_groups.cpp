#include <doctest.h>

#include "maass/groups.hpp"
#include "testutil.hpp"

using namespace maass;
using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;
using boost::multiprecision::tan;
using testutil::close;
using testutil::close_rel;

namespace {
const Precision prec(50);
Real tol() { return pow10(-40); }

Real disk_distance_to_origin(const Complex& w) {
    // Hyperbolic distance in the disk model, as the monotone surrogate
    // 2|w| / (1 - |w|^2) (equals sinh of the distance).
    Real a = abs(w);
    return 2 * a / (1 - a * a);
}
} // namespace

TEST_CASE("hecke group construction") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.35"), prec);
    CHECK(close_rel(g.kappa(), Real("5.99650139940524489714261216790500623623109"), pow10(-40)));
    Real sk = sqrt(g.kappa());
    CHECK(close(sk + 1 / sk, 1 / Real("0.35"), tol()));

    HeckeGroup g45(Real("0.45"), prec);
    CHECK(close(g45.z2(), (1 + sqrt(Real("0.19"))) / 2, tol()));

    CHECK_THROWS_AS(HeckeGroup(Real("0.5"), prec), DomainError);
    CHECK_THROWS_AS(HeckeGroup(Real(0), prec), DomainError);
    CHECK_THROWS_AS(HeckeGroup(Real("0.7"), prec), DomainError);
}

TEST_CASE("hecke conjugator diagonalizes the flare matrix") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.4"), prec);
    MoebiusMap D = g.conjugator() * g.flare_matrix() * g.conjugator().inverse();
    CHECK(abs(D.b()) < tol());
    CHECK(abs(D.c()) < tol());
    Real sk = sqrt(g.kappa());
    CHECK(close(abs(D.a()), sk, tol()));
    CHECK(close(abs(D.d()), 1 / sk, tol()));
}

TEST_CASE("hecke pullback") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.35"), prec);

    HPullback inside = g.pullback(HPoint(Real("0.3"), Real(2)));
    CHECK(inside.word_length == 0);
    CHECK(close(inside.point.x, Real("0.3"), tol()));

    // 0.1 + 0.05i inverts to -0.98 + 0.49i, then translates to 0.02 + 0.49i.
    HPullback moved = g.pullback(HPoint(Real("0.1"), Real("0.05")));
    CHECK(close(moved.point.x, Real("0.02"), tol()));
    CHECK(close(moved.point.y, Real("0.49"), tol()));
    CHECK(moved.word_length > 0);
    CHECK(g.in_fundamental_domain(moved.point));

    // The imaginary part never decreases.
    testutil::Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        HPoint z(rng.uniform(-3, 3), rng.uniform(0.001, 2.0));
        HPullback pb = g.pullback(z);
        CHECK(pb.point.y >= z.y - pow10(-45));
        CHECK(g.in_fundamental_domain(pb.point));
    }
}

TEST_CASE("hecke pullback idempotence and orbit consistency") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.35"), prec);
    testutil::Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        HPoint z(rng.uniform(-2, 2), rng.uniform(0.02, 1.5));
        HPullback pb = g.pullback(z);
        CHECK(g.pullback(pb.point).word_length == 0);

        // Apply a random word of length <= 6 and pull back again.
        MoebiusMap w = MoebiusMap::identity();
        int len = rng.uniform_int(1, 6);
        for (int k = 0; k < len; ++k) {
            int pick = rng.uniform_int(0, 2);
            if (pick == 0) w = w * g.gen_T();
            else if (pick == 1) w = w * g.gen_T().inverse();
            else w = w * g.gen_S();
        }
        HPoint moved = apply(w, pb.point, prec);
        HPullback back = g.pullback(moved);
        CHECK(close(back.point.x, pb.point.x, pow10(-35)));
        CHECK(close(back.point.y, pb.point.y, pow10(-35)));
    }
}

TEST_CASE("hecke reflection symmetry of the generators") {
    ScopedPrecision scope(50);
    // Conjugation by z -> -conj(z) sends a real matrix [[a,b],[c,d]] to
    // [[a,-b],[-c,d]]; T maps to T^{-1} and S to S up to sign.
    HeckeGroup g(Real("0.3"), prec);
    auto mirror = [](const MoebiusMap& m) {
        return MoebiusMap(m.a(), -m.b(), -m.c(), m.d());
    };
    CHECK(mirror(g.gen_T()).same_map(g.gen_T().inverse(), tol()));
    CHECK(mirror(g.gen_S()).same_map(g.gen_S(), tol()));
}

TEST_CASE("hecke flare cutoff angle") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.35"), prec);
    Real p = pi_value();
    CHECK(close(g.flare_cutoff_angle(Real("1e-30")), p / 2, pow10(-25)));
    Real hstar = sqrt(Real(1) / 4 - Real("0.35") * Real("0.35"));
    CHECK(close(g.flare_cutoff_angle(hstar), p / 4, tol()));
    Real expected = p / 2 - boost::multiprecision::atan(Real("0.2") / hstar);
    CHECK(close(g.flare_cutoff_angle(Real("0.2")), expected, tol()));
    CHECK_THROWS_AS(g.flare_cutoff_angle(Real(0)), DomainError);

    // Decreasing in h.
    CHECK(g.flare_cutoff_angle(Real("0.1")) > g.flare_cutoff_angle(Real("0.2")));
}

TEST_CASE("hecke fundamental domain membership") {
    ScopedPrecision scope(50);
    HeckeGroup g(Real("0.35"), prec);
    CHECK(g.in_fundamental_domain(HPoint(Real("0.5"), Real(5))));
    CHECK(!g.in_fundamental_domain(HPoint(Real("0.1"), Real("0.05"))));
    CHECK(!g.in_fundamental_domain(HPoint(Real("-0.2"), Real(1))));
}

TEST_CASE("schottky cover construction at theta = pi/2") {
    ScopedPrecision scope(50);
    Real p = pi_value();
    SchottkyCover g(p / 2, prec);

    // Half-plane pairing generator [[0, cot(pi/8)], [-tan(pi/8), 0]].
    Real c8 = cos(p / 8) / sin(p / 8);
    const MoebiusMap& m = g.half_plane_pairing();
    CHECK(abs(m.a()) < tol());
    CHECK(close(m.b().re, c8, tol()));
    CHECK(close(m.c().re, -1 / c8, tol()));
    CHECK(abs(m.d()) < tol());

    // Disk rotation has entries e^{+- i pi/3}.
    const MoebiusMap& r = g.disk_rotation();
    CHECK(close(r.a().re, cos(p / 3), tol()));
    CHECK(close(r.a().im, sin(p / 3), tol()));
    CHECK(close(r.d().re, cos(p / 3), tol()));
    CHECK(close(r.d().im, -sin(p / 3), tol()));

    // Flare matrix in the half-plane: (1/2) [[-sqrt3 t, 1/t], [-t, -sqrt3/t]].
    Real t = tan(p / 8);
    const MoebiusMap& f = g.flare_matrix();
    CHECK(close(f.a().re, -sqrt(Real(3)) * t / 2, tol()));
    CHECK(close(f.b().re, 1 / (2 * t), tol()));
    CHECK(close(f.c().re, -t / 2, tol()));
    CHECK(close(f.d().re, -sqrt(Real(3)) / (2 * t), tol()));

    // kappa = 2 + sqrt 3 at this angle (trace sqrt 6).
    CHECK(close_rel(g.kappa(), 2 + sqrt(Real(3)), pow10(-40)));
}

TEST_CASE("schottky generators have unit determinant at random angles") {
    ScopedPrecision scope(50);
    testutil::Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        Real theta = rng.uniform(0.2, 2.05);
        SchottkyCover g(theta, prec);
        for (const MoebiusMap* m : {&g.disk_rotation(), &g.disk_pairing(), &g.flare_matrix(),
                                    &g.half_plane_rotation(), &g.half_plane_pairing()}) {
            Complex det = m->a() * m->d() - m->b() * m->c();
            CHECK(close(det.re, Real(1), tol()));
            CHECK(abs(det.im) < tol());
        }
        // U conjugates the flare matrix to a diagonal with entries sqrt(kappa)^{+-1}.
        MoebiusMap D = g.conjugator() * g.flare_matrix() * g.conjugator().inverse();
        CHECK(abs(D.b()) < tol());
        CHECK(abs(D.c()) < tol());
        CHECK(close_rel(abs(D.a()), sqrt(g.kappa()), pow10(-38)));
    }
    CHECK_THROWS_AS(SchottkyCover(2 * pi_value() / 3, prec), DomainError);
    CHECK_THROWS_AS(SchottkyCover(Real(0), prec), DomainError);
}

TEST_CASE("schottky pullback to the circle exterior") {
    ScopedPrecision scope(50);
    Real p = pi_value();
    SchottkyCover g(94 * p / 180, prec);

    DPullback center = g.pullback(DPoint(Complex(Real(0))));
    CHECK(center.word_length == 0);
    CHECK(abs(center.point.w) < tol());

    // One reflection moves a point inside circle R to its exterior.
    Complex inside = g.circle_center(0) - Complex(g.circle_radius() / 2);
    DPullback once = g.pullback(DPoint(inside));
    CHECK(once.word_length >= 1);
    CHECK(g.in_fundamental_domain(once.point));

    // Reflection is an involution.
    Complex refl = g.reflect_circle(0, inside);
    CHECK(close(g.reflect_circle(0, refl).re, inside.re, tol()));
    CHECK(close(g.reflect_circle(0, refl).im, inside.im, tol()));

    // Each reflection strictly decreases the hyperbolic distance to 0.
    testutil::Rng rng(13);
    int tested = 0;
    for (int i = 0; i < 1000 && tested < 400; ++i) {
        Real a = rng.uniform(-0.97, 0.97), b = rng.uniform(-0.97, 0.97);
        if (a * a + b * b >= Real("0.94")) continue;
        Complex w{a, b};
        bool inside_any = false;
        for (int k = 0; k < 3; ++k)
            if (abs(w - g.circle_center(k)) < g.circle_radius()) inside_any = true;
        if (!inside_any) continue;
        ++tested;
        Real before = disk_distance_to_origin(w);
        Complex cur = w;
        for (int step = 0; step < 200; ++step) {
            bool moved = false;
            for (int k = 0; k < 3; ++k) {
                if (abs(cur - g.circle_center(k)) < g.circle_radius()) {
                    cur = g.reflect_circle(k, cur);
                    Real after = disk_distance_to_origin(cur);
                    CHECK(after < before);
                    before = after;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("schottky cover pullback lands in the wedge domain") {
    ScopedPrecision scope(50);
    Real p = pi_value();
    SchottkyCover g(Real(100) * p / 180, prec);
    testutil::Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        Real a = rng.uniform(-0.9, 0.9), b = rng.uniform(-0.9, 0.9);
        if (a * a + b * b >= Real("0.85")) continue;
        DPullback pb = g.pullback_cover(DPoint(Complex(a, b)));
        CHECK(g.in_fundamental_domain_cover(pb.point));
        // Idempotent.
        CHECK(g.pullback_cover(pb.point).word_length == 0);
    }
}

TEST_CASE("schottky orbit consistency under even reflection words") {
    ScopedPrecision scope(50);
    Real p = pi_value();
    SchottkyCover g(94 * p / 180, prec);
    testutil::Rng rng(19);
    for (int i = 0; i < 40; ++i) {
        Real a = rng.uniform(-0.8, 0.8), b = rng.uniform(-0.8, 0.8);
        if (a * a + b * b >= Real("0.8")) continue;
        DPullback base = g.pullback(DPoint(Complex(a, b)));
        // Random reduced word of reflections, length <= 6.
        Complex w = base.point.w;
        int last = -1;
        int len = rng.uniform_int(1, 6);
        for (int k = 0; k < len; ++k) {
            int pick = rng.uniform_int(0, 2);
            if (pick == last) pick = (pick + 1) % 3;
            w = g.reflect_circle(pick, w);
            last = pick;
        }
        DPullback again = g.pullback(DPoint(w));
        CHECK(close(again.point.w.re, base.point.w.re, pow10(-35)));
        CHECK(close(again.point.w.im, base.point.w.im, pow10(-35)));
    }
}

TEST_CASE("schottky flare coordinate round trip") {
    ScopedPrecision scope(50);
    Real p = pi_value();
    SchottkyCover g(Real(110) * p / 180, prec);
    testutil::Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        PolarPoint fp(rng.uniform(1.01, 1.35), rng.uniform(0.3, 2.8));
        HPoint z = g.from_flare_coords(fp);
        PolarPoint back = g.flare_coords(z);
        CHECK(close(back.r, fp.r, pow10(-38)));
        CHECK(close(back.theta, fp.theta, pow10(-38)));
    }
}
