#include <doctest.h>

#include "maass/expansions.hpp"
#include "testutil.hpp"

using namespace maass;
using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;
using testutil::close;
using testutil::close_rel;

namespace {
const Precision prec(50);
Real tol() { return pow10(-44); }
} // namespace

TEST_CASE("cusp basis") {
    ScopedPrecision scope(50);
    // s = 1 kills the zero-mode exponent.
    CHECK(close(cusp_basis(0, Real(1), Real(4), prec), Real(1), tol()));

    // Zero mode at the tabulated r = 0.35 spectral parameter.
    Real s("0.767052417");
    CHECK(close_rel(cusp_basis(0, s, Real(2), prec), pow(Real(2), 1 - s), tol()));

    // n = 1 at y = 1 is K_nu(2 pi).
    Real got = cusp_basis(1, s, Real(1), prec);
    Real want = bessel_K(s - Real(1) / 2, 2 * pi_value(), prec);
    CHECK(close_rel(got, want, tol()));
    CHECK(got > 0);
}

TEST_CASE("flare basis") {
    ScopedPrecision scope(50);
    // Reference value computed independently at higher precision:
    // n = 2, s and kappa for the 94-degree cover, theta = 1.
    Real s94("0.5063972405");
    Real kappa94("3.3063002913093972984994448088656235712901779030423");
    Real v = flare_basis(2, s94, kappa94, Real(1), prec);
    CHECK(close_rel(v, Real("4477.9454055610257471530653332535664884376625149045"), pow10(-44)));

    // Identical for +-n.
    Real vm = flare_basis(-2, s94, kappa94, Real(1), prec);
    CHECK(v == vm);

    // s = 1/2 boundary behavior: with nu -> 0 the Legendre factor tends to 1
    // as theta -> 0, so the basis approaches sqrt(sin theta). Use a small s
    // offset since s = 1/2 itself is outside the spectral range.
    Real s_lo = Real(1) / 2 + Real("1e-12");
    Real th("0.001");
    CHECK(close_rel(flare_basis(0, s_lo, Real(4), th, prec), sqrt(sin(th)), Real("1e-3")));
}

TEST_CASE("flare basis growth profile in n") {
    ScopedPrecision scope(50);
    // At fixed theta the basis magnitude grows near-geometrically with rate
    // exp(2 pi theta / log kappa) per index; the decaying coefficient bound
    // wins only after multiplying by the coefficient envelope.
    Real s("0.6"), kappa("3.31"), theta("1.2");
    Real rate = exp(2 * pi_value() * theta / log(kappa));
    Real prev = flare_basis(1, s, kappa, theta, prec);
    for (long n = 2; n <= 8; ++n) {
        Real cur = flare_basis(n, s, kappa, theta, prec);
        Real ratio = cur / prev;
        CHECK(ratio > rate / 3);
        CHECK(ratio < rate * 3);
        prev = cur;
    }
}

TEST_CASE("eval_cusp") {
    ScopedPrecision scope(50);
    CuspExpansion zero{Real("0.8"), {Real(0), Real(0), Real(0)}, true};
    CHECK(close(eval_cusp(zero, HPoint(Real("0.3"), Real("0.9")), prec), Real(0), tol()));

    CuspExpansion c1{Real(1), {Real(1), Real(0)}, true};
    CHECK(close(eval_cusp(c1, HPoint(Real("0.123"), Real("2.5")), prec), Real(1), tol()));

    // Periodicity in x.
    testutil::Rng rng(3);
    CuspExpansion e{Real("0.75"), {}, true};
    for (int n = 0; n <= 6; ++n) e.coeffs.push_back(rng.uniform(-1, 1));
    HPoint z(Real("0.37"), Real("0.8"));
    HPoint zp(z.x + 1, z.y);
    CHECK(close(eval_cusp(e, z, prec), eval_cusp(e, zp, prec), pow10(-44)));

    // Evenness in x (cosine folding).
    HPoint zm(-z.x, z.y);
    CHECK(close(eval_cusp(e, z, prec), eval_cusp(e, zm, prec), pow10(-44)));
}

TEST_CASE("eval_flare symmetries") {
    ScopedPrecision scope(50);
    Real kappa("5.9965");
    testutil::Rng rng(9);
    FlareExpansion e{Real("0.767052417"), kappa, {}, true};
    for (int n = 0; n <= 5; ++n) e.coeffs.push_back(rng.uniform(-1, 1) * pow(Real(10), -2 * n));

    for (int i = 0; i < 10; ++i) {
        PolarPoint p(rng.uniform(1.05, 2.2), rng.uniform(0.2, 1.4));
        Real v = eval_flare(e, p, prec);
        // Log-periodicity r -> kappa r.
        Real vp = eval_flare(e, PolarPoint(kappa * p.r, p.theta), prec);
        CHECK(close_rel(v, vp, pow10(-40)));
        // Fold symmetry r -> kappa / r.
        Real vf = eval_flare(e, PolarPoint(kappa / p.r, p.theta), prec);
        CHECK(close_rel(v, vf, pow10(-40)));
    }

    // b_0 alone has no radial dependence.
    FlareExpansion b0{Real("0.767052417"), kappa, {Real(1)}, true};
    Real w1 = eval_flare(b0, PolarPoint(Real("1.3"), Real("0.9")), prec);
    Real w2 = eval_flare(b0, PolarPoint(Real("2.1"), Real("0.9")), prec);
    CHECK(close_rel(w1, w2, pow10(-44)));
    Real direct = sqrt(sin(Real("0.9"))) *
                  legendre_P(Real("0.267052417"), 0, kappa, cos(Real("0.9")), prec);
    CHECK(close_rel(w1, direct, pow10(-44)));
}

TEST_CASE("scale factors") {
    ScopedPrecision scope(50);
    Real s("0.8"), kappa("4.0"), alpha = log(kappa);
    CHECK(close(scale_factor(ExpansionKind::Cusp, 0, s, kappa, alpha), Real(1), tol()));
    CHECK(close(scale_factor(ExpansionKind::Flare, 0, s, kappa, alpha), Real(1), tol()));

    // Flare n = 1 with alpha = log kappa: exactly e^{-pi}.
    Real f1 = scale_factor(ExpansionKind::Flare, 1, s, kappa, alpha);
    CHECK(close_rel(f1, exp(-pi_value()), tol()));

    // Cusp scale follows n^{s - 1/2}.
    CHECK(close_rel(scale_factor(ExpansionKind::Cusp, 4, s, kappa, alpha),
                    pow(Real(4), s - Real(1) / 2), tol()));

    // Asymptotic ratio of consecutive flare scales.
    Real r9 = scale_factor(ExpansionKind::Flare, 10, s, kappa, alpha) /
              scale_factor(ExpansionKind::Flare, 9, s, kappa, alpha);
    CHECK(close_rel(r9, exp(-pi_value() * alpha / log(kappa)) * pow(Real(10) / 9, s), tol()));
}

TEST_CASE("truncation orders") {
    ScopedPrecision scope(50);
    Real s("0.767052417"), kappa("5.99650139940524489714261216790500623623109");

    // Vacuous tolerance keeps the minimum order.
    CHECK(truncation_order(ExpansionKind::Flare, Real("0.99"), Real(1), kappa, s) == 1);

    // Regression values for the r = 0.35 defaults with eps = 1e-15 and the
    // h = 0.2 cutoff angle.
    Real alpha0("1.0602227214886926422483755978078492949364559160848");
    CHECK(truncation_order(ExpansionKind::Flare, Real("1e-15"), alpha0, kappa, s) == 20);
    CHECK(truncation_order(ExpansionKind::Cusp, Real("1e-15"), Real("0.28"), kappa, s) == 21);

    // Halving alpha0 roughly doubles the flare order.
    int m1 = truncation_order(ExpansionKind::Flare, Real("1e-20"), Real("1.2"), kappa, s);
    int m2 = truncation_order(ExpansionKind::Flare, Real("1e-20"), Real("0.6"), kappa, s);
    CHECK(m2 >= 2 * m1 - 2);
    CHECK(m2 <= 2 * m1 + 6);

    CHECK_THROWS_AS(truncation_order(ExpansionKind::Flare, Real("1e-15"), Real("0.001"),
                                     kappa, s, 50),
                    ConfigError);
    CHECK_THROWS_AS(truncation_order(ExpansionKind::Flare, Real(2), Real(1), kappa, s),
                    DomainError);
}

TEST_CASE("entry-rule truncation tracks the wide-cone tail") {
    ScopedPrecision scope(50);
    // For wide admissible cones the matrix-entry tail decays like
    // exp(-2 pi (pi - alpha0) n / log kappa), which is far slower than the
    // coefficient envelope when log kappa is small.
    Real s("0.7"), kappa("1.9609");
    int m_entry = flare_entry_truncation(Real("1e-20"), Real("2.86"), kappa, s);
    int m_env = truncation_order(ExpansionKind::Flare, Real("1e-20"), Real("2.86"), kappa, s);
    CHECK(m_entry > m_env);
    CHECK(m_entry >= 15);
}
