#include "maass/specfun.hpp"

#include <cmath>
#include <map>
#include <mpfr.h>
#include <vector>

namespace maass {

using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::exp;
using boost::multiprecision::floor;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;

namespace {

long iteration_cap(const Precision& prec) { return 100L * prec.digits(); }

// MPFR results inherit operand precision, so working-precision boosts must be
// applied to the inputs explicitly.
Real at_precision(Real v, int digits) {
    v.precision(digits);
    return v;
}

bool is_nonpositive_integer(const Real& x, const Real& tol) {
    if (x > tol) return false;
    return abs(x - floor(x + Real(1) / 2)) < tol;
}

Real pow_ct(const Real& base, const Real& e) { return pow(base, e); }
Real exp_ct(const Real& x) { return exp(x); }
Complex exp_ct(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
Complex log_ct(const Complex& z) { return {log(abs(z)), arg(z)}; }
Complex pow_ct(const Complex& base, const Complex& e) { return exp_ct(e * log_ct(base)); }

// ---- Spouge's gamma approximation -----------------------------------------
//
// Gamma(z) = (z-1+a)^(z-1/2) e^{-(z-1+a)} (c0 + sum_k c_k/(z-1+k)),
// relative error ~ a^{-1/2} (2 pi)^{-(a+1/2)} for Re(z) >= 1/2.

struct SpougeTable {
    int a = 0;
    std::vector<Real> c;
};

const SpougeTable& spouge_table(int digits) {
    static std::map<int, SpougeTable> cache;
    auto it = cache.find(digits);
    if (it != cache.end()) return it->second;

    SpougeTable t;
    t.a = static_cast<int>(std::ceil(digits * 2.302585 / std::log(2 * 3.141592653589793))) + 3;
    ScopedPrecision guard(digits + 15);
    t.c.resize(t.a);
    t.c[0] = sqrt(2 * pi_value());
    Real factorial = 1;
    for (int k = 1; k < t.a; ++k) {
        if (k > 1) factorial *= (k - 1);
        Real ak(t.a - k);
        Real term = pow(ak, Real(k) - Real(1) / 2) * exp(ak) / factorial;
        t.c[k] = (k % 2 == 1) ? term : -term;
    }
    return cache.emplace(digits, std::move(t)).first->second;
}

Complex at_precision(const Complex& v, int digits) {
    return {at_precision(v.re, digits), at_precision(v.im, digits)};
}

template <typename T>
T spouge_positive(const T& z, int digits) {
    const SpougeTable& tab = spouge_table(digits);
    T zm = at_precision(z, digits + 5) - T(Real(1));
    T acc(tab.c[0]);
    for (int k = 1; k < tab.a; ++k) acc += T(tab.c[k]) / (zm + T(Real(k)));
    T za = zm + T(Real(tab.a));
    return pow_ct(za, zm + T(Real(1) / 2)) * exp_ct(-za) * acc;
}

} // namespace

Real gamma_fn(const Real& x, const Precision& prec) {
    Real tol = prec.eps() * 100;
    if (is_nonpositive_integer(x, tol))
        throw DomainError("gamma_fn: pole at nonpositive integer " + to_string(x, 8));
    ScopedPrecision guard(prec.digits() + 15);
    Real xw = at_precision(x, prec.digits() + 15);
    if (xw >= Real(1) / 2) return spouge_positive(xw, prec.digits() + 10);
    Real p = pi_value();
    return p / (sin(p * xw) * spouge_positive(Real(1 - xw), prec.digits() + 10));
}

Complex gamma_complex(const Complex& z, const Precision& prec) {
    if (!(z.re > 0)) throw DomainError("gamma_complex: need Re(z) > 0");
    ScopedPrecision guard(prec.digits() + 15);
    return spouge_positive(at_precision(z, prec.digits() + 15), prec.digits() + 10);
}

Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c, const Real& z,
               const Precision& prec) {
    Real az = abs(z);
    if (!(az < 1)) throw DomainError("hyp2f1: need |z| < 1");
    Real tol = prec.eps() * 100;
    if (abs(c.im) < tol && is_nonpositive_integer(c.re, tol))
        throw DomainError("hyp2f1: c is a nonpositive integer");
    if (az == 0) return Complex(Real(1));

    const int wd = prec.digits() + 15;
    ScopedPrecision guard(wd);
    Complex aw = at_precision(a, wd), bw = at_precision(b, wd), cw = at_precision(c, wd);
    Real zw = at_precision(z, wd);
    Real target = pow10(-(prec.digits() + 5));
    Complex term(Real(1));
    Complex sum(Real(1));
    const long cap = iteration_cap(prec) +
                     static_cast<long>(100 * static_cast<double>(abs(a) + abs(b)));
    for (long k = 0; k < cap; ++k) {
        Real rk(k);
        term = term * (aw + Complex(rk)) * (bw + Complex(rk)) /
               ((cw + Complex(rk)) * Complex(rk + 1)) * Complex(zw);
        sum += term;
        // Exact next-term ratio; tail is geometric once it drops below 1.
        Real r_next = az * abs(aw + Complex(rk + 1)) * abs(bw + Complex(rk + 1)) /
                      (abs(cw + Complex(rk + 1)) * (rk + 2));
        Real r = r_next > az ? r_next : az;
        if (r < 1 && k > 2) {
            Real bound = abs(term) * r / (1 - r);
            if (bound < target * (abs(sum) + 1)) return sum;
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge within the iteration cap");
}

Complex derive_mu(long n, const Real& kappa) {
    if (!(kappa > 1)) throw DomainError("derive_mu: kappa must exceed 1");
    return {-Real(1) / 2, 2 * pi_value() * Real(n) / log(kappa)};
}

namespace {

// Real-valued 2F1(alpha + iT, alpha - iT; c; z): term-by-term real since
// (alpha + iT + k)(alpha - iT + k) = (alpha + k)^2 + T^2.
Real conjugate_pair_2f1(const Real& alpha_in, const Real& T_in, const Real& c_in,
                        const Real& z_in, const Precision& prec) {
    const int wd = prec.digits() + 10;
    Real alpha = at_precision(alpha_in, wd), T = at_precision(T_in, wd);
    Real c = at_precision(c_in, wd), z = at_precision(z_in, wd);
    Real target = pow10(-(prec.digits() + 5));
    Real term = 1, sum = 1;
    Real T2 = T * T;
    Real az = abs(z);
    const long cap = iteration_cap(prec) +
                     static_cast<long>(4 * static_cast<double>(T)) + 64;
    for (long k = 0; k < cap; ++k) {
        Real rk(k);
        term *= ((alpha + rk) * (alpha + rk) + T2) * z / ((c + rk) * (rk + 1));
        sum += term;
        Real r_next = ((alpha + rk + 1) * (alpha + rk + 1) + T2) * az / ((c + rk + 1) * (rk + 2));
        Real r = r_next > az ? r_next : az;
        if (r < 1 && k > 2) {
            Real bound = abs(term) * r / (1 - r);
            if (bound < target * (abs(sum) + 1)) return sum;
        }
    }
    throw ConvergenceError("conjugate_pair_2f1: series did not converge within the cap");
}

} // namespace

Real legendre_P(const Real& nu, long n, const Real& kappa, const Real& x,
                const Precision& prec) {
    if (!(nu >= 0) || !(nu <= Real(1) / 2))
        throw DomainError("legendre_P: order -nu needs nu in [0, 1/2]");
    Real btol = prec.boundary_tol();
    if (!(x > -1 + btol) || !(x < 1 - btol))
        throw BoundaryError("legendre_P: argument within tolerance of +-1");
    if (!(kappa > 1)) throw DomainError("legendre_P: kappa must exceed 1");

    long na = n < 0 ? -n : n; // P is even in n (conjugate degree, real value)
    Real w = (1 - x) / 2;

    // The connection pieces below cancel to ~exp(-T (pi - theta)), so they
    // need that many guard digits. The direct series has positive terms and
    // only costs more iterations as w -> 1; it stays the better deal until
    // the argument is quite close to -1.
    const bool direct = w <= Real("0.94");
    double Td = 2 * 3.14159265358979 * static_cast<double>(na) /
                static_cast<double>(log(kappa));
    double pi_minus_theta = 2 * std::asin(std::sqrt(std::max(0.0, 1.0 - static_cast<double>(w))));
    int cancel_guess = direct ? 0 : static_cast<int>(0.4343 * Td * pi_minus_theta) + 5;

    int extra = 15 + cancel_guess;
    for (int attempt = 0; attempt < 4; ++attempt) {
        ScopedPrecision guard(prec.digits() + extra);
        Precision work(prec.digits() + extra);
        Real nuw = at_precision(nu, prec.digits() + extra);
        Real xw = at_precision(x, prec.digits() + extra);
        Real T = 2 * pi_value() * Real(na) / log(at_precision(kappa, prec.digits() + extra));
        Real pref = pow((1 + xw) / (1 - xw), -nuw / 2) / gamma_fn(1 + nuw, work);

        Real ww = (1 - xw) / 2;
        if (direct)
            return pref * conjugate_pair_2f1(Real(1) / 2, T, 1 + nuw, ww, work);

        // Argument near 1: connect to series at 1 - w (both real, conjugate-pair).
        //   F = G1 2F1(1/2+iT, 1/2-iT; 1-nu; 1-w)
        //     + G2 (1-w)^nu 2F1(nu+1/2+iT, nu+1/2-iT; 1+nu; 1-w)
        //   G1 = Gamma(1+nu) Gamma(nu)  / |Gamma(nu+1/2+iT)|^2
        //   G2 = Gamma(1+nu) Gamma(-nu) / |Gamma(1/2+iT)|^2
        if (nu < pow10(-prec.digits() / 2))
            throw DomainError("legendre_P: connection formula degenerates at nu = 0");
        Real gc = gamma_fn(1 + nuw, work);
        Real p = pi_value();
        Real g_nu = gamma_fn(nuw, work);
        Real gamma_neg_nu = -p / (sin(p * nuw) * nuw * g_nu);
        Complex ga = gamma_complex({nuw + Real(1) / 2, T}, work);
        Complex gb = gamma_complex({Real(1) / 2, T}, work);
        Real G1 = gc * g_nu / norm_sq(ga);
        Real G2 = gc * gamma_neg_nu / norm_sq(gb);
        Real z1 = 1 - ww;
        Real t1 = G1 * conjugate_pair_2f1(Real(1) / 2, T, 1 - nuw, z1, work);
        Real t2 = G2 * pow(z1, nuw) * conjugate_pair_2f1(nuw + Real(1) / 2, T, 1 + nuw, z1, work);
        Real f = t1 + t2;
        Real big = abs(t1) > abs(t2) ? abs(t1) : abs(t2);
        // Retry only if the cancellation ate into the last ~10 guard digits.
        if (big > 0 && abs(f) < big * pow10(-(extra - 10))) {
            extra = 2 * extra + 20;
            continue;
        }
        return pref * f;
    }
    throw ConvergenceError("legendre_P: cancellation persisted across precision retries");
}

std::vector<Real> legendre_P_batch(const Real& nu, int m_max, const Real& kappa,
                                   const Real& x, const Precision& prec) {
    if (m_max < 0) throw DomainError("legendre_P_batch: need m_max >= 0");
    Real w = (1 - x) / 2;
    if (!(w <= Real("0.94"))) {
        // Near the endpoint the connection form is cheap; batch gains little.
        std::vector<Real> out;
        out.reserve(m_max + 1);
        for (int n = 0; n <= m_max; ++n) out.push_back(legendre_P(nu, n, kappa, x, prec));
        return out;
    }
    if (!(nu >= 0) || !(nu <= Real(1) / 2))
        throw DomainError("legendre_P_batch: order -nu needs nu in [0, 1/2]");
    Real btol = prec.boundary_tol();
    if (!(x > -1 + btol) || !(x < 1 - btol))
        throw BoundaryError("legendre_P_batch: argument within tolerance of +-1");
    if (!(kappa > 1)) throw DomainError("legendre_P_batch: kappa must exceed 1");

    const int wd = prec.digits() + 15;
    ScopedPrecision guard(wd);
    Precision work(wd);
    Real nuw = at_precision(nu, wd);
    Real xw = at_precision(x, wd);
    Real z = (1 - xw) / 2;
    Real az = abs(z);
    Real c = 1 + nuw;
    Real pref = pow((1 + xw) / (1 - xw), -nuw / 2) / gamma_fn(1 + nuw, work);
    Real two_pi_over_logk = 2 * pi_value() / log(at_precision(kappa, wd));

    std::vector<Real> T2(m_max + 1), term(m_max + 1, Real(1)), sum(m_max + 1, Real(1));
    std::vector<bool> done(m_max + 1, false);
    for (int n = 0; n <= m_max; ++n) {
        Real t = two_pi_over_logk * n;
        T2[n] = t * t;
    }
    Real target = pow10(-(prec.digits() + 5));
    const long cap = iteration_cap(prec) +
                     static_cast<long>(4 * std::sqrt(static_cast<double>(T2[m_max]))) + 64;
    int remaining = m_max + 1;
    const Real half("0.5");
    for (long k = 0; k < cap && remaining > 0; ++k) {
        Real rk(k);
        Real Ak = (half + rk) * (half + rk);
        Real qk = z / ((c + rk) * (rk + 1));
        Real Ak1 = (half + rk + 1) * (half + rk + 1);
        Real qk1_mag = az / ((c + rk + 1) * (rk + 2));
        for (int n = 0; n <= m_max; ++n) {
            if (done[n]) continue;
            term[n] *= (Ak + T2[n]) * qk;
            sum[n] += term[n];
            Real r_next = (Ak1 + T2[n]) * qk1_mag;
            Real r = r_next > az ? r_next : az;
            if (r < 1 && k > 2) {
                Real bound = abs(term[n]) * r / (1 - r);
                if (bound < target * (abs(sum[n]) + 1)) {
                    done[n] = true;
                    --remaining;
                }
            }
        }
    }
    if (remaining > 0)
        throw ConvergenceError("legendre_P_batch: series did not converge within the cap");
    std::vector<Real> out(m_max + 1);
    for (int n = 0; n <= m_max; ++n) out[n] = pref * sum[n];
    return out;
}

namespace {

Real bessel_k_asymptotic(const Real& nu_in, const Real& x_in, const Precision& prec) {
    ScopedPrecision guard(prec.digits() + 10);
    Real nu = at_precision(nu_in, prec.digits() + 10);
    Real x = at_precision(x_in, prec.digits() + 10);
    Real target = pow10(-(prec.digits() + 5));
    Real fournu2 = 4 * nu * nu;
    Real term = 1, sum = 1;
    long kmax = static_cast<long>(2.5 * static_cast<double>(x)) + 10;
    for (long k = 1; k <= kmax; ++k) {
        Real num = fournu2 - Real(2 * k - 1) * Real(2 * k - 1);
        Real t = term * num / (Real(8) * k * x);
        if (abs(t) >= abs(term) && k > 2) break; // optimal truncation reached
        term = t;
        sum += term;
        if (abs(term) < target * abs(sum)) break;
    }
    Real p = pi_value();
    return sqrt(p / (2 * x)) * exp(-x) * sum;
}

// K = pi (I_{-nu} - I_{nu}) / (2 sin(pi nu)). The I-series cancel to
// ~exp(-2x), so carry that many extra digits; small nu costs a few more.
Real bessel_k_series(const Real& nu_in, const Real& x_in, const Precision& prec) {
    double xd = static_cast<double>(x_in);
    int cancel = static_cast<int>(0.87 * xd) + 10;
    double nud = static_cast<double>(nu_in);
    int small_order = nud < 0.05 ? static_cast<int>(-std::log10(std::max(nud, 1e-300))) + 8 : 0;
    int digits = prec.digits() + cancel + small_order + 10;
    ScopedPrecision guard(digits);
    Precision work(digits);

    Real nu = at_precision(nu_in, digits);
    Real half_x = at_precision(x_in, digits) / 2;
    Real q = half_x * half_x;
    Real cp = 1 / gamma_fn(1 + nu, work), cm = 1 / gamma_fn(1 - nu, work);
    Real sp = cp, sm = cm;
    Real target = pow10(-digits + 5);
    const long cap = iteration_cap(work);
    long k = 1;
    for (; k <= cap; ++k) {
        cp *= q / (Real(k) * (k + nu));
        cm *= q / (Real(k) * (k - nu));
        sp += cp;
        sm += cm;
        if (cm < target * sm && k > 4) break;
    }
    if (k > cap) throw ConvergenceError("bessel_K: series cap exceeded");
    Real p = pi_value();
    Real xp = pow(half_x, nu);
    return p * (sm / xp - xp * sp) / (2 * sin(p * nu));
}

} // namespace

Real bessel_K(const Real& nu, const Real& x, const Precision& prec) {
    if (!(x > 0)) throw DomainError("bessel_K: need x > 0");
    if (!(nu >= 0) || !(nu <= Real(1) / 2))
        throw DomainError("bessel_K: order must lie in [0, 1/2]");
    Real nu_eff = nu;
    if (nu == 0) nu_eff = pow10(-(prec.digits() / 2 + 20)); // K_nu is even in nu; O(nu^2) error
    double split = 1.16 * prec.digits() + 8;
    Real val = (static_cast<double>(x) >= split) ? bessel_k_asymptotic(nu_eff, x, prec)
                                                 : bessel_k_series(nu_eff, x, prec);
    if (!(val > 0)) throw ConvergenceError("bessel_K: lost positivity");
    return val;
}

Complex e_char(const Real& x) {
    Real t = 2 * pi_value() * x;
    return {cos(t), sin(t)};
}

} // namespace maass
