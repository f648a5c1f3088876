#include "maass/expansions.hpp"

namespace maass {

using boost::multiprecision::cos;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;

Real cusp_basis(long n, const Real& s, const Real& y, const Precision& prec) {
    if (!(y > 0)) throw DomainError("cusp_basis: need y > 0");
    if (n == 0) return pow(y, 1 - s);
    Real nu = s - Real(1) / 2;
    return sqrt(y) * bessel_K(nu, 2 * pi_value() * Real(n) * y, prec);
}

Real flare_basis(long n, const Real& s, const Real& kappa, const Real& theta,
                 const Precision& prec) {
    if (!(theta > 0) || !(theta < pi_value()))
        throw DomainError("flare_basis: theta must lie in (0, pi)");
    Real nu = s - Real(1) / 2;
    return sqrt(sin(theta)) * legendre_P(nu, n, kappa, cos(theta), prec);
}

Real eval_cusp(const CuspExpansion& e, const HPoint& z, const Precision& prec) {
    if (!e.folded) throw ConfigError("eval_cusp: only folded expansions are evaluated");
    Real two_pi = 2 * pi_value();
    Real sum = 0;
    for (long n = 0; n < static_cast<long>(e.coeffs.size()); ++n) {
        if (e.coeffs[n] == 0) continue;
        Real v = cusp_basis(n, e.s, z.y, prec);
        if (n > 0) v *= cos(two_pi * Real(n) * z.x);
        sum += e.coeffs[n] * v;
    }
    return sum;
}

Real eval_flare(const FlareExpansion& e, const PolarPoint& p, const Precision& prec) {
    if (!e.folded) throw ConfigError("eval_flare: only folded expansions are evaluated");
    if (e.coeffs.empty()) return Real(0);
    Real two_pi = 2 * pi_value();
    Real u = log(p.r) / log(e.kappa);
    std::vector<Real> basis =
        flare_basis_column(e.s, e.kappa, p.theta, static_cast<int>(e.coeffs.size()) - 1, prec);
    Real sum = 0;
    for (long n = 0; n < static_cast<long>(e.coeffs.size()); ++n) {
        if (e.coeffs[n] == 0) continue;
        Real v = basis[n];
        if (n > 0) v *= cos(two_pi * Real(n) * u);
        sum += e.coeffs[n] * v;
    }
    return sum;
}

std::vector<Real> flare_basis_column(const Real& s, const Real& kappa, const Real& theta,
                                     int m_max, const Precision& prec) {
    if (!(theta > 0) || !(theta < pi_value()))
        throw DomainError("flare_basis_column: theta must lie in (0, pi)");
    Real nu = s - Real(1) / 2;
    Real root = sqrt(sin(theta));
    std::vector<Real> out = legendre_P_batch(nu, m_max, kappa, cos(theta), prec);
    for (Real& v : out) v *= root;
    return out;
}

Real scale_factor(ExpansionKind kind, long n, const Real& s, const Real& kappa,
                  const Real& alpha) {
    if (n < 0) throw DomainError("scale_factor: need n >= 0");
    if (n == 0) return Real(1);
    Real rn(n);
    if (kind == ExpansionKind::Cusp) return pow(rn, s - Real(1) / 2);
    return pow(rn, s) * exp(-pi_value() * rn * alpha / log(kappa));
}

namespace {
int envelope_order(const Real& target_eps, const Real& rate, const Real& expnt, int max_m,
                   const char* who) {
    if (!(target_eps > 0) || !(target_eps < 1))
        throw DomainError(std::string(who) + ": target_eps must lie in (0, 1)");
    for (int m = 1; m <= max_m; ++m) {
        Real env = pow(Real(m), expnt) * exp(-rate * m);
        if (env < target_eps) return m;
    }
    throw ConfigError(std::string(who) + ": truncation cap reached; loosen the tolerance");
}
} // namespace

int truncation_order(ExpansionKind kind, const Real& target_eps, const Real& y0_or_alpha0,
                     const Real& kappa, const Real& s, int max_m) {
    if (kind == ExpansionKind::Cusp) {
        Real rate = 2 * pi_value() * y0_or_alpha0;
        return envelope_order(target_eps, rate, s - Real(1) / 2, max_m, "truncation_order");
    }
    Real rate = pi_value() * y0_or_alpha0 / log(kappa);
    return envelope_order(target_eps, rate, s, max_m, "truncation_order");
}

int flare_entry_truncation(const Real& target_eps, const Real& alpha0, const Real& kappa,
                           const Real& s, int max_m) {
    Real p = pi_value();
    Real rate = 2 * p * (p - alpha0) / log(kappa);
    return envelope_order(target_eps, rate, s, max_m, "flare_entry_truncation");
}

} // namespace maass
