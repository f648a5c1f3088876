#ifndef MAASS_SPECFUN_HPP
#define MAASS_SPECFUN_HPP

#include "maass/complexnum.hpp"
#include "maass/real.hpp"

#include <vector>

namespace maass {

// Spectral parameter bundle: lambda = s(1-s), nu = s - 1/2, kappa the flare width.
struct SpectralParams {
    Real s;
    Real nu;
    Real kappa;

    SpectralParams(Real s_, Real kappa_) : s(std::move(s_)), nu(s - Real(1) / 2), kappa(std::move(kappa_)) {
        if (!(s > Real(1) / 2) || !(s <= 1))
            throw DomainError("SpectralParams: s must lie in (1/2, 1]");
        if (!(kappa > 1)) throw DomainError("SpectralParams: kappa must exceed 1");
    }
    Real lambda() const { return s * (1 - s); }
};

// Gamma function for real argument, Spouge's approximation at working precision.
Real gamma_fn(const Real& x, const Precision& prec);

// Gamma for complex argument with Re > 0 (enough for the hypergeometric
// connection coefficients used here).
Complex gamma_complex(const Complex& z, const Precision& prec);

// Gauss hypergeometric series sum_{k} (a)_k (b)_k / (c)_k z^k / k!, |z| < 1.
// Terms are summed until a geometric tail estimate drops below
// 10^{-(digits+5)} relative to the running sum.
Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c, const Real& z,
               const Precision& prec);

// mu_n = -1/2 + 2 pi i n / log kappa.
Complex derive_mu(long n, const Real& kappa);

// Associated Legendre function of the first kind P^{-nu}_{mu_n}(x) on (-1,1)
// with degree mu_n = -1/2 + 2 pi i n / log kappa. Real by the conjugate
// pairing of the hypergeometric parameters; even in n.
Real legendre_P(const Real& nu, long n, const Real& kappa, const Real& x,
                const Precision& prec);

// All of P^{-nu}_{mu_0..mu_m}(x) in one pass; the series share their
// k-dependent factors across degrees, which is much cheaper than m+1
// independent evaluations.
std::vector<Real> legendre_P_batch(const Real& nu, int m_max, const Real& kappa,
                                   const Real& x, const Precision& prec);

// Modified Bessel function of the second kind, real order nu in [0, 1/2],
// x > 0. Power series in terms of I_{+-nu} below the crossover argument,
// the asymptotic expansion above it.
Real bessel_K(const Real& nu, const Real& x, const Precision& prec);

// e(x) = exp(2 pi i x).
Complex e_char(const Real& x);

} // namespace maass

#endif
