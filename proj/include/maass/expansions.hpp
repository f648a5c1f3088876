#ifndef MAASS_EXPANSIONS_HPP
#define MAASS_EXPANSIONS_HPP

#include <vector>

#include "maass/geometry.hpp"
#include "maass/specfun.hpp"

namespace maass {

enum class ExpansionKind { Cusp, Flare };

// Truncated cuspidal expansion, folded real form:
//   f(x+iy) = a_0 y^{1-s} + sum_{n>=1} a_n sqrt(y) K_{s-1/2}(2 pi n y) cos(2 pi n x)
struct CuspExpansion {
    Real s;
    std::vector<Real> coeffs; // a_0 .. a_{M_C}
    bool folded = true;
};

// Truncated flare expansion, folded real form:
//   f(r,theta) = b_0 sqrt(sin th) P^{-nu}_{-1/2}(cos th)
//              + sum_{n>=1} b_n sqrt(sin th) P^{-nu}_{mu_n}(cos th) cos(2 pi n log r / log kappa)
struct FlareExpansion {
    Real s;
    Real kappa;
    std::vector<Real> coeffs; // b_0 .. b_{M_F}
    bool folded = true;
};

// W_n(y): y^{1-s} for n = 0, sqrt(y) K_{s-1/2}(2 pi n y) for n >= 1.
Real cusp_basis(long n, const Real& s, const Real& y, const Precision& prec);

// sqrt(sin theta) P^{-nu}_{mu_n}(cos theta), nu = s - 1/2.
Real flare_basis(long n, const Real& s, const Real& kappa, const Real& theta,
                 const Precision& prec);

// flare_basis for all n = 0..m_max at once (batched series).
std::vector<Real> flare_basis_column(const Real& s, const Real& kappa, const Real& theta,
                                     int m_max, const Precision& prec);

Real eval_cusp(const CuspExpansion& e, const HPoint& z, const Precision& prec);
Real eval_flare(const FlareExpansion& e, const PolarPoint& p, const Precision& prec);

// Column scale for coefficient n: the expected coefficient magnitude, so the
// scaled unknowns stay O(1). Cusp columns use n^{s-1/2}; flare columns use
// n^s e^{-pi n alpha / log kappa}. n = 0 is the normalization anchor, scale 1.
Real scale_factor(ExpansionKind kind, long n, const Real& s, const Real& kappa,
                  const Real& alpha);

// Smallest M >= 1 whose coefficient-bound envelope drops below target_eps at
// the admissibility boundary: cusp n^{s-1/2} e^{-2 pi n y0}, flare
// n^s e^{-pi n alpha0 / log kappa}. Throws ConfigError at the cap.
int truncation_order(ExpansionKind kind, const Real& target_eps, const Real& y0_or_alpha0,
                     const Real& kappa, const Real& s, int max_m = 2000);

// Smallest M >= 1 with the flare matrix-entry envelope n^s e^{-2 pi n (pi - alpha0)/log kappa}
// below target_eps; governs truncation when the admissible cone is wide.
int flare_entry_truncation(const Real& target_eps, const Real& alpha0, const Real& kappa,
                           const Real& s, int max_m = 2000);

} // namespace maass

#endif
