#include "maass/real.hpp"

#include <mpfr.h>
#include <sstream>

namespace maass {

Real Precision::boundary_tol() const { return pow10(-digits_ / 2); }
Real Precision::eps() const { return pow10(-digits_); }

Real pi_value() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real pow10(int e) {
    Real r;
    mpfr_set_si(r.backend().data(), 10, MPFR_RNDN);
    mpfr_pow_si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
    return r;
}

std::string to_string(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace maass
