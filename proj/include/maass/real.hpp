#ifndef MAASS_REAL_HPP
#define MAASS_REAL_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "maass/errors.hpp"

namespace maass {

// Arbitrary-precision real. Expression templates are off so the type plays
// nicely with Eigen and behaves like a plain value type.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

// Working precision in significant decimal digits.
class Precision {
public:
    explicit Precision(int digits) : digits_(digits) {
        if (digits < 15) throw DomainError("Precision: need at least 15 digits");
    }
    int digits() const { return digits_; }

    // 10^(-digits/2), the tolerance for boundary and membership tests.
    Real boundary_tol() const;
    // 10^(-digits), one unit in the last place of the working precision.
    Real eps() const;

private:
    int digits_;
};

// Sets the thread's default precision on construction, restores on destruction.
// Values created inside the scope carry the scoped precision.
class ScopedPrecision {
public:
    explicit ScopedPrecision(int digits)
        : saved_(static_cast<int>(Real::default_precision())) {
        Real::default_precision(static_cast<unsigned>(digits));
    }
    ~ScopedPrecision() { Real::default_precision(static_cast<unsigned>(saved_)); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    int saved_;
};

// pi at the current default precision (mpfr_const_pi under the hood).
Real pi_value();

Real pow10(int e);

std::string to_string(const Real& x, int digits);

} // namespace maass

#endif
