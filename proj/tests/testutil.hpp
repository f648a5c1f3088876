#ifndef MAASS_TESTUTIL_HPP
#define MAASS_TESTUTIL_HPP

#include <doctest.h>
#include <random>

#include "maass/real.hpp"

namespace testutil {

using maass::Real;

// Deterministic uniform draws mapped into Real; precision of the draw itself
// is immaterial for property tests.
class Rng {
public:
    explicit Rng(unsigned seed) : eng_(seed) {}
    Real uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return Real(d(eng_));
    }
    int uniform_int(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }

private:
    std::mt19937 eng_;
};

inline bool close(const Real& a, const Real& b, const Real& tol) {
    using boost::multiprecision::abs;
    return abs(a - b) <= tol;
}

inline bool close_rel(const Real& a, const Real& b, const Real& tol) {
    using boost::multiprecision::abs;
    Real scale = abs(b) > 1 ? abs(b) : Real(1);
    return abs(a - b) <= tol * scale;
}

} // namespace testutil

#endif
