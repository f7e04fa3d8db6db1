#include "heckesign/sign_intervals.hpp"

#include <cmath>
#include <stdexcept>

namespace heckesign {

double chebyshev_U(unsigned n, double theta) {
    if (!(theta >= 0.0) || !(theta <= kPi + 1e-15))
        throw std::invalid_argument("chebyshev_U: theta must lie in [0, pi]");
    const long double t = theta;
    const long double s = sinl(t);
    if (s == 0.0L) {
        // theta == 0 exactly (double pi is not a zero of sinl)
        return theta < kPi / 2 ? (double)(n + 1)
                               : (n % 2 == 0 ? (double)(n + 1) : -(double)(n + 1));
    }
    return (double)(sinl((n + 1) * t) / s);
}

unsigned a_exponent(const PrimePower& m, std::uint64_t p) {
    if (p == m.q) throw std::domain_error("a_exponent: p must differ from the base of m");
    if (!is_prime(p)) throw std::invalid_argument("a_exponent: p must be prime");
    // exact integer powering, no floating logarithms
    unsigned a = 0;
    unsigned __int128 pw = 1;
    while (pw * p < m.value) {
        pw *= p;
        ++a;
    }
    return a;
}

AngleInterval first_negative_interval(unsigned n) {
    if (n < 1) throw std::invalid_argument("first_negative_interval: n must be >= 1");
    return AngleInterval(kPi / (n + 1), kPi / n);
}

AngleInterval nonnegative_interval(unsigned a) {
    if (a < 1) throw std::invalid_argument("nonnegative_interval: a must be >= 1");
    return AngleInterval(0.0, kPi / (a + 1));
}

ConstraintSystem constraint_system(const PrimePower& m) {
    if (m.value < 2) throw std::invalid_argument("constraint_system: target must be >= 2");
    ConstraintSystem cs{m, {}};
    for (std::uint64_t p : primes_up_to(m.value)) {
        if (p == m.q)
            cs.constraints.emplace_back(p, first_negative_interval(m.n));
        else
            cs.constraints.emplace_back(p, nonnegative_interval(a_exponent(m, p)));
    }
    return cs;
}

std::array<double, 3> amplifier_poly(int sign) {
    if (sign == 1) return {-0.75, 0.5, 0.25};
    if (sign == -1) return {-0.75, -0.5, 0.25}; // X-coefficients of F(pi - theta)
    throw std::invalid_argument("amplifier_poly: sign must be +1 or -1");
}

double amplifier_eval(const std::array<double, 3>& alpha, double theta) {
    return alpha[0] * chebyshev_U(0, theta) + alpha[1] * chebyshev_U(1, theta) +
           alpha[2] * chebyshev_U(2, theta);
}

} // namespace heckesign
