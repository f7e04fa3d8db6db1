// The Sato-Tate measure and the p-adic Plancherel measures on [0, pi]:
// closed-form interval masses, an independent quadrature oracle, and the
// Chebyshev moments <X_m, mu_p>.
//
// Densities (d theta):
//   mu_ST = (2/pi) sin^2(theta)
//   mu_p  = (2/pi)(1 + 1/p) sin^2(theta) / ((1 - 1/p)^2 + (4/p) sin^2(theta))
//
// The half-Dirac measures at primes dividing the level are intentionally
// absent: all empirics in this project live at level 1.
#pragma once

#include <cstdint>

#include "heckesign/common.hpp"

namespace heckesign {

/// Closed subinterval of [0, pi].  The constructor validates the bounds.
struct AngleInterval {
    double lo;
    double hi;
    AngleInterval(double lo_, double hi_);
};

enum class MeasureKind { sato_tate, plancherel };

struct MeasureSpec {
    MeasureKind kind;
    std::uint64_t p; // prime; meaningful iff kind == plancherel

    static MeasureSpec sato_tate() { return MeasureSpec{MeasureKind::sato_tate, 0}; }
    static MeasureSpec plancherel(std::uint64_t p);
};

/// Density of the measure at theta in [0, pi].
double measure_density(const MeasureSpec& spec, double theta);

/// Mass of I under the measure, by closed-form antiderivative.
/// Accurate to 1e-13 absolute; lo == hi returns exactly 0.
double measure_mass(const MeasureSpec& spec, const AngleInterval& I);

/// Independent adaptive Gauss-Kronrod oracle for measure_mass.
/// tol >= 1e-14; throws numerical_error (carrying the best estimate) if the
/// refinement depth limit is hit before the error estimate reaches tol.
double measure_mass_quadrature(const MeasureSpec& spec, const AngleInterval& I, double tol);

/// <X_m, mu_p> = p^(-m/2) for even m, 0 for odd m (exact formula).
double chebyshev_moment(unsigned m, std::uint64_t p);

namespace detail {
// CDF values on [0, pi] in long double, used by the averages module to keep
// products of dozens of masses at full precision.
long double sato_tate_cdf(long double theta);
long double plancherel_cdf(std::uint64_t p, long double theta);
} // namespace detail

} // namespace heckesign
