#include "heckesign/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "heckesign/primes.hpp"

namespace heckesign {

AngleInterval::AngleInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo >= 0.0) || !(hi >= lo) || !(hi <= kPi + 1e-15))
        throw std::invalid_argument("AngleInterval: need 0 <= lo <= hi <= pi");
}

MeasureSpec MeasureSpec::plancherel(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("MeasureSpec::plancherel: p must be prime");
    return MeasureSpec{MeasureKind::plancherel, p};
}

double measure_density(const MeasureSpec& spec, double theta) {
    const long double t = theta;
    const long double s2 = sinl(t) * sinl(t);
    if (spec.kind == MeasureKind::sato_tate)
        return (double)((2.0L / kPiL) * s2);
    const long double ip = 1.0L / (long double)spec.p;
    const long double c = (1.0L - ip) * (1.0L - ip);
    const long double d = 4.0L * ip;
    return (double)((2.0L / kPiL) * (1.0L + ip) * s2 / (c + d * s2));
}

namespace detail {

long double sato_tate_cdf(long double theta) {
    return theta / kPiL - sinl(2.0L * theta) / (2.0L * kPiL);
}

// Antiderivative of 1/(c + d sin^2 t) is atan(r tan t)/s with
// r = sqrt((c+d)/c), s = sqrt(c(c+d)); the arctangent branch is continued
// across t = pi/2 by adding pi/s (one half-period crossing inside [0, pi]).
long double plancherel_cdf(std::uint64_t p, long double theta) {
    const long double ip = 1.0L / (long double)p;
    const long double c = (1.0L - ip) * (1.0L - ip);
    const long double d = 4.0L * ip;
    const long double r = sqrtl((c + d) / c);
    const long double s = sqrtl(c * (c + d));
    long double T;
    if (theta < kPiL / 2.0L)
        T = atanl(r * tanl(theta)) / s;
    else if (theta == kPiL / 2.0L)
        T = (kPiL / 2.0L) / s;
    else
        T = (atanl(r * tanl(theta)) + kPiL) / s;
    return (2.0L / kPiL) * (1.0L + ip) * (theta / d - (c / d) * T);
}

} // namespace detail

double measure_mass(const MeasureSpec& spec, const AngleInterval& I) {
    if (I.lo == I.hi) return 0.0;
    if (spec.kind == MeasureKind::sato_tate)
        return (double)(detail::sato_tate_cdf(I.hi) - detail::sato_tate_cdf(I.lo));
    return (double)(detail::plancherel_cdf(spec.p, I.hi) - detail::plancherel_cdf(spec.p, I.lo));
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr long double kGK[8][3] = {
    {0.000000000000000000000000000000000L, 0.417959183673469387755102040816327L, 0.209482141084727828012999174891714L},
    {0.405845151377397166906606412076961L, 0.381830050505118944950369775488975L, 0.190350578064785409913256402421014L},
    {0.741531185599394439863864773280788L, 0.279705391489276667901467771423780L, 0.140653259715525918745189590510238L},
    {0.949107912342758524526189684047851L, 0.129484966168869693270611432679082L, 0.063092092629978553290700663189204L},
    {0.207784955007898467600689403773245L, 0.0L, 0.204432940075298892414161999234649L},
    {0.586087235467691130294144838258730L, 0.0L, 0.169004726639267902826583426598550L},
    {0.864864423359769072789712788640926L, 0.0L, 0.104790010322250183839876322541518L},
    {0.991455371120812639206854697526329L, 0.0L, 0.022935322010529224963732008058970L},
};

struct GKEstimate {
    long double value;
    long double error;
};

template <typename F>
GKEstimate gk15(const F& f, long double a, long double b) {
    const long double mid = 0.5L * (a + b);
    const long double h = 0.5L * (b - a);
    const long double f0 = f(mid);
    long double g7 = kGK[0][1] * f0;
    long double k15 = kGK[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const long double dx = h * kGK[i][0];
        const long double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * fi;
        k15 += kGK[i][2] * fi;
    }
    g7 *= h;
    k15 *= h;
    const long double diff = fabsl(k15 - g7);
    // standard scaled GK error heuristic, conservative for smooth densities
    long double err = diff;
    if (diff > 0) err = diff * sqrtl(diff) * 200.0L;
    if (err < 1e-22L) err = 1e-22L;
    return GKEstimate{k15, err};
}

template <typename F>
long double adaptive_gk(const F& f, long double a, long double b, long double tol, int depth,
                        bool& failed) {
    GKEstimate e = gk15(f, a, b);
    if (e.error <= tol || b - a < 1e-16L) return e.value;
    if (depth >= 48) {
        failed = true;
        return e.value;
    }
    const long double mid = 0.5L * (a + b);
    return adaptive_gk(f, a, mid, tol / 2, depth + 1, failed) +
           adaptive_gk(f, mid, b, tol / 2, depth + 1, failed);
}

} // namespace

double measure_mass_quadrature(const MeasureSpec& spec, const AngleInterval& I, double tol) {
    if (!(tol >= 1e-14)) throw std::invalid_argument("measure_mass_quadrature: tol must be >= 1e-14");
    if (I.lo == I.hi) return 0.0;
    auto f = [&](long double t) -> long double { return measure_density(spec, (double)t); };
    bool failed = false;
    long double v = adaptive_gk(f, I.lo, I.hi, (long double)tol / 2, 0, failed);
    if (failed)
        throw numerical_error("measure_mass_quadrature: refinement depth exceeded", (double)v);
    return (double)v;
}

double chebyshev_moment(unsigned m, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("chebyshev_moment: p must be prime");
    if (m % 2 == 1) return 0.0;
    long double ph = 1.0L;
    for (unsigned i = 0; i < m / 2; ++i) ph *= (long double)p;
    return (double)(1.0L / ph);
}

} // namespace heckesign
