#include "heckesign/averages.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "heckesign/measures.hpp"
#include "heckesign/sign_intervals.hpp"

namespace heckesign {

namespace {

// Rosser's bound p_i < i (ln i + ln ln i), valid for i >= 6 (1-based index).
long double prime_upper_bound(std::size_t i) {
    const long double li = logl((long double)i);
    return (long double)i * (li + logl(li));
}

// Tail bound for sum_{j > i} b_j / 2^j with b_j the Rosser bound: the term
// ratio is decreasing, so a geometric bound at the first omitted term holds.
long double pf_tail_bound(std::size_t i) {
    const long double t1 = prime_upper_bound(i + 1) / powl(2.0L, (long double)(i + 1));
    const long double ratio = 0.5L * ((long double)(i + 2) / (long double)(i + 1)) *
                              (prime_upper_bound(i + 2) / ((long double)(i + 2))) /
                              (prime_upper_bound(i + 1) / ((long double)(i + 1)));
    return t1 / (1.0L - ratio);
}

} // namespace

SeriesResult average_pf(double tol) {
    if (!(tol >= 1e-15 && tol <= 1e-3))
        throw std::invalid_argument("average_pf: tol must lie in [1e-15, 1e-3]");

    std::vector<std::uint64_t> ps = primes_up_to(1000); // p_168 = 997; ample for tol >= 1e-15
    long double sum = 0.0L, pw = 1.0L;
    for (std::size_t i = 1; i <= ps.size(); ++i) {
        pw *= 0.5L;
        sum += (long double)ps[i - 1] * pw;
        if (i >= 8) {
            const long double tail = pf_tail_bound(i);
            if (tail < (long double)tol / 8)
                return SeriesResult{(double)sum, i, (double)tail};
        }
    }
    throw numerical_error("average_pf: prime table exhausted before tail bound met", (double)sum);
}

double average_pf_partial(std::size_t terms) {
    std::vector<std::uint64_t> ps = primes_up_to(16 + 32 * terms);
    if (ps.size() < terms) ps = primes_up_to(1u << 22);
    long double sum = 0.0L, pw = 1.0L;
    for (std::size_t i = 0; i < terms; ++i) {
        pw *= 0.5L;
        sum += (long double)ps[i] * pw;
    }
    return (double)sum;
}

double nf_term(const PrimePower& m) {
    ConstraintSystem cs = constraint_system(m);
    long double term = (long double)m.value;
    for (const auto& [p, I] : cs.constraints) {
        const long double mass =
            detail::plancherel_cdf(p, I.hi) - detail::plancherel_cdf(p, I.lo);
        term *= mass;
    }
    return (double)term;
}

namespace {

// Rigorous bound on sum over integers m > m0 of m * 2^(1 - pi(m)), which
// dominates the omitted prime-power tail of the n_f series.  Explicit sum
// with a sieved pi table up to L, then dyadic blocks with pi(x) > x / ln x
// (valid for x >= 17).
long double nf_tail_bound(std::uint64_t m0, const std::vector<std::uint64_t>& primes) {
    const std::uint64_t L = std::max<std::uint64_t>(4 * m0, 4096);
    long double tail = 0.0L;
    std::size_t pi = 0;
    for (std::uint64_t m = 2; m <= L; ++m) {
        while (pi < primes.size() && primes[pi] <= m) ++pi;
        if (m > m0) tail += (long double)m * powl(2.0L, 1.0L - (long double)pi);
    }
    // blocks (L 2^j, L 2^(j+1)]: count <= L 2^j, max value <= L 2^(j+1)
    long double prev = -1.0L;
    for (int j = 0; j < 2000; ++j) {
        const long double lo = (long double)L * powl(2.0L, (long double)j);
        const long double pi_lb = lo / logl(lo);
        const long double block =
            lo * (2.0L * lo) * powl(2.0L, 1.0L - pi_lb);
        if (block == 0.0L) break;
        if (prev >= 0.0L && block >= prev)
            throw numerical_error("nf_tail_bound: dyadic blocks not decreasing", (double)tail);
        tail += block;
        prev = block;
    }
    return tail;
}

} // namespace

SeriesResult average_nf(double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-3))
        throw std::invalid_argument("average_nf: tol must lie in [1e-13, 1e-3]");

    const std::uint64_t cap = 4096; // far beyond any M_stop reachable at tol >= 1e-13
    const std::vector<std::uint64_t> primes = primes_up_to(4 * cap);
    const std::vector<PrimePower> pps = prime_powers_up_to(cap);

    long double sum = 0.0L;
    std::size_t used = 0;
    std::size_t pi = 0; // pi(m) maintained incrementally
    for (const PrimePower& m : pps) {
        while (pi < primes.size() && primes[pi] <= m.value) ++pi;
        const long double term = nf_term(m);
        // each term is at most m * 2^(1 - pi(m)): B factor <= 1, others <= 1/2
        const long double cap_term =
            (long double)m.value * powl(2.0L, 1.0L - (long double)pi);
        if (term > cap_term * (1.0L + 1e-12L))
            throw numerical_error("average_nf: term exceeds its half-mass bound", (double)sum);
        sum += term;
        ++used;
        // cheap lower bound first: the very next integer term already in the tail
        const long double quick =
            (long double)(m.value + 1) * powl(2.0L, 1.0L - (long double)pi);
        if (m.value >= 16 && quick < (long double)tol / 8) {
            const long double tail = nf_tail_bound(m.value, primes);
            if (tail < (long double)tol / 8)
                return SeriesResult{(double)sum, used, (double)tail};
        }
    }
    throw numerical_error("average_nf: enumeration cap reached before tail bound met",
                          (double)sum);
}

} // namespace heckesign
