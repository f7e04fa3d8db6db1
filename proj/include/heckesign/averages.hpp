// Tail-bounded evaluation of the two limiting averages: the average first
// negative prime eigenvalue (sum p_i / 2^i) and the average first negative
// eigenvalue (sum over prime powers of m times its constraint-interval mass).
#pragma once

#include <cstddef>

#include "heckesign/primes.hpp"

namespace heckesign {

struct SeriesResult {
    double value;
    std::size_t terms_used;
    double tail_bound; // the reported value is within tail_bound of the full sum
};

/// sum_{i>=1} p_i / 2^i, summed until the rigorous tail bound built from
/// p_i <= i (ln i + ln ln i) (valid for i >= 6) drops below tol.
/// Requires 1e-15 <= tol <= 1e-3.
SeriesResult average_pf(double tol);

/// Partial sum of p_i / 2^i over the first `terms` primes (diagnostic).
double average_pf_partial(std::size_t terms);

/// One term of the n_f series: m * prod of constraint-interval masses.
double nf_term(const PrimePower& m);

/// sum over prime powers m of nf_term(m), enumerated by increasing value,
/// stopping once sum_{m > M_stop} m * (1/2)^(pi(m)-1) < tol.
/// Requires 1e-13 <= tol <= 1e-3.
SeriesResult average_nf(double tol);

} // namespace heckesign
