// Chebyshev polynomials of the second kind, the exponent a_p(q^n), and the
// constraint-interval system that characterises the event n_f = q^n.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "heckesign/measures.hpp"
#include "heckesign/primes.hpp"

namespace heckesign {

/// U_n(theta) = sin((n+1) theta) / sin(theta), with the removable
/// singularities at 0 and pi evaluated by limit.
double chebyshev_U(unsigned n, double theta);

/// Largest a with p^a < m.value, by exact integer comparison.
/// Requires p prime, p != m.q; throws std::domain_error on p == m.q.
unsigned a_exponent(const PrimePower& m, std::uint64_t p);

/// B_n^*: theta range on which q^n is the first negative power of q.
/// Equals [pi/(n+1), pi/n].
AngleInterval first_negative_interval(unsigned n);

/// A_a^*: theta range on which lambda(p^j) >= 0 for all j <= a.
/// Equals [0, pi/(a+1)].
AngleInterval nonnegative_interval(unsigned a);

/// One interval per prime p_j <= m.value: the B interval at p_j = q, the
/// nonnegative interval at every other prime.  Primes in increasing order.
struct ConstraintSystem {
    PrimePower target;
    std::vector<std::pair<std::uint64_t, AngleInterval>> constraints;
};

ConstraintSystem constraint_system(const PrimePower& m);

/// X-basis coefficients (alpha_0, alpha_1, alpha_2) of the degree-2
/// amplifier polynomial: F for sign +1, F(pi - theta) for sign -1.
std::array<double, 3> amplifier_poly(int sign);

/// Evaluate sum_i alpha_i X_i(theta) for a degree-2 coefficient triple.
double amplifier_eval(const std::array<double, 3>& alpha, double theta);

} // namespace heckesign
