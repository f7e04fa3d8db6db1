// Prime generation, prime powers, smooth counting and the multiplicative
// function psi* -- the arithmetic substrate for everything else.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace heckesign {

/// All primes <= x in increasing order (segmented sieve, deterministic).
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

/// pi(x), counted from the same sieve.
std::uint64_t prime_count(std::uint64_t x);

/// Deterministic primality by trial division; intended for n <= 10^12.
bool is_prime(std::uint64_t n);

/// (prime, exponent) factorisation by trial division, exponents >= 1.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// A prime power q^n, n >= 1.  The candidate values of n_f.
struct PrimePower {
    std::uint64_t q;     // prime base
    unsigned n;          // exponent >= 1
    std::uint64_t value; // q^n

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Validating constructor; throws std::invalid_argument unless q is prime,
/// n >= 1 and q^n fits in 64 bits.
PrimePower make_prime_power(std::uint64_t q, unsigned n);

/// Recognise v as q^n; nullopt when v is not a prime power (or v < 2).
std::optional<PrimePower> as_prime_power(std::uint64_t v);

/// All prime powers q^n <= x sorted by value.  Requires x >= 2.
std::vector<PrimePower> prime_powers_up_to(std::uint64_t x);

/// Parameters of the squarefree smooth count Psi*_N(M, y).
struct SmoothSpec {
    std::uint64_t bound;            // M >= 1
    double smoothness;              // y > 1
    std::uint64_t excluded_modulus; // N >= 1
};

/// #{ m <= M : m squarefree, y-smooth, gcd(m, N) = 1 }, m = 1 included.
std::uint64_t squarefree_smooth_count(const SmoothSpec& spec);

/// Multiplicative psi*: psi*(p) = p-1, psi*(p^2) = p^2-p-1,
/// psi*(p^a) = p^a - p^(a-1) - p^(a-2) + p^(a-3) for a > 2, psi*(1) = 1.
std::uint64_t psi_star(std::uint64_t N);

} // namespace heckesign
