#include "heckesign/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace heckesign {

namespace {

// Root segment: simple odd sieve up to sqrt(limit).
std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

} // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
    std::vector<std::uint64_t> primes;
    if (x < 2) return primes;

    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt((double)x)) + 1;
    std::vector<std::uint64_t> base = small_primes(root);
    primes.reserve(static_cast<std::size_t>(x > 16 ? (double)x / (std::log((double)x) - 1.3) : 8));

    const std::uint64_t segment = 1u << 16;
    std::vector<bool> comp(segment);
    for (std::uint64_t lo = 2; lo <= x; lo += segment) {
        const std::uint64_t hi = std::min(x, lo + segment - 1);
        std::fill(comp.begin(), comp.end(), false);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j <= hi; j += p) comp[j - lo] = true;
        }
        for (std::uint64_t v = lo; v <= hi; ++v)
            if (!comp[v - lo] && v >= 2) primes.push_back(v);
    }
    return primes;
}

std::uint64_t prime_count(std::uint64_t x) { return primes_up_to(x).size(); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // wheel over 6k+-1
    for (std::uint64_t d = 7; d * d <= n; d += 6) {
        if (n % d == 0) return false;
        if (n % (d + 4) == 0) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    for (std::uint64_t d = 2; d * d <= n; d = (d == 2 ? 3 : d + 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) { n /= d; ++e; }
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1u);
    return f;
}

PrimePower make_prime_power(std::uint64_t q, unsigned n) {
    if (!is_prime(q)) throw std::invalid_argument("make_prime_power: base is not prime");
    if (n < 1) throw std::invalid_argument("make_prime_power: exponent must be >= 1");
    std::uint64_t v = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (v > UINT64_MAX / q) throw std::invalid_argument("make_prime_power: q^n overflows");
        v *= q;
    }
    return PrimePower{q, n, v};
}

std::optional<PrimePower> as_prime_power(std::uint64_t v) {
    if (v < 2) return std::nullopt;
    auto f = factorize(v);
    if (f.size() != 1) return std::nullopt;
    return PrimePower{f[0].first, f[0].second, v};
}

std::vector<PrimePower> prime_powers_up_to(std::uint64_t x) {
    if (x < 2) throw std::invalid_argument("prime_powers_up_to: x must be >= 2");
    std::vector<PrimePower> out;
    for (std::uint64_t q : primes_up_to(x)) {
        std::uint64_t v = q;
        unsigned n = 1;
        while (true) {
            out.push_back(PrimePower{q, n, v});
            if (v > x / q) break;
            v *= q;
            ++n;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
    return out;
}

std::uint64_t squarefree_smooth_count(const SmoothSpec& spec) {
    if (spec.bound < 1) throw std::invalid_argument("squarefree_smooth_count: M must be >= 1");
    if (!(spec.smoothness > 1.0)) throw std::invalid_argument("squarefree_smooth_count: y must be > 1");
    if (spec.excluded_modulus < 1) throw std::invalid_argument("squarefree_smooth_count: N must be >= 1");

    const std::uint64_t M = spec.bound;
    const std::uint64_t ycap = static_cast<std::uint64_t>(spec.smoothness);
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : primes_up_to(std::min(ycap, M)))
        if (spec.excluded_modulus % p != 0) ps.push_back(p);

    // DFS over products of distinct admissible primes.
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t prod) -> void {
        ++count; // every reached node, m = 1 included
        for (std::size_t j = i; j < ps.size(); ++j) {
            if (ps[j] > M / prod) break;
            self(self, j + 1, prod * ps[j]);
        }
    };
    rec(rec, 0, 1);
    return count;
}

std::uint64_t psi_star(std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("psi_star: N must be >= 1");
    std::uint64_t r = 1;
    for (auto [p, a] : factorize(N)) {
        std::uint64_t pa = 1;
        for (unsigned i = 0; i < a; ++i) pa *= p;
        std::uint64_t local;
        if (a == 1) local = p - 1;
        else if (a == 2) local = pa - p - 1;
        else local = pa - pa / p - pa / (p * p) + pa / (p * p * p);
        r *= local;
    }
    return r;
}

} // namespace heckesign
