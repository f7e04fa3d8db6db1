// Analytic toolbox for the large-sieve machinery: exact Kloosterman sums,
// the Bessel power series and its squared-term variant, the Delta(N,k,M)
// and complete-sieve evaluators, the Petersson tail, and the amplifier
// H-sum.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace heckesign {

struct KloostermanQuery {
    std::int64_t m;
    std::int64_t n;
    std::uint64_t c; // modulus >= 1
};

struct KloostermanValue {
    double real_part;
    double imag_part; // identically zero in theory; asserted < 1e-10
};

/// S(m, n; c) with both components; throws numerical_error if the imaginary
/// part fails to vanish.
KloostermanValue kloosterman_full(const KloostermanQuery& q);

/// Real value of S(m, n; c).
double kloosterman(const KloostermanQuery& q);

/// Partial-sum evaluation of a one-parameter power series with a remainder
/// estimate (the first omitted term).  `warning` is set when the remainder
/// exceeds 1e-12 of the value.
struct SeriesEval {
    double value;
    double remainder_estimate;
    bool warning;
};

/// J_order(2x) as the alternating series sum_l (-1)^l x^(order+2l)/(l! (order+l)!),
/// truncated at `terms` terms.  Meaningful for |x| <~ order.
SeriesEval bessel_j(unsigned order, double x, unsigned terms);

/// curly-J_order(x) = sum_l (x^(order+2l)/(l! (order+l)!))^2, truncated.
SeriesEval curly_j(unsigned order, double x, unsigned terms);

/// Grid report for the curly-J bound
///   curly_j(x) <= C x^4 (k^(k(alpha-1) - 2 alpha + k^(2 alpha - 1)/2))^2
/// with a fixed calibration constant C local to this check; it is not a
/// claim about the absolute constant in the underlying inequality.
struct BoundCheckOffender {
    int k;
    double alpha;
    double x;
    double ratio;
};
struct BoundCheckReport {
    double max_ratio;
    double constant;
    bool ok;
    std::vector<BoundCheckOffender> offenders;
};

BoundCheckReport curly_j_bound_check(int k, double alpha, const std::vector<double>& xs,
                                     double constant = 64.0);
/// The declared acceptance grid: k in {4,...,40} even, alpha in {0.55, 0.6, 0.75},
/// 10 x-levels per pair up to k^alpha / n.
BoundCheckReport curly_j_bound_check_default_grid(double constant = 64.0);

/// Parameters of the weighted sieve bound of the main inequality.
struct SieveParams {
    int k;            // even weight >= 2
    std::uint64_t N;  // level >= 1
    double M;         // sieve length > 1
    double alpha;     // in (1/2, 1)
    double n_param;   // e^(k/(k-3)) for k > 2, 1 for k = 2
    double eta;       // k(1-alpha) - k^(2 alpha - 1)/2
    bool constraint_ok; // N k^alpha >= 2 pi M n

    SieveParams(int k, std::uint64_t N, double M, double alpha);
};

/// 1 + M/(N k^eta) for k >= 4 (requires the length constraint); the k = 2
/// variant is 1 + M log M / N.  Throws std::domain_error when the constraint
/// fails, pointing at complete_sieve_bound.
double delta_bound(const SieveParams& params);

/// Formula body of delta_bound without the SieveParams invariants (M >= 0).
double delta_bound_formula(int k, std::uint64_t N, double M, double alpha);

/// 1 + M/(N k^(1-eps)) for even k >= 4, or 1 + M log M / N for k = 2.
double complete_sieve_bound(double M, std::uint64_t N, int k, double eps);

/// Result of the truncated Petersson tail
///   2 pi i^(-k) sum_{c = 0 mod N, c <= c_max} S(m,n;c) J_{k-1}(4 pi sqrt(mn)/c) / c.
struct PeterssonTail {
    double value;
    double truncation_bound; // Weil + leading-Bessel overestimate of the rest
    std::uint64_t c_max;     // where the sum actually stopped
    bool warning;            // truncation_bound above the requested tolerance
};

/// c_max == 0 picks the smallest multiple of N with truncation bound < tol.
PeterssonTail petersson_tail(std::uint64_t m, std::uint64_t n, int k, std::uint64_t N,
                             std::uint64_t c_max = 0, double tol = 1e-10);

/// Checks r(m,n)/r(1,1) = lambda(m) lambda(n) at weight 12 for all pairs
/// m, n <= max_mn, where r(m,n) = delta(m,n) + petersson_tail(m,n,12,1).
struct RatioCheckFailure {
    std::uint64_t m;
    std::uint64_t n;
    double error;
};
struct RatioCheckReport {
    bool ok;
    double max_error;
    std::vector<RatioCheckFailure> failures;
};

RatioCheckReport petersson_ratio_check(int k = 12, std::uint64_t max_mn = 10, double tol = 1e-6);

/// H = sum over squarefree beta-smooth m <= M coprime to N of
/// prod_{p | m} delta_p^2 / sum_i alpha_p(i)^2.
double sieve_H(std::uint64_t M, double beta, std::uint64_t N,
               const std::function<double(std::uint64_t)>& delta_p,
               const std::function<std::vector<double>(std::uint64_t)>& alpha_p);

/// sieve_H with the F-amplifier values (delta = 1/4, alpha = (1/2, 1/4)).
double sieve_H_amplifier(std::uint64_t M, double beta, std::uint64_t N);

} // namespace heckesign
