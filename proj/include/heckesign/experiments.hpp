// Empirical statistics over the exact eigenform census: sign fractions,
// angle histograms, first-sign-change averages, positive-pattern counts and
// normalised trace limits.
#pragma once

#include <cstdint>
#include <vector>

#include "heckesign/heckeforms.hpp"
#include "heckesign/report.hpp"

namespace heckesign {

struct WeightRange {
    int kmin;
    int kmax; // inclusive; even weights with dim S_k >= 1 are used
};

struct CensusRow {
    int k;
    int index;
    std::uint64_t p_f;
    std::uint64_t n_f;
    std::vector<double> lambda_p; // lambda(p) for the census primes, in order
};

struct SignCensus {
    WeightRange range{0, 0};
    std::uint64_t prime_bound = 0;
    std::vector<std::uint64_t> primes; // primes <= prime_bound
    std::vector<CensusRow> rows;       // ordered by (k, index)

    double lambda(const CensusRow& row, std::uint64_t p) const;
};

/// Walk the weight range and embed every eigenform.  `threads` > 1 splits
/// the weights across workers; the row order is deterministic either way.
SignCensus build_census(HeckeEngine& engine, WeightRange range, std::uint64_t prime_bound = 200,
                        int threads = 1);

enum class FirstNegativeKind { p_f, n_f };

ExperimentReport empirical_sign_fraction(const SignCensus& census, std::uint64_t p, double tol);
ExperimentReport empirical_angle_distribution(const SignCensus& census, std::uint64_t p, int bins,
                                              double tol);
/// Mean p_f or n_f against the series constant; the pass band is clamped
/// to >= 0.25 since only the limits are known, not finite-size rates.
ExperimentReport empirical_average(const SignCensus& census, FirstNegativeKind kind, double tol);
ExperimentReport positive_pattern_count(const SignCensus& census, std::uint64_t P, double tol);
/// Normalised trace sequence Tr(T_n*)/dim across the range; the deviation is
/// the distance of the final element from n^(-1/2) (square n) or 0.
ExperimentReport trace_limit_experiment(HeckeEngine& engine, std::uint64_t n, WeightRange range,
                                        double tol);

} // namespace heckesign
