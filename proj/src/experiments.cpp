#include "heckesign/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "heckesign/averages.hpp"
#include "heckesign/measures.hpp"
#include "heckesign/primes.hpp"

namespace heckesign {

double SignCensus::lambda(const CensusRow& row, std::uint64_t p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p)
        throw std::invalid_argument("SignCensus::lambda: p is not a census prime");
    return row.lambda_p[(std::size_t)(it - primes.begin())];
}

SignCensus build_census(HeckeEngine& engine, WeightRange range, std::uint64_t prime_bound,
                        int threads) {
    if (range.kmin > range.kmax) throw std::invalid_argument("build_census: empty weight range");
    if ((std::uint64_t)engine.prec() < prime_bound)
        throw std::invalid_argument("build_census: engine precision below the prime bound");

    SignCensus census;
    census.range = range;
    census.prime_bound = prime_bound;
    census.primes = primes_up_to(prime_bound);

    std::vector<int> weights;
    for (int k = range.kmin + (range.kmin % 2); k <= range.kmax; k += 2)
        if (k >= 12 && dim_cusp_forms(k) > 0) weights.push_back(k);

    std::vector<std::vector<CensusRow>> slots(weights.size());
    auto work = [&](int kk, std::size_t slot) {
        std::vector<CensusRow> rows;
        for (const EigenformRecord& f : engine.eigenforms(kk)) {
            CensusRow row;
            row.k = kk;
            row.index = f.index;
            row.p_f = f.p_f;
            row.n_f = f.n_f;
            row.lambda_p.reserve(census.primes.size());
            for (std::uint64_t p : census.primes) row.lambda_p.push_back(f.lambda(p));
            rows.push_back(std::move(row));
        }
        slots[slot] = std::move(rows);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < weights.size(); ++i) work(weights[i], i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= weights.size()) return;
                    try {
                        work(weights[i], i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mu);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    for (auto& rows : slots)
        for (auto& row : rows) census.rows.push_back(std::move(row));
    return census;
}

namespace {

void require_rows(const SignCensus& census) {
    if (census.rows.empty()) throw std::domain_error("experiment: census holds no forms");
}

ExperimentReport make_report(std::string id,
                             std::vector<std::pair<std::string, std::string>> params,
                             std::vector<double> observed, std::vector<double> expected,
                             double deviation, double tol) {
    ExperimentReport r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.observed = std::move(observed);
    r.expected = std::move(expected);
    r.deviation = deviation;
    r.tolerance = tol;
    r.verdict = deviation <= tol;
    return r;
}

std::string range_str(const SignCensus& c) {
    return std::to_string(c.range.kmin) + ".." + std::to_string(c.range.kmax);
}

} // namespace

ExperimentReport empirical_sign_fraction(const SignCensus& census, std::uint64_t p, double tol) {
    require_rows(census);
    std::size_t positive = 0;
    for (const CensusRow& row : census.rows)
        if (census.lambda(row, p) > 0.0) ++positive;
    const double frac = (double)positive / (double)census.rows.size();
    return make_report("sign-fraction",
                       {{"p", std::to_string(p)}, {"weights", range_str(census)}}, {frac}, {0.5},
                       std::fabs(frac - 0.5), tol);
}

ExperimentReport empirical_angle_distribution(const SignCensus& census, std::uint64_t p, int bins,
                                              double tol) {
    require_rows(census);
    if (bins < 1) throw std::invalid_argument("empirical_angle_distribution: bins must be >= 1");
    std::vector<double> observed((std::size_t)bins, 0.0);
    for (const CensusRow& row : census.rows) {
        const double lam = census.lambda(row, p);
        const double theta = std::acos(std::clamp(lam / 2.0, -1.0, 1.0));
        int b = (int)(theta / kPi * bins);
        b = std::clamp(b, 0, bins - 1);
        observed[(std::size_t)b] += 1.0;
    }
    for (double& v : observed) v /= (double)census.rows.size();
    std::vector<double> expected;
    const MeasureSpec mu = MeasureSpec::plancherel(p);
    for (int b = 0; b < bins; ++b)
        expected.push_back(measure_mass(mu, AngleInterval(kPi * b / bins, kPi * (b + 1) / bins)));
    double dev = 0.0;
    for (int b = 0; b < bins; ++b)
        dev = std::max(dev, std::fabs(observed[(std::size_t)b] - expected[(std::size_t)b]));
    return make_report("angle-distribution",
                       {{"p", std::to_string(p)},
                        {"weights", range_str(census)},
                        {"bins", std::to_string(bins)}},
                       std::move(observed), std::move(expected), dev, tol);
}

ExperimentReport empirical_average(const SignCensus& census, FirstNegativeKind kind, double tol) {
    require_rows(census);
    double sum = 0.0;
    for (const CensusRow& row : census.rows)
        sum += (double)(kind == FirstNegativeKind::p_f ? row.p_f : row.n_f);
    const double mean = sum / (double)census.rows.size();
    const double expected = (kind == FirstNegativeKind::p_f ? average_pf(1e-9) : average_nf(1e-9)).value;
    const double band = std::max(tol, 0.25); // finite-size effects; no harder band exists
    return make_report(kind == FirstNegativeKind::p_f ? "average-pf" : "average-nf",
                       {{"weights", range_str(census)}}, {mean}, {expected},
                       std::fabs(mean - expected), band);
}

ExperimentReport positive_pattern_count(const SignCensus& census, std::uint64_t P, double tol) {
    require_rows(census);
    if (P < 2) throw std::invalid_argument("positive_pattern_count: P must be >= 2");
    std::size_t count = 0;
    for (const CensusRow& row : census.rows) {
        bool all_positive = true;
        for (std::size_t i = 0; i < census.primes.size() && census.primes[i] <= P; ++i)
            if (row.lambda_p[i] <= 0.0) {
                all_positive = false;
                break;
            }
        if (all_positive) ++count;
    }
    const double frac = (double)count / (double)census.rows.size();
    const double expected = std::pow(0.5, (double)prime_count(P));
    return make_report("positive-pattern",
                       {{"P", std::to_string(P)},
                        {"weights", range_str(census)},
                        {"count", std::to_string(count)},
                        {"total", std::to_string(census.rows.size())}},
                       {frac}, {expected}, std::fabs(frac - expected), tol);
}

ExperimentReport trace_limit_experiment(HeckeEngine& engine, std::uint64_t n, WeightRange range,
                                        double tol) {
    if (n < 1) throw std::invalid_argument("trace_limit_experiment: n must be >= 1");
    std::vector<double> seq;
    for (int k = range.kmin + (range.kmin % 2); k <= range.kmax; k += 2) {
        const int d = dim_cusp_forms(k);
        if (k < 12 || d == 0) continue;
        seq.push_back(engine.trace_tn_star(n, k) / (double)d);
    }
    if (seq.empty()) throw std::domain_error("trace_limit_experiment: empty weight range");
    const std::uint64_t root = (std::uint64_t)std::llround(std::sqrt((double)n));
    const bool square = root * root == n;
    const double expected = square ? 1.0 / std::sqrt((double)n) : 0.0;
    const double dev = std::fabs(seq.back() - expected);
    return make_report("trace-limit",
                       {{"n", std::to_string(n)},
                        {"weights", std::to_string(range.kmin) + ".." + std::to_string(range.kmax)}},
                       std::move(seq), {expected}, dev, tol);
}

} // namespace heckesign
