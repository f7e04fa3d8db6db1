// Acceptance suite: every criterion is evaluated at its stated tolerance and
// reported on one pass/fail line.  Exit status is the number of failures.
//
// Criterion 1 is expected to fail on its second half at the time of writing:
// the first-negative-eigenvalue series evaluates to 3.13631438970452852...,
// which this suite cross-validates by quadrature and by the exact eigenform
// census, while the published reference value is 2.9423403000531483.  The
// check is kept as stated rather than weakened; see README.md.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "heckesign/averages.hpp"
#include "heckesign/experiments.hpp"
#include "heckesign/heckeforms.hpp"
#include "heckesign/measures.hpp"
#include "heckesign/primes.hpp"
#include "heckesign/sieve.hpp"
#include "heckesign/sign_intervals.hpp"

using namespace heckesign;

namespace {

int failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct Criterion {
    const char* name;
    double budget_seconds;
};

void report(const Criterion& c, bool ok, double seconds, const std::string& detail) {
    const bool in_budget = seconds < c.budget_seconds;
    if (!ok || !in_budget) ++failures;
    std::printf("[%s] %-28s %6.2fs/%-4.0fs  %s\n", (ok && in_budget) ? "PASS" : "FAIL", c.name,
                seconds, c.budget_seconds, detail.c_str());
    std::fflush(stdout);
}

void run(const Criterion& c, const std::function<bool(std::string&)>& body) {
    const double t0 = now_seconds();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(c, ok, now_seconds() - t0, detail);
}

// test-local Simpson oracle for the moment integrals
double simpson_moment(unsigned m, std::uint64_t p) {
    const MeasureSpec mu = MeasureSpec::plancherel(p);
    const int N = 1 << 16;
    long double acc = 0.0L;
    for (int i = 0; i <= N; ++i) {
        const double t = kPi * i / N;
        const double f = chebyshev_U(m, t) * measure_density(mu, t);
        acc += f * ((i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return (double)(acc * (kPiL / N) / 3.0L);
}

std::string run_cli(const std::string& cmd, int& exit_code) {
    std::FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) {
        exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    std::printf("acceptance suite\n================\n");

    // shared census over the full weight range (criteria 3, 5, 6)
    HeckeEngine engine(210);
    SignCensus census;

    run({"1. constants reproduction", 5.0}, [&](std::string& detail) {
        const SeriesResult pf = average_pf(1e-9);
        const SeriesResult nf = average_nf(1e-9);
        const double pf_dev = std::fabs(pf.value - 3.674643966011328);
        const double nf_dev = std::fabs(nf.value - 2.9423403000531483);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "avg_pf=%.15f (dev %.1e) avg_nf=%.15f (dev vs reference %.1e)", pf.value,
                      pf_dev, nf.value, nf_dev);
        detail = buf;
        bool ok = pf_dev <= 1e-9 && nf_dev <= 1e-9;
        if (!cli.empty()) {
            int code = 0;
            const std::string out = run_cli(cli + " constants --tol 1e-9", code);
            double cli_pf = 0.0, cli_nf = 0.0;
            const char* pf_line = std::strstr(out.c_str(), "avg_pf = ");
            const char* nf_line = std::strstr(out.c_str(), "avg_nf = ");
            if (pf_line == nullptr || nf_line == nullptr ||
                std::sscanf(pf_line, "avg_pf = %lf", &cli_pf) != 1 ||
                std::sscanf(nf_line, "avg_nf = %lf", &cli_nf) != 1) {
                ok = false;
                detail += " [cli output unreadable]";
            } else {
                if (std::fabs(cli_pf - 3.674643966011328) > 1e-9) {
                    ok = false;
                    detail += " [cli avg_pf outside 1e-9]";
                }
                if (std::fabs(cli_nf - 2.9423403000531483) > 1e-9) {
                    // same deviation as the library route; already reflected in ok
                    detail += " [cli avg_nf deviates like the library]";
                }
            }
        }
        return ok;
    });

    run({"2. measure cross-validation", 30.0}, [&](std::string& detail) {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> U(0.0, kPi);
        double worst = 0.0;
        for (std::uint64_t p : {2ull, 3ull, 5ull, 53ull}) {
            const MeasureSpec mu = MeasureSpec::plancherel(p);
            for (int i = 0; i < 50; ++i) {
                double a = U(rng), b = U(rng);
                if (a > b) std::swap(a, b);
                const AngleInterval I(a, b);
                worst = std::max(
                    worst, std::fabs(measure_mass(mu, I) - measure_mass_quadrature(mu, I, 1e-12)));
            }
        }
        double worst_moment = 0.0;
        for (std::uint64_t p : {2ull, 3ull, 5ull, 53ull})
            for (unsigned m = 0; m <= 10; ++m)
                worst_moment =
                    std::max(worst_moment, std::fabs(simpson_moment(m, p) - chebyshev_moment(m, p)));
        char buf[128];
        std::snprintf(buf, sizeof buf, "mass dev %.2e (200 cases), moment dev %.2e", worst,
                      worst_moment);
        detail = buf;
        return worst < 1e-10 && worst_moment < 1e-10;
    });

    run({"3. eigenform engine exactness", 300.0}, [&](std::string& detail) {
        // exact multiplicativity for m, n <= 12 across all weights up to 60
        for (int k = 12; k <= 60; k += 2) {
            const int d = dim_cusp_forms(k);
            if (d == 0) continue;
            HeckeEngine wide(144 * (d + 2));
            for (std::uint64_t m = 1; m <= 12; ++m)
                for (std::uint64_t n = m; n <= 12; ++n) {
                    const HeckeMatrix lhs =
                        wide.hecke_matrix(m, k).product(wide.hecke_matrix(n, k));
                    HeckeMatrix rhs{m * n, k,
                                    std::vector<std::vector<mpq_class>>(
                                        (std::size_t)d, std::vector<mpq_class>((std::size_t)d, 0))};
                    for (std::uint64_t e = 1; e <= std::min(m, n); ++e) {
                        if (m % e || n % e) continue;
                        mpz_class ek;
                        mpz_ui_pow_ui(ek.get_mpz_t(), (unsigned long)e, (unsigned long)(k - 1));
                        const HeckeMatrix term = wide.hecke_matrix(m * n / (e * e), k);
                        for (int i = 0; i < d; ++i)
                            for (int j = 0; j < d; ++j)
                                rhs.m[(std::size_t)i][(std::size_t)j] +=
                                    mpq_class(ek) * term.m[(std::size_t)i][(std::size_t)j];
                    }
                    if (lhs.m != rhs.m) {
                        detail = "multiplicativity failed at k=" + std::to_string(k);
                        return false;
                    }
                }
        }
        // census + Deligne + Chebyshev across 12..300
        census = build_census(engine, WeightRange{12, 300});
        double worst_cheb = 0.0;
        std::size_t forms = 0;
        for (int k = 12; k <= 300; k += 2) {
            if (dim_cusp_forms(k) == 0) continue;
            for (const EigenformRecord& f : engine.eigenforms(k)) {
                ++forms;
                for (std::uint64_t p : primes_up_to(200))
                    if (std::fabs(f.lambda(p)) > 2.0 + 1e-6) {
                        detail = "Deligne bound failed at k=" + std::to_string(k);
                        return false;
                    }
                for (std::uint64_t p : {2ull, 3ull, 5ull}) {
                    const double theta = f.theta(p);
                    for (unsigned n = 1; n <= 6; ++n) {
                        const std::uint64_t pn = make_prime_power(p, n).value;
                        const double direct = pn <= (std::uint64_t)f.prec() ? f.lambda(pn)
                                                                            : f.lambda_at(pn);
                        worst_cheb = std::max(worst_cheb,
                                              std::fabs(direct - chebyshev_U(n, theta)));
                    }
                }
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu forms, max Chebyshev dev %.2e", forms, worst_cheb);
        detail = buf;
        return worst_cheb <= 1e-8;
    });

    run({"4. Petersson consistency", 120.0}, [&](std::string& detail) {
        const RatioCheckReport rep = petersson_ratio_check(12, 10, 1e-6);
        char buf[128];
        std::snprintf(buf, sizeof buf, "max ratio error %.2e over all m,n <= 10", rep.max_error);
        detail = buf;
        return rep.ok;
    });

    run({"5. equidistribution", 60.0}, [&](std::string& detail) {
        if (census.rows.empty()) census = build_census(engine, WeightRange{12, 300});
        const ExperimentReport hist = empirical_angle_distribution(census, 2, 4, 0.1);
        const ExperimentReport frac = empirical_sign_fraction(census, 2, 0.1);
        char buf[128];
        std::snprintf(buf, sizeof buf, "angle dev %.4f, sign fraction %.4f", hist.deviation,
                      frac.observed[0]);
        detail = buf;
        return hist.verdict && frac.verdict;
    });

    run({"6. first-sign-change structure", 30.0}, [&](std::string& detail) {
        if (census.rows.empty()) census = build_census(engine, WeightRange{12, 300});
        bool witness = false;
        for (const CensusRow& row : census.rows) {
            if (!as_prime_power(row.n_f).has_value()) {
                detail = "n_f not a prime power at k=" + std::to_string(row.k);
                return false;
            }
            if (row.n_f > row.p_f) {
                detail = "n_f > p_f at k=" + std::to_string(row.k);
                return false;
            }
            if (row.k == 20 && row.n_f == 4 && row.n_f < row.p_f) witness = true;
        }
        detail = "all n_f prime powers <= p_f; weight-20 witness n_f=4 " +
                 std::string(witness ? "present" : "MISSING");
        return witness;
    });

    run({"7. trace limit", 120.0}, [&](std::string& detail) {
        const ExperimentReport r4 = trace_limit_experiment(engine, 4, WeightRange{12, 300}, 0.05);
        const ExperimentReport r2 = trace_limit_experiment(engine, 2, WeightRange{12, 300}, 0.05);
        char buf[128];
        std::snprintf(buf, sizeof buf, "Tr(T_4*)/dim -> %.4f, Tr(T_2*)/dim -> %.4f",
                      r4.observed.back(), r2.observed.back());
        detail = buf;
        return r4.verdict && r2.verdict;
    });

    run({"8. analytic bounds", 60.0}, [&](std::string& detail) {
        for (std::int64_t m = 1; m <= 20; ++m)
            for (std::int64_t n = 1; n <= 20; ++n)
                for (std::uint64_t c = 1; c <= 500; c += 3) {
                    std::uint64_t g = std::gcd(std::gcd((std::uint64_t)m, (std::uint64_t)n), c);
                    std::uint64_t tau = 0;
                    for (std::uint64_t e = 1; e * e <= c; ++e)
                        if (c % e == 0) tau += (e * e == c) ? 1 : 2;
                    const double bound = std::sqrt((double)g) * std::sqrt((double)c) * (double)tau;
                    if (std::fabs(kloosterman({m, n, c})) > bound + 1e-8) {
                        detail = "Weil bound failed at c=" + std::to_string(c);
                        return false;
                    }
                }
        const BoundCheckReport rep = curly_j_bound_check_default_grid(64.0);
        if (!rep.ok) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "curly-J ratio %.2f > 64 at k=%d alpha=%.2f x=%.3f",
                          rep.offenders[0].ratio, rep.offenders[0].k, rep.offenders[0].alpha,
                          rep.offenders[0].x);
            detail = buf;
            return false;
        }
        // evaluator determinism
        const SieveParams params(12, 1000000, 10.0, 0.6);
        if (delta_bound(params) != delta_bound(params) ||
            complete_sieve_bound(10, 5, 12, 0.2) != complete_sieve_bound(10, 5, 12, 0.2) ||
            sieve_H_amplifier(10, 3.0, 1) != sieve_H_amplifier(10, 3.0, 1)) {
            detail = "evaluators not deterministic";
            return false;
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "Weil ok, curly-J max ratio %.3e <= 64", rep.max_ratio);
        detail = buf;
        return true;
    });

    std::printf("================\n%d criterion failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
