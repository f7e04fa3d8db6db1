#include "heckesign/sieve.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heckesign/common.hpp"
#include "heckesign/heckeforms.hpp"
#include "heckesign/primes.hpp"
#include "heckesign/qexpansion.hpp"

namespace heckesign {

namespace {

// 200 decimals; plenty for the working precisions used here.
const char* kPiDigits =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899"
    "8628034825342117067982148086513282306647093844609550582231725359408128481117450284"
    "102701938521105559644622948954930381964428810975665933446128475648233786783165271201";

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
    std::int64_t t = 0, nt = 1, r = c, nr = a % c;
    if (nr < 0) nr += c;
    while (nr != 0) {
        const std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) return -1; // not invertible
    return t < 0 ? t + c : t;
}

} // namespace

KloostermanValue kloosterman_full(const KloostermanQuery& q) {
    if (q.c < 1) throw std::invalid_argument("kloosterman: c must be >= 1");
    if (q.c == 1) return KloostermanValue{1.0, 0.0};
    const std::int64_t c = (std::int64_t)q.c;
    const std::int64_t m = ((q.m % c) + c) % c;
    const std::int64_t n = ((q.n % c) + c) % c;
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        const std::int64_t xbar = mod_inverse(x, c);
        const std::int64_t r = (std::int64_t)(((__int128)m * x + (__int128)n * xbar) % c);
        const long double angle = 2.0L * kPiL * (long double)r / (long double)c;
        re += cosl(angle);
        im += sinl(angle);
    }
    if (!(fabsl(im) < 1e-10L))
        throw numerical_error("kloosterman: imaginary part failed to vanish", (double)re);
    return KloostermanValue{(double)re, (double)im};
}

double kloosterman(const KloostermanQuery& q) { return kloosterman_full(q).real_part; }

SeriesEval bessel_j(unsigned order, double x, unsigned terms) {
    if (terms < 1) throw std::invalid_argument("bessel_j: terms must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: x must be >= 0");
    // leading term x^order / order! as a stable running product
    long double t = 1.0L;
    for (unsigned i = 1; i <= order; ++i) t *= (long double)x / i;
    long double sum = 0.0L;
    const long double x2 = (long double)x * x;
    for (unsigned l = 0; l < terms; ++l) {
        sum += t;
        t *= -x2 / ((long double)(l + 1) * (order + l + 1));
    }
    const double rem = (double)fabsl(t);
    const bool warn = rem > 1e-12 * std::max(std::fabs((double)sum), 1e-300);
    return SeriesEval{(double)sum, rem, warn};
}

SeriesEval curly_j(unsigned order, double x, unsigned terms) {
    if (terms < 1) throw std::invalid_argument("curly_j: terms must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("curly_j: x must be >= 0");
    long double t = 1.0L;
    for (unsigned i = 1; i <= order; ++i) t *= (long double)x / i;
    long double sum = 0.0L;
    const long double x2 = (long double)x * x;
    for (unsigned l = 0; l < terms; ++l) {
        sum += t * t;
        t *= x2 / ((long double)(l + 1) * (order + l + 1));
    }
    const double rem = (double)(t * t);
    const bool warn = rem > 1e-12 * std::max(std::fabs((double)sum), 1e-300);
    return SeriesEval{(double)sum, rem, warn};
}

BoundCheckReport curly_j_bound_check(int k, double alpha, const std::vector<double>& xs,
                                     double constant) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("curly_j_bound_check: k must be even and >= 4");
    if (!(alpha > 0.5 && alpha <= 1.0))
        throw std::invalid_argument("curly_j_bound_check: alpha must lie in (1/2, 1]");
    BoundCheckReport rep{0.0, constant, true, {}};
    const double expo = k * (alpha - 1.0) - 2.0 * alpha + std::pow((double)k, 2.0 * alpha - 1.0) / 2.0;
    const double envelope = std::pow((double)k, expo);
    for (double x : xs) {
        double ratio = 0.0;
        if (x > 0.0) {
            const SeriesEval cj = curly_j((unsigned)(k - 1), x, 96);
            ratio = cj.value / (std::pow(x, 4.0) * envelope * envelope);
        }
        if (ratio > rep.max_ratio) rep.max_ratio = ratio;
        if (ratio > constant) {
            rep.ok = false;
            rep.offenders.push_back(BoundCheckOffender{k, alpha, x, ratio});
        }
    }
    return rep;
}

BoundCheckReport curly_j_bound_check_default_grid(double constant) {
    BoundCheckReport rep{0.0, constant, true, {}};
    for (int k = 4; k <= 40; k += 2)
        for (double alpha : {0.55, 0.6, 0.75}) {
            const double n = std::exp((double)k / (k - 3));
            const double xmax = std::pow((double)k, alpha) / n;
            std::vector<double> xs;
            for (int i = 0; i <= 10; ++i) xs.push_back(xmax * i / 10.0);
            BoundCheckReport sub = curly_j_bound_check(k, alpha, xs, constant);
            rep.max_ratio = std::max(rep.max_ratio, sub.max_ratio);
            if (!sub.ok) rep.ok = false;
            rep.offenders.insert(rep.offenders.end(), sub.offenders.begin(), sub.offenders.end());
        }
    return rep;
}

SieveParams::SieveParams(int k_, std::uint64_t N_, double M_, double alpha_)
    : k(k_), N(N_), M(M_), alpha(alpha_) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("SieveParams: k must be even and >= 2");
    if (N < 1) throw std::invalid_argument("SieveParams: N must be >= 1");
    if (!(M > 1.0)) throw std::invalid_argument("SieveParams: M must be > 1");
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("SieveParams: alpha must lie in (1/2, 1)");
    n_param = (k > 2) ? std::exp((double)k / (k - 3)) : 1.0;
    eta = k * (1.0 - alpha) - std::pow((double)k, 2.0 * alpha - 1.0) / 2.0;
    constraint_ok = (double)N * std::pow((double)k, alpha) >= 2.0 * kPi * M * n_param;
}

double delta_bound_formula(int k, std::uint64_t N, double M, double alpha) {
    if (M < 0.0) throw std::invalid_argument("delta_bound_formula: M must be >= 0");
    if (k == 2) return M == 0.0 ? 1.0 : 1.0 + M * std::log(M) / (double)N;
    const double eta = k * (1.0 - alpha) - std::pow((double)k, 2.0 * alpha - 1.0) / 2.0;
    return 1.0 + M / ((double)N * std::pow((double)k, eta));
}

double delta_bound(const SieveParams& params) {
    if (params.k == 2) return delta_bound_formula(2, params.N, params.M, params.alpha);
    if (!params.constraint_ok)
        throw std::domain_error(
            "delta_bound: N k^alpha >= 2 pi M n fails; use complete_sieve_bound instead");
    return delta_bound_formula(params.k, params.N, params.M, params.alpha);
}

double complete_sieve_bound(double M, std::uint64_t N, int k, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("complete_sieve_bound: eps must lie in (0, 1)");
    if (N < 1) throw std::invalid_argument("complete_sieve_bound: N must be >= 1");
    if (!(M >= 0.0)) throw std::invalid_argument("complete_sieve_bound: M must be >= 0");
    if (k == 2) return M == 0.0 ? 1.0 : 1.0 + M * std::log(M) / (double)N;
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("complete_sieve_bound: k must be 2 or even >= 4");
    return 1.0 + M / ((double)N * std::pow((double)k, 1.0 - eps));
}

namespace {

// J_order(2x) summed in GMP floats; the working precision absorbs the
// ~e^(2x) internal cancellation of the alternating series.
double bessel_j_highprec(unsigned order, const mpf_class& x) {
    const double xd = x.get_d();
    const int bits = 208 + (int)(3.2 * xd);
    mpf_class t(1, bits);
    {
        mpf_class xf(x, bits);
        mpf_class tp(0, bits);
        mpf_pow_ui(tp.get_mpf_t(), xf.get_mpf_t(), order);
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), order);
        t = tp / mpf_class(fact, bits);
    }
    mpf_class x2(x * x, bits);
    mpf_class sum(0, bits);
    mpf_class thr(0, bits);
    mpf_div_2exp(thr.get_mpf_t(), mpf_class(1, bits).get_mpf_t(), (unsigned)(bits > 200 ? 180 : bits - 20));
    const unsigned lmin = (unsigned)xd + 2;
    for (unsigned l = 0; l < 100000; ++l) {
        sum += t;
        t *= x2;
        t /= -mpf_class((unsigned long)(l + 1)) * mpf_class((unsigned long)(order + l + 1));
        if (l >= lmin && abs(t) < thr) return sum.get_d();
    }
    throw numerical_error("bessel_j_highprec: series failed to terminate", sum.get_d());
}

// log of the Weil + leading-Bessel overestimate of the tail past C:
//   sum_{c > C} 2 pi c^-1 |S| |J|  <=  8 pi sqrt(g) (2 pi sqrt(mn))^(k-1)
//                                      / (Gamma(k) (k-2)) * C^-(k-2)
double log_tail_bound(std::uint64_t m, std::uint64_t n, int k, double C) {
    const double g = (double)std::gcd(m, n);
    const double lx = std::log(2.0 * kPi * std::sqrt((double)m * (double)n));
    return std::log(8.0 * kPi * std::sqrt(g)) + (k - 1) * lx - std::lgamma((double)k) -
           std::log((double)(k - 2)) - (k - 2) * std::log(C);
}

} // namespace

PeterssonTail petersson_tail(std::uint64_t m, std::uint64_t n, int k, std::uint64_t N,
                             std::uint64_t c_max, double tol) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("petersson_tail: k must be even and >= 4");
    if (m < 1 || n < 1 || N < 1) throw std::invalid_argument("petersson_tail: m, n, N must be >= 1");

    const double sqrt_mn = std::sqrt((double)m * (double)n);
    // validity of the leading-term J bound needs (2 pi sqrt(mn)/C)^2 <= k/2
    const double c_floor = 2.0 * kPi * sqrt_mn * std::sqrt(2.0 / (double)k);
    if (c_max == 0) {
        // closed-form solution of log_tail_bound(C) = log tol
        const double g = (double)std::gcd(m, n);
        const double lx = std::log(2.0 * kPi * sqrt_mn);
        const double lnC = (std::log(8.0 * kPi * std::sqrt(g)) + (k - 1) * lx -
                            std::lgamma((double)k) - std::log((double)(k - 2)) - std::log(tol)) /
                           (double)(k - 2);
        double C = std::max({(double)N, c_floor, std::exp(lnC)});
        if (C > 1e8)
            throw std::invalid_argument(
                "petersson_tail: automatic c_max exceeds 1e8; pass c_max or a looser tol");
        c_max = (std::uint64_t)(std::ceil(C / (double)N)) * N;
    }

    mpf_class pi_mpf(kPiDigits, 256);
    mpf_class sqrt_mn_mpf(0, 256);
    {
        mpf_class mn_mpf((double)0, 256);
        mn_mpf = mpf_class(mpz_class((unsigned long)m) * mpz_class((unsigned long)n), 256);
        sqrt_mn_mpf = sqrt(mn_mpf);
    }

    long double acc = 0.0L;
    for (std::uint64_t c = N; c <= c_max; c += N) {
        const double S = kloosterman(KloostermanQuery{(std::int64_t)m, (std::int64_t)n, c});
        mpf_class x(2 * pi_mpf * sqrt_mn_mpf / mpf_class((unsigned long)c), 256);
        const double J = bessel_j_highprec((unsigned)(k - 1), x);
        acc += (long double)S * J / (long double)c;
    }
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0; // i^(-k) for even k
    const double value = (double)(2.0L * kPiL * (long double)sign * acc);

    const double effective_C = std::max((double)c_max, c_floor);
    double bound = std::exp(log_tail_bound(m, n, k, effective_C));
    if ((double)c_max < c_floor) bound = 1e9; // J bound not valid that early; flag it
    return PeterssonTail{value, bound, c_max, bound >= tol};
}

RatioCheckReport petersson_ratio_check(int k, std::uint64_t max_mn, double tol) {
    if (dim_cusp_forms(k) != 1)
        throw std::domain_error("petersson_ratio_check: needs dim S_k(1) = 1");
    const int prec = std::max<int>(40, (int)max_mn + 2);
    const std::vector<EigenformRecord> forms = eigenforms(k, prec);
    const EigenformRecord& f = forms.at(0);

    const PeterssonTail t11 = petersson_tail(1, 1, k, 1, 0, 1e-11);
    const double r11 = 1.0 + t11.value;

    RatioCheckReport rep{true, 0.0, {}};
    for (std::uint64_t mm = 1; mm <= max_mn; ++mm)
        for (std::uint64_t nn = mm; nn <= max_mn; ++nn) {
            const PeterssonTail t = petersson_tail(mm, nn, k, 1, 0, 1e-11);
            const double r = (mm == nn ? 1.0 : 0.0) + t.value;
            const double err = std::fabs(r / r11 - f.lambda(mm) * f.lambda(nn));
            rep.max_error = std::max(rep.max_error, err);
            if (err > tol) {
                rep.ok = false;
                rep.failures.push_back(RatioCheckFailure{mm, nn, err});
            }
        }
    return rep;
}

double sieve_H(std::uint64_t M, double beta, std::uint64_t N,
               const std::function<double(std::uint64_t)>& delta_p,
               const std::function<std::vector<double>(std::uint64_t)>& alpha_p) {
    if (M < 1) throw std::invalid_argument("sieve_H: M must be >= 1");
    if (!(beta > 1.0)) throw std::invalid_argument("sieve_H: beta must be > 1");

    std::vector<std::uint64_t> ps;
    std::vector<double> factors;
    for (std::uint64_t p : primes_up_to((std::uint64_t)beta)) {
        if (N % p == 0) continue;
        if (p > M) break;
        const double dp = delta_p(p);
        if (!(dp > 0.0)) throw std::domain_error("sieve_H: delta_p must be > 0");
        const std::vector<double> al = alpha_p(p);
        if (al.empty()) throw std::domain_error("sieve_H: empty amplifier coefficient list");
        double s2 = 0.0;
        for (double a : al) s2 += a * a;
        if (!(s2 > 0.0)) throw std::domain_error("sieve_H: amplifier coefficients are all zero");
        ps.push_back(p);
        factors.push_back(dp * dp / s2);
    }

    double total = 0.0;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t prod, double val) -> void {
        total += val;
        for (std::size_t j = i; j < ps.size(); ++j) {
            if (ps[j] > M / prod) break;
            self(self, j + 1, prod * ps[j], val * factors[j]);
        }
    };
    rec(rec, 0, 1, 1.0);
    return total;
}

double sieve_H_amplifier(std::uint64_t M, double beta, std::uint64_t N) {
    return sieve_H(
        M, beta, N, [](std::uint64_t) { return 0.25; },
        [](std::uint64_t) { return std::vector<double>{0.5, 0.25}; });
}

} // namespace heckesign
