#include "heckesign/heckeforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heckesign/common.hpp"
#include "heckesign/eigensolve.hpp"
#include "heckesign/primes.hpp"

namespace heckesign {

namespace {
constexpr int kMpfBits = 192;
constexpr double kSeparation = 1e-6; // simple-spectrum threshold for T_2*
} // namespace

HeckeMatrix HeckeMatrix::product(const HeckeMatrix& o) const {
    if (dim() != o.dim() || k != o.k)
        throw std::invalid_argument("HeckeMatrix::product: incompatible matrices");
    const int d = dim();
    HeckeMatrix r{n * o.n, k, std::vector<std::vector<mpq_class>>(
                                  (std::size_t)d, std::vector<mpq_class>((std::size_t)d, 0))};
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) {
            if (m[(std::size_t)i][(std::size_t)l] == 0) continue;
            for (int j = 0; j < d; ++j)
                r.m[(std::size_t)i][(std::size_t)j] +=
                    m[(std::size_t)i][(std::size_t)l] * o.m[(std::size_t)l][(std::size_t)j];
        }
    return r;
}

double EigenformRecord::lambda(std::uint64_t n) const {
    if (n < 1 || n >= lambda_.size())
        throw std::out_of_range("EigenformRecord::lambda: n outside stored precision");
    return lambda_[(std::size_t)n];
}

double EigenformRecord::lambda_at(std::uint64_t n) const {
    if (n < 1) throw std::out_of_range("EigenformRecord::lambda_at: n must be >= 1");
    if (n < lambda_.size()) return lambda_[(std::size_t)n];
    double out = 1.0;
    for (auto [p, e] : factorize(n)) {
        if (p >= lambda_.size())
            throw std::out_of_range("EigenformRecord::lambda_at: prime factor beyond precision");
        const double lp = lambda_[(std::size_t)p];
        // lambda(p^(r+1)) = lambda(p) lambda(p^r) - lambda(p^(r-1))
        double prev = 1.0, cur = lp;
        for (unsigned r = 1; r < e; ++r) {
            const double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
        }
        out *= cur;
    }
    return out;
}

double EigenformRecord::theta(std::uint64_t p) const {
    const double half = std::clamp(lambda(p) / 2.0, -1.0, 1.0);
    return std::acos(half);
}

HeckeEngine::HeckeEngine(int prec, std::string cache_dir)
    : prec_(prec), cache_dir_(std::move(cache_dir)), e6_(eisenstein(6, prec)) {
    if (prec < 1) throw std::invalid_argument("HeckeEngine: prec must be >= 1");
    std::vector<mpz_class> one((std::size_t)prec + 1, 0);
    one[0] = 1;
    e4_powers_.emplace_back(0, one);
    delta_powers_.emplace_back(0, std::move(one));
}

const QExpansion& HeckeEngine::e4_power(int a) {
    while ((int)e4_powers_.size() <= a) {
        if (e4_powers_.size() == 1)
            e4_powers_.push_back(eisenstein(4, prec_));
        else
            e4_powers_.push_back(e4_powers_.back() * e4_powers_[1]);
    }
    return e4_powers_[(std::size_t)a];
}

const QExpansion& HeckeEngine::delta_power(int j) {
    while ((int)delta_powers_.size() <= j) {
        if (delta_powers_.size() == 1)
            delta_powers_.push_back(delta(prec_));
        else
            delta_powers_.push_back(delta_powers_.back() * delta_powers_[1]);
    }
    return delta_powers_[(std::size_t)j];
}

std::vector<QExpansion> HeckeEngine::build_basis(int k) {
    const int d = dim_cusp_forms(k);
    std::vector<QExpansion> fs;
    fs.reserve((std::size_t)d);

    if (!cache_dir_.empty()) {
        bool all = true;
        std::vector<QExpansion> loaded;
        for (int i = 0; i < d; ++i) {
            auto c = cache_load(cache_dir_, "cusp" + std::to_string(i), k, prec_);
            if (!c) {
                all = false;
                break;
            }
            loaded.emplace_back(k, std::move(*c));
        }
        // echelon sanity on loaded data; a stale or corrupt cache falls through
        for (int i = 1; all && i <= d; ++i)
            for (int m = 1; m <= d; ++m)
                if (loaded[(std::size_t)i - 1].a(m) != (m == i ? 1 : 0)) all = false;
        if (all && d > 0) return loaded;
    }

    for (int j = 1; j <= d; ++j) {
        const int r = k - 12 * j;
        const int b = (r % 4 == 2) ? 1 : 0;
        const int a = (r - 6 * b) / 4;
        QExpansion f = [&] {
            std::lock_guard<std::mutex> lock(mu_);
            return delta_power(j) * e4_power(a);
        }();
        if (b) f = f * e6_;
        fs.push_back(std::move(f));
    }
    // reduce above the diagonal; multipliers are integers, so the basis stays
    // integral with basis[i](m) = delta_{i+1,m} for m <= d
    for (int j = 2; j <= d; ++j)
        for (int i = 1; i < j; ++i) {
            const mpz_class c = fs[(std::size_t)i - 1].a(j);
            if (c != 0) fs[(std::size_t)i - 1] = fs[(std::size_t)i - 1] - fs[(std::size_t)j - 1].times(c);
        }
    for (int i = 1; i <= d; ++i)
        for (int m = 1; m <= d; ++m)
            if (fs[(std::size_t)i - 1].a(m) != (m == i ? 1 : 0))
                throw numerical_error("build_basis: echelon check failed", (double)k);

    if (!cache_dir_.empty())
        for (int i = 0; i < d; ++i)
            cache_store(cache_dir_, "cusp" + std::to_string(i), k, prec_,
                        fs[(std::size_t)i].coefficients());
    return fs;
}

const std::vector<QExpansion>& HeckeEngine::basis(int k) {
    if (k % 2 != 0 || k < 4) throw std::invalid_argument("basis: k must be even and >= 4");
    if (prec_ < dim_cusp_forms(k) + 2)
        throw std::invalid_argument("basis: prec must be >= dim S_k + 2");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bases_.find(k);
        if (it != bases_.end()) return it->second;
    }
    std::vector<QExpansion> fs = build_basis(k);
    std::lock_guard<std::mutex> lock(mu_);
    return bases_.emplace(k, std::move(fs)).first->second;
}

HeckeMatrix HeckeEngine::hecke_matrix(std::uint64_t n, int k) {
    const int d = dim_cusp_forms(k);
    if (n < 1) throw std::invalid_argument("hecke_matrix: n must be >= 1");
    if (prec_ < (int)n * (d + 2))
        throw std::invalid_argument("hecke_matrix: prec must be >= n (dim + 2)");
    const auto& fs = basis(k);
    HeckeMatrix M{n, k, std::vector<std::vector<mpq_class>>(
                            (std::size_t)d, std::vector<mpq_class>((std::size_t)d, 0))};
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            // (T_n f)(i) = sum over d | (i, n) of d^(k-1) a_f(i n / d^2)
            mpz_class acc = 0;
            for (std::uint64_t e = 1; e <= std::min<std::uint64_t>((std::uint64_t)i, n); ++e) {
                if (i % e || n % e) continue;
                mpz_class ep;
                mpz_ui_pow_ui(ep.get_mpz_t(), (unsigned long)e, (unsigned long)(k - 1));
                acc += ep * fs[(std::size_t)j - 1].a((int)((std::uint64_t)i * n / (e * e)));
            }
            M.m[(std::size_t)i - 1][(std::size_t)j - 1] = mpq_class(acc);
        }
    return M;
}

mpq_class HeckeEngine::trace_tn(std::uint64_t n, int k) {
    HeckeMatrix M = hecke_matrix(n, k);
    mpq_class t = 0;
    for (int i = 0; i < M.dim(); ++i) t += M.m[(std::size_t)i][(std::size_t)i];
    return t;
}

double HeckeEngine::trace_tn_star(std::uint64_t n, int k) {
    const mpq_class t = trace_tn(n, k);
    mpf_class num(t, kMpfBits);
    mpz_class nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), (unsigned long)n, (unsigned long)(k - 1));
    mpf_class den(nk, kMpfBits);
    den = sqrt(den);
    return mpf_class(num / den).get_d();
}

namespace {

// b scaled by (j / base)^((k-1)/2) with everything at extended precision;
// S below holds sqrt(t^(k-1)) for 1 <= t <= prec.
std::vector<mpf_class> sqrt_power_table(int upto, int k) {
    std::vector<mpf_class> S((std::size_t)upto + 1, mpf_class(0, kMpfBits));
    for (int t = 1; t <= upto; ++t) {
        mpz_class tk;
        mpz_ui_pow_ui(tk.get_mpz_t(), (unsigned long)t, (unsigned long)(k - 1));
        mpf_class v(tk, kMpfBits);
        S[(std::size_t)t] = sqrt(v);
    }
    return S;
}

// Normalised matrix of T_n: entries M[i][j] * S_j / (S_i * S_n); its
// eigenvalues are the lambda_f(n) and its eigenvectors (lambda_f(1..d)).
mp::Matrix normalized_matrix(const HeckeMatrix& M, const std::vector<mpf_class>& S,
                             std::uint64_t n) {
    const int d = M.dim();
    mpf_class Sn(0, kMpfBits);
    {
        mpz_class nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), (unsigned long)n, (unsigned long)(M.k - 1));
        Sn = sqrt(mpf_class(nk, kMpfBits));
    }
    mp::Matrix A((std::size_t)d, mp::Vector((std::size_t)d, mpf_class(0, kMpfBits)));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            mpf_class v(M.m[(std::size_t)i - 1][(std::size_t)j - 1], kMpfBits);
            A[(std::size_t)i - 1][(std::size_t)j - 1] =
                v * S[(std::size_t)j] / (S[(std::size_t)i] * Sn);
        }
    return A;
}

std::vector<std::vector<double>> to_double_matrix(const mp::Matrix& A) {
    const std::size_t d = A.size();
    std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out[i][j] = A[i][j].get_d();
    return out;
}

} // namespace

std::vector<EigenformRecord> HeckeEngine::eigenforms(int k) {
    const int d = dim_cusp_forms(k);
    if (d == 0) return {};
    if (prec_ < 5 * (d + 2))
        throw std::invalid_argument("eigenforms: prec must be >= 5 (dim + 2) for the residual checks");

    const auto& fs = basis(k);
    const std::vector<mpf_class> S = sqrt_power_table(prec_, k);
    const HeckeMatrix M2 = hecke_matrix(2, k);
    const mp::Matrix A2 = normalized_matrix(M2, S, 2);

    // double-precision seeds for the spectrum of T_2*
    std::vector<std::pair<double, double>> seeds = dense_eigenvalues(to_double_matrix(A2));
    for (auto& [re, im] : seeds)
        if (std::fabs(im) > 1e-7 * (1.0 + std::fabs(re)))
            throw degenerate_spectrum_error(k, std::fabs(im));
    std::sort(seeds.begin(), seeds.end());
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i)
        if (seeds[i + 1].first - seeds[i].first < kSeparation)
            throw degenerate_spectrum_error(k, seeds[i + 1].first - seeds[i].first);

    const mp::Matrix A3 = normalized_matrix(hecke_matrix(3, k), S, 3);
    const mp::Matrix A5 = normalized_matrix(hecke_matrix(5, k), S, 5);

    std::vector<EigenformRecord> records;
    records.reserve((std::size_t)d);
    for (int idx = 0; idx < d; ++idx) {
        mp::EigenPair pair = mp::rayleigh_refine(A2, seeds[(std::size_t)idx].first, 4, kMpfBits);
        // refinement must stay on the eigenvalue it was seeded with
        if (std::fabs(pair.lambda.get_d() - seeds[(std::size_t)idx].first) > 1e-8)
            throw numerical_error("eigenforms: Rayleigh refinement drifted off its seed",
                                  pair.lambda.get_d());
        // normalise so lambda(1) = 1
        mpf_class mx(0, kMpfBits);
        for (const auto& c : pair.v)
            if (abs(c) > mx) mx = abs(c);
        if (abs(pair.v[0]) < 1e-8 * mx)
            throw numerical_error("eigenforms: leading eigenvector entry vanished", (double)k);
        mp::Vector v((std::size_t)d, mpf_class(0, kMpfBits));
        for (int j = 0; j < d; ++j) v[(std::size_t)j] = pair.v[(std::size_t)j] / pair.v[0];

        // lambda(n) = (sum_j v_j S_j b_j(n)) / S_n for every stored n
        mp::Vector u((std::size_t)d, mpf_class(0, kMpfBits));
        for (int j = 1; j <= d; ++j) u[(std::size_t)j - 1] = v[(std::size_t)j - 1] * S[(std::size_t)j];
        EigenformRecord rec;
        rec.k = k;
        rec.lambda_.assign((std::size_t)prec_ + 1, 0.0);
        for (int n = 1; n <= prec_; ++n) {
            mpf_class acc(0, kMpfBits);
            for (int j = 1; j <= d; ++j) {
                if (fs[(std::size_t)j - 1].a(n) == 0) continue;
                acc += u[(std::size_t)j - 1] * mpf_class(fs[(std::size_t)j - 1].a(n), kMpfBits);
            }
            rec.lambda_[(std::size_t)n] = mpf_class(acc / S[(std::size_t)n]).get_d();
        }

        // residual over T_2, T_3, T_5 against the recovered eigenvalues
        double residual = 0.0;
        for (const auto& [An, nval] :
             {std::pair<const mp::Matrix*, std::uint64_t>{&A2, 2}, {&A3, 3}, {&A5, 5}}) {
            mp::Vector Av = mp::mat_vec(*An, v);
            const double ln = rec.lambda_[(std::size_t)nval];
            double worst = 0.0, scale = 0.0;
            for (int i = 0; i < d; ++i) {
                const double ri = mpf_class(Av[(std::size_t)i] - ln * v[(std::size_t)i]).get_d();
                worst = std::max(worst, std::fabs(ri));
                scale = std::max(scale, std::fabs(v[(std::size_t)i].get_d()));
            }
            residual = std::max(residual, worst / scale);
        }
        rec.residual = residual;
        if (!(residual <= 1e-8))
            throw numerical_error("eigenforms: residual above 1e-8 at weight " + std::to_string(k),
                                  residual);

        // first sign changes and the Deligne bound
        for (int n = 2; n <= prec_; ++n)
            if (rec.lambda_[(std::size_t)n] < 0.0) {
                rec.n_f = (std::uint64_t)n;
                break;
            }
        for (std::uint64_t p : primes_up_to((std::uint64_t)prec_))
            if (rec.lambda_[(std::size_t)p] < 0.0) {
                rec.p_f = p;
                break;
            }
        if (rec.n_f == 0 || rec.p_f == 0)
            throw numerical_error("eigenforms: no sign change within precision", (double)k);
        for (std::uint64_t p : primes_up_to((std::uint64_t)prec_))
            if (std::fabs(rec.lambda_[(std::size_t)p]) > 2.0 + 1e-6)
                throw numerical_error("eigenforms: Deligne bound violated", rec.lambda_[(std::size_t)p]);

        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const EigenformRecord& a, const EigenformRecord& b) {
                  return a.lambda_[2] < b.lambda_[2];
              });
    for (int i = 0; i < d; ++i) records[(std::size_t)i].index = i;
    return records;
}

std::vector<QExpansion> cuspform_basis(int k, int prec) {
    if (dim_cusp_forms(k) == 0) {
        if (prec < dim_cusp_forms(k) + 2)
            throw std::invalid_argument("cuspform_basis: prec too small");
        return {};
    }
    HeckeEngine engine(prec);
    return engine.basis(k);
}

HeckeMatrix hecke_matrix(std::uint64_t n, int k, int prec) {
    HeckeEngine engine(prec);
    return engine.hecke_matrix(n, k);
}

mpq_class trace_tn(std::uint64_t n, int k, int prec) {
    HeckeEngine engine(prec);
    return engine.trace_tn(n, k);
}

double trace_tn_star(std::uint64_t n, int k, int prec) {
    HeckeEngine engine(prec);
    return engine.trace_tn_star(n, k);
}

std::vector<EigenformRecord> eigenforms(int k, int prec) {
    HeckeEngine engine(prec);
    return engine.eigenforms(k);
}

} // namespace heckesign
