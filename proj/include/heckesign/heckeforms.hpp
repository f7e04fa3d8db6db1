// Exact level-1 modular form engine: Victor-Miller-style echelon bases of
// S_k(1) over the integers, Hecke operator matrices, exact traces, and
// numerically embedded eigenforms with normalised eigenvalues and their
// first sign changes.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "heckesign/qexpansion.hpp"

namespace heckesign {

/// Matrix of T_n on the echelon cusp basis of S_k(1).  Entries are exact
/// rationals (integers in this basis, kept as mpq for the contract).
struct HeckeMatrix {
    std::uint64_t n;
    int k;
    std::vector<std::vector<mpq_class>> m;

    int dim() const { return (int)m.size(); }
    HeckeMatrix product(const HeckeMatrix& o) const;
    friend bool operator==(const HeckeMatrix&, const HeckeMatrix&) = default;
};

/// One numerically embedded eigenform of weight k.
struct EigenformRecord {
    int k = 0;
    int index = 0;         // position when sorted by lambda(2)
    double residual = 0.0; // max_n ||T_n v - lambda(n) v||_inf / ||v||_inf
    std::uint64_t p_f = 0; // least prime with lambda(p) < 0
    std::uint64_t n_f = 0; // least integer with lambda(n) < 0

    /// lambda(n) for 1 <= n <= prec, read from recovered coefficients.
    double lambda(std::uint64_t n) const;
    int prec() const { return (int)lambda_.size() - 1; }

    /// lambda extended to arbitrary n by the Hecke recursion at prime powers
    /// and multiplicativity across coprime factors.  Needs every prime
    /// factor of n to be <= prec.
    double lambda_at(std::uint64_t n) const;

    /// Eigenvalue angle: lambda(p) = 2 cos theta(p).
    double theta(std::uint64_t p) const;

    std::vector<double> lambda_; // index n, [0] unused
};

/// Shared engine for a fixed precision: power ladders for E_4 and Delta,
/// per-weight basis memo, and the optional on-disk coefficient cache.
/// All public methods are safe to call from several threads.
class HeckeEngine {
public:
    explicit HeckeEngine(int prec, std::string cache_dir = "");

    int prec() const { return prec_; }

    /// Echelonised integer basis of S_k(1): basis[i] = q^(i+1) + O(q^(dim+1)).
    const std::vector<QExpansion>& basis(int k);

    HeckeMatrix hecke_matrix(std::uint64_t n, int k);
    mpq_class trace_tn(std::uint64_t n, int k);
    double trace_tn_star(std::uint64_t n, int k);

    std::vector<EigenformRecord> eigenforms(int k);

private:
    const QExpansion& e4_power(int a);
    const QExpansion& delta_power(int j);
    std::vector<QExpansion> build_basis(int k);

    int prec_;
    std::string cache_dir_;
    std::mutex mu_;
    std::deque<QExpansion> e4_powers_;    // e4_powers_[a] = E_4^a
    std::deque<QExpansion> delta_powers_; // delta_powers_[j] = Delta^j
    QExpansion e6_;
    std::map<int, std::vector<QExpansion>> bases_;
};

// Free-function forms of the module operations (one-shot engine inside).
std::vector<QExpansion> cuspform_basis(int k, int prec);
HeckeMatrix hecke_matrix(std::uint64_t n, int k, int prec);
mpq_class trace_tn(std::uint64_t n, int k, int prec);
double trace_tn_star(std::uint64_t n, int k, int prec);
std::vector<EigenformRecord> eigenforms(int k, int prec);

} // namespace heckesign
