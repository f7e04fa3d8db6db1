// Exact integer q-series truncated at a fixed precision: the building
// blocks E_4, E_6, Delta and their products, plus the plain-text coefficient
// cache shared by the eigenform engine and the CLI.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace heckesign {

/// Truncated integer q-expansion a(0) + a(1) q + ... + a(prec) q^prec.
class QExpansion {
public:
    QExpansion() : weight_(0) {}
    QExpansion(int weight, std::vector<mpz_class> coeffs);

    int weight() const { return weight_; }
    int prec() const { return (int)coeffs_.size() - 1; }
    const mpz_class& a(int n) const { return coeffs_.at((std::size_t)n); }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }

    QExpansion operator+(const QExpansion& o) const;
    QExpansion operator-(const QExpansion& o) const;
    QExpansion operator*(const QExpansion& o) const; // truncated at min prec
    QExpansion times(const mpz_class& c) const;
    /// Exact division by an integer; throws std::domain_error on a remainder.
    QExpansion divided_by(const mpz_class& c) const;

    friend bool operator==(const QExpansion&, const QExpansion&) = default;

private:
    int weight_;
    std::vector<mpz_class> coeffs_;
};

/// E_4 = 1 + 240 sum sigma_3(n) q^n or E_6 = 1 - 504 sum sigma_5(n) q^n.
/// Only weights 4 and 6 are supported; prec >= 0.
QExpansion eisenstein(int weight, int prec);

/// Delta = (E_4^3 - E_6^2)/1728, exact integers.
QExpansion delta(int prec);

/// dim S_k(SL_2(Z)) for even k >= 0 by the classical formula.
int dim_cusp_forms(int k);

// -- plain-text coefficient cache ------------------------------------------
// One file per (kind, k, prec): header "v1 <kind> <k> <prec>", then one
// decimal integer per line.  Loading checks the header and the line count.

std::string cache_file_name(const std::string& kind, int k, int prec);
void cache_store(const std::string& dir, const std::string& kind, int k, int prec,
                 const std::vector<mpz_class>& coeffs);
std::optional<std::vector<mpz_class>> cache_load(const std::string& dir, const std::string& kind,
                                                 int k, int prec);

} // namespace heckesign
