#include "heckesign/qexpansion.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heckesign {

QExpansion::QExpansion(int weight, std::vector<mpz_class> coeffs)
    : weight_(weight), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QExpansion: empty coefficient list");
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
    const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
    std::vector<mpz_class> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = coeffs_[i] + o.coeffs_[i];
    return QExpansion(weight_, std::move(r));
}

QExpansion QExpansion::operator-(const QExpansion& o) const {
    const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
    std::vector<mpz_class> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = coeffs_[i] - o.coeffs_[i];
    return QExpansion(weight_, std::move(r));
}

QExpansion QExpansion::operator*(const QExpansion& o) const {
    const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
    std::vector<mpz_class> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (o.coeffs_[j] == 0) continue;
            mpz_addmul(r[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
        }
    }
    return QExpansion(weight_ + o.weight_, std::move(r));
}

QExpansion QExpansion::times(const mpz_class& c) const {
    std::vector<mpz_class> r(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * c;
    return QExpansion(weight_, std::move(r));
}

QExpansion QExpansion::divided_by(const mpz_class& c) const {
    if (c == 0) throw std::domain_error("QExpansion::divided_by: zero divisor");
    std::vector<mpz_class> r(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), coeffs_[i].get_mpz_t(), c.get_mpz_t());
        if (rem != 0) throw std::domain_error("QExpansion::divided_by: inexact division");
        r[i] = q;
    }
    return QExpansion(weight_, std::move(r));
}

QExpansion eisenstein(int weight, int prec) {
    if (weight != 4 && weight != 6)
        throw std::domain_error("eisenstein: only weights 4 and 6 are built in");
    if (prec < 0) throw std::invalid_argument("eisenstein: prec must be >= 0");
    const int e = weight - 1;
    const long scale = (weight == 4) ? 240 : -504;
    std::vector<mpz_class> sigma((std::size_t)prec + 1, 0);
    for (int d = 1; d <= prec; ++d) {
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), (unsigned long)d, (unsigned long)e);
        for (int n = d; n <= prec; n += d) sigma[(std::size_t)n] += dp;
    }
    std::vector<mpz_class> c((std::size_t)prec + 1);
    c[0] = 1;
    for (int n = 1; n <= prec; ++n) c[(std::size_t)n] = scale * sigma[(std::size_t)n];
    return QExpansion(weight, std::move(c));
}

QExpansion delta(int prec) {
    QExpansion e4 = eisenstein(4, prec);
    QExpansion e6 = eisenstein(6, prec);
    QExpansion num = e4 * e4 * e4 - e6 * e6;
    QExpansion d = num.divided_by(1728);
    return QExpansion(12, d.coefficients());
}

int dim_cusp_forms(int k) {
    if (k % 2 != 0 || k < 0) throw std::invalid_argument("dim_cusp_forms: k must be even >= 0");
    if (k < 12) return 0;
    return k / 12 - (k % 12 == 2 ? 1 : 0);
}

std::string cache_file_name(const std::string& kind, int k, int prec) {
    return kind + "_" + std::to_string(k) + "_" + std::to_string(prec) + ".txt";
}

void cache_store(const std::string& dir, const std::string& kind, int k, int prec,
                 const std::vector<mpz_class>& coeffs) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + cache_file_name(kind, k, prec);
    std::ofstream out(path + ".tmp");
    if (!out) throw std::runtime_error("cache_store: cannot open " + path);
    out << "v1 " << kind << " " << k << " " << prec << "\n";
    for (const mpz_class& c : coeffs) out << c.get_str() << "\n";
    out.close();
    std::filesystem::rename(path + ".tmp", path);
}

std::optional<std::vector<mpz_class>> cache_load(const std::string& dir, const std::string& kind,
                                                 int k, int prec) {
    const std::string path = dir + "/" + cache_file_name(kind, k, prec);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::ostringstream want;
    want << "v1 " << kind << " " << k << " " << prec;
    if (header != want.str()) return std::nullopt;
    std::vector<mpz_class> coeffs;
    coeffs.reserve((std::size_t)prec + 1);
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            coeffs.emplace_back(line);
        }
    } catch (const std::invalid_argument&) {
        return std::nullopt; // corrupted file: treat as a miss and recompute
    }
    if ((int)coeffs.size() != prec + 1) return std::nullopt;
    return coeffs;
}

} // namespace heckesign
