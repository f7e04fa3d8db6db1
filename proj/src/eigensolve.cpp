#include "heckesign/eigensolve.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "heckesign/common.hpp"

namespace heckesign {

namespace {

using Mat = std::vector<std::vector<double>>;

void balance(Mat& a) {
    const int n = (int)a.size();
    const double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::fabs(a[j][i]);
                    r += std::fabs(a[i][j]);
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0, s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (int j = 0; j < n; ++j) a[i][j] *= g;
                    for (int j = 0; j < n; ++j) a[j][i] *= f;
                }
            }
        }
    }
}

void hessenberg(Mat& a) {
    const int n = (int)a.size();
    for (int m = 1; m < n - 1; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; ++j)
            if (std::fabs(a[j][m - 1]) > std::fabs(x)) {
                x = a[j][m - 1];
                i = j;
            }
        if (i != m) {
            for (int j = m - 1; j < n; ++j) std::swap(a[i][j], a[m][j]);
            for (int j = 0; j < n; ++j) std::swap(a[j][i], a[j][m]);
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; ++i) {
                double y = a[i][m - 1];
                if (y != 0.0) {
                    y /= x;
                    a[i][m - 1] = y;
                    for (int j = m; j < n; ++j) a[i][j] -= y * a[m][j];
                    for (int j = 0; j < n; ++j) a[j][m] += y * a[j][i];
                }
            }
        }
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr).
void hqr(Mat& a, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = (int)a.size();
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a[i][j]);
    if (anorm == 0.0) return; // zero matrix

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::fabs(a[l - 1][l - 1]) + std::fabs(a[l][l]);
                if (s == 0.0) s = anorm;
                if (std::fabs(a[l][l - 1]) + s == s) {
                    a[l][l - 1] = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a[nn][nn];
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                double y = a[nn - 1][nn - 1];
                double w = a[nn][nn - 1] * a[nn - 1][nn];
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == 30)
                        throw numerical_error("hqr: too many QR iterations", x + t);
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a[i][i] -= x;
                        double s = std::fabs(a[nn][nn - 1]) + std::fabs(a[nn - 1][nn - 2]);
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0, q = 0, r = 0, z = 0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a[m][m];
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - rr - ss;
                        r = a[m + 2][m + 1];
                        double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        double u = std::fabs(a[m][m - 1]) * (std::fabs(q) + std::fabs(r));
                        double v = std::fabs(p) *
                                   (std::fabs(a[m - 1][m - 1]) + std::fabs(z) +
                                    std::fabs(a[m + 1][m + 1]));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a[i][i - 2] = 0.0;
                        if (i > m + 2) a[i][i - 3] = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if (k != nn - 1) r = a[k + 2][k - 1];
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) a[k][k - 1] = -a[k][k - 1];
                            } else
                                a[k][k - 1] = -s * x;
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                double pp = a[k][j] + q * a[k + 1][j];
                                if (k != nn - 1) {
                                    pp += r * a[k + 2][j];
                                    a[k + 2][j] -= pp * z;
                                }
                                a[k + 1][j] -= pp * y;
                                a[k][j] -= pp * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                double pp = x * a[i][k] + y * a[i][k + 1];
                                if (k != nn - 1) {
                                    pp += z * a[i][k + 2];
                                    a[i][k + 2] -= pp * r;
                                }
                                a[i][k + 1] -= pp * q;
                                a[i][k] -= pp;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

} // namespace

std::vector<std::pair<double, double>> dense_eigenvalues(std::vector<std::vector<double>> a) {
    const int n = (int)a.size();
    if (n == 0) return {};
    for (const auto& row : a)
        if ((int)row.size() != n) throw std::invalid_argument("dense_eigenvalues: non-square matrix");
    if (n == 1) return {{a[0][0], 0.0}};
    balance(a);
    hessenberg(a);
    std::vector<double> wr, wi;
    hqr(a, wr, wi);
    std::vector<std::pair<double, double>> out(n);
    for (int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
    return out;
}

namespace mp {

Vector mat_vec(const Matrix& A, const Vector& x) {
    const std::size_t n = A.size();
    Vector y(n, mpf_class(0, x.empty() ? 128 : x[0].get_prec()));
    for (std::size_t i = 0; i < n; ++i) {
        mpf_class acc(0, x[0].get_prec());
        for (std::size_t j = 0; j < n; ++j) acc += A[i][j] * x[j];
        y[i] = acc;
    }
    return y;
}

namespace {

// Solve (A - lambda I) x = b by LU with partial pivoting.  A tiny pivot is
// nudged rather than failed: inverse iteration wants near-singular systems.
Vector solve_shifted(const Matrix& A, const mpf_class& lambda, Vector b, int prec_bits) {
    const std::size_t n = A.size();
    Matrix m(n, Vector(n, mpf_class(0, prec_bits)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = A[i][j];
        m[i][i] -= lambda;
    }
    mpf_class tiny(1e-60, prec_bits);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            mpf_swap(b[piv].get_mpf_t(), b[c].get_mpf_t());
        }
        if (abs(m[c][c]) < tiny) m[c][c] = (sgn(m[c][c]) >= 0) ? tiny : -tiny;
        for (std::size_t r = c + 1; r < n; ++r) {
            mpf_class f = m[r][c] / m[c][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            b[r] -= f * b[c];
        }
    }
    Vector x(n, mpf_class(0, prec_bits));
    for (std::size_t i = n; i-- > 0;) {
        mpf_class acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

} // namespace

EigenPair rayleigh_refine(const Matrix& A, double lambda0, int iters, int prec_bits) {
    const std::size_t n = A.size();
    mpf_class lambda(lambda0, prec_bits);
    Vector v(n, mpf_class(0, prec_bits));
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * (double)(i + 1);
    if (n == 1) return EigenPair{mpf_class(A[0][0], prec_bits), {mpf_class(1, prec_bits)}};

    for (int it = 0; it < iters; ++it) {
        Vector w = solve_shifted(A, lambda, v, prec_bits);
        // normalise by the largest component
        mpf_class mx(0, prec_bits);
        for (const auto& c : w)
            if (abs(c) > mx) mx = abs(c);
        if (mx == 0) throw numerical_error("rayleigh_refine: zero iterate", lambda0);
        for (auto& c : w) c /= mx;
        v = w;
        // Rayleigh quotient update
        Vector Av = mat_vec(A, v);
        mpf_class num(0, prec_bits), den(0, prec_bits);
        for (std::size_t i = 0; i < n; ++i) {
            num += v[i] * Av[i];
            den += v[i] * v[i];
        }
        lambda = num / den;
    }
    return EigenPair{lambda, v};
}

} // namespace mp
} // namespace heckesign
