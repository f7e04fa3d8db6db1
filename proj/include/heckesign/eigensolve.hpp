// Small dense real eigensolver: balanced Hessenberg QR for eigenvalue
// seeds, then inverse/Rayleigh iteration in GMP floats for refined
// eigenpairs.  Sized for the Hecke matrices here (dim <= ~30).
#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace heckesign {

/// All eigenvalues (re, im) of a dense real matrix, unordered.
/// Throws numerical_error if the QR iteration fails to converge.
std::vector<std::pair<double, double>> dense_eigenvalues(std::vector<std::vector<double>> a);

namespace mp {

using Matrix = std::vector<std::vector<mpf_class>>;
using Vector = std::vector<mpf_class>;

struct EigenPair {
    mpf_class lambda;
    Vector v;
};

/// Refine an approximate real eigenvalue of A into an eigenpair by inverse
/// iteration with Rayleigh-quotient updates, all at prec_bits precision.
EigenPair rayleigh_refine(const Matrix& A, double lambda0, int iters, int prec_bits);

/// y = A x.
Vector mat_vec(const Matrix& A, const Vector& x);

} // namespace mp
} // namespace heckesign
