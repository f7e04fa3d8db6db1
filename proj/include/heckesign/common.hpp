// Shared constants and error types.
#pragma once

#include <stdexcept>
#include <string>

namespace heckesign {

// pi to long double precision; double-rounded copies where the API is double.
inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;
inline constexpr double kPi = 3.141592653589793238;

/// Thrown when an iterative numeric routine fails to reach its target
/// accuracy.  Carries the best estimate obtained so far.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

/// Thrown when the T_2 spectrum of some weight fails the simplicity check.
class degenerate_spectrum_error : public std::runtime_error {
public:
    explicit degenerate_spectrum_error(int weight_, double gap_)
        : std::runtime_error("degenerate T_2 spectrum at weight " +
                             std::to_string(weight_) + " (min gap " +
                             std::to_string(gap_) + ")"),
          weight(weight_), gap(gap_) {}
    int weight;
    double gap;
};

} // namespace heckesign
