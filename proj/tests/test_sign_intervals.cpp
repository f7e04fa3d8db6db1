#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heckesign/sign_intervals.hpp"

using namespace heckesign;

namespace {

// three-term recurrence oracle: U_0 = 1, U_1 = 2 cos, U_{j+1} = 2 cos U_j - U_{j-1}
double chebyshev_by_recurrence(unsigned n, double theta) {
    double prev = 1.0, cur = 2.0 * std::cos(theta);
    if (n == 0) return prev;
    for (unsigned j = 1; j < n; ++j) {
        const double nxt = 2.0 * std::cos(theta) * cur - prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

unsigned exponent_by_enumeration(std::uint64_t m, std::uint64_t p) {
    unsigned a = 0;
    unsigned __int128 pw = p;
    while (pw < m) {
        ++a;
        pw *= p;
    }
    return a;
}

} // namespace

TEST_CASE("chebyshev_U examples") {
    CHECK(chebyshev_U(2, kPi / 2) == doctest::Approx(-1.0).epsilon(1e-14));
    for (double t : {0.0, 0.3, 1.2, kPi}) CHECK(chebyshev_U(0, t) == doctest::Approx(1.0));
    CHECK(chebyshev_U(5, 0.7) ==
          doctest::Approx(chebyshev_by_recurrence(5, 0.7)).epsilon(1e-12));
}

TEST_CASE("chebyshev_U against the recurrence on a grid") {
    for (unsigned n = 0; n <= 12; ++n)
        for (int i = 0; i <= 50; ++i) {
            const double t = kPi * i / 50.0;
            CHECK(chebyshev_U(n, t) ==
                  doctest::Approx(chebyshev_by_recurrence(n, t)).epsilon(1e-10));
        }
}

TEST_CASE("chebyshev_U limits at the endpoints") {
    CHECK(chebyshev_U(4, 0.0) == 5.0);
    CHECK(chebyshev_U(5, 0.0) == 6.0);
    CHECK(chebyshev_U(4, kPi) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(chebyshev_U(5, kPi) == doctest::Approx(-6.0).epsilon(1e-9));
}

TEST_CASE("a_exponent examples") {
    CHECK(a_exponent(make_prime_power(2, 3), 3) == 1);  // 3 < 8 <= 9
    CHECK(a_exponent(make_prime_power(3, 2), 2) == 3);  // 8 < 9 <= 16
    CHECK(a_exponent(make_prime_power(2, 2), 3) == 1);  // 3 < 4 <= 9
    CHECK_THROWS_AS(a_exponent(make_prime_power(2, 3), 2), std::domain_error);
}

TEST_CASE("a_exponent against exact power enumeration") {
    const auto pps = prime_powers_up_to(100000);
    const auto ps = primes_up_to(97);
    for (const auto& m : pps)
        for (std::uint64_t p : ps) {
            if (p == m.q) continue;
            CHECK(a_exponent(m, p) == exponent_by_enumeration(m.value, p));
        }
}

TEST_CASE("interval constructors") {
    const AngleInterval b1 = first_negative_interval(1);
    CHECK(b1.lo == doctest::Approx(kPi / 2));
    CHECK(b1.hi == doctest::Approx(kPi));
    const AngleInterval b2 = first_negative_interval(2);
    CHECK(b2.lo == doctest::Approx(kPi / 3));
    CHECK(b2.hi == doctest::Approx(kPi / 2));
    const AngleInterval b5 = first_negative_interval(5);
    CHECK(b5.lo == doctest::Approx(kPi / 6));
    CHECK(b5.hi == doctest::Approx(kPi / 5));

    const AngleInterval a1 = nonnegative_interval(1);
    CHECK(a1.lo == 0.0);
    CHECK(a1.hi == doctest::Approx(kPi / 2));
    CHECK(nonnegative_interval(2).hi == doctest::Approx(kPi / 3));
    CHECK(nonnegative_interval(10).hi == doctest::Approx(kPi / 11));
}

TEST_CASE("constraint_system snapshots for m = 2, 3, 4") {
    const ConstraintSystem c2 = constraint_system(make_prime_power(2, 1));
    REQUIRE(c2.constraints.size() == 1);
    CHECK(c2.constraints[0].first == 2);
    CHECK(c2.constraints[0].second.lo == doctest::Approx(kPi / 2));
    CHECK(c2.constraints[0].second.hi == doctest::Approx(kPi));

    const ConstraintSystem c3 = constraint_system(make_prime_power(3, 1));
    REQUIRE(c3.constraints.size() == 2);
    CHECK(c3.constraints[0].first == 2);
    CHECK(c3.constraints[0].second.lo == 0.0);
    CHECK(c3.constraints[0].second.hi == doctest::Approx(kPi / 2));
    CHECK(c3.constraints[1].first == 3);
    CHECK(c3.constraints[1].second.lo == doctest::Approx(kPi / 2));
    CHECK(c3.constraints[1].second.hi == doctest::Approx(kPi));

    const ConstraintSystem c4 = constraint_system(make_prime_power(2, 2));
    REQUIRE(c4.constraints.size() == 2);
    CHECK(c4.constraints[0].first == 2);
    CHECK(c4.constraints[0].second.lo == doctest::Approx(kPi / 3));
    CHECK(c4.constraints[0].second.hi == doctest::Approx(kPi / 2));
    CHECK(c4.constraints[1].first == 3);
    CHECK(c4.constraints[1].second.lo == 0.0);
    CHECK(c4.constraints[1].second.hi == doctest::Approx(kPi / 2));
}

TEST_CASE("constraint_system lists primes in increasing order") {
    for (std::uint64_t v : {8ull, 9ull, 25ull, 31ull, 128ull}) {
        const ConstraintSystem cs = constraint_system(*as_prime_power(v));
        for (std::size_t i = 1; i < cs.constraints.size(); ++i)
            CHECK(cs.constraints[i - 1].first < cs.constraints[i].first);
        CHECK(cs.constraints.size() == primes_up_to(v).size());
    }
}

TEST_CASE("amplifier polynomial values") {
    const auto F = amplifier_poly(+1);
    CHECK(F[0] == -0.75);
    CHECK(F[1] == 0.5);
    CHECK(F[2] == 0.25);
    // X_1(0) = 2, X_2(0) = 3
    CHECK(amplifier_eval(F, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(amplifier_eval(F, kPi / 2) == doctest::Approx(-1.0).epsilon(1e-14));

    const auto Ft = amplifier_poly(-1);
    CHECK(amplifier_eval(Ft, kPi) == doctest::Approx(1.0).epsilon(1e-9));
    // F~(theta) = F(pi - theta) pointwise
    for (int i = 0; i <= 40; ++i) {
        const double t = kPi * i / 40.0;
        CHECK(amplifier_eval(Ft, t) ==
              doctest::Approx(amplifier_eval(F, kPi - t)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(amplifier_poly(0), std::invalid_argument);
}

TEST_CASE("F stays below sgn(2 cos theta)") {
    const auto F = amplifier_poly(+1);
    for (int i = 0; i < 10000; ++i) {
        const double t = kPi * (i + 0.5) / 10000.0;
        if (std::fabs(t - kPi / 2) < 1e-9) continue;
        const double sgn = (2.0 * std::cos(t) > 0) ? 1.0 : -1.0;
        CHECK(amplifier_eval(F, t) <= sgn + 1e-12);
    }
}

TEST_CASE("angles inside the constraint system force the sign pattern") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    for (const auto& m : prime_powers_up_to(50)) {
        const ConstraintSystem cs = constraint_system(m);
        for (int rep = 0; rep < 40; ++rep) {
            // synthetic angle vector strictly inside each interval
            std::vector<std::pair<std::uint64_t, double>> angles;
            for (const auto& [p, I] : cs.constraints)
                angles.emplace_back(p, I.lo + U(rng) * (I.hi - I.lo));
            auto lambda_of = [&](std::uint64_t j) {
                double v = 1.0;
                for (auto [p, e] : factorize(j)) {
                    double theta = -1.0;
                    for (const auto& [pp, th] : angles)
                        if (pp == p) theta = th;
                    REQUIRE(theta >= 0.0);
                    v *= chebyshev_U(e, theta);
                }
                return v;
            };
            for (std::uint64_t j = 2; j < m.value; ++j) CHECK(lambda_of(j) >= 0.0);
            CHECK(lambda_of(m.value) < 0.0);
        }
    }
}
