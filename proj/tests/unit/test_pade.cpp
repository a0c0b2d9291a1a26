#include "egamma/criterion.hpp"
#include "egamma/pade.hpp"

#include <doctest.h>

#include <cmath>

using namespace egamma;

namespace {

// num/den reduced to lowest terms with a monic denominator, for comparing
// rational functions written with different scalings.
std::pair<std::vector<Rational>, std::vector<Rational>> monic(const PadeRational& p) {
    std::vector<Rational> num = p.num, den = p.den;
    while (!den.empty() && den.back() == 0) den.pop_back();
    while (!num.empty() && num.back() == 0) num.pop_back();
    const Rational lead = den.back();
    for (auto& c : num) c /= lead;
    for (auto& c : den) c /= lead;
    return {num, den};
}

std::vector<Rational> Q(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("low-order approximants of ln(1+t)") {
    const auto [n1, d1] = monic(pade_log1p(1));
    CHECK(n1 == Q({0, 2}));
    CHECK(d1 == Q({2, 1}));
    const auto [n2, d2] = monic(pade_log1p(2));
    CHECK(n2 == Q({0, 6, 3}));
    CHECK(d2 == Q({6, 6, 1}));
    CHECK_THROWS(pade_log1p(0));
}

TEST_CASE("evaluation and poles") {
    const PadeRational p1 = pade_log1p(1);
    CHECK(pade_eval(p1, Rational(1)) == Rational(2, 3));
    CHECK(pade_eval(p1, Rational(0)) == 0);
    CHECK_THROWS_AS(pade_eval(p1, Rational(-2)), PoleError);
    for (unsigned long n = 1; n <= 8; ++n) CHECK(pade_eval(pade_log1p(n), Rational(0)) == 0);
}

TEST_CASE("Taylor agreement through degree 2n") {
    for (unsigned long n = 1; n <= 8; ++n) {
        const PadeRational p = pade_log1p(n);
        const auto s = series_quotient(p.num, p.den, 2 * n + 1);
        const auto ref = log1p_series(2 * n + 1);
        for (std::size_t k = 0; k <= 2 * n; ++k) CHECK(s[k] == ref[k]);
        CHECK(s[2 * n + 1] != ref[2 * n + 1]);
    }
}

TEST_CASE("grid and rational substitute") {
    CHECK(grid_n(0, 1) == 1);
    CHECK(grid_n(3, 2) == 9);
    CHECK_THROWS(grid_n(0, 0));
    CHECK(tilde_L(0, 1) == Rational(4, 3));
    CHECK(tilde_frac(0, 1) == Rational(2, 3));
    // p = 1, m = 1: n = 2, evaluations at t = 0, 1/2, 1
    const PadeRational p2 = pade_log1p(2);
    const Rational expect = pade_eval(p2, Rational(1)) + 6 * pade_eval(p2, Rational(1, 2)) * -1 +
                            6 * pade_eval(p2, Rational(1)) * 1 + 0;
    CHECK(tilde_L(1, 1) == expect);
    for (long p = 0; p <= 4; ++p)
        for (long m = 0; m <= 3; ++m) {
            if (p == 0 && m == 0) continue;
            const Rational f = tilde_frac(p, m);
            CHECK(f >= 0);
            CHECK(f < 1);
            // d_{2^p} (-1)^m tilde_L - frac is an integer
            Rational x = Rational(lcm_upto(1UL << p)) * tilde_L(p, m) * (m % 2 ? -1 : 1) - f;
            x.canonicalize();
            CHECK(x.get_den() == 1);
        }
    // denominator of frac divides the denominator of tilde_L
    const Rational t = tilde_L(3, 0);
    const Rational f = tilde_frac(3, 0);
    CHECK(mpz_divisible_p(t.get_den().get_mpz_t(), f.get_den().get_mpz_t()));
}

TEST_CASE("gap between L and its rational substitute") {
    const Ball g0 = delta_gap(0, 1, 128);
    CHECK(g0.mid_double() == doctest::Approx(0.053).epsilon(0.02).scale(0));
    const Ball g4 = delta_gap(4, 0, 256);
    CHECK(g4.less_than(Ball::from_rational(Rational(Integer(1), Integer(1) << 32) / 16, 256)));
    const Ball g5 = delta_gap(5, 1, 512);
    CHECK(g5.less_than(Ball::from_rational(Rational(Integer(1), Integer(1) << 64) / 32, 512)));
    // L - tilde_L = p (ln 2 - [n/n](1)) + delta
    for (long p = 1; p <= 4; ++p)
        for (long m = 0; m <= 2; ++m) {
            const long n = grid_n(p, m);
            const Precision prec = working_precision(n, 128);
            const Ball lhs = L_nm(n, m, prec) - Ball::from_rational(tilde_L(p, m), prec);
            const Ball rhs = ln2_pade_error(static_cast<unsigned long>(n), prec) * p + delta_sum(p, m, prec);
            CHECK(lhs.overlaps(rhs));
            CHECK((lhs - rhs).rad_double() < 1e-30);
        }
}

TEST_CASE("criterion row on the grid") {
    const PadeCriterionRow r = pade_criterion_row(4, 0);
    CHECK(r.n == 15);
    CHECK(r.gap_asserted);
    CHECK(r.gap_bound_ok);
    const PadeCriterionRow small = pade_criterion_row(0, 1);
    CHECK_FALSE(small.gap_asserted);
    CHECK(small.frac == Rational(2, 3));
}

TEST_CASE("Pade pair of ln(u)/(u-1)") {
    const auto p1 = pade_lnu_over_um1(1);
    CHECK(p1.D == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(p1.N == Q({1}));
    const auto p2 = pade_lnu_over_um1(2);
    CHECK(p2.D == std::vector<Rational>{Rational(1, 6), Rational(2, 3), Rational(1, 6)});
    for (unsigned long n = 1; n <= 6; ++n) {
        const auto p = pade_lnu_over_um1(n);
        CHECK(p.D.size() == n + 1);
        CHECK(p.N.size() == n);
        Rational sum(0);
        for (const auto& c : p.D) sum += c;
        CHECK(sum == 1);  // D_n(1) = 1
    }
    CHECK(contact_order(1) >= 3);
    CHECK(contact_order(2) >= 5);
    CHECK(contact_order(4) >= 9);
    for (unsigned long n = 1; n <= 8; ++n) CHECK(contact_order(n) >= static_cast<long>(2 * n + 1));
}

TEST_CASE("ln 2 approximation error") {
    const Ball e1 = ln2_pade_error(1, 128);
    CHECK(e1.mid_double() == doctest::Approx(std::log(2.0) - 2.0 / 3).epsilon(1e-14).scale(0));
    CHECK(std::fabs(e1.mid_double() - 0.0264805) < 1e-7);
    const double q = std::pow(3 - 2 * std::sqrt(2.0), 2);
    for (unsigned long n = 1; n <= 20; ++n) {
        const Ball e = ln2_pade_error(n, 256);
        CHECK(e.is_positive());
        if (n >= 10) {
            const double ratio = ln2_pade_error(n + 1, 256).mid_double() / e.mid_double();
            CHECK(std::fabs(ratio / q - 1) < 0.1);
        }
    }
}
