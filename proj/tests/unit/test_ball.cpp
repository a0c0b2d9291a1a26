#include "egamma/ball.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace egamma;

namespace {

// A ball around a random midpoint with a random small radius, plus a point
// inside it. The point is what the "true" operand could be.
struct Sample {
    Ball ball;
    Real point;
};

Sample random_sample(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> mid(lo, hi);
    std::uniform_real_distribution<double> frac(-1.0, 1.0);
    std::uniform_int_distribution<int> rexp(-60, -20);
    const double m = mid(rng);
    Real r = Real::pow2(rexp(rng));
    Real mr(64);
    mpfr_set_d(mr.get(), m, MPFR_RNDN);
    Sample s{Ball(mr, r), Real(256)};
    // point = m + f * r, exact at 256 bits
    mpfr_mul_d(s.point.get(), r.get(), frac(rng), MPFR_RNDN);
    mpfr_add(s.point.get(), s.point.get(), mr.get(), MPFR_RNDN);
    return s;
}

Ball point_ball(const Real& p) { return Ball::from_real(p, 256); }

// The 64-bit enclosure must contain the tightly evaluated image of the point.
void check_unary(const std::function<Ball(const Ball&)>& f, double lo, double hi) {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 300; ++i) {
        const Sample s = random_sample(rng, lo, hi);
        const Ball wide = f(s.ball);
        const Ball tight = f(point_ball(s.point));
        REQUIRE(wide.contains(tight));
    }
}

void check_binary(const std::function<Ball(const Ball&, const Ball&)>& f, double lo, double hi) {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 300; ++i) {
        const Sample a = random_sample(rng, lo, hi);
        const Sample b = random_sample(rng, lo, hi);
        const Ball wide = f(a.ball, b.ball);
        const Ball tight = f(point_ball(a.point), point_ball(b.point));
        REQUIRE(wide.contains(tight));
    }
}

}  // namespace

TEST_CASE("arithmetic enclosures contain the image of every point") {
    check_binary([](const Ball& a, const Ball& b) { return a + b; }, -10, 10);
    check_binary([](const Ball& a, const Ball& b) { return a - b; }, -10, 10);
    check_binary([](const Ball& a, const Ball& b) { return a * b; }, -10, 10);
    check_binary([](const Ball& a, const Ball& b) { return a / b; }, 0.5, 10);
    check_unary([](const Ball& a) { return a * 37L; }, -10, 10);
    check_unary([](const Ball& a) { return a / 7L; }, -10, 10);
    check_unary([](const Ball& a) { return sqr(a); }, -3, 3);
    check_unary([](const Ball& a) { return pow(a, 7); }, -2, 2);
}

TEST_CASE("transcendental enclosures contain the image of every point") {
    check_unary([](const Ball& a) { return log(a); }, 1e-3, 50);
    check_unary([](const Ball& a) { return log1p(a); }, -0.9, 5);
    check_unary([](const Ball& a) { return exp(a); }, -30, 30);
    check_unary([](const Ball& a) { return sqrt(a); }, 1e-3, 50);
    check_unary([](const Ball& a) { return abs(a); }, -5, 5);
}

TEST_CASE("domain errors") {
    const Ball straddle(Real(64, 0), Real::pow2(-3));
    CHECK_THROWS_AS(log(straddle), DomainError);
    CHECK_THROWS_AS(Ball(64, 1) / straddle, DomainError);
    CHECK_THROWS_AS(Ball(64, 1) / 0L, DomainError);
    CHECK_THROWS_AS(log1p(Ball(64, -1)), DomainError);
    CHECK_THROWS_AS(sqrt(Ball(64, -1)), DomainError);
}

TEST_CASE("abs and sqrt of a ball straddling zero") {
    const Ball x(Real(64, 0), Real::pow2(-4));
    const Ball a = abs(x);
    CHECK(!a.is_negative());
    CHECK(a.contains(Ball(64, 0)));
    CHECK(a.contains(Ball::from_double(0.0625, 64)));
    const Ball r = sqrt(x);
    CHECK(r.contains(Ball::from_double(0.25, 64)));
}

TEST_CASE("constants and comparisons") {
    const Ball pi = Ball::pi(200);
    Real ref(400);
    mpfr_const_pi(ref.get(), MPFR_RNDN);
    CHECK(pi.contains(Ball(ref, Real(32, 0))));
    CHECK(pi.rad_double() < 1e-55);
    const Ball l2 = Ball::log2(200);
    CHECK(l2.overlaps(log(Ball(200, 2))));
    CHECK(Ball(64, 1).less_than(Ball(64, 2)));
    CHECK(!Ball(64, 2).less_than(Ball(64, 2)));
    CHECK(Ball(64, 3).is_positive());
    CHECK(Ball(64, -3).is_negative());
    CHECK(Ball(64, 0).contains_zero());
}

TEST_CASE("exact conversions") {
    const Ball q = Ball::from_rational(mpq_class(1, 3), 100);
    CHECK(!q.is_exact());
    CHECK((q * 3L).contains(Ball(100, 1)));
    const Ball z = Ball::from_integer(mpz_class("123456789012345678901234567890"), 200);
    CHECK(z.is_exact());
    CHECK(ldexp(Ball(64, 3), -2).mid_double() == 0.75);
}

TEST_CASE("with_precision keeps the enclosure") {
    const Ball x = log(Ball(300, 10));
    const Ball y = x.with_precision(40);
    CHECK(y.precision() == 40);
    CHECK(y.contains(x));
}

TEST_CASE("hull and add_error") {
    Ball a(64, 1);
    a.add_error(Real::pow2(-10));
    CHECK(a.contains(Ball::from_double(1.0 + 1.0 / 2048, 64)));
    const Ball h = hull(Ball(64, 1), Ball(64, 3));
    CHECK(h.contains(Ball(64, 2)));
    CHECK(h.contains(Ball(64, 1)));
    CHECK(h.contains(Ball(64, 3)));
}
