#include "egamma/ball.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace egamma {

namespace {

constexpr Precision kRad = Ball::kRadiusPrecision;

Precision joint(const Ball& a, const Ball& b) { return std::max(a.precision(), b.precision()); }

// |x| rounded up to radius precision.
Real abs_up(const Real& x) {
    Real r(kRad);
    mpfr_abs(r.get(), x.get(), MPFR_RNDU);
    return r;
}

// (|mid| - rad) rounded down; may be negative.
Real magnitude_lower(const Ball& x) {
    Real r(kRad);
    Real a(x.precision());
    mpfr_abs(a.get(), x.mid().get(), MPFR_RNDN);
    mpfr_sub(r.get(), a.get(), x.rad().get(), MPFR_RNDD);
    return r;
}

}  // namespace

Ball::Ball(Precision prec) : mid_(prec), rad_(kRad) {}

Ball::Ball(Precision prec, long value) : mid_(prec), rad_(kRad) {
    round_into_radius(mpfr_set_si(mid_.get(), value, MPFR_RNDN));
}

Ball::Ball(Real mid, Real rad) : mid_(std::move(mid)), rad_(kRad) {
    mpfr_abs(rad_.get(), rad.get(), MPFR_RNDU);
}

Ball Ball::from_integer(const mpz_class& z, Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_set_z(b.mid_.get(), z.get_mpz_t(), MPFR_RNDN));
    return b;
}

Ball Ball::from_rational(const mpq_class& q, Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN));
    return b;
}

Ball Ball::from_real(const Real& r, Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_set(b.mid_.get(), r.get(), MPFR_RNDN));
    return b;
}

Ball Ball::from_double(double v, Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_set_d(b.mid_.get(), v, MPFR_RNDN));
    return b;
}

Ball Ball::pi(Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_const_pi(b.mid_.get(), MPFR_RNDN));
    return b;
}

Ball Ball::log2(Precision prec) {
    Ball b(prec);
    b.round_into_radius(mpfr_const_log2(b.mid_.get(), MPFR_RNDN));
    return b;
}

void Ball::round_into_radius(int ternary) {
    if (ternary == 0) return;
    if (mpfr_zero_p(mid_.get())) {
        // Underflow to zero: the lost value is below the smallest subnormal
        // step, which is far below any radius we carry.
        Real tiny(kRad);
        mpfr_set_ui_2exp(tiny.get(), 1, mpfr_get_emin(), MPFR_RNDU);
        mpfr_add(rad_.get(), rad_.get(), tiny.get(), MPFR_RNDU);
        return;
    }
    Real ulp(kRad);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - mid_.precision(), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

double Ball::rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

Real Ball::lower() const {
    Real r(precision() + 32);
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
}

Real Ball::upper() const {
    Real r(precision() + 32);
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

bool Ball::is_positive() const { return mpfr_sgn(lower().get()) > 0; }
bool Ball::is_negative() const { return mpfr_sgn(upper().get()) < 0; }

bool Ball::contains(const Ball& other) const {
    return mpfr_lessequal_p(lower().get(), other.lower().get()) &&
           mpfr_lessequal_p(other.upper().get(), upper().get());
}

bool Ball::overlaps(const Ball& other) const {
    return mpfr_lessequal_p(lower().get(), other.upper().get()) &&
           mpfr_lessequal_p(other.lower().get(), upper().get());
}

bool Ball::less_than(const Ball& bound) const { return mpfr_less_p(upper().get(), bound.lower().get()); }

long Ball::radius_log2() const {
    if (rad_.is_zero()) return LONG_MIN / 4;
    return static_cast<long>(mpfr_get_exp(rad_.get()));
}

void Ball::add_error(const Real& err) {
    Real e = abs_up(err);
    mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

void Ball::add_error(const Ball& err) {
    Real hi(kRad);
    Real a = abs_up(err.mid_);
    mpfr_add(hi.get(), a.get(), err.rad_.get(), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), hi.get(), MPFR_RNDU);
}

Ball Ball::with_precision(Precision prec) const {
    Ball b(prec);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    b.round_into_radius(mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN));
    return b;
}

std::string Ball::to_string(int digits) const {
    std::ostringstream os;
    os << mid_.to_string(digits) << " +/- " << rad_.to_string(3);
    return os.str();
}

Ball& Ball::operator+=(const Ball& o) { return *this = *this + o; }
Ball& Ball::operator-=(const Ball& o) { return *this = *this - o; }
Ball& Ball::operator*=(const Ball& o) { return *this = *this * o; }
Ball& Ball::operator/=(const Ball& o) { return *this = *this / o; }

Ball operator-(const Ball& a) {
    Ball r = a;
    mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(joint(a, b));
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.round_into_radius(mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN));
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(joint(a, b));
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.round_into_radius(mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN));
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(joint(a, b));
    // |a| rb + |b| ra + ra rb
    Real t1(kRad), t2(kRad), t3(kRad);
    Real am = abs_up(a.mid_);
    Real bm = abs_up(b.mid_);
    mpfr_mul(t1.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), bm.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_mul(t3.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), t3.get(), MPFR_RNDU);
    r.round_into_radius(mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN));
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    const Real bl = magnitude_lower(b);
    if (mpfr_sgn(bl.get()) <= 0) throw DomainError("ball division: divisor encloses zero");
    Ball r(joint(a, b));
    // (ra |b| + |a| rb) / (|b| (|b| - rb))
    Real num(kRad), t(kRad), den(kRad);
    Real am = abs_up(a.mid_);
    Real bm = abs_up(b.mid_);
    mpfr_mul(num.get(), a.rad_.get(), bm.get(), MPFR_RNDU);
    mpfr_mul(t.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
    Real bdown(kRad);
    mpfr_abs(bdown.get(), b.mid_.get(), MPFR_RNDD);
    mpfr_mul(den.get(), bdown.get(), bl.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
    r.round_into_radius(mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN));
    return r;
}

Ball operator*(const Ball& a, long k) {
    Ball r(a.precision());
    mpfr_mul_ui(r.rad_.get(), a.rad_.get(), static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDU);
    r.round_into_radius(mpfr_mul_si(r.mid_.get(), a.mid_.get(), k, MPFR_RNDN));
    return r;
}

Ball operator*(const Ball& a, const mpz_class& k) {
    Ball r(a.precision());
    const mpz_class ak = abs(k);
    mpfr_mul_z(r.rad_.get(), a.rad_.get(), ak.get_mpz_t(), MPFR_RNDU);
    r.round_into_radius(mpfr_mul_z(r.mid_.get(), a.mid_.get(), k.get_mpz_t(), MPFR_RNDN));
    return r;
}

Ball operator/(const Ball& a, long k) {
    if (k == 0) throw DomainError("ball division by zero");
    Ball r(a.precision());
    mpfr_div_ui(r.rad_.get(), a.rad_.get(), static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDU);
    r.round_into_radius(mpfr_div_si(r.mid_.get(), a.mid_.get(), k, MPFR_RNDN));
    return r;
}

Ball abs(const Ball& x) {
    if (x.is_positive()) return x;
    if (x.is_negative()) return -x;
    // Straddles zero: enclose [0, max(|lo|, |hi|)].
    Real lo = abs_up(x.lower());
    Real hi = abs_up(x.upper());
    Real top(kRad);
    mpfr_max(top.get(), lo.get(), hi.get(), MPFR_RNDU);
    // top has radius precision, so halving it is exact at any working precision.
    mpfr_div_2ui(top.get(), top.get(), 1, MPFR_RNDU);
    Real half(std::max<Precision>(x.precision(), kRad));
    mpfr_set(half.get(), top.get(), MPFR_RNDN);
    return Ball(std::move(half), std::move(top));
}

Ball sqr(const Ball& x) { return x * x; }

Ball pow(const Ball& x, unsigned long k) {
    Ball result(x.precision(), 1);
    Ball base = x;
    while (k > 0) {
        if (k & 1UL) result *= base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Ball log(const Ball& x) {
    Real lo = x.lower();
    if (mpfr_sgn(lo.get()) <= 0) throw DomainError("ball log: argument not positive");
    Ball r(x.precision());
    Real bound(kRad);
    mpfr_div(bound.get(), x.rad().get(), lo.get(), MPFR_RNDU);
    Real mid(x.precision());
    const int t = mpfr_log(mid.get(), x.mid().get(), MPFR_RNDN);
    r = Ball(std::move(mid), std::move(bound));
    if (t != 0) {
        Real ulp(kRad);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(r.mid().get()) - r.precision(), MPFR_RNDU);
        r.add_error(ulp);
    }
    return r;
}

Ball log1p(const Ball& x) {
    Real lo = x.lower();
    Real one_plus(lo.precision());
    mpfr_add_ui(one_plus.get(), lo.get(), 1, MPFR_RNDD);
    if (mpfr_sgn(one_plus.get()) <= 0) throw DomainError("ball log1p: argument not above -1");
    Real bound(kRad);
    mpfr_div(bound.get(), x.rad().get(), one_plus.get(), MPFR_RNDU);
    Real mid(x.precision());
    const int t = mpfr_log1p(mid.get(), x.mid().get(), MPFR_RNDN);
    Ball r(std::move(mid), std::move(bound));
    if (t != 0 && !r.mid().is_zero()) {
        Real ulp(kRad);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(r.mid().get()) - r.precision(), MPFR_RNDU);
        r.add_error(ulp);
    }
    return r;
}

Ball exp(const Ball& x) {
    // exp(m + e) - exp(m) is bounded by exp(m) * expm1(r).
    Real em(kRad), grow(kRad), bound(kRad);
    mpfr_exp(em.get(), x.mid().get(), MPFR_RNDU);
    mpfr_expm1(grow.get(), x.rad().get(), MPFR_RNDU);
    mpfr_mul(bound.get(), em.get(), grow.get(), MPFR_RNDU);
    Real mid(x.precision());
    const int t = mpfr_exp(mid.get(), x.mid().get(), MPFR_RNDN);
    Ball r(std::move(mid), std::move(bound));
    if (t != 0 && !r.mid().is_zero()) {
        Real ulp(kRad);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(r.mid().get()) - r.precision(), MPFR_RNDU);
        r.add_error(ulp);
    }
    return r;
}

Ball sqrt(const Ball& x) {
    Real lo = x.lower();
    if (mpfr_sgn(lo.get()) <= 0) {
        Real hi = x.upper();
        if (mpfr_sgn(hi.get()) < 0) throw DomainError("ball sqrt: negative argument");
        // Enclose [0, sqrt(hi)].
        Real top(kRad);
        mpfr_sqrt(top.get(), hi.get(), MPFR_RNDU);
        mpfr_div_2ui(top.get(), top.get(), 1, MPFR_RNDU);
        Real half(std::max<Precision>(x.precision(), kRad));
        mpfr_set(half.get(), top.get(), MPFR_RNDN);
        return Ball(std::move(half), std::move(top));
    }
    // |sqrt'| <= 1 / (2 sqrt(lo)).
    Real root_lo(kRad), bound(kRad);
    mpfr_sqrt(root_lo.get(), lo.get(), MPFR_RNDD);
    mpfr_mul_2ui(root_lo.get(), root_lo.get(), 1, MPFR_RNDD);
    mpfr_div(bound.get(), x.rad().get(), root_lo.get(), MPFR_RNDU);
    Real mid(x.precision());
    const int t = mpfr_sqrt(mid.get(), x.mid().get(), MPFR_RNDN);
    Ball r(std::move(mid), std::move(bound));
    if (t != 0) {
        Real ulp(kRad);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(r.mid().get()) - r.precision(), MPFR_RNDU);
        r.add_error(ulp);
    }
    return r;
}

Ball ldexp(const Ball& x, long k) {
    Real mid(x.precision()), rad(kRad);
    mpfr_mul_2si(mid.get(), x.mid().get(), k, MPFR_RNDN);
    mpfr_mul_2si(rad.get(), x.rad().get(), k, MPFR_RNDU);
    return Ball(std::move(mid), std::move(rad));
}

Ball hull(const Ball& a, const Ball& b) {
    const Precision prec = std::max(a.precision(), b.precision()) + 32;
    Real lo(prec), hi(prec);
    mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    Real mid(std::max(a.precision(), b.precision()));
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    Real r1(kRad), r2(kRad);
    mpfr_sub(r1.get(), hi.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), mid.get(), lo.get(), MPFR_RNDU);
    mpfr_max(r1.get(), r1.get(), r2.get(), MPFR_RNDU);
    return Ball(std::move(mid), std::move(r1));
}

}  // namespace egamma
