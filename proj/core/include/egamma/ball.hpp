#pragma once

#include "egamma/real.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace egamma {

/// Raised when a ball operation leaves the domain of the function (log of a
/// ball touching zero, division by a ball containing zero, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Midpoint-radius enclosure of a real number.
///
/// The midpoint carries the working precision; the radius is a short
/// upward-rounded number. Every operation returns a ball that contains the
/// exact result of the operation applied to any points of the operands, so
/// enclosures never shrink below the truth. Rounding of the midpoint is
/// folded into the radius.
class Ball {
public:
    static constexpr Precision kRadiusPrecision = 30;

    explicit Ball(Precision prec = 64);
    Ball(Precision prec, long value);
    Ball(Real mid, Real rad);

    static Ball from_integer(const mpz_class& z, Precision prec);
    static Ball from_rational(const mpq_class& q, Precision prec);
    /// Exact point ball for a midpoint value already computed elsewhere.
    static Ball from_real(const Real& r, Precision prec);
    static Ball from_double(double v, Precision prec);
    static Ball pi(Precision prec);
    static Ball log2(Precision prec);

    [[nodiscard]] const Real& mid() const noexcept { return mid_; }
    [[nodiscard]] const Real& rad() const noexcept { return rad_; }
    [[nodiscard]] Precision precision() const noexcept { return mid_.precision(); }

    [[nodiscard]] double mid_double() const { return mid_.to_double(); }
    [[nodiscard]] double rad_double() const;  // rounded upward

    /// Lower and upper end points, rounded outward.
    [[nodiscard]] Real lower() const;
    [[nodiscard]] Real upper() const;

    [[nodiscard]] bool is_positive() const;  // whole enclosure > 0
    [[nodiscard]] bool is_negative() const;  // whole enclosure < 0
    [[nodiscard]] bool contains_zero() const { return !is_positive() && !is_negative(); }
    [[nodiscard]] bool is_exact() const { return rad_.is_zero(); }

    /// True when every point of `other` lies inside this ball.
    [[nodiscard]] bool contains(const Ball& other) const;
    [[nodiscard]] bool overlaps(const Ball& other) const;
    /// True when the upper end point is strictly below `bound`.
    [[nodiscard]] bool less_than(const Ball& bound) const;

    /// log2 of the radius (minus infinity as a very negative number for
    /// exact balls). Used by precision policies.
    [[nodiscard]] long radius_log2() const;

    /// Widen the radius by a nonnegative amount.
    void add_error(const Real& err);
    void add_error(const Ball& err);

    /// Copy with the midpoint rounded to another precision.
    [[nodiscard]] Ball with_precision(Precision prec) const;

    [[nodiscard]] std::string to_string(int digits = 20) const;

    Ball& operator+=(const Ball& o);
    Ball& operator-=(const Ball& o);
    Ball& operator*=(const Ball& o);
    Ball& operator/=(const Ball& o);

    friend Ball operator-(const Ball& a);
    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);

    friend Ball operator*(const Ball& a, long k);
    friend Ball operator*(const Ball& a, const mpz_class& k);
    friend Ball operator/(const Ball& a, long k);

private:
    void round_into_radius(int ternary);

    Real mid_;
    Real rad_;
};

Ball abs(const Ball& x);
Ball sqr(const Ball& x);
Ball pow(const Ball& x, unsigned long k);
Ball log(const Ball& x);
Ball log1p(const Ball& x);
Ball exp(const Ball& x);
Ball sqrt(const Ball& x);
/// 2^k times x, exact.
Ball ldexp(const Ball& x, long k);
/// Ball enclosing the union of both enclosures.
Ball hull(const Ball& a, const Ball& b);

}  // namespace egamma
