#pragma once

#include <mpfr.h>

#include <string>

namespace egamma {

using Precision = mpfr_prec_t;

/// Owning handle for an MPFR floating-point number.
///
/// Copies keep the source precision. All arithmetic is done through the raw
/// `get()` handle; this class only manages lifetime.
class Real {
public:
    explicit Real(Precision prec = 64);
    Real(Precision prec, long value);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    [[nodiscard]] mpfr_ptr get() noexcept { return value_; }
    [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }

    [[nodiscard]] Precision precision() const noexcept { return mpfr_get_prec(value_); }
    [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(value_); }

    /// Scientific rendering with `digits` significant decimal digits.
    [[nodiscard]] std::string to_string(int digits) const;

    /// Exact 2^e at the given precision.
    static Real pow2(long e, Precision prec = 32);
    static Real from_double(double v, Precision prec = 53);

    void swap(Real& other) noexcept { mpfr_swap(value_, other.value_); }

private:
    mpfr_t value_;
};

/// Widens MPFR's exponent range to its maximum so that tanh-sinh nodes near
/// logarithmic endpoint singularities (distances like exp(-1e13)) stay
/// representable. Idempotent; called by the quadrature engine.
void widen_exponent_range();

}  // namespace egamma
