#include "egamma/real.hpp"

#include <cstdio>
#include <memory>
#include <utility>

namespace egamma {

void widen_exponent_range() {
    // MPFR keeps the exponent range per thread when built thread-safe.
    static thread_local bool widened = false;
    if (widened) return;
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    widened = true;
}

Real::Real(Precision prec) {
    widen_exponent_range();
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(Precision prec, long value) : Real(prec) { mpfr_set_si(value_, value, MPFR_RNDN); }

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
    if (digits < 1) digits = 1;
    const int len = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
    std::string out(static_cast<std::size_t>(len) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Re", digits - 1, value_);
    out.resize(static_cast<std::size_t>(len));
    return out;
}

Real Real::pow2(long e, Precision prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.value_, 1, e, MPFR_RNDN);
    return r;
}

Real Real::from_double(double v, Precision prec) {
    Real r(prec < 53 ? 53 : prec);
    mpfr_set_d(r.value_, v, MPFR_RNDN);
    return r;
}

}  // namespace egamma
