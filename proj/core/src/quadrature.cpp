#include "egamma/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace egamma {

namespace {

constexpr double kScanStep = 0.5;

double max_abscissa(const Integrand& f) {
    const bool slow = f.lower_behavior == EndpointBehavior::log_singular ||
                      f.upper_behavior == EndpointBehavior::log_singular;
    return slow ? 40.0 : 12.0;
}

// One node of the transformed sum: F(t) = f(x(t)) x'(t).
class Transform {
public:
    Transform(const Integrand& f, Precision prec)
        : f_(f), prec_(prec), node_prec_(prec + 24), a_(node_prec_), len_(node_prec_) {
        mpfr_set_q(a_.get(), f.lower.get_mpq_t(), MPFR_RNDN);
        if (!f.upper_infinite) {
            Rational len = f.upper - f.lower;
            if (len <= 0) throw std::invalid_argument("quad: empty or reversed interval");
            mpfr_set_q(len_.get(), len.get_mpq_t(), MPFR_RNDN);
        }
    }

    // Returns F(t); `x_out` receives the abscissa for tail bounds.
    Ball operator()(double t, Real* x_out = nullptr) const {
        const Precision p = node_prec_;
        Real tt(p), s(p), c(p);
        mpfr_set_d(tt.get(), t, MPFR_RNDN);
        mpfr_sinh_cosh(s.get(), c.get(), tt.get(), MPFR_RNDN);
        Real halfpi(p);
        mpfr_const_pi(halfpi.get(), MPFR_RNDN);
        mpfr_div_2ui(halfpi.get(), halfpi.get(), 1, MPFR_RNDN);

        QuadPoint pt{Real(p), Real(p), Real(p)};
        Real weight(p);
        if (f_.upper_infinite) {
            // x = a + exp(pi/2 sinh t), x' = pi/2 cosh t exp(pi/2 sinh t)
            Real e(p);
            mpfr_mul(e.get(), halfpi.get(), s.get(), MPFR_RNDN);
            mpfr_exp(e.get(), e.get(), MPFR_RNDN);
            mpfr_set(pt.from_lower.get(), e.get(), MPFR_RNDN);
            mpfr_add(pt.x.get(), a_.get(), e.get(), MPFR_RNDN);
            mpfr_set_inf(pt.to_upper.get(), 1);
            mpfr_mul(weight.get(), halfpi.get(), c.get(), MPFR_RNDN);
            mpfr_mul(weight.get(), weight.get(), e.get(), MPFR_RNDN);
        } else {
            // q = exp(-pi |sinh t|); the near end point sits at distance
            // len q / (1 + q), the far one at len / (1 + q).
            Real q(p), onepq(p), near(p), far(p);
            mpfr_abs(q.get(), s.get(), MPFR_RNDN);
            mpfr_mul(q.get(), q.get(), halfpi.get(), MPFR_RNDN);
            mpfr_mul_2ui(q.get(), q.get(), 1, MPFR_RNDN);
            mpfr_neg(q.get(), q.get(), MPFR_RNDN);
            mpfr_exp(q.get(), q.get(), MPFR_RNDN);
            mpfr_add_ui(onepq.get(), q.get(), 1, MPFR_RNDN);
            mpfr_mul(near.get(), len_.get(), q.get(), MPFR_RNDN);
            mpfr_div(near.get(), near.get(), onepq.get(), MPFR_RNDN);
            mpfr_div(far.get(), len_.get(), onepq.get(), MPFR_RNDN);
            if (t >= 0) {
                pt.to_upper = near;
                pt.from_lower = far;
            } else {
                pt.from_lower = near;
                pt.to_upper = far;
            }
            if (t >= 0) {
                mpfr_set_q(pt.x.get(), f_.upper.get_mpq_t(), MPFR_RNDN);
                mpfr_sub(pt.x.get(), pt.x.get(), pt.to_upper.get(), MPFR_RNDN);
            } else {
                mpfr_add(pt.x.get(), a_.get(), pt.from_lower.get(), MPFR_RNDN);
            }
            // x' = len pi/2 cosh t * 2 q / (1 + q)^2
            mpfr_mul(weight.get(), len_.get(), halfpi.get(), MPFR_RNDN);
            mpfr_mul(weight.get(), weight.get(), c.get(), MPFR_RNDN);
            mpfr_mul(weight.get(), weight.get(), q.get(), MPFR_RNDN);
            mpfr_mul_2ui(weight.get(), weight.get(), 1, MPFR_RNDN);
            mpfr_div(weight.get(), weight.get(), onepq.get(), MPFR_RNDN);
            mpfr_div(weight.get(), weight.get(), onepq.get(), MPFR_RNDN);
        }
        if (x_out) *x_out = pt.x;
        if (mpfr_zero_p(weight.get())) return Ball(prec_);
        Ball w = Ball::from_real(weight, prec_);
        // Node and weight are themselves rounded; a relative 2^-prec error
        // on the weight is folded in here.
        Real werr(Ball::kRadiusPrecision);
        mpfr_abs(werr.get(), weight.get(), MPFR_RNDU);
        mpfr_mul_2si(werr.get(), werr.get(), -static_cast<long>(p) + 4, MPFR_RNDU);
        w.add_error(werr);
        return w * f_.evaluate(pt, prec_);
    }

private:
    const Integrand& f_;
    Precision prec_;
    Precision node_prec_;
    Real a_;
    Real len_;
};

// |F| upper bound as a double in log2 scale to compare tiny magnitudes.
double log2_magnitude(const Ball& b) {
    Real up(64);
    Real a(b.precision());
    mpfr_abs(a.get(), b.mid().get(), MPFR_RNDN);
    mpfr_add(up.get(), a.get(), b.rad().get(), MPFR_RNDU);
    if (mpfr_zero_p(up.get())) return -std::numeric_limits<double>::infinity();
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, up.get(), MPFR_RNDU);
    return std::log2(m) + static_cast<double>(e);
}

struct SideScan {
    double limit = 0;     // truncation abscissa in t
    double tail_log2 = -std::numeric_limits<double>::infinity();  // log2 of tail estimate
    Real last_x;          // abscissa at the truncation point
    std::vector<Ball> values;  // F at t = k * kScanStep, k = 1..
    bool ok = true;
};

SideScan scan_side(const Transform& F, int sign, double tmax, double eps_log2) {
    SideScan side;
    double prev_mag = std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (int k = 1;; ++k) {
        const double t = sign * k * kScanStep;
        Real x;
        Ball v = F(t, &x);
        const double mag = log2_magnitude(v);
        side.values.push_back(std::move(v));
        side.limit = std::abs(t);
        side.last_x = x;
        if (mag < eps_log2 && (mag < prev_mag || std::isinf(mag))) {
            ++quiet;
        } else {
            quiet = 0;
        }
        if (quiet >= 2 && std::abs(t) >= 1.0) {
            // Observed decay rate per unit t; tail ~ |F(T)| / rate.
            const double rate = (prev_mag - mag) * std::log(2.0) / kScanStep;
            if (std::isinf(mag)) break;
            side.tail_log2 = mag - std::log2(std::max(rate, 1e-3)) + 1.0;  // factor 2 margin
            break;
        }
        prev_mag = mag;
        if (std::abs(t) >= tmax) {
            side.ok = false;
            side.tail_log2 = mag + 4.0;
            break;
        }
    }
    return side;
}

}  // namespace

Real decimal_tolerance(int digits) {
    Real r(64);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(digits < 0 ? 0 : digits), MPFR_RNDN);
    mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDD);
    return r;
}

Precision bits_for(const Real& tol) {
    if (mpfr_sgn(tol.get()) <= 0) throw std::invalid_argument("bits_for: tolerance must be positive");
    const long e = mpfr_get_exp(tol.get());
    return static_cast<Precision>(std::max<long>(1, -e + 1));
}

QuadResult quad(const Integrand& f, const QuadOptions& opts) {
    widen_exponent_range();
    if (!f.evaluate) throw std::invalid_argument("quad: integrand has no evaluator");
    const Precision prec = opts.precision;
    Transform F(f, prec);

    long tol_e = 0;
    const double tol_m = mpfr_get_d_2exp(&tol_e, opts.tolerance.get(), MPFR_RNDD);
    const double tol_log2 = std::log2(tol_m) + static_cast<double>(tol_e);
    const double eps_log2 = tol_log2 - 8.0;
    const double tmax = max_abscissa(f);

    QuadResult result;
    result.value = Ball(prec);

    Ball center = F(0.0);
    SideScan left = scan_side(F, -1, tmax, eps_log2);
    SideScan right = scan_side(F, +1, tmax, eps_log2);
    long nodes = 1 + static_cast<long>(left.values.size() + right.values.size());

    // Level 0 uses the scan nodes (h = kScanStep).
    Ball total = center;
    for (const auto& v : left.values) total += v;
    for (const auto& v : right.values) total += v;
    double h = kScanStep;
    Ball estimate = total * Ball::from_double(h, prec);

    Real tail(Ball::kRadiusPrecision);
    mpfr_set_zero(tail.get(), 1);
    for (const SideScan* side : {&left, &right}) {
        if (std::isfinite(side->tail_log2)) {
            Real t = Real::pow2(static_cast<long>(std::ceil(side->tail_log2)), Ball::kRadiusPrecision);
            mpfr_add(tail.get(), tail.get(), t.get(), MPFR_RNDU);
        }
    }
    if (f.upper_infinite && f.tail_bound) {
        Real tb = f.tail_bound(right.last_x);
        mpfr_add(tail.get(), tail.get(), tb.get(), MPFR_RNDU);
    }

    Real diff(Ball::kRadiusPrecision);
    mpfr_set_inf(diff.get(), 1);
    bool agreed = false;
    int level = 0;
    for (level = 1; level <= opts.max_level; ++level) {
        h /= 2;
        const long steps_left = std::lround(left.limit / h);
        const long steps_right = std::lround(right.limit / h);
        const long fresh = (steps_left + 1) / 2 + (steps_right + 1) / 2;
        if (nodes + fresh > opts.node_cap) break;
        for (long j = -steps_left; j <= steps_right; ++j) {
            if (j % 2 == 0) continue;
            total += F(static_cast<double>(j) * h);
        }
        nodes += fresh;
        Ball next = total * Ball::from_double(h, prec);
        Real d(Ball::kRadiusPrecision);
        mpfr_sub(d.get(), next.mid().get(), estimate.mid().get(), MPFR_RNDU);
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        diff = d;
        estimate = std::move(next);
        Real quarter(Ball::kRadiusPrecision);
        mpfr_div_2ui(quarter.get(), opts.tolerance.get(), 2, MPFR_RNDD);
        if (level >= 3 && mpfr_lessequal_p(diff.get(), quarter.get())) {
            agreed = true;
            break;
        }
    }

    estimate.add_error(diff);
    estimate.add_error(tail);
    result.value = std::move(estimate);
    result.nodes_used = nodes;
    result.levels = std::min(level, opts.max_level);
    result.converged = agreed && left.ok && right.ok &&
                       mpfr_lessequal_p(result.value.rad().get(), opts.tolerance.get());
    return result;
}

}  // namespace egamma
