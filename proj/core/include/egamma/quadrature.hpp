#pragma once

#include "egamma/ball.hpp"
#include "egamma/combinatorics.hpp"

#include <functional>
#include <optional>

namespace egamma {

/// How the integrand behaves at an end point. The engine uses this to pick
/// how far the transformed sum must extend; integrands use the exact
/// distances in QuadPoint to evaluate stably near the end point.
enum class EndpointBehavior {
    regular,
    removable,     // finite limit reached through cancellation
    log_singular,  // like 1/(s log^2 s): integrable, slow decay after the DE map
    algebraic,     // like s^(-a) with a < 1
};

/// Evaluation point with both end-point distances carried separately so
/// that x near an end point never loses the small distance to rounding.
struct QuadPoint {
    Real x;
    Real from_lower;  // x - a
    Real to_upper;    // b - x; +inf for a semi-infinite range
};

struct Integrand {
    std::function<Ball(const QuadPoint&, Precision)> evaluate;
    Rational lower{0};
    Rational upper{1};
    bool upper_infinite = false;
    EndpointBehavior lower_behavior = EndpointBehavior::regular;
    EndpointBehavior upper_behavior = EndpointBehavior::regular;
    /// For semi-infinite ranges: upper bound on the integral of |f| over
    /// [z, inf). Added to the radius at the truncation point.
    std::function<Real(const Real& z)> tail_bound;
};

struct QuadOptions {
    Real tolerance = Real::pow2(-60);  // absolute radius target
    Precision precision = 128;
    int max_level = 12;
    long node_cap = 1L << 16;
};

struct QuadResult {
    Ball value;
    long nodes_used = 0;
    int levels = 0;
    bool converged = false;
};

/// Double-exponential quadrature: tanh-sinh on finite ranges, exp-sinh on
/// [a, inf). Step halving until two successive sums agree within a quarter
/// of the tolerance.
///
/// The radius is the sum of the accumulated ball rounding of the sum, the
/// last step-halving difference (an a posteriori discretization estimate,
/// conservative for doubly exponential convergence), an estimate of the
/// truncated transformed tails from their observed decay rate, and for
/// semi-infinite ranges the integrand's analytic tail bound.
QuadResult quad(const Integrand& f, const QuadOptions& opts);

/// Convenience: 10^(-digits) as a quadrature tolerance.
Real decimal_tolerance(int digits);

/// Bits needed so that 2^-bits <= tol.
Precision bits_for(const Real& tol);

}  // namespace egamma
