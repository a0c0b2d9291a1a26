#pragma once

#include "egamma/ball.hpp"
#include "egamma/combinatorics.hpp"
#include "egamma/quadrature.hpp"

#include <vector>

namespace egamma {

/// 1/ln u + 1/(1-u) on (0, 1), evaluated from the exact end-point
/// distances. Within 2^-20 of u = 1 a Gregory-coefficient series with an
/// explicit remainder bound replaces the cancelling closed form.
Ball gamma_kernel(const QuadPoint& p, Precision prec);

/// gamma = int_0^1 (1/ln u + 1/(1-u)) du to `digits` decimal digits.
QuadResult gamma_classic(int digits);

/// gamma = int_R ln(1 + e^-z) e^z / (z^2 + pi^2) dz, split at z = 0.
QuadResult gamma_new(int digits);

/// gamma at `bits` of precision with radius below 2^-(bits - 8), computed by
/// gamma_classic. Values are cached per power-of-two precision bucket, so
/// the result for a given `bits` does not depend on call order.
Ball gamma_reference(Precision bits);

/// Markov-Stieltjes weight w(t) = 1 / (t (ln^2(1/t - 1) + pi^2)).
Ball markov_stieltjes_weight(const QuadPoint& p, Precision prec);

struct MarkovStieltjesCheck {
    Ball lhs;       // 1/ln(1-u) + 1/u
    Ball rhs;       // int_0^1 w(t) / (1 - u t) dt
    Ball residual;  // |lhs - rhs|
    bool converged = false;
};

/// Requires 0 < u < 1.
MarkovStieltjesCheck markov_stieltjes_residual(const Rational& u, const Real& tol);

/// J_{n,m} = int_0^1 u^(n-m) P_n^*(u) (1/ln u + 1/(1-u)) du by quadrature.
QuadResult J_direct(long n, long m, const Real& tol);

/// Inner weight rho_m(v) of the moment representation, integrated over
/// the increasing interval [phi_2(v), phi_1(v)]. `to_quarter` is 1/4 - v.
QuadResult rho_weight(const Real& v, const Real& to_quarter, long m, const Real& tol, Precision prec);

/// int_0^{1/4} v^n rho_m(v) dv by nested quadrature.
QuadResult rho_moment(long n, long m, const Real& tol);

struct MomentCheck {
    Ball moment;    // nested quadrature
    Ball identity;  // (-1)^m J_by_identity(n, m)
    Ball residual;  // |moment - identity|
    bool converged = false;
};

/// Requires 0 <= m <= n <= 6.
MomentCheck rho_moment_residual(long n, long m, const Real& tol, const Ball& gamma_ref);

struct MonotonicityTable {
    long m = 0;
    long N = 0;
    long K = 0;
    long first_n = 1;  // max(m, 1); J_{n,m} needs m <= n
    /// entries[i][k] = (-1)^k Delta^k u_n at n = first_n + i, with
    /// u_n = (-1)^m J_{n,m}.
    std::vector<std::vector<Ball>> entries;
    /// (n, k) pairs whose enclosure is not certified positive.
    std::vector<std::pair<long, long>> uncertain;
};

/// Requires N, K >= 0 and N + K <= 40.
MonotonicityTable total_monotonicity_table(long m, long N, long K, const Ball& gamma_ref);

/// Integral form of ln(1+x) - [n/n]_x:
/// (-1)^n x^(n+1) / P_n^*(-1/x) * int_0^1 t^n (1-t)^n / (1 + x t)^(n+1) dt.
QuadResult pade_error_integral(const Rational& x, long n, const Real& tol);

}  // namespace egamma
