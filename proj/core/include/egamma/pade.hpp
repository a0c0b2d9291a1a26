#pragma once

#include "egamma/ball.hpp"
#include "egamma/combinatorics.hpp"

#include <stdexcept>
#include <vector>

namespace egamma {

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rational function num(t) / den(t), coefficients in ascending degree.
/// The ln(1+t) family keeps the integer denominator
/// sum_k binom(n,k) binom(n+k,k) t^(n-k) unnormalized.
struct PadeRational {
    unsigned long order = 0;
    std::vector<Rational> num;
    std::vector<Rational> den;
};

/// [n/n] of ln(1+t) at t = 0. Requires n >= 1.
PadeRational pade_log1p(unsigned long n);

/// Throws PoleError when the denominator vanishes at t.
Rational pade_eval(const PadeRational& p, const Rational& t);

/// Power series of num/den through degree `degree`. Requires den[0] != 0.
std::vector<Rational> series_quotient(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                      std::size_t degree);

/// Taylor coefficients of ln(1+t) through degree `degree`.
std::vector<Rational> log1p_series(std::size_t degree);

/// n = 2^p + m - 1 on the dyadic grid n - m + 1 = 2^p; throws unless n >= 1 and m <= n.
long grid_n(long p, long m);

/// Rational substitute for L_{n,m} on the grid n - m + 1 = 2^p:
/// p [n/n](1) + sum_k binom(n,k) binom(n+k,k) (-1)^(n+k) [n/n](k / 2^p).
Rational tilde_L(long p, long m);

/// {d_{2^p} (-1)^m tilde_L(p, m)} with an exact floor toward -infinity.
Rational tilde_frac(long p, long m);

/// |L_{n,m} - tilde_L(p, m)| at `prec` bits.
Ball delta_gap(long p, long m, Precision prec);

/// delta_{n,m} = sum_k binom(n,k) binom(n+k,k) (-1)^(n+k) (ln(1 + z_k) - [n/n](z_k))
/// with z_k = k / 2^p, so that L - tilde_L = p (ln 2 - [n/n](1)) + delta.
Ball delta_sum(long p, long m, Precision prec);

struct PadeCriterionRow {
    long p = 0;
    long m = 0;
    long n = 0;
    Rational Ltilde;
    Rational frac;
    Ball gap;
    Ball gap_bound;             // 4^-n / n
    bool gap_bound_ok = false;  // gap certified below gap_bound
    bool gap_asserted = false;  // n >= 10; the bound is asymptotic
};

PadeCriterionRow pade_criterion_row(long p, long m);

/// Normalized Pade pair N_n / D_n of ln(u)/(u-1) at u = 1, in powers of u.
struct LogQuotientPade {
    std::vector<Rational> N;  // degree n - 1
    std::vector<Rational> D;  // degree n
};

/// Both closed forms of each polynomial are built and compared; a
/// disagreement throws std::logic_error. Requires n >= 1.
LogQuotientPade pade_lnu_over_um1(unsigned long n);

/// Index of the first nonzero Taylor coefficient at u = 1 of
/// D_n(u) ln u - N_n(u) (u - 1), searched through degree 2n + 4; returns
/// 2n + 5 if none is found. Requires 1 <= n <= 10.
long contact_order(unsigned long n);

/// ln 2 - [n/n](1). Requires n >= 1.
Ball ln2_pade_error(unsigned long n, Precision prec);

}  // namespace egamma
