#pragma once

#include "egamma/ball.hpp"

#include <gmpxx.h>

#include <mutex>
#include <vector>

namespace egamma {

/// Arbitrary-precision integer.
using Integer = mpz_class;
/// Exact rational kept in lowest terms with a positive denominator (GMP
/// canonical form). Every producer in this library canonicalizes.
using Rational = mpq_class;

/// binom(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
Rational harmonic(unsigned long n);

/// H_0, ..., H_n in one pass.
std::vector<Rational> harmonic_table(unsigned long n);

/// d_n = lcm(1, ..., n). Requires n >= 1.
Integer lcm_upto(unsigned long n);

/// Memoized d_n for sweeps that walk n upward; safe for concurrent readers.
class LcmTable {
public:
    Integer get(unsigned long n);

private:
    std::mutex mutex_;
    std::vector<Integer> values_{Integer(1)};  // values_[k] = d_k, d_0 = 1
};

/// Process-wide table shared by the criterion and Padé pipelines.
LcmTable& shared_lcm_table();

/// Shifted Legendre polynomial P_n^* in the monomial basis:
/// coeffs[k] = binom(n, k) binom(n + k, k) (-1)^(n + k).
struct LegendrePoly {
    unsigned long degree = 0;
    std::vector<Integer> coeffs;
};

LegendrePoly legendre_shifted(unsigned long n);

/// Exact Horner evaluation.
Rational legendre_eval(const LegendrePoly& p, const Rational& x);

/// P_n^*(x) for a ball argument via the three-term recurrence, which stays
/// well conditioned on [0, 1] where the monomial form cancels badly.
Ball legendre_value(unsigned long n, const Ball& x);

/// Sum of |coeffs| = |P_n^*(-1)|, the central Delannoy number.
Integer central_delannoy(unsigned long n);

}  // namespace egamma
