#pragma once

#include "egamma/ball.hpp"
#include "egamma/combinatorics.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace egamma {

class PrecisionOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The enclosure of (-1)^m J contains zero; recompute at higher precision.
class SignUncertain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The enclosure straddles an integer, so its fractional part is not
/// determined; recompute at higher precision.
class BoundaryAmbiguous : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bit budget for evaluating d_n L_{n,m}. The alternating sum cancels about
/// log2(3 + 2 sqrt 2) bits per unit of n and d_n <= e^{1.039 n} adds about
/// 1.039 / ln 2 bits per unit of n.
struct PrecisionPolicy {
    double cancellation_bits_per_n = 2.5431066063272239;  // log2(3 + 2 sqrt 2)
    double lcm_bits_per_n = 1.4989485833337544;           // 1.039 / ln 2
    long guard_bits = 64;
    long hard_cap_bits = 1'000'000;

    /// Defaults, with the hard cap taken from EGAMMA_PREC_CAP when set.
    static PrecisionPolicy from_environment();
};

long working_precision(long n, long target_frac_bits, const PrecisionPolicy& policy = {});

/// A_{n,m} = 2 H_n (independent of m).
Rational A_nm(unsigned long n);

/// L_{n,m} = sum_k binom(n,k) binom(n+k,k) (-1)^(n+k) ln(n - m + k + 1).
/// Throws PrecisionOverflow when `prec` exceeds the policy's hard cap.
Ball L_nm(long n, long m, Precision prec, const PrecisionPolicy& policy = {});

/// J_{n,m} = gamma - A_{n,m} + L_{n,m} at the precision of `gamma_ref`.
/// Throws SignUncertain when the enclosure of (-1)^m J contains zero.
Ball J_by_identity(long n, long m, const Ball& gamma_ref);

/// {x} = x - floor(x) for an enclosure that does not straddle an integer;
/// throws BoundaryAmbiguous otherwise.
Ball frac_part(const Ball& x);

struct CriterionRow {
    long n = 0;
    long m = 0;
    Ball L;
    Rational A;
    Ball J;
    Ball frac_signed;    // {d_n (-1)^m L_{n,m}}
    Ball frac_unsigned;  // {d_n L_{n,m}}
    Ball table_ratio;    // 0.7^n / frac_unsigned
    long prec_bits = 0;
    bool frac_resolved = false;     // both enclosures clear of integers
    bool certified = false;
    bool j_sign_certified = false;  // (-1)^m J enclosure is strictly positive
};

/// One sweep record. Precision doubles from working_precision() until both
/// fractional parts have radius below 2^-target_frac_bits and sit strictly
/// inside (0, 1), or the hard cap is hit (row left uncertified).
CriterionRow criterion_row(long n, long m, long target_frac_bits,
                           const PrecisionPolicy& policy = {});

struct SweepResult {
    std::vector<CriterionRow> rows;  // ordered by (n, m)
    /// cumavg[i] pairs with rows[i]: mean of frac_signed over n' <= n for
    /// the row's m.
    std::vector<double> cumavg;
};

/// Rows for n_lo <= n <= n_hi and each m in m_list with m <= n, computed on
/// `workers` threads and returned in (n, m) order.
std::vector<CriterionRow> sweep_range(long n_lo, long n_hi, const std::vector<long>& m_list, long target_frac_bits,
                                      unsigned workers = 1, const PrecisionPolicy& policy = {});

/// Rows for n = 1..n_max and each m in m_list with m <= n. Rows are computed
/// on `workers` threads and merged in (n, m) order.
SweepResult sweep(long n_max, const std::vector<long>& m_list, long target_frac_bits,
                  unsigned workers = 1, const PrecisionPolicy& policy = {});

/// Per-m running sums of frac_signed midpoints (as doubles, in row order).
class CumulativeMean {
public:
    double push(long m, double value);
    std::map<long, std::pair<double, long>>& state() { return acc_; }

private:
    std::map<long, std::pair<double, long>> acc_;  // m -> (sum, count)
};

/// Running means of frac_signed per m, aligned with `rows`. Accumulates the
/// double-rounded midpoints in row order so that resumed runs reproduce the
/// same values from checkpointed rows.
std::vector<double> cumulative_averages(const std::vector<CriterionRow>& rows);

/// Sondow's A_n = sum_i binom(n,i)^2 H_{n+i}; requires n >= 1.
Rational sondow_A(unsigned long n);

/// Sondow's L_n = 2 sum_{k=1}^n sum_{i<k} binom(n,i)^2 (H_{n-i} - H_i) ln(n+k).
Ball sondow_L(unsigned long n, Precision prec);

/// I_n = binom(2n,n) gamma + L_n - A_n.
Ball sondow_I(unsigned long n, const Ball& gamma_ref, Precision prec);

}  // namespace egamma
