#include "egamma/criterion.hpp"

#include "egamma/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

namespace egamma {

PrecisionPolicy PrecisionPolicy::from_environment() {
    PrecisionPolicy p;
    if (const char* env = std::getenv("EGAMMA_PREC_CAP"); env != nullptr && *env != '\0') {
        try {
            const long cap = std::stol(env);
            if (cap > 0) p.hard_cap_bits = cap;
        } catch (const std::exception&) {
            // Malformed values leave the default in place.
        }
    }
    return p;
}

long working_precision(long n, long target_frac_bits, const PrecisionPolicy& policy) {
    if (n < 1 || target_frac_bits < 1) throw std::invalid_argument("working_precision: n and target bits must be >= 1");
    const double per_n = policy.cancellation_bits_per_n + policy.lcm_bits_per_n;
    return static_cast<long>(std::ceil(static_cast<double>(n) * per_n)) + target_frac_bits + policy.guard_bits;
}

Rational A_nm(unsigned long n) {
    Rational a = 2 * harmonic(n);
    a.canonicalize();
    return a;
}

Ball L_nm(long n, long m, Precision prec, const PrecisionPolicy& policy) {
    if (n < 1 || m < 0 || m > n) throw std::invalid_argument("L_nm: requires 1 <= n and 0 <= m <= n");
    if (prec > policy.hard_cap_bits) {
        throw PrecisionOverflow("L_nm: precision " + std::to_string(prec) + " exceeds cap " +
                                std::to_string(policy.hard_cap_bits));
    }
    const LegendrePoly p = legendre_shifted(static_cast<unsigned long>(n));
    Ball acc(prec);
    for (long k = 0; k <= n; ++k) {
        const long arg = n - m + k + 1;
        if (arg == 1) continue;  // ln 1 = 0
        acc += log(Ball(prec, arg)) * p.coeffs[static_cast<std::size_t>(k)];
    }
    return acc;
}

namespace {

Ball remainder_from(long n, long m, const Ball& gamma_ref) {
    const Precision prec = gamma_ref.precision();
    return gamma_ref - Ball::from_rational(A_nm(static_cast<unsigned long>(n)), prec) + L_nm(n, m, prec);
}

Ball signed_by_parity(const Ball& x, long m) { return (m % 2 == 0) ? x : -x; }

}  // namespace

Ball J_by_identity(long n, long m, const Ball& gamma_ref) {
    Ball j = remainder_from(n, m, gamma_ref);
    if (!signed_by_parity(j, m).is_positive()) {
        throw SignUncertain("J_by_identity: sign of (-1)^m J not certified for n=" + std::to_string(n) +
                            ", m=" + std::to_string(m));
    }
    return j;
}

Ball frac_part(const Ball& x) {
    const Real lo = x.lower();
    const Real hi = x.upper();
    Integer fl, fh;
    mpfr_get_z(fl.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(fh.get_mpz_t(), hi.get(), MPFR_RNDD);
    // An enclosure touching an integer (lo == floor(lo)) is ambiguous too.
    if (fl != fh || mpfr_cmp_z(lo.get(), fl.get_mpz_t()) == 0) {
        throw BoundaryAmbiguous("frac_part: enclosure contains an integer");
    }
    return x - Ball::from_integer(fl, x.precision());
}

CriterionRow criterion_row(long n, long m, long target_frac_bits, const PrecisionPolicy& policy) {
    if (n < 1 || m < 0 || m > n) throw std::invalid_argument("criterion_row: requires 1 <= n and 0 <= m <= n");
    const Integer d = shared_lcm_table().get(static_cast<unsigned long>(n));
    const Real tol = Real::pow2(-target_frac_bits);
    Rational seven_tenths(7, 10);
    Rational ratio_num(1);
    for (long i = 0; i < n; ++i) ratio_num *= seven_tenths;
    ratio_num.canonicalize();

    CriterionRow row;
    row.n = n;
    row.m = m;
    row.A = A_nm(static_cast<unsigned long>(n));

    long prec = std::min(working_precision(n, target_frac_bits, policy), policy.hard_cap_bits);
    for (;;) {
        row.prec_bits = prec;
        row.L = L_nm(n, m, prec, policy);
        const Ball x = row.L * d;
        bool ok = true;
        try {
            row.frac_unsigned = frac_part(x);
            row.frac_signed = frac_part(signed_by_parity(x, m));
        } catch (const BoundaryAmbiguous&) {
            ok = false;
        }
        const bool resolved = ok;
        row.frac_resolved = resolved;
        if (ok) {
            ok = mpfr_lessequal_p(row.frac_unsigned.rad().get(), tol.get()) &&
                 mpfr_lessequal_p(row.frac_signed.rad().get(), tol.get());
        }
        if (ok || prec >= policy.hard_cap_bits) {
            row.certified = ok;
            if (resolved && row.frac_unsigned.is_positive()) {
                row.table_ratio = Ball::from_rational(ratio_num, prec) / row.frac_unsigned;
            }
            break;
        }
        prec = std::min(prec * 2, policy.hard_cap_bits);
    }

    row.J = remainder_from(n, m, gamma_reference(static_cast<Precision>(prec)));
    row.j_sign_certified = signed_by_parity(row.J, m).is_positive();
    return row;
}

double CumulativeMean::push(long m, double value) {
    auto& [sum, count] = acc_[m];
    sum += value;
    ++count;
    return sum / static_cast<double>(count);
}

std::vector<double> cumulative_averages(const std::vector<CriterionRow>& rows) {
    CumulativeMean mean;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(mean.push(r.m, r.frac_signed.mid_double()));
    return out;
}

std::vector<CriterionRow> sweep_range(long n_lo, long n_hi, const std::vector<long>& m_list, long target_frac_bits,
                                      unsigned workers, const PrecisionPolicy& policy) {
    if (n_lo < 1) throw std::invalid_argument("sweep_range: n_lo must be >= 1");
    std::vector<long> ms = m_list;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

    std::vector<std::pair<long, long>> tasks;
    for (long n = n_lo; n <= n_hi; ++n) {
        for (long m : ms) {
            if (m >= 0 && m <= n) tasks.emplace_back(n, m);
        }
    }

    std::vector<CriterionRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            rows[i] = criterion_row(tasks[i].first, tasks[i].second, target_frac_bits, policy);
        }
    };
    const unsigned count = std::max(1u, workers);
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

SweepResult sweep(long n_max, const std::vector<long>& m_list, long target_frac_bits, unsigned workers,
                  const PrecisionPolicy& policy) {
    if (n_max < 1) throw std::invalid_argument("sweep: n_max must be >= 1");
    SweepResult result;
    result.rows = sweep_range(1, n_max, m_list, target_frac_bits, workers, policy);
    result.cumavg = cumulative_averages(result.rows);
    return result;
}

Rational sondow_A(unsigned long n) {
    if (n < 1) throw std::invalid_argument("sondow_A: n must be >= 1");
    const auto h = harmonic_table(2 * n);
    const long ln = static_cast<long>(n);
    Rational a(0);
    for (long i = 0; i <= ln; ++i) {
        const Integer b = binomial(ln, i);
        a += Rational(b * b) * h[static_cast<std::size_t>(ln + i)];
    }
    a.canonicalize();
    return a;
}

Ball sondow_L(unsigned long n, Precision prec) {
    if (n < 1) throw std::invalid_argument("sondow_L: n must be >= 1");
    const auto h = harmonic_table(n);
    const long ln = static_cast<long>(n);
    Ball acc(prec);
    Rational coeff(0);  // running inner sum over i < k
    for (long k = 1; k <= ln; ++k) {
        const long i = k - 1;
        const Integer b = binomial(ln, i);
        coeff += Rational(b * b) * (h[static_cast<std::size_t>(ln - i)] - h[static_cast<std::size_t>(i)]);
        coeff.canonicalize();
        if (coeff == 0) continue;
        const Rational c2 = 2 * coeff;
        acc += Ball::from_rational(c2, prec) * log(Ball(prec, ln + k));
    }
    return acc;
}

Ball sondow_I(unsigned long n, const Ball& gamma_ref, Precision prec) {
    const long ln = static_cast<long>(n);
    const Ball g = gamma_ref.with_precision(prec);
    return g * binomial(2 * ln, ln) + sondow_L(n, prec) - Ball::from_rational(sondow_A(n), prec);
}

}  // namespace egamma
