#include "egamma/analytic.hpp"

#include "egamma/criterion.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace egamma {

namespace {

constexpr long kSeriesCutoffLog2 = -20;  // series patch on s <= 2^-20

// Coefficients g_j of 1/ln(1-s) + 1/s = sum_j g_j s^j, all positive and
// decreasing (absolute Gregory coefficients |G_{j+1}|).
class GregoryTable {
public:
    std::vector<Rational> upto(std::size_t count) {
        std::lock_guard lock(mutex_);
        while (G_.size() < count + 2) {
            const std::size_t n = G_.size();
            Rational g(0);
            for (std::size_t j = 1; j <= n; ++j) {
                Rational term(1, static_cast<unsigned long>(j + 1));
                if (j % 2 == 1) term = -term;
                g -= term * G_[n - j];
            }
            g.canonicalize();
            G_.push_back(std::move(g));
        }
        std::vector<Rational> out;
        out.reserve(count + 1);
        for (std::size_t j = 0; j <= count; ++j) out.push_back(abs(G_[j + 1]));
        return out;
    }

private:
    std::mutex mutex_;
    std::vector<Rational> G_{Rational(1)};  // x / ln(1 + x) = sum_n G_n x^n
};

GregoryTable& gregory() {
    static GregoryTable t;
    return t;
}

Ball kernel_series(const Real& s, Precision prec) {
    const std::size_t terms = static_cast<std::size_t>(prec / -kSeriesCutoffLog2 + 2);
    const auto g = gregory().upto(terms);
    const Ball sb = Ball::from_real(s, prec);
    Ball acc(prec);
    for (std::size_t j = terms; j-- > 0;) acc = acc * sb + Ball::from_rational(g[j], prec);
    // Remainder: sum_{j >= terms} g_j s^j <= g_terms s^terms / (1 - s) <= 2 g_terms s^terms.
    Ball rem = Ball::from_rational(g[terms], prec) * pow(sb, terms) * 2L;
    acc.add_error(rem);
    return acc;
}

Ball pi_squared(Precision prec) { return sqr(Ball::pi(prec)); }

}  // namespace

Ball gamma_kernel(const QuadPoint& p, Precision prec) {
    const Real& s = p.to_upper;
    if (mpfr_zero_p(s.get())) return Ball(prec, 1) / 2L;
    const long es = mpfr_get_exp(s.get());
    if (es <= kSeriesCutoffLog2) return kernel_series(s, prec);
    // 1/ln u and 1/(1-u) cancel to O(1) from magnitude 1/s.
    const Precision wp = prec + std::max<long>(0, -es) + 8;
    const Ball sb = Ball::from_real(s, wp);
    Ball ln_u = (es <= -1) ? log1p(-sb) : log(Ball::from_real(p.from_lower, wp));
    Ball out = Ball(wp, 1) / ln_u + Ball(wp, 1) / sb;
    return out.with_precision(prec);
}

QuadResult gamma_classic(int digits) {
    if (digits < 1) throw std::invalid_argument("gamma_classic: digits must be >= 1");
    Integrand f;
    f.evaluate = gamma_kernel;
    f.lower = 0;
    f.upper = 1;
    f.lower_behavior = EndpointBehavior::regular;
    f.upper_behavior = EndpointBehavior::removable;
    QuadOptions opts;
    opts.tolerance = decimal_tolerance(digits + 1);
    opts.precision = bits_for(opts.tolerance) + 32;
    return quad(f, opts);
}

QuadResult gamma_new(int digits) {
    if (digits < 1) throw std::invalid_argument("gamma_new: digits must be >= 1");
    QuadOptions opts;
    opts.tolerance = decimal_tolerance(digits + 1);
    mpfr_div_2ui(opts.tolerance.get(), opts.tolerance.get(), 1, MPFR_RNDD);
    opts.precision = bits_for(opts.tolerance) + 32;
    const Precision prec = opts.precision;

    // z >= 0: ln(1 + e^-z) e^z / (z^2 + pi^2), and ln(1 + e^-z) e^z <= 1.
    Integrand right;
    right.upper_infinite = true;
    right.evaluate = [](const QuadPoint& p, Precision wp) {
        const Ball z = Ball::from_real(p.x, wp);
        const Ball den = sqr(z) + pi_squared(wp);
        Ball num(wp);
        if (mpfr_cmp_si(p.x.get(), static_cast<long>(wp) + 16) > 0) {
            // 1 - e^-z/2 <= ln(1 + e^-z) e^z <= 1 and e^-z < 2^-(wp + 16).
            num = Ball(wp, 1);
            num.add_error(Real::pow2(-static_cast<long>(wp) - 16));
        } else {
            num = log1p(exp(-z)) * exp(z);
        }
        return num / den;
    };
    right.tail_bound = [](const Real& z) {
        Real r(Ball::kRadiusPrecision);
        mpfr_ui_div(r.get(), 1, z.get(), MPFR_RNDU);
        return r;
    };

    // z = -y <= 0: ln(1 + e^y) e^-y / (y^2 + pi^2) = (y + ln(1 + e^-y)) e^-y / (y^2 + pi^2).
    Integrand left;
    left.upper_infinite = true;
    left.evaluate = [](const QuadPoint& p, Precision wp) {
        const Ball y = Ball::from_real(p.x, wp);
        const Ball e = exp(-y);
        return (y + log1p(e)) * e / (sqr(y) + pi_squared(wp));
    };
    left.tail_bound = [](const Real& y) {
        // (y + ln 2) / y^2 <= 2 / y for y >= 1, so the tail is below 2 e^-y / y.
        Real r(Ball::kRadiusPrecision);
        if (mpfr_cmp_ui(y.get(), 1) < 0) {
            mpfr_set_ui(r.get(), 2, MPFR_RNDU);
            return r;
        }
        Real e(64);
        mpfr_neg(e.get(), y.get(), MPFR_RNDU);
        mpfr_exp(e.get(), e.get(), MPFR_RNDU);
        mpfr_mul_2ui(e.get(), e.get(), 1, MPFR_RNDU);
        mpfr_div(r.get(), e.get(), y.get(), MPFR_RNDU);
        return r;
    };

    QuadResult a = quad(right, opts);
    QuadResult b = quad(left, opts);
    QuadResult out;
    out.value = a.value + b.value;
    out.nodes_used = a.nodes_used + b.nodes_used;
    out.levels = std::max(a.levels, b.levels);
    Real full = decimal_tolerance(digits + 1);
    out.converged = a.converged && b.converged && mpfr_lessequal_p(out.value.rad().get(), full.get());
    (void)prec;
    return out;
}

Ball gamma_reference(Precision bits) {
    static std::mutex mutex;
    static std::map<Precision, Ball> cache;
    const Precision bucket = std::max<Precision>(128, static_cast<Precision>(std::bit_ceil(
                                                          static_cast<unsigned long>(bits + 16))));
    std::lock_guard lock(mutex);
    auto it = cache.find(bucket);
    if (it == cache.end()) {
        Integrand f;
        f.evaluate = gamma_kernel;
        f.upper_behavior = EndpointBehavior::removable;
        QuadOptions opts;
        opts.tolerance = Real::pow2(-static_cast<long>(bucket) + 4);
        opts.precision = bucket + 32;
        opts.max_level = 16;
        opts.node_cap = 1L << 20;
        QuadResult r = quad(f, opts);
        if (!r.converged) {
            throw std::runtime_error("gamma_reference: quadrature did not converge at " + std::to_string(bucket) +
                                     " bits");
        }
        it = cache.emplace(bucket, std::move(r.value)).first;
    }
    return it->second.with_precision(bits);
}

Ball markov_stieltjes_weight(const QuadPoint& p, Precision prec) {
    const Ball t = Ball::from_real(p.from_lower, prec);
    const Ball ln_ratio = log(Ball::from_real(p.to_upper, prec)) - log(t);  // ln(1/t - 1)
    return Ball(prec, 1) / (t * (sqr(ln_ratio) + pi_squared(prec)));
}

MarkovStieltjesCheck markov_stieltjes_residual(const Rational& u, const Real& tol) {
    if (u <= 0 || u >= 1) throw std::invalid_argument("markov_stieltjes_residual: requires 0 < u < 1");
    const Precision prec = bits_for(tol) + 32;
    MarkovStieltjesCheck out;
    const Ball ub = Ball::from_rational(u, prec);
    out.lhs = Ball(prec, 1) / log1p(-ub) + Ball(prec, 1) / ub;

    Integrand f;
    f.evaluate = [u](const QuadPoint& p, Precision wp) {
        const Ball t = Ball::from_real(p.x, wp);
        return markov_stieltjes_weight(p, wp) / (Ball(wp, 1) - Ball::from_rational(u, wp) * t);
    };
    f.lower_behavior = EndpointBehavior::log_singular;
    f.upper_behavior = EndpointBehavior::regular;
    QuadOptions opts;
    opts.tolerance = tol;
    mpfr_div_2ui(opts.tolerance.get(), opts.tolerance.get(), 1, MPFR_RNDD);
    opts.precision = prec;
    QuadResult r = quad(f, opts);
    out.rhs = r.value;
    out.residual = abs(out.lhs - out.rhs);
    out.converged = r.converged;
    return out;
}

QuadResult J_direct(long n, long m, const Real& tol) {
    if (n < 0 || m < 0 || m > n) throw std::invalid_argument("J_direct: requires 0 <= m <= n");
    Integrand f;
    f.evaluate = [n, m](const QuadPoint& p, Precision wp) {
        const Ball u = Ball::from_real(p.x, wp);
        Ball poly = legendre_value(static_cast<unsigned long>(n), u);
        if (n - m > 0) poly *= pow(u, static_cast<unsigned long>(n - m));
        return poly * gamma_kernel(p, wp);
    };
    f.upper_behavior = EndpointBehavior::removable;
    QuadOptions opts;
    opts.tolerance = tol;
    opts.precision = bits_for(tol) + 40;
    opts.max_level = 14;
    return quad(f, opts);
}

QuadResult rho_weight(const Real& v, const Real& to_quarter, long m, const Real& tol, Precision prec) {
    if (m < 0) throw std::invalid_argument("rho_weight: m must be >= 0");
    // Interval [phi_2, phi_1] has width w = sqrt(1 - 4v) = 2 sqrt(1/4 - v);
    // phi_2 = (1 - w)/2 = 2v / (1 + w) avoids cancellation for small v.
    const Ball vb = Ball::from_real(v, prec);
    const Ball w = sqrt(Ball::from_real(to_quarter, prec)) * 2L;
    const Ball phi2 = vb * 2L / (Ball(prec, 1) + w);
    const Ball ln_v = log(vb);
    const Ball ln_w = log(w);
    const Ball pi2 = pi_squared(prec);

    // u = phi_2 + w sigma with sigma in [0, 1]; u - u^2 - v = w^2 sigma (1 - sigma).
    Integrand f;
    f.evaluate = [&](const QuadPoint& p, Precision wp) {
        const Ball sigma = Ball::from_real(p.from_lower, wp);
        const Ball rest = Ball::from_real(p.to_upper, wp);
        const Ball u = phi2.with_precision(wp) + w.with_precision(wp) * sigma;
        const Ball g = sqr(w.with_precision(wp)) * sigma * rest;
        const Ball ln_g = ln_w * 2L + log(sigma) + log(rest);
        const Ball ln_ratio = log(u) + ln_v - ln_g;  // ln(u v / g)
        Ball val = w / (g * (pi2 + sqr(ln_ratio)));
        if (m > 0) val *= pow(g / (u * vb), static_cast<unsigned long>(m));
        return val;
    };
    const auto behavior = (m == 0) ? EndpointBehavior::log_singular : EndpointBehavior::regular;
    f.lower_behavior = behavior;
    f.upper_behavior = behavior;
    QuadOptions opts;
    opts.tolerance = tol;
    opts.precision = prec;
    opts.max_level = 10;
    return quad(f, opts);
}

QuadResult rho_moment(long n, long m, const Real& tol) {
    if (n < 0 || m < 0 || m > n) throw std::invalid_argument("rho_moment: requires 0 <= m <= n");
    const Precision prec = std::max<Precision>(64, bits_for(tol) + 24);
    Real inner_tol = tol;
    mpfr_div_2ui(inner_tol.get(), inner_tol.get(), 6, MPFR_RNDD);
    Integrand f;
    f.evaluate = [&](const QuadPoint& p, Precision wp) {
        if (mpfr_zero_p(p.from_lower.get()) || mpfr_zero_p(p.to_upper.get())) return Ball(wp);
        const QuadResult inner = rho_weight(p.from_lower, p.to_upper, m, inner_tol, wp);
        const Ball v = Ball::from_real(p.from_lower, wp);
        return pow(v, static_cast<unsigned long>(n)) * inner.value;
    };
    f.lower = 0;
    f.upper = Rational(1, 4);
    f.lower_behavior = EndpointBehavior::regular;
    f.upper_behavior = EndpointBehavior::algebraic;
    QuadOptions opts;
    opts.tolerance = tol;
    mpfr_div_2ui(opts.tolerance.get(), opts.tolerance.get(), 1, MPFR_RNDD);
    opts.precision = prec;
    opts.max_level = 10;
    return quad(f, opts);
}

MomentCheck rho_moment_residual(long n, long m, const Real& tol, const Ball& gamma_ref) {
    if (n < 0 || m < 0 || m > n || n > 6) throw std::invalid_argument("rho_moment_residual: requires 0 <= m <= n <= 6");
    MomentCheck out;
    QuadResult r = rho_moment(n, m, tol);
    out.moment = r.value;
    Ball j = J_by_identity(n, m, gamma_ref);
    out.identity = (m % 2 == 0) ? j : -j;
    out.residual = abs(out.moment - out.identity);
    out.converged = r.converged;
    return out;
}

MonotonicityTable total_monotonicity_table(long m, long N, long K, const Ball& gamma_ref) {
    if (m < 0 || N < 1 || K < 0 || N + K > 40) {
        throw std::invalid_argument("total_monotonicity_table: requires m >= 0, N >= 1, K >= 0, N + K <= 40");
    }
    MonotonicityTable t;
    t.m = m;
    t.N = N;
    t.K = K;
    t.first_n = std::max<long>(m, 1);
    const Precision prec = gamma_ref.precision();

    // u_n for n = first_n .. first_n + N + K - 1, sign-normalized.
    std::vector<Ball> diff;
    for (long i = 0; i < N + K; ++i) {
        const long n = t.first_n + i;
        Ball j = gamma_ref - Ball::from_rational(A_nm(static_cast<unsigned long>(n)), prec) + L_nm(n, m, prec);
        diff.push_back((m % 2 == 0) ? j : -j);
    }
    t.entries.assign(static_cast<std::size_t>(N), std::vector<Ball>(static_cast<std::size_t>(K + 1)));
    for (long k = 0; k <= K; ++k) {
        for (long i = 0; i < N; ++i) {
            Ball e = (k % 2 == 0) ? diff[static_cast<std::size_t>(i)] : -diff[static_cast<std::size_t>(i)];
            if (!e.is_positive()) t.uncertain.emplace_back(t.first_n + i, k);
            t.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = std::move(e);
        }
        // Delta^{k+1} u_n = Delta^k u_{n+1} - Delta^k u_n
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        if (!diff.empty()) diff.pop_back();
    }
    return t;
}

QuadResult pade_error_integral(const Rational& x, long n, const Real& tol) {
    if (n < 1 || x <= 0) throw std::invalid_argument("pade_error_integral: requires n >= 1 and x > 0");
    const Rational neg_inv = -1 / x;
    Rational factor = legendre_eval(legendre_shifted(static_cast<unsigned long>(n)), Rational(neg_inv));
    Rational xp(1);
    for (long i = 0; i <= n; ++i) xp *= x;
    factor = xp / factor;
    if (n % 2 != 0) factor = -factor;
    factor.canonicalize();

    Integrand f;
    f.evaluate = [x, n](const QuadPoint& p, Precision wp) {
        const Ball t = Ball::from_real(p.from_lower, wp);
        const Ball rest = Ball::from_real(p.to_upper, wp);
        const Ball num = pow(t * rest, static_cast<unsigned long>(n));
        const Ball den = pow(Ball(wp, 1) + Ball::from_rational(x, wp) * t, static_cast<unsigned long>(n + 1));
        return num / den;
    };
    QuadOptions opts;
    // The integral is multiplied by |factor| <= 1 for x in (0, 1].
    opts.tolerance = tol;
    opts.precision = bits_for(tol) + 32;
    QuadResult r = quad(f, opts);
    r.value = r.value * Ball::from_rational(factor, opts.precision);
    return r;
}

}  // namespace egamma
