#include "egamma/pade.hpp"

#include "egamma/criterion.hpp"

#include <stdexcept>
#include <string>

namespace egamma {

namespace {

using Poly = std::vector<Rational>;

void add_term(Poly& p, std::size_t degree, const Rational& c) {
    if (p.size() <= degree) p.resize(degree + 1, Rational(0));
    p[degree] += c;
}

void canonicalize_all(Poly& p) {
    for (auto& c : p) c.canonicalize();
}

Rational eval(const Poly& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
    acc.canonicalize();
    return acc;
}

// (u - 1)^e in powers of u.
Poly shifted_power(unsigned long e) {
    Poly out(e + 1);
    for (unsigned long j = 0; j <= e; ++j) {
        Integer b = binomial(static_cast<long>(e), static_cast<long>(j));
        if ((e - j) % 2 != 0) b = -b;
        out[j] = Rational(b);
    }
    return out;
}

// p(u) rewritten in powers of x = u - 1: p(1 + x).
Poly in_powers_of_um1(const Poly& p) {
    Poly out(p.size(), Rational(0));
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0) continue;
        for (std::size_t i = 0; i <= j; ++i) {
            out[i] += p[j] * Rational(binomial(static_cast<long>(j), static_cast<long>(i)));
        }
    }
    canonicalize_all(out);
    return out;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    canonicalize_all(out);
    return out;
}

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Integer floor_of(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

}  // namespace

PadeRational pade_log1p(unsigned long n) {
    if (n < 1) throw std::invalid_argument("pade_log1p: n must be >= 1");
    const long ln = static_cast<long>(n);
    PadeRational p;
    p.order = n;
    p.num.assign(n + 1, Rational(0));
    p.den.assign(n + 1, Rational(0));
    for (long k = 0; k <= ln; ++k) {
        const Integer c = binomial(ln, k) * binomial(ln + k, k);
        p.den[static_cast<std::size_t>(ln - k)] += Rational(c);
        // t * sum_{i<k} t^(i-k+n) (-1)^i / (i+1)
        for (long i = 0; i < k; ++i) {
            Rational term(c, Integer(i + 1));
            if (i % 2 != 0) term = -term;
            p.num[static_cast<std::size_t>(1 + i - k + ln)] += term;
        }
    }
    canonicalize_all(p.num);
    canonicalize_all(p.den);
    return p;
}

Rational pade_eval(const PadeRational& p, const Rational& t) {
    const Rational d = eval(p.den, t);
    if (d == 0) throw PoleError("pade_eval: denominator vanishes at t = " + t.get_str());
    Rational out = eval(p.num, t) / d;
    out.canonicalize();
    return out;
}

std::vector<Rational> series_quotient(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                      std::size_t degree) {
    if (den.empty() || den[0] == 0) throw PoleError("series_quotient: den(0) must be nonzero");
    Poly q(degree + 1, Rational(0));
    for (std::size_t j = 0; j <= degree; ++j) {
        Rational acc = j < num.size() ? num[j] : Rational(0);
        for (std::size_t i = 1; i <= j && i < den.size(); ++i) acc -= den[i] * q[j - i];
        q[j] = acc / den[0];
        q[j].canonicalize();
    }
    return q;
}

std::vector<Rational> log1p_series(std::size_t degree) {
    Poly s(degree + 1, Rational(0));
    for (std::size_t j = 1; j <= degree; ++j) {
        s[j] = Rational(j % 2 == 1 ? 1 : -1, static_cast<unsigned long>(j));
    }
    return s;
}

long grid_n(long p, long m) {
    if (p < 0 || p > 30 || m < 0) throw std::invalid_argument("pade grid: requires 0 <= p <= 30 and m >= 0");
    const long n = (1L << p) + m - 1;
    if (n < 1 || m > n) throw std::invalid_argument("pade grid: requires n = 2^p + m - 1 >= 1 and m <= n");
    return n;
}

Rational tilde_L(long p, long m) {
    const long n = grid_n(p, m);
    const long q = 1L << p;  // n - m + 1
    const PadeRational P = pade_log1p(static_cast<unsigned long>(n));
    const LegendrePoly leg = legendre_shifted(static_cast<unsigned long>(n));
    Rational out = Rational(p) * pade_eval(P, Rational(1));
    for (long k = 1; k <= n; ++k) {  // [n/n](0) = 0
        Rational zeta(k, q);
        zeta.canonicalize();
        out += Rational(leg.coeffs[static_cast<std::size_t>(k)]) * pade_eval(P, zeta);
    }
    out.canonicalize();
    return out;
}

Rational tilde_frac(long p, long m) {
    const Integer d = shared_lcm_table().get(1UL << p);
    Rational x = Rational(d) * tilde_L(p, m);
    if (m % 2 != 0) x = -x;
    x.canonicalize();
    Rational f = x - Rational(floor_of(x));
    f.canonicalize();
    return f;
}

Ball delta_gap(long p, long m, Precision prec) {
    const long n = grid_n(p, m);
    return abs(L_nm(n, m, prec) - Ball::from_rational(tilde_L(p, m), prec));
}

Ball delta_sum(long p, long m, Precision prec) {
    const long n = grid_n(p, m);
    const long q = 1L << p;
    const PadeRational P = pade_log1p(static_cast<unsigned long>(n));
    const LegendrePoly leg = legendre_shifted(static_cast<unsigned long>(n));
    Ball acc(prec);
    for (long k = 1; k <= n; ++k) {
        Rational zeta(k, q);
        zeta.canonicalize();
        const Ball diff = log1p(Ball::from_rational(zeta, prec)) - Ball::from_rational(pade_eval(P, zeta), prec);
        acc += diff * leg.coeffs[static_cast<std::size_t>(k)];
    }
    return acc;
}

PadeCriterionRow pade_criterion_row(long p, long m) {
    PadeCriterionRow row;
    row.p = p;
    row.m = m;
    row.n = grid_n(p, m);
    row.Ltilde = tilde_L(p, m);
    row.frac = tilde_frac(p, m);
    const Precision prec = working_precision(row.n, 2 * row.n + 64);
    row.gap = abs(L_nm(row.n, m, prec) - Ball::from_rational(row.Ltilde, prec));
    row.gap_bound = ldexp(Ball(prec, 1), -2 * row.n) / row.n;
    row.gap_bound_ok = row.gap.less_than(row.gap_bound);
    row.gap_asserted = row.n >= 10;
    return row;
}

LogQuotientPade pade_lnu_over_um1(unsigned long n) {
    if (n < 1) throw std::invalid_argument("pade_lnu_over_um1: n must be >= 1");
    const long ln = static_cast<long>(n);
    const Rational inv_central(Integer(1), binomial(2 * ln, ln));
    const auto H = harmonic_table(n);

    Poly D1, D2, N1, N2;
    for (long k = 0; k <= ln; ++k) {
        const Integer b = binomial(ln, k);
        add_term(D1, static_cast<std::size_t>(k), Rational(b * b) * inv_central);

        // binom(n,k) binom(n+k,k) (1-u)^(n-k) u^k
        const Integer c = b * binomial(ln + k, k);
        Poly one_minus = shifted_power(static_cast<unsigned long>(ln - k));
        if ((ln - k) % 2 != 0) {
            for (auto& x : one_minus) x = -x;
        }
        for (std::size_t j = 0; j < one_minus.size(); ++j) {
            add_term(D2, j + static_cast<std::size_t>(k), one_minus[j] * Rational(c) * inv_central);
        }

        // sum_{i<k} (u-1)^(n-k+i) (-1)^i / (i+1)
        for (long i = 0; i < k; ++i) {
            Rational scale = Rational(c, Integer(i + 1)) * inv_central;
            if (i % 2 != 0) scale = -scale;
            const Poly pw = shifted_power(static_cast<unsigned long>(ln - k + i));
            for (std::size_t j = 0; j < pw.size(); ++j) add_term(N2, j, pw[j] * scale);
        }
    }
    for (long k = 1; k <= ln; ++k) {
        Rational coeff(0);
        for (long i = 0; i < k; ++i) {
            const Integer b = binomial(ln, i);
            coeff += Rational(b * b) * (H[static_cast<std::size_t>(ln - i)] - H[static_cast<std::size_t>(i)]);
        }
        add_term(N1, static_cast<std::size_t>(k - 1), 2 * coeff * inv_central);
    }
    for (Poly* p : {&D1, &D2, &N1, &N2}) {
        canonicalize_all(*p);
        trim(*p);
    }
    if (D1 != D2) throw std::logic_error("pade_lnu_over_um1: the two forms of D_n disagree");
    if (N1 != N2) throw std::logic_error("pade_lnu_over_um1: the two forms of N_n disagree");
    return {std::move(N1), std::move(D1)};
}

long contact_order(unsigned long n) {
    if (n < 1 || n > 10) throw std::invalid_argument("contact_order: requires 1 <= n <= 10");
    const std::size_t cutoff = 2 * n + 4;
    const LogQuotientPade pq = pade_lnu_over_um1(n);
    // In x = u - 1: D(1+x) ln(1+x) - N(1+x) x.
    Poly lhs = multiply(in_powers_of_um1(pq.D), log1p_series(cutoff));
    Poly rhs = multiply(in_powers_of_um1(pq.N), Poly{Rational(0), Rational(1)});
    for (std::size_t j = 0; j <= cutoff; ++j) {
        const Rational a = j < lhs.size() ? lhs[j] : Rational(0);
        const Rational b = j < rhs.size() ? rhs[j] : Rational(0);
        if (a != b) return static_cast<long>(j);
    }
    return static_cast<long>(cutoff + 1);
}

Ball ln2_pade_error(unsigned long n, Precision prec) {
    const Rational approx = pade_eval(pade_log1p(n), Rational(1));
    return Ball::log2(prec) - Ball::from_rational(approx, prec);
}

}  // namespace egamma
