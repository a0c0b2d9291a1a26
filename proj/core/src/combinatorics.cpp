#include "egamma/combinatorics.hpp"

#include <stdexcept>

namespace egamma {

Integer binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational harmonic(unsigned long n) {
    Rational h(0);
    for (unsigned long k = 1; k <= n; ++k) h += Rational(1, k);
    h.canonicalize();
    return h;
}

std::vector<Rational> harmonic_table(unsigned long n) {
    std::vector<Rational> out;
    out.reserve(n + 1);
    out.emplace_back(0);
    for (unsigned long k = 1; k <= n; ++k) {
        Rational next = out.back() + Rational(1, k);
        next.canonicalize();
        out.push_back(std::move(next));
    }
    return out;
}

Integer lcm_upto(unsigned long n) {
    if (n < 1) throw std::invalid_argument("lcm_upto: n must be at least 1");
    Integer d(1);
    for (unsigned long k = 2; k <= n; ++k) mpz_lcm_ui(d.get_mpz_t(), d.get_mpz_t(), k);
    return d;
}

Integer LcmTable::get(unsigned long n) {
    if (n < 1) throw std::invalid_argument("LcmTable: n must be at least 1");
    std::lock_guard lock(mutex_);
    while (values_.size() <= n) {
        Integer next;
        mpz_lcm_ui(next.get_mpz_t(), values_.back().get_mpz_t(), values_.size());
        values_.push_back(std::move(next));
    }
    return values_[n];
}

LcmTable& shared_lcm_table() {
    static LcmTable table;
    return table;
}

LegendrePoly legendre_shifted(unsigned long n) {
    LegendrePoly p;
    p.degree = n;
    p.coeffs.reserve(n + 1);
    const long ln = static_cast<long>(n);
    for (long k = 0; k <= ln; ++k) {
        Integer c = binomial(ln, k) * binomial(ln + k, k);
        if ((ln + k) % 2 != 0) c = -c;
        p.coeffs.push_back(std::move(c));
    }
    return p;
}

Rational legendre_eval(const LegendrePoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc = acc * x + Rational(*it);
    }
    acc.canonicalize();
    return acc;
}

Ball legendre_value(unsigned long n, const Ball& x) {
    const Precision prec = x.precision();
    Ball prev(prec, 1);
    if (n == 0) return prev;
    const Ball y = x * 2L - Ball(prec, 1);  // 2x - 1
    Ball cur = y;
    for (unsigned long k = 1; k < n; ++k) {
        const long lk = static_cast<long>(k);
        Ball next = (y * cur * (2 * lk + 1) - prev * lk) / (lk + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Integer central_delannoy(unsigned long n) {
    Integer s(0);
    for (const auto& c : legendre_shifted(n).coeffs) s += abs(c);
    return s;
}

}  // namespace egamma
