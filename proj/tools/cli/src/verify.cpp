#include "egamma_cli/verify.hpp"

#include "egamma/analytic.hpp"
#include "egamma/criterion.hpp"
#include "egamma/pade.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace egamma::cli {

namespace {

std::string sci(const Real& r, int digits = 6) {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, r.get());
    return buf;
}

std::string sci(const Ball& b, int digits = 10) { return sci(b.mid(), digits); }

std::string rad(const Ball& b) { return sci(b.rad(), 2); }

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

// |x| as an upper bound.
Real magnitude_upper(const Ball& x) {
    Real out(64);
    mpfr_abs(out.get(), x.mid().get(), MPFR_RNDU);
    mpfr_add(out.get(), out.get(), x.rad().get(), MPFR_RNDU);
    return out;
}

// A residual passes when its enclosure contains zero.
bool consistent(const Ball& residual) { return residual.contains_zero(); }

class Suite {
public:
    explicit Suite(VerifyReport& report) : report_(report) {}

    void add(std::string id, std::string anchor, Status status, std::string measured, std::string bound,
             std::string radius) {
        report_.checks.push_back({std::move(id), std::move(anchor), status, std::move(measured), std::move(bound),
                                  std::move(radius)});
    }

    void add(std::string id, std::string anchor, bool ok, std::string measured, std::string bound,
             std::string radius = "0") {
        add(std::move(id), std::move(anchor), ok ? Status::pass : Status::fail, std::move(measured),
            std::move(bound), std::move(radius));
    }

    // Runs `body`; a sign or boundary ambiguity is reported as uncertified.
    void guarded(const std::string& id, const std::string& anchor, const std::function<void()>& body) {
        try {
            body();
        } catch (const SignUncertain& e) {
            add(id, anchor, Status::uncertified, e.what(), "", "");
        } catch (const BoundaryAmbiguous& e) {
            add(id, anchor, Status::uncertified, e.what(), "", "");
        } catch (const std::exception& e) {
            add(id, anchor, Status::fail, e.what(), "", "");
        }
    }

private:
    VerifyReport& report_;
};

std::string nm_id(const char* what, long n, long m) {
    return std::string(what) + "(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
}

void identity_suite(Suite& s) {
    const char* anchor = "gamma = A_{n,m} - L_{n,m} + J_{n,m}, J by quadrature";
    const Precision prec = 400;
    const Ball gamma = gamma_reference(prec);
    const Real tol = Real::pow2(-107);
    const Real radius_bound = decimal_tolerance(30);
    {
        const QuadResult j = J_direct(0, 0, tol);
        const Ball res = gamma - j.value;
        s.add("identity(n=0,m=0)", "J_{0,0} = gamma", j.converged && consistent(res), sci(res), rad(res),
              rad(res));
    }
    for (long n = 1; n <= 30; ++n) {
        for (long m = 0; m <= std::min<long>(n, 3); ++m) {
            s.guarded(nm_id("identity", n, m), anchor, [&] {
                const QuadResult j = J_direct(n, m, tol);
                const Ball rhs = Ball::from_rational(A_nm(static_cast<unsigned long>(n)), prec) - L_nm(n, m, prec) +
                                 j.value;
                const Ball res = gamma - rhs;
                const bool small = mpfr_lessequal_p(res.rad().get(), radius_bound.get());
                s.add(nm_id("identity", n, m), anchor, j.converged && small && consistent(res), sci(res),
                      "|residual| <= combined radius < 1e-30", rad(res));
            });
        }
    }
}

void lemma1_suite(Suite& s, const VerifyOptions& opts) {
    const char* anchor = "1/ln(1-u) + 1/u = int_0^1 w(t)/(1-ut) dt";
    const Real tol = Real::pow2(-44);
    for (long k = 1; k <= 9; ++k) {
        const Rational u(k, 10);
        s.guarded("markov_stieltjes(u=" + std::to_string(k) + "/10)", anchor, [&] {
            const MarkovStieltjesCheck c = markov_stieltjes_residual(u, tol);
            const double upper = magnitude_upper(c.residual).to_double();
            s.add("markov_stieltjes(u=" + std::to_string(k) + "/10)", anchor,
                  c.converged && upper < opts.residual_bound, sci(upper), sci(opts.residual_bound), rad(c.rhs));
        });
    }
}

void lemma2_suite(Suite& s) {
    const char* moment_anchor = "(-1)^m J_{n,m} = int_0^{1/4} v^n rho_m(v) dv";
    const Ball gamma = gamma_reference(256);
    const Real tol = Real::pow2(-24);
    for (auto [n, m] : {std::pair{2L, 0L}, {3L, 1L}, {4L, 2L}}) {
        s.guarded(nm_id("moment", n, m), moment_anchor, [&] {
            const MomentCheck c = rho_moment_residual(n, m, tol, gamma);
            const double upper = magnitude_upper(c.residual).to_double();
            s.add(nm_id("moment", n, m), moment_anchor, c.converged && upper < 1e-6, sci(upper), "1e-06",
                  rad(c.moment));
        });
    }
    for (long m = 0; m <= 2; ++m) {
        for (long k = 1; k <= 3; ++k) {
            const std::string id = "rho_positive(v=" + std::to_string(k) + "/16,m=" + std::to_string(m) + ")";
            s.guarded(id, "rho_m(v) > 0", [&] {
                Real v(64), rest(64);
                mpfr_set_ui(v.get(), static_cast<unsigned long>(k), MPFR_RNDN);
                mpfr_div_2ui(v.get(), v.get(), 4, MPFR_RNDN);
                mpfr_set_ui(rest.get(), static_cast<unsigned long>(4 - k), MPFR_RNDN);
                mpfr_div_2ui(rest.get(), rest.get(), 4, MPFR_RNDN);
                const QuadResult r = rho_weight(v, rest, m, Real::pow2(-30), 64);
                s.add(id, "rho_m(v) > 0", r.converged && r.value.is_positive(), sci(r.value), "> 0", rad(r.value));
            });
        }
    }
    const Ball g = gamma_reference(320);
    for (long m = 0; m <= 1; ++m) {
        const MonotonicityTable t = total_monotonicity_table(m, 20, 8, g);
        Real worst(64);
        mpfr_set_inf(worst.get(), 1);
        for (const auto& row : t.entries) {
            for (const auto& e : row) {
                Real lo = e.lower();
                if (mpfr_less_p(lo.get(), worst.get())) mpfr_set(worst.get(), lo.get(), MPFR_RNDD);
            }
        }
        s.add("total_monotonicity(m=" + std::to_string(m) + ",N=20,K=8)",
              "(-1)^k Delta^k (-1)^m J_{n,m} > 0", t.uncertain.empty(),
              "min lower bound " + sci(worst), "> 0", std::to_string(t.uncertain.size()) + " uncertain");
    }
}

void bounds_suite(Suite& s) {
    const Precision prec = 512;
    const Ball gamma = gamma_reference(prec);
    const Ball quarter = Ball(prec, 1) / 4L;
    const Rational r707(707, 1000);
    for (long m = 0; m <= 3; ++m) {
        std::map<long, Ball> sj;  // (-1)^m J_{n,m}
        for (long n = std::max<long>(m, 1); n <= 41; ++n) {
            try {
                Ball j = J_by_identity(n, m, gamma);
                sj.emplace(n, (m % 2 == 0) ? j : -j);
            } catch (const SignUncertain& e) {
                s.add(nm_id("sign", n, m), "(-1)^m J_{n,m} > 0", Status::uncertified, e.what(), "> 0", "");
            }
        }
        for (long n = std::max<long>(m, 1); n <= 40; ++n) {
            if (!sj.count(n) || !sj.count(n + 1)) continue;
            const Ball& a = sj.at(n);
            const Ball ratio = sj.at(n + 1) / a;
            s.add(nm_id("sign", n, m), "(-1)^m J_{n,m} > 0", a.is_positive(), sci(a), "> 0", rad(a));
            s.add(nm_id("ratio", n, m), "J_{n+1,m} / J_{n,m} < 1/4", ratio.is_positive() && ratio.less_than(quarter),
                  sci(ratio), "(0, 0.25)", rad(ratio));
            const Ball scaled = sj.at(n) * shared_lcm_table().get(static_cast<unsigned long>(n));
            const Ball cap = pow(Ball::from_rational(r707, prec), static_cast<unsigned long>(n));
            s.add(nm_id("dn_bound", n, m), "d_n (-1)^m J_{n,m} < 0.707^n", scaled.less_than(cap), sci(scaled),
                  sci(cap), rad(scaled));
        }
        if (sj.count(40) && sj.count(41)) {
            // The n-th root carries an algebraic n^-(m+1/2)-type factor and
            // reaches 1/4 slowly for m >= 1; the successive ratio does not.
            const Ball root = exp(log(sj.at(40)) / 40L);
            const Ball ratio = sj.at(41) / sj.at(40);
            const double root_rel = std::fabs(root.mid_double() / 0.25 - 1.0);
            const double ratio_rel = std::fabs(ratio.mid_double() / 0.25 - 1.0);
            if (m == 0) {
                s.add(nm_id("decay_root", 40, m), "((-1)^m J_{n,m})^(1/n) -> 1/4", root_rel < 0.1, sci(root),
                      "within 10% of 0.25", rad(root));
            }
            s.add(nm_id("decay_ratio", 40, m), "J_{n+1,m} / J_{n,m} -> 1/4", ratio_rel < 0.1,
                  sci(ratio) + " (root " + sci(root, 4) + ")", "within 10% of 0.25", rad(ratio));
        }
        // d_{2^p} (-1)^m J_{2^p,m} strictly decreasing, on the p where m <= 2^p.
        std::vector<std::pair<long, Ball>> seq;
        for (long p = 0; p <= 5; ++p) {
            const long n = 1L << p;
            if (m > n || !sj.count(n)) continue;
            seq.emplace_back(p, sj.at(n) * shared_lcm_table().get(static_cast<unsigned long>(n)));
        }
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const auto& [p, cur] = seq[i];
            const Ball& prev = seq[i - 1].second;
            s.add("dyadic_decreasing(p=" + std::to_string(p) + ",m=" + std::to_string(m) + ")",
                  "d_{2^p} (-1)^m J_{2^p,m} decreasing in p", cur.less_than(prev), sci(cur), "< " + sci(prev),
                  rad(cur));
        }
    }
    // 2^n <= d_n (n >= 7) and d_n < e^{1.039 n}.
    bool lower_ok = true, upper_ok = true;
    long lower_first_bad = 0, upper_first_bad = 0;
    const Ball c1039 = Ball::from_rational(Rational(1039, 1000), 128);
    for (long n = 1; n <= 2000; ++n) {
        const Integer d = shared_lcm_table().get(static_cast<unsigned long>(n));
        // d >= 2^n exactly when d has more than n bits.
        if (n >= 7 && mpz_sizeinbase(d.get_mpz_t(), 2) <= static_cast<std::size_t>(n)) {
            if (lower_ok) lower_first_bad = n;
            lower_ok = false;
        }
        if (!log(Ball::from_integer(d, 128)).less_than(c1039 * n)) {
            if (upper_ok) upper_first_bad = n;
            upper_ok = false;
        }
    }
    s.add("dn_lower(7..2000)", "2^n <= d_n", lower_ok, lower_ok ? "holds" : "fails at n=" + std::to_string(lower_first_bad),
          "n >= 7");
    s.add("dn_upper(1..2000)", "d_n < e^{1.039 n}", upper_ok,
          upper_ok ? "holds" : "fails at n=" + std::to_string(upper_first_bad), "n <= 2000");
}

void pade_suite(Suite& s) {
    for (unsigned long n = 1; n <= 8; ++n) {
        const PadeRational p = pade_log1p(n);
        const bool ok = series_quotient(p.num, p.den, 2 * n) == log1p_series(2 * n);
        s.add("taylor(n=" + std::to_string(n) + ")", "[n/n] matches ln(1+t) through t^(2n)", ok,
              ok ? "exact" : "differs", "degree " + std::to_string(2 * n));
        const long co = contact_order(n);
        s.add("contact_order(n=" + std::to_string(n) + ")", "D_n ln u - N_n (u-1) = O((u-1)^(2n+1))",
              co >= static_cast<long>(2 * n + 1), std::to_string(co), ">= " + std::to_string(2 * n + 1));
    }
    for (unsigned long n = 1; n <= 10; ++n) {
        s.guarded("normalization(n=" + std::to_string(n) + ")", "N_n(1) = D_n(1) = 1", [&] {
            const LogQuotientPade pq = pade_lnu_over_um1(n);
            Rational sn(0), sd(0);
            for (const auto& c : pq.N) sn += c;
            for (const auto& c : pq.D) sd += c;
            s.add("normalization(n=" + std::to_string(n) + ")", "N_n(1) = D_n(1) = 1", sn == 1 && sd == 1,
                  "N(1)=" + sn.get_str() + " D(1)=" + sd.get_str(), "1");
        });
    }
    const Precision prec = 256;
    const double target = std::pow(3.0 - 2.0 * std::sqrt(2.0), 2.0);
    for (unsigned long n = 1; n <= 15; ++n) {
        const Ball e = ln2_pade_error(n, prec);
        s.add("ln2_error_positive(n=" + std::to_string(n) + ")", "ln 2 - [n/n](1) > 0", e.is_positive(), sci(e),
              "> 0", rad(e));
        if (n >= 10 && n <= 14) {
            const Ball r = ln2_pade_error(n + 1, prec) / e;
            const double rel = std::fabs(r.mid_double() / target - 1.0);
            s.add("ln2_error_ratio(n=" + std::to_string(n) + ")", "err(n+1)/err(n) -> (3-2sqrt2)^2", rel < 0.1,
                  sci(r), "within 10% of " + sci(target), rad(r));
        }
    }
    for (long n = 1; n <= 10; ++n) {
        const std::string id = "error_integral(n=" + std::to_string(n) + ")";
        s.guarded(id, "ln(1+x) - [n/n]_x as an integral, x = 1", [&] {
            const QuadResult r = pade_error_integral(Rational(1), n, Real::pow2(-90));
            const Ball e = ln2_pade_error(static_cast<unsigned long>(n), 160);
            const Ball res = r.value - e;
            s.add(id, "ln(1+x) - [n/n]_x as an integral, x = 1", r.converged && consistent(res), sci(res),
                  "|residual| <= combined radius", rad(res));
        });
    }
    // Rational substitute on the dyadic grid.
    for (long p = 0; p <= 5; ++p) {
        for (long m = 0; m <= 3; ++m) {
            long n = 0;
            try {
                n = grid_n(p, m);
            } catch (const std::invalid_argument&) {
                continue;
            }
            const std::string tag = "(p=" + std::to_string(p) + ",m=" + std::to_string(m) + ")";
            const bool same = tilde_frac(p, m) == tilde_frac(p, m);
            s.add("tilde_frac_repeatable" + tag, "exact rational pipeline", same, same ? "identical" : "differs",
                  "bit-identical");
            const PadeCriterionRow row = pade_criterion_row(p, m);
            if (row.gap_asserted) {
                s.add("gap" + tag, "|L_{n,m} - tilde L_{n,m}| <= 4^-n / n", row.gap_bound_ok, sci(row.gap),
                      sci(row.gap_bound), rad(row.gap));
                const Precision wp = working_precision(n, 2 * n + 64);
                const Ball delta = abs(delta_sum(p, m, wp));
                const Ball dbound = ldexp(Ball(wp, 1), -2 * n) / n;
                s.add("delta" + tag, "|delta_{n,m}| <= 1 / (n 4^n)", delta.less_than(dbound), sci(delta),
                      sci(dbound), rad(delta));
                // The closed-form bound p (3-2sqrt2)^(2n) ln 2 rests on an
                // asymptotic for P_n^*(-1) and is exceeded by a factor near
                // 1.5; what the gap estimate needs is p |err| = o(4^-n / n).
                const Ball ln2_part = abs(ln2_pade_error(static_cast<unsigned long>(n), wp) * p);
                const Ball asym = Ball::log2(wp) * p *
                                  pow(Ball(wp, 3) - sqrt(Ball(wp, 8)), static_cast<unsigned long>(2 * n));
                const std::string measured =
                    sci(ln2_part) + (p == 0 ? "" : " (x" + sci(ln2_part / asym, 3) + " of p(3-2sqrt2)^(2n) ln2)");
                s.add("ln2_part" + tag, "p |ln 2 - [n/n](1)| = o(4^-n / n)", ln2_part.less_than(dbound), measured,
                      sci(dbound), rad(ln2_part));
            }
        }
    }
}

void sondow_suite(Suite& s) {
    const Rational a1 = sondow_A(1);
    s.add("A_1", "A_n = sum binom(n,i)^2 H_{n+i}", a1 == Rational(5, 2), a1.get_str(), "5/2");
    const Rational a2 = sondow_A(2);
    s.add("A_2", "A_n = sum binom(n,i)^2 H_{n+i}", a2 == Rational(131, 12), a2.get_str(), "131/12");
    const Precision prec = 320;
    const Ball gamma = gamma_reference(prec);
    const Ball i1 = sondow_I(1, gamma, prec);
    const Ball i1_closed = gamma * 2L + Ball::log2(prec) * 2L - Ball(prec, 5) / 2L;
    s.add("I_1", "I_1 = 2 gamma + 2 ln 2 - 5/2", consistent(i1 - i1_closed), sci(i1), sci(i1_closed), rad(i1));
    s.add("I_1_decimal", "I_1 ~ 0.0407258", std::fabs(i1.mid_double() - 0.0407258) < 2e-7, sci(i1),
          "0.0407258 +/- 2e-7", rad(i1));
    for (unsigned long n = 10; n <= 15; ++n) {
        const Ball r = abs(sondow_I(n + 1, gamma, prec) / sondow_I(n, gamma, prec));
        const double rel = std::fabs(r.mid_double() * 16.0 - 1.0);
        s.add("I_ratio(n=" + std::to_string(n) + ")", "|I_n| = O(16^-n)", rel < 0.2, sci(r), "within 20% of 1/16",
              rad(r));
    }
}

}  // namespace

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::uncertified: return "uncertified";
    }
    return "fail";
}

bool VerifyReport::passed() const { return count(Status::fail) == 0; }

std::size_t VerifyReport::count(Status s) const {
    std::size_t c = 0;
    for (const auto& ch : checks) c += ch.status == s ? 1 : 0;
    return c;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identity", "lemma1", "lemma2", "bounds", "pade", "sondow", "all"};
    return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& opts) {
    VerifyReport report;
    report.suite = suite;
    Suite s(report);
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "identity") known = true, identity_suite(s);
    if (all || suite == "lemma1") known = true, lemma1_suite(s, opts);
    if (all || suite == "lemma2") known = true, lemma2_suite(s);
    if (all || suite == "bounds") known = true, bounds_suite(s);
    if (all || suite == "pade") known = true, pade_suite(s);
    if (all || suite == "sondow") known = true, sondow_suite(s);
    if (!known) throw std::invalid_argument("unknown suite: " + suite);
    return report;
}

}  // namespace egamma::cli
