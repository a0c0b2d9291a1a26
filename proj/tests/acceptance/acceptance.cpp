// Acceptance run: one PASS/FAIL line per criterion. A criterion that is
// known not to hold as stated is printed as FAIL with the reason and marked
// "documented"; only undocumented failures change the exit status.
#include "egamma/analytic.hpp"
#include "egamma/criterion.hpp"
#include "egamma/pade.hpp"
#include "egamma_cli/app.hpp"
#include "egamma_cli/reference_table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace egamma;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    bool documented = false;  // failure explained in the decisions ledger
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double limit_s;  // stated runtime upper bound, 0 when none
    std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Ball signed_J(long n, long m, const Ball& g) {
    const Ball j = J_by_identity(n, m, g);
    return m % 2 ? Ball(g.precision(), 0) - j : j;
}

// --- 1: table reproduction ---------------------------------------------------
Outcome table_reproduction() {
    const SweepResult s = sweep(20, {0, 1, 2, 3}, 53);
    Outcome o;
    int matched = 0, checked = 0;
    bool flagged = false;
    std::string bad;
    for (const auto& r : s.rows) {
        const auto ref = cli::reference_ratio(r.n, r.m);
        if (!ref || !r.certified) {
            o.pass = false;
            bad += " (" + std::to_string(r.n) + "," + std::to_string(r.m) + ")";
            continue;
        }
        const bool ok = cli::reference_matches(r.table_ratio.mid_double(), *ref);
        if (r.n == 4 && r.m == 3) {
            flagged = !ok && cli::reference_known_mismatch(4, 3);
            continue;
        }
        ++checked;
        if (ok) ++matched;
        else bad += " (" + std::to_string(r.n) + "," + std::to_string(r.m) + ")";
    }
    o.pass = o.pass && matched == checked && checked == 76 && flagged;
    o.detail = std::to_string(matched) + "/" + std::to_string(checked) + " entries match; (4,3) " +
               (flagged ? "flagged known_mismatch" : "NOT flagged") + (bad.empty() ? "" : "; failing:" + bad);
    return o;
}

// --- 2: identity suite ---------------------------------------------------------
Outcome identity_suite() {
    const Ball g = gamma_reference(400);
    const Real tol = Real::pow2(-107);
    Outcome o;
    double worst_res = 0, worst_rad = 0;
    int count = 0;
    for (long n = 0; n <= 30; ++n)
        for (long m = 0; m <= std::min(n, 3L); ++m) {
            const QuadResult q = J_direct(n, m, tol);
            const long prec = 400;
            const Ball lhs = Ball::from_rational(A_nm(static_cast<unsigned long>(n)), prec) -
                             (n == 0 ? Ball(prec, 0) : L_nm(n, m, prec)) + q.value;
            const Ball diff = lhs - g;
            const double rad = diff.rad_double();
            const bool ok = q.converged && diff.contains_zero() && rad < 1e-30;
            worst_res = std::max(worst_res, std::fabs(diff.mid_double()));
            worst_rad = std::max(worst_rad, rad);
            o.pass = o.pass && ok;
            ++count;
        }
    o.detail = std::to_string(count) + " (n,m) pairs; max |residual| " + fmt("%.2e", worst_res) +
               ", max combined radius " + fmt("%.2e", worst_rad) + " (< 1e-30)";
    return o;
}

// --- 3: remainder decay --------------------------------------------------------
Outcome remainder_decay() {
    const Ball g = gamma_reference(512);
    Outcome o;
    bool sign_ok = true, ratio_ok = true;
    for (long m = 0; m <= 3; ++m) {
        for (long n = std::max(1L, m); n <= 40; ++n) {
            const Ball a = signed_J(n, m, g);
            const Ball b = signed_J(n + 1, m, g);
            sign_ok = sign_ok && a.is_positive();
            const Ball r = b / a;
            ratio_ok = ratio_ok && r.is_positive() && r.less_than(Ball::from_rational(Rational(1, 4), 512));
        }
    }
    std::string roots;
    bool root_ok_m0 = false, root_ok_all = true;
    for (long m = 0; m <= 3; ++m) {
        const double root = std::pow(signed_J(40, m, g).mid_double(), 1.0 / 40);
        const bool ok = std::fabs(root * 4 - 1) < 0.1;
        if (m == 0) root_ok_m0 = ok;
        root_ok_all = root_ok_all && ok;
        roots += (m ? ", " : "") + std::string("m=") + std::to_string(m) + " " + fmt("%.4f", root);
    }
    o.pass = sign_ok && ratio_ok && root_ok_all;
    // Only the n-th root for m >= 1 is known to miss; anything else is a regression.
    o.documented = !o.pass && sign_ok && ratio_ok && root_ok_m0;
    o.detail = std::string("sign ") + (sign_ok ? "ok" : "FAILS") + ", ratio in (0,1/4) " + (ratio_ok ? "ok" : "FAILS") +
               "; 40th roots " + roots + " (need 0.225..0.275)";
    if (o.documented) o.detail += "; m>=1 roots converge algebraically and reach the band only for n >> 40";
    return o;
}

// --- 4: exponential bounds -----------------------------------------------------
Outcome scaled_bounds() {
    const Ball g = gamma_reference(512);
    Outcome o;
    bool bound_ok = true, mono_ok = true;
    double worst = 0;
    for (long m = 0; m <= 3; ++m)
        for (long n = std::max(1L, m); n <= 40; ++n) {
            const Ball v = signed_J(n, m, g) * Ball::from_integer(lcm_upto(static_cast<unsigned long>(n)), 512);
            const Ball bound = pow(Ball::from_rational(Rational(707, 1000), 512), static_cast<unsigned long>(n));
            bound_ok = bound_ok && v.is_positive() && v.less_than(bound);
            worst = std::max(worst, (v / bound).mid_double());
        }
    int steps = 0;
    for (long m = 0; m <= 3; ++m) {
        Ball prev;
        bool have = false;
        for (long p = 0; p <= 5; ++p) {
            const long n = 1L << p;
            if (m > n) continue;
            const Ball cur = signed_J(n, m, g) * Ball::from_integer(lcm_upto(static_cast<unsigned long>(n)), 512);
            if (have) {
                mono_ok = mono_ok && cur.less_than(prev);
                ++steps;
            }
            prev = cur;
            have = true;
        }
    }
    o.pass = bound_ok && mono_ok;
    o.detail = std::string("d_n (-1)^m J < 0.707^n for n <= 40: ") + (bound_ok ? "ok" : "FAILS") + " (max ratio " +
               fmt("%.3g", worst) + "); dyadic sequence strictly decreasing over " + std::to_string(steps) +
               " steps (m <= 2^p): " + (mono_ok ? "ok" : "FAILS");
    return o;
}

// --- 5: total monotonicity -----------------------------------------------------
Outcome total_monotonicity() {
    const Ball g = gamma_reference(512);
    Outcome o;
    long entries = 0, uncertain = 0;
    for (long m : {0L, 1L}) {
        const MonotonicityTable t = total_monotonicity_table(m, 20, 8, g);
        for (const auto& row : t.entries) entries += static_cast<long>(row.size());
        uncertain += static_cast<long>(t.uncertain.size());
    }
    o.pass = uncertain == 0 && entries == 2 * 20 * 9;
    o.detail = std::to_string(entries) + " entries (n <= 20, k <= 8, m in {0,1}), " + std::to_string(uncertain) +
               " not certified positive";
    return o;
}

// --- 6: Pade correctness -------------------------------------------------------
Outcome pade_correctness() {
    Outcome o;
    bool series_ok = true, contact_ok = true, norm_ok = true, ratio_ok = true, integral_ok = true;
    for (unsigned long n = 1; n <= 8; ++n) {
        const PadeRational p = pade_log1p(n);
        const auto s = series_quotient(p.num, p.den, 2 * n);
        const auto ref = log1p_series(2 * n);
        series_ok = series_ok && s == ref;
        contact_ok = contact_ok && contact_order(n) >= static_cast<long>(2 * n + 1);
    }
    for (unsigned long n = 1; n <= 10; ++n) {
        const LogQuotientPade q = pade_lnu_over_um1(n);
        Rational sn(0), sd(0);
        for (const auto& c : q.N) sn += c;
        for (const auto& c : q.D) sd += c;
        norm_ok = norm_ok && sn == 1 && sd == 1;
    }
    const double target = std::pow(3 - 2 * std::sqrt(2.0), 2);
    double worst_rel = 0;
    for (unsigned long n = 10; n <= 14; ++n) {
        const double r = ln2_pade_error(n + 1, 256).mid_double() / ln2_pade_error(n, 256).mid_double();
        worst_rel = std::max(worst_rel, std::fabs(r / target - 1));
    }
    ratio_ok = worst_rel < 0.1;
    for (long n = 1; n <= 10; ++n) {
        const QuadResult q = pade_error_integral(Rational(1), n, Real::pow2(-90));
        integral_ok = integral_ok && q.converged && q.value.overlaps(ln2_pade_error(static_cast<unsigned long>(n), 256));
    }
    o.pass = series_ok && contact_ok && norm_ok && ratio_ok && integral_ok;
    auto yn = [](bool b) { return b ? "ok" : "FAILS"; };
    o.detail = std::string("series n<=8 ") + yn(series_ok) + ", contact order n<=8 " + yn(contact_ok) +
               ", N(1)=D(1)=1 n<=10 " + yn(norm_ok) + ", ln2 error ratio n=10..14 " + yn(ratio_ok) + " (max dev " +
               fmt("%.2f%%", 100 * worst_rel) + "), error integral n<=10 " + yn(integral_ok);
    return o;
}

// --- 7: rational substitute pipeline -------------------------------------------
Outcome rational_substitute() {
    Outcome o;
    int rows = 0, asserted = 0;
    bool repeat_ok = true, gap_ok = true;
    for (long p = 0; p <= 5; ++p)
        for (long m = 0; m <= 3; ++m) {
            const long n = (1L << p) + m - 1;
            if (n < 1) continue;
            repeat_ok = repeat_ok && tilde_frac(p, m) == tilde_frac(p, m);
            const PadeCriterionRow r = pade_criterion_row(p, m);
            ++rows;
            if (n >= 10) {
                ++asserted;
                gap_ok = gap_ok && r.gap_bound_ok;
            }
        }
    o.pass = repeat_ok && gap_ok;
    o.detail = std::to_string(rows) + " grid points; tilde_frac bit-identical " + (repeat_ok ? "ok" : "FAILS") +
               "; |L - tilde_L| <= 4^-n/n on " + std::to_string(asserted) + " points with n >= 10 " +
               (gap_ok ? "ok" : "FAILS");
    return o;
}

// --- 8: gamma two ways ---------------------------------------------------------
std::string gamma_text(const std::string& method, int digits) {
    std::ostringstream out, err;
    if (cli::run({"gamma", "--digits", std::to_string(digits), "--method", method}, out, err) != 0) return "error";
    const std::string s = out.str();
    return s.substr(0, s.find(' '));
}

Outcome gamma_two_ways() {
    Outcome o;
    const QuadResult c = gamma_classic(12);
    const QuadResult n = gamma_new(12);
    const bool agree12 = c.converged && n.converged && c.value.overlaps(n.value) && c.value.rad_double() < 1e-12 &&
                         n.value.rad_double() < 1e-12;
    const std::string cl = gamma_text("classic", 15), nw = gamma_text("new", 15), id = gamma_text("identity", 15);
    const bool agree15 = cl == id && nw == id && id == "0.577215664901533";
    o.pass = agree12 && agree15;
    o.detail = std::string("classic vs new at 12 digits ") + (agree12 ? "overlap" : "DISAGREE") + " (radii " +
               fmt("%.1e", c.value.rad_double()) + ", " + fmt("%.1e", n.value.rad_double()) + "); 15 digits: classic " +
               cl + ", new " + nw + ", identity " + id;
    return o;
}

// --- 9: integral representations ------------------------------------------------
Outcome integral_representations() {
    Outcome o;
    double worst_ms = 0;
    bool ms_ok = true;
    for (int k = 1; k <= 9; ++k) {
        const MarkovStieltjesCheck c = markov_stieltjes_residual(Rational(k, 10), Real::pow2(-44));
        const double r = c.residual.mid_double() + c.residual.rad_double();
        worst_ms = std::max(worst_ms, r);
        ms_ok = ms_ok && c.converged && r < 1e-12;
    }
    const Ball g = gamma_reference(256);
    double worst_mom = 0;
    bool mom_ok = true;
    for (auto [n, m] : {std::pair{2L, 0L}, {3L, 1L}, {4L, 2L}}) {
        const MomentCheck c = rho_moment_residual(n, m, Real::pow2(-24), g);
        worst_mom = std::max(worst_mom, c.residual.mid_double());
        mom_ok = mom_ok && c.converged && c.residual.mid_double() < 1e-6;
    }
    o.pass = ms_ok && mom_ok;
    o.detail = "Markov-Stieltjes max residual " + fmt("%.1e", worst_ms) + " (< 1e-12) on u = 0.1..0.9; moment max residual " +
               fmt("%.1e", worst_mom) + " (< 1e-6) for (2,0), (3,1), (4,2)";
    return o;
}

// --- 10: Sondow suite ---------------------------------------------------------
Outcome sondow_suite() {
    Outcome o;
    const Ball g = gamma_reference(320);
    const Ball i1 = sondow_I(1, g, 320);
    const Ball closed = Ball(320, 2) * g + Ball(320, 2) * Ball::log2(320) - Ball::from_rational(Rational(5, 2), 320);
    const bool a1 = sondow_A(1) == Rational(5, 2);
    const bool i1_ok = i1.overlaps(closed) && std::fabs(i1.mid_double() - 0.0407258) < 2e-7;
    double worst = 0;
    for (unsigned long n = 10; n <= 15; ++n) {
        const double r = std::fabs(sondow_I(n + 1, g, 320).mid_double() / sondow_I(n, g, 320).mid_double());
        worst = std::max(worst, std::fabs(16 * r - 1));
    }
    o.pass = a1 && i1_ok && worst < 0.2;
    o.detail = std::string("A_1 = ") + sondow_A(1).get_str() + ", I_1 = " + fmt("%.10f", i1.mid_double()) +
               " (= 2 gamma + 2 ln 2 - 5/2 within radii; quoted 0.0407258), |I_{n+1}/I_n| max deviation from 1/16 " +
               fmt("%.1f%%", 100 * worst) + " for n = 10..15";
    return o;
}

// --- 11: engineering properties ----------------------------------------------------
std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli_run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

Outcome engineering() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("egamma_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto p = [&](const char* name) { return (dir / name).string(); };

    bool det = cli_run({"sweep", "--n-max", "120", "--m", "0,1,2,3", "--workers", "1", "--out", p("w1.csv")}) == 0 &&
               cli_run({"sweep", "--n-max", "120", "--m", "0,1,2,3", "--workers", "8", "--out", p("w8.csv")}) == 0 &&
               slurp(p("w1.csv")) == slurp(p("w8.csv"));

    std::string rest;
    bool resume = cli_run({"sweep", "--n-max", "100", "--out", p("full.csv")}) == 0 &&
                  cli_run({"sweep", "--n-max", "50", "--checkpoint", p("cp.jsonl"), "--out", p("part.csv")}) == 0 &&
                  cli_run({"sweep", "--n-max", "100", "--checkpoint", p("cp.jsonl")}, &rest) == 0 &&
                  slurp(p("part.csv")) + rest == slurp(p("full.csv"));
    fs::remove_all(dir);

    std::mt19937_64 rng(0x5eed);
    int sound = 0;
    for (int t = 0; t < 50; ++t) {
        const long n = 1 + static_cast<long>(rng() % 60);
        const long m = static_cast<long>(rng() % static_cast<unsigned long>(std::min(n, 3L) + 1));
        const CriterionRow a = criterion_row(n, m, 53);
        const CriterionRow b = criterion_row(n, m, 106);
        const bool ok = a.certified && b.certified && b.prec_bits > a.prec_bits &&
                        a.frac_signed.overlaps(b.frac_signed) && a.frac_unsigned.overlaps(b.frac_unsigned) &&
                        a.J.overlaps(b.J) && b.frac_signed.rad_double() <= a.frac_signed.rad_double();
        if (ok) ++sound;
    }
    o.pass = det && resume && sound == 50;
    o.detail = std::string("1 vs 8 workers byte-identical ") + (det ? "ok" : "FAILS") + "; resume at n=50 equals uninterrupted " +
               (resume ? "ok" : "FAILS") + "; escalation consistent on " + std::to_string(sound) + "/50 random (n,m), n <= 60";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "ratio table reproduction", 60, table_reproduction},
        {2, "identity with quadrature remainders", 300, identity_suite},
        {3, "remainder decay", 0, remainder_decay},
        {4, "scaled remainder bounds", 0, scaled_bounds},
        {5, "total monotonicity", 0, total_monotonicity},
        {6, "Pade correctness", 0, pade_correctness},
        {7, "rational substitute pipeline", 300, rational_substitute},
        {8, "gamma two ways", 120, gamma_two_ways},
        {9, "integral representations", 300, integral_representations},
        {10, "Sondow suite", 0, sondow_suite},
        {11, "engineering properties", 0, engineering},
    };
    int undocumented = 0, documented = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.pass = false;
            o.documented = false;
            o.detail += "; over the runtime limit";
        }
        std::string timing = fmt("%.1f s", secs);
        if (c.limit_s > 0) timing += " < " + fmt("%.0f s", c.limit_s);
        std::printf("[%s] %2d %s: %s (%s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), timing.c_str(),
                    !o.pass && o.documented ? " [documented known failure]" : "");
        std::fflush(stdout);
        if (!o.pass) (o.documented ? documented : undocumented)++;
    }
    std::printf("acceptance: %zu criteria, %d pass, %d documented failure(s), %d undocumented failure(s)\n",
                criteria.size(), static_cast<int>(criteria.size()) - documented - undocumented, documented, undocumented);
    return undocumented == 0 ? 0 : 1;
}
