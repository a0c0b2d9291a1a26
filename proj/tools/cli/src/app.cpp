#include "egamma_cli/app.hpp"

#include "egamma/analytic.hpp"
#include "egamma/criterion.hpp"
#include "egamma/pade.hpp"
#include "egamma_cli/reference_table.hpp"
#include "egamma_cli/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace egamma::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kRowSchema = "egamma.row.v1";
constexpr const char* kCheckpointSchema = "egamma.checkpoint.v1";
constexpr const char* kVerifySchema = "egamma.verify.v1";
constexpr int kMaxGammaDigits = 2000;
constexpr long kMaxPadeP = 6;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string sci3(const Ball& b) {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.3Re", b.mid().get());
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// Primary output sink: --out file (truncated or appended) or the given stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback, bool append) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
        if (!*file_) throw IoError("cannot open output file: " + path);
        stream_ = file_.get();
    }
    std::ostream& os() { return *stream_; }
    void flush() {
        stream_->flush();
        if (!*stream_) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

PrecisionPolicy policy_for(const RunConfig& cfg) {
    PrecisionPolicy p = PrecisionPolicy::from_environment();
    if (cfg.prec_cap > 0) p.hard_cap_bits = cfg.prec_cap;
    return p;
}

std::vector<long> m_list_or(const RunConfig& cfg, std::vector<long> fallback) {
    std::vector<long> ms = cfg.m_list.empty() ? std::move(fallback) : cfg.m_list;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ms;
}

// --- criterion rows -------------------------------------------------------

struct RenderedRow {
    std::string frac_signed, frac_unsigned, table_ratio;
};

RenderedRow render(const CriterionRow& r) {
    RenderedRow out;
    if (r.frac_resolved) {
        out.frac_signed = g15(r.frac_signed.mid_double());
        out.frac_unsigned = g15(r.frac_unsigned.mid_double());
        if (r.frac_unsigned.is_positive()) out.table_ratio = g15(r.table_ratio.mid_double());
    }
    return out;
}

const char* kRowHeader = "n,m,frac_signed,frac_unsigned,table_ratio,cumavg,prec_bits,certified";

void write_row_csv(std::ostream& os, const CriterionRow& r, double cumavg, const std::string& extra = "") {
    const RenderedRow v = render(r);
    os << r.n << ',' << r.m << ',' << v.frac_signed << ',' << v.frac_unsigned << ',' << v.table_ratio << ','
       << g15(cumavg) << ',' << r.prec_bits << ',' << (r.certified ? "true" : "false") << extra << '\n';
}

json number_or_null(const std::string& s) { return s.empty() ? json(nullptr) : json(std::stod(s)); }

json row_json(const CriterionRow& r, double cumavg) {
    const RenderedRow v = render(r);
    json j;
    j["schema"] = kRowSchema;
    j["n"] = r.n;
    j["m"] = r.m;
    j["frac_signed"] = number_or_null(v.frac_signed);
    j["frac_unsigned"] = number_or_null(v.frac_unsigned);
    j["table_ratio"] = number_or_null(v.table_ratio);
    j["cumavg"] = std::stod(g15(cumavg));
    j["prec_bits"] = r.prec_bits;
    j["certified"] = r.certified;
    return j;
}

// --- table ----------------------------------------------------------------

std::string reference_check(const CriterionRow& r, std::string* ref_out) {
    const auto ref = reference_ratio(r.n, r.m);
    if (!ref) return "none";
    *ref_out = *ref;
    const bool resolved = r.frac_resolved && r.frac_unsigned.is_positive();
    const bool match = resolved && reference_matches(r.table_ratio.mid_double(), *ref);
    if (match) return "match";
    return reference_known_mismatch(r.n, r.m) ? "known_mismatch" : "mismatch";
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    const auto ms = m_list_or(cfg, {0, 1, 2, 3});
    const SweepResult res = sweep(cfg.n_max, ms, cfg.frac_bits, cfg.workers, policy_for(cfg));
    Sink sink(cfg.out, out, false);
    bool all_certified = true;
    if (cfg.format == "csv") sink.os() << kRowHeader << ",reference_ratio,reference_check\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const CriterionRow& r = res.rows[i];
        all_certified = all_certified && r.certified;
        std::string ref;
        const std::string check = reference_check(r, &ref);
        if (cfg.format == "csv") {
            write_row_csv(sink.os(), r, res.cumavg[i], "," + ref + "," + check);
        } else {
            json j = row_json(r, res.cumavg[i]);
            j["reference_ratio"] = ref.empty() ? json(nullptr) : json(ref);
            j["reference_check"] = check;
            sink.os() << j.dump() << '\n';
        }
    }
    sink.flush();
    return (cfg.strict && !all_certified) ? kStrictCap : kOk;
}

// --- sweep with checkpoint --------------------------------------------------

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Checkpoint {
    std::string path;
    std::vector<std::string> lines;
    long last_n = 0;
};

json checkpoint_config(const std::vector<long>& ms, long frac_bits, long cap) {
    json c;
    c["m_list"] = ms;
    c["frac_bits"] = frac_bits;
    c["prec_cap"] = cap;
    return c;
}

std::size_t rows_expected(long n, const std::vector<long>& ms) {
    return static_cast<std::size_t>(std::count_if(ms.begin(), ms.end(), [n](long m) { return m <= n; }));
}

// Reads the checkpoint, replaying frac_signed values into `mean`.
Checkpoint load_checkpoint(const std::string& path, const json& config, const std::vector<long>& ms,
                           CumulativeMean& mean) {
    Checkpoint cp;
    cp.path = path;
    if (path.empty() || !std::filesystem::exists(path)) return cp;
    std::ifstream in(path);
    if (!in) throw IoError("cannot read checkpoint: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception&) {
            throw CheckpointError("corrupt checkpoint (unparsable record) at " + where);
        }
        try {
            if (rec.at("schema") != kCheckpointSchema) throw CheckpointError("unknown schema at " + where);
            if (rec.at("config") != config) {
                throw CheckpointError("checkpoint at " + where + " was written with a different configuration");
            }
            const long n = rec.at("n").get<long>();
            if (n != cp.last_n + 1) throw CheckpointError("corrupt checkpoint (non-consecutive n) at " + where);
            const auto& rows = rec.at("rows");
            if (rows.size() != rows_expected(n, ms)) throw CheckpointError("corrupt checkpoint (row count) at " + where);
            for (const auto& r : rows) mean.push(r.at("m").get<long>(), r.at("frac_signed_mid").get<double>());
            cp.last_n = n;
        } catch (const json::exception&) {
            throw CheckpointError("corrupt checkpoint (missing field) at " + where);
        }
        cp.lines.push_back(line);
    }
    return cp;
}

void save_checkpoint(const Checkpoint& cp) {
    const std::string tmp = cp.path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw IoError("cannot write checkpoint: " + tmp);
        for (const auto& l : cp.lines) os << l << '\n';
        os.flush();
        if (!os) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, cp.path, ec);
    if (ec) throw IoError("cannot replace checkpoint " + cp.path + ": " + ec.message());
}

json checkpoint_record(long n, const json& config, const std::vector<const CriterionRow*>& rows) {
    json rec;
    rec["schema"] = kCheckpointSchema;
    rec["config"] = config;
    rec["n"] = n;
    json arr = json::array();
    for (const CriterionRow* r : rows) {
        const RenderedRow v = render(*r);
        json jr;
        jr["m"] = r->m;
        jr["frac_signed_mid"] = r->frac_signed.mid_double();
        jr["frac_signed"] = v.frac_signed;
        jr["frac_unsigned"] = v.frac_unsigned;
        jr["table_ratio"] = v.table_ratio;
        jr["A"] = r->A.get_str();
        jr["L"] = g15(r->L.mid_double());
        jr["J"] = sci3(r->J);
        jr["prec_bits"] = r->prec_bits;
        jr["certified"] = r->certified;
        arr.push_back(std::move(jr));
    }
    rec["rows"] = std::move(arr);
    return rec;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto ms = m_list_or(cfg, {0});
    const PrecisionPolicy policy = policy_for(cfg);
    const json config = checkpoint_config(ms, cfg.frac_bits, policy.hard_cap_bits);
    CumulativeMean mean;
    Checkpoint cp = load_checkpoint(cfg.checkpoint, config, ms, mean);
    const bool resumed = cp.last_n > 0;

    Sink sink(cfg.out, out, resumed);
    if (!resumed && cfg.format == "csv") sink.os() << kRowHeader << '\n';
    sink.flush();

    bool all_certified = true;
    const long block = std::max<long>(1, static_cast<long>(cfg.workers));
    for (long lo = cp.last_n + 1; lo <= cfg.n_max; lo += block) {
        const long hi = std::min(cfg.n_max, lo + block - 1);
        const auto rows = sweep_range(lo, hi, ms, cfg.frac_bits, cfg.workers, policy);
        std::map<long, std::vector<const CriterionRow*>> by_n;
        for (const auto& r : rows) {
            all_certified = all_certified && r.certified;
            const double avg = mean.push(r.m, r.frac_signed.mid_double());
            if (cfg.format == "csv") {
                write_row_csv(sink.os(), r, avg);
            } else {
                sink.os() << row_json(r, avg).dump() << '\n';
            }
            by_n[r.n].push_back(&r);
        }
        sink.flush();
        if (!cp.path.empty()) {
            for (long n = lo; n <= hi; ++n) cp.lines.push_back(checkpoint_record(n, config, by_n[n]).dump());
            save_checkpoint(cp);
        }
    }
    return (cfg.strict && !all_certified) ? kStrictCap : kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    VerifyOptions opts;
    opts.residual_bound = cfg.tol;
    const VerifyReport report = run_suite(cfg.suite, opts);
    Sink sink(cfg.out, out, false);
    if (cfg.format == "csv") {
        sink.os() << "suite,check,anchor,status,measured,bound,radius\n";
        for (const auto& c : report.checks) {
            sink.os() << report.suite << ',' << csv_field(c.id) << ',' << csv_field(c.anchor) << ','
                      << to_string(c.status) << ',' << csv_field(c.measured) << ',' << csv_field(c.bound) << ','
                      << csv_field(c.radius) << '\n';
        }
    } else {
        json j;
        j["schema"] = kVerifySchema;
        j["suite"] = report.suite;
        j["status"] = report.passed() ? "pass" : "fail";
        json arr = json::array();
        for (const auto& c : report.checks) {
            arr.push_back({{"check", c.id},
                           {"anchor", c.anchor},
                           {"status", to_string(c.status)},
                           {"measured", c.measured},
                           {"bound", c.bound},
                           {"radius", c.radius}});
        }
        j["checks"] = std::move(arr);
        sink.os() << j.dump(2) << '\n';
    }
    sink.flush();
    err << "verify " << report.suite << ": " << report.count(Status::pass) << " pass, "
        << report.count(Status::fail) << " fail, " << report.count(Status::uncertified) << " uncertified\n";
    for (const auto& c : report.checks) {
        if (c.status == Status::fail) err << "  FAIL " << c.id << " [" << c.anchor << "] " << c.measured << '\n';
    }
    return report.passed() ? kOk : kVerifyFailed;
}

// --- gamma ------------------------------------------------------------------

int cmd_gamma(const RunConfig& cfg, std::ostream& out) {
    Ball value;
    bool converged = true;
    long nodes = 0;
    const Real tol = decimal_tolerance(cfg.digits);
    if (cfg.method == "classic" || cfg.method == "new") {
        const QuadResult r = cfg.method == "classic" ? gamma_classic(cfg.digits) : gamma_new(cfg.digits);
        value = r.value;
        converged = r.converged;
        nodes = r.nodes_used;
    } else {
        // 0 < J_{n,0} < 4^-n, so A - L encloses gamma up to 4^-n.
        const long n = static_cast<long>(std::ceil((cfg.digits + 2) * std::log2(10.0) / 2.0)) + 1;
        const long bits = static_cast<long>(std::ceil(cfg.digits * std::log2(10.0))) + 16;
        const Precision prec = working_precision(n, bits);
        value = Ball::from_rational(A_nm(static_cast<unsigned long>(n)), prec) - L_nm(n, 0, prec);
        value.add_error(Real::pow2(-2 * n));
    }
    converged = converged && mpfr_lessequal_p(value.rad().get(), tol.get());
    char buf[4096];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", cfg.digits, value.mid().get());
    char radbuf[64];
    mpfr_snprintf(radbuf, sizeof radbuf, "%.2Re", value.rad().get());
    Sink sink(cfg.out, out, false);
    if (cfg.format == "json") {
        json j;
        j["method"] = cfg.method;
        j["digits"] = cfg.digits;
        j["value"] = buf;
        j["radius"] = radbuf;
        j["converged"] = converged;
        j["nodes"] = nodes;
        sink.os() << j.dump() << '\n';
    } else if (cfg.format == "csv") {
        sink.os() << "method,digits,value,radius,converged,nodes\n"
                  << cfg.method << ',' << cfg.digits << ',' << buf << ',' << radbuf << ','
                  << (converged ? "true" : "false") << ',' << nodes << '\n';
    } else {
        sink.os() << buf << " +/- " << radbuf << " (" << cfg.method << ", "
                  << (converged ? "converged" : "not converged") << ")\n";
    }
    sink.flush();
    return converged ? kOk : kVerifyFailed;
}

// --- pade -------------------------------------------------------------------

std::string decimal_truncated(const Rational& q, int digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer scaled;
    const Integer num = q.get_num() * scale;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    Integer whole, frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());
    std::string f = frac.get_str();
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    return whole.get_str() + "." + f;
}

int cmd_pade(const RunConfig& cfg, std::ostream& out) {
    const auto ms = m_list_or(cfg, {0, 1});
    Sink sink(cfg.out, out, false);
    if (cfg.format == "csv") {
        sink.os() << "p,m,n,Ltilde,frac,frac_decimal,gap,gap_bound,gap_bound_ok,gap_asserted\n";
    }
    for (long p = 0; p <= cfg.p_max; ++p) {
        for (long m : ms) {
            const long n = (1L << p) + m - 1;
            if (n < 1 || m > n) continue;
            const PadeCriterionRow r = pade_criterion_row(p, m);
            const std::string dec = decimal_truncated(r.frac, cfg.digits);
            if (cfg.format == "csv") {
                sink.os() << r.p << ',' << r.m << ',' << r.n << ',' << r.Ltilde.get_str() << ',' << r.frac.get_str()
                          << ',' << dec << ',' << sci3(r.gap) << ',' << sci3(r.gap_bound) << ','
                          << (r.gap_bound_ok ? "true" : "false") << ',' << (r.gap_asserted ? "true" : "false")
                          << '\n';
            } else {
                json j;
                j["schema"] = "egamma.pade.v1";
                j["p"] = r.p;
                j["m"] = r.m;
                j["n"] = r.n;
                j["Ltilde"] = r.Ltilde.get_str();
                j["frac"] = r.frac.get_str();
                j["frac_decimal"] = dec;
                j["gap"] = sci3(r.gap);
                j["gap_bound"] = sci3(r.gap_bound);
                j["gap_bound_ok"] = r.gap_bound_ok;
                j["gap_asserted"] = r.gap_asserted;
                sink.os() << j.dump() << '\n';
            }
        }
    }
    sink.flush();
    return kOk;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.subcommand == "table") return cmd_table(cfg, out);
        if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
        if (cfg.subcommand == "gamma") return cmd_gamma(cfg, out);
        if (cfg.subcommand == "pade") return cmd_pade(cfg, out);
        err << "unknown subcommand: " << cfg.subcommand << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const CheckpointError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Irrationality-criterion sequences for Euler's constant", "egamma"};
    app.require_subcommand(1);

    const auto formats = CLI::IsMember({"csv", "json"});
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv or json")->check(formats);
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
    };
    auto add_rows = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "Largest n")->check(CLI::Range(1L, 100000L));
        sub->add_option("--m", cfg.m_list, "Comma-separated m values")
            ->delimiter(',')
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--frac-bits", cfg.frac_bits, "Target radius 2^-bits for fractional parts")
            ->check(CLI::Range(1L, 1000000L));
        sub->add_option("--prec-cap", cfg.prec_cap, "Hard precision cap in bits (default EGAMMA_PREC_CAP)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_flag("--strict", cfg.strict, "Exit 4 when any row stays uncertified");
        add_output(sub);
    };

    auto* table = app.add_subcommand("table", "Reproduce the ratio table 0.7^n / {d_n L_{n,m}}");
    add_rows(table);
    auto* sweep_cmd = app.add_subcommand("sweep", "Fractional parts and running averages with checkpointing");
    add_rows(sweep_cmd);
    sweep_cmd->add_option("--checkpoint", cfg.checkpoint, "JSON Lines checkpoint for resume");

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", cfg.suite, "identity, lemma1, lemma2, bounds, pade, sondow or all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--tol", cfg.tol, "Residual bound for the lemma1 suite")->check(CLI::PositiveNumber);
    add_output(verify);

    auto* gamma = app.add_subcommand("gamma", "Compute Euler's constant");
    gamma->add_option("--digits", cfg.digits, "Decimal digits")->check(CLI::Range(1, kMaxGammaDigits));
    gamma->add_option("--method", cfg.method, "classic, new or identity")
        ->check(CLI::IsMember({"classic", "new", "identity"}));
    gamma->add_option("--format", cfg.format, "text, csv or json (default text)")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    gamma->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* pade = app.add_subcommand("pade", "Rational-substitute criterion on n - m + 1 = 2^p");
    pade->add_option("--p-max", cfg.p_max, "Largest p")->check(CLI::Range(0L, kMaxPadeP));
    pade->add_option("--m", cfg.m_list, "Comma-separated m values")->delimiter(',')->check(CLI::NonNegativeNumber);
    pade->add_option("--digits", cfg.digits, "Decimal digits for frac_decimal")->check(CLI::Range(1, 1000));
    add_output(pade);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e, out, err);
            return kOk;
        }
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }
    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    if (cfg.subcommand == "gamma" && gamma->count("--format") == 0) cfg.format = "text";
    return execute(cfg, out, err);
}

}  // namespace egamma::cli
