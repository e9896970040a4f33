#pragma once

// Command-line front end for the arith library. dispatch() parses argv,
// runs one subcommand and returns the process exit status:
//   0 success, 1 a check evaluated to fail, 2 usage or integrity error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "arith/arith.hpp"

namespace arith::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { text, csv, json };

struct RunConfig {
    Format format = Format::text;
    unsigned threads = 1;
    std::optional<std::string> checkpoint_path;
};

/// Available parallelism, overridden by ARITH_THREADS when it holds a
/// positive integer.
inline unsigned thread_budget(unsigned from_flag = 0) {
    unsigned n = from_flag ? from_flag : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ARITH_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    }
    return n;
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

// Engine sized for queries up to x: the dense table covers x when that is
// cheap, and the recursion handles the rest.
inline PrimeCountEngine pi_engine_for(u64 x) {
    return PrimeCountEngine(std::clamp<u64>(x, 2, kDefaultPiDenseLimit));
}

inline json to_json(const InequalityReport& r) {
    return {{"x", r.x},
            {"pi_x", r.pi_x},
            {"x_over_e", r.x_over_e},
            {"pi_x_over_e", r.pi_x_over_e},
            {"lhs", static_cast<double>(r.lhs)},
            {"rhs", static_cast<double>(r.rhs)},
            {"g", static_cast<double>(r.g)},
            {"g_sign", to_string(r.g_sign)},
            {"margin_log10", r.margin_log10},
            {"holds", r.holds()}};
}

inline json to_json(const ScanSummary& s) {
    return {{"range_lo", s.range_lo},
            {"range_hi", s.range_hi},
            {"step_rule", s.step_rule},
            {"holds", s.holds_count},
            {"fails", s.fails_count},
            {"indeterminate", s.indeterminate_count},
            {"counterexamples", s.counterexamples}};
}

inline json to_json(const BoundReport& r) {
    json checks = json::array();
    for (const auto& c : r.side_checks) checks.push_back({{"name", c.name}, {"ok", c.ok}});
    json samples = json::array();
    for (std::size_t i = 0; i < r.sample_points.size(); ++i)
        samples.push_back({{"x", r.sample_points[i]}, {"ratio", r.ratios[i]}});
    return {{"claim", claim_name(r.claim)}, {"max_ratio", r.max_ratio}, {"threshold", r.threshold},
            {"side_checks", checks},         {"samples", samples},      {"pass", r.pass}};
}

inline json to_json(const LogComparison& c) {
    return {{"sign", c.sign},       {"determinate", c.determinate}, {"holds", c.holds},
            {"ln_lhs", c.ln_lhs},   {"ln_rhs", c.ln_rhs},           {"error_bound", c.error_bound},
            {"note", c.note}};
}

inline void print_summary(std::ostream& out, const ScanSummary& s) {
    out << "range=[" << s.range_lo << "," << s.range_hi << "] step=" << s.step_rule
        << " holds=" << s.holds_count << " fails=" << s.fails_count
        << " indeterminate=" << s.indeterminate_count << "\n";
    out << "counterexamples=" << s.counterexamples.size();
    if (!s.counterexamples.empty()) out << " last=" << s.counterexamples.back();
    out << "\n";
}

inline void print_bound_report(std::ostream& out, const BoundReport& r, const char* label = "") {
    out << claim_name(r.claim) << label << ": samples=" << r.sample_points.size()
        << " max_ratio=" << fixed(r.max_ratio, 6) << " threshold=" << r.threshold << " "
        << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.side_checks) out << "  " << (c.ok ? "ok  " : "FAIL") << " " << c.name << "\n";
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"Exact arithmetic-function engines and a prime-counting inequality harness",
                 "arith"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    RunConfig cfg;
    std::string format = "text";
    unsigned threads_flag = 0;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", threads_flag, "Thread budget (ARITH_THREADS overrides)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;

    // sieve
    auto* sieve = app.add_subcommand("sieve", "Write mu(n) or the primes up to a limit as CSV");
    u64 sieve_limit = 0;
    std::string sieve_emit, sieve_out;
    sieve->add_option("--limit", sieve_limit)->required()->check(CLI::PositiveNumber);
    sieve->add_option("--emit", sieve_emit)->required()->check(CLI::IsMember({"mu", "primes"}));
    sieve->add_option("--out", sieve_out, "CSV path")->required();
    sieve->callback([&] {
        action = [&] {
            Stopwatch sw;
            const MuTable table = build_mu_table(sieve_limit);
            auto f = open_out(sieve_out);
            f << "n,value\n";
            u64 rows = 0;
            if (sieve_emit == "mu") {
                for (u64 n = 1; n <= sieve_limit; ++n) f << n << ',' << int(table.mu(n)) << '\n';
                rows = sieve_limit;
            } else {
                for (const u64 p : table.primes()) f << ++rows << ',' << p << '\n';
            }
            if (cfg.format == Format::json)
                out << json{{"limit", sieve_limit}, {"emit", sieve_emit}, {"rows", rows},
                            {"path", sieve_out}, {"elapsed_ms", sw.ms()}}
                    << "\n";
            else
                out << "wrote " << rows << " rows to " << sieve_out << "\n";
            return kExitOk;
        };
    });

    // mertens
    auto* mertens = app.add_subcommand("mertens", "Mertens function M(x)");
    u64 m_x = 0;
    std::string m_method = "auto";
    mertens->add_option("--x", m_x)->required()->check(CLI::PositiveNumber);
    mertens->add_option("--method", m_method)->check(CLI::IsMember({"auto", "dense", "sublinear"}));
    mertens->callback([&] {
        action = [&] {
            Stopwatch sw;
            std::string method = m_method;
            if (method == "auto") method = m_x <= 10'000'000 ? "dense" : "sublinear";
            i64 m;
            if (method == "dense") {
                m = mertens_dense(m_x, MertensEngine(m_x));
            } else {
                const MertensEngine engine(
                    std::min(m_x, MertensEngine::recommended_dense_limit(m_x)));
                m = mertens_sublinear(m_x, engine);
            }
            if (cfg.format == Format::json)
                out << json{{"x", m_x}, {"m", m}, {"method", method}, {"elapsed_ms", sw.ms()}} << "\n";
            else
                out << "M(" << m_x << ")=" << m << "\n";
            return kExitOk;
        };
    });

    // pi
    auto* pi = app.add_subcommand("pi", "Prime-counting function pi(x)");
    u64 pi_x = 0;
    std::string pi_method = "auto";
    pi->add_option("--x", pi_x)->required();
    pi->add_option("--method", pi_method)->check(CLI::IsMember({"auto", "sieve", "sublinear"}));
    pi->callback([&] {
        action = [&] {
            Stopwatch sw;
            std::string method = pi_method;
            if (method == "auto") method = pi_x <= kDefaultPiDenseLimit ? "sieve" : "sublinear";
            const u64 v = method == "sieve"
                              ? pi_exact(pi_x, PrimeCountEngine(std::max<u64>(pi_x, 2)))
                              : pi_sublinear(pi_x);
            if (cfg.format == Format::json)
                out << json{{"x", pi_x}, {"pi", v}, {"method", method}, {"elapsed_ms", sw.ms()}} << "\n";
            else
                out << v << "\n";
            return kExitOk;
        };
    });

    // psi
    auto* psi = app.add_subcommand("psi", "Chebyshev function psi(x)");
    u64 psi_x = 0;
    psi->add_option("--x", psi_x)->required()->check(CLI::PositiveNumber);
    psi->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto v = psi_exact(psi_x);
            if (cfg.format == Format::json)
                out << json{{"x", psi_x},        {"psi", v.psi},
                            {"terms", v.terms},  {"pi", v.prime_count},
                            {"method", "theta-roots"}, {"elapsed_ms", sw.ms()}}
                    << "\n";
            else
                out << fixed(v.psi, 9) << "\n";
            return kExitOk;
        };
    });

    // check
    auto* check = app.add_subcommand("check", "Numerical diagnostic for an order estimate");
    std::string claim_str, check_out;
    u64 check_max = 0;
    std::size_t check_samples = 0;
    std::optional<double> check_threshold;
    std::vector<std::string> claim_names;
    for (const auto& [c, name] : kClaimNames) claim_names.emplace_back(name);
    check->add_option("claim", claim_str)->required()->check(CLI::IsMember(claim_names));
    check->add_option("--max", check_max)->required()->check(CLI::PositiveNumber);
    check->add_option("--samples", check_samples, "Sample count (default: ratio-1.2 grid)");
    check->add_option("--threshold", check_threshold);
    check->add_option("--out", check_out, "csv or json (default text)")
        ->check(CLI::IsMember({"csv", "json"}));
    check->callback([&] {
        action = [&] {
            Stopwatch sw;
            const Claim claim = *parse_claim(claim_str);
            const double t = check_threshold.value_or(default_threshold(claim));
            const Format fmt = check_out == "csv"    ? Format::csv
                               : check_out == "json" ? Format::json
                                                     : cfg.format;
            if (claim == Claim::pi_estimate) {
                const auto rep = check_pi_estimate(check_max, check_samples, t);
                if (fmt == Format::csv) {
                    out << "x,ratio\n";
                    for (std::size_t i = 0; i < rep.r2.sample_points.size(); ++i)
                        out << rep.r2.sample_points[i] << ',' << fixed(rep.r2.ratios[i], 9) << '\n';
                } else if (fmt == Format::json) {
                    out << json{{"claim", claim_name(claim)},
                                {"r1", to_json(rep.r1)},
                                {"r2", to_json(rep.r2)},
                                {"asserted_range", {rep.asserted_lo, rep.asserted_hi}},
                                {"pass", rep.pass},
                                {"elapsed_ms", sw.ms()}}
                        << "\n";
                } else {
                    print_bound_report(out, rep.r1, " r1");
                    print_bound_report(out, rep.r2, " r2");
                    out << "band [" << rep.r2_lo << ", " << rep.r2_hi << "] on ["
                        << rep.asserted_lo << ", " << rep.asserted_hi << "]: "
                        << (rep.pass ? "PASS" : "FAIL") << "\n";
                }
                return rep.pass ? kExitOk : kExitCheckFailed;
            }
            BoundReport rep;
            switch (claim) {
                case Claim::mu_over_d: rep = check_mu_over_d(check_max, check_samples, t); break;
                case Claim::mu_log_over_d:
                    rep = check_mu_log_over_d(check_max, check_samples, t);
                    break;
                case Claim::mertens_order:
                    rep = check_mertens_order(check_max, check_samples, t);
                    break;
                case Claim::psi_identity:
                    rep = check_psi_identity(check_max, check_samples, t);
                    break;
                case Claim::psi_lemma: rep = check_psi_lemma(check_max, check_samples, t); break;
                case Claim::pi_estimate: break;
            }
            if (fmt == Format::csv) {
                out << "x,ratio\n";
                for (std::size_t i = 0; i < rep.sample_points.size(); ++i)
                    out << rep.sample_points[i] << ',' << fixed(rep.ratios[i], 9) << '\n';
            } else if (fmt == Format::json) {
                auto j = to_json(rep);
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                print_bound_report(out, rep);
            }
            return rep.pass ? kExitOk : kExitCheckFailed;
        };
    });

    // ineq
    auto* ineq = app.add_subcommand("ineq", "The inequality pi(x)^2 < e x/log x pi(x/e)");
    ineq->require_subcommand(1);

    auto* ineq_eval = ineq->add_subcommand("eval", "Evaluate G(x) at one integer");
    u64 eval_x = 0;
    ineq_eval->add_option("--x", eval_x)->required();
    ineq_eval->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto r = eval_inequality(eval_x, pi_engine_for(eval_x));
            if (cfg.format == Format::json) {
                auto j = to_json(r);
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                out << "x=" << r.x << " pi(x)=" << r.pi_x << " floor(x/e)=" << r.x_over_e
                    << " pi(x/e)=" << r.pi_x_over_e << "\n"
                    << "G=" << fixed(static_cast<double>(r.g), 6) << " sign=" << to_string(r.g_sign)
                    << " " << (r.holds() ? "HOLDS" : "FAILS") << "\n";
            }
            return kExitOk;
        };
    });

    auto* ineq_scan = ineq->add_subcommand("scan", "Scan a range and list counterexamples");
    u64 scan_from = 0, scan_to = 0, scan_chunk = 1'000'000;
    std::optional<u64> scan_max_chunks;
    bool scan_primes = false;
    std::string scan_out;
    ineq_scan->add_option("--from", scan_from)->required();
    ineq_scan->add_option("--to", scan_to)->required();
    ineq_scan->add_flag("--primes-only", scan_primes);
    ineq_scan->add_option("--out", scan_out, "CSV path")->required();
    auto* ckpt_opt = ineq_scan->add_option("--checkpoint", cfg.checkpoint_path, "Checkpoint path");
    ineq_scan->add_option("--chunk", scan_chunk)->needs(ckpt_opt)->check(CLI::PositiveNumber);
    ineq_scan->add_option("--max-chunks", scan_max_chunks)->needs(ckpt_opt);
    ineq_scan->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto engine = pi_engine_for(scan_to);
            ScanOptions opts;
            opts.threads = cfg.threads;
            ScanSummary summary;
            bool complete = true;
            if (cfg.checkpoint_path) {
                ScanIdentity id;
                id.range_lo = scan_from;
                id.range_hi = scan_to;
                id.primes_only = scan_primes;
                id.chunk = scan_chunk;
                const auto run = run_checkpointed_scan(id, *cfg.checkpoint_path, scan_out, engine,
                                                       opts, scan_max_chunks);
                summary = run.summary;
                complete = run.complete;
            } else {
                auto f = open_out(scan_out);
                f << kScanCsvHeader;
                opts.on_row = [&f](const InequalityReport& r) { f << format_scan_row(r); };
                summary = scan_range(scan_from, scan_to, scan_primes, engine, opts);
            }
            if (cfg.format == Format::json) {
                auto j = to_json(summary);
                j["complete"] = complete;
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                print_summary(out, summary);
                if (!complete) out << "stopped early; resume with --checkpoint\n";
            }
            return kExitOk;
        };
    });

    auto* ineq_resume = ineq->add_subcommand("resume", "Finish a checkpointed scan");
    std::string resume_path;
    ineq_resume->add_option("--checkpoint", resume_path)->required();
    ineq_resume->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto cp = load_checkpoint(resume_path);
            const auto engine = pi_engine_for(cp.scan.range_hi);
            ScanOptions opts;
            opts.threads = cfg.threads;
            const auto run = resume(resume_path, engine, opts);
            if (cfg.format == Format::json) {
                auto j = to_json(run.summary);
                j["chunks_run"] = run.chunks_run;
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                print_summary(out, run.summary);
                out << "chunks_run=" << run.chunks_run << "\n";
            }
            return kExitOk;
        };
    });

    auto* ineq_galway = ineq->add_subcommand("galway", "Evaluate the known counterexample");
    ineq_galway->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto r = eval_inequality(kGalwayCounterexample, PrimeCountEngine(1'000'000));
            const bool fails = r.g_sign == GapSign::positive || r.g_sign == GapSign::zero;
            if (cfg.format == Format::json) {
                auto j = to_json(r);
                j["verdict"] = fails ? "FAILS" : "HOLDS";
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                out << "x=" << r.x << " pi(x)=" << r.pi_x << " pi(x/e)=" << r.pi_x_over_e
                    << " G sign=" << to_string(r.g_sign) << "\n"
                    << (fails ? "FAILS" : "HOLDS") << " at " << r.x << "\n";
            }
            return kExitOk;
        };
    });

    auto* ineq_hassani = ineq->add_subcommand("hassani", "Power or cubic generalisation");
    std::string h_variant;
    unsigned h_n = 0;
    u64 h_x = 0;
    ineq_hassani->add_option("--variant", h_variant)->required()->check(CLI::IsMember({"pow2", "cubic"}));
    ineq_hassani->add_option("--n", h_n)->required();
    ineq_hassani->add_option("--x", h_x)->required();
    ineq_hassani->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto engine = pi_engine_for(h_x);
            const auto c = h_variant == "pow2" ? hassani_power_inequality(h_x, h_n, engine)
                                               : hassani_cubic_inequality(h_x, h_n, engine);
            if (cfg.format == Format::json) {
                auto j = to_json(c);
                j["variant"] = h_variant;
                j["x"] = h_x;
                j["n"] = h_n;
                j["elapsed_ms"] = sw.ms();
                out << j << "\n";
            } else {
                out << h_variant << " n=" << h_n << " x=" << h_x << " ln_lhs=" << fixed(c.ln_lhs, 9)
                    << " ln_rhs=" << fixed(c.ln_rhs, 9) << " sign=" << c.sign << " "
                    << (!c.determinate      ? "UNDECIDED"
                        : !c.note.empty() ? "REPORTED"
                        : c.holds         ? "HOLDS"
                                          : "FAILS")
                    << "\n";
                if (!c.note.empty()) out << c.note << "\n";
            }
            return kExitOk;
        };
    });

    auto* ineq_probe = ineq->add_subcommand("probe", "List adjacent points where G increases");
    u64 probe_from = 201, probe_to = 10'000, probe_step = 1;
    ineq_probe->add_option("--from", probe_from, "")->capture_default_str();
    ineq_probe->add_option("--to", probe_to, "")->capture_default_str();
    ineq_probe->add_option("--step", probe_step, "")->capture_default_str();
    ineq_probe->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto rep = monotonicity_probe(probe_from, probe_to, probe_step,
                                                pi_engine_for(probe_to));
            if (cfg.format == Format::json) {
                json v = json::array();
                for (const auto& m : rep.violations)
                    v.push_back({{"x", m.x}, {"x_next", m.x_next},
                                 {"margin", static_cast<double>(m.margin)}});
                out << json{{"range_lo", rep.range_lo}, {"range_hi", rep.range_hi},
                            {"step", rep.step},         {"points", rep.points},
                            {"violations", v},          {"elapsed_ms", sw.ms()}}
                    << "\n";
            } else {
                out << "points=" << rep.points << " violations=" << rep.violations.size() << "\n";
                for (const auto& m : rep.violations)
                    out << m.x << " -> " << m.x_next << " +" << fixed(static_cast<double>(m.margin), 6)
                        << "\n";
            }
            return kExitOk;
        };
    });

    // asym
    auto* asym = app.add_subcommand("asym", "Asymptotic expansion of G at x = e^k");
    asym->require_subcommand(1);
    std::string asym_formula = "table-ref", asym_out = "text";
    auto formula_of = [&] {
        return asym_formula == "leading" ? GFormula::leading : GFormula::table_ref;
    };
    auto* table1 = asym->add_subcommand("table1", "k = 547, 647, ..., 3247");
    table1->add_option("--formula", asym_formula)->check(CLI::IsMember({"leading", "table-ref"}));
    table1->add_option("--out", asym_out)->check(CLI::IsMember({"text", "csv", "json"}));
    table1->callback([&] {
        action = [&] {
            const auto rows = emit_table1(formula_of());
            if (asym_out == "csv") {
                out << "k,sign,log10_abs_g,formatted\n";
                for (const auto& r : rows)
                    out << r.k << ',' << r.g_sign << ',' << fixed(r.g_log10, 9) << ',' << r.formatted
                        << '\n';
            } else if (asym_out == "json" || cfg.format == Format::json) {
                json a = json::array();
                for (const auto& r : rows)
                    a.push_back({{"k", r.k}, {"sign", r.g_sign}, {"log10_abs_g", r.g_log10},
                                 {"formatted", r.formatted}});
                out << json{{"formula", asym_formula}, {"rows", a}} << "\n";
            } else {
                for (const auto& r : rows) out << "e^" << r.k << "  " << r.formatted << "\n";
            }
            return kExitOk;
        };
    });
    auto* figure = asym->add_subcommand("figure", "log(-G) against log x");
    double fig_from = 547, fig_to = 3247, fig_step = 100;
    figure->add_option("--from", fig_from)->capture_default_str();
    figure->add_option("--to", fig_to)->capture_default_str();
    figure->add_option("--step", fig_step)->capture_default_str();
    figure->add_option("--formula", asym_formula)->check(CLI::IsMember({"leading", "table-ref"}));
    figure->add_option("--out", asym_out)->check(CLI::IsMember({"text", "csv", "json"}));
    figure->callback([&] {
        action = [&] {
            const auto pts = emit_figure1(fig_from, fig_to, fig_step, formula_of());
            const double slope = least_squares_slope(pts);
            if (asym_out == "csv") {
                out << "log_x,log_neg_g\n";
                for (const auto& p : pts) out << fixed(p.log_x, 6) << ',' << fixed(p.log_neg_g, 9) << '\n';
            } else if (asym_out == "json" || cfg.format == Format::json) {
                json a = json::array();
                for (const auto& p : pts) a.push_back({{"log_x", p.log_x}, {"log_neg_g", p.log_neg_g}});
                out << json{{"formula", asym_formula}, {"slope", slope}, {"points", a}} << "\n";
            } else {
                out << "points=" << pts.size() << " slope=" << fixed(slope, 6) << "\n";
            }
            return kExitOk;
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Fit alpha, beta in the two-sided pi(x) bound");
    u64 b_from = 0, b_to = 0;
    std::size_t b_samples = 0;
    bounds->add_option("--from", b_from)->required();
    bounds->add_option("--to", b_to)->required();
    bounds->add_option("--samples", b_samples);
    bounds->callback([&] {
        action = [&] {
            Stopwatch sw;
            const auto fit = fit_bound_constants(b_from, b_to, b_samples);
            if (cfg.format == Format::json) {
                out << json{{"range_lo", fit.range_lo}, {"range_hi", fit.range_hi},
                            {"alpha", fit.alpha},       {"beta", fit.beta},
                            {"samples", fit.sample_points.size()},
                            {"pass", fit.pass},         {"elapsed_ms", sw.ms()}}
                    << "\n";
            } else {
                char buf[128];
                std::snprintf(buf, sizeof buf, "alpha=%.9e beta=%.9e samples=%zu", fit.alpha,
                              fit.beta, fit.sample_points.size());
                out << buf << "\n";
            }
            return fit.pass ? kExitOk : kExitCheckFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return kExitUsage;
    }

    cfg.format = format == "json" ? Format::json : Format::text;
    cfg.threads = thread_budget(threads_flag);
    try {
        return action();
    } catch (const integrity_error& e) {
        err << "integrity error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace arith::cli
