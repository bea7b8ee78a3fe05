#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qregen/bounds.hpp"
#include "qregen/flow_graph.hpp"
#include "qregen/json_io.hpp"
#include "qregen/qudit.hpp"
#include "qregen/repair_sim.hpp"

namespace qregen::cli {

namespace {

std::string fmt_decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_decimal(const Rational& r) { return fmt_decimal(r.to_double()); }

int usage_error(std::ostream& err, const std::string& msg) {
    err << "error: " << msg << "\n";
    return kExitUsage;
}

Rational parse_rational_arg(const std::string& text, const char* name) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string(name) + ": " + e.what());
    }
}

// Maps the error taxonomy onto the exit-code contract: infeasibility is a
// check failure (1); bad parameters, domains, and schemas are usage (2);
// internal-consistency violations count as check failures.
template <typename Fn>
int guarded(std::ostream& err, Fn fn) {
    try {
        return fn();
    } catch (const InfeasiblePointError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

// Runs `body` against --output when given, else against `out`.
template <typename Fn>
int with_sink(const std::string& path, std::ostream& out, std::ostream& err, Fn body) {
    if (path.empty()) return body(out);
    std::ofstream file(path);
    if (!file) return usage_error(err, "cannot open output file: " + path);
    int rc = body(file);
    file.flush();
    if (!file) return usage_error(err, "write failed: " + path);
    return rc;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string rational_cell(const Rational& r) {
    return r.str() + " (" + fmt_decimal(r) + ")";
}

int write_gnuplot(const std::string& script_path, const std::string& body, std::ostream& err) {
    std::ofstream file(script_path);
    if (!file) return usage_error(err, "cannot open gnuplot script: " + script_path);
    file << body;
    return kExitOk;
}

}  // namespace

int cmd_points(const PointsOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Rational B = parse_rational_arg(opt.file_size, "--B");
        SystemParams params(opt.n, opt.k, opt.d, B);
        RegenPoint pts[] = {msr_point(params), mbr_point(params), qmsr_point(params),
                            qmbr_point(params)};
        bool coincide = points_coincide(params);

        if (opt.format == "json") {
            Json results{{"coincide", coincide}};
            Json arr = Json::array();
            for (const RegenPoint& p : pts) arr.push_back(regen_point_to_json(p));
            results["points"] = std::move(arr);
            emit_json(out, make_output_record("points", params_to_json(params),
                                              std::move(results)));
            return kExitOk;
        }
        if (opt.format != "text") return usage_error(err, "unknown format: " + opt.format);

        out << "(n,k,d) = (" << params.n << "," << params.k << "," << params.d
            << "), B = " << params.file_size << "\n";
        for (const RegenPoint& p : pts) {
            out << std::left << std::setw(6) << regen_label_name(p.label)
                << " alpha = " << std::setw(20) << rational_cell(p.alpha)
                << " gamma = " << std::setw(20) << rational_cell(p.total_bandwidth)
                << " beta = " << rational_cell(p.per_helper) << "\n";
        }
        out << "QMSR and QMBR coincide: " << (coincide ? "yes" : "no") << "\n";
        return kExitOk;
    });
}

int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Rational B = parse_rational_arg(opt.file_size, "--B");
        SystemParams params(opt.n, opt.k, opt.d, B);
        if (opt.samples < 0) return usage_error(err, "--samples must be >= 0");

        std::vector<Mode> modes;
        if (opt.mode == "classical") modes = {Mode::Classical};
        else if (opt.mode == "quantum") modes = {Mode::Quantum};
        else if (opt.mode == "both") modes = {Mode::Classical, Mode::Quantum};
        else return usage_error(err, "unknown mode: " + opt.mode);

        struct Row {
            Mode mode;
            const char* kind;  // "breakpoint" | "sample"
            Rational gamma, alpha;
        };
        std::vector<Row> rows;
        std::vector<TradeoffCurve> curves;
        for (Mode m : modes) {
            TradeoffCurve curve = tradeoff_curve(params, m);
            const auto& bp = curve.breakpoints;
            rows.push_back({m, "breakpoint", bp[0].first, bp[0].second});
            for (std::size_t i = 1; i < bp.size(); ++i) {
                for (int s = 1; s <= opt.samples; ++s) {
                    Rational t(s, opt.samples + 1);
                    Rational g = bp[i - 1].first + (bp[i].first - bp[i - 1].first) * t;
                    Rational a = bp[i - 1].second + (bp[i].second - bp[i - 1].second) * t;
                    rows.push_back({m, "sample", g, a});
                }
                rows.push_back({m, "breakpoint", bp[i].first, bp[i].second});
            }
            curves.push_back(std::move(curve));
        }

        if (!opt.gnuplot.empty()) {
            if (opt.output.empty())
                return usage_error(err, "--gnuplot needs --output so the script has data to read");
            std::ostringstream gp;
            gp << "# storage-bandwidth tradeoff plot over " << opt.output << "\n"
               << "set datafile separator \",\"\n"
               << "set key autotitle columnhead\n"
               << "set xlabel \"total repair bandwidth gamma = d*beta (dits)\"\n"
               << "set ylabel \"per-node storage alpha (dits)\"\n"
               << "plot \"" << opt.output
               << "\" using (strcol(1) eq \"classical\" ? column(3) : 1/0):4 "
                  "with linespoints title \"classical\", \\\n"
               << "     \"\" using (strcol(1) eq \"quantum\" ? column(3) : 1/0):4 "
                  "with linespoints title \"quantum\"\n";
            if (int rc = write_gnuplot(opt.gnuplot, gp.str(), err); rc != kExitOk) return rc;
        }

        return with_sink(opt.output, out, err, [&](std::ostream& sink) {
            if (opt.format == "json") {
                Json inputs = params_to_json(params);
                inputs["mode"] = opt.mode;
                inputs["samples"] = opt.samples;
                Json curve_arr = Json::array();
                for (const TradeoffCurve& c : curves) curve_arr.push_back(curve_to_json(c));
                Json row_arr = Json::array();
                for (const Row& r : rows)
                    row_arr.push_back(Json{{"mode", mode_name(r.mode)},
                                           {"kind", r.kind},
                                           {"gamma", rational_to_json(r.gamma)},
                                           {"alpha", rational_to_json(r.alpha)}});
                emit_json(sink, make_output_record(
                                    "curve", std::move(inputs),
                                    Json{{"curves", std::move(curve_arr)},
                                         {"rows", std::move(row_arr)}}));
                return kExitOk;
            }
            if (opt.format != "csv") return usage_error(err, "unknown format: " + opt.format);
            sink << "mode,kind,gamma,alpha,gamma_exact,alpha_exact\n";
            for (const Row& r : rows)
                sink << mode_name(r.mode) << "," << r.kind << "," << fmt_decimal(r.gamma) << ","
                     << fmt_decimal(r.alpha) << "," << r.gamma.str() << "," << r.alpha.str()
                     << "\n";
            return kExitOk;
        });
    });
}

int cmd_ratio(const RatioOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opt.k < 1) return usage_error(err, "--k must be >= 1");
        if (opt.d_min < opt.k)
            return usage_error(err, "--d-min must be >= k (repair needs at least k helpers)");
        if (opt.d_max < opt.d_min) return usage_error(err, "--d-max must be >= --d-min");
        bool msr;
        if (opt.metric == "msr") msr = true;
        else if (opt.metric == "mbr") msr = false;
        else return usage_error(err, "unknown metric: " + opt.metric);

        std::vector<std::pair<int, Rational>> rows;
        for (int d = opt.d_min; d <= opt.d_max; ++d)
            rows.emplace_back(d, msr ? msr_bandwidth_ratio(opt.k, d)
                                     : mbr_bandwidth_ratio(opt.k, d));

        if (!opt.gnuplot.empty()) {
            if (opt.output.empty())
                return usage_error(err, "--gnuplot needs --output so the script has data to read");
            std::ostringstream gp;
            gp << "# quantum/classical bandwidth ratio plot over " << opt.output << "\n"
               << "set datafile separator \",\"\n"
               << "set key autotitle columnhead\n"
               << "set xlabel \"helper nodes d\"\n"
               << "set ylabel \"quantum/classical per-helper bandwidth ratio\"\n"
               << "set yrange [0:1]\n"
               << "plot \"" << opt.output << "\" using 1:2 with linespoints title \""
               << opt.metric << "\"\n";
            if (int rc = write_gnuplot(opt.gnuplot, gp.str(), err); rc != kExitOk) return rc;
        }

        return with_sink(opt.output, out, err, [&](std::ostream& sink) {
            if (opt.format == "json") {
                Json row_arr = Json::array();
                for (const auto& [d, ratio] : rows)
                    row_arr.push_back(Json{{"d", d}, {"ratio", rational_to_json(ratio)}});
                emit_json(sink, make_output_record("ratio",
                                                   Json{{"k", opt.k},
                                                        {"d_min", opt.d_min},
                                                        {"d_max", opt.d_max},
                                                        {"metric", opt.metric}},
                                                   Json{{"rows", std::move(row_arr)}}));
                return kExitOk;
            }
            if (opt.format != "csv") return usage_error(err, "unknown format: " + opt.format);
            sink << "d,ratio,ratio_exact\n";
            for (const auto& [d, ratio] : rows)
                sink << d << "," << fmt_decimal(ratio) << "," << ratio.str() << "\n";
            return kExitOk;
        });
    });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opt.trials < 0) return usage_error(err, "--trials must be >= 0");
        std::vector<Rational> alphas, betas;
        for (const std::string& s : opt.alpha_grid)
            alphas.push_back(parse_rational_arg(s, "--alpha-grid"));
        for (const std::string& s : opt.beta_grid)
            betas.push_back(parse_rational_arg(s, "--beta-grid"));
        if (alphas.empty()) alphas = {Rational(1), Rational(2), Rational(3), Rational(4)};
        if (betas.empty())
            betas = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};
        for (const Rational& a : alphas)
            if (!(a > Rational(0))) return usage_error(err, "--alpha-grid entries must be > 0");
        for (const Rational& b : betas)
            if (!(b > Rational(0))) return usage_error(err, "--beta-grid entries must be > 0");

        // Nondegenerate sweeps need n >= 3 (k = d = 1 replication aside, which
        // the n_max = 2 contract treats as empty).
        std::vector<VerificationReport> reports;
        std::vector<Json> skipped;
        bool all_pass = true;
        std::uint64_t index = 0;
        for (int n = 3; n <= opt.n_max; ++n)
            for (int k = 1; k <= n - 1; ++k)
                for (int d = k; d <= n - 1; ++d) {
                    SystemParams params(n, k, d, Rational(1));
                    for (const Rational& alpha : alphas)
                        for (const Rational& beta : betas)
                            for (Mode mode : {Mode::Classical, Mode::Quantum}) {
                                OperatingPoint point(alpha, beta, mode);
                                try {
                                    VerificationReport rep =
                                        verify_bound(params, point, opt.trials,
                                                     opt.seed + index, opt.vertex_cap);
                                    all_pass = all_pass && rep.pass;
                                    reports.push_back(std::move(rep));
                                } catch (const std::invalid_argument& e) {
                                    skipped.push_back(Json{{"params", params_to_json(params)},
                                                           {"point", point_to_json(point)},
                                                           {"reason", e.what()}});
                                }
                                ++index;
                            }
                }

        std::size_t failures = 0;
        for (const VerificationReport& r : reports)
            if (!r.pass) ++failures;

        int rc = all_pass ? kExitOk : kExitCheckFailed;
        int sink_rc = with_sink(opt.output, out, err, [&](std::ostream& sink) {
            if (opt.format == "text") {
                for (const VerificationReport& r : reports) {
                    sink << "(" << r.params.n << "," << r.params.k << "," << r.params.d
                         << ") alpha=" << r.point.alpha << " beta=" << r.point.beta << " "
                         << mode_name(r.point.mode) << ": closed_form=" << r.closed_form
                         << " canonical=" << r.canonical_min_cut
                         << " random_min=" << r.min_random_cut << " "
                         << (r.pass ? "ok" : "FAIL") << "\n";
                }
                for (const Json& s : skipped)
                    sink << "skipped: " << s["reason"].get<std::string>() << "\n";
                sink << reports.size() << " configurations: " << (reports.size() - failures)
                     << " pass, " << failures << " fail, " << skipped.size() << " skipped\n";
                return kExitOk;
            }
            if (opt.format != "json") return usage_error(err, "unknown format: " + opt.format);
            Json inputs{{"n_max", opt.n_max}, {"trials", opt.trials}, {"seed", opt.seed},
                        {"vertex_cap", opt.vertex_cap}};
            Json alpha_arr = Json::array(), beta_arr = Json::array();
            for (const Rational& a : alphas) alpha_arr.push_back(rational_to_json(a));
            for (const Rational& b : betas) beta_arr.push_back(rational_to_json(b));
            inputs["alpha_grid"] = std::move(alpha_arr);
            inputs["beta_grid"] = std::move(beta_arr);
            Json conf_arr = Json::array();
            for (const VerificationReport& r : reports)
                conf_arr.push_back(verify_report_to_json(r));
            emit_json(sink,
                      make_output_record("verify", std::move(inputs),
                                         Json{{"configurations", std::move(conf_arr)},
                                              {"skipped", skipped},
                                              {"checked", reports.size()},
                                              {"failures", failures},
                                              {"all_pass", all_pass}}));
            return kExitOk;
        });
        return sink_rc == kExitOk ? rc : sink_rc;
    });
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream file(opt.config_path);
        if (!file) return usage_error(err, "cannot open config file: " + opt.config_path);
        Json j;
        try {
            j = Json::parse(file);
        } catch (const Json::parse_error& e) {
            return usage_error(err, opt.config_path + ": " + e.what());
        }
        SimulationConfig config = config_from_json(j);
        SimulationLog log = run_script(config.params, config.point, config.script, opt.seed);
        int rc = log.all_retrievals_passed ? kExitOk : kExitCheckFailed;
        int sink_rc = with_sink(opt.output, out, err, [&](std::ostream& sink) {
            emit_json(sink, log_to_json(log));
            return kExitOk;
        });
        return sink_rc == kExitOk ? rc : sink_rc;
    });
}

int cmd_sdc(const SdcOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opt.q < 2) return usage_error(err, "--q must be >= 2");
        bool receiver;
        if (opt.mode == "receiver") receiver = true;
        else if (opt.mode == "two-sender") receiver = false;
        else return usage_error(err, "unknown mode: " + opt.mode);

        struct Row {
            int a1, b1, a2, b2, s, t;
            double probability;
        };
        std::vector<Row> rows;
        bool deviated = false;
        auto record = [&](int a1, int b1, int a2, int b2, const BellOutcome& o) {
            rows.push_back({a1, b1, a2, b2, o.s, o.t, o.probability});
            if (std::abs(o.probability - 1.0) > 1e-9) deviated = true;
        };
        if (receiver) {
            for (int a = 0; a < opt.q; ++a)
                for (int b = 0; b < opt.q; ++b)
                    record(a, b, 0, 0, superdense_receiver(opt.q, {a, b}));
        } else {
            for (int a1 = 0; a1 < opt.q; ++a1)
                for (int b1 = 0; b1 < opt.q; ++b1)
                    for (int a2 = 0; a2 < opt.q; ++a2)
                        for (int b2 = 0; b2 < opt.q; ++b2)
                            record(a1, b1, a2, b2,
                                   two_sender_sumbox(opt.q, {a1, b1}, {a2, b2}));
        }

        int rc = deviated ? kExitCheckFailed : kExitOk;
        if (deviated) err << "error: an outcome probability deviates from 1 by more than 1e-9\n";
        int sink_rc = with_sink(opt.output, out, err, [&](std::ostream& sink) {
            if (opt.format == "json") {
                Json row_arr = Json::array();
                for (const Row& r : rows)
                    row_arr.push_back(Json{{"a1", r.a1}, {"b1", r.b1}, {"a2", r.a2},
                                           {"b2", r.b2}, {"s", r.s}, {"t", r.t},
                                           {"probability", r.probability}});
                emit_json(sink, make_output_record(
                                    "sdc", Json{{"q", opt.q}, {"mode", opt.mode}},
                                    Json{{"rows", std::move(row_arr)},
                                         {"all_deterministic", !deviated}}));
                return kExitOk;
            }
            if (opt.format != "csv") return usage_error(err, "unknown format: " + opt.format);
            sink << "a1,b1,a2,b2,s,t,probability\n";
            for (const Row& r : rows)
                sink << r.a1 << "," << r.b1 << "," << r.a2 << "," << r.b2 << "," << r.s << ","
                     << r.t << "," << fmt_decimal(r.probability) << "\n";
            return kExitOk;
        });
        return sink_rc == kExitOk ? rc : sink_rc;
    });
}

}  // namespace qregen::cli
