#ifndef RATWAVE_TOOLS_CLI_HPP
#define RATWAVE_TOOLS_CLI_HPP

// Command dispatch for the `ratwave` executable. Kept in a header so the
// test suites can drive commands in-process.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratwave/ratwave.hpp"

namespace ratwave::cli {

using io::json;

enum ExitCode : int { ok = 0, malformed_input = 1, verification_failed = 2, internal_error = 3 };

enum class OutputFormat { json, csv, plain };

struct GlobalOptions {
    std::string field;
    std::string output = "json";
    double tolerance = kDefaultTolerance;
    std::uint64_t seed = 0;
};

/// Thrown by commands whose check did not pass; the report has already been
/// written to the output stream.
struct VerificationFailed {
    std::string message;
};

namespace detail {

inline OutputFormat output_format(const GlobalOptions& g) {
    if (g.output == "json") return OutputFormat::json;
    if (g.output == "csv") return OutputFormat::csv;
    if (g.output == "plain") return OutputFormat::plain;
    throw ParseError("--output must be json, csv or plain");
}

inline std::optional<io::Field> forced_field(const GlobalOptions& g) {
    if (g.field.empty()) return std::nullopt;
    return io::parse_field(g.field);
}

inline json read_json(const std::string& path, std::istream& in) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    // Accept JSON-lines input by taking the first non-empty line when the
    // whole text is not a single document.
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos) return json::parse(line);
        throw;
    }
}

template <Scalar T>
void print_taps_plain(std::ostream& out, const WaveletBank2<T>& bank) {
    out << "genus " << bank.genus() << " (" << io::to_string(io::field_of<T>()) << ")\n";
    for (std::size_t k = 0; k < bank.taps(); ++k)
        out << "k=" << k << "  h0=" << scalar_traits<T>::to_string(bank.h0()[k]) << "  ("
            << decimal_string(bank.h0()[k]) << ")  h1=" << scalar_traits<T>::to_string(bank.h1()[k]) << '\n';
}

template <Scalar T>
void emit_bank(std::ostream& out, const WaveletBank2<T>& bank, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::json: out << io::to_json(bank).dump() << '\n'; break;
    case OutputFormat::csv: out << io::bank_csv(bank, bank.genus() - 1); break;
    case OutputFormat::plain: print_taps_plain(out, bank); break;
    }
}

inline void emit_result(std::ostream& out, const RationalizationResult& r, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::json: out << io::to_json(r).dump() << '\n'; break;
    case OutputFormat::csv: out << io::bank_csv(r.bank, r.bank.genus() - 1); break;
    case OutputFormat::plain:
        out << "phi_q:";
        for (const auto& g : r.phi_q.gammas) out << ' ' << g;
        out << "\nmax tap denominator: " << r.max_tap_denominator << "\ninput distance: " << r.input_distance
            << '\n';
        print_taps_plain(out, r.bank);
        for (std::size_t p = 1; p < r.moment_report.values.size(); ++p)
            out << "M" << p << " = " << r.moment_report.values[p] << " (" << decimal_string(r.moment_report.values[p])
                << ")\n";
        break;
    }
}

// verify ---------------------------------------------------------------------

template <Scalar T>
bool verify_bank(std::ostream& out, const WaveletBank2<T>& bank, const GlobalOptions& g, OutputFormat fmt) {
    const auto q = check_quadratic(bank);
    const auto l = check_linear(bank);
    const bool pass = q.passes(g.tolerance) && l.passes(g.tolerance);
    json report{{"field", io::to_string(io::field_of<T>())},
                {"genus", bank.genus()},
                {"quadratic",
                 {{"shift_orthogonality", io::to_json(q.shift)},
                  {"polyphase", io::to_json(q.polyphase)},
                  {"modulation", io::to_json(q.modulation)}}},
                {"linear", {{"h0_at_one", io::to_json(l.h0_at_one)}, {"h1_at_one", io::to_json(l.h1_at_one)}}},
                {"exact", is_exact_v<T>},
                {"tolerance", g.tolerance},
                {"pass", pass}};
    if (fmt == OutputFormat::json) {
        out << report.dump() << '\n';
    } else if (fmt == OutputFormat::csv) {
        out << "check,value\n"
            << "shift_orthogonality," << scalar_traits<T>::to_string(q.shift) << '\n'
            << "polyphase," << scalar_traits<T>::to_string(q.polyphase) << '\n'
            << "modulation," << scalar_traits<T>::to_string(q.modulation) << '\n'
            << "h0_at_one," << scalar_traits<T>::to_string(l.h0_at_one) << '\n'
            << "h1_at_one," << scalar_traits<T>::to_string(l.h1_at_one) << '\n'
            << "pass," << (pass ? "true" : "false") << '\n';
    } else {
        out << "quadratic residual (shift / polyphase / modulation): " << scalar_traits<T>::to_string(q.shift)
            << " / " << scalar_traits<T>::to_string(q.polyphase) << " / "
            << scalar_traits<T>::to_string(q.modulation) << '\n'
            << "linear: h0(1) = " << scalar_traits<T>::to_string(l.h0_at_one)
            << ", h1(1) = " << scalar_traits<T>::to_string(l.h1_at_one) << '\n'
            << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass;
}

// moments --------------------------------------------------------------------

template <Scalar T>
void emit_moments(std::ostream& out, const WaveletBank2<T>& bank, int pmax, OutputFormat fmt) {
    const auto m = moments(bank, pmax);
    if (fmt == OutputFormat::json) {
        json decimals = json::array();
        for (const auto& v : m.values) decimals.push_back(decimal_string(v));
        out << json{{"field", io::to_string(io::field_of<T>())},
                    {"pmax", pmax},
                    {"moments", io::scalars_to_json(m.values)},
                    {"decimal", decimals}}
                   .dump()
            << '\n';
        return;
    }
    if (fmt == OutputFormat::csv) out << "p,M_p,decimal\n";
    for (std::size_t p = 0; p < m.values.size(); ++p) {
        if (fmt == OutputFormat::csv)
            out << p << ',' << scalar_traits<T>::to_string(m.values[p]) << ',' << decimal_string(m.values[p]) << '\n';
        else
            out << "M" << p << " = " << scalar_traits<T>::to_string(m.values[p]) << " ("
                << decimal_string(m.values[p]) << ")\n";
    }
}

// pr-test --------------------------------------------------------------------

/// Uniform integer in [-bound, bound] from a fixed 64-bit generator, with no
/// dependence on the standard library's distribution implementations.
inline long draw(std::mt19937_64& rng, long bound) {
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    return static_cast<long>(rng() % span) - bound;
}

template <Scalar T>
bool pr_test(std::ostream& out, const WaveletBank2<T>& bank, long length, int trials, const GlobalOptions& g,
             OutputFormat fmt) {
    std::mt19937_64 rng(g.seed);
    T worst{};
    for (int t = 0; t < trials; ++t) {
        Signal<T> f{0, {}};
        for (long i = 0; i < length; ++i) f.samples.push_back(T(static_cast<int>(draw(rng, 1000))));
        const auto back = synthesize(analyze(bank, f));
        worst = std::max(worst, max_abs_diff(back, f));
    }
    const bool pass = residual_ok(worst, g.tolerance);
    if (fmt == OutputFormat::json) {
        out << json{{"seed", g.seed},
                    {"length", length},
                    {"trials", trials},
                    {"field", io::to_string(io::field_of<T>())},
                    {"max_error", io::to_json(worst)},
                    {"pass", pass}}
                   .dump()
            << '\n';
    } else if (fmt == OutputFormat::csv) {
        out << "seed,length,trials,max_error,pass\n"
            << g.seed << ',' << length << ',' << trials << ',' << scalar_traits<T>::to_string(worst) << ','
            << (pass ? "true" : "false") << '\n';
    } else {
        out << "# seed " << g.seed << "\nreconstruction error over " << trials << " signal(s) of length " << length
            << ": " << scalar_traits<T>::to_string(worst) << '\n'
            << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass;
}

// tables ---------------------------------------------------------------------

struct TableColumnOutcome {
    RationalizationResult result;
    bool matches_reference = false;
};

inline std::vector<TableColumnOutcome> reproduce_table(const reference::CoefficientTable& table) {
    const auto bank = daubechies::generate(table.genus);
    std::vector<TableColumnOutcome> out;
    for (const auto& col : table.columns) {
        TableColumnOutcome o{rationalize_bank(bank, Dyadic{col.dyadic_bits}), true};
        for (std::size_t k = 0; k < col.taps.size(); ++k)
            o.matches_reference = o.matches_reference && o.result.bank.h0()[k] == BigRational::parse(col.taps[k]);
        out.push_back(std::move(o));
    }
    return out;
}

// Float moments that vanish in theory come out near 1e-15.
inline std::string vanishing_moment(double x) { return std::fabs(x) < 1e-9 ? "0.0" : decimal_string(x, 3); }

inline bool emit_tables(std::ostream& out, OutputFormat fmt) {
    bool all_match = true;
    json doc = json::array();
    int index = 0;
    for (const auto* table : reference::all_tables()) {
        ++index;
        const auto bank = daubechies::generate(table->genus);
        const auto cols = reproduce_table(*table);
        const std::size_t taps = bank.taps();
        const int pmax = table->genus - 1;
        const auto dm = moments(bank, pmax);

        if (fmt == OutputFormat::json) {
            json columns = json::array();
            for (std::size_t c = 0; c < cols.size(); ++c) {
                json col = io::to_json(cols[c].result);
                col["strategy"] = "dyadic:" + std::to_string(table->columns[c].dyadic_bits);
                col["matches_reference"] = cols[c].matches_reference;
                columns.push_back(std::move(col));
            }
            doc.push_back({{"table", index},
                           {"genus", table->genus},
                           {"daubechies", io::scalars_to_json(bank.h0())},
                           {"columns", columns}});
        } else if (fmt == OutputFormat::csv) {
            out << "table,row,daubechies";
            for (const auto& c : table->columns)
                out << ",dyadic" << c.dyadic_bits << ",dyadic" << c.dyadic_bits << "_decimal";
            out << '\n';
            for (std::size_t k = 0; k < taps; ++k) {
                out << index << ",k=" << k << ',' << decimal_string(bank.h0()[k]);
                for (const auto& c : cols)
                    out << ',' << c.result.bank.h0()[k] << ',' << decimal_string(c.result.bank.h0()[k], 5);
                out << '\n';
            }
            for (int p = 1; p <= pmax; ++p) {
                out << index << ",M" << p << ',' << vanishing_moment(dm[static_cast<std::size_t>(p)]);
                for (const auto& c : cols)
                    out << ',' << c.result.moment_report[static_cast<std::size_t>(p)] << ','
                        << decimal_string(c.result.moment_report[static_cast<std::size_t>(p)], 3);
                out << '\n';
            }
        } else {
            out << "Table " << index << ". N=" << table->genus << '\n';
            for (std::size_t k = 0; k < taps; ++k) {
                out << "k=" << k << "  " << std::left << std::setw(20) << decimal_string(bank.h0()[k]);
                for (const auto& c : cols) {
                    const auto& v = c.result.bank.h0()[k];
                    out << "  " << std::setw(24) << v.str() << "~ " << std::setw(9) << decimal_string(v, 5);
                }
                out << '\n';
            }
            for (int p = 1; p <= pmax; ++p) {
                out << "M" << p << "~ " << std::setw(20) << vanishing_moment(dm[static_cast<std::size_t>(p)]);
                for (const auto& c : cols)
                    out << "  " << std::setw(35) << decimal_string(c.result.moment_report[static_cast<std::size_t>(p)], 3);
                out << '\n';
            }
            out << std::right << '\n';
        }
        for (const auto& c : cols) all_match = all_match && c.matches_reference;
    }
    if (fmt == OutputFormat::json) out << doc.dump() << '\n';
    return all_match;
}

inline void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace detail

/// Runs one command line (args excludes the program name). Output goes to
/// `out`, machine-readable errors to `err`.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact-arithmetic Daubechies filter banks and their rational approximations", "ratwave"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--field", g.field, "Arithmetic for file inputs: rational or float64 (default: as declared)")
        ->check(CLI::IsMember({"rational", "float64"}));
    app.add_option("--output", g.output, "Output format: json, csv or plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--tolerance", g.tolerance, "Absolute tolerance for float64 checks");
    app.add_option("--seed", g.seed, "Seed for randomized commands");

    int gen_genus = 2;
    auto* gen = app.add_subcommand("gen", "Daubechies bank of genus N (float64)");
    gen->add_option("N", gen_genus, "Genus")->required();

    std::string file;
    auto* phi_cmd = app.add_subcommand("phi", "Parameter phi of a bank");
    phi_cmd->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();

    bool lift_pair = false;
    auto* lift = app.add_subcommand("lift", "Canonical pair and bank of a parameter phi");
    lift->add_option("PHIFILE", file, "Phi JSON ('-' for stdin)")->required();
    lift->add_flag("--pair", lift_pair, "Emit the pair (alpha, beta) instead of the bank");

    std::string strategy_text;
    auto* rat = app.add_subcommand("rationalize", "Rational bank with exact perfect reconstruction");
    rat->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();
    rat->add_option("--strategy", strategy_text, "dyadic:K | best:EPS | maxden:Q | screen:EPS,DMAX")->required();

    std::string eps_text;
    std::string dmax_text;
    std::size_t max_candidates = ScreenOptions{}.max_candidates;
    std::size_t limit = 0;
    auto* scr = app.add_subcommand("screen", "Search rational parameters near phi by tap denominator");
    scr->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();
    scr->add_option("--eps", eps_text, "Maximum distance per phi coefficient")->required();
    scr->add_option("--dmax", dmax_text, "Maximum tap denominator")->required();
    scr->add_option("--max-candidates", max_candidates, "Abort above this many candidates");
    scr->add_option("--limit", limit, "Emit at most this many results (0 = all)");

    auto* ver = app.add_subcommand("verify", "Quadratic and linear condition residuals; exit 2 on failure");
    ver->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();

    int pmax = -1;
    auto* mom = app.add_subcommand("moments", "Moments M_p of the wavelet row");
    mom->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();
    mom->add_option("--pmax", pmax, "Highest moment (default genus - 1)");

    long pr_len = 128;
    int pr_trials = 1;
    auto* pr = app.add_subcommand("pr-test", "Perfect-reconstruction check on random integer signals");
    pr->add_option("BANKFILE", file, "Bank JSON ('-' for stdin)")->required();
    pr->add_option("--len", pr_len, "Signal length")->check(CLI::PositiveNumber);
    pr->add_option("--trials", pr_trials, "Number of signals")->check(CLI::PositiveNumber);

    auto* tables = app.add_subcommand("tables", "Reproduce the genus-2 and genus-3 reference tables");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        detail::emit_error(err, "UsageError", e.what());
        return malformed_input;
    }

    try {
        const auto fmt = detail::output_format(g);
        const auto force = detail::forced_field(g);
        auto with_bank = [&](auto&& fn) {
            const auto bank = io::load_bank(detail::read_json(file, in), force);
            return std::visit(fn, bank);
        };

        if (gen->parsed()) {
            const auto bank = daubechies::generate(gen_genus);
            if (force == io::Field::rational) detail::emit_bank(out, convert_bank<BigRational>(bank), fmt);
            else detail::emit_bank(out, bank, fmt);
        } else if (phi_cmd->parsed()) {
            with_bank([&](const auto& bank) {
                const auto phi = prod(to_param(bank, g.tolerance), bank.genus() - 1);
                if (fmt == OutputFormat::json) {
                    out << io::to_json(phi).dump() << '\n';
                } else {
                    for (int k = 1; k <= phi.n; ++k)
                        out << (fmt == OutputFormat::csv ? "" : "gamma_") << k << (fmt == OutputFormat::csv ? "," : " = ")
                            << scalar_traits<std::decay_t<decltype(phi.gamma(k))>>::to_string(phi.gamma(k)) << '\n';
                }
            });
        } else if (lift->parsed()) {
            const auto doc = detail::read_json(file, in);
            const auto declared = io::detect_field(doc, {"gammas"});
            auto emit = [&](const auto& phi) {
                const auto pair = coprod(phi);
                if (lift_pair) {
                    out << io::to_json(pair).dump() << '\n';
                    return;
                }
                detail::emit_bank(out, from_param(pair, phi.n + 1), fmt);
            };
            const auto field = force.value_or(declared);
            if (field == io::Field::rational) {
                if (declared == io::Field::rational) emit(io::phi_from_json<BigRational>(doc));
                else emit(convert_phi<BigRational>(io::phi_from_json<double>(doc)));
            } else {
                if (declared == io::Field::float64) emit(io::phi_from_json<double>(doc));
                else emit(convert_phi<double>(io::phi_from_json<BigRational>(doc)));
            }
        } else if (rat->parsed()) {
            const auto strategy = parse_strategy(strategy_text);
            with_bank([&](const auto& bank) {
                detail::emit_result(out, rationalize_bank(bank, strategy, {}, g.tolerance), fmt);
            });
        } else if (scr->parsed()) {
            const auto eps = BigRational::parse(eps_text);
            const auto dmax = BigRational::parse(dmax_text);
            if (!dmax.is_integer()) throw ParseError("--dmax must be an integer");
            ScreenOptions opts;
            opts.max_candidates = max_candidates;
            with_bank([&](const auto& bank) {
                const auto results = screen(bank, eps, dmax.numerator(), opts, g.tolerance);
                std::size_t emitted = 0;
                if (fmt == OutputFormat::csv) out << "rank,phi_q,max_tap_denominator,moment_magnitude,input_distance\n";
                for (const auto& r : results) {
                    if (limit > 0 && emitted == limit) break;
                    ++emitted;
                    if (fmt == OutputFormat::csv) {
                        out << emitted << ',';
                        for (std::size_t i = 0; i < r.phi_q.gammas.size(); ++i)
                            out << (i ? " " : "") << r.phi_q.gammas[i];
                        out << ',' << r.max_tap_denominator << ',' << decimal_string(r.moment_magnitude()) << ','
                            << decimal_string(r.input_distance) << '\n';
                    } else {
                        detail::emit_result(out, r, fmt);
                    }
                }
            });
        } else if (ver->parsed()) {
            const bool pass = with_bank([&](const auto& bank) { return detail::verify_bank(out, bank, g, fmt); });
            if (!pass) return verification_failed;
        } else if (mom->parsed()) {
            with_bank([&](const auto& bank) {
                detail::emit_moments(out, bank, pmax < 0 ? bank.genus() - 1 : pmax, fmt);
            });
        } else if (pr->parsed()) {
            const bool pass = with_bank(
                [&](const auto& bank) { return detail::pr_test(out, bank, pr_len, pr_trials, g, fmt); });
            if (!pass) return verification_failed;
        } else if (tables->parsed()) {
            if (!detail::emit_tables(out, fmt)) {
                detail::emit_error(err, "ReferenceMismatch", "a reproduced column differs from the reference taps");
                return verification_failed;
            }
        }
        return ok;
    } catch (const ResidualError& e) {
        detail::emit_error(err, e.kind(), e.what());
        return verification_failed;
    } catch (const RootFindingFailure& e) {
        detail::emit_error(err, e.kind(), e.what());
        return internal_error;
    } catch (const SingularSystem& e) {
        detail::emit_error(err, e.kind(), e.what());
        return internal_error;
    } catch (const Error& e) {
        detail::emit_error(err, e.kind(), e.what());
        return malformed_input;
    } catch (const json::exception& e) {
        detail::emit_error(err, "ParseError", e.what());
        return malformed_input;
    } catch (const std::exception& e) {
        detail::emit_error(err, "InternalError", e.what());
        return internal_error;
    }
}

} // namespace ratwave::cli

#endif // RATWAVE_TOOLS_CLI_HPP
