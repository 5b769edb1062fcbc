// parityrep: synthesize parity-counting linear representations and compute
// their growth statistics. Commands: synth, count, exponents, lyapunov,
// identities, report.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "parityrep/automaton.hpp"
#include "parityrep/catalog.hpp"
#include "parityrep/errors.hpp"
#include "parityrep/gf2poly.hpp"
#include "parityrep/lyapunov.hpp"
#include "parityrep/spectral.hpp"
#include "parityrep/wynn.hpp"

namespace {

using nlohmann::json;
using namespace parityrep;

constexpr int kExitValidation = 1;
constexpr int kExitInapplicable = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 64;

int env_threads() {
    if (const char* raw = std::getenv("PARITYREP_THREADS")) {
        const int n = std::atoi(raw);
        if (n > 0) return n;
    }
    return 0;
}

// ------------------------------------------------------------ spec input ---

struct SpecChoice {
    std::string preset_name;
    std::string poly;
    bool order2 = false;
    std::string q1, q2, p0, p1;
    long ell = 0;

    bool provided() const {
        return !preset_name.empty() || !poly.empty() || order2;
    }

    json to_json() const {
        json j;
        if (!preset_name.empty()) j["preset"] = preset_name;
        if (!poly.empty()) j["poly"] = poly;
        if (order2) {
            j["order2"] = true;
            j["q1"] = q1;
            j["q2"] = q2;
            j["p0"] = p0;
            j["p1"] = p1;
            j["ell"] = ell;
        }
        return j;
    }
};

void add_spec_options(CLI::App* cmd, SpecChoice& s) {
    cmd->add_option("--preset", s.preset_name, "named preset");
    cmd->add_option("--poly", s.poly,
                    "order-1 multiplier coefficients, constant term first");
    cmd->add_flag("--order2", s.order2, "two-term recurrence");
    cmd->add_option("--q1", s.q1, "multiplier of p(n-1)");
    cmd->add_option("--q2", s.q2, "multiplier of p(n-2)");
    cmd->add_option("--p0", s.p0, "row 0");
    cmd->add_option("--p1", s.p1, "row 1");
    cmd->add_option("--ell", s.ell, "window width");
}

struct Resolved {
    bool is_preset = false;
    Preset preset;
    RecurrenceSpec spec;
    Automaton automaton;
};

Resolved resolve(const SpecChoice& s) {
    Resolved r;
    if (!s.preset_name.empty()) {
        r.is_preset = true;
        r.preset = preset(s.preset_name);
        r.spec = r.preset.spec;
        r.automaton = preset_automaton(r.preset);
    } else if (s.order2) {
        if (s.ell <= 0)
            throw ValidationError("--order2 requires an explicit --ell");
        r.spec = RecurrenceSpec::order2(ParityPoly::parse_coeff_list(s.q1),
                                        ParityPoly::parse_coeff_list(s.q2),
                                        ParityPoly::parse_coeff_list(s.p0),
                                        ParityPoly::parse_coeff_list(s.p1),
                                        s.ell);
        r.automaton = build(r.spec);
    } else {
        r.spec = RecurrenceSpec::order1(ParityPoly::parse_coeff_list(s.poly));
        r.automaton = build(r.spec);
    }
    return r;
}

json base_config(const std::string& command, const SpecChoice& s) {
    json config = s.to_json();
    config["command"] = command;
    return config;
}

void emit(const json& payload, const std::string& format) {
    if (format == "text")
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << payload.dump() << "\n";
}

// --------------------------------------------------------------- commands ---

struct SynthArgs {
    SpecChoice spec;
    bool check = false;
    std::uint64_t n_max = 1024;
    std::string format = "json";
};

int cmd_synth(const SynthArgs& args) {
    Resolved r = resolve(args.spec);
    json config = base_config("synth", args.spec);
    config["check"] = args.check;
    config["n_max"] = args.n_max;
    json out{{"schema", 1}, {"config", config}, {"automaton", to_json(r.automaton)}};
    if (args.check) {
        const ValidationReport rep = validate(r.automaton, r.spec, args.n_max);
        out["check"] = {{"checked", rep.checked}, {"ok", rep.passed}};
        if (!rep.passed) {
            std::cerr << "oracle mismatch at n=" << rep.first_mismatch << "\n";
            return kExitValidation;
        }
    }
    emit(out, args.format);
    return 0;
}

struct CountArgs {
    SpecChoice spec;
    std::vector<std::uint64_t> ns;
    std::vector<std::uint64_t> range;
    bool oracle = false;
    std::string format = "json";
};

int cmd_count(const CountArgs& args) {
    Resolved r = resolve(args.spec);
    std::vector<std::uint64_t> ns = args.ns;
    if (!args.range.empty()) {
        if (args.range.size() != 2 || args.range[0] > args.range[1])
            throw ValidationError("--range needs a <= b");
        for (std::uint64_t n = args.range[0]; n <= args.range[1]; ++n)
            ns.push_back(n);
    }
    if (ns.empty()) throw ValidationError("count needs n arguments or --range");

    RowCache cache;
    json values = json::array();
    for (std::uint64_t n : ns) {
        const mpz_class count = evaluate_big(r.automaton, mpz_class(static_cast<unsigned long>(n)));
        if (args.oracle) {
            const long expect = odd_count(r.spec, n, &cache);
            if (count != expect) {
                std::cerr << "oracle mismatch at n=" << n << ": matrix "
                          << count.get_str() << ", oracle " << expect << "\n";
                return kExitValidation;
            }
        }
        json entry{{"n", n}};
        if (count.fits_ulong_p())
            entry["count"] = static_cast<std::uint64_t>(count.get_ui());
        else
            entry["count"] = count.get_str();
        values.push_back(entry);
    }

    if (args.format == "json") {
        json config = base_config("count", args.spec);
        config["oracle"] = args.oracle;
        emit({{"schema", 1}, {"config", config}, {"values", values}}, "json");
    } else {
        const char sep = args.format == "tsv" ? '\t' : ' ';
        for (const auto& entry : values)
            std::cout << entry["n"] << sep
                      << (entry["count"].is_string()
                              ? entry["count"].get<std::string>()
                              : std::to_string(entry["count"].get<std::uint64_t>()))
                      << "\n";
    }
    return 0;
}

struct ExponentArgs {
    SpecChoice spec;
    std::string format = "json";
};

json min_poly_json(const MinPolyCheck& check, const std::vector<long>& coeffs) {
    return json{{"coefficients", coeffs},
                {"divides_char_poly", check.divides_char_poly},
                {"root_matches", check.root_matches},
                {"largest_root", check.largest_root_decimal}};
}

int cmd_exponents(const ExponentArgs& args) {
    Resolved r = resolve(args.spec);
    const Automaton& a = r.automaton;
    const GrowthExponents growth = growth_exponents(a);
    json out{{"schema", 1}, {"config", base_config("exponents", args.spec)}};
    out["m"] = a.m;
    out["average"] = {{"exponent", growth.average},
                      {"exponent_decimal", growth.average_decimal},
                      {"perron_decimal", growth.perron_decimal},
                      {"char_poly", growth.char_poly}};
    if (a.m <= 16) {
        const VarianceExponent var = variance_exponent(a);
        out["variance"] = {{"exponent", var.exponent},
                           {"exponent_decimal", var.exponent_decimal},
                           {"halved_perron_decimal", var.halved_decimal}};
        if (r.is_preset && !r.preset.constants.variance_min_poly.empty()) {
            const IntPolynomial stated = IntPolynomial::from_descending(
                r.preset.constants.variance_min_poly);
            const MinPolyCheck check = verify_min_poly(
                stated.halve_variable(), kronecker_sum_matrix(a), var.perron);
            out["variance"]["min_poly"] =
                min_poly_json(check, r.preset.constants.variance_min_poly);
        }
    } else {
        out["variance"] = {{"skipped", "state count too large"}};
    }
    if (r.is_preset) {
        json reference;
        if (!r.preset.constants.average_decimal.empty())
            reference["average_decimal"] = r.preset.constants.average_decimal;
        if (!r.preset.constants.growth_min_poly.empty()) {
            const IntPolynomial stated = IntPolynomial::from_descending(
                r.preset.constants.growth_min_poly);
            const MinPolyCheck check =
                verify_min_poly(stated, digit_sum_matrix(a), growth.perron);
            out["average"]["min_poly"] =
                min_poly_json(check, r.preset.constants.growth_min_poly);
        }
        if (!reference.is_null()) out["reference"] = reference;
    }
    if (args.format == "text") {
        std::cout << "m = " << a.m << "\n"
                  << "average growth exponent = " << growth.average_decimal
                  << "\n";
        if (out.contains("variance") && out["variance"].contains("exponent_decimal"))
            std::cout << "variance exponent = "
                      << out["variance"]["exponent_decimal"].get<std::string>()
                      << "\n";
        std::cout << "char poly (D0+D1) = " << growth.char_poly << "\n";
    } else {
        emit(out, args.format);
    }
    return 0;
}

struct LyapunovArgs {
    SpecChoice spec;
    std::string method = "series";
    int k_max = 0;
    int samples = 1000;
    int steps = 10000;
    std::uint64_t seed = 1;
    int bits = 18;
    bool strict = true;
    bool trace = false;
    std::string format = "json";
};

int cmd_lyapunov(const LyapunovArgs& args) {
    Resolved r = resolve(args.spec);
    const Automaton& a = r.automaton;
    json config = base_config("lyapunov", args.spec);
    config["method"] = args.method;
    config["threads"] = env_threads();
    json out{{"schema", 1}};
    if (args.method == "series") {
        const CoordinateChange cc = find_coordinate_change(a);
        SeriesOptions opt;
        opt.k_max = args.k_max;
        opt.strict = args.strict;
        opt.threads = env_threads();
        const SeriesResult res = moshe_series(cc, opt);
        config["k_max"] = res.k_max;
        config["strict"] = args.strict;
        if (args.trace || args.format == "tsv") {
            const std::vector<double> accel = acceleration_trace(res.partial_sums);
            std::cout << "k\tpartial_sum\taccelerated\n";
            for (std::size_t i = 0; i < res.partial_sums.size(); ++i)
                std::cout << i + 1 << "\t"
                          << static_cast<double>(res.partial_sums[i]) << "\t"
                          << accel[i] << "\n";
            return 0;
        }
        out["config"] = config;
        out["method"] = "series";
        out["q"] = res.q;
        out["lyapunov"] = res.lyapunov;
        out["lyapunov_log2"] = res.lyapunov_log2;
        out["partial_sum_last"] = static_cast<double>(res.partial_sums.back());
        out["accelerated_column"] = res.accel.column;
        out["skipped_words"] = res.skipped;
    } else if (args.method == "mc") {
        const MonteCarloResult res =
            monte_carlo(a, args.samples, args.steps, args.seed, env_threads());
        config["samples"] = res.samples;
        config["steps"] = res.steps;
        config["burn_in"] = res.burn_in;
        config["seed"] = res.seed;
        out["config"] = config;
        out["method"] = "mc";
        out["lyapunov"] = res.mean;
        out["std_error"] = res.std_error;
        out["lyapunov_log2"] = res.mean_log2;
        out["std_error_log2"] = res.std_error_log2;
        out["generator"] = res.generator;
    } else if (args.method == "mean") {
        const EmpiricalMean res = empirical_mean(a, args.bits);
        config["bits"] = res.bits;
        out["config"] = config;
        out["method"] = "mean";
        out["lyapunov"] = res.ln_value;
        out["lyapunov_log2"] = res.log2_value;
    } else {
        throw ValidationError("unknown method '" + args.method + "'");
    }
    if (r.is_preset && r.preset.constants.lyapunov > 0)
        out["reference"] = r.preset.constants.lyapunov;
    emit(out, args.format);
    return 0;
}

// ------------------------------------------------------------- identities ---

std::vector<std::string> suites_for(const std::string& name) {
    std::vector<std::string> suites;
    if (name == "trinomial" || name == "quadrinomial" || name == "trinomial2" ||
        name == "stern")
        suites.push_back("recursion");
    if (name == "binomial" || name == "trinomial" || name == "rhombus" ||
        name == "stern")
        suites.push_back("extreme");
    if (name == "binomial" || name == "quadrinomial")
        suites.push_back("digit-sum");
    if (name == "binomial" || name == "stern" || name == "trinomial")
        suites.push_back("dispersion");
    return suites;
}

struct IdentityArgs {
    std::vector<std::string> presets;
    bool all = false;
    std::uint64_t n_max = 4096;
    int k_max = 30;
    int dispersion_bits = 20;
    std::string format = "json";
};

std::vector<SuiteReport> run_suites(const IdentityArgs& args) {
    std::vector<std::string> names = args.presets;
    if (args.all) names = preset_names();
    if (names.empty())
        throw ValidationError("identities needs --preset entries or --all");
    std::vector<SuiteReport> reports;
    bool digitsum_done = false;
    for (const std::string& name : names) {
        const Preset p = preset(name);
        for (const std::string& suite : suites_for(name)) {
            if (suite == "recursion")
                reports.push_back(run_recursion_suite(p, args.n_max));
            else if (suite == "extreme")
                reports.push_back(run_extreme_suite(p, args.k_max));
            else if (suite == "digit-sum" && !digitsum_done) {
                reports.push_back(run_digitsum_suite());
                digitsum_done = true;
            } else if (suite == "dispersion")
                reports.push_back(run_dispersion_suite(p, args.dispersion_bits));
        }
    }
    return reports;
}

int cmd_identities(const IdentityArgs& args) {
    const std::vector<SuiteReport> reports = run_suites(args);
    bool all_passed = true;
    json rows = json::array();
    for (const SuiteReport& r : reports) {
        all_passed = all_passed && r.passed;
        rows.push_back(to_json(r));
    }
    if (args.format == "json") {
        json config{{"command", "identities"},
                    {"n_max", args.n_max},
                    {"k_max", args.k_max},
                    {"dispersion_bits", args.dispersion_bits}};
        emit({{"schema", 1}, {"config", config}, {"suites", rows}}, "json");
    } else {
        for (const SuiteReport& r : reports) {
            std::cout << r.preset << " " << r.suite << ": "
                      << (r.passed ? "pass" : "FAIL") << " (" << r.checks
                      << " checks)";
            if (r.metrics.contains("deviation"))
                std::cout << " deviation=" << r.metrics["deviation"].get<double>();
            for (const std::string& f : r.failures) std::cout << " [" << f << "]";
            std::cout << "\n";
        }
    }
    return all_passed ? 0 : kExitValidation;
}

// ------------------------------------------------------------------ report ---

struct ReportArgs {
    std::vector<std::string> presets;
    bool all = false;
    int samples = 1000;
    int steps = 10000;
    std::uint64_t seed = 1;
    std::string format = "text";
};

int cmd_report(const ReportArgs& args) {
    std::vector<std::string> names = args.presets;
    if (args.all) names = preset_names();
    if (names.empty())
        throw ValidationError("report needs --preset entries or --all");

    json rows = json::array();
    bool suites_ok = true;
    bool digitsum_done = false;
    for (const std::string& name : names) {
        const Preset p = preset(name);
        const Automaton a = preset_automaton(p);
        json row{{"preset", name}, {"m", a.m}};

        const GrowthExponents growth = growth_exponents(a);
        row["average"] = growth.average;
        row["average_decimal"] = growth.average_decimal;
        if (!p.constants.average_decimal.empty())
            row["average_reference"] = p.constants.average_decimal;

        const VarianceExponent var = variance_exponent(a);
        row["variance"] = var.exponent;
        row["variance_decimal"] = var.exponent_decimal;

        try {
            const CoordinateChange cc = find_coordinate_change(a);
            SeriesOptions opt;
            opt.threads = env_threads();
            const SeriesResult res = moshe_series(cc, opt);
            row["lyapunov"] = res.lyapunov;
            row["lyapunov_method"] = "series";
        } catch (const MethodInapplicableError&) {
            const MonteCarloResult res =
                monte_carlo(a, args.samples, args.steps, args.seed, env_threads());
            row["lyapunov"] = res.mean;
            row["lyapunov_method"] = "monte-carlo";
            row["lyapunov_std_error"] = res.std_error;
        }
        if (p.constants.lyapunov > 0)
            row["lyapunov_reference"] = p.constants.lyapunov;

        json suite_rows = json::array();
        bool preset_suites_ok = true;
        for (const std::string& suite : suites_for(name)) {
            SuiteReport report;
            if (suite == "recursion")
                report = run_recursion_suite(p);
            else if (suite == "extreme")
                report = run_extreme_suite(p);
            else if (suite == "digit-sum") {
                if (digitsum_done) continue;
                report = run_digitsum_suite();
                digitsum_done = true;
            } else
                report = run_dispersion_suite(p);
            preset_suites_ok = preset_suites_ok && report.passed;
            suite_rows.push_back(to_json(report));
        }
        row["suites"] = suite_rows;
        row["suites_passed"] = preset_suites_ok;
        suites_ok = suites_ok && preset_suites_ok;
        rows.push_back(row);
    }

    if (args.format == "json") {
        json config{{"command", "report"},
                    {"samples", args.samples},
                    {"steps", args.steps},
                    {"seed", args.seed}};
        emit({{"schema", 1}, {"config", config}, {"rows", rows}}, "json");
    } else {
        std::printf("%-13s %3s  %-12s %-12s %-12s %-12s %s\n", "preset", "m",
                    "average", "lyapunov", "method", "variance", "suites");
        for (const auto& row : rows) {
            std::string suites = "-";
            if (!row["suites"].empty())
                suites = row["suites_passed"].get<bool>() ? "pass" : "FAIL";
            std::printf("%-13s %3d  %-12.9f %-12.9f %-12s %-12.9f %s\n",
                        row["preset"].get<std::string>().c_str(),
                        row["m"].get<int>(), row["average"].get<double>(),
                        row["lyapunov"].get<double>(),
                        row["lyapunov_method"].get<std::string>().c_str(),
                        row["variance"].get<double>(), suites.c_str());
        }
    }
    return suites_ok ? 0 : kExitValidation;
}

template <typename Fn>
int run_guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const MethodInapplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity-count representations and growth statistics"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "emit the representation");
    add_spec_options(synth, synth_args.spec);
    synth->add_flag("--check", synth_args.check, "validate against the oracle");
    synth->add_option("--n-max", synth_args.n_max, "validation range");
    synth->add_option("--format", synth_args.format, "json or text");

    CountArgs count_args;
    CLI::App* count = app.add_subcommand("count", "evaluate counts");
    add_spec_options(count, count_args.spec);
    count->add_option("n", count_args.ns, "arguments");
    count->add_option("--range", count_args.range, "inclusive range a b")
        ->expected(2);
    count->add_flag("--oracle", count_args.oracle, "cross-check each value");
    count->add_option("--format", count_args.format, "json, tsv, or text");

    ExponentArgs exp_args;
    CLI::App* exponents =
        app.add_subcommand("exponents", "average growth and variance");
    add_spec_options(exponents, exp_args.spec);
    exponents->add_option("--format", exp_args.format, "json or text");

    LyapunovArgs lyap_args;
    CLI::App* lyapunov = app.add_subcommand("lyapunov", "typical growth");
    add_spec_options(lyapunov, lyap_args.spec);
    lyapunov->add_option("--method", lyap_args.method, "series, mc, or mean");
    lyapunov->add_option("--k-max", lyap_args.k_max, "series depth");
    lyapunov->add_option("--samples", lyap_args.samples, "mc sample count");
    lyapunov->add_option("--steps", lyap_args.steps, "mc word length");
    lyapunov->add_option("--seed", lyap_args.seed, "mc seed");
    lyapunov->add_option("--bits", lyap_args.bits, "mean method range 2^bits");
    lyapunov->add_flag("--strict,!--no-strict", lyap_args.strict,
                       "error on zero series corners");
    lyapunov->add_flag("--trace", lyap_args.trace, "emit TSV partial sums");
    lyapunov->add_option("--format", lyap_args.format, "json or tsv");

    IdentityArgs id_args;
    CLI::App* identities =
        app.add_subcommand("identities", "run the identity suites");
    identities->add_option("--preset", id_args.presets, "preset names");
    identities->add_flag("--all", id_args.all, "every preset");
    identities->add_option("--n-max", id_args.n_max, "recursion range");
    identities->add_option("--k-max", id_args.k_max, "extreme-value depth");
    identities->add_option("--dispersion-bits", id_args.dispersion_bits,
                           "dispersion scan uses 2^bits values");
    identities->add_option("--format", id_args.format, "json or text");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "consolidated table");
    report->add_option("--preset", report_args.presets, "preset names");
    report->add_flag("--all", report_args.all, "every preset");
    report->add_option("--samples", report_args.samples, "mc sample count");
    report->add_option("--steps", report_args.steps, "mc word length");
    report->add_option("--seed", report_args.seed, "mc seed");
    report->add_option("--format", report_args.format, "text or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (synth->parsed()) return run_guarded([&] { return cmd_synth(synth_args); });
    if (count->parsed()) return run_guarded([&] { return cmd_count(count_args); });
    if (exponents->parsed())
        return run_guarded([&] { return cmd_exponents(exp_args); });
    if (lyapunov->parsed())
        return run_guarded([&] { return cmd_lyapunov(lyap_args); });
    if (identities->parsed())
        return run_guarded([&] { return cmd_identities(id_args); });
    if (report->parsed())
        return run_guarded([&] { return cmd_report(report_args); });
    return kExitUsage;
}
