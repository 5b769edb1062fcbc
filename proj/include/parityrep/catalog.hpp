#pragma once

// Preset registry: the stock recurrences with their reference representations
// and constants, plus the identity suites (derived recursions, extreme-value
// subsequences, digit sums, Stern checks, dispersion scans).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "parityrep/automaton.hpp"
#include "parityrep/errors.hpp"
#include "parityrep/gf2poly.hpp"

namespace parityrep {

// ---------------------------------------------------------------------------
// Preset definitions
// ---------------------------------------------------------------------------

struct PresetConstants {
    std::string average_decimal;        // average-growth exponent, base-2 log
    double lyapunov = 0.0;              // typical-growth exponent, natural log
    std::vector<long> growth_min_poly;  // eigenvalues of D0+D1, descending
    std::vector<long> variance_min_poly;  // eigenvalues of the halved
                                          // Kronecker mixture, descending
    std::vector<std::string> oeis;
};

struct Preset {
    std::string name;
    RecurrenceSpec spec;
    bool direct = false;  // use the stated matrices instead of the builder
    std::vector<std::vector<std::uint64_t>> D0, D1;
    std::vector<std::uint64_t> w;
    std::vector<std::vector<std::uint8_t>> state_values;
    int collapse_power = 0;  // q with D0^q of rank one; 0 = none known
    PresetConstants constants;
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "binomial",     "trinomial",   "quadrinomial", "trinomial2", "h4",
        "quintinomial", "sextinomial", "septinomial",  "rhombus",    "stern"};
    return names;
}

inline Preset preset(const std::string& name) {
    Preset p;
    p.name = name;
    if (name == "binomial") {
        p.spec = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1"));
        p.D0 = {{1}};
        p.D1 = {{2}};
        p.w = {1};
        p.state_values = {{1}};
        p.collapse_power = 1;
        p.constants.average_decimal = "0.5849625007211561814537389";
        p.constants.lyapunov = std::log(2.0) / 2;
        p.constants.growth_min_poly = {1, -3};
        p.constants.variance_min_poly = {2, -5};
        p.constants.oeis = {"A001316", "A000120", "A006046", "A000788",
                            "A007318"};
    } else if (name == "trinomial") {
        p.spec = RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1"));
        p.D0 = {{1, 2}, {0, 0}};
        p.D1 = {{1, 2}, {1, 0}};
        p.w = {1, 2};
        p.state_values = {{1, 0}, {1, 1}};
        p.collapse_power = 1;
        p.constants.average_decimal = "0.6942419136306173017387902";
        p.constants.lyapunov = 0.4299474333424527201146970;
        p.constants.growth_min_poly = {1, -2, -4};
        p.constants.variance_min_poly = {1, -2, -3, 2};
        p.constants.oeis = {"A071053", "A134659", "A027907"};
    } else if (name == "quadrinomial") {
        p.spec =
            RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1,1"));
        p.D0 = {{1, 2, 0}, {0, 0, 1}, {0, 0, 0}};
        p.D1 = {{0, 0, 0}, {2, 0, 0}, {0, 1, 2}};
        p.w = {1, 2, 2};
        p.state_values = {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
        p.collapse_power = 2;
        p.constants.average_decimal = "0.5849625007211561814537389";
        p.constants.lyapunov = std::log(2.0) / 2;
        p.constants.growth_min_poly = {1, -3};
        p.constants.oeis = {"A134660", "A036555", "A008287"};
    } else if (name == "trinomial2") {
        p.spec =
            RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,0,1"));
        p.D0 = {{1, 2, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
        p.D1 = {{1, 1, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}};
        p.w = {1, 2, 3, 2};
        p.state_values = {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}};
        p.collapse_power = 2;
        p.constants.average_decimal = "0.7274509132400228143266172";
        p.constants.growth_min_poly = {1, -3, -2, 2, 4};
        p.constants.oeis = {"A134661", "A038717"};
    } else if (name == "h4") {
        p.spec =
            RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,0,0,1"));
        p.constants.lyapunov = 0.45759385431410;
        p.constants.oeis = {"A134662", "A134663"};
    } else if (name == "quintinomial") {
        p.spec =
            RecurrenceSpec::order1(ParityPoly::parse_coeff_list("1,1,1,1,1"));
        p.D0 = {{1, 1, 2, 0}, {0, 0, 0, 0}, {0, 1, 0, 2}, {0, 0, 0, 0}};
        p.D1 = {{0, 1, 2, 0}, {1, 0, 0, 0}, {1, 0, 0, 2}, {0, 1, 0, 0}};
        p.w = {1, 3, 2, 4};
        p.state_values = {{1, 0, 0, 0}, {1, 1, 1, 0}, {1, 1, 0, 0},
                          {1, 1, 1, 1}};
        p.collapse_power = 2;
        p.constants.average_decimal = "0.7896418505307685639015472";
        p.constants.growth_min_poly = {1, -1, -6, -4, -16};
        p.constants.oeis = {"A035343"};
    } else if (name == "sextinomial") {
        p.spec = RecurrenceSpec::order1(
            ParityPoly::parse_coeff_list("1,1,1,1,1,1"));
        p.D0 = {{1, 1, 2, 2, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 1, 1},
                {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}};
        p.D1 = {{0, 0, 0, 0, 0, 0}, {2, 2, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
                {0, 0, 1, 1, 2, 2}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0}};
        p.w = {1, 3, 2, 2, 4, 2};
        p.state_values = {{1, 0, 0, 0, 0}, {1, 1, 1, 0, 0}, {1, 1, 0, 0, 0},
                          {1, 0, 0, 1, 0}, {1, 1, 0, 1, 1}, {1, 0, 1, 0, 0}};
        p.collapse_power = 3;
        p.constants.average_decimal = "0.8194694621655401465959376";
        p.constants.lyapunov = 0.5344481528;
        p.constants.growth_min_poly = {1, -4, 1, -1, 8, 11, 8};
        p.constants.oeis = {"A063260"};
    } else if (name == "septinomial") {
        p.spec = RecurrenceSpec::order1(
            ParityPoly::parse_coeff_list("1,1,1,1,1,1,1"));
        p.D0 = {{1, 0, 1, 2, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 2},
                {0, 2, 1, 0, 1, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
        p.D1 = {{0, 0, 0, 2, 1, 0}, {1, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 2},
                {0, 2, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0}};
        p.w = {1, 4, 3, 2, 5, 6};
        p.state_values = {{1, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 0, 0},
                          {1, 1, 1, 0, 0, 0}, {1, 1, 0, 0, 0, 0},
                          {1, 1, 1, 1, 1, 0}, {1, 1, 1, 1, 1, 1}};
        p.collapse_power = 3;
        p.constants.average_decimal = "0.8317963967344406899938931";
        p.constants.lyapunov = 0.53765282;
        p.constants.growth_min_poly = {1, -1, -2, -28, 0, 16, 64};
        p.constants.oeis = {"A063265"};
    } else if (name == "rhombus") {
        p.spec = RecurrenceSpec::order2(
            ParityPoly::parse_coeff_list("1,1,1"),
            ParityPoly::parse_coeff_list("0,0,1"),
            ParityPoly::parse_coeff_list("1"),
            ParityPoly::parse_coeff_list("1,1,1"), 4);
        p.D0 = {{0, 1, 0, 0, 0},
                {1, 0, 2, 0, 0},
                {0, 0, 0, 0, 0},
                {0, 1, 0, 0, 1},
                {0, 0, 0, 2, 1}};
        p.D1 = {{1, 0, 2, 0, 0},
                {0, 0, 0, 2, 1},
                {1, 1, 0, 0, 0},
                {0, 0, 0, 0, 0},
                {0, 1, 0, 0, 0}};
        p.w = {1, 1, 2, 0, 0};
        p.state_values = {{1, 0, 0, 0, 1, 1, 1, 0},
                          {1, 0, 0, 0, 1, 0, 1, 0},
                          {1, 1, 0, 0, 1, 0, 0, 1},
                          {0, 0, 0, 0, 1, 1, 0, 0},
                          {0, 0, 0, 0, 1, 0, 0, 0}};
        p.constants.average_decimal = "0.8325063835804514437981667";
        p.constants.lyapunov = 0.57331379313;
        p.constants.growth_min_poly = {1, -3, -2};
        p.constants.variance_min_poly = {4, -8, -25, 22, 24, 16, 1, -2};
        p.constants.oeis = {"A059319", "A059317"};
    } else if (name == "stern") {
        p.spec = RecurrenceSpec::order2(ParityPoly::parse_coeff_list("0,1"),
                                        ParityPoly::parse_coeff_list("1"),
                                        ParityPoly::parse_coeff_list("1"),
                                        ParityPoly::parse_coeff_list("0,1"), 2);
        p.direct = true;
        p.D0 = {{1, 0}, {1, 1}};
        p.D1 = {{1, 1}, {0, 1}};
        p.w = {1, 0};
        p.constants.average_decimal = "0.5849625007211561814537389";
        p.constants.lyapunov = 0.396212564297744;
        p.constants.growth_min_poly = {1, -3};
        p.constants.variance_min_poly = {2, -5, 1};
        p.constants.oeis = {"A002487", "A049310"};
    } else {
        throw ValidationError("unknown preset '" + name + "'");
    }
    return p;
}

inline Automaton preset_automaton(const Preset& p) {
    if (p.direct) return make_direct(p.spec.order, p.spec.ell, p.D0, p.D1, p.w);
    return build(p.spec);
}

// ---------------------------------------------------------------------------
// Stern's diatomic values
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t stern_v_memo(std::uint64_t n,
                                  std::map<std::uint64_t, std::uint64_t>& memo) {
    if (n == 0) return 1;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::uint64_t r;
    if (n & 1) {
        r = stern_v_memo(n >> 1, memo);
    } else {
        r = stern_v_memo(n >> 1, memo) + stern_v_memo((n >> 1) - 1, memo);
    }
    memo.emplace(n, r);
    return r;
}

}  // namespace detail

// v(0) = 1, v(2n+1) = v(n), v(2n) = v(n) + v(n-1).
inline std::uint64_t stern_v(std::uint64_t n) {
    std::map<std::uint64_t, std::uint64_t> memo;
    return detail::stern_v_memo(n, memo);
}

inline std::vector<std::uint64_t> stern_values(std::uint64_t n_max) {
    std::vector<std::uint64_t> v(n_max + 1);
    v[0] = 1;
    for (std::uint64_t n = 1; n <= n_max; ++n)
        v[n] = (n & 1) ? v[n >> 1] : v[n >> 1] + v[(n >> 1) - 1];
    return v;
}

inline std::uint64_t fibonacci(int j) {
    std::uint64_t a = 0, b = 1;
    for (int i = 0; i < j; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Suite reports
// ---------------------------------------------------------------------------

struct SuiteReport {
    std::string suite;
    std::string preset;
    std::uint64_t range = 0;
    bool passed = true;
    std::vector<std::string> failures;
    nlohmann::json metrics = nlohmann::json::object();
    long checks = 0;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            passed = false;
            if (failures.size() < 32) failures.push_back(what);
        }
    }
};

inline nlohmann::json to_json(const SuiteReport& r) {
    return nlohmann::json{{"suite", r.suite},       {"preset", r.preset},
                          {"range", r.range},       {"passed", r.passed},
                          {"checks", r.checks},     {"failures", r.failures},
                          {"metrics", r.metrics}};
}

namespace detail {

inline std::vector<std::uint64_t> value_table(const Automaton& a,
                                              std::uint64_t n_max) {
    std::vector<std::uint64_t> vals(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) vals[n] = evaluate(a, n);
    return vals;
}

inline void check_residue(SuiteReport& r, const Automaton& a,
                          std::string_view word,
                          const std::vector<std::uint64_t>& expect) {
    r.require(residue_vector(a, word) == expect,
              "residue vector for digits '" + std::string(word) + "'");
}

// Each listed argument must hold a strict record: its value exceeds every
// value at smaller arguments. Checked exhaustively up to the table size.
inline void check_dominance(SuiteReport& r,
                            const std::vector<std::uint64_t>& vals,
                            std::vector<std::uint64_t> args,
                            const std::string& label) {
    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());
    std::uint64_t best = 0;
    bool any = false;
    std::size_t next = 0;
    for (std::uint64_t n = 0; n < vals.size(); ++n) {
        while (next < args.size() && args[next] == n) {
            r.require(!any || vals[n] > best,
                      label + " record at n=" + std::to_string(n));
            ++next;
        }
        if (!any || vals[n] > best) {
            best = vals[n];
            any = true;
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Recursion identities
// ---------------------------------------------------------------------------

inline SuiteReport run_recursion_suite(const Preset& p,
                                       std::uint64_t n_max = 4096) {
    SuiteReport r;
    r.suite = "recursion";
    r.preset = p.name;
    r.range = n_max;
    const Automaton a = preset_automaton(p);
    if (p.name == "trinomial") {
        const auto g = detail::value_table(a, 4 * n_max + 3);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            r.require(g[4 * n + 1] == 3 * g[n], "g(4n+1) = 3 g(n)");
            r.require(g[4 * n + 3] == g[2 * n + 1] + 2 * g[n],
                      "g(4n+3) = g(2n+1) + 2 g(n)");
        }
        detail::check_residue(r, a, "1", {1, 1});
        detail::check_residue(r, a, "01", {3, 0});
        detail::check_residue(r, a, "11", {3, 1});
    } else if (p.name == "quadrinomial") {
        const auto g = detail::value_table(a, 8 * n_max + 7);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            r.require(g[8 * n + 1] == g[4 * n + 1], "g3(8n+1) = g3(4n+1)");
            r.require(g[8 * n + 3] == g[2 * n + 1], "g3(8n+3) = g3(2n+1)");
            r.require(g[8 * n + 5] == 4 * g[2 * n + 1],
                      "g3(8n+5) = 4 g3(2n+1)");
            r.require(g[8 * n + 7] == 2 * g[4 * n + 3],
                      "g3(8n+7) = 2 g3(4n+3)");
        }
        detail::check_residue(r, a, "1", {0, 2, 0});
        detail::check_residue(r, a, "01", {4, 0, 0});
        detail::check_residue(r, a, "11", {0, 0, 2});
        detail::check_residue(r, a, "001", {4, 0, 0});
        detail::check_residue(r, a, "011", {0, 2, 0});
        detail::check_residue(r, a, "101", {0, 8, 0});
        detail::check_residue(r, a, "111", {0, 0, 4});
    } else if (p.name == "trinomial2") {
        const auto h = detail::value_table(a, 16 * n_max + 15);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            r.require(h[4 * n + 1] == 3 * h[n], "h3(4n+1) = 3 h3(n)");
            r.require(h[8 * n + 3] == h[2 * n + 1] + 4 * h[n],
                      "h3(8n+3) = h3(2n+1) + 4 h3(n)");
            r.require(h[16 * n + 7] == h[8 * n + 3] + h[2 * n + 1] + 3 * h[n],
                      "h3(16n+7) = h3(8n+3) + h3(2n+1) + 3 h3(n)");
            r.require(h[16 * n + 15] + 2 * h[n] ==
                          2 * h[8 * n + 7] + h[2 * n + 1],
                      "h3(16n+15) = 2 h3(8n+7) + h3(2n+1) - 2 h3(n)");
        }
    } else if (p.name == "stern") {
        const std::uint64_t limit = std::max<std::uint64_t>(n_max, 1u << 16);
        const auto v = stern_values(limit);
        for (std::uint64_t n = 0; n <= n_max; ++n)
            r.require(evaluate(a, n) == v[n], "matrix value equals v(n)");
        std::uint64_t sum = 0, pow3 = 1, n = 0;
        for (int k = 0; k <= 16; ++k) {
            for (; n < (std::uint64_t{1} << k); ++n) sum += v[n];
            r.require(sum == (pow3 + 1) / 2,
                      "sum of v below 2^" + std::to_string(k));
            pow3 *= 3;
        }
        for (std::uint64_t n = 0; n <= 512; ++n) {
            std::uint64_t count = 0;
            for (std::uint64_t m = 0; 2 * m <= n; ++m)
                if ((m & ~(n - m)) == 0) ++count;
            r.require(count == v[n], "Carlitz binomial count equals v(n)");
        }
        std::vector<std::uint64_t> sq(17, 0);
        std::uint64_t acc = 0;
        std::uint64_t edge = 1;
        int j = 0;
        for (std::uint64_t n = 0; n < (std::uint64_t{1} << 16); ++n) {
            acc += v[n] * v[n];
            if (n + 1 == edge) {
                sq[j] = acc;
                ++j;
                edge <<= 1;
            }
        }
        for (int i = 2; i <= 16; ++i)
            r.require(sq[i] == 5 * sq[i - 1] - 2 * sq[i - 2] - 1,
                      "squared partial sums recursion at k=" +
                          std::to_string(i));
    } else {
        throw ValidationError("no recursion identities for preset '" + p.name +
                              "'");
    }
    r.metrics["identities_checked"] = r.checks;
    return r;
}

// ---------------------------------------------------------------------------
// Extreme-value subsequences
// ---------------------------------------------------------------------------

inline SuiteReport run_extreme_suite(const Preset& p, int k_max = 30) {
    SuiteReport r;
    r.suite = "extreme";
    r.preset = p.name;
    r.range = static_cast<std::uint64_t>(k_max);
    const Automaton a = preset_automaton(p);
    const std::uint64_t scan_limit = std::uint64_t{1} << 14;
    const auto table = detail::value_table(a, scan_limit);
    std::vector<std::uint64_t> record_args;

    auto pow2 = [](int e) { return std::uint64_t{1} << e; };

    if (p.name == "binomial") {
        for (int k = 0; k <= k_max; ++k) {
            const std::uint64_t arg = pow2(k) - 1;
            r.require(evaluate(a, arg) == pow2(k), "f(2^k-1) = 2^k");
            r.require(evaluate(a, pow2(k)) == 2, "f(2^k) = 2");
            if (arg <= scan_limit && arg > 0) record_args.push_back(arg);
        }
        detail::check_dominance(r, table, record_args, "f");
        r.metrics["top_ratio"] =
            static_cast<double>(k_max) * std::log(2.0) /
            std::log(static_cast<double>(pow2(k_max) - 1));
    } else if (p.name == "trinomial") {
        for (int k = 0; k <= k_max; ++k) {
            const long long sgn = (k % 2 == 0) ? 1 : -1;
            const std::uint64_t arg1 = pow2(k) - 1;
            const std::uint64_t val1 =
                static_cast<std::uint64_t>((static_cast<long long>(pow2(k + 2)) - sgn) / 3);
            r.require(evaluate(a, arg1) == val1, "g(2^k-1)");
            const std::uint64_t arg2 = 3 * pow2(k + 1) - 1;
            const std::uint64_t val2 =
                static_cast<std::uint64_t>(static_cast<long long>(pow2(k + 3)) + sgn);
            r.require(evaluate(a, arg2) == val2, "g(3*2^(k+1)-1)");
            const std::uint64_t arg3 = 11 * pow2(k + 1) - 1;
            r.require(evaluate(a, arg3) == 3 * val2, "g(11*2^(k+1)-1)");
            r.require(evaluate(a, pow2(k)) == 3, "g(2^k) = 3");
            for (std::uint64_t arg : {arg1, arg2, arg3})
                if (arg <= scan_limit && arg > 0) record_args.push_back(arg);
        }
        detail::check_dominance(r, table, record_args, "g");
        r.metrics["top_ratio"] =
            std::log(static_cast<double>((pow2(k_max + 2) - ((k_max % 2 == 0) ? 1 : -1)) / 3)) /
            std::log(static_cast<double>(pow2(k_max) - 1));
    } else if (p.name == "rhombus") {
        r.require(evaluate(a, 5) == 6, "u(5) = 6");
        r.require(evaluate(a, 37) == 45, "u(37) = 45");
        record_args.push_back(5);
        record_args.push_back(37);
        for (int k = 0; k <= k_max; ++k) {
            const long long sgn = (k % 2 == 0) ? 1 : -1;
            const std::uint64_t arg1 = pow2(k) - 1;
            const std::uint64_t val1 =
                static_cast<std::uint64_t>((static_cast<long long>(pow2(k + 2)) - sgn) / 3);
            r.require(evaluate(a, arg1) == val1, "u(2^k-1)");
            const std::uint64_t arg2 = 5 * pow2(k + 1) - 1;
            const std::uint64_t val2 = static_cast<std::uint64_t>(
                5 * (static_cast<long long>(pow2(k + 3)) + sgn) / 3);
            r.require(evaluate(a, arg2) == val2, "u(5*2^(k+1)-1)");
            for (std::uint64_t arg : {arg1, arg2})
                if (arg <= scan_limit && arg > 0) record_args.push_back(arg);
        }
        for (int k = 0; k <= k_max; ++k) {
            mpz_class four_pow;
            mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned>(k) + 2);
            const mpz_class arg = 2 * four_pow - 7;
            const mpz_class val = (5 * four_pow + 12 * k + 1) / 3;
            r.require(evaluate_big(a, arg) == val, "u(2*4^(k+2)-7)");
            if (arg <= scan_limit)
                record_args.push_back(arg.get_ui());
        }
        detail::check_dominance(r, table, record_args, "u");
        std::vector<std::uint64_t> block_minima;
        for (int j = 0; j < 14; ++j) {
            std::uint64_t lo = pow2(j), hi = pow2(j + 1);
            std::uint64_t best = table[lo];
            for (std::uint64_t n = lo; n < hi; ++n)
                best = std::min(best, table[n]);
            block_minima.push_back(best);
        }
        r.metrics["dyadic_block_minima"] = block_minima;
    } else if (p.name == "stern") {
        for (int k = 0; k <= k_max; ++k) {
            mpz_class four_pow;
            mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned>(k));
            const mpz_class a1 = 2 * (four_pow - 1) / 3;
            const mpz_class a2 = 4 * (four_pow - 1) / 3;
            r.require(evaluate_big(a, a1) == fibonacci(2 * k + 1),
                      "v at 2(4^k-1)/3");
            r.require(evaluate_big(a, a2) == fibonacci(2 * k + 2),
                      "v at 4(4^k-1)/3");
            if (a1 <= scan_limit && a1 > 0)
                record_args.push_back(a1.get_ui());
            if (a2 <= scan_limit && a2 > 0)
                record_args.push_back(a2.get_ui());
            r.require(evaluate(a, pow2(k) - 1) == 1, "v(2^k-1) = 1");
        }
        detail::check_dominance(r, table, record_args, "v");
        const double phi = (1 + std::sqrt(5.0)) / 2;
        r.metrics["limsup_target"] = std::log(phi) / std::log(2.0);
        const double top_arg = 2.0 * (std::pow(4.0, k_max) - 1) / 3.0;
        r.metrics["top_ratio"] =
            std::log(static_cast<double>(fibonacci(2 * k_max + 1))) /
            std::log(top_arg);
    } else {
        throw ValidationError("no extreme-value table for preset '" + p.name +
                              "'");
    }
    r.metrics["identities_checked"] = r.checks;
    return r;
}

// ---------------------------------------------------------------------------
// Digit-sum identities
// ---------------------------------------------------------------------------

inline SuiteReport run_digitsum_suite(std::uint64_t n_max = 1u << 16) {
    SuiteReport r;
    r.suite = "digit-sum";
    r.preset = "binomial,quadrinomial";
    r.range = n_max;
    const Automaton two = preset_automaton(preset("binomial"));
    const Automaton four = preset_automaton(preset("quadrinomial"));
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        r.require(evaluate(two, n) ==
                      std::uint64_t{1} << __builtin_popcountll(n),
                  "log2 f(n) = digit sum of n");
        r.require(evaluate(four, n) ==
                      std::uint64_t{1} << __builtin_popcountll(3 * n),
                  "log2 g3(n) = digit sum of 3n");
    }
    for (int residue = 0; residue < 3; ++residue) {
        std::uint64_t total = 0;
        const std::uint64_t terms = n_max / 3;
        for (std::uint64_t k = 0; k <= terms; ++k)
            total += static_cast<std::uint64_t>(
                __builtin_popcountll(3 * k + static_cast<std::uint64_t>(residue)));
        const double n = static_cast<double>(n_max);
        const double expected = n / 3.0 * std::log(n) / (2.0 * std::log(2.0));
        r.metrics["ternary_ratio_" + std::to_string(residue)] =
            static_cast<double>(total) / expected;
    }
    r.metrics["identities_checked"] = r.checks;
    return r;
}

// ---------------------------------------------------------------------------
// Dispersion scans
// ---------------------------------------------------------------------------

inline SuiteReport run_dispersion_suite(const Preset& p, int bits = 20) {
    SuiteReport r;
    r.suite = "dispersion";
    r.preset = p.name;
    r.range = std::uint64_t{1} << bits;
    const double ln_n = bits * std::log(2.0);
    if (p.name == "binomial") {
        const Automaton a = preset_automaton(p);
        long double sum = 0, sum_sq = 0;
        const std::uint64_t n = std::uint64_t{1} << bits;
        for (std::uint64_t i = 0; i < n; ++i) {
            const long double x = std::log(static_cast<long double>(evaluate(a, i)));
            sum += x;
            sum_sq += x * x;
        }
        const long double var = sum_sq / n - (sum / n) * (sum / n);
        r.metrics["value"] = static_cast<double>(var) / ln_n;
        r.metrics["target"] = std::log(2.0) / 4.0;
    } else if (p.name == "stern") {
        const auto v = stern_values((std::uint64_t{1} << bits) - 1);
        long double sum = 0, sum_sq = 0;
        for (std::uint64_t x : v) {
            sum += x;
            sum_sq += static_cast<long double>(x) * x;
        }
        const long double n = static_cast<long double>(v.size());
        const long double var = sum_sq / n - (sum / n) * (sum / n);
        r.metrics["value"] = std::log(static_cast<double>(var)) / ln_n;
        const double psi = (5 + std::sqrt(17.0)) / 4;
        r.metrics["target"] = std::log(psi) / std::log(2.0);
    } else if (p.name == "trinomial") {
        const Automaton a = preset_automaton(p);
        long double sum = 0, sum_sq = 0;
        const std::uint64_t n = std::uint64_t{1} << bits;
        for (std::uint64_t i = 0; i < n; ++i) {
            const long double x = static_cast<long double>(evaluate(a, i));
            sum += x;
            sum_sq += x * x;
        }
        const long double var = sum_sq / n - (sum / n) * (sum / n);
        r.metrics["value"] = std::log(static_cast<double>(var)) / ln_n;
        double xi = 2.8;
        for (int i = 0; i < 60; ++i) {
            const double f = xi * xi * xi - 2 * xi * xi - 3 * xi + 2;
            const double df = 3 * xi * xi - 4 * xi - 3;
            xi -= f / df;
        }
        r.metrics["target"] = std::log(xi) / std::log(2.0);
    } else {
        throw ValidationError("no dispersion scan for preset '" + p.name +
                              "'");
    }
    r.metrics["deviation"] = std::abs(r.metrics["value"].get<double>() -
                                      r.metrics["target"].get<double>());
    return r;
}

}  // namespace parityrep
