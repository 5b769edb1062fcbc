#pragma once

// Synthesis of the linear representation (w, D0, D1, e0) for odd-coefficient
// counts: breadth-first discovery of window states, the child matrices, the
// master-formula evaluator, residue vectors, and oracle validation.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "parityrep/errors.hpp"
#include "parityrep/gf2poly.hpp"

namespace parityrep {

struct WindowState {
    int index = 0;
    std::vector<std::uint8_t> value;  // ell entries, or 2*ell row-major for order 2
    int depth = 0;
    long long row_base = 0;
    long long col_base = 0;  // strides are implicitly 2^depth
};

struct BuildLimits {
    int max_states = 64;
    int max_depth = 64;
};

struct Automaton {
    int order = 1;
    long ell = 0;
    int m = 0;
    std::vector<WindowState> states;  // empty for direct-matrix presets
    std::vector<std::vector<std::uint64_t>> D0, D1;
    std::vector<std::uint64_t> w;
    // zero_children[j][s] counts all-zero children of state j under digit s.
    std::vector<std::array<int, 2>> zero_children;

    const std::vector<std::vector<std::uint64_t>>& D(int s) const { return s ? D1 : D0; }
};

struct StateExplosionError : ResourceLimitError {
    std::vector<WindowState> partial_states;
    StateExplosionError(const std::string& msg, std::vector<WindowState> states)
        : ResourceLimitError(msg), partial_states(std::move(states)) {}
};

namespace detail {

inline bool mandate_holds(const std::vector<std::uint8_t>& value, int order, long ell) {
    if (order == 1) return value[0] == 1;
    return value[0] == 1 || value[ell] == 1;
}

inline bool all_zero(const std::vector<std::uint8_t>& value) {
    for (std::uint8_t v : value)
        if (v) return false;
    return true;
}

// Index of the first nonzero entry (order 1) or column (order 2).
inline long first_nonzero(const std::vector<std::uint8_t>& value, int order, long ell) {
    for (long j = 0; j < ell; ++j) {
        if (order == 1 ? value[j] != 0 : (value[j] != 0 || value[ell + j] != 0)) return j;
    }
    return -1;
}

}  // namespace detail

// Breadth-first construction. The seed state is the window at row 0, column 0,
// depth 0. A state at (depth d, row β, col γ) with strides 2^d has, for each
// digit pair (s, t) scanned in the order (0,0), (1,0), (0,1), (1,1), the child
// window at (d+1, β + s·2^d, γ + t·2^d) with strides 2^{d+1}; order-2 windows
// read rows β and β + 2^d. A nonzero child whose leading entry is 0 is shifted
// right by c·2^{d+1} columns, c the index of its first nonzero entry/column,
// restoring the leading-1 mandate before it is matched against known states.
inline Automaton build(const RecurrenceSpec& spec, BuildLimits limits = {}) {
    spec.check();
    RowCache cache;
    Automaton a;
    a.order = spec.order;
    a.ell = spec.ell;

    std::vector<WindowState>& states = a.states;
    WindowState seed;
    seed.index = 0;
    seed.depth = 0;
    seed.row_base = 0;
    seed.col_base = 0;
    seed.value = window(spec, 0, 1, 0, 1, &cache);
    if (!detail::mandate_holds(seed.value, spec.order, spec.ell))
        throw ValidationError("seed window violates the leading-1 mandate");
    states.push_back(seed);

    struct Child {
        int parent, s, t;
        int state = -1;  // -1 marks an all-zero child
    };
    std::vector<Child> children;

    for (std::size_t i = 0; i < states.size(); ++i) {
        const int d = states[i].depth;
        const long long stride = 1LL << d;
        const long long child_stride = 1LL << (d + 1);
        if (d + 1 > limits.max_depth)
            throw StateExplosionError("max_depth exceeded during construction", states);
        static constexpr int kScanOrder[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        for (const auto& st : kScanOrder) {
            const int s = st[0], t = st[1];
            const long long row_base = states[i].row_base + s * stride;
            long long col_base = states[i].col_base + t * stride;
            std::vector<std::uint8_t> value =
                window(spec, row_base, child_stride, col_base, child_stride, &cache);
            Child child{static_cast<int>(i), s, t};
            if (detail::all_zero(value)) {
                children.push_back(child);
                continue;
            }
            if (!detail::mandate_holds(value, spec.order, spec.ell)) {
                const long c = detail::first_nonzero(value, spec.order, spec.ell);
                col_base += c * child_stride;
                value = window(spec, row_base, child_stride, col_base, child_stride, &cache);
            }
            int match = -1;
            for (const WindowState& known : states)
                if (known.value == value) {
                    match = known.index;
                    break;
                }
            if (match < 0) {
                if (static_cast<int>(states.size()) >= limits.max_states)
                    throw StateExplosionError("max_states exceeded during construction",
                                              states);
                WindowState fresh;
                fresh.index = static_cast<int>(states.size());
                fresh.value = value;
                fresh.depth = d + 1;
                fresh.row_base = row_base;
                fresh.col_base = col_base;
                states.push_back(fresh);
                match = fresh.index;
            }
            child.state = match;
            children.push_back(child);
        }
    }

    const int m = static_cast<int>(states.size());
    a.m = m;
    a.D0.assign(m, std::vector<std::uint64_t>(m, 0));
    a.D1.assign(m, std::vector<std::uint64_t>(m, 0));
    a.zero_children.assign(m, {0, 0});
    for (const auto& child : children) {
        if (child.state < 0) {
            ++a.zero_children[child.parent][child.s];
            continue;
        }
        auto& D = child.s ? a.D1 : a.D0;
        ++D[child.state][child.parent];
    }
    a.w.resize(m);
    for (int i = 0; i < m; ++i) {
        std::uint64_t ones = 0;
        for (long j = 0; j < a.ell; ++j) ones += states[i].value[j];  // top row only
        a.w[i] = ones;
    }
    return a;
}

namespace detail {

inline void apply_digit(const Automaton& a, int digit, std::vector<std::uint64_t>& y,
                        std::vector<std::uint64_t>& scratch) {
    const auto& D = a.D(digit);
    for (int i = 0; i < a.m; ++i) {
        unsigned __int128 acc = 0;
        for (int j = 0; j < a.m; ++j) acc += static_cast<unsigned __int128>(D[i][j]) * y[j];
        if (acc > ~std::uint64_t{0})
            throw std::overflow_error("count exceeds 64 bits; this indicates a bug");
        scratch[i] = static_cast<std::uint64_t>(acc);
    }
    y.swap(scratch);
}

}  // namespace detail

// Master formula: w^T D_{n_{k-1}} ... D_{n_0} e_0 with the leftmost factor
// taken from the most significant bit. n = 0 is the empty product, giving w(0).
inline std::uint64_t evaluate(const Automaton& a, std::uint64_t n) {
    std::vector<std::uint64_t> y(a.m, 0), scratch(a.m);
    y[0] = 1;
    for (std::uint64_t rest = n; rest; rest >>= 1)
        detail::apply_digit(a, static_cast<int>(rest & 1), y, scratch);
    unsigned __int128 acc = 0;
    for (int i = 0; i < a.m; ++i) acc += static_cast<unsigned __int128>(a.w[i]) * y[i];
    if (acc > ~std::uint64_t{0})
        throw std::overflow_error("count exceeds 64 bits; this indicates a bug");
    return static_cast<std::uint64_t>(acc);
}

// Arbitrary-precision variant for indices or counts past 64 bits.
inline mpz_class evaluate_big(const Automaton& a, const mpz_class& n) {
    if (n < 0) throw ContractViolation("negative index");
    std::vector<mpz_class> y(a.m), scratch(a.m);
    y[0] = 1;
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (n > 0) {
        for (std::size_t b = 0; b < bits; ++b) {
            const auto& D = a.D(mpz_tstbit(n.get_mpz_t(), b));
            for (int i = 0; i < a.m; ++i) {
                scratch[i] = 0;
                for (int j = 0; j < a.m; ++j)
                    if (D[i][j]) scratch[i] += static_cast<unsigned long>(D[i][j]) * y[j];
            }
            y.swap(scratch);
        }
    }
    mpz_class acc = 0;
    for (int i = 0; i < a.m; ++i) acc += static_cast<unsigned long>(a.w[i]) * y[i];
    return acc;
}

// Exact integer vector D_{b_1} ... D_{b_r} e_0 for a digit word read left to
// right as matrix factors left to right: residue_vector("01") = D_0 D_1 e_0.
inline std::vector<std::uint64_t> residue_vector(const Automaton& a, std::string_view word) {
    std::vector<std::uint64_t> y(a.m, 0), scratch(a.m);
    y[0] = 1;
    for (std::size_t i = word.size(); i-- > 0;) {
        if (word[i] != '0' && word[i] != '1')
            throw ContractViolation("residue words are binary");
        detail::apply_digit(a, word[i] - '0', y, scratch);
    }
    return y;
}

struct ValidationReport {
    bool passed = true;
    std::uint64_t checked = 0;
    std::uint64_t first_mismatch = 0;
    std::uint64_t expected = 0;  // oracle value at the first mismatch
    std::uint64_t actual = 0;    // representation value at the first mismatch

    std::string describe() const {
        if (passed) return "pass (" + std::to_string(checked) + " values)";
        return "mismatch at n=" + std::to_string(first_mismatch) + ": oracle " +
               std::to_string(expected) + ", representation " + std::to_string(actual);
    }
};

// Exhaustive sweep against the brute-force oracle for all n <= n_max.
inline ValidationReport validate(const Automaton& a, const RecurrenceSpec& spec,
                                 std::uint64_t n_max) {
    ValidationReport report;
    for_each_row(spec, n_max, [&](std::uint64_t n, const ParityPoly& r) {
        if (!report.passed) return;
        const std::uint64_t expected = static_cast<std::uint64_t>(r.popcount());
        const std::uint64_t actual = evaluate(a, n);
        ++report.checked;
        if (expected != actual) {
            report.passed = false;
            report.first_mismatch = n;
            report.expected = expected;
            report.actual = actual;
        }
    });
    return report;
}

// Canonical fixture format: matrices row-major, states with value/address.
inline nlohmann::json to_json(const Automaton& a) {
    nlohmann::json j;
    j["order"] = a.order;
    j["ell"] = a.ell;
    j["m"] = a.m;
    j["states"] = nlohmann::json::array();
    for (const WindowState& s : a.states) {
        nlohmann::json js;
        js["value"] = s.value;
        js["depth"] = s.depth;
        js["row_base"] = s.row_base;
        js["col_base"] = s.col_base;
        j["states"].push_back(js);
    }
    auto flat = [](const std::vector<std::vector<std::uint64_t>>& M) {
        std::vector<std::uint64_t> out;
        for (const auto& row : M) out.insert(out.end(), row.begin(), row.end());
        return out;
    };
    j["D0"] = flat(a.D0);
    j["D1"] = flat(a.D1);
    j["w"] = a.w;
    j["zero_children"] = nlohmann::json::array();
    for (const auto& zc : a.zero_children) j["zero_children"].push_back({zc[0], zc[1]});
    return j;
}

inline Automaton automaton_from_json(const nlohmann::json& j) {
    Automaton a;
    a.order = j.at("order").get<int>();
    a.ell = j.at("ell").get<long>();
    a.m = j.at("m").get<int>();
    for (const auto& js : j.at("states")) {
        WindowState s;
        s.index = static_cast<int>(a.states.size());
        s.value = js.at("value").get<std::vector<std::uint8_t>>();
        s.depth = js.at("depth").get<int>();
        s.row_base = js.at("row_base").get<long long>();
        s.col_base = js.at("col_base").get<long long>();
        a.states.push_back(std::move(s));
    }
    auto unflat = [&](const nlohmann::json& arr) {
        const auto flat = arr.get<std::vector<std::uint64_t>>();
        if (flat.size() != static_cast<std::size_t>(a.m) * a.m)
            throw ContractViolation("matrix size does not match m");
        std::vector<std::vector<std::uint64_t>> M(a.m, std::vector<std::uint64_t>(a.m));
        for (int i = 0; i < a.m; ++i)
            for (int k = 0; k < a.m; ++k) M[i][k] = flat[i * a.m + k];
        return M;
    };
    a.D0 = unflat(j.at("D0"));
    a.D1 = unflat(j.at("D1"));
    a.w = j.at("w").get<std::vector<std::uint64_t>>();
    a.zero_children.assign(a.m, {0, 0});
    if (j.contains("zero_children")) {
        const auto& zc = j.at("zero_children");
        if (zc.size() != static_cast<std::size_t>(a.m))
            throw ContractViolation("zero_children size does not match m");
        for (int i = 0; i < a.m; ++i) {
            a.zero_children[i][0] = zc[i].at(0).get<int>();
            a.zero_children[i][1] = zc[i].at(1).get<int>();
        }
    } else {
        // hand-written fixtures omit the field; a window state always has two
        // children per digit, so the column sums determine the zero count
        for (int jcol = 0; jcol < a.m; ++jcol)
            for (int s = 0; s < 2; ++s) {
                std::uint64_t colsum = 0;
                for (int i = 0; i < a.m; ++i) colsum += a.D(s)[i][jcol];
                a.zero_children[jcol][s] = colsum < 2 ? static_cast<int>(2 - colsum) : 0;
            }
    }
    return a;
}

// Wraps directly stated matrices (no window provenance) in an Automaton.
inline Automaton make_direct(int order, long ell,
                             std::vector<std::vector<std::uint64_t>> D0,
                             std::vector<std::vector<std::uint64_t>> D1,
                             std::vector<std::uint64_t> w) {
    Automaton a;
    a.order = order;
    a.ell = ell;
    a.m = static_cast<int>(w.size());
    a.D0 = std::move(D0);
    a.D1 = std::move(D1);
    a.w = std::move(w);
    a.zero_children.assign(a.m, {0, 0});
    return a;
}

}  // namespace parityrep
