#pragma once

// Wynn epsilon algorithm for accelerating slowly convergent partial sums.
// Even-numbered columns of the epsilon table are the sequence transforms;
// odd columns are auxiliary. A tiny forward difference makes the reciprocal
// blow up, so columns are truncated at the first such breakdown. The table
// is evaluated in double so the breakdown threshold matches the arithmetic,
// and the reported value comes from the most stable even column rather than
// the deepest one, which may already sit in rounding noise.

#include <cmath>
#include <limits>
#include <vector>

namespace parityrep {

struct WynnAcceleration {
    double value = 0;                  // last entry of the most stable even column
    int column = 0;                    // that column's index (0 means no acceleration)
    std::vector<double> even_columns;  // last usable entry of columns 0, 2, 4, ...
};

inline WynnAcceleration accelerate(const std::vector<long double>& partial_sums) {
    WynnAcceleration out;
    if (partial_sums.empty()) return out;
    std::vector<double> prev(partial_sums.size() + 1, 0.0);                 // column -1
    std::vector<double> cur(partial_sums.begin(), partial_sums.end());      // column 0
    out.value = cur.back();
    out.column = 0;
    out.even_columns.push_back(out.value);
    double best_step = std::numeric_limits<double>::infinity();
    double prev_even = cur.back();
    for (int k = 1; cur.size() >= 2; ++k) {
        std::vector<double> next;
        next.reserve(cur.size() - 1);
        for (std::size_t n = 0; n + 1 < cur.size(); ++n) {
            const double diff = cur[n + 1] - cur[n];
            if (std::fabs(diff) < 1e-14 * std::max(1.0, std::fabs(cur[n + 1]))) break;
            next.push_back(prev[n + 1] + 1.0 / diff);
        }
        if (next.empty()) break;
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) {
            const double entry = cur.back();
            out.even_columns.push_back(entry);
            const double step = std::fabs(entry - prev_even);
            if (step < best_step) {
                best_step = step;
                out.value = entry;
                out.column = k;
            }
            prev_even = entry;
        }
    }
    return out;
}

// Accelerated estimate after each prefix of the sums, for convergence traces.
inline std::vector<double> acceleration_trace(const std::vector<long double>& partial_sums) {
    std::vector<double> out(partial_sums.size());
    std::vector<long double> prefix;
    prefix.reserve(partial_sums.size());
    for (std::size_t i = 0; i < partial_sums.size(); ++i) {
        prefix.push_back(partial_sums[i]);
        out[i] = accelerate(prefix).value;
    }
    return out;
}

}  // namespace parityrep
