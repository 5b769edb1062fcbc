#pragma once

// Typical-growth (Lyapunov) exponents. A power of D0 that collapses to
// e0 v^T yields a coordinate change under which runs of q zero digits act as
// rank-one projectors; the exponent then becomes an explicit series over
// binary words with short zero runs, accelerated by the Wynn table. A Monte
// Carlo estimator over random digit streams and an exhaustive small-n mean
// serve as fallbacks and cross-checks.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "parityrep/automaton.hpp"
#include "parityrep/errors.hpp"
#include "parityrep/wynn.hpp"

namespace parityrep {

using Mz = std::vector<std::vector<mpz_class>>;

inline constexpr long double kLn2 = 0.69314718055994530941723212145818L;

inline Mz mz_from_counts(const std::vector<std::vector<std::uint64_t>>& M) {
    Mz out(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
        out[i].resize(M[i].size());
        for (std::size_t j = 0; j < M[i].size(); ++j)
            out[i][j] = mpz_class(static_cast<unsigned long>(M[i][j]));
    }
    return out;
}

inline Mz mz_identity(int n) {
    Mz out(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

inline Mz mz_mul(const Mz& A, const Mz& B) {
    const int n = static_cast<int>(A.size());
    const int k = static_cast<int>(B.size());
    const int m = static_cast<int>(B[0].size());
    Mz out(n, std::vector<mpz_class>(m));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (sgn(A[i][t]) == 0) continue;
            for (int j = 0; j < m; ++j)
                if (sgn(B[t][j]) != 0)
                    mpz_addmul(out[i][j].get_mpz_t(), A[i][t].get_mpz_t(), B[t][j].get_mpz_t());
        }
    return out;
}

// ln |x| for a nonzero integer, exact mantissa/exponent split.
inline long double ln_abs(const mpz_class& x) {
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(std::fabs(static_cast<long double>(mant))) + static_cast<long double>(e) * kLn2;
}

struct CoordinateChange {
    int q = 0;                  // smallest power with D0^q = e0 v^T
    int m = 0;
    std::vector<mpz_class> v;   // top row of D0^q, v(0) = 1
    Mz Q, Q_inv;                // unipotent change of basis and its inverse
    Mz D0p, D1p;                // conjugated digit matrices, exact integers
    const Mz& D(int s) const { return s ? D1p : D0p; }
};

// Searches for the smallest q <= q_max with D0^q = e0 v^T and v(0) = 1, then
// conjugates both digit matrices by the unipotent Q that maps e0 v^T to
// e0 e0^T. Throws MethodInapplicableError when no such power exists.
inline CoordinateChange find_coordinate_change(const Automaton& a, int q_max = 0) {
    const int m = a.m;
    if (q_max <= 0) q_max = m + 2;
    const Mz D0 = mz_from_counts(a.D0);
    const Mz D1 = mz_from_counts(a.D1);
    Mz P = D0;
    int q = 0;
    for (int cand = 1; cand <= q_max; ++cand) {
        bool collapsed = P[0][0] == 1;
        for (int i = 1; collapsed && i < m; ++i)
            for (int j = 0; collapsed && j < m; ++j)
                if (sgn(P[i][j]) != 0) collapsed = false;
        if (collapsed) {
            q = cand;
            break;
        }
        P = mz_mul(P, D0);
    }
    if (q == 0)
        throw MethodInapplicableError(
            "rank-1 condition fails: no power of D0 up to " + std::to_string(q_max) +
            " equals e0 v^T; use the Monte Carlo estimator instead");
    CoordinateChange cc;
    cc.q = q;
    cc.m = m;
    cc.v = P[0];
    cc.Q = mz_identity(m);
    cc.Q_inv = mz_identity(m);
    for (int j = 1; j < m; ++j) {
        cc.Q[0][j] = -cc.v[j];
        cc.Q_inv[0][j] = cc.v[j];
    }
    cc.D0p = mz_mul(cc.Q_inv, mz_mul(D0, cc.Q));
    cc.D1p = mz_mul(cc.Q_inv, mz_mul(D1, cc.Q));
    const Mz ident = mz_identity(m);
    if (mz_mul(cc.Q, cc.Q_inv) != ident || mz_mul(cc.Q_inv, cc.Q) != ident)
        throw ContractViolation("coordinate change is not unipotent-invertible");
    Mz collapsed = mz_mul(cc.Q_inv, mz_mul(P, cc.Q));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (collapsed[i][j] != ((i == 0 && j == 0) ? 1 : 0))
                throw ContractViolation("Q^-1 D0^q Q is not e0 e0^T");
    return cc;
}

// ---------------------------------------------------------------- words ---

// Valid words avoid q consecutive zero letters and end in a one. Counts obey
// c_k = sum_{i=1..q} c_{k-i} with c_0 = 1.

inline std::vector<std::string> enumerate_words(int q, int length) {
    std::vector<std::string> out;
    if (length <= 0) return out;
    for (std::uint64_t bits = 0; bits < (1ULL << length); ++bits) {
        std::string word(length, '0');
        for (int i = 0; i < length; ++i)
            if (bits >> i & 1) word[i] = '1';
        if (word.back() != '1') continue;
        if (word.find(std::string(q, '0')) != std::string::npos) continue;
        out.push_back(std::move(word));
    }
    return out;
}

// Word counts by a pass over trailing-zero-run states; index k holds c_k.
inline std::vector<std::uint64_t> word_counts(int q, int k_max) {
    std::vector<std::uint64_t> c(k_max + 1);
    c[0] = 1;
    std::vector<std::uint64_t> runs(q, 0);
    runs[0] = 1;
    for (int k = 1; k <= k_max; ++k) {
        std::uint64_t total = 0;
        for (std::uint64_t x : runs) total += x;
        for (int r = q - 1; r >= 1; --r) runs[r] = runs[r - 1];
        runs[0] = total;
        c[k] = total;
    }
    return c;
}

// e0^T D'_{z_1} ... D'_{z_k} e0 for a word given as '0'/'1' characters.
inline mpz_class word_corner(const CoordinateChange& cc, const std::string& word) {
    std::vector<mpz_class> r(cc.m);
    r[0] = 1;
    std::vector<mpz_class> next(cc.m);
    for (char ch : word) {
        if (ch != '0' && ch != '1') throw ContractViolation("word letters must be 0 or 1");
        const Mz& D = cc.D(ch - '0');
        for (int j = 0; j < cc.m; ++j) {
            next[j] = 0;
            for (int i = 0; i < cc.m; ++i)
                if (sgn(r[i]) != 0 && sgn(D[i][j]) != 0)
                    mpz_addmul(next[j].get_mpz_t(), r[i].get_mpz_t(), D[i][j].get_mpz_t());
        }
        r.swap(next);
    }
    return r[0];
}

// --------------------------------------------------------------- series ---

struct SeriesOptions {
    int k_max = 0;      // 0 picks a default based on q
    bool strict = true; // a zero corner means q or Q was misdetected
    int threads = 0;    // 0 means hardware concurrency
};

struct SeriesResult {
    int q = 0;
    int k_max = 0;
    std::vector<long double> partial_sums;  // entry K-1 holds S_K
    WynnAcceleration accel;
    double lyapunov = 0;       // natural-log units
    double lyapunov_log2 = 0;  // divided by ln 2
    long skipped = 0;          // zero-corner words dropped in non-strict mode
};

inline int default_series_depth(int q) {
    switch (q) {
        case 1: return 60;
        case 2: return 34;
        case 3: return 26;
        default: return 20;
    }
}

namespace detail {

struct SeriesWalk {
    const Mz* D[2] = {nullptr, nullptr};
    int m = 0, q = 0, k_max = 0, frontier_depth = 0;
    std::vector<std::vector<mpz_class>> r;  // r[d] is the row vector after d letters
    std::vector<std::uint8_t> path;
    std::vector<long double> buckets;       // buckets[len] sums ln |corner| over words
    long skipped = 0;
    std::string zero_word;

    struct Prefix {
        std::vector<mpz_class> r;
        int depth = 0, trailing = 0;
        std::vector<std::uint8_t> path;
    };
    std::vector<Prefix>* frontier = nullptr;

    void init(const CoordinateChange& cc, int depth_limit, int frontier_at) {
        D[0] = &cc.D0p;
        D[1] = &cc.D1p;
        m = cc.m;
        q = cc.q;
        k_max = depth_limit;
        frontier_depth = frontier_at;
        r.assign(k_max + 1, std::vector<mpz_class>(m));
        buckets.assign(k_max + 1, 0.0L);
    }

    void advance(int depth, int s) {
        const Mz& M = *D[s];
        std::vector<mpz_class>& out = r[depth + 1];
        const std::vector<mpz_class>& in = r[depth];
        for (int j = 0; j < m; ++j) {
            out[j] = 0;
            for (int i = 0; i < m; ++i)
                if (sgn(in[i]) != 0 && sgn(M[i][j]) != 0)
                    mpz_addmul(out[j].get_mpz_t(), in[i].get_mpz_t(), M[i][j].get_mpz_t());
        }
    }

    void emit(int len) {
        const mpz_class& corner = r[len][0];
        if (sgn(corner) == 0) {
            ++skipped;
            if (zero_word.empty()) {
                zero_word.reserve(path.size());
                for (std::uint8_t s : path) zero_word.push_back(static_cast<char>('0' + s));
            }
            return;
        }
        buckets[len] += ln_abs(corner);
    }

    void run(int depth, int trailing) {
        if (depth == frontier_depth && frontier) {
            frontier->push_back(Prefix{r[depth], depth, trailing, path});
            return;
        }
        if (depth >= k_max) return;
        for (int s = 0; s < 2; ++s) {
            if (s == 0 && trailing == q - 1) continue;
            advance(depth, s);
            path.push_back(static_cast<std::uint8_t>(s));
            if (s == 1) emit(depth + 1);
            run(depth + 1, s == 0 ? trailing + 1 : 0);
            path.pop_back();
        }
    }
};

}  // namespace detail

// Exact-series evaluation: S_K = p * sum_{len <= K} 2^-len * B_len where
// B_len totals ln |corner| over valid words of that length and
// p = 1 / (2^(q+1) (2^q - 1)). Corners are exact integers throughout; the
// reduction order is fixed, so results are identical for any thread count.
inline SeriesResult moshe_series(const CoordinateChange& cc, const SeriesOptions& opt = {}) {
    SeriesResult out;
    out.q = cc.q;
    out.k_max = opt.k_max > 0 ? opt.k_max : default_series_depth(cc.q);

    int threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const int frontier_depth = std::min(out.k_max, 10);

    detail::SeriesWalk serial;
    serial.init(cc, out.k_max, frontier_depth);
    std::vector<detail::SeriesWalk::Prefix> frontier;
    serial.frontier = &frontier;
    serial.r[0][0] = 1;
    serial.run(0, 0);

    std::vector<long double> buckets = serial.buckets;
    long skipped = serial.skipped;
    std::string zero_word = serial.zero_word;

    if (!frontier.empty() && out.k_max > frontier_depth) {
        struct Piece {
            std::vector<long double> buckets;
            long skipped = 0;
            std::string zero_word;
        };
        std::vector<Piece> pieces(frontier.size());
        std::atomic<std::size_t> cursor{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= frontier.size()) break;
                detail::SeriesWalk walk;
                walk.init(cc, out.k_max, -1);
                walk.r[frontier[i].depth] = frontier[i].r;
                walk.path = frontier[i].path;
                walk.run(frontier[i].depth, frontier[i].trailing);
                pieces[i] = Piece{std::move(walk.buckets), walk.skipped, std::move(walk.zero_word)};
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
        for (std::thread& th : pool) th.join();
        for (const Piece& p : pieces) {
            for (int len = 0; len <= out.k_max; ++len) buckets[len] += p.buckets[len];
            skipped += p.skipped;
            if (zero_word.empty()) zero_word = p.zero_word;
        }
    }

    if (opt.strict && !zero_word.empty())
        throw ValidationError("series term for word " + zero_word + " has a zero corner entry");
    out.skipped = skipped;

    const long double prefactor =
        1.0L / (std::pow(2.0L, cc.q + 1) * (std::pow(2.0L, cc.q) - 1.0L));
    out.partial_sums.resize(out.k_max);
    long double tail = 0;
    for (int len = 1; len <= out.k_max; ++len) {
        tail += std::ldexp(buckets[len], -len);
        out.partial_sums[len - 1] = prefactor * tail;
    }
    out.accel = accelerate(out.partial_sums);
    out.lyapunov = out.accel.value;
    out.lyapunov_log2 = static_cast<double>(out.accel.value / kLn2);
    return out;
}

// Closed form for the one-state collapse with corner values
// (2^(k+2) - (-1)^k) / 3: partial sums match the word series bit for bit.
inline SeriesResult closed_series_trinomial(int k_max = 60) {
    SeriesResult out;
    out.q = 1;
    out.k_max = k_max;
    out.partial_sums.resize(k_max);
    long double tail = 0;
    for (int k = 1; k <= k_max; ++k) {
        mpz_class corner = (mpz_class(1) << (k + 2)) - (k % 2 == 0 ? 1 : -1);
        corner /= 3;
        tail += std::ldexp(ln_abs(corner), -k);
        out.partial_sums[k - 1] = 0.25L * tail;
    }
    out.accel = accelerate(out.partial_sums);
    out.lyapunov = out.accel.value;
    out.lyapunov_log2 = static_cast<double>(out.accel.value / kLn2);
    return out;
}

// The expected corner for the closed form above.
inline mpz_class trinomial_corner(int k) {
    mpz_class corner = (mpz_class(1) << (k + 2)) - (k % 2 == 0 ? 1 : -1);
    corner /= 3;
    return corner;
}

// ---------------------------------------------------------- monte carlo ---

struct MonteCarloResult {
    double mean = 0, std_error = 0;          // natural-log units
    double mean_log2 = 0, std_error_log2 = 0;
    int samples = 0, steps = 0;
    int burn_in = 0;  // leading steps excluded from each sample's estimate
    std::uint64_t seed = 0;
    std::string generator = "mt19937_64/splitmix64";
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Random digit streams applied to the untransformed matrices: the product is
// renormalized by its max row sum every 32 steps, accumulating the log. The
// first tenth of each stream is burned in; ln of the product norm carries an
// O(1) stationary offset that cancels in the difference across the burn-in.
// Sample i always uses mt19937_64 seeded with splitmix64(seed + i), so the
// estimate is reproducible for any thread count.
inline MonteCarloResult monte_carlo(const Automaton& a, int samples = 64, int steps = 20000,
                                    std::uint64_t seed = 1, int threads = 0) {
    const int m = a.m;
    const int burn_in = steps / 10;
    std::vector<double> d0(static_cast<std::size_t>(m) * m), d1(d0.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            d0[static_cast<std::size_t>(i) * m + j] = static_cast<double>(a.D0[i][j]);
            d1[static_cast<std::size_t>(i) * m + j] = static_cast<double>(a.D1[i][j]);
        }
    std::vector<double> lambdas(samples);
    auto run_sample = [&](int idx) {
        std::mt19937_64 rng(detail::splitmix64(seed + static_cast<std::uint64_t>(idx)));
        std::vector<double> P(static_cast<std::size_t>(m) * m, 0.0), next(P.size());
        for (int i = 0; i < m; ++i) P[static_cast<std::size_t>(i) * m + i] = 1.0;
        double acc = 0, base = 0;
        auto max_row_sum = [&]() {
            double best = 0;
            for (int i = 0; i < m; ++i) {
                double s = 0;
                for (int j = 0; j < m; ++j) s += std::fabs(P[static_cast<std::size_t>(i) * m + j]);
                best = std::max(best, s);
            }
            return best;
        };
        for (int step = 1; step <= steps; ++step) {
            const std::vector<double>& D = (rng() & 1) ? d1 : d0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double s = 0;
                    for (int k = 0; k < m; ++k)
                        s += P[static_cast<std::size_t>(i) * m + k] * D[static_cast<std::size_t>(k) * m + j];
                    next[static_cast<std::size_t>(i) * m + j] = s;
                }
            P.swap(next);
            if (step % 32 == 0) {
                const double norm = max_row_sum();
                if (norm <= 0) throw ValidationError("matrix product collapsed to zero");
                acc += std::log(norm);
                for (double& x : P) x /= norm;
            }
            if (step == burn_in) base = acc + std::log(max_row_sum());
        }
        lambdas[idx] =
            (acc + std::log(max_row_sum()) - base) / static_cast<double>(steps - burn_in);
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    std::atomic<int> cursor{0};
    std::atomic<bool> failed{false};
    auto work = [&]() {
        try {
            for (;;) {
                const int i = cursor.fetch_add(1);
                if (i >= samples) break;
                run_sample(i);
            }
        } catch (...) {
            failed = true;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();
    if (failed) throw ValidationError("a sample's matrix product collapsed to zero");

    MonteCarloResult out;
    out.samples = samples;
    out.steps = steps;
    out.burn_in = burn_in;
    out.seed = seed;
    double mean = 0;
    for (double l : lambdas) mean += l;
    mean /= samples;
    double var = 0;
    for (double l : lambdas) var += (l - mean) * (l - mean);
    var = samples > 1 ? var / (samples - 1) : 0;
    out.mean = mean;
    out.std_error = std::sqrt(var / samples);
    out.mean_log2 = mean / static_cast<double>(kLn2);
    out.std_error_log2 = out.std_error / static_cast<double>(kLn2);
    return out;
}

// ------------------------------------------------------- exhaustive mean ---

struct EmpiricalMean {
    double log2_value = 0;  // (1 / (2^K K)) sum_{n < 2^K} log2 count(n)
    double ln_value = 0;
    int bits = 0;
    long zero_rows = 0;     // rows with no odd entries, skipped
};

namespace detail {

struct MeanWalk {
    const std::vector<std::vector<std::uint64_t>>* D[2] = {nullptr, nullptr};
    int m = 0, K = 0;
    std::vector<std::vector<double>> u;  // u[d] is w^T times the first d digit matrices
    long double total = 0;
    long zero_rows = 0;

    void run(int depth) {
        const double value = u[depth][0];
        if (value > 0)
            total += std::log(static_cast<long double>(value));
        else
            ++zero_rows;
        if (depth >= K) return;
        for (int s = 0; s < 2; ++s) {
            const auto& M = *D[s];
            for (int j = 0; j < m; ++j) {
                double acc = 0;
                for (int i = 0; i < m; ++i) acc += u[depth][i] * static_cast<double>(M[i][j]);
                u[depth + 1][j] = acc;
            }
            run(depth + 1);
        }
    }
};

}  // namespace detail

// Exhaustive average of log2 count(n) over all n < 2^K, normalized by K so
// the value is comparable to the Lyapunov exponent divided by ln 2.
inline EmpiricalMean empirical_mean(const Automaton& a, int bits) {
    detail::MeanWalk walk;
    walk.D[0] = &a.D0;
    walk.D[1] = &a.D1;
    walk.m = a.m;
    walk.K = bits - 1;  // digits after the leading one
    walk.u.assign(bits, std::vector<double>(a.m));
    std::vector<double> w(a.m);
    for (int i = 0; i < a.m; ++i) w[i] = static_cast<double>(a.w[i]);
    for (int j = 0; j < a.m; ++j) {
        double acc = 0;
        for (int i = 0; i < a.m; ++i) acc += w[i] * static_cast<double>(a.D1[i][j]);
        walk.u[0][j] = acc;
    }
    walk.run(0);
    // The n = 0 term is the count for the empty digit string.
    if (w[0] > 0)
        walk.total += std::log(static_cast<long double>(w[0]));
    else
        ++walk.zero_rows;
    EmpiricalMean out;
    out.bits = bits;
    out.zero_rows = walk.zero_rows;
    const long double denom =
        static_cast<long double>(std::pow(2.0L, bits)) * bits * kLn2;
    out.log2_value = static_cast<double>(walk.total / denom);
    out.ln_value = out.log2_value * static_cast<double>(kLn2);
    return out;
}

// ------------------------------------------------- rewording proof check ---

struct RewordingCheck {
    bool block_matrices = false;   // products D1 D0^j stabilize as displayed
    bool rank_one_parts = false;   // outer-product split of the stable blocks
    bool power_values = false;     // beta^T M^k alpha closed forms
    bool exact_sum = false;        // weighted rational sum collapses to 1
    bool ok() const { return block_matrices && rank_one_parts && power_values && exact_sum; }
};

// Exact verification that rewording the digit stream over zero-run blocks
// (a one followed by j zeros acts as D1 D0^j) reduces the four-term
// recurrence to three block matrices whose weighted log sum is exactly
// ln 2 / 2. All steps are integer or rational arithmetic.
inline RewordingCheck verify_rewording_quadrinomial(const Automaton& a) {
    RewordingCheck out;
    if (a.m != 3) return out;
    const Mz D0 = mz_from_counts(a.D0);
    const Mz D1 = mz_from_counts(a.D1);
    const auto eq = [](const Mz& A, const std::vector<std::vector<long>>& want) {
        for (std::size_t i = 0; i < want.size(); ++i)
            for (std::size_t j = 0; j < want[i].size(); ++j)
                if (A[i][j] != want[i][j]) return false;
        return true;
    };

    // From j = 2 on the block product is constant.
    const Mz B0 = D1;
    const Mz B1 = mz_mul(D1, D0);
    out.block_matrices = eq(B0, {{0, 0, 0}, {2, 0, 0}, {0, 1, 2}}) &&
                         eq(B1, {{0, 0, 0}, {2, 4, 0}, {0, 0, 1}});
    Mz Bj = B1;
    for (int j = 2; j <= 20 && out.block_matrices; ++j) {
        Bj = mz_mul(Bj, D0);
        if (!eq(Bj, {{0, 0, 0}, {2, 4, 4}, {0, 0, 0}})) out.block_matrices = false;
    }
    if (!out.block_matrices) return out;

    // Lower-right 2x2 corners: B0 gives alpha1 beta1^T, B1 gives M, and the
    // stable block gives alpha2 beta2^T.
    const long alpha[2][2] = {{0, 1}, {1, 0}};
    const long beta[2][2] = {{1, 2}, {4, 4}};
    const long M[2][2] = {{4, 0}, {0, 1}};
    auto corner_is = [&](const Mz& A, const long want[2][2]) {
        return A[1][1] == want[0][0] && A[1][2] == want[0][1] && A[2][1] == want[1][0] &&
               A[2][2] == want[1][1];
    };
    const long outer1[2][2] = {{alpha[0][0] * beta[0][0], alpha[0][0] * beta[0][1]},
                               {alpha[0][1] * beta[0][0], alpha[0][1] * beta[0][1]}};
    const long outer2[2][2] = {{alpha[1][0] * beta[1][0], alpha[1][0] * beta[1][1]},
                               {alpha[1][1] * beta[1][0], alpha[1][1] * beta[1][1]}};
    out.rank_one_parts = corner_is(B0, outer1) && corner_is(B1, M) && corner_is(Bj, outer2);
    if (!out.rank_one_parts) return out;

    // beta_j^T M^k alpha_i is a power of two with exponent 1, 2, 2k, 2(k+1).
    out.power_values = true;
    for (int k = 0; k <= 20 && out.power_values; ++k) {
        mpz_class mk0 = 1, mk1 = 1;
        mpz_ui_pow_ui(mk0.get_mpz_t(), 4, k);  // M^k = diag(4^k, 1)
        for (int i = 0; i < 2 && out.power_values; ++i)
            for (int j = 0; j < 2 && out.power_values; ++j) {
                mpz_class got = beta[j][0] * mk0 * alpha[i][0] + beta[j][1] * mk1 * alpha[i][1];
                const long exponent = i == 0 ? (j == 0 ? 1 : 2) : (j == 0 ? 2 * k : 2 * (k + 1));
                mpz_class want = mpz_class(1) << exponent;
                if (got != want) out.power_values = false;
            }
    }
    if (!out.power_values) return out;

    // Weighted sum with block probabilities p1 = 1/2, p2 = 1/4, ratio 1/4:
    // geometric pieces sum to 1/3 + 1/3 + 1/9 + 2/9 = 1, i.e. twice the
    // exponent over ln 2 is exactly one.
    const mpq_class p1(1, 2), p2(1, 4), ratio(1, 4);
    const mpq_class geo = 1 / (1 - ratio);               // sum ratio^k
    const mpq_class geo_k = ratio / ((1 - ratio) * (1 - ratio));  // sum k ratio^k
    const mpq_class t11 = p1 * p1 * 1 * geo;
    const mpq_class t12 = p1 * p2 * 2 * geo;
    const mpq_class t21 = p2 * p1 * 2 * geo_k;
    const mpq_class t22 = p2 * p2 * 2 * (geo_k + geo);
    out.exact_sum = t11 == mpq_class(1, 3) && t12 == mpq_class(1, 3) &&
                    t21 == mpq_class(1, 9) && t22 == mpq_class(2, 9) &&
                    t11 + t12 + t21 + t22 == 1;
    return out;
}

}  // namespace parityrep
