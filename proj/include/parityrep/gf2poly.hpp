#pragma once

// Polynomials over GF(2) packed into 64-bit limbs (bit j = coefficient of
// x^j), the row-generation rules for first- and second-order recurrences,
// and the brute-force odd-coefficient count that serves as the oracle for
// every synthesized representation.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parityrep/errors.hpp"

namespace parityrep {

class ParityPoly {
public:
    ParityPoly() = default;

    static ParityPoly zero() { return ParityPoly(); }

    static ParityPoly one() {
        ParityPoly p;
        p.limbs_.push_back(1);
        return p;
    }

    static ParityPoly monomial(long k) {
        ParityPoly p;
        p.set_coeff(k);
        return p;
    }

    // Low-order coefficient first: {1,1,0,1} is 1 + x + x^3.
    static ParityPoly from_coefficients(const std::vector<int>& low_first) {
        ParityPoly p;
        for (std::size_t j = 0; j < low_first.size(); ++j)
            if (low_first[j] & 1) p.set_coeff(static_cast<long>(j));
        return p;
    }

    // Comma-separated coefficient list, constant term first ("1,1,0,1").
    static ParityPoly parse_coeff_list(const std::string& text);

    // Hex digits, most significant limb of the bit string first ("0x4b" or "4b").
    static ParityPoly parse_hex(const std::string& text);

    bool is_zero() const { return limbs_.empty(); }

    // -1 for the zero polynomial.
    long degree() const {
        if (limbs_.empty()) return -1;
        const std::uint64_t top = limbs_.back();
        return static_cast<long>(limbs_.size()) * 64 - 1 -
               static_cast<long>(__builtin_clzll(top));
    }

    int coeff(long j) const {
        if (j < 0) throw ContractViolation("negative coefficient index");
        const std::size_t limb = static_cast<std::size_t>(j) / 64;
        if (limb >= limbs_.size()) return 0;
        return static_cast<int>((limbs_[limb] >> (j % 64)) & 1u);
    }

    void set_coeff(long j) {
        if (j < 0) throw ContractViolation("negative coefficient index");
        const std::size_t limb = static_cast<std::size_t>(j) / 64;
        if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
        limbs_[limb] |= std::uint64_t{1} << (j % 64);
    }

    long popcount() const {
        long n = 0;
        for (std::uint64_t limb : limbs_) n += __builtin_popcountll(limb);
        return n;
    }

    ParityPoly& operator+=(const ParityPoly& rhs) {
        if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
        for (std::size_t i = 0; i < rhs.limbs_.size(); ++i) limbs_[i] ^= rhs.limbs_[i];
        trim();
        return *this;
    }

    friend ParityPoly operator+(ParityPoly lhs, const ParityPoly& rhs) {
        lhs += rhs;
        return lhs;
    }

    // Carry-less shift-xor product.
    friend ParityPoly operator*(const ParityPoly& a, const ParityPoly& b) {
        if (a.is_zero() || b.is_zero()) return ParityPoly();
        const ParityPoly& sparse = a.popcount() <= b.popcount() ? a : b;
        const ParityPoly& dense = a.popcount() <= b.popcount() ? b : a;
        ParityPoly r;
        r.limbs_.assign(sparse.limbs_.size() + dense.limbs_.size(), 0);
        for (std::size_t i = 0; i < sparse.limbs_.size(); ++i) {
            std::uint64_t limb = sparse.limbs_[i];
            while (limb) {
                const int bit = __builtin_ctzll(limb);
                limb &= limb - 1;
                r.xor_shifted(dense, static_cast<long>(i) * 64 + bit);
            }
        }
        r.trim();
        return r;
    }

    // Squaring mod 2 spreads bits to even positions: p(x)^2 = p(x^2).
    ParityPoly squared() const {
        ParityPoly r;
        r.limbs_.assign(limbs_.size() * 2, 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            r.limbs_[2 * i] = spread(static_cast<std::uint32_t>(limbs_[i]));
            r.limbs_[2 * i + 1] = spread(static_cast<std::uint32_t>(limbs_[i] >> 32));
        }
        r.trim();
        return r;
    }

    // Multiplication by x^k.
    ParityPoly shifted(long k) const {
        if (k < 0) throw ContractViolation("negative shift");
        if (is_zero() || k == 0) return *this;
        ParityPoly r;
        r.limbs_.assign(limbs_.size() + static_cast<std::size_t>(k) / 64 + 1, 0);
        r.xor_shifted(*this, k);
        r.trim();
        return r;
    }

    bool operator==(const ParityPoly& rhs) const { return limbs_ == rhs.limbs_; }
    bool operator!=(const ParityPoly& rhs) const { return limbs_ != rhs.limbs_; }

    std::string coeff_list() const {
        if (is_zero()) return "0";
        std::string out;
        const long d = degree();
        for (long j = 0; j <= d; ++j) {
            if (j) out += ',';
            out += coeff(j) ? '1' : '0';
        }
        return out;
    }

    std::string hex() const {
        if (is_zero()) return "0x0";
        static const char digits[] = "0123456789abcdef";
        std::string out;
        bool leading = true;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            for (int shift = 60; shift >= 0; shift -= 4) {
                const int nibble = static_cast<int>((limbs_[i] >> shift) & 0xf);
                if (leading && nibble == 0) continue;
                leading = false;
                out += digits[nibble];
            }
        }
        return "0x" + out;
    }

private:
    std::vector<std::uint64_t> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    void xor_shifted(const ParityPoly& src, long shift) {
        const std::size_t word = static_cast<std::size_t>(shift) / 64;
        const int bit = static_cast<int>(shift % 64);
        const std::size_t need = src.limbs_.size() + word + (bit ? 1 : 0);
        if (limbs_.size() < need) limbs_.resize(need, 0);
        if (bit == 0) {
            for (std::size_t i = 0; i < src.limbs_.size(); ++i)
                limbs_[i + word] ^= src.limbs_[i];
        } else {
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < src.limbs_.size(); ++i) {
                limbs_[i + word] ^= (src.limbs_[i] << bit) | carry;
                carry = src.limbs_[i] >> (64 - bit);
            }
            limbs_[src.limbs_.size() + word] ^= carry;
        }
    }

    // Interleave the 32 input bits with zeros.
    static std::uint64_t spread(std::uint32_t x) {
        std::uint64_t v = x;
        v = (v | (v << 16)) & 0x0000ffff0000ffffULL;
        v = (v | (v << 8)) & 0x00ff00ff00ff00ffULL;
        v = (v | (v << 4)) & 0x0f0f0f0f0f0f0f0fULL;
        v = (v | (v << 2)) & 0x3333333333333333ULL;
        v = (v | (v << 1)) & 0x5555555555555555ULL;
        return v;
    }
};

inline ParityPoly ParityPoly::parse_coeff_list(const std::string& text) {
    ParityPoly p;
    long j = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        if (item != "0" && item != "1")
            throw ContractViolation("coefficient list entries must be 0 or 1: '" + item + "'");
        if (item == "1") p.set_coeff(j);
        ++j;
        pos = comma + 1;
    }
    if (j == 0) throw ContractViolation("empty coefficient list");
    return p;
}

inline ParityPoly ParityPoly::parse_hex(const std::string& text) {
    std::size_t pos = 0;
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) pos = 2;
    if (pos >= text.size()) throw ContractViolation("empty hex string");
    ParityPoly p;
    long bit = 0;
    for (std::size_t i = text.size(); i-- > pos; bit += 4) {
        const char c = text[i];
        int nibble;
        if (c >= '0' && c <= '9') nibble = c - '0';
        else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
        else throw ContractViolation(std::string("bad hex digit '") + c + "'");
        for (int k = 0; k < 4; ++k)
            if (nibble & (1 << k)) p.set_coeff(bit + k);
    }
    return p;
}

// Row-generation rule. Order 1: p_n = q(x) p_{n-1}, p_0 = 1. Order 2:
// p_n = q1(x) p_{n-1} + q2(x) p_{n-2} with explicit p_0, p_1.
struct RecurrenceSpec {
    int order = 1;
    ParityPoly q;                 // order-1 multiplier
    ParityPoly q1, q2, p0, p1;    // order-2 data
    long ell = 0;                 // window width

    static RecurrenceSpec order1(ParityPoly multiplier, long window = 0) {
        RecurrenceSpec s;
        s.order = 1;
        s.q = std::move(multiplier);
        s.ell = window > 0 ? window : s.q.degree();
        s.check();
        return s;
    }

    static RecurrenceSpec order2(ParityPoly q1, ParityPoly q2, ParityPoly p0,
                                 ParityPoly p1, long window) {
        RecurrenceSpec s;
        s.order = 2;
        s.q1 = std::move(q1);
        s.q2 = std::move(q2);
        s.p0 = std::move(p0);
        s.p1 = std::move(p1);
        s.ell = window;
        s.check();
        return s;
    }

    void check() const {
        if (order != 1 && order != 2) throw ContractViolation("order must be 1 or 2");
        if (ell < 1) throw ContractViolation("window width must be positive");
        if (order == 1) {
            if (q.coeff(0) != 1)
                throw ContractViolation("order-1 multiplier needs constant term 1");
        } else {
            if (p0.is_zero()) throw ContractViolation("order-2 base row p0 must be nonzero");
        }
    }
};

inline constexpr std::uint64_t kOrder1RowBudget = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kOrder2RowBudget = std::uint64_t{1} << 16;

// Shared row store used while building representations. Order-2 rows are
// memoized as a consecutive prefix (each row needs its predecessor anyway);
// order-1 rows are memoized by index. Capacity is a row count, not bytes.
class RowCache {
public:
    explicit RowCache(std::size_t capacity = std::size_t{1} << 14)
        : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }

    ParityPoly* find_order1(std::uint64_t n) {
        auto it = by_index_.find(n);
        return it == by_index_.end() ? nullptr : &it->second;
    }

    void store_order1(std::uint64_t n, const ParityPoly& p) {
        if (by_index_.size() < capacity_) by_index_.emplace(n, p);
    }

    std::vector<ParityPoly>& prefix() { return prefix_; }

private:
    std::size_t capacity_;
    std::unordered_map<std::uint64_t, ParityPoly> by_index_;
    std::vector<ParityPoly> prefix_;
};

namespace detail {

// q(x)^n by square-and-multiply; squaring is the cheap bit spread.
inline ParityPoly power_mod2(const ParityPoly& q, std::uint64_t n) {
    if (n == 0) return ParityPoly::one();
    ParityPoly r = ParityPoly::one();
    for (int bit = 63 - __builtin_clzll(n); bit >= 0; --bit) {
        r = r.squared();
        if ((n >> bit) & 1) r = r * q;
    }
    return r;
}

}  // namespace detail

inline ParityPoly row(const RecurrenceSpec& spec, std::uint64_t n, RowCache* cache = nullptr) {
    if (spec.order == 1) {
        if (n > kOrder1RowBudget)
            throw ResourceLimitError("row index " + std::to_string(n) +
                                     " exceeds the order-1 budget");
        if (cache) {
            if (ParityPoly* hit = cache->find_order1(n)) return *hit;
            ParityPoly p = detail::power_mod2(spec.q, n);
            cache->store_order1(n, p);
            return p;
        }
        return detail::power_mod2(spec.q, n);
    }
    if (n > kOrder2RowBudget)
        throw ResourceLimitError("row index " + std::to_string(n) +
                                 " exceeds the order-2 budget");
    if (cache) {
        std::vector<ParityPoly>& seq = cache->prefix();
        if (seq.empty()) {
            seq.push_back(spec.p0);
            seq.push_back(spec.p1);
        }
        if (n < seq.size()) return seq[n];
        if (n < cache->capacity()) {
            while (seq.size() <= n)
                seq.push_back(spec.q1 * seq[seq.size() - 1] + spec.q2 * seq[seq.size() - 2]);
            return seq[n];
        }
        ParityPoly prev = seq[seq.size() - 2];
        ParityPoly cur = seq[seq.size() - 1];
        for (std::uint64_t i = seq.size(); i <= n; ++i) {
            ParityPoly next = spec.q1 * cur + spec.q2 * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }
    if (n == 0) return spec.p0;
    ParityPoly prev = spec.p0;
    ParityPoly cur = spec.p1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        ParityPoly next = spec.q1 * cur + spec.q2 * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// The oracle: number of odd coefficients in row n.
inline long odd_count(const RecurrenceSpec& spec, std::uint64_t n, RowCache* cache = nullptr) {
    return row(spec, n, cache).popcount();
}

// Streams rows 0..n_max in order; much cheaper than row() per index because
// each row extends its predecessor. fn(n, row).
template <typename Fn>
void for_each_row(const RecurrenceSpec& spec, std::uint64_t n_max, Fn&& fn) {
    if (spec.order == 1) {
        ParityPoly cur = ParityPoly::one();
        fn(std::uint64_t{0}, cur);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            cur = cur * spec.q;
            fn(n, cur);
        }
        return;
    }
    ParityPoly prev = spec.p0;
    fn(std::uint64_t{0}, prev);
    if (n_max == 0) return;
    ParityPoly cur = spec.p1;
    fn(std::uint64_t{1}, cur);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        ParityPoly next = spec.q1 * cur + spec.q2 * prev;
        prev = std::move(cur);
        cur = std::move(next);
        fn(n, cur);
    }
}

// Samples the strided pattern of triangle entries characterizing a state.
// Order 1 returns ell entries from one row; order 2 returns 2*ell entries
// (top row first) from rows row_base and row_base + row_stride. Columns past
// a row's degree read as 0; negative bases are contract violations.
inline std::vector<std::uint8_t> window(const RecurrenceSpec& spec, long long row_base,
                                        long long row_stride, long long col_base,
                                        long long col_stride, RowCache* cache = nullptr) {
    if (row_base < 0 || col_base < 0)
        throw ContractViolation("window indices must be nonnegative");
    if (col_stride <= 0 || (spec.order == 2 && row_stride <= 0))
        throw ContractViolation("window strides must be positive");
    std::vector<std::uint8_t> out;
    const long ell = spec.ell;
    if (spec.order == 1) {
        const ParityPoly r = row(spec, static_cast<std::uint64_t>(row_base), cache);
        out.resize(ell);
        for (long j = 0; j < ell; ++j)
            out[j] = static_cast<std::uint8_t>(r.coeff(col_base + j * col_stride));
        return out;
    }
    const ParityPoly top = row(spec, static_cast<std::uint64_t>(row_base), cache);
    const ParityPoly bottom =
        row(spec, static_cast<std::uint64_t>(row_base + row_stride), cache);
    out.resize(2 * ell);
    for (long j = 0; j < ell; ++j) {
        out[j] = static_cast<std::uint8_t>(top.coeff(col_base + j * col_stride));
        out[ell + j] = static_cast<std::uint8_t>(bottom.coeff(col_base + j * col_stride));
    }
    return out;
}

}  // namespace parityrep
