#pragma once

// Exact linear algebra over arbitrary-precision rationals and integer
// polynomials: matrix arithmetic, Kronecker products, characteristic
// polynomials by Faddeev-LeVerrier, and exact polynomial division.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "parityrep/errors.hpp"

namespace parityrep {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RationalMatrix from_counts(const std::vector<std::vector<std::uint64_t>>& M) {
        const int r = static_cast<int>(M.size());
        const int c = r ? static_cast<int>(M[0].size()) : 0;
        RationalMatrix out(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                out.at(i, j) = mpq_class(static_cast<unsigned long>(M[i][j]));
        return out;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    mpq_class& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const mpq_class& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const mpq_class& x : a_)
            if (x != 0) return false;
        return true;
    }

    bool is_nonnegative() const {
        for (const mpq_class& x : a_)
            if (x < 0) return false;
        return true;
    }

    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ContractViolation("matrix shape mismatch in +");
        RationalMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
        return out;
    }

    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ContractViolation("matrix shape mismatch in -");
        RationalMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] - b.a_[i];
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw ContractViolation("matrix shape mismatch in *");
        RationalMatrix out(a.rows_, b.cols_);
        mpq_class term;
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const mpq_class& aik = a.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    term = aik * b.at(k, j);
                    out.at(i, j) += term;
                }
            }
        return out;
    }

    friend RationalMatrix operator*(const mpq_class& s, const RationalMatrix& a) {
        RationalMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = s * a.a_[i];
        return out;
    }

    bool operator==(const RationalMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
    }

    RationalMatrix pow(int e) const {
        if (rows_ != cols_) throw ContractViolation("pow needs a square matrix");
        RationalMatrix r = identity(rows_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    mpq_class trace() const {
        if (rows_ != cols_) throw ContractViolation("trace needs a square matrix");
        mpq_class t = 0;
        for (int i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    mpq_class max_row_sum() const {
        mpq_class best = 0;
        for (int i = 0; i < rows_; ++i) {
            mpq_class s = 0;
            for (int j = 0; j < cols_; ++j) s += abs(at(i, j));
            if (s > best) best = s;
        }
        return best;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpq_class> a_;
};

// Standard Kronecker (direct) product; dimensions multiply.
inline RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

// Integer polynomial, coefficients stored lowest degree first.
class IntPolynomial {
public:
    IntPolynomial() : c_{0} {}
    explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) {
        trim();
    }

    // Convenience matching the printed form: highest degree first.
    static IntPolynomial from_descending(const std::vector<long>& desc) {
        std::vector<mpz_class> c(desc.rbegin(), desc.rend());
        return IntPolynomial(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
    const mpz_class& coeff(long k) const { return c_[k]; }
    const mpz_class& leading() const { return c_.back(); }

    mpq_class evaluate(const mpq_class& x) const {
        mpq_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return IntPolynomial();
        std::vector<mpz_class> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return IntPolynomial(std::move(d));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(c));
    }

    bool operator==(const IntPolynomial& rhs) const { return c_ == rhs.c_; }

    // Exact division test over the rationals; fills quotient (cleared to a
    // primitive integer polynomial) when the remainder vanishes.
    static bool divides(const IntPolynomial& divisor, const IntPolynomial& dividend,
                        IntPolynomial* quotient = nullptr);

    // Substitute x -> x/2 and clear denominators to a primitive polynomial
    // with positive leading coefficient.
    IntPolynomial halve_variable() const {
        std::vector<mpq_class> q(c_.size());
        mpz_class pow = 1;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            q[i] = mpq_class(c_[i]) / mpq_class(pow);
            pow *= 2;
        }
        return clear_denominators(q);
    }

    static IntPolynomial clear_denominators(const std::vector<mpq_class>& q) {
        mpz_class lcm = 1;
        for (const mpq_class& x : q) {
            mpz_class den = x.get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        std::vector<mpz_class> c(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            mpq_class scaled = q[i] * mpq_class(lcm);
            c[i] = scaled.get_num();
        }
        IntPolynomial p{std::move(c)};
        p.make_primitive();
        return p;
    }

    void make_primitive() {
        mpz_class content = 0;
        for (const mpz_class& x : c_) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
        if (content > 1)
            for (mpz_class& x : c_) x /= content;
        if (!is_zero() && leading() < 0)
            for (mpz_class& x : c_) x = -x;
    }

    // Coefficient list, highest degree first.
    std::string print() const {
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            out += c_[i].get_str();
            if (i) out += ' ';
        }
        return out;
    }

private:
    std::vector<mpz_class> c_;

    void trim() {
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
        if (c_.empty()) c_.push_back(0);
    }
};

inline bool IntPolynomial::divides(const IntPolynomial& divisor, const IntPolynomial& dividend,
                                   IntPolynomial* quotient) {
    if (divisor.is_zero()) return dividend.is_zero();
    if (dividend.is_zero()) return false;
    if (divisor.degree() > dividend.degree()) return false;
    std::vector<mpq_class> rem(dividend.c_.size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = mpq_class(dividend.c_[i]);
    const long dq = dividend.degree() - divisor.degree();
    std::vector<mpq_class> quot(dq + 1);
    const mpq_class lead(divisor.leading());
    for (long k = dq; k >= 0; --k) {
        mpq_class factor = rem[k + divisor.degree()] / lead;
        quot[k] = factor;
        if (factor == 0) continue;
        for (long j = 0; j <= divisor.degree(); ++j) rem[k + j] -= factor * mpq_class(divisor.coeff(j));
    }
    for (const mpq_class& r : rem)
        if (r != 0) return false;
    if (quotient) *quotient = clear_denominators(quot);
    return true;
}

// Exact characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
// recurrence, with denominators cleared to a primitive integer polynomial.
inline IntPolynomial char_poly(const RationalMatrix& M) {
    if (M.rows() != M.cols()) throw ContractViolation("char_poly needs a square matrix");
    const int n = M.rows();
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    RationalMatrix Mk(n, n);  // starts as the zero matrix
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i) Mk.at(i, i) += c[n - k + 1];
        Mk = M * Mk;
        c[n - k] = -Mk.trace() / k;
    }
    return IntPolynomial::clear_denominators(c);
}

// Greatest common divisor over Q[x], returned primitive; used to strip
// repeated roots before sign-change bisection.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    while (!b.is_zero()) {
        // Remainder of a by b over the rationals.
        std::vector<mpq_class> rem(a.degree() + 1);
        for (long i = 0; i <= a.degree(); ++i) rem[i] = mpq_class(a.coeff(i));
        const mpq_class lead(b.leading());
        for (long k = a.degree() - b.degree(); k >= 0; --k) {
            mpq_class factor = rem[k + b.degree()] / lead;
            if (factor == 0) continue;
            for (long j = 0; j <= b.degree(); ++j) rem[k + j] -= factor * mpq_class(b.coeff(j));
        }
        while (rem.size() > 1 && rem.back() == 0) rem.pop_back();
        IntPolynomial r = IntPolynomial::clear_denominators(rem);
        a = std::move(b);
        b = std::move(r);
        if (b.degree() == 0 && !b.is_zero()) {
            b = IntPolynomial();  // nonzero constant: coprime
            a = IntPolynomial(std::vector<mpz_class>{1});
        }
    }
    a.make_primitive();
    return a;
}

inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    IntPolynomial q;
    if (!IntPolynomial::divides(g, p, &q))
        throw ContractViolation("gcd does not divide its polynomial");
    return q;
}

}  // namespace parityrep
