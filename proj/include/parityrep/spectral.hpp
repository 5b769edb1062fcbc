#pragma once

// Growth exponents from the representation matrices: certified largest real
// roots via Sturm-sequence bisection, Perron roots of D0 + D1 and of the
// Kronecker sum, and high-precision log printing through MPFR.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "parityrep/automaton.hpp"
#include "parityrep/errors.hpp"
#include "parityrep/rational.hpp"

namespace parityrep {

namespace detail {

// Sturm chain: p0 squarefree, p1 = p0', then negated remainders. Content is
// stripped with positive factors only so sign sequences are preserved.
inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
    std::vector<IntPolynomial> chain;
    IntPolynomial a = squarefree_part(p);
    a.make_primitive();
    chain.push_back(a);
    IntPolynomial b = a.derivative();
    while (!b.is_zero()) {
        chain.push_back(b);
        std::vector<mpq_class> rem(a.degree() + 1);
        for (long i = 0; i <= a.degree(); ++i) rem[i] = mpq_class(a.coeff(i));
        const mpq_class lead(b.leading());
        for (long k = a.degree() - b.degree(); k >= 0; --k) {
            mpq_class factor = rem[k + b.degree()] / lead;
            if (factor == 0) continue;
            for (long j = 0; j <= b.degree(); ++j) rem[k + j] -= factor * mpq_class(b.coeff(j));
        }
        while (rem.size() > 1 && rem.back() == 0) rem.pop_back();
        for (mpq_class& r : rem) r = -r;
        mpz_class lcm = 1;
        for (const mpq_class& r : rem)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), mpq_class(r).get_den().get_mpz_t());
        std::vector<mpz_class> c(rem.size());
        for (std::size_t i = 0; i < rem.size(); ++i) c[i] = mpq_class(rem[i] * lcm).get_num();
        mpz_class content = 0;
        for (const mpz_class& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
        if (content > 1)
            for (mpz_class& x : c) x /= content;
        a = std::move(b);
        b = IntPolynomial(std::move(c));
    }
    return chain;
}

inline int sign_of(const mpq_class& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

inline int sturm_variations(const std::vector<IntPolynomial>& chain, const mpq_class& x) {
    int variations = 0, prev = 0;
    for (const IntPolynomial& p : chain) {
        const int s = sign_of(p.evaluate(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

}  // namespace detail

// Number of distinct real roots of p in (a, b].
inline int count_real_roots(const IntPolynomial& p, const mpq_class& a, const mpq_class& b) {
    const auto chain = detail::sturm_chain(p);
    return detail::sturm_variations(chain, a) - detail::sturm_variations(chain, b);
}

// Largest real root of p, certified within tol by Sturm bisection.
// Throws if p has no real root in (-bound, bound].
inline mpq_class largest_real_root(const IntPolynomial& p, mpq_class bound,
                                   const mpq_class& tol = mpq_class(1, mpz_class("1" + std::string(36, '0')))) {
    if (p.degree() < 1) throw ContractViolation("largest_real_root of a constant");
    const auto chain = detail::sturm_chain(p);
    mpq_class lo = -bound, hi = bound;
    if (detail::sturm_variations(chain, lo) - detail::sturm_variations(chain, hi) < 1)
        throw ContractViolation("no real root inside the given bound");
    const int v_hi = detail::sturm_variations(chain, hi);
    while (hi - lo > tol) {
        mpq_class mid = (lo + hi) / 2;
        if (detail::sturm_variations(chain, mid) - v_hi >= 1)
            lo = mid;  // at least one root in (mid, hi]
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// Crude double-precision spectral radius estimate by power iteration on
// M + I; used only as a cross-check that the certified root is the radius.
inline double spectral_radius_estimate(const RationalMatrix& M, int iters = 2000) {
    const int n = M.rows();
    std::vector<double> md(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) md[static_cast<std::size_t>(i) * n + j] = M.at(i, j).get_d();
    std::vector<double> v(n, 1.0), u(n);
    double lambda = 0;
    for (int it = 0; it < iters; ++it) {
        double norm = 0;
        for (int i = 0; i < n; ++i) {
            double s = v[i];
            for (int j = 0; j < n; ++j) s += md[static_cast<std::size_t>(i) * n + j] * v[j];
            u[i] = s;
            norm = std::max(norm, std::fabs(s));
        }
        if (norm == 0) return 0;
        lambda = norm;
        for (int i = 0; i < n; ++i) v[i] = u[i] / norm;
    }
    return lambda - 1.0;
}

// Perron root of a nonnegative matrix: the spectral radius, which is itself
// an eigenvalue, located as the largest real root of the characteristic
// polynomial.
inline mpq_class perron_root(const RationalMatrix& M) {
    if (!M.is_nonnegative()) throw ContractViolation("perron_root needs a nonnegative matrix");
    if (M.is_zero()) return 0;
    const IntPolynomial p = char_poly(M);
    const mpq_class root = largest_real_root(p, M.max_row_sum() + 1);
    const double est = spectral_radius_estimate(M);
    if (std::fabs(root.get_d() - est) > 1e-4 * (1.0 + std::fabs(est)))
        throw ContractViolation("certified root disagrees with power iteration");
    return root;
}

inline std::string mpq_to_decimal(const mpq_class& x, int digits = 25) {
    mpfr_t f;
    mpfr_init2(f, 256);
    mpfr_set_q(f, x.get_mpq_t(), MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", digits, f);
    mpfr_clear(f);
    return buf;
}

struct Log2Value {
    double value = 0;
    std::string decimal;  // 25 places
};

// log2(x) - subtract, evaluated at 256-bit precision.
inline Log2Value log2_value(const mpq_class& x, long subtract = 0) {
    if (x <= 0) throw ContractViolation("log2 of a nonpositive value");
    mpfr_t f;
    mpfr_init2(f, 256);
    mpfr_set_q(f, x.get_mpq_t(), MPFR_RNDN);
    mpfr_log2(f, f, MPFR_RNDN);
    mpfr_sub_si(f, f, subtract, MPFR_RNDN);
    Log2Value out;
    out.value = mpfr_get_d(f, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.25Rf", f);
    out.decimal = buf;
    mpfr_clear(f);
    return out;
}

inline RationalMatrix digit_sum_matrix(const Automaton& a) {
    return RationalMatrix::from_counts(a.D0) + RationalMatrix::from_counts(a.D1);
}

inline RationalMatrix kronecker_sum_matrix(const Automaton& a) {
    const RationalMatrix d0 = RationalMatrix::from_counts(a.D0);
    const RationalMatrix d1 = RationalMatrix::from_counts(a.D1);
    return kronecker(d0, d0) + kronecker(d1, d1);
}

struct GrowthExponents {
    mpq_class perron;           // Perron root of D0 + D1
    std::string perron_decimal;
    double average = 0;         // log2(perron) - 1
    std::string average_decimal;
    std::string char_poly;      // coefficients, highest degree first
};

// Average growth: sum_{n < N} count(n) ~ N^(1 + average).
inline GrowthExponents growth_exponents(const Automaton& a) {
    GrowthExponents out;
    const RationalMatrix S = digit_sum_matrix(a);
    out.perron = perron_root(S);
    out.perron_decimal = mpq_to_decimal(out.perron);
    const Log2Value l = log2_value(out.perron, 1);
    out.average = l.value;
    out.average_decimal = l.decimal;
    out.char_poly = char_poly(S).print();
    return out;
}

struct VarianceExponent {
    mpq_class perron;           // Perron root of D0 (x) D0 + D1 (x) D1
    mpq_class halved;           // perron / 2
    std::string halved_decimal;
    double exponent = 0;        // log2(perron / 2)
    std::string exponent_decimal;
};

// Second-moment growth: Var(count over n < N) ~ N^exponent when this exceeds
// twice the average exponent's first moment contribution.
inline VarianceExponent variance_exponent(const Automaton& a) {
    VarianceExponent out;
    out.perron = perron_root(kronecker_sum_matrix(a));
    out.halved = out.perron / 2;
    out.halved_decimal = mpq_to_decimal(out.halved);
    const Log2Value l = log2_value(out.perron, 1);
    out.exponent = l.value;
    out.exponent_decimal = l.decimal;
    return out;
}

struct MinPolyCheck {
    bool divides_char_poly = false;
    bool root_matches = false;
    std::string largest_root_decimal;
    bool ok() const { return divides_char_poly && root_matches; }
};

// A candidate minimal polynomial must divide the characteristic polynomial
// exactly and have the certified Perron root as its own largest real root to
// at least 25 digits.
inline MinPolyCheck verify_min_poly(const IntPolynomial& candidate, const RationalMatrix& M,
                                    const mpq_class& root) {
    MinPolyCheck out;
    const IntPolynomial p = char_poly(M);
    out.divides_char_poly = IntPolynomial::divides(candidate, p);
    if (!out.divides_char_poly) return out;
    const mpq_class r = largest_real_root(candidate, M.max_row_sum() + 1);
    mpq_class diff = r - root;
    if (diff < 0) diff = -diff;
    out.root_matches = diff < mpq_class(1, mpz_class("1" + std::string(25, '0')));
    out.largest_root_decimal = mpq_to_decimal(r);
    return out;
}

}  // namespace parityrep
