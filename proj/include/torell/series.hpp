#pragma once
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "torell/rational.hpp"

namespace torell {

// Sentinel precision for exactly known series (polynomials, monomials).
inline constexpr int kExactPrec = 1 << 24;
inline int clamp_prec(long p) { return p >= kExactPrec ? kExactPrec : static_cast<int>(p); }

// ---------------------------------------------------------------------------
// Univariate power series over Q, truncated at degree `prec`: terms of degree
// >= prec are dropped, everything below is exact.
class UniSeries {
  public:
    explicit UniSeries(int prec = 0) : prec_(prec) {}
    static UniSeries zero(int prec) { return UniSeries(prec); }
    static UniSeries constant(const Q& c, int prec);
    static UniSeries var(int prec); // t

    int precision() const { return prec_; }
    Q coeff(int i) const;
    void set_coeff(int i, const Q& v);
    // Smallest exponent with a nonzero coefficient; `prec` when none stored.
    int order() const;
    bool is_zero() const { return order() >= prec_; }
    std::size_t term_count() const;

    UniSeries truncated(int prec) const;
    UniSeries operator+(const UniSeries& o) const;
    UniSeries operator-(const UniSeries& o) const;
    UniSeries operator-() const;
    UniSeries operator*(const UniSeries& o) const;
    UniSeries scaled(const Q& c) const;
    // Multiply by t^n (n >= 0).
    UniSeries shifted(int n) const;
    bool operator==(const UniSeries& o) const;

    // this(inner), requires inner.order() >= 1.
    UniSeries compose(const UniSeries& inner) const;
    UniSeries derivative() const;
    // Termwise antiderivative with zero constant term.
    UniSeries integral() const;
    // Multiplicative inverse, requires coeff(0) != 0.
    UniSeries unit_inverse() const;
    // Compositional inverse g with g(this(t)) = t, requires order exactly 1.
    UniSeries reversion() const;

  private:
    std::vector<Q> c_; // c_[i] = coefficient of t^i, size <= prec_
    int prec_;
};

// ---------------------------------------------------------------------------
// Univariate Laurent series: finite principal part (negative exponents) plus
// a truncated regular part. Coefficients at exponents < prec are exact.
class LaurentTail {
  public:
    explicit LaurentTail(int prec = 0) : prec_(prec) {}
    static LaurentTail from_series(const UniSeries& s);
    static LaurentTail monomial(int exp, const Q& c, int prec);

    int precision() const { return prec_; }
    Q coeff(int e) const;
    void set_coeff(int e, const Q& v);
    // Smallest exponent carrying a nonzero coefficient, `prec` when none.
    int order() const;
    bool is_zero() const { return terms_.empty(); }

    std::map<int, Q> principal_part() const; // negative exponents only
    UniSeries regular_part() const;
    const std::map<int, Q>& terms() const { return terms_; }

    LaurentTail truncated(int prec) const;
    LaurentTail operator+(const LaurentTail& o) const;
    LaurentTail operator-(const LaurentTail& o) const;
    LaurentTail operator-() const;
    LaurentTail operator*(const LaurentTail& o) const;
    LaurentTail scaled(const Q& c) const;
    LaurentTail shifted(int n) const; // multiply by t^n, any sign
    bool operator==(const LaurentTail& o) const;

    // Multiplicative inverse; the lowest-order coefficient must be nonzero.
    LaurentTail inverse() const;

  private:
    void drop_zeros_and_tail();
    std::map<int, Q> terms_;
    int prec_;
};

// s has a single simple zero in its variable (order exactly 1); returns 1/s
// with a single order-1 pole. Round trip s * inverse = 1 within precision.
LaurentTail laurent_inverse(const UniSeries& s);

// ---------------------------------------------------------------------------
// Bivariate power series truncated at *total* degree `prec`.
class BiSeries {
  public:
    explicit BiSeries(int prec = 0) : prec_(prec) {}
    static BiSeries zero(int prec) { return BiSeries(prec); }
    static BiSeries constant(const Q& c, int prec);
    static BiSeries var(int which, int prec); // 0 -> t1, 1 -> t2
    static BiSeries from_uni(const UniSeries& s, int which);

    int precision() const { return prec_; }
    Q coeff(int i, int j) const;
    void set_coeff(int i, int j, const Q& v);
    const std::map<std::pair<int, int>, Q>& terms() const { return terms_; }
    // Smallest total degree of a stored term; `prec` when empty.
    int order() const;
    bool is_zero() const { return terms_.empty(); }

    BiSeries truncated(int prec) const;
    BiSeries operator+(const BiSeries& o) const;
    BiSeries operator-(const BiSeries& o) const;
    BiSeries operator-() const;
    BiSeries operator*(const BiSeries& o) const;
    BiSeries scaled(const Q& c) const;
    bool operator==(const BiSeries& o) const;

    BiSeries swap_vars() const;
    BiSeries d1() const; // partial derivative in t1
    BiSeries d2() const;
    UniSeries at_t2_zero() const;
    // Substitute both variables; inners need order >= 1.
    BiSeries compose(const BiSeries& in1, const BiSeries& in2) const;
    // Multiplicative inverse, requires coeff(0,0) != 0.
    BiSeries unit_inverse() const;

  private:
    std::map<std::pair<int, int>, Q> terms_; // (i, j) -> coeff, i + j < prec_
    int prec_;
};

// outer(inner) for univariate outer, bivariate inner with inner.order() >= 1.
BiSeries compose_uni(const UniSeries& outer, const BiSeries& inner);

// ---------------------------------------------------------------------------
// Trivariate series truncated at total degree, just enough for the
// associativity oracle F(F(t1,t2),t3) = F(t1,F(t2,t3)).
class TriSeries {
  public:
    explicit TriSeries(int prec = 0) : prec_(prec) {}
    static TriSeries from_bi(const BiSeries& s, int v1, int v2);
    static TriSeries var(int which, int prec);

    int precision() const { return prec_; }
    int order() const;
    bool is_zero() const { return terms_.empty(); }
    Q coeff(int i, int j, int k) const;

    TriSeries operator+(const TriSeries& o) const;
    TriSeries operator-(const TriSeries& o) const;
    TriSeries operator*(const TriSeries& o) const;
    bool operator==(const TriSeries& o) const;

  private:
    std::map<std::array<int, 3>, Q> terms_;
    int prec_;
};

// outer(in1, in2) with trivariate arguments of order >= 1.
TriSeries compose_bi(const BiSeries& outer, const TriSeries& in1, const TriSeries& in2);

} // namespace torell
