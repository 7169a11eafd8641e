#pragma once

#include "smrank/bigint.hpp"

#include <optional>
#include <vector>

namespace smrank {

// Raised when a division that must be exact (a theorem-level invariant of
// the determinant formulas) is not.  Seeing it means a formula bug, not a
// data problem.
struct DivisibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// TruncatedSeries: an element of Z[[t]] known modulo t^order.
// ---------------------------------------------------------------------------
//
// coeffs[i] is the coefficient of t^i, 0 <= i < order.  All arithmetic is
// exact; equality compares order and all coefficients.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : coeffs_(static_cast<std::size_t>(order)) {
        if (order < 0)
            throw std::invalid_argument("TruncatedSeries: negative order");
    }
    explicit TruncatedSeries(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {}

    static TruncatedSeries constant(const Int& c, int order) {
        TruncatedSeries s(order);
        if (order > 0)
            s.coeffs_[0] = c;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()); }
    const Int& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    Int& at(int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    // index of the first non-zero coefficient, or order() if none
    int valuation() const;

    bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    // drop coefficients at or above new_order (must not exceed order())
    TruncatedSeries truncated(int new_order) const;

private:
    std::vector<Int> coeffs_;
};

// Ring operations.  Mixed orders truncate to the minimum.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const Int& c, const TruncatedSeries& a);

// Expansion of 1/(1-t^d)^N: coefficient of t^(d*u) is binom(N-1+u, u).
TruncatedSeries geometric_inverse_pow(int n_pow, int d, int order);

// s / t^e.  The first e coefficients must vanish; order drops by e.
TruncatedSeries shift_div(const TruncatedSeries& s, int e);

// Exact division q = num/den in Z[[t]], valid to order
// min(num.order, den.order) - valuation(den).  Throws DivisibilityError if
// the quotient does not exist over Z within the known prefix.
TruncatedSeries series_div_exact(const TruncatedSeries& num, const TruncatedSeries& den);

// [.]_+ truncation: keep the prefix strictly before the first coefficient
// <= 0.  terminated is false when no such coefficient exists within order,
// in which case the series is returned unchanged.
struct TruncatePlusResult {
    TruncatedSeries series;
    bool terminated = false;
};
TruncatePlusResult truncate_plus(const TruncatedSeries& s);

// Determinant of a square matrix of series with a common order: Leibniz
// expansion for p <= 4, fraction-free Bareiss elimination beyond.  Divisions
// in the Bareiss path are exact in Z[[t]]; each one by a divisor of
// valuation v costs v orders of precision, so callers supply headroom.
TruncatedSeries series_matrix_det(const std::vector<std::vector<TruncatedSeries>>& m);

// ---------------------------------------------------------------------------
// Poly: exact dense polynomial over Z.
// ---------------------------------------------------------------------------
//
// Normalized (no trailing zero coefficients; zero polynomial is empty).
// The Hilbert-series numerators are genuine polynomials, so determinant
// work happens here with no truncation at all.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static Poly constant(const Int& v) { return Poly(std::vector<Int>{v}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    int valuation() const;                                         // degree()+1 convention not used; throws on zero
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(int i) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;

    // multiply by t^e
    Poly shifted_up(int e) const;
    // divide by t^e; throws DivisibilityError if a low coefficient is non-zero
    Poly shifted_down(int e) const;
    // exact division; throws DivisibilityError if the remainder is non-zero
    Poly div_exact(const Poly& d) const;

    // substitute t -> t^d
    Poly substituted_power(int d) const;

    Int eval(const Int& x) const;

    // view as a truncated series
    TruncatedSeries to_series(int order) const;

    // (1 - t^d)^n
    static Poly one_minus_tpow(int n, int d);

private:
    void normalize();
    std::vector<Int> c_;
};

// Exact determinant of a polynomial matrix (Leibniz for p <= 4, fraction-free
// Bareiss with exact polynomial division beyond).
Poly poly_det(const std::vector<std::vector<Poly>>& m);

} // namespace smrank
