#pragma once

#include "smrank/combinatorics.hpp"
#include "smrank/series.hpp"

#include <optional>
#include <string>

namespace smrank {

// One generalized rank-fall instance family: an m x n matrix whose entries
// are homogeneous degree-D forms in K variables, with target rank r.
struct GmrParams {
    int m = 0;
    int n = 0;
    int K = 0;
    int r = 0;
    int D = 1;

    // r <= min(m, n), n >= r, K >= 1, D >= 1, m, n >= 1 (r = 0 is the
    // degenerate square-system case and is allowed)
    void validate() const;
};

enum class Validity {
    proven,
    conjectured_overdetermined,
    conjectured_dc_small,
    unreliable,
};

std::string to_string(Validity v);

struct HilbertResult {
    TruncatedSeries series;            // after the [.]_+ truncation
    bool terminated = false;           // whether the truncation fired within order
    std::optional<int> reg_degree;     // degree of the truncated series + 1
    Validity validity = Validity::proven;
};

// rank of the degree-dc component of the minor-variable algebra:
//   det( [n-j; dc+j-i] )  over twisted binomials, 1 <= i,j <= r.
// Equals 1 for dc = 0.
Int module_rank(int n, int r, int dc);

// Number of columns of the bidegree-(dx, dc) Macaulay matrix:
//   binom(K+dx-1, dx) * det( binom(n+dc-i, n-j) ).
Int macaulay_cols(const GmrParams& p, int dx, int dc);

struct RingDimensions {
    long krull_s;      // r(m+n-r) + 1
    long height_s;     // m(n-r)
    long plucker_dim;  // r(n-r) + 1
};
RingDimensions dimensions(const GmrParams& p);

// Where the closed-form series is proven generic, conjectured, or known to
// disagree with experiments.
Validity validity_region(const GmrParams& p, int dc);

// ---------------------------------------------------------------------------
// The four series engines for the degree-dc minor-variable module (no D, no
// K: these are the series in the matrix-variable grading).  All four agree
// coefficientwise; they differ only in how the computation is organized.
// ---------------------------------------------------------------------------

// partition sum of products of tableau-count determinants
TruncatedSeries hs_naive(int m, int n, int r, int dc, int order);

// determinant of the r x r matrix of twisted-binomial series
TruncatedSeries hs_delta(int m, int n, int r, int dc, int order);

// det(B_dc(t)) / (1-t)^((m+n-r)r), B entries are polynomials
TruncatedSeries hs_B(int m, int n, int r, int dc, int order);

// det(A_dc(t)) / (t^binom(r,2) (1-t)^((m+n-r)r))
TruncatedSeries hs_A(int m, int n, int r, int dc, int order);

// alias of hs_A: the series of the determinantal module in the matrix
// variables, addressable on its own
TruncatedSeries hs_det_sm(int m, int n, int r, int dc, int order);

// Exact numerator polynomial det(A_dc(t))/t^binom(r,2) (r = 0 gives 1).
// Exposed for the engines and the rational form.
Poly det_a_shifted(int m, int n, int r, int dc);

// ---------------------------------------------------------------------------
// The generic-instance series for the full bigraded system:
//   [ det(A_dc(t^D)) (1-t^D)^((m-r)(n-r)) / (t^(D binom(r,2)) (1-t)^K) ]_+
// dc = 0 degenerates to the classical minors system, r = 0 to a generic
// square system of mn forms.
// ---------------------------------------------------------------------------
HilbertResult hs_sm_generic(const GmrParams& p, int dc, int order);

// Same series as a reduced rational form: numerator over (1-t)^denom_pow
// with all common (1-t) factors cancelled exactly.
struct RationalForm {
    std::vector<Int> numerator;
    int denom_pow = 0;
};
RationalForm hs_sm_rational(const GmrParams& p, int dc);

// Degree of regularity: truncated-series degree + 1, growing the working
// order geometrically up to order_cap.  nullopt if the series never
// truncates within the cap.
std::optional<int> regularity_degree(const GmrParams& p, int dc, int order_cap = 512);

} // namespace smrank
