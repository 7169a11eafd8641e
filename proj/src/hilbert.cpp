#include "smrank/hilbert.hpp"

#include <algorithm>

namespace smrank {

void GmrParams::validate() const {
    if (m < 1 || n < 1)
        throw std::invalid_argument("GmrParams: need m, n >= 1");
    if (K < 1)
        throw std::invalid_argument("GmrParams: need K >= 1");
    if (D < 1)
        throw std::invalid_argument("GmrParams: need D >= 1");
    if (r < 0 || r > std::min(m, n))
        throw std::invalid_argument("GmrParams: need 0 <= r <= min(m, n)");
    if (n < r)
        throw std::invalid_argument("GmrParams: need n >= r");
}

std::string to_string(Validity v) {
    switch (v) {
    case Validity::proven: return "proven";
    case Validity::conjectured_overdetermined: return "conjectured_overdetermined";
    case Validity::conjectured_dc_small: return "conjectured_dc_small";
    case Validity::unreliable: return "unreliable";
    }
    return "?";
}

Int module_rank(int n, int r, int dc) {
    if (r < 0 || n < r)
        throw std::invalid_argument("module_rank: need 0 <= r <= n");
    if (dc < 0)
        throw std::invalid_argument("module_rank: need dc >= 0");
    if (r == 0)
        return 1;
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(r),
                                    std::vector<Int>(static_cast<std::size_t>(r)));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                twisted_binom(n - j, dc + j - i);
    return det_int(std::move(m));
}

Int macaulay_cols(const GmrParams& p, int dx, int dc) {
    if (dx < 0 || dc < 0)
        throw std::invalid_argument("macaulay_cols: need dx, dc >= 0");
    Int xcount = binom_ext(p.K + dx - 1, dx);
    if (p.r == 0)
        return xcount;
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(p.r),
                                    std::vector<Int>(static_cast<std::size_t>(p.r)));
    for (int i = 1; i <= p.r; ++i)
        for (int j = 1; j <= p.r; ++j)
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                binom_ext(p.n + dc - i, p.n - j);
    return xcount * det_int(std::move(m));
}

RingDimensions dimensions(const GmrParams& p) {
    RingDimensions d{};
    long m = p.m, n = p.n, r = p.r;
    d.krull_s = r * (m + n - r) + 1;
    d.height_s = m * (n - r);
    d.plucker_dim = r * (n - r) + 1;
    return d;
}

Validity validity_region(const GmrParams& p, int dc) {
    long K = p.K, m = p.m, n = p.n, r = p.r;
    if (K >= m * (n - r))
        return Validity::proven;
    if (K <= (m - r) * (n - r))
        return Validity::conjectured_overdetermined;
    return (dc <= m - r) ? Validity::conjectured_dc_small : Validity::unreliable;
}

TruncatedSeries hs_naive(int m, int n, int r, int dc, int order) {
    if (dc < 1 || r < 1 || r > std::min(m, n))
        throw std::invalid_argument("hs_naive: need dc >= 1, 1 <= r <= min(m, n)");
    TruncatedSeries s(order);
    for (int du = 0; du < order; ++du) {
        Int total = 0;
        for (const Shape& v : partitions(du, r)) {
            Shape right = v;
            for (int& x : right)
                x += dc;
            total += stab(m, v) * stab(n, right);
        }
        s.at(du) = total;
    }
    return s;
}

TruncatedSeries hs_delta(int m, int n, int r, int dc, int order) {
    if (dc < 1 || r < 1 || r > std::min(m, n))
        throw std::invalid_argument("hs_delta: need dc >= 1, 1 <= r <= min(m, n)");
    // entries are genuine infinite series (twisted binomials never vanish),
    // so work at a padded order and cut back after the determinant
    int pad = order + r * (r - 1) / 2;
    std::vector<std::vector<TruncatedSeries>> mat(
        static_cast<std::size_t>(r), std::vector<TruncatedSeries>(static_cast<std::size_t>(r), TruncatedSeries(pad)));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            TruncatedSeries& e = mat[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            for (int l = 0; l < pad; ++l)
                e.at(l) = twisted_binom(m - i, l) * twisted_binom(n - j, l + dc + j - i);
        }
    TruncatedSeries det = series_matrix_det(mat);
    if (det.order() < order)
        throw DivisibilityError("hs_delta: precision loss exceeded headroom");
    return det.truncated(order);
}

namespace {

// B_dc entries: sum_l binom(n+dc-i, l+dc+j-i) binom(m-dc-j, l) t^l,
// a polynomial of degree <= n-j (the first factor cuts the sum).
Poly b_entry(int m, int n, int dc, int i, int j) {
    std::vector<Int> c(static_cast<std::size_t>(std::max(n - j, 0)) + 1);
    for (int l = 0; l <= n - j; ++l)
        c[static_cast<std::size_t>(l)] =
            binom_ext(n + dc - i, l + dc + j - i) * binom_ext(m - dc - j, l);
    return Poly(std::move(c));
}

// A_dc entries: sum_l binom(n+dc-i, l+dc) binom(m-dc-j, l) t^l, degree <= n-i.
Poly a_entry(int m, int n, int dc, int i, int j) {
    std::vector<Int> c(static_cast<std::size_t>(std::max(n - i, 0)) + 1);
    for (int l = 0; l <= n - i; ++l)
        c[static_cast<std::size_t>(l)] =
            binom_ext(n + dc - i, l + dc) * binom_ext(m - dc - j, l);
    return Poly(std::move(c));
}

std::vector<std::vector<Poly>> build_matrix(int m, int n, int r, int dc,
                                            Poly (*entry)(int, int, int, int, int)) {
    std::vector<std::vector<Poly>> mat(static_cast<std::size_t>(r),
                                       std::vector<Poly>(static_cast<std::size_t>(r)));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            mat[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = entry(m, n, dc, i, j);
    return mat;
}

} // namespace

TruncatedSeries hs_B(int m, int n, int r, int dc, int order) {
    if (dc < 1 || r < 1 || r > std::min(m, n))
        throw std::invalid_argument("hs_B: need dc >= 1, 1 <= r <= min(m, n)");
    Poly det = poly_det(build_matrix(m, n, r, dc, &b_entry));
    return series_mul(det.to_series(order), geometric_inverse_pow((m + n - r) * r, 1, order));
}

Poly det_a_shifted(int m, int n, int r, int dc) {
    if (r == 0)
        return Poly::constant(1);
    Poly det = poly_det(build_matrix(m, n, r, dc, &a_entry));
    // divisibility by t^binom(r,2) is a theorem; shifted_down enforces it
    return det.shifted_down(r * (r - 1) / 2);
}

TruncatedSeries hs_A(int m, int n, int r, int dc, int order) {
    if (dc < 1 || r < 1 || r > std::min(m, n))
        throw std::invalid_argument("hs_A: need dc >= 1, 1 <= r <= min(m, n)");
    Poly num = det_a_shifted(m, n, r, dc);
    return series_mul(num.to_series(order), geometric_inverse_pow((m + n - r) * r, 1, order));
}

TruncatedSeries hs_det_sm(int m, int n, int r, int dc, int order) {
    return hs_A(m, n, r, dc, order);
}

namespace {

// numerator of the generic-instance series: det(A_dc(t^D)) (1-t^D)^((m-r)(n-r))
// divided exactly by t^(D binom(r,2))
Poly generic_numerator(const GmrParams& p, int dc) {
    p.validate();
    if (dc < 0)
        throw std::invalid_argument("hs_sm_generic: need dc >= 0");
    // the exponent identity reconciling the two series normalizations
    if (p.m * p.n - (p.m + p.n - p.r) * p.r != (p.m - p.r) * (p.n - p.r))
        throw std::logic_error("exponent identity violated");
    Poly num = det_a_shifted(p.m, p.n, p.r, dc).substituted_power(p.D);
    return num * Poly::one_minus_tpow((p.m - p.r) * (p.n - p.r), p.D);
}

} // namespace

HilbertResult hs_sm_generic(const GmrParams& p, int dc, int order) {
    Poly num = generic_numerator(p, dc);
    TruncatedSeries full = series_mul(num.to_series(order), geometric_inverse_pow(p.K, 1, order));
    TruncatePlusResult t = truncate_plus(full);
    HilbertResult res;
    res.series = t.series;
    res.terminated = t.terminated;
    if (t.terminated)
        res.reg_degree = t.series.order(); // last kept index + 1
    res.validity = validity_region(p, dc);
    return res;
}

RationalForm hs_sm_rational(const GmrParams& p, int dc) {
    Poly num = generic_numerator(p, dc);
    const Poly one_minus_t = Poly(std::vector<Int>{1, -1});
    int den = p.K;
    while (den > 0 && !num.is_zero() && num.eval(1) == 0) {
        num = num.div_exact(one_minus_t);
        --den;
    }
    RationalForm f;
    f.numerator = num.coeffs();
    f.denom_pow = den;
    return f;
}

std::optional<int> regularity_degree(const GmrParams& p, int dc, int order_cap) {
    int order = 64;
    for (;;) {
        if (order > order_cap)
            order = order_cap;
        HilbertResult h = hs_sm_generic(p, dc, order);
        if (h.terminated)
            return h.reg_degree;
        if (order == order_cap)
            return std::nullopt;
        order *= 2;
    }
}

} // namespace smrank
