#include "smrank/series.hpp"

#include <algorithm>

namespace smrank {

int TruncatedSeries::valuation() const {
    for (int i = 0; i < order(); ++i)
        if (coeffs_[static_cast<std::size_t>(i)] != 0)
            return i;
    return order();
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    if (new_order < 0 || new_order > order())
        throw std::invalid_argument("TruncatedSeries::truncated: bad order");
    return TruncatedSeries(std::vector<Int>(coeffs_.begin(), coeffs_.begin() + new_order));
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (int i = 0; i < n; ++i)
        r.at(i) = a[i] + b[i];
    return r;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (int i = 0; i < n; ++i)
        r.at(i) = a[i] - b[i];
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    Int t;
    for (int i = 0; i < std::min(a.order(), n); ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; i + j < n && j < b.order(); ++j) {
            if (b[j] == 0)
                continue;
            t = a[i] * b[j];
            r.at(i + j) += t;
        }
    }
    return r;
}

TruncatedSeries series_scale(const Int& c, const TruncatedSeries& a) {
    TruncatedSeries r(a.order());
    for (int i = 0; i < a.order(); ++i)
        r.at(i) = c * a[i];
    return r;
}

TruncatedSeries geometric_inverse_pow(int n_pow, int d, int order) {
    if (n_pow < 0 || d < 1)
        throw std::invalid_argument("geometric_inverse_pow: need N >= 0, d >= 1");
    TruncatedSeries r(order);
    if (order == 0)
        return r;
    if (n_pow == 0) {
        r.at(0) = 1;
        return r;
    }
    for (int u = 0; d * u < order; ++u)
        r.at(d * u) = binom_ext(n_pow - 1 + u, u);
    return r;
}

TruncatedSeries shift_div(const TruncatedSeries& s, int e) {
    if (e < 0)
        throw std::invalid_argument("shift_div: negative shift");
    if (e > s.order())
        throw DivisibilityError("shift_div: shift exceeds order");
    for (int i = 0; i < e; ++i)
        if (s[i] != 0)
            throw DivisibilityError("shift_div: non-zero coefficient below t^e");
    TruncatedSeries r(s.order() - e);
    for (int i = 0; i < r.order(); ++i)
        r.at(i) = s[i + e];
    return r;
}

TruncatedSeries series_div_exact(const TruncatedSeries& num, const TruncatedSeries& den) {
    int v = den.valuation();
    if (v == den.order())
        throw DivisibilityError("series_div_exact: divisor is zero within its order");
    TruncatedSeries n = shift_div(num, std::min(v, num.order()));
    int out = std::min(n.order(), den.order() - v);
    TruncatedSeries q(out);
    const Int& lead = den[v];
    Int acc, t;
    for (int k = 0; k < out; ++k) {
        acc = n[k];
        for (int i = 0; i < k; ++i) {
            t = q[i] * den[v + (k - i)];
            acc -= t;
        }
        if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
            throw DivisibilityError("series_div_exact: quotient not integral");
        mpz_divexact(q.at(k).get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    }
    return q;
}

TruncatePlusResult truncate_plus(const TruncatedSeries& s) {
    for (int i = 0; i < s.order(); ++i) {
        if (s[i] <= 0)
            return {s.truncated(i), true};
    }
    return {s, false};
}

namespace {

TruncatedSeries det_leibniz(const std::vector<std::vector<TruncatedSeries>>& m, int order) {
    const int p = static_cast<int>(m.size());
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    TruncatedSeries det(order);
    do {
        int inv = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)])
                    ++inv;
        TruncatedSeries term = TruncatedSeries::constant(1, order);
        for (int i = 0; i < p; ++i)
            term = series_mul(term, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        det = (inv % 2 == 0) ? series_add(det, term) : series_sub(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

TruncatedSeries det_bareiss_series(std::vector<std::vector<TruncatedSeries>> a) {
    const std::size_t p = a.size();
    int sign = 1;
    TruncatedSeries prev = TruncatedSeries::constant(1, a[0][0].order());
    for (std::size_t k = 0; k + 1 < p; ++k) {
        // pick the pivot of smallest valuation to minimize precision loss
        std::size_t best = p;
        int best_val = 0;
        for (std::size_t i = k; i < p; ++i) {
            int v = a[i][k].valuation();
            if (v < a[i][k].order() && (best == p || v < best_val)) {
                best = i;
                best_val = v;
            }
        }
        if (best == p) {
            // column is zero within the tracked order
            int ord = a[k][k].order();
            for (std::size_t i = k; i < p; ++i)
                for (std::size_t j = k; j < p; ++j)
                    ord = std::min(ord, a[i][j].order());
            return TruncatedSeries(ord);
        }
        if (best != k) {
            std::swap(a[k], a[best]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < p; ++i) {
            for (std::size_t j = k + 1; j < p; ++j) {
                TruncatedSeries num =
                    series_sub(series_mul(a[k][k], a[i][j]), series_mul(a[i][k], a[k][j]));
                a[i][j] = series_div_exact(num, prev);
            }
        }
        prev = a[k][k];
    }
    TruncatedSeries det = a[p - 1][p - 1];
    return sign > 0 ? det : series_sub(TruncatedSeries(det.order()), det);
}

} // namespace

TruncatedSeries series_matrix_det(const std::vector<std::vector<TruncatedSeries>>& m) {
    const std::size_t p = m.size();
    if (p == 0)
        return TruncatedSeries::constant(1, 1);
    int order = m[0][0].order();
    for (const auto& row : m) {
        if (row.size() != p)
            throw std::invalid_argument("series_matrix_det: matrix not square");
        for (const auto& e : row)
            if (e.order() != order)
                throw std::invalid_argument("series_matrix_det: mixed orders");
    }
    if (p <= 4)
        return det_leibniz(m, order);
    return det_bareiss_series(m);
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

int Poly::valuation() const {
    if (is_zero())
        throw std::domain_error("Poly::valuation of zero");
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            return static_cast<int>(i);
    return 0; // unreachable
}

const Int& Poly::coeff(int i) const {
    static const Int zero = 0;
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return zero;
    return c_[static_cast<std::size_t>(i)];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size())
            r[i] += c_[i];
        if (i < o.c_.size())
            r[i] += o.c_[i];
    }
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Int> r(c_);
    for (auto& x : r)
        x = -x;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero())
        return Poly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1);
    Int t;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0)
                continue;
            t = c_[i] * o.c_[j];
            r[i + j] += t;
        }
    }
    return Poly(std::move(r));
}

Poly Poly::shifted_up(int e) const {
    if (is_zero())
        return Poly();
    std::vector<Int> r(c_.size() + static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i + static_cast<std::size_t>(e)] = c_[i];
    return Poly(std::move(r));
}

Poly Poly::shifted_down(int e) const {
    if (e == 0)
        return *this;
    if (is_zero())
        return Poly();
    if (static_cast<std::size_t>(e) > c_.size())
        throw DivisibilityError("Poly::shifted_down: degree too small");
    for (int i = 0; i < e; ++i)
        if (c_[static_cast<std::size_t>(i)] != 0)
            throw DivisibilityError("Poly::shifted_down: non-zero low coefficient");
    return Poly(std::vector<Int>(c_.begin() + e, c_.end()));
}

Poly Poly::div_exact(const Poly& d) const {
    if (d.is_zero())
        throw DivisibilityError("Poly::div_exact: division by zero");
    if (is_zero())
        return Poly();
    int v = d.valuation();
    Poly num = shifted_down(v); // throws if this has lower valuation
    Poly den = d.shifted_down(v);
    if (num.degree() < den.degree())
        throw DivisibilityError("Poly::div_exact: degree mismatch");
    // low-order-first exact division; every step divides exactly when the
    // quotient is integral
    std::size_t qlen = static_cast<std::size_t>(num.degree() - den.degree()) + 1;
    std::vector<Int> q(qlen);
    const Int& lead = den.c_[0];
    Int acc, t;
    for (std::size_t k = 0; k < qlen; ++k) {
        acc = num.coeff(static_cast<int>(k));
        for (std::size_t i = 0; i < k; ++i) {
            if (q[i] == 0)
                continue;
            t = q[i] * den.coeff(static_cast<int>(k - i));
            acc -= t;
        }
        if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
            throw DivisibilityError("Poly::div_exact: quotient not integral");
        mpz_divexact(q[k].get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    }
    Poly quot{std::move(q)};
    // confirm the high part cancels as well
    if (quot * den != num)
        throw DivisibilityError("Poly::div_exact: remainder non-zero");
    return quot;
}

Poly Poly::substituted_power(int d) const {
    if (is_zero())
        return Poly();
    std::vector<Int> r(static_cast<std::size_t>(degree()) * static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i * static_cast<std::size_t>(d)] = c_[i];
    return Poly(std::move(r));
}

Int Poly::eval(const Int& x) const {
    Int acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

TruncatedSeries Poly::to_series(int order) const {
    TruncatedSeries s(order);
    for (int i = 0; i < order && i < static_cast<int>(c_.size()); ++i)
        s.at(i) = c_[static_cast<std::size_t>(i)];
    return s;
}

Poly Poly::one_minus_tpow(int n, int d) {
    if (n < 0 || d < 1)
        throw std::invalid_argument("Poly::one_minus_tpow: need n >= 0, d >= 1");
    std::vector<Int> r(static_cast<std::size_t>(n) * static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= n; ++k)
        r[static_cast<std::size_t>(k) * static_cast<std::size_t>(d)] =
            (k % 2 == 0 ? binom_ext(n, k) : -binom_ext(n, k));
    return Poly(std::move(r));
}

namespace {

Poly poly_det_leibniz(const std::vector<std::vector<Poly>>& m) {
    const int p = static_cast<int>(m.size());
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    Poly det;
    do {
        int inv = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)])
                    ++inv;
        Poly term = Poly::constant(1);
        for (int i = 0; i < p; ++i)
            term = term * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        det = (inv % 2 == 0) ? det + term : det - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Poly poly_det_bareiss(std::vector<std::vector<Poly>> a) {
    const std::size_t p = a.size();
    int sign = 1;
    Poly prev = Poly::constant(1);
    for (std::size_t k = 0; k + 1 < p; ++k) {
        // prefer the lowest-valuation pivot; in this ring low valuation keeps
        // intermediate degrees (and division work) small
        std::size_t best = p;
        int best_val = 0;
        for (std::size_t i = k; i < p; ++i) {
            if (a[i][k].is_zero())
                continue;
            int v = a[i][k].valuation();
            if (best == p || v < best_val) {
                best = i;
                best_val = v;
            }
        }
        if (best == p)
            return Poly();
        if (best != k) {
            std::swap(a[k], a[best]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < p; ++i) {
            for (std::size_t j = k + 1; j < p; ++j) {
                Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = num.is_zero() ? Poly() : num.div_exact(prev);
            }
            a[i][k] = Poly();
        }
        prev = a[k][k];
    }
    Poly det = a[p - 1][p - 1];
    return sign > 0 ? det : -det;
}

} // namespace

Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t p = m.size();
    if (p == 0)
        return Poly::constant(1);
    for (const auto& row : m)
        if (row.size() != p)
            throw std::invalid_argument("poly_det: matrix not square");
    if (p <= 4)
        return poly_det_leibniz(m);
    return poly_det_bareiss(m);
}

} // namespace smrank
