#include "smrank/combinatorics.hpp"

#include <algorithm>
#include <functional>

namespace smrank {

bool is_valid_shape(const Shape& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0)
            return false;
        if (i > 0 && s[i] > s[i - 1])
            return false;
    }
    return true;
}

int shape_degree(const Shape& s) {
    int d = 0;
    for (int v : s)
        d += v;
    return d;
}

Shape conjugate(const Shape& s) {
    if (s.empty() || s[0] == 0)
        return {};
    Shape c(static_cast<std::size_t>(s[0]));
    for (std::size_t i = 0; i < c.size(); ++i) {
        int cnt = 0;
        for (int v : s)
            if (v > static_cast<int>(i))
                ++cnt;
        c[i] = cnt;
    }
    return c;
}

std::vector<Shape> partitions(int d, int max_parts) {
    if (d < 0 || max_parts < 1)
        throw std::invalid_argument("partitions: need d >= 0, max_parts >= 1");
    std::vector<Shape> out;
    Shape acc(static_cast<std::size_t>(max_parts), 0);
    std::function<void(int, int, int)> rec = [&](int pos, int rem, int maxpart) {
        if (pos == max_parts) {
            if (rem == 0)
                out.push_back(acc);
            return;
        }
        for (int v = std::min(rem, maxpart); v >= 0; --v) {
            acc[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, rem - v, v);
        }
    };
    rec(0, d, d);
    return out;
}

Int stab(int bound, const Shape& shape) {
    if (bound < 1)
        throw std::invalid_argument("stab: bound must be >= 1");
    if (!is_valid_shape(shape))
        throw std::invalid_argument("stab: shape not weakly decreasing non-negative");
    const int p = static_cast<int>(shape.size());
    if (p == 0)
        return 1;
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(p),
                                    std::vector<Int>(static_cast<std::size_t>(p)));
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j)
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                twisted_binom(bound - j, shape[static_cast<std::size_t>(i - 1)] + j - i);
    return det_int(std::move(m));
}

bool Tableau::valid() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i > 0 && r.size() > rows[i - 1].size())
            return false;
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] < 1 || r[j] > bound)
                return false;
            if (j > 0 && r[j] <= r[j - 1])
                return false; // rows strictly increase
            if (i > 0 && j < rows[i - 1].size() && r[j] < rows[i - 1][j])
                return false; // columns weakly increase
        }
    }
    return true;
}

std::vector<Tableau> enumerate_tableaux(int bound, const Shape& shape, std::uint64_t cap) {
    if (bound < 1)
        throw std::invalid_argument("enumerate_tableaux: bound must be >= 1");
    if (!is_valid_shape(shape))
        throw std::invalid_argument("enumerate_tableaux: invalid shape");

    // canonical rows have the conjugate lengths
    Shape row_len = conjugate(shape);
    const int nrows = static_cast<int>(row_len.size());

    // unconstrained per-row count [bound - L; L] = binom(bound, L) as cap estimate
    Int est = 1;
    for (int len : row_len)
        est *= twisted_binom(bound - len, len);
    if (est > Int(static_cast<unsigned long>(cap)))
        throw CapExceeded("enumerate_tableaux: estimated count above cap");

    std::vector<Tableau> out;
    Tableau t;
    t.bound = bound;
    t.rows.assign(static_cast<std::size_t>(nrows), {});
    for (int i = 0; i < nrows; ++i)
        t.rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(row_len[static_cast<std::size_t>(i)]), 0);

    // fill in row-major order; lexicographic output follows from ascending scans
    std::function<void(int, int)> rec = [&](int ri, int ci) {
        if (ri == nrows) {
            out.push_back(t);
            return;
        }
        int width = row_len[static_cast<std::size_t>(ri)];
        if (ci == width) {
            rec(ri + 1, 0);
            return;
        }
        int lo = 1;
        if (ci > 0)
            lo = std::max(lo, t.rows[static_cast<std::size_t>(ri)][static_cast<std::size_t>(ci - 1)] + 1);
        if (ri > 0)
            lo = std::max(lo, t.rows[static_cast<std::size_t>(ri - 1)][static_cast<std::size_t>(ci)]);
        for (int v = lo; v <= bound; ++v) {
            t.rows[static_cast<std::size_t>(ri)][static_cast<std::size_t>(ci)] = v;
            rec(ri, ci + 1);
        }
        t.rows[static_cast<std::size_t>(ri)][static_cast<std::size_t>(ci)] = 0;
    };
    rec(0, 0);
    return out;
}

Int count_bitableaux(int m_bound, int n_bound, const Shape& left, const Shape& right) {
    // sides of a bitableau share the minor lengths, hence the part count
    if (left.size() != right.size())
        throw std::invalid_argument("count_bitableaux: incompatible part counts");
    return stab(m_bound, left) * stab(n_bound, right);
}

bool check_saalschutz(long a, long b, long f, long ell) {
    if (ell < 0)
        throw std::invalid_argument("check_saalschutz: ell must be >= 0");
    Int lhs = 0;
    long kmax = std::max(f, ell);
    for (long k = 0; k <= kmax; ++k)
        lhs += binom_ext(b, f - k) * binom_ext(a, ell - k) * binom_ext(a + b + k, k);
    Int rhs = binom_ext(a + f, ell) * binom_ext(b + ell, f);
    return lhs == rhs;
}

bool check_combi_identity(long i, long a, long b) {
    if (i < 1 || b < 1)
        throw std::invalid_argument("check_combi_identity: need i >= 1, b >= 1");
    Int lhs = 0;
    for (long k = 1; k <= i; ++k) {
        Int term = binom_ext(i - 1, k - 1) * binom_ext(a - k, b - k);
        lhs += ((i - k) % 2 == 0) ? term : -term;
    }
    Int rhs = binom_ext(a - i, b - 1);
    if ((i - 1) % 2 != 0)
        rhs = -rhs;
    return lhs == rhs;
}

} // namespace smrank
