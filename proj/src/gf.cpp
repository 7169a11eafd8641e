#include "smrank/gf.hpp"

namespace smrank {

bool is_prime_u32(std::uint32_t q) {
    if (q < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime_u32(q))
        throw std::invalid_argument("PrimeField: modulus is not prime");
    if (q >= (1u << 21))
        throw std::invalid_argument("PrimeField: modulus too large for lazy accumulation");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0)
        throw std::domain_error("PrimeField::inv(0)");
    // extended Euclid
    std::int64_t t = 0, newt = 1;
    std::int64_t r = q_, newr = a;
    while (newr != 0) {
        std::int64_t quo = r / newr;
        t -= quo * newt;
        std::swap(t, newt);
        r -= quo * newr;
        std::swap(r, newr);
    }
    return static_cast<std::uint32_t>(t < 0 ? t + q_ : t);
}

RankEliminator::RankEliminator(std::uint32_t q, std::size_t cols)
    : f_(q), cols_(cols), pivot_at_(cols, npos) {}

void RankEliminator::reduce_inplace(std::vector<std::uint32_t>& row) const {
    const std::uint64_t q = f_.q();
    // 64-bit accumulation: every product is < q^2 <= 2^42 and a row sees at
    // most cols_ axpys, so sums never overflow
    std::vector<std::uint64_t> acc(row.begin(), row.end());
    for (std::size_t c = 0; c < cols_; ++c) {
        std::uint64_t v = acc[c] % q;
        acc[c] = v;
        if (v == 0)
            continue;
        std::size_t pi = pivot_at_[c];
        if (pi == npos)
            continue;
        const auto& piv = pivots_[pi].suffix;
        const std::uint64_t coef = q - v; // add coef * pivot to cancel column c
        std::uint64_t* dst = acc.data() + c;
        const std::uint32_t* src = piv.data();
        const std::size_t len = piv.size();
        for (std::size_t i = 0; i < len; ++i)
            dst[i] += coef * src[i];
    }
    for (std::size_t c = 0; c < cols_; ++c)
        row[c] = static_cast<std::uint32_t>(acc[c] % q);
}

bool RankEliminator::add_row(std::vector<std::uint32_t> row) {
    if (row.size() != cols_)
        throw std::invalid_argument("RankEliminator::add_row: wrong width");
    reduce_inplace(row);
    std::size_t lead = 0;
    while (lead < cols_ && row[lead] == 0)
        ++lead;
    if (lead == cols_)
        return false;
    std::uint32_t s = f_.inv(row[lead]);
    PivotRow pr;
    pr.col = lead;
    pr.suffix.resize(cols_ - lead);
    for (std::size_t i = lead; i < cols_; ++i)
        pr.suffix[i - lead] = f_.mul(row[i], s);
    pivot_at_[lead] = pivots_.size();
    pivots_.push_back(std::move(pr));
    return true;
}

std::vector<std::uint32_t> RankEliminator::reduce(std::vector<std::uint32_t> row) const {
    if (row.size() != cols_)
        throw std::invalid_argument("RankEliminator::reduce: wrong width");
    reduce_inplace(row);
    return row;
}

std::size_t gf_rank(GfMatrix m, std::uint32_t q) {
    RankEliminator elim(q, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        elim.add_row(std::vector<std::uint32_t>(m.row(i), m.row(i) + m.cols));
    return elim.rank();
}

std::vector<std::size_t> gf_rref(GfMatrix& m, std::uint32_t q) {
    PrimeField f(q);
    std::vector<std::size_t> piv_cols;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < m.cols && rr < m.rows; ++c) {
        std::size_t sel = rr;
        while (sel < m.rows && m.get(sel, c) == 0)
            ++sel;
        if (sel == m.rows)
            continue;
        if (sel != rr)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(rr, j), m.at(sel, j));
        std::uint32_t s = f.inv(m.get(rr, c));
        for (std::size_t j = c; j < m.cols; ++j)
            m.at(rr, j) = f.mul(m.get(rr, j), s);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rr)
                continue;
            std::uint32_t v = m.get(i, c);
            if (v == 0)
                continue;
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.get(i, j), f.mul(v, m.get(rr, j)));
        }
        piv_cols.push_back(c);
        ++rr;
    }
    return piv_cols;
}

} // namespace smrank
