#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace smrank {

bool is_prime_u32(std::uint32_t q);

// Arithmetic mod a prime q that fits comfortably in a machine word.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t q);
    std::uint32_t q() const { return q_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + q_ - b;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t reduce_i64(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(q_);
        return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
    }

private:
    std::uint32_t q_;
};

// Dense matrix over GF(q), row-major, entries already reduced.
struct GfMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    GfMatrix() = default;
    GfMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::uint32_t* row(std::size_t i) { return a.data() + i * cols; }
    const std::uint32_t* row(std::size_t i) const { return a.data() + i * cols; }
    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t get(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Online row-echelon rank accumulator.  Rows arrive one at a time, are
// reduced against the stored pivot rows (kept normalized with leading 1) and
// either extend the basis or vanish.  Arithmetic accumulates products in
// 64-bit lanes and reduces lazily; pivot rows store only the suffix from
// their pivot column.
class RankEliminator {
public:
    explicit RankEliminator(std::uint32_t q, std::size_t cols);

    // consumes the row (length cols, entries reduced mod q);
    // returns true if it extended the basis
    bool add_row(std::vector<std::uint32_t> row);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }

    // full reduction of an external row against the current basis (used to
    // express vectors in basis coordinates); returns the residual
    std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> row) const;

private:
    struct PivotRow {
        std::size_t col;
        std::vector<std::uint32_t> suffix; // values from col onward, suffix[0] == 1
    };
    void reduce_inplace(std::vector<std::uint32_t>& row) const;

    PrimeField f_;
    std::size_t cols_;
    std::vector<PivotRow> pivots_;       // sorted by col
    std::vector<std::size_t> pivot_at_;  // col -> index into pivots_, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Rank by plain dense elimination (consumes the matrix).
std::size_t gf_rank(GfMatrix m, std::uint32_t q);

// Reduced row echelon form in place; returns the pivot columns.  Rows of the
// result with index < pivots.size() form an RREF basis of the row space.
std::vector<std::size_t> gf_rref(GfMatrix& m, std::uint32_t q);

} // namespace smrank
