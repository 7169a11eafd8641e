#pragma once

#include "smrank/bigint.hpp"

#include <cstdint>
#include <vector>

namespace smrank {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A shape is a weakly decreasing tuple of non-negative integers.  Shapes
// follow the convention of the tableau-counting determinant below: the i-th
// part is the number of tableau rows of length >= i, i.e. the height of
// column i of the row diagram.  Conversions between the two readings go
// through conjugate().
using Shape = std::vector<int>;

bool is_valid_shape(const Shape& s);
int shape_degree(const Shape& s);
Shape conjugate(const Shape& s);

// All weakly decreasing tuples (v1,...,v_max_parts) with sum d, emitted with
// the first part descending (so (3,0) before (2,1)).
std::vector<Shape> partitions(int d, int max_parts);

// Number of tableaux of shape v with entries in {1..bound}, weakly increasing
// along rows and strictly increasing down columns:
//   stab(bound, v) = det( [bound-j; v(i)+j-i] )  over twisted binomials.
Int stab(int bound, const Shape& shape);

// A tableau stored in canonical orientation: rows strictly increase left to
// right, columns weakly increase top to bottom, entries in {1..bound}.  Row
// lengths are the conjugate of the Shape passed to enumerate_tableaux (a row
// of the canonical tableau is one strictly-increasing index tuple; the Shape
// counts how many rows reach each length).
struct Tableau {
    std::vector<std::vector<int>> rows;
    int bound = 0;

    bool valid() const;
};

// Brute-force enumeration of every tableau counted by stab(bound, shape), in
// lexicographic order of the row-major entry sequence.  The estimated count
// (product of unconstrained per-row counts) must stay below cap.
std::vector<Tableau> enumerate_tableaux(int bound, const Shape& shape,
                                        std::uint64_t cap = 10'000'000);

// stab(m_bound, left) * stab(n_bound, right)
Int count_bitableaux(int m_bound, int n_bound, const Shape& left, const Shape& right);

// Saalschuetz identity, evaluated exactly on both sides:
//   sum_k binom(b, f-k) binom(a, l-k) binom(a+b+k, k) = binom(a+f, l) binom(b+l, f)
bool check_saalschutz(long a, long b, long f, long ell);

// Alternating-sum identity (elementary generating-function proof):
//   sum_{k>=1} (-1)^(i-k) binom(i-1, k-1) binom(a-k, b-k) = (-1)^(i-1) binom(a-i, b-1)
bool check_combi_identity(long i, long a, long b);

} // namespace smrank
