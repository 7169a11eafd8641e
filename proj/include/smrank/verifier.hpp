#pragma once

#include "smrank/gf.hpp"
#include "smrank/hilbert.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace smrank {

// One random linear-entry instance over GF(q): entry (i, j) of the matrix is
// sum_k coeffs[(i*n + j)*K + k] * x_k.  Bit-identical regeneration from
// (params, q, seed) is part of the contract.
struct Instance {
    GmrParams params;
    std::uint32_t q = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> coeffs; // m * n * K entries

    std::uint32_t coeff(int i, int j, int k) const {
        return coeffs[(static_cast<std::size_t>(i) * static_cast<std::size_t>(params.n) +
                       static_cast<std::size_t>(j)) *
                          static_cast<std::size_t>(params.K) +
                      static_cast<std::size_t>(k)];
    }
};

// Rejects D != 1 and non-prime q.
Instance gen_instance(const GmrParams& p, std::uint32_t q, std::uint64_t seed);

// Exponent vectors of a fixed total degree in graded-lex order (first
// variable's exponent descending), with O(1) index lookup.
struct MonomialBasis {
    int nvars = 0;
    int degree = 0;
    std::vector<std::vector<std::uint8_t>> list;
    std::map<std::vector<std::uint8_t>, int> index;

    static MonomialBasis build(int nvars, int degree);
    int size() const { return static_cast<int>(list.size()); }
};

// Support-minors equations in structural form: equation (l, J) is
//   sum_{i=1}^{r+1} (-1)^i f_{l, J[i-1]} c_{J \ {J[i-1]}}.
struct SmTerm {
    int sign;  // +1 or -1
    int col;   // column of the matrix entry multiplying the minor variable
    int cvar;  // index of the minor variable c_I, I an r-subset in lex order
};
struct SmEquation {
    int row;                  // l
    std::vector<SmTerm> terms; // r+1 of them
};

std::vector<std::vector<int>> r_subsets(int n, int r); // lex order
std::vector<SmEquation> sm_equations(int m, int n, int r);

// evaluate one equation at a point (x in GF(q)^K, minor values of a concrete
// r x n matrix C); used by the planted-instance soundness check
std::uint32_t eval_sm_equation(const Instance& inst, const SmEquation& eq,
                               const std::vector<std::uint32_t>& x,
                               const std::vector<std::uint32_t>& minor_values);

// Monomial in the entries of the r x n matrix C: sorted entry ids
// (row*n + col) with multiplicity, total degree r*dc.
using CEntryMono = std::vector<std::uint16_t>;

// Image of a minor-variable monomial under c_I -> (r x r minor of C on
// columns I): integer-coefficient polynomial, keyed by C-entry monomial.
std::map<CEntryMono, long long> expand_plucker(const std::vector<std::uint8_t>& c_exponents,
                                               int n, int r);

// standard (componentwise ordered) chains I_1 <= ... <= I_dc, as exponent
// vectors; their count is module_rank(n, r, dc)
std::vector<std::vector<std::uint8_t>> standard_cmonomials(int n, int r, int dc);

// Shared per-(n, r, dc, q) data: expansions of every degree-dc minor-variable
// monomial, reduced to coordinates over an independent basis of their span.
// The span has dimension module_rank(n, r, dc) over any prime field (the
// standard monomials stay independent over every coefficient ring), which is
// verified at build time.
struct MacaulayContext {
    int n = 0, r = 0, dc = 0;
    std::uint32_t q = 0;
    int rc = 0;                         // module_rank(n, r, dc)
    MonomialBasis cmons;                // degree dc over the c_I variables
    MonomialBasis cmons_lo;             // degree dc-1
    std::vector<std::vector<int>> cvars; // r-subsets
    std::vector<std::vector<std::uint32_t>> coords; // per c-monomial, rc values
    std::vector<std::vector<int>> cmul; // [lo index][cvar] -> dc index
    int c_entry_monomials = 0;          // distinct C-entry monomials seen

    static MacaulayContext build(int n, int r, int dc, std::uint32_t q);
};

struct RankCaps {
    std::size_t max_cols = 30000;
    double max_ops = 1e13; // ~ rows * cols^2 elimination estimate
};

struct MacaulayRankResult {
    Int ambient_dim;
    std::size_t rank = 0;
    Int observed_hf;
    std::size_t matrix_rows = 0;
    std::size_t matrix_cols = 0;
    std::int64_t elapsed_ms = 0;
};

// Rank of the bidegree-(dx, dc) Macaulay matrix of the instance, by exact
// elimination mod q.  ctx may be shared across instances with equal
// (n, r, dc, q); pass nullptr to build one internally.
MacaulayRankResult macaulay_rank(const Instance& inst, int dx, int dc,
                                 const RankCaps& caps = {},
                                 const MacaulayContext* ctx = nullptr);

struct VerifyRow {
    int dx = 0;
    Int predicted;            // series coefficient; 0 when post_truncation
    bool post_truncation = false;
    Int observed;
    bool match = false;
    std::int64_t elapsed_ms = 0;
};

struct VerifyReport {
    GmrParams params;
    std::uint32_t q = 0;
    std::uint64_t seed = 0;
    int dc = 0;
    std::vector<VerifyRow> rows;
    bool all_match = true;
};

VerifyReport verify_series(const GmrParams& p, std::uint32_t q, int dc, int dx_max,
                           std::uint64_t seed, const RankCaps& caps = {},
                           const MacaulayContext* ctx = nullptr);

struct TrialCell {
    int dc = 0;
    Int predicted;
    bool post_truncation = false;
    Int observed;
    bool match = false;
};
struct TrialRecord {
    std::uint64_t seed = 0;
    std::vector<TrialCell> cells;
    bool match = false; // all cells agree
};
struct TrialsReport {
    int trials = 0;
    int matched = 0;
    double fraction = 0.0;
    std::vector<double> per_dc_fraction;
    std::vector<TrialRecord> log;
};

// trials independent instances at x-degree dx, each checked against the
// truncated prediction for every dc in dc_set; per-trial seeds derive from
// the master seed, so parallel and serial runs agree exactly
TrialsReport genericity_trials(const GmrParams& p, std::uint32_t q,
                               const std::vector<int>& dc_set, int dx, int trials,
                               std::uint64_t master_seed, const RankCaps& caps = {},
                               int threads = 0);

// planted low-rank instance for soundness tests: returns the instance, the
// point x*, and the r x n row-basis matrix C* with F(x*) = A C*
struct PlantedInstance {
    Instance inst;
    std::vector<std::uint32_t> x_star;
    std::vector<std::uint32_t> c_star; // r x n row-major
};
PlantedInstance make_planted_instance(const GmrParams& p, std::uint32_t q, std::uint64_t seed);

} // namespace smrank
