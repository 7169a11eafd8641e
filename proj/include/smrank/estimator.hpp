#pragma once

#include "smrank/hilbert.hpp"

#include <optional>
#include <vector>

namespace smrank {

struct NoFiniteRegDegree : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoAdmissibleParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Strategy { dense, wiedemann };
std::string to_string(Strategy s);

// Cost model for linear algebra on the Macaulay matrix.  fieldop_bits is the
// per-operation bit cost added once by the hybrid search (log2(log2(q)^2)
// for a field of size q); helpers that reproduce raw curve data leave it 0.
struct CostModel {
    double omega = 2.81;
    double c_omega = 3.0;
    double c_wiedemann = 3.0;
    double fieldop_bits = 0.0;

    static CostModel with_field_bits(double q);
    void validate() const;
};

// Per-row density bound of the Macaulay matrix: K(r+1) at dc = 1 (for D = 1
// the equations have that many coefficients), the full column count of the
// equations' own bidegree otherwise.  dc = 0 uses the degree-D(r+1) monomial
// count, the same convention applied to the minors system.
Int density(const GmrParams& p, int dc);

struct CostPoint {
    double log2_cost = 0.0; // log2 min(c_w M^w, c D M^2), no field-op bits
    int dreg = 0;
    Strategy strategy = Strategy::wiedemann;
    Int cols;     // M(dreg, dc)
    Int row_density;
};

// Throws NoFiniteRegDegree when the series does not truncate within the
// order cap.
CostPoint complexity_at(const GmrParams& p, int dc, const CostModel& model,
                        int order_cap = 512);

struct ComplexityReport {
    double log2_cost = 0.0; // a r log2(q) + complexity_at(sub) + fieldop_bits
    int dc_star = 0;
    int dreg = 0;
    int a_star = 0;
    Strategy strategy = Strategy::wiedemann;
    GmrParams sub_params;
    Validity validity = Validity::proven;
};

struct GridPoint {
    int a = 0;
    int dc = 0;
    std::optional<double> log2_cost; // nullopt when dreg is not finite / filtered
    std::optional<int> dreg;
};

// Hybrid search: guess a support columns (q^(ar) repetitions of the
// (m, n-a, K-am, r) system), minimizing over a and dc in dc_range.
// max_dreg, when set, drops points whose regularity degree exceeds it
// (the convention of earlier estimates).  Ties break toward smaller a,
// then smaller dc.  grid, when non-null, receives every examined point.
ComplexityReport complexity_hybrid(const GmrParams& p, double q,
                                   const std::vector<int>& dc_range,
                                   const CostModel& model,
                                   std::optional<int> max_dreg = std::nullopt,
                                   std::optional<int> force_a = std::nullopt,
                                   std::vector<GridPoint>* grid = nullptr);

// default dc range {0, ..., min(10, m-r)}
std::vector<int> default_dc_range(const GmrParams& p);

struct SweepRow {
    int r = 0;
    int K = 0;
    std::optional<double> minors_cost;
    std::optional<double> sm_cost;
    std::optional<int> minors_dreg;
    std::optional<int> sm_dreg;
};

// Per-r curve data: K = (m-r)(n-r)-1 unless fixed_K is given; the minors
// system at dc = 0 and the support-minors system at dc = 1, costs from the
// raw model (no hybrid, no field-op bits).  Rows with no finite regularity
// degree keep nullopt fields.
std::vector<SweepRow> sweep_r(int m, int n, const CostModel& model,
                              int r_min = 1, int r_max = -1,
                              std::optional<int> fixed_K = std::nullopt);

} // namespace smrank
