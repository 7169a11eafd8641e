#include "smrank/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace smrank {

std::string to_string(Strategy s) {
    return s == Strategy::dense ? "dense" : "wiedemann";
}

CostModel CostModel::with_field_bits(double q) {
    CostModel m;
    m.fieldop_bits = std::log2(std::log2(q) * std::log2(q));
    return m;
}

void CostModel::validate() const {
    if (omega < 2.0 || omega > 3.0)
        throw std::invalid_argument("CostModel: omega outside [2, 3]");
    if (c_omega <= 0 || c_wiedemann <= 0)
        throw std::invalid_argument("CostModel: constants must be positive");
    if (fieldop_bits < 0)
        throw std::invalid_argument("CostModel: negative fieldop_bits");
}

Int density(const GmrParams& p, int dc) {
    if (dc < 0)
        throw std::invalid_argument("density: need dc >= 0");
    if (dc == 0)
        return macaulay_cols(p, p.D * (p.r + 1), 0);
    if (dc == 1)
        return Int(p.r + 1) * binom_ext(p.K + p.D - 1, p.D);
    return macaulay_cols(p, p.D, dc);
}

CostPoint complexity_at(const GmrParams& p, int dc, const CostModel& model, int order_cap) {
    model.validate();
    std::optional<int> dreg = regularity_degree(p, dc, order_cap);
    if (!dreg)
        throw NoFiniteRegDegree("complexity_at: series does not truncate within the order cap");
    CostPoint pt;
    pt.dreg = *dreg;
    pt.cols = macaulay_cols(p, pt.dreg, dc);
    pt.row_density = density(p, dc);
    double lM = log2_int(pt.cols);
    double dense = std::log2(model.c_omega) + model.omega * lM;
    double wied = std::log2(model.c_wiedemann) + log2_int(pt.row_density) + 2.0 * lM;
    if (dense <= wied) {
        pt.log2_cost = dense;
        pt.strategy = Strategy::dense;
    } else {
        pt.log2_cost = wied;
        pt.strategy = Strategy::wiedemann;
    }
    return pt;
}

std::vector<int> default_dc_range(const GmrParams& p) {
    std::vector<int> out;
    for (int dc = 0; dc <= std::min(10, p.m - p.r); ++dc)
        out.push_back(dc);
    if (out.empty())
        out.push_back(0);
    return out;
}

ComplexityReport complexity_hybrid(const GmrParams& p, double q,
                                   const std::vector<int>& dc_range,
                                   const CostModel& model,
                                   std::optional<int> max_dreg,
                                   std::optional<int> force_a,
                                   std::vector<GridPoint>* grid) {
    p.validate();
    model.validate();
    if (q < 2)
        throw std::invalid_argument("complexity_hybrid: need q >= 2");
    if (dc_range.empty())
        throw std::invalid_argument("complexity_hybrid: empty dc range");

    const double lq = std::log2(q);
    std::optional<ComplexityReport> best;
    for (int a = 0;; ++a) {
        GmrParams sub{p.m, p.n - a, p.K - a * p.m, p.r, p.D};
        if (!(sub.n > p.r && sub.K >= 1))
            break;
        if (force_a && a != *force_a)
            continue;
        for (int dc : dc_range) {
            GridPoint gp;
            gp.a = a;
            gp.dc = dc;
            try {
                CostPoint pt = complexity_at(sub, dc, model);
                gp.dreg = pt.dreg;
                if (!max_dreg || pt.dreg <= *max_dreg) {
                    double total = a * p.r * lq + pt.log2_cost + model.fieldop_bits;
                    gp.log2_cost = total;
                    // strict improvement keeps the smallest (a, dc) on ties
                    if (!best || total < best->log2_cost - 1e-9) {
                        ComplexityReport rep;
                        rep.log2_cost = total;
                        rep.dc_star = dc;
                        rep.dreg = pt.dreg;
                        rep.a_star = a;
                        rep.strategy = pt.strategy;
                        rep.sub_params = sub;
                        rep.validity = validity_region(sub, dc);
                        best = rep;
                    }
                }
            } catch (const NoFiniteRegDegree&) {
                // inadmissible point, skip
            }
            if (grid)
                grid->push_back(gp);
        }
    }
    if (!best)
        throw NoAdmissibleParams("complexity_hybrid: no (a, dc) with a finite regularity degree");
    return *best;
}

std::vector<SweepRow> sweep_r(int m, int n, const CostModel& model,
                              int r_min, int r_max, std::optional<int> fixed_K) {
    if (r_max < 0)
        r_max = std::min(m, n) - 2; // K policy needs (m-r)(n-r) >= 2
    std::vector<SweepRow> rows;
    for (int r = r_min; r <= r_max; ++r) {
        SweepRow row;
        row.r = r;
        row.K = fixed_K ? *fixed_K : (m - r) * (n - r) - 1;
        if (row.K < 1) {
            rows.push_back(row);
            continue;
        }
        GmrParams p{m, n, row.K, r, 1};
        try {
            CostPoint minors = complexity_at(p, 0, model);
            row.minors_cost = minors.log2_cost;
            row.minors_dreg = minors.dreg;
        } catch (const NoFiniteRegDegree&) {
        }
        try {
            CostPoint sm = complexity_at(p, 1, model);
            row.sm_cost = sm.log2_cost;
            row.sm_dreg = sm.dreg;
        } catch (const NoFiniteRegDegree&) {
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace smrank
