// smrank: exact Hilbert series, attack-cost estimates, and finite-field rank
// verification for the support-minors modeling of rank-fall systems.

#include <CLI11.hpp>
#include <json.hpp>

#include "smrank/estimator.hpp"
#include "smrank/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace smrank;

namespace {

constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_computation = 2,
    exit_mismatch = 3,
};

std::string int_str(const Int& v) { return v.get_str(); }

double round_bits(double x) { return std::round(x * 10.0) / 10.0; }

struct Output {
    std::string format = "table"; // table | json | csv
    std::string path;             // empty = stdout

    void emit(const json& doc, const std::string& table_text, const std::string& csv_text) const {
        std::ostream* os = &std::cout;
        std::ofstream f;
        if (!path.empty()) {
            f.open(path);
            if (!f)
                throw std::runtime_error("cannot open output file: " + path);
            os = &f;
        }
        if (format == "json")
            *os << doc.dump(2) << "\n";
        else if (format == "csv")
            *os << csv_text;
        else
            *os << table_text;
    }
};

json params_json(const GmrParams& p) {
    return json{{"m", p.m}, {"n", p.n}, {"K", p.K}, {"r", p.r}, {"D", p.D}};
}

json model_json(const CostModel& m) {
    return json{{"omega", m.omega},
                {"c_omega", m.c_omega},
                {"c_wiedemann", m.c_wiedemann},
                {"fieldop_bits", m.fieldop_bits}};
}

void add_param_flags(CLI::App* cmd, GmrParams& p) {
    cmd->add_option("--m", p.m, "matrix rows")->default_val(4);
    cmd->add_option("--n", p.n, "matrix columns")->default_val(4);
    cmd->add_option("--K", p.K, "number of linear variables")->default_val(4);
    cmd->add_option("--r", p.r, "target rank")->default_val(2);
    cmd->add_option("--D", p.D, "entry degree")->default_val(1);
}

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->default_val("table");
    cmd->add_option("--out", out.path, "write output to a file instead of stdout");
}

void add_model_flags(CLI::App* cmd, CostModel& m, bool& fieldop_set) {
    cmd->add_option("--omega", m.omega, "matrix multiplication exponent")->default_val(2.81);
    cmd->add_option("--c-omega", m.c_omega, "dense linear algebra constant")->default_val(3.0);
    cmd->add_option("--c-wiedemann", m.c_wiedemann, "sparse solver constant")->default_val(3.0);
    auto* o = cmd->add_option("--fieldop-bits", m.fieldop_bits,
                              "bit cost per field operation (default log2(log2(q)^2))");
    cmd->callback([&fieldop_set, o]() { fieldop_set = o->count() > 0; });
}

// ---------------------------------------------------------------------------
// hilbert
// ---------------------------------------------------------------------------

int run_hilbert(const GmrParams& p, int dc, int order, const Output& out) {
    p.validate();
    HilbertResult h = hs_sm_generic(p, dc, order);
    RationalForm f = hs_sm_rational(p, dc);
    TruncatedSeries full =
        series_mul(Poly(std::vector<Int>(f.numerator)).to_series(order),
                   geometric_inverse_pow(f.denom_pow, 1, order));

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "hilbert";
    doc["params"] = params_json(p);
    doc["dc"] = dc;
    doc["order"] = order;
    json coeffs = json::array(), kept = json::array(), num = json::array();
    for (int i = 0; i < full.order(); ++i)
        coeffs.push_back(int_str(full[i]));
    for (int i = 0; i < h.series.order(); ++i)
        kept.push_back(int_str(h.series[i]));
    for (const Int& c : f.numerator)
        num.push_back(int_str(c));
    doc["coefficients"] = coeffs;
    doc["truncated"] = kept;
    doc["terminated"] = h.terminated;
    if (h.reg_degree)
        doc["reg_degree"] = *h.reg_degree;
    else
        doc["reg_degree"] = nullptr;
    doc["validity"] = to_string(h.validity);
    doc["numerator"] = num;
    doc["denominator_power"] = f.denom_pow;

    std::string table;
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "series for m=%d n=%d K=%d r=%d D=%d dc=%d\n",
                      p.m, p.n, p.K, p.r, p.D, dc);
        table += buf;
        table += "coefficients:";
        for (int i = 0; i < full.order(); ++i)
            table += " " + int_str(full[i]);
        table += "\ntruncated:   ";
        for (int i = 0; i < h.series.order(); ++i)
            table += " " + int_str(h.series[i]);
        table += "\nterminated:   ";
        table += h.terminated ? "yes" : "no";
        table += "\nreg_degree:   ";
        table += h.reg_degree ? std::to_string(*h.reg_degree) : std::string("-");
        table += "\nvalidity:     " + to_string(h.validity);
        table += "\nnumerator:   ";
        for (const Int& c : f.numerator)
            table += " " + int_str(c);
        std::snprintf(buf, sizeof buf, "\ndenominator:  (1-t)^%d\n", f.denom_pow);
        table += buf;
    }

    std::string csv = "index,coefficient,kept,numerator\n";
    int rows = std::max(full.order(), static_cast<int>(f.numerator.size()));
    for (int i = 0; i < rows; ++i) {
        csv += std::to_string(i) + ",";
        csv += (i < full.order() ? int_str(full[i]) : std::string()) + ",";
        csv += (i < h.series.order() ? "1" : "0");
        csv += ",";
        if (i < static_cast<int>(f.numerator.size()))
            csv += int_str(f.numerator[static_cast<std::size_t>(i)]);
        csv += "\n";
    }

    out.emit(doc, table, csv);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

int run_estimate(const GmrParams& p, double q, std::optional<int> dc_fixed, int dc_max,
                 const CostModel& model, std::optional<int> dreg_max,
                 std::optional<int> force_a, bool verbose, const Output& out) {
    p.validate();
    std::vector<int> dc_range;
    if (dc_fixed)
        dc_range.push_back(*dc_fixed);
    else
        for (int dc = 0; dc <= std::min(dc_max, p.m - p.r); ++dc)
            dc_range.push_back(dc);
    if (dc_range.empty())
        dc_range.push_back(0);

    std::vector<GridPoint> grid;
    ComplexityReport rep =
        complexity_hybrid(p, q, dc_range, model, dreg_max, force_a, verbose ? &grid : nullptr);
    double cost = round_bits(rep.log2_cost);

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "estimate";
    doc["params"] = params_json(p);
    doc["q"] = q;
    doc["model"] = model_json(model);
    doc["log2_cost"] = cost;
    doc["a"] = rep.a_star;
    doc["dc"] = rep.dc_star;
    doc["dreg"] = rep.dreg;
    doc["strategy"] = to_string(rep.strategy);
    doc["sub_params"] = params_json(rep.sub_params);
    doc["validity"] = to_string(rep.validity);
    if (verbose) {
        json g = json::array();
        for (const GridPoint& pt : grid) {
            json e{{"a", pt.a}, {"dc", pt.dc}};
            e["dreg"] = pt.dreg ? json(*pt.dreg) : json(nullptr);
            e["log2_cost"] = pt.log2_cost ? json(round_bits(*pt.log2_cost)) : json(nullptr);
            g.push_back(e);
        }
        doc["grid"] = g;
    }

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "estimate m=%d n=%d K=%d r=%d q=%g\n"
                  "log2 cost: %.1f bits\n"
                  "a=%d dc=%d dreg=%d strategy=%s\n"
                  "sub-system: m=%d n=%d K=%d r=%d (%s)\n",
                  p.m, p.n, p.K, p.r, q, cost, rep.a_star, rep.dc_star, rep.dreg,
                  to_string(rep.strategy).c_str(), rep.sub_params.m, rep.sub_params.n,
                  rep.sub_params.K, rep.sub_params.r, to_string(rep.validity).c_str());
    std::string table = buf;

    std::string csv = "m,n,K,r,q,log2_cost,a,dc,dreg,strategy,validity\n";
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%g,%.1f,%d,%d,%d,%s,%s\n", p.m, p.n, p.K, p.r, q,
                  cost, rep.a_star, rep.dc_star, rep.dreg, to_string(rep.strategy).c_str(),
                  to_string(rep.validity).c_str());
    csv += buf;

    out.emit(doc, table, csv);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sweep-r
// ---------------------------------------------------------------------------

int run_sweep(int m, int n, int r_min, int r_max, std::optional<int> fixed_K,
              const CostModel& model, const Output& out) {
    auto rows = sweep_r(m, n, model, r_min, r_max, fixed_K);

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "sweep-r";
    doc["m"] = m;
    doc["n"] = n;
    doc["model"] = model_json(model);
    json jrows = json::array();

    std::string csv = "r,minors_cost,sm_cost,minors_dreg,sm_dreg\n";
    std::string table = "  r   K   minors_cost  sm_cost  minors_dreg  sm_dreg\n";
    for (const SweepRow& row : rows) {
        json jr{{"r", row.r}};
        jr["minors_cost"] = row.minors_cost ? json(round_bits(*row.minors_cost)) : json(nullptr);
        jr["sm_cost"] = row.sm_cost ? json(round_bits(*row.sm_cost)) : json(nullptr);
        jr["minors_dreg"] = row.minors_dreg ? json(*row.minors_dreg) : json(nullptr);
        jr["sm_dreg"] = row.sm_dreg ? json(*row.sm_dreg) : json(nullptr);
        jrows.push_back(jr);

        auto fmt_cost = [](const std::optional<double>& c) {
            if (!c)
                return std::string();
            char b[32];
            std::snprintf(b, sizeof b, "%.1f", round_bits(*c));
            return std::string(b);
        };
        auto fmt_deg = [](const std::optional<int>& d) {
            return d ? std::to_string(*d) : std::string();
        };
        csv += std::to_string(row.r) + "," + fmt_cost(row.minors_cost) + "," +
               fmt_cost(row.sm_cost) + "," + fmt_deg(row.minors_dreg) + "," +
               fmt_deg(row.sm_dreg) + "\n";
        char b[160];
        std::snprintf(b, sizeof b, "%3d %3d %12s %8s %12s %8s\n", row.r, row.K,
                      fmt_cost(row.minors_cost).c_str(), fmt_cost(row.sm_cost).c_str(),
                      fmt_deg(row.minors_dreg).c_str(), fmt_deg(row.sm_dreg).c_str());
        table += b;
    }
    doc["rows"] = jrows;
    out.emit(doc, table, csv);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const GmrParams& p, std::uint32_t q, int dc, int dx_max, std::uint64_t seed,
               const RankCaps& caps, bool strict, const Output& out) {
    p.validate();
    VerifyReport rep = verify_series(p, q, dc, dx_max, seed, caps);

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["params"] = params_json(p);
    doc["q"] = q;
    doc["seed"] = seed;
    doc["dc"] = dc;
    json rows = json::array();
    std::string csv = "dx,predicted,post_truncation,observed,match,elapsed_ms\n";
    std::string table = " dx  predicted  observed  match\n";
    for (const VerifyRow& row : rep.rows) {
        rows.push_back(json{{"dx", row.dx},
                            {"predicted", int_str(row.predicted)},
                            {"post_truncation", row.post_truncation},
                            {"observed", int_str(row.observed)},
                            {"match", row.match},
                            {"elapsed_ms", row.elapsed_ms}});
        csv += std::to_string(row.dx) + "," + int_str(row.predicted) + "," +
               (row.post_truncation ? "1" : "0") + "," + int_str(row.observed) + "," +
               (row.match ? "1" : "0") + "," + std::to_string(row.elapsed_ms) + "\n";
        char b[160];
        std::snprintf(b, sizeof b, "%3d %10s %9s  %s%s\n", row.dx, int_str(row.predicted).c_str(),
                      int_str(row.observed).c_str(), row.match ? "yes" : "NO",
                      row.post_truncation ? " (post-truncation)" : "");
        table += b;
    }
    doc["rows"] = rows;
    doc["all_match"] = rep.all_match;
    table += rep.all_match ? "all rows match\n" : "MISMATCH present\n";
    out.emit(doc, table, csv);
    return (strict && !rep.all_match) ? exit_mismatch : exit_ok;
}

// ---------------------------------------------------------------------------
// trials
// ---------------------------------------------------------------------------

int run_trials(const GmrParams& p, std::uint32_t q, const std::vector<int>& dc_set, int dx,
               int trials, std::uint64_t seed, int threads, const RankCaps& caps,
               const Output& out) {
    p.validate();
    TrialsReport rep = genericity_trials(p, q, dc_set, dx, trials, seed, caps, threads);

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "trials";
    doc["params"] = params_json(p);
    doc["q"] = q;
    doc["dc_set"] = dc_set;
    doc["dx"] = dx;
    doc["trials"] = rep.trials;
    doc["matched"] = rep.matched;
    doc["fraction"] = rep.fraction;
    json per_dc = json::array();
    for (std::size_t i = 0; i < dc_set.size(); ++i)
        per_dc.push_back(json{{"dc", dc_set[i]}, {"fraction", rep.per_dc_fraction[i]}});
    doc["per_dc"] = per_dc;
    json log = json::array();
    for (const TrialRecord& rec : rep.log) {
        json cells = json::array();
        for (const TrialCell& c : rec.cells)
            cells.push_back(json{{"dc", c.dc},
                                 {"predicted", int_str(c.predicted)},
                                 {"observed", int_str(c.observed)},
                                 {"match", c.match}});
        log.push_back(json{{"seed", rec.seed}, {"match", rec.match}, {"cells", cells}});
    }
    doc["log"] = log;

    char b[256];
    std::snprintf(b, sizeof b, "trials m=%d n=%d K=%d r=%d q=%u dx=%d: %d/%d matched (%.4f)\n",
                  p.m, p.n, p.K, p.r, q, dx, rep.matched, rep.trials, rep.fraction);
    std::string table = b;
    for (std::size_t i = 0; i < dc_set.size(); ++i) {
        std::snprintf(b, sizeof b, "  dc=%d fraction %.4f\n", dc_set[i], rep.per_dc_fraction[i]);
        table += b;
    }

    std::string csv = "trial,seed,match";
    for (int dc : dc_set)
        csv += ",observed_dc" + std::to_string(dc) + ",predicted_dc" + std::to_string(dc);
    csv += "\n";
    for (std::size_t t = 0; t < rep.log.size(); ++t) {
        const TrialRecord& rec = rep.log[t];
        csv += std::to_string(t) + "," + std::to_string(rec.seed) + "," + (rec.match ? "1" : "0");
        for (const TrialCell& c : rec.cells)
            csv += "," + int_str(c.observed) + "," + int_str(c.predicted);
        csv += "\n";
    }

    out.emit(doc, table, csv);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

int run_identities(const Output& out) {
    long checked = 0, failed = 0;
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            for (long f = -3; f <= 6; ++f)
                for (long ell = 0; ell <= 6; ++ell) {
                    ++checked;
                    if (!check_saalschutz(a, b, f, ell))
                        ++failed;
                }
    long checked2 = 0, failed2 = 0;
    for (long i = 1; i <= 8; ++i)
        for (long a = -8; a <= 8; ++a)
            for (long b = 1; b <= 8; ++b) {
                ++checked2;
                if (!check_combi_identity(i, a, b))
                    ++failed2;
            }

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "identities";
    doc["saalschutz"] = json{{"checked", checked}, {"failed", failed}};
    doc["alternating"] = json{{"checked", checked2}, {"failed", failed2}};
    char b[160];
    std::snprintf(b, sizeof b,
                  "saalschutz: %ld checked, %ld failed\nalternating: %ld checked, %ld failed\n",
                  checked, failed, checked2, failed2);
    std::string csv = "identity,checked,failed\n";
    csv += "saalschutz," + std::to_string(checked) + "," + std::to_string(failed) + "\n";
    csv += "alternating," + std::to_string(checked2) + "," + std::to_string(failed2) + "\n";
    out.emit(doc, std::string(b), csv);
    return (failed + failed2 == 0) ? exit_ok : exit_computation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hilbert series and solving-cost analysis for support-minors systems"};
    app.require_subcommand(1);

    // hilbert
    GmrParams hp;
    int h_dc = 1, h_order = 32;
    Output h_out;
    auto* hilbert = app.add_subcommand("hilbert", "compute the generic Hilbert series");
    add_param_flags(hilbert, hp);
    hilbert->add_option("--dc", h_dc, "minor-variable degree")->default_val(1);
    hilbert->add_option("--order", h_order, "series truncation order")->default_val(32);
    add_output_flags(hilbert, h_out);

    // estimate
    GmrParams ep;
    double e_q = 16.0;
    int e_dc_max = 10;
    std::optional<int> e_dc, e_dreg_max, e_force_a;
    bool e_verbose = false;
    CostModel e_model;
    bool e_fieldop_set = false;
    Output e_out;
    auto* estimate = app.add_subcommand("estimate", "hybrid solving-cost estimate");
    add_param_flags(estimate, ep);
    estimate->add_option("--q", e_q, "field size")->required();
    estimate->add_option(
        "--dc",
        [&e_dc](const std::vector<std::string>& v) {
            e_dc = std::stoi(v.at(0));
            return true;
        },
        "fix a single minor degree");
    estimate->add_option("--dc-max", e_dc_max, "largest minor degree searched")->default_val(10);
    estimate->add_option(
        "--dreg-max",
        [&e_dreg_max](const std::vector<std::string>& v) {
            e_dreg_max = std::stoi(v.at(0));
            return true;
        },
        "drop points with regularity degree above this");
    estimate->add_option(
        "--a",
        [&e_force_a](const std::vector<std::string>& v) {
            e_force_a = std::stoi(v.at(0));
            return true;
        },
        "force the number of guessed columns");
    estimate->add_flag("--verbose", e_verbose, "emit the full (a, dc) grid");
    add_model_flags(estimate, e_model, e_fieldop_set);
    add_output_flags(estimate, e_out);

    // sweep-r
    int s_m = 22, s_n = 22, s_rmin = 1, s_rmax = -1;
    std::optional<int> s_K;
    double s_q = 16.0;
    CostModel s_model;
    bool s_fieldop_set = false;
    Output s_out;
    auto* sweep = app.add_subcommand("sweep-r", "per-rank cost and regularity-degree curves");
    sweep->add_option("--m", s_m, "matrix rows")->default_val(22);
    sweep->add_option("--n", s_n, "matrix columns")->default_val(22);
    sweep->add_option("--q", s_q,
                      "field size (annotation only; curve costs carry no field-op bits)")
        ->default_val(16.0);
    sweep->add_option("--r-min", s_rmin, "first rank")->default_val(1);
    sweep->add_option("--r-max", s_rmax, "last rank (default min(m,n)-2)")->default_val(-1);
    sweep->add_option(
        "--K",
        [&s_K](const std::vector<std::string>& v) {
            s_K = std::stoi(v.at(0));
            return true;
        },
        "fix K instead of the default (m-r)(n-r)-1");
    add_model_flags(sweep, s_model, s_fieldop_set);
    add_output_flags(sweep, s_out);

    // verify
    GmrParams vp;
    std::uint32_t v_q = 31;
    int v_dc = 1, v_dxmax = 4;
    std::uint64_t v_seed = 1;
    bool v_strict = false;
    RankCaps v_caps;
    Output v_out;
    auto* verify = app.add_subcommand("verify", "compare predicted and observed Hilbert values");
    add_param_flags(verify, vp);
    verify->add_option("--q", v_q, "prime field size")->default_val(31);
    verify->add_option("--dc", v_dc, "minor-variable degree")->default_val(1);
    verify->add_option("--dx-max", v_dxmax, "largest x-degree checked")->default_val(4);
    verify->add_option("--seed", v_seed, "instance seed")->default_val(1);
    verify->add_flag("--strict", v_strict, "exit 3 on any mismatch");
    verify->add_option("--max-cols", v_caps.max_cols, "column cap for the rank computation");
    verify->add_option("--max-ops", v_caps.max_ops, "estimated-work cap for the rank computation");
    add_output_flags(verify, v_out);

    // trials
    GmrParams tp;
    std::uint32_t t_q = 31;
    int t_dc_max = 3, t_dx = 1, t_trials = 100, t_threads = 0;
    std::uint64_t t_seed = 1;
    RankCaps t_caps;
    Output t_out;
    auto* trials = app.add_subcommand("trials", "genericity fraction over random instances");
    add_param_flags(trials, tp);
    trials->add_option("--q", t_q, "prime field size")->default_val(31);
    trials->add_option("--dc-max", t_dc_max, "check dc = 1..dc-max")->default_val(3);
    trials->add_option("--dx", t_dx, "x-degree of the checked matrix")->default_val(1);
    trials->add_option("--trials", t_trials, "number of random instances")->default_val(100);
    trials->add_option("--seed", t_seed, "master seed")->default_val(1);
    trials->add_option("--threads", t_threads, "worker threads (0 = all cores)")->default_val(0);
    trials->add_option("--max-cols", t_caps.max_cols, "column cap for the rank computation");
    trials->add_option("--max-ops", t_caps.max_ops, "estimated-work cap for the rank computation");
    add_output_flags(trials, t_out);

    // identities
    Output i_out;
    auto* identities = app.add_subcommand("identities", "exhaustive small-integer identity sweeps");
    add_output_flags(identities, i_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints the message or the help text
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*hilbert)
            return run_hilbert(hp, h_dc, h_order, h_out);
        if (*estimate) {
            if (!e_fieldop_set)
                e_model.fieldop_bits = std::log2(std::log2(e_q) * std::log2(e_q));
            return run_estimate(ep, e_q, e_dc, e_dc_max, e_model, e_dreg_max, e_force_a,
                                e_verbose, e_out);
        }
        if (*sweep) {
            if (!s_fieldop_set)
                s_model.fieldop_bits = 0.0; // raw curve convention
            return run_sweep(s_m, s_n, s_rmin, s_rmax, s_K, s_model, s_out);
        }
        if (*verify)
            return run_verify(vp, v_q, v_dc, v_dxmax, v_seed, v_caps, v_strict, v_out);
        if (*trials) {
            std::vector<int> dc_set;
            for (int dc = 1; dc <= t_dc_max; ++dc)
                dc_set.push_back(dc);
            return run_trials(tp, t_q, dc_set, t_dx, t_trials, t_seed, t_threads, t_caps, t_out);
        }
        if (*identities)
            return run_identities(i_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_computation;
    }
    return exit_usage;
}
