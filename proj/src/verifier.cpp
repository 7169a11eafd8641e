#include "smrank/verifier.hpp"

#include "smrank/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace smrank {

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

Instance gen_instance(const GmrParams& p, std::uint32_t q, std::uint64_t seed) {
    p.validate();
    if (p.D != 1)
        throw std::invalid_argument("gen_instance: only D = 1 instances are generated");
    if (!is_prime_u32(q))
        throw std::invalid_argument("gen_instance: q must be prime");
    Instance inst;
    inst.params = p;
    inst.q = q;
    inst.seed = seed;
    inst.coeffs.resize(static_cast<std::size_t>(p.m) * static_cast<std::size_t>(p.n) *
                       static_cast<std::size_t>(p.K));
    SplitMix64 g(seed);
    for (auto& c : inst.coeffs)
        c = g.below(q);
    return inst;
}

MonomialBasis MonomialBasis::build(int nvars, int degree) {
    if (nvars < 1 || degree < 0)
        throw std::invalid_argument("MonomialBasis: need nvars >= 1, degree >= 0");
    MonomialBasis b;
    b.nvars = nvars;
    b.degree = degree;
    std::vector<std::uint8_t> acc(static_cast<std::size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == nvars - 1) {
            acc[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(rem);
            b.index.emplace(acc, static_cast<int>(b.list.size()));
            b.list.push_back(acc);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            acc[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(e);
            rec(pos + 1, rem - e);
        }
    };
    rec(0, degree);
    return b;
}

std::vector<std::vector<int>> r_subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<SmEquation> sm_equations(int m, int n, int r) {
    if (r < 0 || r + 1 > n)
        throw std::invalid_argument("sm_equations: need 0 <= r < n");
    auto jsets = r_subsets(n, r + 1);
    auto cvars = r_subsets(n, r);
    std::map<std::vector<int>, int> cindex;
    for (std::size_t i = 0; i < cvars.size(); ++i)
        cindex.emplace(cvars[i], static_cast<int>(i));

    std::vector<SmEquation> eqs;
    eqs.reserve(static_cast<std::size_t>(m) * jsets.size());
    for (int l = 0; l < m; ++l) {
        for (const auto& J : jsets) {
            SmEquation eq;
            eq.row = l;
            for (int i = 1; i <= r + 1; ++i) {
                SmTerm t;
                t.sign = (i % 2 == 0) ? 1 : -1;
                t.col = J[static_cast<std::size_t>(i - 1)];
                std::vector<int> I;
                I.reserve(static_cast<std::size_t>(r));
                for (int v : J)
                    if (v != t.col)
                        I.push_back(v);
                t.cvar = cindex.at(I);
                eq.terms.push_back(t);
            }
            eqs.push_back(std::move(eq));
        }
    }
    return eqs;
}

std::uint32_t eval_sm_equation(const Instance& inst, const SmEquation& eq,
                               const std::vector<std::uint32_t>& x,
                               const std::vector<std::uint32_t>& minor_values) {
    PrimeField f(inst.q);
    std::uint32_t acc = 0;
    for (const SmTerm& t : eq.terms) {
        std::uint32_t fe = 0; // f_{l, col}(x)
        for (int k = 0; k < inst.params.K; ++k)
            fe = f.add(fe, f.mul(inst.coeff(eq.row, t.col, k), x[static_cast<std::size_t>(k)]));
        std::uint32_t term = f.mul(fe, minor_values[static_cast<std::size_t>(t.cvar)]);
        acc = (t.sign > 0) ? f.add(acc, term) : f.sub(acc, term);
    }
    return acc;
}

namespace {

// Leibniz expansion of the r x r minor of C on the given columns, as a map
// from sorted entry-id tuples to +-1 contributions.
void minor_terms(int n, int r, const std::vector<int>& cols,
                 std::vector<std::pair<CEntryMono, int>>& out) {
    out.clear();
    std::vector<int> perm(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    do {
        int inv = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)])
                    ++inv;
        CEntryMono mono(static_cast<std::size_t>(r));
        for (int s = 0; s < r; ++s)
            mono[static_cast<std::size_t>(s)] = static_cast<std::uint16_t>(
                s * n + cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])]);
        std::sort(mono.begin(), mono.end());
        out.emplace_back(std::move(mono), inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

std::map<CEntryMono, long long> expand_plucker(const std::vector<std::uint8_t>& c_exponents,
                                               int n, int r) {
    auto cvars = r_subsets(n, r);
    if (c_exponents.size() != cvars.size())
        throw std::invalid_argument("expand_plucker: exponent vector has wrong length");
    std::map<CEntryMono, long long> poly;
    poly.emplace(CEntryMono{}, 1);
    std::vector<std::pair<CEntryMono, int>> terms;
    for (std::size_t vi = 0; vi < c_exponents.size(); ++vi) {
        for (int rep = 0; rep < c_exponents[vi]; ++rep) {
            minor_terms(n, r, cvars[vi], terms);
            std::map<CEntryMono, long long> next;
            for (const auto& [pm, pc] : poly) {
                for (const auto& [tm, ts] : terms) {
                    CEntryMono key;
                    key.reserve(pm.size() + tm.size());
                    std::merge(pm.begin(), pm.end(), tm.begin(), tm.end(), std::back_inserter(key));
                    next[key] += pc * ts;
                }
            }
            for (auto it = next.begin(); it != next.end();)
                it = (it->second == 0) ? next.erase(it) : std::next(it);
            poly = std::move(next);
        }
    }
    return poly;
}

std::vector<std::vector<std::uint8_t>> standard_cmonomials(int n, int r, int dc) {
    auto cvars = r_subsets(n, r);
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<int> chain;
    // chains I_1 <= ... <= I_dc in the componentwise order, I's as indices
    auto leq = [&](int a, int b) {
        for (int s = 0; s < r; ++s)
            if (cvars[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)] >
                cvars[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)])
                return false;
        return true;
    };
    std::function<void(int)> rec = [&](int depth) {
        if (depth == dc) {
            std::vector<std::uint8_t> expo(cvars.size(), 0);
            for (int v : chain)
                ++expo[static_cast<std::size_t>(v)];
            out.push_back(std::move(expo));
            return;
        }
        for (int v = 0; v < static_cast<int>(cvars.size()); ++v) {
            if (!chain.empty() && !leq(chain.back(), v))
                continue;
            chain.push_back(v);
            rec(depth + 1);
            chain.pop_back();
        }
    };
    rec(0);
    return out;
}

MacaulayContext MacaulayContext::build(int n, int r, int dc, std::uint32_t q) {
    if (dc < 1)
        throw std::invalid_argument("MacaulayContext: need dc >= 1");
    MacaulayContext ctx;
    ctx.n = n;
    ctx.r = r;
    ctx.dc = dc;
    ctx.q = q;
    ctx.cvars = r_subsets(n, r);
    const int ncv = static_cast<int>(ctx.cvars.size());
    ctx.cmons = MonomialBasis::build(ncv, dc);
    ctx.cmons_lo = MonomialBasis::build(ncv, dc - 1);

    PrimeField f(q);
    // expand every degree-dc monomial and index the C-entry monomials seen
    std::vector<std::map<CEntryMono, long long>> expansions;
    expansions.reserve(static_cast<std::size_t>(ctx.cmons.size()));
    std::map<CEntryMono, int> key_index;
    for (const auto& cm : ctx.cmons.list) {
        expansions.push_back(expand_plucker(cm, n, r));
        for (const auto& [k, v] : expansions.back())
            key_index.emplace(k, 0);
    }
    int nk = 0;
    for (auto& [k, idx] : key_index)
        idx = nk++;
    ctx.c_entry_monomials = nk;

    GfMatrix e(static_cast<std::size_t>(ctx.cmons.size()), static_cast<std::size_t>(nk));
    for (std::size_t i = 0; i < expansions.size(); ++i)
        for (const auto& [k, v] : expansions[i])
            e.at(i, static_cast<std::size_t>(key_index.at(k))) = f.reduce_i64(v);

    GfMatrix rref = e; // keep originals for coordinate extraction
    std::vector<std::size_t> piv = gf_rref(rref, q);
    Int expected = module_rank(n, r, dc);
    if (Int(static_cast<long>(piv.size())) != expected)
        throw std::logic_error("MacaulayContext: expansion rank != module rank");
    ctx.rc = static_cast<int>(piv.size());

    // the RREF basis is the identity on its pivot columns, so coordinates of
    // any row-space vector are its values there
    ctx.coords.assign(static_cast<std::size_t>(ctx.cmons.size()),
                      std::vector<std::uint32_t>(static_cast<std::size_t>(ctx.rc), 0));
    for (std::size_t i = 0; i < expansions.size(); ++i)
        for (std::size_t t = 0; t < piv.size(); ++t)
            ctx.coords[i][t] = e.get(i, piv[t]);

    ctx.cmul.assign(static_cast<std::size_t>(ctx.cmons_lo.size()), std::vector<int>(static_cast<std::size_t>(ncv)));
    for (int mu = 0; mu < ctx.cmons_lo.size(); ++mu) {
        for (int v = 0; v < ncv; ++v) {
            std::vector<std::uint8_t> prod = ctx.cmons_lo.list[static_cast<std::size_t>(mu)];
            ++prod[static_cast<std::size_t>(v)];
            ctx.cmul[static_cast<std::size_t>(mu)][static_cast<std::size_t>(v)] = ctx.cmons.index.at(prod);
        }
    }
    return ctx;
}

MacaulayRankResult macaulay_rank(const Instance& inst, int dx, int dc, const RankCaps& caps,
                                 const MacaulayContext* ctx_in) {
    const GmrParams& p = inst.params;
    if (dx < 0 || dc < 0)
        throw std::invalid_argument("macaulay_rank: need dx, dc >= 0");
    std::int64_t t0 = now_ms();

    MacaulayRankResult res;
    res.ambient_dim = macaulay_cols(p, dx, dc);
    if (dx < 1 || dc < 1) {
        // the equations live in bidegree (1, 1); nothing reaches lower
        res.rank = 0;
        res.observed_hf = res.ambient_dim;
        res.elapsed_ms = now_ms() - t0;
        return res;
    }

    MacaulayContext local;
    const MacaulayContext* ctx = ctx_in;
    if (!ctx) {
        local = MacaulayContext::build(p.n, p.r, dc, inst.q);
        ctx = &local;
    }
    if (ctx->n != p.n || ctx->r != p.r || ctx->dc != dc || ctx->q != inst.q)
        throw std::invalid_argument("macaulay_rank: context mismatch");

    MonomialBasis xmons = MonomialBasis::build(p.K, dx);
    MonomialBasis xmons_lo = MonomialBasis::build(p.K, dx - 1);
    const int rc = ctx->rc;
    const std::size_t cols = static_cast<std::size_t>(xmons.size()) * static_cast<std::size_t>(rc);

    auto eqs = sm_equations(p.m, p.n, p.r);
    const std::size_t rows = eqs.size() * static_cast<std::size_t>(xmons_lo.size()) *
                             static_cast<std::size_t>(ctx->cmons_lo.size());
    res.matrix_rows = rows;
    res.matrix_cols = cols;
    if (cols > caps.max_cols)
        throw CapExceeded("macaulay_rank: column count above cap");
    double ops = static_cast<double>(rows) * static_cast<double>(cols) * static_cast<double>(cols);
    if (ops > caps.max_ops)
        throw CapExceeded("macaulay_rank: estimated elimination work above cap");

    // x-monomial times variable -> index at degree dx
    std::vector<std::vector<int>> xmul(static_cast<std::size_t>(xmons_lo.size()),
                                       std::vector<int>(static_cast<std::size_t>(p.K)));
    for (int a = 0; a < xmons_lo.size(); ++a)
        for (int k = 0; k < p.K; ++k) {
            std::vector<std::uint8_t> prod = xmons_lo.list[static_cast<std::size_t>(a)];
            ++prod[static_cast<std::size_t>(k)];
            xmul[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = xmons.index.at(prod);
        }

    PrimeField f(inst.q);
    RankEliminator elim(inst.q, cols);
    std::vector<std::int64_t> scratch(cols);
    std::vector<std::uint32_t> rowv(cols);
    const std::size_t max_rank = std::min(cols, rows);
    for (const SmEquation& eq : eqs) {
        for (int a = 0; a < xmons_lo.size() && elim.rank() < max_rank; ++a) {
            for (int mu = 0; mu < ctx->cmons_lo.size(); ++mu) {
                std::fill(scratch.begin(), scratch.end(), 0);
                for (const SmTerm& t : eq.terms) {
                    int cm = ctx->cmul[static_cast<std::size_t>(mu)][static_cast<std::size_t>(t.cvar)];
                    const auto& co = ctx->coords[static_cast<std::size_t>(cm)];
                    for (int k = 0; k < p.K; ++k) {
                        std::uint32_t fc = inst.coeff(eq.row, t.col, k);
                        if (fc == 0)
                            continue;
                        std::int64_t c = t.sign > 0 ? static_cast<std::int64_t>(fc)
                                                    : -static_cast<std::int64_t>(fc);
                        std::int64_t* dst =
                            scratch.data() +
                            static_cast<std::size_t>(xmul[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]) *
                                static_cast<std::size_t>(rc);
                        for (int u = 0; u < rc; ++u)
                            dst[u] += c * co[static_cast<std::size_t>(u)];
                    }
                }
                for (std::size_t i = 0; i < cols; ++i)
                    rowv[i] = f.reduce_i64(scratch[i]);
                elim.add_row(rowv);
                if (elim.rank() >= max_rank)
                    break;
            }
        }
        if (elim.rank() >= max_rank)
            break;
    }
    res.rank = elim.rank();
    res.observed_hf = res.ambient_dim - Int(static_cast<unsigned long>(res.rank));
    res.elapsed_ms = now_ms() - t0;
    return res;
}

VerifyReport verify_series(const GmrParams& p, std::uint32_t q, int dc, int dx_max,
                           std::uint64_t seed, const RankCaps& caps,
                           const MacaulayContext* ctx) {
    VerifyReport rep;
    rep.params = p;
    rep.q = q;
    rep.seed = seed;
    rep.dc = dc;
    Instance inst = gen_instance(p, q, seed);
    HilbertResult pred = hs_sm_generic(p, dc, std::max(dx_max + 1, 8));
    for (int dx = 1; dx <= dx_max; ++dx) {
        VerifyRow row;
        row.dx = dx;
        if (dx < pred.series.order()) {
            row.predicted = pred.series[dx];
            row.post_truncation = false;
        } else {
            row.predicted = 0;
            row.post_truncation = pred.terminated;
        }
        MacaulayRankResult r = macaulay_rank(inst, dx, dc, caps, ctx);
        row.observed = r.observed_hf;
        row.match = (row.observed == row.predicted);
        row.elapsed_ms = r.elapsed_ms;
        rep.all_match = rep.all_match && row.match;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

TrialsReport genericity_trials(const GmrParams& p, std::uint32_t q,
                               const std::vector<int>& dc_set, int dx, int trials,
                               std::uint64_t master_seed, const RankCaps& caps,
                               int threads) {
    if (trials < 1)
        throw std::invalid_argument("genericity_trials: need trials >= 1");
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;

    // predictions and contexts are shared, read-only
    std::vector<MacaulayContext> ctxs;
    std::vector<Int> predicted(dc_set.size());
    std::vector<bool> post_trunc(dc_set.size());
    for (std::size_t i = 0; i < dc_set.size(); ++i) {
        ctxs.push_back(MacaulayContext::build(p.n, p.r, dc_set[i], q));
        HilbertResult h = hs_sm_generic(p, dc_set[i], std::max(dx + 1, 8));
        if (dx < h.series.order()) {
            predicted[i] = h.series[dx];
            post_trunc[i] = false;
        } else {
            predicted[i] = 0;
            post_trunc[i] = h.terminated;
        }
    }

    TrialsReport rep;
    rep.trials = trials;
    rep.log.assign(static_cast<std::size_t>(trials), {});

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= trials)
                return;
            TrialRecord rec;
            rec.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
            Instance inst = gen_instance(p, q, rec.seed);
            rec.match = true;
            for (std::size_t i = 0; i < dc_set.size(); ++i) {
                TrialCell cell;
                cell.dc = dc_set[i];
                cell.predicted = predicted[i];
                cell.post_truncation = post_trunc[i];
                MacaulayRankResult r = macaulay_rank(inst, dx, dc_set[i], caps, &ctxs[i]);
                cell.observed = r.observed_hf;
                cell.match = (cell.observed == cell.predicted);
                rec.match = rec.match && cell.match;
                rec.cells.push_back(std::move(cell));
            }
            rep.log[static_cast<std::size_t>(t)] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    rep.per_dc_fraction.assign(dc_set.size(), 0.0);
    for (const TrialRecord& rec : rep.log) {
        if (rec.match)
            ++rep.matched;
        for (std::size_t i = 0; i < dc_set.size(); ++i)
            if (rec.cells[i].match)
                rep.per_dc_fraction[i] += 1.0;
    }
    for (double& x : rep.per_dc_fraction)
        x /= trials;
    rep.fraction = static_cast<double>(rep.matched) / trials;
    return rep;
}

PlantedInstance make_planted_instance(const GmrParams& p, std::uint32_t q, std::uint64_t seed) {
    p.validate();
    if (p.D != 1)
        throw std::invalid_argument("make_planted_instance: D must be 1");
    PrimeField f(q);
    SplitMix64 g(seed);
    PlantedInstance out;
    out.x_star.resize(static_cast<std::size_t>(p.K));
    for (auto& x : out.x_star)
        x = g.below(q);
    out.x_star[static_cast<std::size_t>(p.K - 1)] = 1; // keeps the solve below well-posed
    out.c_star.resize(static_cast<std::size_t>(p.r) * static_cast<std::size_t>(p.n));
    for (auto& c : out.c_star)
        c = g.below(q);
    std::vector<std::uint32_t> amat(static_cast<std::size_t>(p.m) * static_cast<std::size_t>(p.r));
    for (auto& a : amat)
        a = g.below(q);

    Instance inst;
    inst.params = p;
    inst.q = q;
    inst.seed = seed;
    inst.coeffs.resize(static_cast<std::size_t>(p.m) * static_cast<std::size_t>(p.n) *
                       static_cast<std::size_t>(p.K));
    for (auto& c : inst.coeffs)
        c = g.below(q);
    // force F(x*) = A C*, solving for the coefficient of x_K
    for (int i = 0; i < p.m; ++i) {
        for (int j = 0; j < p.n; ++j) {
            std::uint32_t target = 0;
            for (int s = 0; s < p.r; ++s)
                target = f.add(target,
                               f.mul(amat[static_cast<std::size_t>(i) * static_cast<std::size_t>(p.r) +
                                          static_cast<std::size_t>(s)],
                                     out.c_star[static_cast<std::size_t>(s) * static_cast<std::size_t>(p.n) +
                                                static_cast<std::size_t>(j)]));
            std::uint32_t partial = 0;
            for (int k = 0; k + 1 < p.K; ++k)
                partial = f.add(partial, f.mul(inst.coeff(i, j, k), out.x_star[static_cast<std::size_t>(k)]));
            std::size_t idx = (static_cast<std::size_t>(i) * static_cast<std::size_t>(p.n) +
                               static_cast<std::size_t>(j)) *
                                  static_cast<std::size_t>(p.K) +
                              static_cast<std::size_t>(p.K - 1);
            inst.coeffs[idx] = f.sub(target, partial);
        }
    }
    out.inst = std::move(inst);
    return out;
}

} // namespace smrank
