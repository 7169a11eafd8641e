#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smrank/hilbert.hpp"

using namespace smrank;

TEST_CASE("module_rank") {
    CHECK(module_rank(3, 2, 1) == 3);   // one variable per 2-subset of 3 columns
    CHECK(module_rank(5, 3, 3) == 175);
    CHECK(module_rank(22, 6, 1) == binom_ext(22, 6));
    for (int n = 1; n <= 7; ++n)
        for (int r = 0; r <= std::min(n, 4); ++r)
            CHECK(module_rank(n, r, 0) == 1);
    // dc = 1 counts the minor variables themselves
    for (int n = 2; n <= 8; ++n)
        for (int r = 1; r <= std::min(n, 4); ++r)
            CHECK(module_rank(n, r, 1) == binom_ext(n, r));
}

TEST_CASE("macaulay_cols") {
    GmrParams p{5, 5, 15, 2, 1};
    CHECK(macaulay_cols(p, 1, 1) == Int(15) * binom_ext(5, 2));
    CHECK(macaulay_cols(p, 0, 0) == 1);
    // classical-binomial determinant equals the twisted-binomial one
    for (int n = 1; n <= 8; ++n)
        for (int r = 0; r <= std::min(4, n); ++r)
            for (int dc = 0; dc <= 5; ++dc) {
                GmrParams q{n, n, 3, r, 1};
                CHECK(macaulay_cols(q, 0, dc) == module_rank(n, r, dc));
            }
}

TEST_CASE("dimensions") {
    GmrParams p{2, 3, 4, 2, 1};
    RingDimensions d = dimensions(p);
    CHECK(d.krull_s == 7);
    CHECK(d.height_s == 2);
    CHECK(d.plucker_dim == 3);

    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 6; ++n)
            for (int r = 0; r <= std::min(m, n); ++r) {
                GmrParams q{m, n, 2, r, 1};
                RingDimensions dd = dimensions(q);
                CHECK(dd.krull_s + dd.height_s == m * n + r * (n - r) + 1);
            }

    GmrParams z{4, 5, 2, 0, 1};
    RingDimensions dz = dimensions(z);
    CHECK(dz.krull_s == 1);
    CHECK(dz.height_s == 20);
}

TEST_CASE("validity_region") {
    CHECK(validity_region(GmrParams{5, 5, 25, 3, 1}, 1) == Validity::proven);
    CHECK(validity_region(GmrParams{5, 5, 5, 3, 1}, 3) == Validity::unreliable);
    CHECK(validity_region(GmrParams{5, 5, 5, 3, 1}, 2) == Validity::conjectured_dc_small);
    CHECK(validity_region(GmrParams{22, 22, 255, 6, 1}, 1) == Validity::conjectured_overdetermined);
}

TEST_CASE("hs_naive constant term is the module rank") {
    CHECK(hs_naive(3, 3, 2, 1, 1)[0] == 3);
    for (int m = 2; m <= 5; ++m)
        for (int n = 2; n <= 5; ++n)
            for (int r = 1; r <= std::min(std::min(m, n), 3); ++r)
                for (int dc = 1; dc <= 3; ++dc)
                    CHECK(hs_naive(m, n, r, dc, 1)[0] == module_rank(n, r, dc));
}

TEST_CASE("hs_A constant term and (5,5,3,3)") {
    TruncatedSeries s = hs_A(5, 5, 3, 3, 6);
    CHECK(s[0] == 175);
    CHECK(s[1] == 3500);
    CHECK(s[5] == 7526750);
}

TEST_CASE("hs_delta reduces to the closed 1x1 form at r = 1") {
    TruncatedSeries s = hs_delta(4, 3, 1, 2, 6);
    long expect[6] = {6, 40, 150, 420, 980, 2016};
    for (int l = 0; l < 6; ++l)
        CHECK(s[l] == expect[l]);
}

TEST_CASE("four-way engine equality on a spot grid") {
    // exhaustive grid is in the acceptance suite; spot-check here,
    // including entries with negative upper binomial index (m - dc - j < 0)
    struct Case { int m, n, r, dc; };
    for (Case c : {Case{4, 4, 2, 1}, Case{5, 5, 3, 3}, Case{3, 5, 2, 3},
                   Case{6, 5, 3, 2}, Case{2, 6, 2, 4}, Case{5, 4, 1, 2},
                   Case{2, 2, 1, 1}}) {
        int order = 8;
        TruncatedSeries a = hs_naive(c.m, c.n, c.r, c.dc, order);
        CHECK(a == hs_delta(c.m, c.n, c.r, c.dc, order));
        CHECK(a == hs_B(c.m, c.n, c.r, c.dc, order));
        CHECK(a == hs_A(c.m, c.n, c.r, c.dc, order));
        CHECK(a == hs_det_sm(c.m, c.n, c.r, c.dc, order));
    }
    // the 1x1 case expands by hand: 2/(1-t)^3 = 2, 6, 12, 20, ...
    TruncatedSeries s = hs_B(2, 2, 1, 1, 4);
    CHECK(s[0] == 2);
    CHECK(s[1] == 6);
    CHECK(s[2] == 12);
    CHECK(s[3] == 20);
}

TEST_CASE("hs_det_sm coefficients stay non-negative for dc <= m - r") {
    for (int m = 2; m <= 7; ++m)
        for (int n = 2; n <= 7; ++n)
            for (int r = 1; r <= std::min({m, n, 3}); ++r)
                for (int dc = 1; dc <= m - r; ++dc) {
                    TruncatedSeries s = hs_det_sm(m, n, r, dc, 8);
                    for (int i = 0; i < s.order(); ++i)
                        CHECK(s[i] >= 0);
                }
}

TEST_CASE("det_a_shifted: the t-power division is exact") {
    Poly d = det_a_shifted(6, 5, 3, 2); // binom(3,2) = 3 zero lows removed
    REQUIRE(d.degree() == 3);
    CHECK(d.coeff(0) == 50);
    CHECK(d.coeff(1) == 60);
    CHECK(d.coeff(2) == 45);
    CHECK(d.coeff(3) == 20);
    CHECK(d.coeff(0) == module_rank(5, 3, 2));
}

TEST_CASE("hs_sm_generic degenerate cases") {
    // r = 0: a generic square system; (1-t)^4/(1-t)^3 = 1 - t, kept prefix (1)
    HilbertResult h = hs_sm_generic(GmrParams{2, 2, 3, 0, 1}, 0, 10);
    CHECK(h.terminated);
    REQUIRE(h.series.order() == 1);
    CHECK(h.series[0] == 1);
    CHECK(h.reg_degree == 1);
}

TEST_CASE("hs_sm_generic mismatch-region example") {
    GmrParams p{5, 5, 5, 3, 1};
    HilbertResult h = hs_sm_generic(p, 3, 10);
    CHECK(h.validity == Validity::unreliable);
    CHECK(h.terminated);
    REQUIRE(h.series.order() == 1);
    CHECK(h.series[0] == 175);
    CHECK(h.reg_degree == 1);

    RationalForm f = hs_sm_rational(p, 3);
    REQUIRE(f.numerator.size() == 3);
    CHECK(f.numerator[0] == 175);
    CHECK(f.numerator[1] == -175);
    CHECK(f.numerator[2] == 50);
    CHECK(f.denom_pow == 1);
}

TEST_CASE("hs_sm_generic proven-region prefix") {
    GmrParams p{5, 5, 15, 2, 1};
    HilbertResult h = hs_sm_generic(p, 1, 6);
    CHECK_FALSE(h.terminated);
    CHECK_FALSE(h.reg_degree.has_value());
    long expect[6] = {10, 100, 525, 1890, 5325, 12660};
    for (int i = 0; i < 6; ++i)
        CHECK(h.series[i] == expect[i]);
    CHECK(h.validity == Validity::proven);
    CHECK_FALSE(regularity_degree(p, 1, 256).has_value());
}

TEST_CASE("hs_sm_generic minors degeneration (dc = 0)") {
    GmrParams p{5, 5, 9, 2, 1};
    HilbertResult h = hs_sm_generic(p, 0, 20);
    REQUIRE(h.terminated);
    long expect[7] = {1, 9, 45, 65, 45, 9, 1};
    REQUIRE(h.series.order() == 7);
    for (int i = 0; i < 7; ++i)
        CHECK(h.series[i] == expect[i]);
    CHECK(h.reg_degree == 7);
}

TEST_CASE("hs_sm_generic is not symmetric in m and n") {
    HilbertResult a = hs_sm_generic(GmrParams{6, 5, 10, 2, 1}, 1, 3);
    HilbertResult b = hs_sm_generic(GmrParams{5, 6, 10, 2, 1}, 1, 3);
    CHECK(a.series[0] == 10); // binom(5, 2)
    CHECK(b.series[0] == 15); // binom(6, 2)
    CHECK(a.series != b.series);
}

TEST_CASE("regularity degree of the large sweep endpoints") {
    // frozen curve data points at r = 6 (m = n = 22, K = 255)
    GmrParams p{22, 22, 255, 6, 1};
    CHECK(regularity_degree(p, 1) == 46);
    CHECK(regularity_degree(p, 0) == 49);
}

TEST_CASE("parameter validation") {
    auto validate = [](int m, int n, int K, int r, int D) {
        GmrParams p{m, n, K, r, D};
        p.validate();
    };
    CHECK_THROWS_AS(validate(0, 3, 2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(validate(3, 3, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(validate(3, 3, 2, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(validate(3, 3, 2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(hs_naive(3, 3, 2, 0, 4), std::invalid_argument);
}
