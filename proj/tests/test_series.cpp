#include <gtest/gtest.h>

#include <random>

#include "wallx/checks.hpp"
#include "wallx/series.hpp"

using namespace wallx;

namespace {

RatFun lam3() { return RatFun::variable(Var::lam3); }
RatFun m() { return RatFun::variable(Var::m); }
RatFun c(long v) { return RatFun::constant(v); }
RatFun q(long a, long b) { return RatFun::constant(Scalar(a, b)); }

RatSeries tpoly(std::vector<RatFun> cs, int order)
{
    RatSeries s(SeriesShape::t_series(order));
    for (int i = 0; i < static_cast<int>(cs.size()) && i <= order; ++i) s.set(i, cs[i]);
    return s;
}

RatSeries random_series(std::mt19937& rng, SeriesShape shape, bool unit)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    RatSeries s(shape);
    for (int qq = 0; qq <= shape.q_order; ++qq) {
        for (int t = shape.t_min; t <= shape.t_max; ++t) {
            if (shape.has_q() && std::abs(t) > qq) continue;
            RatFun v = c(coef(rng));
            if (coef(rng) > 0) v = v * m() / lam3();
            s.set(qq, t, v);
        }
    }
    if (unit) s.set(0, 0, c(1) + m() / lam3());
    return s;
}

}  // namespace

TEST(Series, TruncatedProduct)
{
    EXPECT_EQ(tpoly({c(1), c(1)}, 2) * tpoly({c(1), c(-1)}, 2), tpoly({c(1), c(0), c(-1)}, 2));
}

TEST(Series, GeometricInverse)
{
    EXPECT_EQ(RatSeries::one(SeriesShape::t_series(3)) / tpoly({c(1), c(-1)}, 3), tpoly({c(1), c(1), c(1), c(1)}, 3));
}

TEST(Series, NonUnitDivisor)
{
    EXPECT_THROW(RatSeries::one(SeriesShape::t_series(2)) / tpoly({c(0), c(1)}, 2), NonUnitDivisor);
}

TEST(Series, RingLawsAtEveryOrder)
{
    std::mt19937 rng(11);
    for (int order = 0; order <= 4; ++order) {
        for (const SeriesShape shape : {SeriesShape::t_series(order), SeriesShape::qt_series(order)}) {
            for (int trial = 0; trial < 3; ++trial) {
                const RatSeries a = random_series(rng, shape, false);
                const RatSeries b = random_series(rng, shape, true);
                const RatSeries cc = random_series(rng, shape, false);
                EXPECT_EQ((a * b) / b, a);
                EXPECT_EQ(a * b, b * a);
                EXPECT_EQ((a * b) * cc, a * (b * cc));
                EXPECT_EQ(a * (b + cc), a * b + a * cc);
                EXPECT_TRUE((a - a).is_zero());
            }
        }
    }
}

TEST(Series, NoCoefficientBeyondTruncation)
{
    const RatSeries s = tpoly({c(1), c(1)}, 1);
    EXPECT_EQ((s * s).coeff(2), c(0));
    EXPECT_EQ((s * s).coeff(1), c(2));
    EXPECT_THROW(RatSeries(SeriesShape::t_series(1)).set(2, c(1)), Error);
}

TEST(BinomSeries, Examples)
{
    const RatFun x = m() / lam3();
    EXPECT_EQ(binom_series(x, TDirection::t, 2), tpoly({c(1), -x, x * (x - c(1)) / c(2)}, 2));
    EXPECT_EQ(binom_series(x, TDirection::t, 0), RatSeries::one(SeriesShape::t_series(0)));
    EXPECT_EQ(binom_series(c(2) * x, TDirection::t, 1), tpoly({c(1), c(-2) * x}, 1));
    const RatSeries inv = binom_series(x, TDirection::t_inverse, 2);
    EXPECT_EQ(inv.coeff(-1), -x);
    EXPECT_EQ(inv.coeff(-2), x * (x - c(1)) / c(2));
}

TEST(BinomSeries, IntegerExponentIsPolynomial)
{
    // (1 - t)^3 has no t^4 term.
    const RatSeries s = binom_series(c(3), TDirection::t, 5);
    EXPECT_EQ(s, tpoly({c(1), c(-3), c(3), c(-1)}, 5));
}

TEST(BinomSeries, ExponentsAdd)
{
    const RatFun x = m() / lam3();
    const RatFun y = c(2) * m() / lam3() - c(1);
    EXPECT_EQ(binom_series(x, TDirection::t, 4) * binom_series(y, TDirection::t, 4),
              binom_series(x + y, TDirection::t, 4));
}

TEST(ProductSeries, LeadingCoefficients)
{
    const RatFun x = m() / lam3();
    EXPECT_EQ(product_series(ProductKind::PT, 2).coeff(1, 1), -x);
    EXPECT_EQ(product_series(ProductKind::PT, 2).coeff(1, -1), c(0));
    EXPECT_EQ(product_series(ProductKind::MacMahon, 2).coeff(1, 0), c(2) * x);
    const RatSeries nc = product_series(ProductKind::NC, 2);
    EXPECT_EQ(nc.coeff(1, -1), -x);
    EXPECT_EQ(nc.coeff(1, 1), -x);
    EXPECT_EQ(nc.coeff(1, 0), c(2) * x);
}

TEST(ProductSeries, SecondOrderAgainstHandExpansion)
{
    const RatFun x = m() / lam3();
    // PT q^2: (1 - q t)^x (1 - q^2 t)^{2x} gives binom(x,2) t^2 - 2x t.
    const RatSeries pt = product_series(ProductKind::PT, 2);
    EXPECT_EQ(pt.coeff(2, 2), x * (x - c(1)) / c(2));
    EXPECT_EQ(pt.coeff(2, 1), c(-2) * x);
    // MacMahon^{2x} q^2: 2x(2x+1)/2 + 4x from (1-q)^{-2x} (1-q^2)^{-4x}.
    const RatSeries mm = product_series(ProductKind::MacMahon, 2);
    EXPECT_EQ(mm.coeff(2, 0), c(2) * x * (c(2) * x + c(1)) / c(2) + c(4) * x);
}

TEST(ProductSeries, NcIsPtTimesFlopTimesMacMahon)
{
    const int order = 3;
    const SeriesShape shape = SeriesShape::qt_series(order);
    RatSeries flop = RatSeries::one(shape);
    for (int k = 1; k <= order; ++k) flop = flop * binom_power(m_over_lam3(k), k, -1, shape);
    EXPECT_EQ(product_series(ProductKind::NC, order),
              product_series(ProductKind::PT, order) * flop * product_series(ProductKind::MacMahon, order));
}

TEST(PrimarySeries, Examples)
{
    EXPECT_EQ(primary_series(PrimaryChamber::I, 1, 3).coeff(2, 2), q(1, 2));
    EXPECT_EQ(primary_series(PrimaryChamber::other, 5, 3), RatSeries::one(SeriesShape::qt_series(3)));
    EXPECT_EQ(primary_series(PrimaryChamber::II_III, 1, 3).coeff(1, -1), c(-1));
    EXPECT_EQ(primary_series(PrimaryChamber::IV, 2, 3).coeff(2, -2), c(2));
    EXPECT_EQ(primary_series(PrimaryChamber::II_III, 1, 3).coeff(2, 0), c(-1));
}

TEST(PrimarySeries, ExponentialLaw)
{
    for (auto ch : {PrimaryChamber::I, PrimaryChamber::II_III, PrimaryChamber::IV}) {
        EXPECT_EQ(primary_series(ch, 2, 4) * primary_series(ch, 3, 4), primary_series(ch, 5, 4));
        EXPECT_EQ(primary_series(ch, 2, 4) * primary_series(ch, -2, 4), RatSeries::one(SeriesShape::qt_series(4)));
    }
    EXPECT_EQ(primary_series(PrimaryChamber::I, 1, 4) * primary_series(PrimaryChamber::IV, 1, 4),
              primary_series(PrimaryChamber::II_III, 1, 4));
}

TEST(Wallcross, QuotientExamples)
{
    const RatFun x = m() / lam3();
    EXPECT_EQ(wallcross_quotient(1, I0::ox(), 2), tpoly({c(1), -x, x * (x - c(1)) / c(2)}, 2));
    EXPECT_EQ(wallcross_quotient(2, I0::ilp1(1), 1), tpoly({c(1), c(-2) * x}, 1));
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(wallcross_quotient(k, I0::ox(), 0), RatSeries::one(SeriesShape::t_series(0)));
}

TEST(Wallcross, SymbolicChecksPass)
{
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_wallcross(k, I0::ox(), 3, BackendPolicy::symbolic()).pass) << k;
    EXPECT_TRUE(check_wallcross(2, I0::ilp1(1), 3, BackendPolicy::symbolic()).pass);
    EXPECT_TRUE(check_wallcross(3, I0::ip1(), 2, BackendPolicy::symbolic()).pass);
}

TEST(Wallcross, EvalCheckAtDeskScale)
{
    const CheckReport r = check_wallcross(3, I0::ip1(), 3, BackendPolicy::eval(5, 7));
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.degrees.size(), 4u);
    for (const auto& d : r.degrees) {
        EXPECT_EQ(d.backend, "eval");
        EXPECT_EQ(d.points, 5);
    }
    ASSERT_TRUE(r.sz_bound.has_value());
    EXPECT_LT(*r.sz_bound, 1e-60);
    EXPECT_EQ(r.eval_points.size(), 5u);
}

TEST(Wallcross, AutoBackendSwitchesAboveThreshold)
{
    BackendPolicy p;
    p.threshold = 1;
    const CheckReport r = check_wallcross(1, I0::ox(), 3, p);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.degrees[1].backend, "symbolic");
    EXPECT_EQ(r.degrees[2].backend, "eval");
}

TEST(Wallcross, SignOverrideBreaksIdentity)
{
    SignOverrides ov{{"plus:Lmm1,i0=OX,comp=1", -1}};
    const CheckReport r = check_wallcross(1, I0::ox(), 1, BackendPolicy::symbolic(), ov);
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.degrees[0].equal);
    EXPECT_FALSE(r.degrees[1].equal);
}

TEST(Wallcross, DependsOnlyOnRatio)
{
    // Two evaluations with the same m/lam3 ratio give the same coefficients.
    const RatSeries s = wallcross_quotient(2, I0::ox(), 3);
    auto at = [](long l1, long l2, long l3, long mm) {
        EvalPoint p;
        p.values = {ModInt(l1), ModInt(l2), ModInt(l3), ModInt(mm)};
        return p;
    };
    for (int d = 0; d <= 3; ++d) EXPECT_EQ(s.coeff(d).eval_mod(at(3, 5, 7, 11)), s.coeff(d).eval_mod(at(13, 17, 14, 22)));
}

TEST(Js, ClosedFormulaMatchesBinomial)
{
    for (int k = 1; k <= 3; ++k) {
        for (int d = 0; d <= 3; ++d) EXPECT_EQ(js_closed_formula(k, d), js_binomial(k, d)) << k << "," << d;
    }
}

TEST(Js, Examples)
{
    const CheckReport r1 = check_js(1, 2, BackendPolicy::symbolic());
    EXPECT_TRUE(r1.pass);
    EXPECT_EQ(RatFun::parse(r1.degrees[0].lhs), -m() / lam3());
    EXPECT_EQ(RatFun::parse(r1.degrees[1].lhs), binomial_rf(m() / lam3(), 2));
    const CheckReport r2 = check_js(2, 1, BackendPolicy::symbolic());
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(RatFun::parse(r2.degrees[0].lhs), c(-2) * m() / lam3());
}

TEST(Js, HardInvariantUpToK3D4)
{
    for (int k = 1; k <= 3; ++k) {
        const CheckReport r = check_js(k, 4, BackendPolicy::symbolic());
        EXPECT_TRUE(r.pass) << k;
        for (const auto& d : r.degrees) {
            EXPECT_EQ(d.extra["localization_vs_closed"], "equal");
            EXPECT_EQ(d.extra["closed_vs_binomial"], "equal");
        }
    }
}

TEST(Js, EvalBackendAgrees)
{
    EXPECT_TRUE(check_js(3, 3, BackendPolicy::eval(5, 3)).pass);
}

TEST(Dimred, Examples)
{
    const CheckReport r1 = check_dimred(1, 2);
    EXPECT_TRUE(r1.pass);
    EXPECT_EQ(RatFun::parse(r1.degrees[0].lhs), c(-1));
    EXPECT_EQ(RatFun::parse(r1.degrees[1].lhs), c(0));
    const auto& pts = r1.degrees[1].extra["fixed_points"];
    bool saw_thick = false;
    for (const auto& p : pts) {
        if (p["support"] == "thickened") {
            saw_thick = true;
            EXPECT_EQ(RatFun::parse(p["substituted"].get<std::string>()), c(0));
            EXPECT_TRUE(p["chi_contains_t3"].get<bool>());
        }
    }
    EXPECT_TRUE(saw_thick);
    EXPECT_EQ(RatFun::parse(check_dimred(2, 1).degrees[0].lhs), c(-2));
}

TEST(Dimred, TotalsUpToK3D3)
{
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_dimred(k, 3).pass) << k;
}

TEST(Dimred, SubstitutionCommutesWithArithmetic)
{
    const RatFun a = m() * m() / (lam3() + RatFun::variable(Var::lam1));
    const RatFun b = (m() - c(2) * lam3()) / RatFun::variable(Var::lam2);
    EXPECT_EQ(substitute_m(a * b), substitute_m(a) * substitute_m(b));
    EXPECT_EQ(substitute_m(a + b), substitute_m(a) + substitute_m(b));
    EXPECT_THROW(substitute_m(c(1) / (m() - lam3())), PoleAtSubstitution);
}

TEST(InsertionFree, Examples)
{
    const CheckReport r = check_insertion_free(1, 3);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(RatFun::parse(r.degrees[0].lhs), c(-1) / lam3());
    EXPECT_EQ(RatFun::parse(r.degrees[1].lhs), c(1) / (c(2) * lam3() * lam3()));
    const CheckReport r2 = check_insertion_free(2, 2);
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(RatFun::parse(r2.degrees[0].lhs), c(0));
    EXPECT_TRUE(check_insertion_free(3, 2).pass);
}

TEST(Example, QuadrupleSumMatchesPipeline)
{
    EXPECT_TRUE(check_example(2).pass);
}

TEST(SignSearch, Examples)
{
    const auto pts = js_fixed_points(1, 1);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(sign_search(pts, -m() / lam3()), std::vector<int>{1});
    EXPECT_EQ(sign_search(pts, m() / lam3()), std::vector<int>{-1});
    EXPECT_EQ(sign_search(pts, c(5)), std::nullopt);
}

TEST(SignSearch, FirstLexicographicCancellation)
{
    const auto one = js_fixed_points(1, 1);
    std::vector<FixedPoint> two{one[0], one[0]};
    EXPECT_EQ(sign_search(two, c(0)), (std::vector<int>{1, -1}));
}

TEST(SignSearch, CapExceeded)
{
    const auto one = js_fixed_points(1, 1);
    std::vector<FixedPoint> many(21, one[0]);
    EXPECT_THROW(sign_search(many, c(0)), CapExceeded);
}

TEST(SignSearch, RecoversRuleSignsForFiber)
{
    // The rule signs already make the fiber sum match, so the all-plus
    // vector relative to them is found first.
    const auto pts = js_fixed_points(2, 2);
    const auto s = sign_search(pts, js_binomial(2, 2));
    ASSERT_TRUE(s.has_value());
    for (int v : *s) EXPECT_EQ(v, 1);
}

TEST(Report, JsonShapeAndPassFlag)
{
    const CheckReport r = check_js(1, 1, BackendPolicy::symbolic());
    const json j = r.to_json();
    EXPECT_EQ(j["command"], "js");
    EXPECT_EQ(j["degrees"][0]["verdict"], "equal");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_TRUE(j["elapsed_ms"].is_null());
    CheckReport bad = r;
    DegreeRecord rec;
    rec.equal = false;
    bad.add(rec);
    EXPECT_FALSE(bad.pass);
}

TEST(Parallel, DeterministicAcrossThreadCounts)
{
    set_thread_count(1);
    const std::string a = check_wallcross(2, I0::ilp1(1), 3, BackendPolicy::eval(5, 9)).to_json().dump();
    set_thread_count(4);
    const std::string b = check_wallcross(2, I0::ilp1(1), 3, BackendPolicy::eval(5, 9)).to_json().dump();
    set_thread_count(1);
    EXPECT_EQ(a, b);
}
