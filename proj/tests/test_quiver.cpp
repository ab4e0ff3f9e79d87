#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "wallx/quiver.hpp"
#include "quiver_oracle.hpp"

using namespace wallx;

namespace {

Theta th(const char* a, const char* b) { return {parse_rational(a), parse_rational(b)}; }

FramedRep graded(FramedRep r)
{
    r.grading = infer_grading(r);
    return r;
}

}  // namespace

TEST(Walls, Examples)
{
    const auto walls = walls_up_to(3);
    EXPECT_EQ(walls.size(), 16u);
    const WallLabel l1 = WallLabel::lmm(1);
    EXPECT_EQ(l1.line(), std::make_pair(1L, 0L));
    EXPECT_TRUE(l1.contains(th("0", "1")));
    EXPECT_FALSE(l1.contains(th("0", "-1")));
    EXPECT_EQ(WallLabel::lmm(2).line(), std::make_pair(2L, 1L));
    EXPECT_TRUE(WallLabel::lmm(2).contains(th("-1", "2")));
    EXPECT_EQ(WallLabel::linf_minus().line(), std::make_pair(1L, 1L));
    EXPECT_TRUE(WallLabel::linf_minus().contains(th("-1", "1")));
    EXPECT_TRUE(WallLabel::linf_plus().contains(th("1", "-1")));
}

TEST(Walls, LabelRoundTrip)
{
    for (const auto& w : walls_up_to(4)) EXPECT_EQ(WallLabel::parse(w.label.to_string()), w.label);
    EXPECT_THROW(WallLabel::parse("Lmm:0"), ParseError);
    EXPECT_THROW(WallLabel::parse("Lxx:2"), ParseError);
    EXPECT_NO_THROW(WallLabel::parse("Lpm:0"));
}

TEST(Walls, Objects)
{
    const WallObject o = wall_object(WallLabel::lmm(2));
    EXPECT_EQ(o.object, "O_P1(1)");
    EXPECT_EQ(o.dimvec, std::make_pair(2L, 1L));
    EXPECT_FALSE(o.flop);
    EXPECT_EQ(wall_object(WallLabel::lpm(3)).dimvec, std::make_pair(3L, 4L));
    EXPECT_EQ(wall_object(WallLabel::lpm(3)).object, "O_P1(-4)[1]");
    EXPECT_TRUE(wall_object(WallLabel::lmp(2)).flop);
    EXPECT_TRUE(wall_object(WallLabel::lpp(2)).flop);
    // Theta vanishes on the object's dimension vector exactly on its wall.
    for (const auto& w : walls_up_to(5)) {
        const auto [d0, d1] = wall_object(w.label).dimvec;
        EXPECT_EQ(w.c0 * d1 - w.c1 * d0, 0) << w.label.to_string();
    }
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify_theta(th("1", "1"), 3).chamber, "empty");
    EXPECT_EQ(classify_theta(th("-1", "-1"), 3).chamber, "NC");
    const Classification w = classify_theta(th("-5/2", "3"), 8);
    ASSERT_EQ(w.kind, Classification::Kind::on_wall);
    EXPECT_EQ(*w.wall, WallLabel::lmm(6));
    const Classification z = classify_theta(th("-17/20", "1"), 8);
    ASSERT_EQ(z.chamber, "Zt");
    EXPECT_EQ(*z.t, Rational(20, 3));
    EXPECT_EQ(*z.t_interval, std::make_pair(6L, 7L));
    EXPECT_EQ(*z.lower, WallLabel::lmm(6));
    EXPECT_EQ(*z.upper, WallLabel::lmm(7));
}

TEST(Classify, InconclusiveNearAccumulation)
{
    EXPECT_THROW(classify_theta(th("-17/20", "1"), 6), Inconclusive);
    EXPECT_THROW(classify_theta(th("-101/100", "1"), 20), Inconclusive);
    EXPECT_EQ(classify_theta(th("-1", "1"), 1).wall, WallLabel::linf_minus());
}

TEST(Classify, ZtParameterNearWall)
{
    // Theta = (-m + 1 + eps, m) sits just below t = m.
    for (int m = 2; m <= 6; ++m) {
        const Rational eps(1, 1000);
        const Theta t{Rational(-m + 1) + eps, Rational(m)};
        const Classification c = classify_theta(t, 10);
        ASSERT_EQ(c.chamber, "Zt");
        EXPECT_LT(*c.t, m);
        EXPECT_GT(*c.t, m - 1);
        EXPECT_EQ(*c.t_interval, std::make_pair(long(m - 1), long(m)));
    }
}

TEST(Classify, WallsMapToIntegerT)
{
    for (int m = 1; m <= 9; ++m) {
        // A point on Lmm(m): theta = (-(m-1), m).
        const Theta t{Rational(-(m - 1)), Rational(m)};
        EXPECT_EQ(theta_to_zt(t), Rational(m));
        EXPECT_EQ(*classify_theta(t, 9).wall, WallLabel::lmm(m));
    }
    EXPECT_THROW(theta_to_zt(th("-2", "2")), DivisionByZero);
}

TEST(Classify, LocallyConstantOffWalls)
{
    const int kmax = 12;
    const Rational eps(1, 100000);
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
            const Theta t{Rational(3 * i, 10) + Rational(1, 997), Rational(3 * j, 10) + Rational(1, 1009)};
            Classification base;
            try {
                base = classify_theta(t, kmax);
            } catch (const Inconclusive&) {
                continue;
            }
            if (base.kind != Classification::Kind::chamber) continue;
            for (auto [dx, dy] : {std::pair{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}}) {
                const Theta p{t.t0 + eps * dx, t.t1 + eps * dy};
                const Classification c = classify_theta(p, kmax);
                EXPECT_EQ(c.chamber, base.chamber);
                EXPECT_EQ(c.lower, base.lower);
                EXPECT_EQ(c.upper, base.upper);
            }
        }
    }
}

TEST(Classify, GridAgreesWithRayOrdering)
{
    const int kmax = 12;
    const auto mismatches = oracle::grid_mismatches(kmax);
    EXPECT_TRUE(mismatches.empty()) << (mismatches.empty() ? "" : mismatches.front());
}

TEST(Classify, PrimaryChambers)
{
    EXPECT_EQ(primary_chamber(th("-1", "1")), PrimaryChamber::I);
    EXPECT_EQ(primary_chamber(th("-3", "1")), PrimaryChamber::II_III);
    EXPECT_EQ(primary_chamber(th("-1", "-1")), PrimaryChamber::II_III);
    EXPECT_EQ(primary_chamber(th("1", "-1")), PrimaryChamber::IV);
    EXPECT_EQ(primary_chamber(th("1", "1")), PrimaryChamber::other);
}

TEST(Dimvec, Bookkeeping)
{
    EXPECT_EQ(dimvec_bookkeeping(3, 1), std::make_pair(3L, 2L));
    for (long n = 0; n < 5; ++n) {
        for (long d = -3; d < 4; ++d) {
            const auto [d0, d1] = dimvec_bookkeeping(n, d);
            EXPECT_EQ(dimvec_to_nd(d0, d1), std::make_pair(n, d));
        }
    }
}

TEST(Rational, Parse)
{
    EXPECT_EQ(parse_rational("-17/20"), Rational(-17, 20));
    EXPECT_EQ(parse_rational("-0.85"), Rational(-17, 20));
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
    EXPECT_THROW(parse_rational("1."), ParseError);
}

TEST(Relations, Examples)
{
    EXPECT_TRUE(check_relations(FramedRep::zero(2, 2)).pass);
    FramedRep r = FramedRep::zero(1, 1);
    r.a1[0][0] = 1;
    EXPECT_TRUE(check_relations(r).pass);
    r.c[0][0] = 1;
    const RelationCheck bad = check_relations(r);
    EXPECT_FALSE(bad.pass);
    EXPECT_EQ(*bad.failed, "d*a1 = a1*c");
}

TEST(Relations, CubicRelation)
{
    // a2 b1 a1 != a1 b1 a2 on dims (1,2).
    FramedRep r = FramedRep::zero(1, 2);
    r.a1[0][0] = 1;
    r.a2[1][0] = 1;
    r.b1[0][0] = 1;
    EXPECT_EQ(*check_relations(r).failed, "a2*b1*a1 = a1*b1*a2");
}

TEST(Closure, Examples)
{
    FramedRep r = FramedRep::zero(1, 0);
    r.framing[0] = 1;
    EXPECT_TRUE(is_cyclic(r));
    FramedRep s = FramedRep::zero(1, 1);
    s.a1[0][0] = 1;
    s.framing[0] = 1;
    EXPECT_TRUE(is_cyclic(s));
    FramedRep u = FramedRep::zero(1, 1);
    u.b1[0][0] = 1;
    u.framing[0] = 1;
    EXPECT_FALSE(is_cyclic(u));
    EXPECT_EQ(subrep_closure(u, {u.framing}, {}), std::make_pair(1, 0));
}

TEST(Closure, MonotoneAndIdempotent)
{
    FramedRep r = FramedRep::zero(2, 2);
    r.a1[0][0] = 1;
    r.b1[1][0] = 1;
    r.dd[1][1] = 0;
    const std::vector<Rational> e0{1, 0}, e1{0, 1}, f1{0, 1};
    const auto small = subrep_closure(r, {e0}, {});
    const auto big = subrep_closure(r, {e0, e1}, {});
    EXPECT_LE(small.first, big.first);
    EXPECT_LE(small.second, big.second);
    EXPECT_EQ(small, std::make_pair(2, 1));
    // Closing the closure changes nothing.
    EXPECT_EQ(subrep_closure(r, {e0, e1}, {std::vector<Rational>{1, 0}}), big);
    EXPECT_EQ(subrep_closure(r, {}, {f1}), std::make_pair(0, 1));
}

TEST(Stability, Examples)
{
    FramedRep p = FramedRep::zero(1, 0);
    p.framing[0] = 1;
    EXPECT_EQ(is_stable_graded(graded(p), th("-1", "-1")).verdict, StabilityResult::Verdict::stable);

    FramedRep e = FramedRep::zero(1, 1);
    e.a1[0][0] = 1;
    const StabilityResult re = is_stable_graded(graded(e), th("1", "1"));
    EXPECT_EQ(re.verdict, StabilityResult::Verdict::unstable);
    EXPECT_EQ(*re.witness, (std::array<int, 3>{1, 1, 0}));

    FramedRep b = FramedRep::zero(1, 1);
    b.b1[0][0] = 1;
    b.framing[0] = 1;
    const StabilityResult rb = is_stable_graded(graded(b), th("-1", "-1"));
    EXPECT_EQ(rb.verdict, StabilityResult::Verdict::unstable);
    // The violating subrepresentation is the framed V0 with Theta = -1 > -2.
    EXPECT_EQ(*rb.witness, (std::array<int, 3>{1, 0, 1}));
}

TEST(Stability, TieIsSemistable)
{
    // On Lmm(1) the object O_P1 (dims (1,0), unframed summand) ties at zero.
    FramedRep r = FramedRep::zero(1, 0);
    const StabilityResult s = is_stable_graded(graded(r), th("0", "1"));
    EXPECT_EQ(s.verdict, StabilityResult::Verdict::semistable);
    EXPECT_EQ(*s.witness, (std::array<int, 3>{1, 0, 0}));
}

TEST(Stability, GradingPrecondition)
{
    FramedRep r = FramedRep::zero(2, 0);
    EXPECT_THROW(is_stable_graded(r, th("-1", "-1")), NotMultiplicityFree);
    r.grading = Grading{{{0}, {0}}, {}};
    EXPECT_THROW(is_stable_graded(r, th("-1", "-1")), NotMultiplicityFree);
    FramedRep two = FramedRep::zero(1, 2);
    two.a1[0][0] = 1;
    two.a1[1][0] = 1;
    EXPECT_FALSE(infer_grading(two).has_value());
}

TEST(Stability, NcChamberStableIffCyclic)
{
    const auto reps = oracle::small_reps(2, 2);
    ASSERT_GT(reps.size(), 100u);
    int graded_count = 0;
    for (const auto& rep : reps) {
        ASSERT_TRUE(check_relations(rep).pass);
        const auto g = infer_grading(rep);
        if (!g) continue;
        ++graded_count;
        FramedRep r = rep;
        r.grading = g;
        const bool cyclic = is_cyclic(r);
        for (const Theta& t : {th("-1", "-1"), th("-2", "-3")}) {
            const auto v = is_stable_graded(r, t).verdict;
            EXPECT_EQ(v == StabilityResult::Verdict::stable, cyclic);
        }
    }
    EXPECT_GT(graded_count, 50);
}

TEST(Stability, EmptyChamberHasNoStableNonzeroRep)
{
    for (const auto& rep : oracle::small_reps(2, 1)) {
        if (rep.d0 + rep.d1 == 0) continue;
        const auto g = infer_grading(rep);
        if (!g) continue;
        FramedRep r = rep;
        r.grading = g;
        EXPECT_NE(is_stable_graded(r, th("1", "2")).verdict, StabilityResult::Verdict::stable);
    }
}

TEST(Theta, NonCanonicalInputIsNormalized)
{
    const Theta raw{Rational(-6, 12), Rational(4, 4)};
    EXPECT_EQ(raw.to_string(), "(-1/2,1)");
    const Classification c = classify_theta(raw, 4);
    ASSERT_EQ(c.kind, Classification::Kind::on_wall);
    EXPECT_EQ(*c.wall, WallLabel::lmm(2));
    EXPECT_EQ(theta_to_zt(raw), Rational(2));
}
