#include <gtest/gtest.h>

#include <map>
#include <random>

#include "wallx/kclass.hpp"

using namespace wallx;

namespace {

RatFun lam(int i) { return RatFun::variable(static_cast<Var>(i - 1)); }

/// Independent oracle: the Laurent polynomial (x^{b+1} - x^{-a}) / (x - 1)
/// in x = t0 by synthetic division, returned as exponent -> coefficient.
std::map<long, long> rr_oracle(long a, long b)
{
    // Multiply through by x^a: (x^{n} - 1) / (x - 1) with n = a + b + 1.
    const long n = a + b + 1;
    std::map<long, long> quot;
    if (n == 0) return quot;
    // Dense numerator coefficients in ascending degree over [min(0,n), max(0,n)].
    const long lo = std::min(0L, n), hi = std::max(0L, n);
    std::vector<long> num(hi - lo + 1, 0);
    num[n - lo] += 1;
    num[0 - lo] -= 1;
    // Divide by (x - 1) from the top: q_{i-1} = r_i, r_{i-1} += q_{i-1}.
    std::vector<long> r = num;
    for (long i = hi; i > lo; --i) {
        const long q = r[i - lo];
        if (q != 0) quot[i - 1] += q;
        r[i - 1 - lo] += q;
        r[i - lo] = 0;
    }
    EXPECT_EQ(r[0], 0);
    std::map<long, long> shifted;
    for (auto [e, c] : quot) {
        if (c != 0) shifted[e - a] = c;
    }
    return shifted;
}

KClass random_kclass(std::mt19937_64& rng, bool allow_zero)
{
    KClass k;
    const int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
        Weight w = Weight::of(static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2,
                              static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 3) - 1);
        if (!allow_zero && w.is_zero()) continue;
        k.add(w, static_cast<long>(rng() % 5) - 2);
    }
    return k;
}

}  // namespace

TEST(KClass, Ops)
{
    EXPECT_EQ(KClass::single(Weight::t1()).dual(), KClass::single(Weight::t1(-1)));
    EXPECT_EQ(KClass::single(Weight::t1()) * KClass::single(Weight::t3(), 2), KClass::single(Weight::of(1, 0, 1), 2));
    KClass z = KClass::single(Weight::t1()) + KClass::single(Weight::t1(), -1);
    EXPECT_TRUE(z.empty());
    EXPECT_EQ(z.rank(), 0);
    EXPECT_EQ(KClass::single(Weight{}, 3).zero_mult(), 3);
}

TEST(KClass, T0IsFolded)
{
    EXPECT_EQ(Weight::from_torus({1, 0, 0, 0, 0}), Weight::of(-1, -1, -1));
    EXPECT_TRUE(Weight::from_torus({1, 1, 1, 1, 0}).is_zero());
    EXPECT_EQ(Weight::from_torus({2, 3, 0, 1, 1}), Weight::of(1, -2, -1, 1));
}

TEST(KClass, DualIsInvolution)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        KClass k = random_kclass(rng, true);
        EXPECT_EQ(k.dual().dual(), k);
        EXPECT_EQ(k.dual().rank(), k.rank());
    }
}

TEST(ChiP1, HandValues)
{
    EXPECT_EQ(chi_p1(0, 0), KClass::single(Weight{}));
    EXPECT_EQ(chi_p1(0, 1), KClass::single(Weight{}) + KClass::single(Weight::t0(1)));
    EXPECT_TRUE(chi_p1(0, -1).empty());
    EXPECT_EQ(chi_p1(0, -3), KClass::single(Weight::t0(-1), -1) + KClass::single(Weight::t0(-2), -1));
}

TEST(ChiP1, MatchesRiemannRochOracle)
{
    for (long a = -5; a <= 5; ++a) {
        for (long b = -5; b <= 5; ++b) {
            KClass expect;
            for (auto [e, c] : rr_oracle(a, b)) expect.add(Weight::t0(e), c);
            EXPECT_EQ(chi_p1(a, b), expect) << a << "," << b;
        }
    }
}

TEST(ChiP1, RankAndSwapSymmetry)
{
    for (long a = -5; a <= 5; ++a) {
        for (long b = -5; b <= 5; ++b) {
            EXPECT_EQ(chi_p1(a, b).rank(), a + b + 1);
            const KClass forward = chi_p1(a, b);
            KClass swapped;
            for (const auto& [w, m] : forward.terms()) swapped.add(w.dual(), m);
            EXPECT_EQ(chi_p1(b, a), swapped) << a << "," << b;
        }
    }
}

TEST(EulerClass, HandValues)
{
    EXPECT_EQ(euler_class(KClass::single(Weight::t3(-1))), -lam(3));
    EXPECT_EQ(euler_class(KClass::single(Weight::t1()) + KClass::single(Weight::t2(), -1)), lam(1) / lam(2));
    EXPECT_TRUE(euler_class(KClass::single(Weight{}, 2) + KClass::single(Weight::t1())).is_zero());
    EXPECT_THROW(euler_class(KClass::single(Weight{}, -1)), PoleAtZeroWeight);
    // t0 = -(lam1 + lam2 + lam3)
    EXPECT_EQ(euler_class(KClass::single(Weight::t0(1))), -(lam(1) + lam(2) + lam(3)));
}

TEST(EulerClass, Multiplicative)
{
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 100) {
        KClass a = random_kclass(rng, false), b = random_kclass(rng, false);
        if (a.zero_mult() != 0 || b.zero_mult() != 0 || (a + b).zero_mult() != 0) continue;
        EXPECT_EQ(euler_class(a + b), euler_class(a) * euler_class(b));
        ++checked;
    }
}

TEST(EulerClass, ModularAgreesWithSymbolic)
{
    std::mt19937_64 rng(8);
    PointSampler sampler(5);
    for (int i = 0; i < 50; ++i) {
        KClass a = random_kclass(rng, false);
        if (a.zero_mult() != 0) continue;
        EvalPoint p = sampler.next();
        EXPECT_EQ(euler_class(a).eval_mod(p), euler_class_mod(a, p));
    }
}

TEST(KClass, TextRoundTrip)
{
    KClass k = KClass::single(Weight::of(0, 0, -1, 0), -1) + KClass::single(Weight::of(1, 0, 0, 1), 2);
    EXPECT_EQ(k.to_string(), "sum[ -1*(0,0,-1,0) ; 2*(1,0,0,1) ]");
    EXPECT_EQ(KClass::parse(k.to_string()), k);
    EXPECT_EQ(KClass().to_string(), "sum[]");
    EXPECT_TRUE(KClass::parse("sum[]").empty());
    EXPECT_THROW(KClass::parse("sum[ 1*(0,0) ]"), ParseError);
}
