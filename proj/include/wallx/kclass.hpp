#pragma once

// Virtual characters of T0 x C*_m and their Euler classes.

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "wallx/error.hpp"
#include "wallx/linear_form.hpp"
#include "wallx/modular.hpp"
#include "wallx/ratfun.hpp"

namespace wallx {

/// Exponents of t1, t2, t3, e^m; t0 is always folded into (t1 t2 t3)^-1.
struct Weight {
    std::array<long, 4> w{};

    static Weight of(long w1, long w2, long w3, long wm = 0) { return Weight{{w1, w2, w3, wm}}; }

    /// t0^w0 t1^w1 t2^w2 t3^w3 e^{wm m}.
    static Weight from_torus(const Weight5& full)
    {
        return of(full[1] - full[0], full[2] - full[0], full[3] - full[0], full[4]);
    }

    static Weight t0(long k) { return of(-k, -k, -k); }
    static Weight t1(long k = 1) { return of(k, 0, 0); }
    static Weight t2(long k = 1) { return of(0, k, 0); }
    static Weight t3(long k = 1) { return of(0, 0, k); }
    static Weight em(long k = 1) { return of(0, 0, 0, k); }

    bool is_zero() const { return w == std::array<long, 4>{}; }

    Weight dual() const { return of(-w[0], -w[1], -w[2], -w[3]); }

    friend Weight operator*(const Weight& a, const Weight& b)
    {
        return of(a.w[0] + b.w[0], a.w[1] + b.w[1], a.w[2] + b.w[2], a.w[3] + b.w[3]);
    }
    friend Weight operator/(const Weight& a, const Weight& b) { return a * b.dual(); }

    /// Linear form w1 lam1 + w2 lam2 + w3 lam3 + wm m.
    FormCoeffs form() const { return {w[0], w[1], w[2], w[3]}; }

    std::string to_string() const
    {
        return "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]) + "," +
               std::to_string(w[3]) + ")";
    }

    friend auto operator<=>(const Weight&, const Weight&) = default;
};

class KClass {
public:
    using Terms = std::map<Weight, long>;

    KClass() = default;

    static KClass single(const Weight& w, long mult = 1)
    {
        KClass k;
        k.add(w, mult);
        return k;
    }

    void add(const Weight& w, long mult)
    {
        if (mult == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, 0);
        it->second += mult;
        if (it->second == 0) terms_.erase(it);
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    long rank() const
    {
        long r = 0;
        for (const auto& [w, m] : terms_) r += m;
        return r;
    }

    long zero_mult() const
    {
        auto it = terms_.find(Weight{});
        return it == terms_.end() ? 0 : it->second;
    }

    long mult(const Weight& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }

    KClass dual() const
    {
        KClass r;
        for (const auto& [w, m] : terms_) r.add(w.dual(), m);
        return r;
    }

    KClass scaled(long s) const
    {
        KClass r;
        for (const auto& [w, m] : terms_) r.add(w, m * s);
        return r;
    }

    KClass twisted(const Weight& by) const
    {
        KClass r;
        for (const auto& [w, m] : terms_) r.add(w * by, m);
        return r;
    }

    friend KClass operator+(KClass a, const KClass& b)
    {
        for (const auto& [w, m] : b.terms_) a.add(w, m);
        return a;
    }
    friend KClass operator-(KClass a, const KClass& b)
    {
        for (const auto& [w, m] : b.terms_) a.add(w, -m);
        return a;
    }
    KClass operator-() const { return scaled(-1); }

    /// Tensor product: convolution of weights.
    friend KClass operator*(const KClass& a, const KClass& b)
    {
        KClass r;
        for (const auto& [wa, ma] : a.terms_) {
            for (const auto& [wb, mb] : b.terms_) r.add(wa * wb, ma * mb);
        }
        return r;
    }

    KClass& operator+=(const KClass& b) { return *this = *this + b; }
    KClass& operator-=(const KClass& b) { return *this = *this - b; }

    friend bool operator==(const KClass&, const KClass&) = default;

    /// `sum[ <mult>*(w1,w2,w3,wm) ; ... ]`, weights in lexicographic order.
    std::string to_string() const
    {
        std::string s = "sum[";
        bool first = true;
        for (const auto& [w, m] : terms_) {
            s += first ? " " : " ; ";
            first = false;
            s += std::to_string(m) + "*" + w.to_string();
        }
        s += first ? "]" : " ]";
        return s;
    }

    static KClass parse(std::string_view text)
    {
        detail::Lexer lx(text);
        lx.expect("sum");
        lx.expect('[');
        KClass k;
        if (!lx.accept(']')) {
            while (true) {
                const long m = lx.read_int();
                lx.expect('*');
                lx.expect('(');
                Weight w;
                for (int i = 0; i < 4; ++i) {
                    if (i) lx.expect(',');
                    w.w[i] = lx.read_int();
                }
                lx.expect(')');
                k.add(w, m);
                if (lx.accept(']')) break;
                lx.expect(';');
            }
        }
        if (!lx.at_end()) lx.fail("trailing input");
        return k;
    }

private:
    Terms terms_;
};

/// Equivariant Euler characteristic of O(a Z0 + b Zinf) on P^1 as a
/// t0-character: the sum of t0^k over [-a, b], signed and reversed when
/// the range is empty.
inline KClass chi_p1(long a, long b)
{
    KClass k;
    if (-a <= b) {
        for (long e = -a; e <= b; ++e) k.add(Weight::t0(e), 1);
    } else {
        for (long e = b + 1; e <= -a - 1; ++e) k.add(Weight::t0(e), -1);
    }
    return k;
}

/// Product over weights of their linear forms to the multiplicity.
/// A positive zero-weight multiplicity makes the class vanish.
inline RatFun euler_class(const KClass& v)
{
    const long z = v.zero_mult();
    if (z < 0) throw PoleAtZeroWeight("Euler class with negative zero-weight multiplicity " + std::to_string(z));
    if (z > 0) return RatFun::zero();
    RatFun::FactorMap f;
    Scalar scale = 1;
    for (const auto& [w, m] : v.terms()) {
        auto sf = canonical_form(w.form());
        auto [content, prim] = RatFun::primitive_part(sf->form.coeffs());
        Scalar c = content;
        if (sf->negated) c = -c;
        if (m > 0) {
            for (long i = 0; i < m; ++i) scale *= c;
        } else {
            for (long i = 0; i < -m; ++i) scale /= c;
        }
        f[prim] += static_cast<int>(m);
    }
    return RatFun::from_parts(std::move(f), Poly::constant(scale), Poly::constant(1));
}

/// Euler class evaluated modulo p; throws PointCollision when a
/// denominator weight vanishes at the point.
inline ModInt euler_class_mod(const KClass& v, const EvalPoint& pt)
{
    const long z = v.zero_mult();
    if (z < 0) throw PoleAtZeroWeight("Euler class with negative zero-weight multiplicity " + std::to_string(z));
    if (z > 0) return ModInt(0);
    ModInt num(1), den(1);
    for (const auto& [w, m] : v.terms()) {
        ModInt val(0);
        for (int i = 0; i < kNumVars; ++i) val += ModInt(w.w[i]) * pt[i];
        if (m > 0) {
            num *= val.pow(static_cast<std::uint64_t>(m));
        } else {
            if (val.is_zero()) throw PointCollision("Euler class denominator vanishes at evaluation point");
            den *= val.pow(static_cast<std::uint64_t>(-m));
        }
    }
    return num / den;
}

}  // namespace wallx
