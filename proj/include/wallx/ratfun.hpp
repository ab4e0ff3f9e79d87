#pragma once

// Exact rational functions in lam1, lam2, lam3, m stored as
//   prod_f f^{e_f} * num / den
// with f ranging over primitive canonical linear forms.

#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wallx/error.hpp"
#include "wallx/linear_form.hpp"
#include "wallx/modular.hpp"
#include "wallx/multipoly.hpp"

namespace wallx {

class RatFun {
public:
    using FactorMap = std::map<LinearForm, int>;

    /// Zero.
    RatFun() : den_(Poly::constant(1)) {}
    explicit RatFun(long c) : RatFun(constant(c)) {}

    static RatFun zero() { return {}; }
    static RatFun one() { return constant(1); }
    static RatFun constant(const Scalar& c) { return from_poly(Poly::constant(c)); }
    static RatFun variable(Var v) { return from_form_coeffs(unit_coeffs(v)); }

    static RatFun from_poly(Poly p) { return from_parts({}, std::move(p), Poly::constant(1)); }

    /// (raw form)^exp; the zero form raises DivisionByZero for exp < 0 and
    /// gives 0 for exp > 0.
    static RatFun from_form_coeffs(const FormCoeffs& raw, int exp = 1)
    {
        auto sf = canonical_form(raw);
        if (!sf) {
            if (exp < 0) throw DivisionByZero("negative power of the zero form");
            return exp == 0 ? one() : zero();
        }
        return form_power(*sf, exp);
    }

    /// (+-form)^exp.
    static RatFun form_power(const SignedForm& sf, int exp)
    {
        RatFun r = one();
        if (exp == 0) return r;
        auto [content, prim] = primitive_part(sf.form.coeffs());
        Scalar scale = pow_scalar(Scalar(content), exp);
        if (sf.negated && (exp % 2 != 0)) scale = -scale;
        r.num_ = Poly::constant(scale);
        r.factored_[prim] = exp;
        return r;
    }

    /// Builds and normalizes; throws DivisionByZero if den is zero.
    static RatFun from_parts(FactorMap factored, Poly num, Poly den)
    {
        RatFun r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        // Re-key through primitive parts so callers may pass any canonical form.
        for (const auto& [f, e] : factored) {
            if (e == 0) continue;
            auto [content, prim] = primitive_part(f.coeffs());
            r.factored_[prim] += e;
            if (content != 1) r.num_ = r.num_.scaled(pow_scalar(Scalar(content), e));
        }
        r.normalize();
        return r;
    }

    const FactorMap& factored() const { return factored_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    /// True when the value is a constant, returned through `out`.
    bool is_constant(Scalar* out = nullptr) const
    {
        if (!factored_.empty() || !num_.is_constant() || !den_.is_constant()) return false;
        if (out) *out = num_.constant_value() / den_.constant_value();
        return true;
    }

    RatFun operator-() const
    {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) { return sum({a, b}); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return sum({a, -b}); }

    friend RatFun operator*(const RatFun& a, const RatFun& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        RatFun r;
        r.factored_ = a.factored_;
        for (const auto& [f, e] : b.factored_) r.factored_[f] += e;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ * b.den_;
        r.normalize();
        return r;
    }

    RatFun inverse() const
    {
        if (is_zero()) throw DivisionByZero("inverse of zero rational function");
        RatFun r;
        for (const auto& [f, e] : factored_) r.factored_[f] = -e;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize();
        return r;
    }

    friend RatFun operator/(const RatFun& a, const RatFun& b)
    {
        if (b.is_zero()) throw DivisionByZero("division by zero rational function");
        return a * b.inverse();
    }

    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
    RatFun& operator/=(const RatFun& b) { return *this = *this / b; }

    RatFun pow(int n) const
    {
        if (n < 0) return inverse().pow(-n);
        if (n == 0) return one();
        if (is_zero()) return {};
        RatFun r;
        for (const auto& [f, e] : factored_) r.factored_[f] = e * n;
        r.num_ = poly_pow(num_, n);
        r.den_ = poly_pow(den_, n);
        r.normalize();
        return r;
    }

    /// Exact equality through the difference.
    friend bool operator==(const RatFun& a, const RatFun& b) { return (a - b).is_zero(); }

    /// Sum of many terms over one common denominator. Forms get the
    /// minimum exponent across terms; the remaining factors are expanded
    /// per term and the polynomial numerators added.
    static RatFun sum(const std::vector<RatFun>& terms)
    {
        std::vector<const RatFun*> live;
        for (const auto& t : terms) {
            if (!t.is_zero()) live.push_back(&t);
        }
        if (live.empty()) return {};
        if (live.size() == 1) return *live.front();

        FactorMap lo;
        for (const RatFun* t : live) {
            for (const auto& [f, e] : t->factored_) lo.try_emplace(f, 0);
        }
        for (auto& [f, e] : lo) {
            int m = 0;
            bool first = true;
            for (const RatFun* t : live) {
                auto it = t->factored_.find(f);
                const int te = it == t->factored_.end() ? 0 : it->second;
                m = first ? te : std::min(m, te);
                first = false;
            }
            e = m;
        }

        // Distinct residual denominators, multiplied together.
        std::vector<const Poly*> dens;
        for (const RatFun* t : live) {
            bool seen = false;
            for (const Poly* d : dens) {
                if (*d == t->den_) {
                    seen = true;
                    break;
                }
            }
            if (!seen) dens.push_back(&t->den_);
        }

        Poly total;
        for (const RatFun* t : live) {
            Poly p = t->num_;
            for (const auto& [f, m] : lo) {
                auto it = t->factored_.find(f);
                const int te = it == t->factored_.end() ? 0 : it->second;
                for (int i = 0; i < te - m; ++i) p = p.times_linear(f.coeffs());
            }
            for (const Poly* d : dens) {
                if (!(*d == t->den_)) p = p * *d;
            }
            total += p;
        }
        Poly common = Poly::constant(1);
        for (const Poly* d : dens) common = common * *d;

        RatFun r;
        r.factored_ = std::move(lo);
        r.num_ = std::move(total);
        r.den_ = std::move(common);
        r.normalize();
        return r;
    }

    /// Specializes m to lam3. Throws PoleAtSubstitution if a denominator
    /// factor vanishes.
    RatFun substitute_m_by_lam3() const
    {
        if (is_zero()) return {};
        FactorMap out;
        Scalar scale = 1;
        for (const auto& [f, e] : factored_) {
            FormCoeffs c = f.coeffs();
            c[2] += c[3];
            c[3] = 0;
            auto sf = canonical_form(c);
            if (!sf) {
                if (e < 0) throw PoleAtSubstitution("denominator factor " + f.to_string() + " vanishes at m = lam3");
                return {};
            }
            auto [content, prim] = primitive_part(sf->form.coeffs());
            Scalar s = pow_scalar(Scalar(content), e);
            if (sf->negated && (e % 2 != 0)) s = -s;
            scale *= s;
            out[prim] += e;
        }
        Poly den = den_.substitute_m_by_lam3();
        if (den.is_zero()) throw PoleAtSubstitution("residual denominator vanishes at m = lam3");
        return from_parts(std::move(out), num_.substitute_m_by_lam3().scaled(scale), std::move(den));
    }

    /// Same value with every factored form multiplied into num or den.
    RatFun expanded() const
    {
        RatFun r;
        r.num_ = num_;
        r.den_ = den_;
        for (const auto& [f, e] : factored_) {
            for (int i = 0; i < std::abs(e); ++i) {
                if (e > 0) r.num_ = r.num_.times_linear(f.coeffs());
                else r.den_ = r.den_.times_linear(f.coeffs());
            }
        }
        return r;
    }

    /// Evaluation modulo p; throws PointCollision on a vanishing denominator.
    ModInt eval_mod(const EvalPoint& pt) const
    {
        if (is_zero()) return ModInt(0);
        auto coeff = [](const Scalar& s) { return ModInt::from_scalar(s); };
        ModInt acc = num_.evaluate<ModInt>(pt.values, coeff);
        const ModInt d = den_.evaluate<ModInt>(pt.values, coeff);
        if (d.is_zero()) throw PointCollision("residual denominator vanishes at evaluation point");
        acc = acc / d;
        ModInt inv_acc(1);
        for (const auto& [f, e] : factored_) {
            ModInt v(0);
            for (int i = 0; i < kNumVars; ++i) v += ModInt(f[i]) * pt[i];
            if (e > 0) {
                acc *= v.pow(static_cast<std::uint64_t>(e));
            } else {
                if (v.is_zero()) throw PointCollision("factored denominator vanishes at evaluation point");
                inv_acc *= v.pow(static_cast<std::uint64_t>(-e));
            }
        }
        return acc / inv_acc;
    }

    /// Upper bound on the total degree of numerator and denominator after
    /// clearing denominators; feeds the Schwartz-Zippel bound.
    int degree_bound() const
    {
        int d = num_.total_degree() + den_.total_degree();
        for (const auto& [f, e] : factored_) d += std::abs(e);
        return d;
    }

    /// `prod[ <form>^<exp> ; ... ] * ( <poly> ) / ( <poly> )`
    std::string to_string() const
    {
        std::string s = "prod[";
        bool first = true;
        for (const auto& [f, e] : factored_) {
            s += first ? " " : " ; ";
            first = false;
            s += f.to_string() + "^" + std::to_string(e);
        }
        s += first ? "] * ( " : " ] * ( ";
        s += num_.to_string() + " ) / ( " + den_.to_string() + " )";
        return s;
    }

    static RatFun parse(std::string_view text)
    {
        detail::Lexer lx(text);
        RatFun r = read(lx);
        if (!lx.at_end()) lx.fail("trailing input");
        return r;
    }

    static RatFun read(detail::Lexer& lx)
    {
        lx.expect("prod");
        lx.expect('[');
        FactorMap f;
        if (!lx.accept(']')) {
            while (true) {
                const FormCoeffs c = detail::read_form(lx);
                lx.expect('^');
                const long e = lx.read_int();
                auto sf = canonical_form(c);
                if (!sf || sf->negated) lx.fail("form is not in canonical orientation");
                f[sf->form] += static_cast<int>(e);
                if (lx.accept(']')) break;
                lx.expect(';');
            }
        }
        lx.expect('*');
        lx.expect('(');
        Poly num = detail::read_poly(lx);
        lx.expect(')');
        lx.expect('/');
        lx.expect('(');
        Poly den = detail::read_poly(lx);
        lx.expect(')');
        if (den.is_zero()) lx.fail("zero denominator");
        return from_parts(std::move(f), std::move(num), std::move(den));
    }

    /// Splits a canonical form into positive integer content and primitive part.
    static std::pair<long, LinearForm> primitive_part(const FormCoeffs& c)
    {
        long g = 0;
        for (long x : c) g = std::gcd(g, std::abs(x));
        if (g <= 1) return {1, LinearForm::from_canonical(c)};
        FormCoeffs p{};
        for (int i = 0; i < kNumVars; ++i) p[i] = c[i] / g;
        return {g, LinearForm::from_canonical(p)};
    }

private:
    static FormCoeffs unit_coeffs(Var v)
    {
        FormCoeffs c{};
        c[static_cast<int>(v)] = 1;
        return c;
    }

    static Scalar pow_scalar(Scalar base, int e)
    {
        if (e < 0) {
            base = 1 / base;
            e = -e;
        }
        Scalar acc = 1;
        for (int i = 0; i < e; ++i) acc *= base;
        return acc;
    }

    static Poly poly_pow(const Poly& p, int n)
    {
        Poly acc = Poly::constant(1);
        for (int i = 0; i < n; ++i) acc = acc * p;
        return acc;
    }

    /// If p = c * f for a primitive canonical form f, returns (c, f).
    static std::optional<std::pair<Scalar, LinearForm>> as_scaled_form(const Poly& p)
    {
        if (p.is_zero() || p.total_degree() != 1) return std::nullopt;
        for (const auto& t : p.terms()) {
            if (t.first.degree() != 1) return std::nullopt;
        }
        // Integer vector proportional to the coefficients.
        mpz_class lcm_den = 1;
        for (const auto& t : p.terms()) lcm_den = lcm(lcm_den, mpz_class(t.second.get_den()));
        FormCoeffs c{};
        mpz_class g = 0;
        std::array<mpz_class, kNumVars> ints;
        for (const auto& t : p.terms()) {
            int v = 0;
            while (t.first.exponent(v) == 0) ++v;
            ints[v] = mpz_class(t.second * lcm_den);
            g = gcd(g, ints[v]);
        }
        for (int v = 0; v < kNumVars; ++v) {
            mpz_class q = ints[v] / g;
            if (!q.fits_slong_p()) return std::nullopt;
            c[v] = q.get_si();
        }
        // c is primitive; orient it.
        auto sf = canonical_form(c);
        Scalar scale = Scalar(g) / Scalar(lcm_den);
        if (sf->negated) scale = -scale;
        return std::make_pair(scale, sf->form);
    }

    void normalize()
    {
        if (num_.is_zero()) {
            factored_.clear();
            den_ = Poly::constant(1);
            return;
        }
        if (den_.is_zero()) throw DivisionByZero("zero residual denominator");

        // Linear residuals become factored forms; dividing out a known form
        // can leave a new linear residual, so repeat until stable.
        for (bool changed = true; changed;) {
            changed = false;
            if (auto lf = as_scaled_form(num_)) {
                factored_[lf->second] += 1;
                num_ = Poly::constant(lf->first);
                changed = true;
            }
            if (auto lf = as_scaled_form(den_)) {
                factored_[lf->second] -= 1;
                num_ = num_.scaled(1 / lf->first);
                den_ = Poly::constant(1);
                changed = true;
            }
            for (auto& [f, e] : factored_) {
                if (!num_.is_constant()) {
                    while (auto q = num_.divide_linear(f.coeffs())) {
                        num_ = std::move(*q);
                        ++e;
                        changed = true;
                        if (num_.is_constant()) break;
                    }
                }
                if (!den_.is_constant()) {
                    while (auto q = den_.divide_linear(f.coeffs())) {
                        den_ = std::move(*q);
                        --e;
                        changed = true;
                        if (den_.is_constant()) break;
                    }
                }
            }
        }
        for (auto it = factored_.begin(); it != factored_.end();) {
            it = it->second == 0 ? factored_.erase(it) : std::next(it);
        }

        if (den_.is_constant()) {
            num_ = num_.scaled(1 / den_.constant_value());
            den_ = Poly::constant(1);
        } else {
            const Scalar lc = den_.leading_coeff();
            if (lc != 1) {
                num_ = num_.scaled(1 / lc);
                den_ = den_.scaled(1 / lc);
            }
        }
    }

    FactorMap factored_;
    Poly num_;
    Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFun& v) { return os << v.to_string(); }

/// x (x - 1) ... (x - d + 1) / d!
inline RatFun binomial_rf(const RatFun& x, int d)
{
    RatFun acc = RatFun::one();
    Scalar fact = 1;
    for (int j = 0; j < d; ++j) {
        acc *= x - RatFun::constant(j);
        fact *= j + 1;
    }
    return acc * RatFun::constant(1 / fact);
}

inline RatFun substitute_m(const RatFun& v) { return v.substitute_m_by_lam3(); }

}  // namespace wallx
