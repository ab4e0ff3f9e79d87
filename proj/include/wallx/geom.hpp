#pragma once

// Torus-equivariant sheaves on the zero section P^1 of X = O(-1,-1,0),
// their chi-pairings, the classified fixed points and their contributions.

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wallx/combinatorics.hpp"
#include "wallx/error.hpp"
#include "wallx/kclass.hpp"
#include "wallx/ratfun.hpp"

namespace wallx {

/// O(a Z0 + b Zinf) (x) twist on P^1.
struct EquivLineBundle {
    long a = 0;
    long b = 0;
    Weight twist;

    friend bool operator==(const EquivLineBundle&, const EquivLineBundle&) = default;
};

struct EquivSheaf {
    std::vector<EquivLineBundle> summands;

    std::size_t size() const { return summands.size(); }
    bool empty() const { return summands.empty(); }

    void add(long a, long b, const Weight& twist) { summands.push_back({a, b, twist}); }

    /// Adds L (x) (1 + t3 + ... + t3^{r-1}).
    void add_thickened(long a, long b, const Weight& twist, int r)
    {
        for (int j = 0; j < r; ++j) add(a, b, twist * Weight::t3(j));
    }

    friend EquivSheaf operator+(EquivSheaf x, const EquivSheaf& y)
    {
        x.summands.insert(x.summands.end(), y.summands.begin(), y.summands.end());
        return x;
    }

    std::string to_string() const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < summands.size(); ++i) {
            const auto& l = summands[i];
            if (i) s += ", ";
            s += "O(" + std::to_string(l.a) + "Z0+" + std::to_string(l.b) + "Zinf)" + l.twist.to_string();
        }
        return s + "}";
    }
};

enum class Ambient { P1, Y3fold, Z3fold, X4fold };

/// Normal bundle of P^1 inside each ambient space.
struct AmbientNormalData {
    Ambient ambient = Ambient::P1;
    std::vector<EquivLineBundle> normal;

    static AmbientNormalData of(Ambient a)
    {
        AmbientNormalData n{a, {}};
        const EquivLineBundle n1{0, -1, Weight::t1(-1)};
        const EquivLineBundle n2{0, -1, Weight::t2(-1)};
        const EquivLineBundle n3{0, 0, Weight::t3(-1)};
        switch (a) {
        case Ambient::P1: break;
        case Ambient::Y3fold: n.normal = {n1, n3}; break;
        case Ambient::Z3fold: n.normal = {n1, n2}; break;
        case Ambient::X4fold: n.normal = {n1, n2, n3}; break;
        }
        return n;
    }

    /// Line bundles whose sum is the p-th exterior power.
    std::vector<EquivLineBundle> exterior_power(int p) const
    {
        std::vector<EquivLineBundle> out;
        for (const auto& s : subsets(0, static_cast<int>(normal.size()) - 1, p)) {
            EquivLineBundle l;
            for (int i : s) {
                l.a += normal[i].a;
                l.b += normal[i].b;
                l.twist = l.twist * normal[i].twist;
            }
            out.push_back(l);
        }
        return out;
    }
};

/// chi(X, F) = chi(P^1, F) as a character.
inline KClass chi_X(const EquivSheaf& F)
{
    KClass k;
    for (const auto& l : F.summands) k += chi_p1(l.a, l.b).twisted(l.twist);
    return k;
}

/// chi_P1(L, L') = twist(L'/L) (x) chi_p1(a' - a, b' - b).
inline KClass chi_p1_pair(const EquivLineBundle& l, const EquivLineBundle& lp)
{
    return chi_p1(lp.a - l.a, lp.b - l.b).twisted(lp.twist / l.twist);
}

/// sum_p (-1)^p chi_P1(F, G (x) wedge^p N) for the ambient's normal bundle N.
inline KClass chi_pair(const EquivSheaf& F, const EquivSheaf& G, Ambient ambient)
{
    if (ambient == Ambient::X4fold) throw UnsupportedConfiguration("chi_pair is defined for P1, Y3fold and Z3fold only");
    const auto nd = AmbientNormalData::of(ambient);
    KClass k;
    for (int p = 0; p <= static_cast<int>(nd.normal.size()); ++p) {
        const long sign = (p % 2 == 0) ? 1 : -1;
        for (const auto& wedge : nd.exterior_power(p)) {
            for (const auto& li : F.summands) {
                for (const auto& lj : G.summands) {
                    const EquivLineBundle shifted{lj.a + wedge.a, lj.b + wedge.b, lj.twist * wedge.twist};
                    k += chi_p1_pair(li, shifted).scaled(sign);
                }
            }
        }
    }
    return k;
}

/// -chi_X(F) + chi_Y(F, F).
inline KClass sqrt_class(const EquivSheaf& F) { return chi_pair(F, F, Ambient::Y3fold) - chi_X(F); }

/// chi_X(F)^dual (x) e^m.
inline KClass taut_class(const EquivSheaf& F) { return chi_X(F).dual().twisted(Weight::em()); }

/// chi_Z(F, F) - chi_Z(F) + chi_Z(F)^dual (x) t3.
inline KClass chiZ_class(const EquivSheaf& F)
{
    const KClass c = chi_X(F);
    return chi_pair(F, F, Ambient::Z3fold) - c + c.dual().twisted(Weight::t3());
}

/// -chi_X(F) + chi_Z(F, F).
inline KClass sqrt_class_Z(const EquivSheaf& F) { return chi_pair(F, F, Ambient::Z3fold) - chi_X(F); }

enum class Support { on_Y, on_Z, thickened };

inline std::string to_string(Support s)
{
    switch (s) {
    case Support::on_Y: return "on_Y";
    case Support::on_Z: return "on_Z";
    case Support::thickened: return "thickened";
    }
    return "?";
}

/// Starting object of a wall-crossing: O_X, the ideal of the l-fold
/// thickened P^1, or the ideal of P^1 (used for walls k >= 3).
struct I0 {
    enum class Kind { OX, IlP1, IP1 };
    Kind kind = Kind::OX;
    int l = 0;

    static I0 ox() { return {Kind::OX, 0}; }
    static I0 ilp1(int l) { return {Kind::IlP1, l}; }
    static I0 ip1() { return {Kind::IP1, 0}; }

    std::string to_string() const
    {
        switch (kind) {
        case Kind::OX: return "OX";
        case Kind::IlP1: return "IlP1:" + std::to_string(l);
        case Kind::IP1: return "IP1";
        }
        return "?";
    }

    static I0 parse(std::string_view s)
    {
        if (s == "OX") return ox();
        if (s == "IP1") return ip1();
        if (s.substr(0, 5) == "IlP1:") {
            try {
                const int l = std::stoi(std::string(s.substr(5)));
                if (l >= 1) return ilp1(l);
            } catch (const std::exception&) {
            }
        }
        throw ParseError("bad I0 '" + std::string(s) + "' (expected OX, IlP1:l with l >= 1, or IP1)");
    }

    friend bool operator==(const I0&, const I0&) = default;
};

/// Combinatorial tag of a fixed point.
struct FixedPointLabel {
    enum class Kind { js, plus, minus };
    Kind kind = Kind::js;
    int k = 1;              ///< wall index of L^-_-(k)
    int d = 0;
    I0 i0;
    std::vector<int> comp;  ///< js / plus
    std::vector<int> subset;///< minus, I0 = IP1

    std::string to_string() const
    {
        auto list = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        switch (kind) {
        case Kind::js: return "js:k=" + std::to_string(k) + ",d=" + std::to_string(d) + ",comp=" + list(comp);
        case Kind::plus: return "plus:Lmm" + std::to_string(k) + ",i0=" + i0.to_string() + ",comp=" + list(comp);
        case Kind::minus: return "minus:Lmm" + std::to_string(k) + ",i0=" + i0.to_string() + ",subset=" + list(subset);
        }
        return "?";
    }
};

struct FixedPoint {
    FixedPointLabel label;
    EquivSheaf sheaf;
    long chi = 0;
    long deg = 0;
    int sign_extra = 0;
    Support support = Support::on_Y;

    /// (-1)^{chi + deg + sign_extra}
    int sign() const { return ((chi + deg + sign_extra) % 2 == 0) ? 1 : -1; }
};

/// on_Y for the empty sheaf; on_Z when no summand carries a t3 or e^m
/// weight; thickened otherwise.
inline Support classify_support(const EquivSheaf& F)
{
    if (F.empty()) return Support::on_Y;
    for (const auto& l : F.summands) {
        if (l.twist.w[2] != 0 || l.twist.w[3] != 0) return Support::thickened;
    }
    return Support::on_Z;
}

inline FixedPoint make_fixed_point(FixedPointLabel label, EquivSheaf sheaf, int sign_extra)
{
    FixedPoint fp;
    fp.chi = chi_X(sheaf).rank();
    fp.deg = static_cast<long>(sheaf.size());
    fp.support = classify_support(sheaf);
    fp.sign_extra = sign_extra;
    fp.label = std::move(label);
    fp.sheaf = std::move(sheaf);
    return fp;
}

/// Fixed points over the wall L^-_-(k) for I0 = O_X: one per weak
/// composition of d into k parts; the i-th part thickens
/// O((k-1-i) Zinf + i Z0).
inline std::vector<FixedPoint> js_fixed_points(int k, int d)
{
    if (k < 1 || d < 0) throw UnsupportedConfiguration("js_fixed_points needs k >= 1 and d >= 0");
    std::vector<FixedPoint> out;
    for (auto& comp : compositions(d, k)) {
        EquivSheaf F;
        for (int i = 0; i < k; ++i) F.add_thickened(i, k - 1 - i, Weight{}, comp[i]);
        FixedPointLabel label{FixedPointLabel::Kind::js, k, d, I0::ox(), comp, {}};
        out.push_back(make_fixed_point(std::move(label), std::move(F), 0));
    }
    return out;
}

namespace detail {

inline void require_supported(int k, const I0& i0)
{
    if (k < 1) throw UnsupportedConfiguration("wall index must be >= 1");
    if (i0.kind == I0::Kind::IlP1 && k != 2) {
        throw UnsupportedConfiguration("I0 = IlP1 is classified on L^-_-(2) only");
    }
    if (i0.kind == I0::Kind::IP1 && k < 3) throw UnsupportedConfiguration("I0 = IP1 is classified on L^-_-(k) for k >= 3");
}

inline EquivSheaf ilp1_base(int l)
{
    EquivSheaf F;
    F.add_thickened(0, 0, Weight{}, l);
    return F;
}

}  // namespace detail

/// Fixed points in the fiber of pi_+ over degree d.
inline std::vector<FixedPoint> fiber_plus(int k, const I0& i0, int d)
{
    detail::require_supported(k, i0);
    if (d < 0) return {};
    std::vector<FixedPoint> out;
    switch (i0.kind) {
    case I0::Kind::OX: {
        for (auto& fp : js_fixed_points(k, d)) {
            fp.label.kind = FixedPointLabel::Kind::plus;
            out.push_back(std::move(fp));
        }
        break;
    }
    case I0::Kind::IlP1: {
        const int l = i0.l;
        const EquivLineBundle parts[4] = {
            {0, 1, Weight::t1()}, {0, 1, Weight::t2()}, {0, 1, Weight::t3(l)}, {1, 0, Weight::t3(l)}};
        for (auto& comp : compositions(d, 4)) {
            EquivSheaf F = detail::ilp1_base(l);
            for (int i = 0; i < 4; ++i) F.add_thickened(parts[i].a, parts[i].b, parts[i].twist, comp[i]);
            const int sign_extra = comp[1] > 0 ? 1 : 0;
            FixedPointLabel label{FixedPointLabel::Kind::plus, k, d, i0, comp, {}};
            out.push_back(make_fixed_point(std::move(label), std::move(F), sign_extra));
        }
        break;
    }
    case I0::Kind::IP1: {
        // Tuple layout: d_1..d_{k-1} (twist t1), e_1..e_{k-1} (t2), f_0..f_{k-1} (t3).
        for (auto& comp : compositions(d, 3 * k - 2)) {
            EquivSheaf F;
            F.add(0, 0, Weight{});
            int sign_extra = 0;
            for (int i = 1; i <= k - 1; ++i) F.add_thickened(k - 1 - i, i, Weight::t1(), comp[i - 1]);
            for (int i = 1; i <= k - 1; ++i) {
                const int e = comp[k - 1 + i - 1];
                F.add_thickened(k - 1 - i, i, Weight::t2(), e);
                if (e > 0) ++sign_extra;
            }
            for (int i = 0; i <= k - 1; ++i) F.add_thickened(k - 1 - i, i, Weight::t3(), comp[2 * (k - 1) + i]);
            FixedPointLabel label{FixedPointLabel::Kind::plus, k, d, i0, comp, {}};
            out.push_back(make_fixed_point(std::move(label), std::move(F), sign_extra));
        }
        break;
    }
    }
    return out;
}

/// Fixed points in the fiber of pi_- over degree d. Extensions are
/// recorded by their K-theory class.
inline std::vector<FixedPoint> fiber_minus(int k, const I0& i0, int d)
{
    detail::require_supported(k, i0);
    std::vector<FixedPoint> out;
    if (d < 0) return out;
    switch (i0.kind) {
    case I0::Kind::OX:
        if (d == 0) out.push_back(make_fixed_point({FixedPointLabel::Kind::minus, k, 0, i0, {}, {}}, {}, 0));
        break;
    case I0::Kind::IlP1:
        if (d == 0) {
            out.push_back(make_fixed_point({FixedPointLabel::Kind::minus, k, 0, i0, {}, {}}, detail::ilp1_base(i0.l), 0));
        }
        break;
    case I0::Kind::IP1:
        for (auto& s : subsets(1, k - 2, d)) {
            EquivSheaf F;
            F.add(0, 0, Weight{});
            for (int i : s) F.add(k - 1 - i, i, Weight{});
            FixedPointLabel label{FixedPointLabel::Kind::minus, k, d, i0, {}, s};
            out.push_back(make_fixed_point(std::move(label), std::move(F), 0));
        }
        break;
    }
    return out;
}

/// (-1)^{chi+deg+sign} e(sqrt) e(taut).
inline RatFun contribution(const FixedPoint& fp)
{
    const RatFun s = euler_class(sqrt_class(fp.sheaf));
    if (s.is_zero()) return s;
    const RatFun v = s * euler_class(taut_class(fp.sheaf));
    return fp.sign() > 0 ? v : -v;
}

inline ModInt contribution_mod(const FixedPoint& fp, const EvalPoint& pt)
{
    const ModInt s = euler_class_mod(sqrt_class(fp.sheaf), pt);
    if (s.is_zero()) return s;
    const ModInt v = s * euler_class_mod(taut_class(fp.sheaf), pt);
    return fp.sign() > 0 ? v : -v;
}

/// Contribution with the tautological factor dropped.
inline RatFun contribution_insertion_free(const FixedPoint& fp)
{
    const RatFun v = euler_class(sqrt_class(fp.sheaf));
    return fp.sign() > 0 ? v : -v;
}

/// Contribution of the d = 0 point of the pi_- fiber.
inline RatFun i0_contribution(const I0& i0)
{
    const int k = i0.kind == I0::Kind::IlP1 ? 2 : (i0.kind == I0::Kind::IP1 ? 3 : 1);
    return contribution(fiber_minus(k, i0, 0).front());
}

/// Degree-(d1+..+d4) term for I0 = I_{P^1} on L^-_-(2), as the explicit
/// product over quadruples with lam4 = lam1 + lam2 + 2 lam3.
inline RatFun example_term_l1_k2(const std::array<int, 4>& dq)
{
    const FormCoeffs L[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 2, 0}};
    auto form = [](const FormCoeffs& base, long lam3_shift, long m_coeff) {
        FormCoeffs f = base;
        f[2] += lam3_shift;
        f[3] += m_coeff;
        return f;
    };
    auto diff = [](const FormCoeffs& x, const FormCoeffs& y) {
        FormCoeffs f{};
        for (int v = 0; v < kNumVars; ++v) f[v] = x[v] - y[v];
        return f;
    };
    const FormCoeffs lam123{1, 1, 1, 0};

    int d = 0;
    for (int x : dq) d += x;
    RatFun acc = RatFun::constant(d % 2 == 0 ? 1 : -1);
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < dq[i]; ++k) {
            for (int j = 0; j < 4; ++j) {
                const FormCoeffs f = form(diff(L[i], L[j]), k - dq[j], 0);
                if (!canonical_form(f)) throw PoleAtZeroWeight("vanishing denominator factor in the quadruple product");
                acc *= RatFun::from_form_coeffs(f, -1);
            }
            for (int j = 0; j < 2; ++j) acc *= RatFun::from_form_coeffs(form(diff(L[i], L[j]), k - 1, 0));
            FormCoeffs neg_li{};
            for (int v = 0; v < kNumVars; ++v) neg_li[v] = -L[i][v];
            acc *= RatFun::from_form_coeffs(form(neg_li, -k, 1));
            FormCoeffs shifted = neg_li;
            for (int v = 0; v < kNumVars; ++v) shifted[v] += lam123[v];
            acc *= RatFun::from_form_coeffs(form(shifted, -k, 1));
            if (acc.is_zero()) return acc;
        }
    }
    return acc;
}

/// Parses a label produced by FixedPointLabel::to_string and returns the
/// matching enumerated fixed point.
inline FixedPoint fixed_point_from_label(std::string_view text)
{
    const std::string s(text);
    auto fail = [&](const std::string& why) -> FixedPoint { throw ParseError("bad fixed-point label '" + s + "': " + why); };
    auto colon = s.find(':');
    if (colon == std::string::npos) return fail("missing kind");
    const std::string kind = s.substr(0, colon);
    std::map<std::string, std::string> fields;
    std::string head;
    {
        // Fields are comma-separated key=value; list values continue over
        // commas until the next key.
        std::string rest = s.substr(colon + 1);
        std::string key;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            auto eq = tok.find('=');
            if (eq != std::string::npos) {
                key = tok.substr(0, eq);
                fields[key] = tok.substr(eq + 1);
            } else if (!key.empty()) {
                fields[key] += "," + tok;
            } else {
                head = tok;
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto ints = [&](const std::string& v) {
        std::vector<int> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                out.push_back(std::stoi(item));
            } catch (const std::exception&) {
                fail("non-integer list entry");
            }
        }
        return out;
    };
    auto need = [&](const std::string& key) -> std::string {
        auto it = fields.find(key);
        if (it == fields.end()) fail("missing field " + key);
        return it->second;
    };

    std::vector<FixedPoint> pool;
    if (kind == "js") {
        const auto kv = ints(need("k"));
        const auto dv = ints(need("d"));
        if (kv.size() != 1 || dv.size() != 1) return fail("k and d must be integers");
        pool = js_fixed_points(kv[0], dv[0]);
    } else if (kind == "plus" || kind == "minus") {
        if (head.size() < 4 || head.substr(0, 3) != "Lmm") return fail("expected wall LmmK");
        int k = 0;
        try {
            k = std::stoi(head.substr(3));
        } catch (const std::exception&) {
            return fail("bad wall index");
        }
        const I0 i0 = I0::parse(need("i0"));
        if (kind == "plus") {
            const auto comp = ints(need("comp"));
            int d = 0;
            for (int x : comp) d += x;
            pool = fiber_plus(k, i0, d);
        } else {
            const auto sub = fields.count("subset") ? ints(fields["subset"]) : std::vector<int>{};
            pool = fiber_minus(k, i0, static_cast<int>(sub.size()));
        }
    } else {
        return fail("unknown kind");
    }
    for (auto& fp : pool) {
        if (fp.label.to_string() == s) return fp;
    }
    return fail("no enumerated fixed point carries this label");
}

}  // namespace wallx
