#pragma once

// Truncated series in t, or in q with Laurent t, over RatFun or ModInt.

#include <string>
#include <vector>

#include "wallx/error.hpp"
#include "wallx/modular.hpp"
#include "wallx/ratfun.hpp"

namespace wallx {

/// Exponent box: q in [0, q_order], t in [t_min, t_max]. A plain t-series
/// has q_order = 0. Products drop every term that leaves the box, which is
/// a ring truncation as long as operands are supported in a cone meeting
/// the box in a finite set (all series built here satisfy |t| <= q, or
/// have one-signed t exponents).
struct SeriesShape {
    int q_order = 0;
    int t_min = 0;
    int t_max = 0;

    static SeriesShape t_series(int order) { return {0, 0, order}; }
    static SeriesShape t_inverse_series(int order) { return {0, -order, 0}; }
    static SeriesShape qt_series(int q_order) { return {q_order, -q_order, q_order}; }

    bool has_q() const { return q_order > 0; }
    int width() const { return t_max - t_min + 1; }
    bool contains(int q, int t) const { return q >= 0 && q <= q_order && t >= t_min && t <= t_max; }

    friend bool operator==(const SeriesShape&, const SeriesShape&) = default;
};

namespace detail {

template <class C>
C sum_all(std::vector<C>& terms)
{
    if constexpr (std::is_same_v<C, RatFun>) {
        return RatFun::sum(terms);
    } else {
        C acc(0);
        for (const auto& x : terms) acc += x;
        return acc;
    }
}

}  // namespace detail

template <class C>
class TruncSeries {
public:
    TruncSeries() : TruncSeries(SeriesShape{}) {}
    explicit TruncSeries(SeriesShape shape)
        : shape_(shape), c_(static_cast<std::size_t>((shape.q_order + 1) * shape.width()), C(0))
    {
        if (shape.q_order < 0 || shape.t_max < shape.t_min) throw Error("invalid series shape");
    }

    static TruncSeries zero(SeriesShape s) { return TruncSeries(s); }

    static TruncSeries one(SeriesShape s) { return monomial(s, 0, 0, C(1)); }

    static TruncSeries monomial(SeriesShape s, int q, int t, C value)
    {
        TruncSeries r(s);
        if (s.contains(q, t)) r.at(q, t) = std::move(value);
        return r;
    }

    const SeriesShape& shape() const { return shape_; }

    /// Zero outside the box.
    C coeff(int q, int t) const { return shape_.contains(q, t) ? c_[index(q, t)] : C(0); }
    C coeff(int t) const { return coeff(0, t); }

    void set(int q, int t, C v)
    {
        if (!shape_.contains(q, t)) throw Error("coefficient outside truncation box");
        at(q, t) = std::move(v);
    }
    void set(int t, C v) { set(0, t, std::move(v)); }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b)
    {
        a.require_same(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }

    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b)
    {
        a.require_same(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }

    TruncSeries operator-() const
    {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        a.require_same(b);
        const SeriesShape& s = a.shape_;
        TruncSeries r(s);
        std::vector<std::vector<C>> buckets(r.c_.size());
        for (int qa = 0; qa <= s.q_order; ++qa) {
            for (int ta = s.t_min; ta <= s.t_max; ++ta) {
                const C& x = a.c_[a.index(qa, ta)];
                if (x.is_zero()) continue;
                for (int qb = 0; qa + qb <= s.q_order; ++qb) {
                    for (int tb = s.t_min; tb <= s.t_max; ++tb) {
                        if (!s.contains(qa + qb, ta + tb)) continue;
                        const C& y = b.c_[b.index(qb, tb)];
                        if (y.is_zero()) continue;
                        buckets[r.index(qa + qb, ta + tb)].push_back(x * y);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            if (!buckets[i].empty()) r.c_[i] = detail::sum_all(buckets[i]);
        }
        return r;
    }

    TruncSeries scaled(const C& k) const
    {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = x * k;
        return r;
    }

    /// a / b through b = b00 (1 - u) and 1/(1 - u) = sum u^j, which must
    /// terminate inside the box.
    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b)
    {
        a.require_same(b);
        const C b00 = b.coeff(0, 0);
        if (b00.is_zero()) throw NonUnitDivisor("divisor has zero constant term");
        const C inv = C(1) / b00;
        const TruncSeries u = one(b.shape_) - b.scaled(inv);
        TruncSeries acc = one(b.shape_);
        TruncSeries power = one(b.shape_);
        const int max_steps = static_cast<int>(b.c_.size()) + 1;
        for (int step = 0; step < max_steps; ++step) {
            power = power * u;
            if (power.is_zero()) return (a * acc).scaled(inv);
            acc = acc + power;
        }
        throw NonUnitDivisor("divisor minus its constant term is not nilpotent in the truncation box");
    }

    bool is_zero() const
    {
        for (const auto& x : c_) {
            if (!x.is_zero()) return false;
        }
        return true;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        if (!(a.shape_ == b.shape_)) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!(a.c_[i] == b.c_[i])) return false;
        }
        return true;
    }

    /// Nonzero coefficients as (q, t, value), q-major then ascending t.
    std::vector<std::tuple<int, int, C>> nonzero_terms() const
    {
        std::vector<std::tuple<int, int, C>> out;
        for (int q = 0; q <= shape_.q_order; ++q) {
            for (int t = shape_.t_min; t <= shape_.t_max; ++t) {
                const C& x = c_[index(q, t)];
                if (!x.is_zero()) out.emplace_back(q, t, x);
            }
        }
        return out;
    }

    /// Coefficient-wise map into another coefficient type.
    template <class D, class F>
    TruncSeries<D> map(F&& f) const
    {
        TruncSeries<D> r(shape_);
        for (int q = 0; q <= shape_.q_order; ++q) {
            for (int t = shape_.t_min; t <= shape_.t_max; ++t) r.set(q, t, f(c_[index(q, t)]));
        }
        return r;
    }

private:
    std::size_t index(int q, int t) const { return static_cast<std::size_t>(q * shape_.width() + (t - shape_.t_min)); }
    C& at(int q, int t) { return c_[index(q, t)]; }

    void require_same(const TruncSeries& b) const
    {
        if (!(shape_ == b.shape_)) throw Error("series operands have different truncation boxes");
    }

    SeriesShape shape_;
    std::vector<C> c_;
};

using RatSeries = TruncSeries<RatFun>;
using ModSeries = TruncSeries<ModInt>;

/// (1 - q^q_step t^t_step)^x = sum_j (-1)^j binom(x, j) q^{j q_step} t^{j t_step},
/// truncated to the shape.
inline RatSeries binom_power(const RatFun& x, int q_step, int t_step, SeriesShape shape)
{
    RatSeries r = RatSeries::one(shape);
    RatFun coeff = RatFun::one();  // binom(x, j)
    for (int j = 1;; ++j) {
        const int q = j * q_step, t = j * t_step;
        if (q > shape.q_order || t > shape.t_max || t < shape.t_min) break;
        coeff = coeff * (x - RatFun::constant(j - 1)) * RatFun::constant(Scalar(1, j));
        r.set(q, t, (j % 2 == 0) ? coeff : -coeff);
        if (q_step == 0 && t_step == 0) break;
    }
    return r;
}

enum class TDirection { t, t_inverse };

/// sum_d (-1)^d binomial_rf(x, d) t^{+-d} up to |d| <= order.
inline RatSeries binom_series(const RatFun& x, TDirection dir, int order)
{
    if (dir == TDirection::t) return binom_power(x, 0, 1, SeriesShape::t_series(order));
    return binom_power(x, 0, -1, SeriesShape::t_inverse_series(order));
}

inline RatFun m_over_lam3(long k)
{
    return RatFun::constant(k) * RatFun::variable(Var::m) / RatFun::variable(Var::lam3);
}

enum class ProductKind { PT, NC, MacMahon };

/// PT:       prod_k (1 - q^k t)^{k m/lam3}
/// MacMahon: M(q)^{2 m/lam3} = prod_k (1 - q^k)^{-2k m/lam3}
/// NC:       M(q)^{2 m/lam3} prod_k (1 - q^k t)^{k m/lam3} (1 - q^k t^-1)^{k m/lam3}
inline RatSeries product_series(ProductKind kind, int q_order)
{
    const SeriesShape shape = SeriesShape::qt_series(q_order);
    RatSeries r = RatSeries::one(shape);
    for (int k = 1; k <= q_order; ++k) {
        if (kind == ProductKind::PT || kind == ProductKind::NC) r = r * binom_power(m_over_lam3(k), k, 1, shape);
        if (kind == ProductKind::NC) r = r * binom_power(m_over_lam3(k), k, -1, shape);
        if (kind == ProductKind::MacMahon || kind == ProductKind::NC) r = r * binom_power(-m_over_lam3(2 * k), k, 0, shape);
    }
    return r;
}

enum class PrimaryChamber { I, II_III, IV, other };

/// Closed series for primary insertions with g = int gamma . [E]:
/// I: exp(qt)^g, II_III: exp(qt - q/t)^g, IV: exp(-q/t)^g, otherwise 1.
inline RatSeries primary_series(PrimaryChamber chamber, long g, int q_order)
{
    const SeriesShape shape = SeriesShape::qt_series(q_order);
    // exp(g X) for X = q (a t + b t^-1) is sum_n g^n q^n (a t + b/t)^n / n!.
    long a = 0, b = 0;
    switch (chamber) {
    case PrimaryChamber::I: a = 1; break;
    case PrimaryChamber::II_III: a = 1; b = -1; break;
    case PrimaryChamber::IV: b = -1; break;
    case PrimaryChamber::other: return RatSeries::one(shape);
    }
    RatSeries r(shape);
    Scalar gn = 1, nfact = 1;
    for (int n = 0; n <= q_order; ++n) {
        if (n > 0) {
            gn *= g;
            nfact *= n;
        }
        // (a t + b/t)^n = sum_i C(n,i) a^i b^{n-i} t^{2i-n}
        Scalar binom = 1;
        for (int i = 0; i <= n; ++i) {
            if (i > 0) binom = binom * (n - i + 1) / i;
            Scalar ai = 1, bi = 1;
            for (int j = 0; j < i; ++j) ai *= a;
            for (int j = 0; j < n - i; ++j) bi *= b;
            const Scalar v = gn / nfact * binom * ai * bi;
            if (v != 0) r.set(n, 2 * i - n, RatFun::constant(v));
        }
    }
    return r;
}

inline std::string to_string(PrimaryChamber c)
{
    switch (c) {
    case PrimaryChamber::I: return "I";
    case PrimaryChamber::II_III: return "II_III";
    case PrimaryChamber::IV: return "IV";
    case PrimaryChamber::other: return "other";
    }
    return "?";
}

inline std::string to_string(ProductKind k)
{
    switch (k) {
    case ProductKind::PT: return "PT";
    case ProductKind::NC: return "NC";
    case ProductKind::MacMahon: return "MacMahon";
    }
    return "?";
}

}  // namespace wallx
