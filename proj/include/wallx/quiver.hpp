#pragma once

// Stability plane of the framed quiver: walls, chambers, Z_t translation,
// and exact checks on framed representations.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "wallx/error.hpp"
#include "wallx/multipoly.hpp"
#include "wallx/series.hpp"

namespace wallx {

using Rational = mpq_class;

inline std::string rational_string(const Rational& r) { return r.get_str(); }

/// `p`, `p/q`, or a decimal `-0.85`.
inline Rational parse_rational(std::string_view s)
{
    const std::string str(s);
    if (str.empty()) throw ParseError("empty rational");
    const auto dot = str.find('.');
    try {
        if (dot == std::string::npos) {
            Rational r(str, 10);
            if (r.get_den() == 0) throw ParseError("zero denominator in '" + str + "'");
            r.canonicalize();
            return r;
        }
        const std::string whole = str.substr(0, dot);
        const std::string frac = str.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad decimal '" + str + "'");
        const bool neg = !whole.empty() && whole[0] == '-';
        const std::string digits = (neg || (!whole.empty() && whole[0] == '+')) ? whole.substr(1) : whole;
        if (digits.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad decimal '" + str + "'");
        mpz_class num(digits.empty() ? "0" : digits, 10);
        mpz_class den = 1;
        for (char ch : frac) {
            num = num * 10 + (ch - '0');
            den *= 10;
        }
        Rational r(num, den);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + str + "'");
    }
}

struct Theta {
    Rational t0;
    Rational t1;

    /// GMP arithmetic assumes canonical rationals; entry points normalize
    /// through this so callers may pass e.g. mpq_class(2, 4).
    Theta canonical() const
    {
        Theta c = *this;
        c.t0.canonicalize();
        c.t1.canonicalize();
        return c;
    }

    Rational value(long d0, long d1) const { return t0 * d0 + t1 * d1; }

    std::string to_string() const
    {
        const Theta c = canonical();
        return "(" + rational_string(c.t0) + "," + rational_string(c.t1) + ")";
    }

    /// `t0,t1`
    static Theta parse(std::string_view s)
    {
        const auto comma = s.find(',');
        if (comma == std::string_view::npos) throw ParseError("theta must be 't0,t1'");
        return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
    }
};

// ---------------------------------------------------------------------------
// Walls

/// Families named L<superscript><subscript>: Lpm is L^+_-(k).
enum class WallFamily { Lmm, Lpm, Lmp, Lpp, Linf_minus, Linf_plus };

struct WallLabel {
    WallFamily family = WallFamily::Lmm;
    int k = 1;  ///< unused for Linf

    static WallLabel lmm(int k) { return {WallFamily::Lmm, k}; }
    static WallLabel lpm(int k) { return {WallFamily::Lpm, k}; }
    static WallLabel lmp(int k) { return {WallFamily::Lmp, k}; }
    static WallLabel lpp(int k) { return {WallFamily::Lpp, k}; }
    static WallLabel linf_minus() { return {WallFamily::Linf_minus, 0}; }
    static WallLabel linf_plus() { return {WallFamily::Linf_plus, 0}; }

    bool is_infinite() const { return family == WallFamily::Linf_minus || family == WallFamily::Linf_plus; }

    /// -1 for the theta0 < theta1 half-plane, +1 for the flop side.
    int side() const
    {
        switch (family) {
        case WallFamily::Lmm:
        case WallFamily::Lpm:
        case WallFamily::Linf_minus: return -1;
        default: return 1;
        }
    }

    /// Coefficients (c0, c1) of the line c0 theta0 + c1 theta1 = 0; also
    /// the dimension vector of the stable object on the wall.
    std::pair<long, long> line() const
    {
        switch (family) {
        case WallFamily::Lmm:
        case WallFamily::Lmp: return {k, k - 1};
        case WallFamily::Lpm:
        case WallFamily::Lpp: return {k, k + 1};
        default: return {1, 1};
        }
    }

    std::string to_string() const
    {
        switch (family) {
        case WallFamily::Lmm: return "Lmm:" + std::to_string(k);
        case WallFamily::Lpm: return "Lpm:" + std::to_string(k);
        case WallFamily::Lmp: return "Lmp:" + std::to_string(k);
        case WallFamily::Lpp: return "Lpp:" + std::to_string(k);
        case WallFamily::Linf_minus: return "Linf-";
        case WallFamily::Linf_plus: return "Linf+";
        }
        return "?";
    }

    static WallLabel parse(std::string_view s)
    {
        if (s == "Linf-") return linf_minus();
        if (s == "Linf+") return linf_plus();
        if (s.size() < 5 || s[3] != ':') throw ParseError("bad wall label '" + std::string(s) + "'");
        const std::string fam(s.substr(0, 3));
        const std::string idx(s.substr(4));
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad wall index in '" + std::string(s) + "'");
        const int k = std::stoi(idx);
        WallLabel w;
        if (fam == "Lmm") w = lmm(k);
        else if (fam == "Lpm") w = lpm(k);
        else if (fam == "Lmp") w = lmp(k);
        else if (fam == "Lpp") w = lpp(k);
        else throw ParseError("unknown wall family '" + fam + "'");
        const int kmin = (w.family == WallFamily::Lmm || w.family == WallFamily::Lmp) ? 1 : 0;
        if (k < kmin) throw ParseError("wall index below " + std::to_string(kmin) + " in '" + std::string(s) + "'");
        return w;
    }

    bool contains(const Theta& th) const
    {
        const auto [c0, c1] = line();
        if (th.t0 * c0 + th.t1 * c1 != 0) return false;
        return side() < 0 ? th.t0 < th.t1 : th.t0 > th.t1;
    }

    friend auto operator<=>(const WallLabel&, const WallLabel&) = default;
};

struct Wall {
    WallLabel label;
    long c0 = 0;
    long c1 = 0;
    std::string condition;  ///< half-plane condition
};

/// Lmm 1..k_max, Lpm 0..k_max, Lmp 1..k_max, Lpp 0..k_max, Linf-, Linf+.
inline std::vector<Wall> walls_up_to(int k_max)
{
    std::vector<Wall> out;
    auto push = [&](WallLabel l) {
        const auto [c0, c1] = l.line();
        out.push_back({l, c0, c1, l.side() < 0 ? "theta0 < theta1" : "theta0 > theta1"});
    };
    for (int k = 1; k <= k_max; ++k) push(WallLabel::lmm(k));
    for (int k = 0; k <= k_max; ++k) push(WallLabel::lpm(k));
    for (int k = 1; k <= k_max; ++k) push(WallLabel::lmp(k));
    for (int k = 0; k <= k_max; ++k) push(WallLabel::lpp(k));
    push(WallLabel::linf_minus());
    push(WallLabel::linf_plus());
    return out;
}

struct WallObject {
    std::string object;
    std::pair<long, long> dimvec;
    bool flop = false;
};

inline WallObject wall_object(const WallLabel& w)
{
    const std::string k1 = std::to_string(w.k - 1);
    const std::string km1 = std::to_string(-w.k - 1);
    switch (w.family) {
    case WallFamily::Lmm: return {"O_P1(" + k1 + ")", w.line(), false};
    case WallFamily::Lpm: return {"O_P1(" + km1 + ")[1]", w.line(), false};
    case WallFamily::Lmp: return {"Upsilon(O_P1(" + km1 + ")[1])", w.line(), true};
    case WallFamily::Lpp: return {"Upsilon(O_P1(" + k1 + "))", w.line(), true};
    case WallFamily::Linf_minus: return {"O_x", w.line(), false};
    case WallFamily::Linf_plus: return {"Upsilon(O_x)", w.line(), true};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Chambers

inline Rational theta_to_zt(const Theta& raw)
{
    const Theta th = raw.canonical();
    const Rational s = th.t0 + th.t1;
    if (s == 0) throw DivisionByZero("theta0 + theta1 = 0 has no Z_t parameter");
    return th.t1 / s;
}

/// (dim V0, dim V1) = (n, n - d).
inline std::pair<long, long> dimvec_bookkeeping(long n, long d) { return {n, n - d}; }
inline std::pair<long, long> dimvec_to_nd(long d0, long d1) { return {d0, d0 - d1}; }

struct Classification {
    enum class Kind { on_wall, chamber, origin };
    Kind kind = Kind::chamber;
    std::optional<WallLabel> wall;
    std::string chamber;  ///< empty | NC | Zt | between
    std::optional<WallLabel> lower;
    std::optional<WallLabel> upper;
    std::optional<Rational> t;
    std::optional<std::pair<long, long>> t_interval;

    std::string to_string() const
    {
        switch (kind) {
        case Kind::origin: return "origin";
        case Kind::on_wall: return "on_wall " + wall->to_string();
        case Kind::chamber: break;
        }
        std::string s = "chamber " + chamber + " [" + lower->to_string() + " | " + upper->to_string() + "]";
        if (t) {
            s += " t=" + rational_string(*t) + " in (" + std::to_string(t_interval->first) + "," +
                 std::to_string(t_interval->second) + ")";
        }
        return s;
    }
};

namespace detail {

inline long floor_rational(const Rational& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

}  // namespace detail

/// Walls are rays from the origin. Off the axes the ray of Theta is
/// determined by t = theta1/(theta0 + theta1): the family with line
/// (k, k-1) sits at t = k and the one with line (k, k+1) at t = -k, on the
/// half-plane fixed by sign(theta1 - theta0).
inline Classification classify_theta(const Theta& raw, int k_max)
{
    const Theta th = raw.canonical();
    if (k_max < 1) throw UnsupportedConfiguration("k_max must be at least 1");
    Classification c;
    if (th.t0 == 0 && th.t1 == 0) {
        c.kind = Classification::Kind::origin;
        return c;
    }
    for (const auto& w : walls_up_to(k_max)) {
        if (w.label.contains(th)) {
            c.kind = Classification::Kind::on_wall;
            c.wall = w.label;
            return c;
        }
    }
    c.kind = Classification::Kind::chamber;
    if (th.t0 > 0 && th.t1 > 0) {
        c.chamber = "empty";
        c.lower = WallLabel::lpp(0);
        c.upper = WallLabel::lmm(1);
        return c;
    }
    if (th.t0 < 0 && th.t1 < 0) {
        c.chamber = "NC";
        c.lower = WallLabel::lpm(0);
        c.upper = WallLabel::lmp(1);
        return c;
    }
    // Open quadrants theta0 < 0 < theta1 or theta1 < 0 < theta0, off L(infinity).
    const bool minus_side = th.t0 < th.t1;
    const Rational t = theta_to_zt(th);
    auto fam = [&](bool positive_t, int k) {
        if (positive_t) return minus_side ? WallLabel::lmm(k) : WallLabel::lmp(k);
        return minus_side ? WallLabel::lpm(k) : WallLabel::lpp(k);
    };
    const bool positive_t = t > 0;
    const Rational a = positive_t ? t : Rational(-t);
    const long n = detail::floor_rational(a);
    if (a == n || n + 1 > k_max) {
        const std::string side = positive_t ? (minus_side ? "PT side of Linf-" : "flop PT side of Linf+")
                                            : (minus_side ? "DT side of Linf-" : "flop DT side of Linf+");
        throw Inconclusive("theta " + th.to_string() + " has |t| = " + rational_string(a) + " beyond k_max = " +
                           std::to_string(k_max) + " (" + side + ")");
    }
    c.lower = fam(positive_t, static_cast<int>(n));
    c.upper = fam(positive_t, static_cast<int>(n + 1));
    if (minus_side && positive_t) {
        c.chamber = "Zt";
        c.t = t;
        c.t_interval = std::make_pair(n, n + 1);
    } else {
        c.chamber = "between";
    }
    return c;
}

/// Chamber of the closed primary-insertion series.
inline PrimaryChamber primary_chamber(const Theta& raw)
{
    const Theta th = raw.canonical();
    const Rational s = th.t0 + 2 * th.t1;
    if (th.t0 < 0 && s > 0) return PrimaryChamber::I;
    if (th.t0 < 0 && s < 0) return PrimaryChamber::II_III;
    if (th.t0 > 0 && s < 0) return PrimaryChamber::IV;
    return PrimaryChamber::other;
}

// ---------------------------------------------------------------------------
// Framed representations

using Matrix = std::vector<std::vector<Rational>>;  ///< rows x cols

inline Matrix zero_matrix(int rows, int cols) { return Matrix(rows, std::vector<Rational>(cols, 0)); }

inline Matrix operator*(const Matrix& a, const Matrix& b)
{
    const int rows = static_cast<int>(a.size());
    const int inner = rows ? static_cast<int>(a[0].size()) : static_cast<int>(b.size());
    const int cols = b.empty() ? 0 : static_cast<int>(b[0].size());
    Matrix r = zero_matrix(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    }
    return r;
}

inline std::vector<Rational> mat_apply(const Matrix& a, const std::vector<Rational>& v)
{
    std::vector<Rational> r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    }
    return r;
}

/// Weight of each basis vector of V0 and V1.
struct Grading {
    std::vector<std::vector<long>> w0;
    std::vector<std::vector<long>> w1;
};

struct FramedRep {
    int d0 = 0;
    int d1 = 0;
    Matrix a1, a2;  ///< V0 -> V1, d1 x d0
    Matrix b1, b2;  ///< V1 -> V0, d0 x d1
    Matrix c;       ///< V0 -> V0
    Matrix dd;      ///< V1 -> V1
    std::vector<Rational> framing;  ///< image of V_inf = C in V0
    std::optional<Grading> grading;

    static FramedRep zero(int d0, int d1)
    {
        FramedRep r;
        r.d0 = d0;
        r.d1 = d1;
        r.a1 = r.a2 = zero_matrix(d1, d0);
        r.b1 = r.b2 = zero_matrix(d0, d1);
        r.c = zero_matrix(d0, d0);
        r.dd = zero_matrix(d1, d1);
        r.framing.assign(d0, 0);
        return r;
    }

    void validate() const
    {
        auto shape = [](const Matrix& m, int rows, int cols, const char* name) {
            bool ok = static_cast<int>(m.size()) == rows;
            for (const auto& row : m) ok = ok && static_cast<int>(row.size()) == cols;
            if (!ok) throw Error(std::string("matrix ") + name + " has the wrong shape");
        };
        shape(a1, d1, d0, "a1");
        shape(a2, d1, d0, "a2");
        shape(b1, d0, d1, "b1");
        shape(b2, d0, d1, "b2");
        shape(c, d0, d0, "c");
        shape(dd, d1, d1, "d");
        if (static_cast<int>(framing.size()) != d0) throw Error("framing vector has the wrong length");
    }
};

struct RelationCheck {
    bool pass = true;
    std::optional<std::string> failed;  ///< first violated relation
};

inline RelationCheck check_relations(const FramedRep& r)
{
    r.validate();
    const std::array<const Matrix*, 2> a{&r.a1, &r.a2};
    const std::array<const Matrix*, 2> b{&r.b1, &r.b2};
    for (int i = 0; i < 2; ++i) {
        if (r.a2 * *b[i] * r.a1 != r.a1 * *b[i] * r.a2)
            return {false, "a2*b" + std::to_string(i + 1) + "*a1 = a1*b" + std::to_string(i + 1) + "*a2"};
    }
    for (int i = 0; i < 2; ++i) {
        if (r.b2 * *a[i] * r.b1 != r.b1 * *a[i] * r.b2)
            return {false, "b2*a" + std::to_string(i + 1) + "*b1 = b1*a" + std::to_string(i + 1) + "*b2"};
    }
    for (int i = 0; i < 2; ++i) {
        if (r.dd * *a[i] != *a[i] * r.c)
            return {false, "d*a" + std::to_string(i + 1) + " = a" + std::to_string(i + 1) + "*c"};
    }
    for (int i = 0; i < 2; ++i) {
        if (r.c * *b[i] != *b[i] * r.dd)
            return {false, "c*b" + std::to_string(i + 1) + " = b" + std::to_string(i + 1) + "*d"};
    }
    return {};
}

namespace detail {

/// Row-reduced basis of a subspace of Q^n.
class Subspace {
public:
    explicit Subspace(int n) : n_(n) {}

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<Rational>>& basis() const { return rows_; }

    /// Adds v; returns whether the dimension grew.
    bool add(std::vector<Rational> v)
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = v[pivots_[i]];
            if (f == 0) continue;
            for (int j = 0; j < n_; ++j) v[j] -= f * rows_[i][j];
        }
        int p = -1;
        for (int j = 0; j < n_; ++j) {
            if (v[j] != 0) {
                p = j;
                break;
            }
        }
        if (p < 0) return false;
        const Rational lead = v[p];
        for (auto& x : v) x /= lead;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = rows_[i][p];
            if (f == 0) continue;
            for (int j = 0; j < n_; ++j) rows_[i][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    int n_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> pivots_;
};

}  // namespace detail

/// Smallest arrow-stable pair of subspaces containing the seeds.
inline std::pair<int, int> subrep_closure(const FramedRep& r, const std::vector<std::vector<Rational>>& seeds0,
                                          const std::vector<std::vector<Rational>>& seeds1)
{
    r.validate();
    detail::Subspace s0(r.d0), s1(r.d1);
    std::vector<std::vector<Rational>> todo0, todo1;
    for (const auto& v : seeds0) {
        if (static_cast<int>(v.size()) != r.d0) throw Error("seed vector in V0 has the wrong length");
        todo0.push_back(v);
    }
    for (const auto& v : seeds1) {
        if (static_cast<int>(v.size()) != r.d1) throw Error("seed vector in V1 has the wrong length");
        todo1.push_back(v);
    }
    while (!todo0.empty() || !todo1.empty()) {
        if (!todo0.empty()) {
            auto v = std::move(todo0.back());
            todo0.pop_back();
            if (s0.add(v)) {
                todo1.push_back(mat_apply(r.a1, v));
                todo1.push_back(mat_apply(r.a2, v));
                todo0.push_back(mat_apply(r.c, v));
            }
        } else {
            auto v = std::move(todo1.back());
            todo1.pop_back();
            if (s1.add(v)) {
                todo0.push_back(mat_apply(r.b1, v));
                todo0.push_back(mat_apply(r.b2, v));
                todo1.push_back(mat_apply(r.dd, v));
            }
        }
    }
    return {s0.dim(), s1.dim()};
}

inline bool is_cyclic(const FramedRep& r)
{
    return subrep_closure(r, {r.framing}, {}) == std::make_pair(r.d0, r.d1);
}

struct StabilityResult {
    enum class Verdict { stable, semistable, unstable };
    Verdict verdict = Verdict::stable;
    /// (dim V0', dim V1', dim V_inf') of the worst violating subrepresentation;
    /// for semistable, a subrepresentation attaining equality.
    std::optional<std::array<int, 3>> witness;
};

inline std::string to_string(StabilityResult::Verdict v)
{
    switch (v) {
    case StabilityResult::Verdict::stable: return "stable";
    case StabilityResult::Verdict::semistable: return "semistable";
    case StabilityResult::Verdict::unstable: return "unstable";
    }
    return "?";
}

inline constexpr int kStabilityBasisCap = 20;

namespace detail {

/// For each basis vector (V0 first, then V1) and arrow, the basis vectors
/// its image touches; -1 marks the framing.
struct ArrowSupport {
    int n = 0;
    std::vector<std::uint32_t> image;  ///< bitmask per basis vector
    std::uint32_t framing = 0;
};

inline void require_graded(const FramedRep& r)
{
    if (!r.grading) throw NotMultiplicityFree("representation carries no weight grading");
    const Grading& g = *r.grading;
    if (static_cast<int>(g.w0.size()) != r.d0 || static_cast<int>(g.w1.size()) != r.d1)
        throw NotMultiplicityFree("grading does not match the dimensions");
    auto distinct = [](std::vector<std::vector<long>> w) {
        std::sort(w.begin(), w.end());
        return std::adjacent_find(w.begin(), w.end()) == w.end();
    };
    if (!distinct(g.w0) || !distinct(g.w1)) throw NotMultiplicityFree("a graded piece has dimension above 1");
    auto homogeneous = [](const Matrix& m, const std::vector<std::vector<long>>& src,
                          const std::vector<std::vector<long>>& dst, const char* name) {
        std::optional<std::vector<long>> deg;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                if (m[i][j] == 0) continue;
                if (dst[i].size() != src[j].size()) throw NotMultiplicityFree("weights of different lengths");
                std::vector<long> d(dst[i].size());
                for (std::size_t x = 0; x < d.size(); ++x) d[x] = dst[i][x] - src[j][x];
                if (deg && *deg != d) throw NotMultiplicityFree(std::string("arrow ") + name + " is not homogeneous");
                deg = d;
            }
        }
    };
    homogeneous(r.a1, g.w0, g.w1, "a1");
    homogeneous(r.a2, g.w0, g.w1, "a2");
    homogeneous(r.b1, g.w1, g.w0, "b1");
    homogeneous(r.b2, g.w1, g.w0, "b2");
    homogeneous(r.c, g.w0, g.w0, "c");
    homogeneous(r.dd, g.w1, g.w1, "d");
    int nz = 0;
    for (const auto& x : r.framing) nz += x != 0;
    if (nz > 1) throw NotMultiplicityFree("framing vector is not homogeneous");
}

inline ArrowSupport support_of(const FramedRep& r)
{
    ArrowSupport s;
    s.n = r.d0 + r.d1;
    s.image.assign(s.n, 0);
    auto mark = [&](const Matrix& m, int src_off, int dst_off) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                if (m[i][j] != 0) s.image[src_off + j] |= std::uint32_t{1} << (dst_off + i);
            }
        }
    };
    mark(r.a1, 0, r.d0);
    mark(r.a2, 0, r.d0);
    mark(r.c, 0, 0);
    mark(r.b1, r.d0, 0);
    mark(r.b2, r.d0, 0);
    mark(r.dd, r.d0, r.d0);
    for (int i = 0; i < r.d0; ++i) {
        if (r.framing[i] != 0) s.framing |= std::uint32_t{1} << i;
    }
    return s;
}

}  // namespace detail

/// Framed Theta-stability by enumeration of arrow-stable sets of basis
/// vectors. With one-dimensional weight spaces every torus-invariant
/// subrepresentation is such a set, and torus-orbit limits of arbitrary
/// subrepresentations keep their dimension vectors, so the enumeration
/// decides both conditions.
inline StabilityResult is_stable_graded(const FramedRep& r, const Theta& raw)
{
    const Theta th = raw.canonical();
    r.validate();
    detail::require_graded(r);
    if (r.d0 + r.d1 > kStabilityBasisCap) throw CapExceeded("stability enumeration over more than 20 basis vectors");
    const detail::ArrowSupport s = detail::support_of(r);
    const std::uint32_t full = s.n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << s.n) - 1);
    const std::uint32_t v0_mask = (std::uint32_t{1} << r.d0) - 1;
    const Rational theta_v = th.value(r.d0, r.d1);

    StabilityResult res;
    std::optional<Rational> worst;  // largest positive violation
    std::optional<std::array<int, 3>> tie;
    for (int vinf = 0; vinf <= 1; ++vinf) {
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            if (vinf == 0 && mask == 0) continue;
            if (vinf == 1 && mask == full) continue;
            bool closed = vinf == 0 || (s.framing & ~mask) == 0;
            for (int i = 0; closed && i < s.n; ++i) {
                if ((mask >> i) & 1) closed = (s.image[i] & ~mask) == 0;
            }
            if (closed) {
                const int e0 = __builtin_popcount(mask & v0_mask);
                const int e1 = __builtin_popcount(mask & ~v0_mask);
                const Rational excess = th.value(e0, e1) - (vinf ? theta_v : Rational(0));
                const std::array<int, 3> w{e0, e1, vinf};
                if (excess > 0 && (!worst || excess > *worst)) {
                    worst = excess;
                    res.witness = w;
                } else if (excess == 0 && !tie) {
                    tie = w;
                }
            }
            if (mask == full) break;
        }
    }
    if (worst) {
        res.verdict = StabilityResult::Verdict::unstable;
    } else if (tie) {
        res.verdict = StabilityResult::Verdict::semistable;
        res.witness = tie;
    }
    return res;
}

/// A multiplicity-free grading by the torus scaling each arrow and the
/// framing separately, if the representation admits one. Basis vectors
/// not linked to each other get separate components.
inline std::optional<Grading> infer_grading(const FramedRep& r)
{
    r.validate();
    constexpr int kArrows = 7;  // a1 a2 b1 b2 c d framing
    const int n = r.d0 + r.d1;
    std::vector<std::optional<std::vector<long>>> w(n);
    struct Edge {
        int src, dst, arrow;
    };
    std::vector<Edge> edges;
    auto collect = [&](const Matrix& m, int src_off, int dst_off, int arrow) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                if (m[i][j] != 0) edges.push_back({src_off + static_cast<int>(j), dst_off + static_cast<int>(i), arrow});
            }
        }
    };
    collect(r.a1, 0, r.d0, 0);
    collect(r.a2, 0, r.d0, 1);
    collect(r.b1, r.d0, 0, 2);
    collect(r.b2, r.d0, 0, 3);
    collect(r.c, 0, 0, 4);
    collect(r.dd, r.d0, r.d0, 5);
    std::vector<long> root(kArrows + 1, 0);
    for (int i = 0; i < r.d0; ++i) {
        if (r.framing[i] != 0) {
            std::vector<long> v = root;
            v[6] = 1;
            if (w[i] && *w[i] != v) return std::nullopt;
            w[i] = v;
        }
    }
    long component = 1;
    for (int start = -1; start < n; ++start) {
        std::vector<int> stack;
        if (start < 0) {
            for (int i = 0; i < n; ++i) {
                if (w[i]) stack.push_back(i);
            }
        } else if (!w[start]) {
            std::vector<long> v = root;
            v[kArrows] = component++;
            w[start] = v;
            stack.push_back(start);
        }
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& e : edges) {
                int other = -1;
                std::vector<long> v = *w[u];
                if (e.src == u) {
                    other = e.dst;
                    v[e.arrow] += 1;
                } else if (e.dst == u) {
                    other = e.src;
                    v[e.arrow] -= 1;
                } else {
                    continue;
                }
                if (!w[other]) {
                    w[other] = v;
                    stack.push_back(other);
                } else if (*w[other] != v) {
                    return std::nullopt;
                }
            }
        }
    }
    Grading g;
    for (int i = 0; i < r.d0; ++i) g.w0.push_back(*w[i]);
    for (int i = 0; i < r.d1; ++i) g.w1.push_back(*w[r.d0 + i]);
    FramedRep probe = r;
    probe.grading = g;
    try {
        detail::require_graded(probe);
    } catch (const NotMultiplicityFree&) {
        return std::nullopt;
    }
    return g;
}

}  // namespace wallx
