#pragma once

// Sparse polynomials in the four equivariant variables lam1, lam2, lam3, m.

#include <algorithm>
#include <array>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "wallx/error.hpp"

namespace wallx {

/// Coefficient field of every exact object.
using Scalar = mpq_class;
using BigInt = mpz_class;

inline constexpr int kNumVars = 4;
inline constexpr std::array<std::string_view, kNumVars> kVarNames = {"lam1", "lam2", "lam3", "m"};

enum class Var : int { lam1 = 0, lam2 = 1, lam3 = 2, m = 3 };

inline std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

inline Scalar parse_scalar(std::string_view text)
{
    Scalar out;
    if (out.set_str(std::string(text), 10) != 0) {
        throw ParseError("bad rational literal '" + std::string(text) + "'");
    }
    out.canonicalize();
    if (out.get_den() == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return out;
}

/// Exponent vector packed into one word. Layout from the top bit down:
/// total degree (16 bits), then 12 bits per variable in the order
/// lam1, lam2, lam3, m. Unsigned comparison of the packed words is the
/// graded lexicographic order, and multiplication of monomials is
/// addition of the words.
class Monomial {
public:
    static constexpr int kFieldBits = 12;
    static constexpr std::uint64_t kFieldMask = (std::uint64_t{1} << kFieldBits) - 1;
    static constexpr int kMaxExponent = static_cast<int>(kFieldMask);

    constexpr Monomial() = default;

    static Monomial from_exponents(const std::array<int, kNumVars>& e)
    {
        std::uint64_t word = 0;
        int degree = 0;
        for (int v = 0; v < kNumVars; ++v) {
            if (e[v] < 0 || e[v] > kMaxExponent) {
                throw Error("monomial exponent out of range");
            }
            degree += e[v];
            word |= static_cast<std::uint64_t>(e[v]) << shift(v);
        }
        word |= static_cast<std::uint64_t>(degree) << 48;
        return Monomial(word);
    }

    static Monomial variable(int v)
    {
        std::array<int, kNumVars> e{};
        e[v] = 1;
        return from_exponents(e);
    }

    constexpr std::uint64_t packed() const { return word_; }
    int degree() const { return static_cast<int>(word_ >> 48); }
    int exponent(int v) const { return static_cast<int>((word_ >> shift(v)) & kFieldMask); }

    std::array<int, kNumVars> exponents() const
    {
        std::array<int, kNumVars> e{};
        for (int v = 0; v < kNumVars; ++v) e[v] = exponent(v);
        return e;
    }

    bool divisible_by(Monomial other) const
    {
        for (int v = 0; v < kNumVars; ++v) {
            if (exponent(v) < other.exponent(v)) return false;
        }
        return true;
    }

    Monomial operator*(Monomial other) const
    {
        for (int v = 0; v < kNumVars; ++v) {
            if (exponent(v) + other.exponent(v) > kMaxExponent) throw Error("monomial exponent overflow");
        }
        return Monomial(word_ + other.word_);
    }

    /// Caller guarantees divisibility.
    Monomial operator/(Monomial other) const { return Monomial(word_ - other.word_); }

    friend constexpr auto operator<=>(Monomial, Monomial) = default;

private:
    explicit constexpr Monomial(std::uint64_t w) : word_(w) {}
    static constexpr int shift(int v) { return 36 - kFieldBits * v; }

    std::uint64_t word_ = 0;
};

/// Integer coefficient vector (c1, c2, c3, cm) of a homogeneous linear
/// polynomial c1*lam1 + c2*lam2 + c3*lam3 + cm*m.
using FormCoeffs = std::array<long, kNumVars>;

/// Sparse multivariate polynomial with terms kept in strictly decreasing
/// graded-lex order and no zero coefficients.
template <class C>
class MultiPoly {
public:
    using Term = std::pair<Monomial, C>;

    MultiPoly() = default;

    static MultiPoly constant(const C& c)
    {
        MultiPoly p;
        if (c != 0) p.terms_.emplace_back(Monomial{}, c);
        return p;
    }

    static MultiPoly variable(Var v) { return monomial(Monomial::variable(static_cast<int>(v)), C(1)); }

    static MultiPoly monomial(Monomial mono, const C& c)
    {
        MultiPoly p;
        if (c != 0) p.terms_.emplace_back(mono, c);
        return p;
    }

    static MultiPoly linear(const FormCoeffs& form)
    {
        MultiPoly p;
        for (int v = 0; v < kNumVars; ++v) {
            if (form[v] != 0) p.terms_.emplace_back(Monomial::variable(v), C(form[v]));
        }
        return p;
    }

    /// Builds from unsorted terms, merging duplicates.
    static MultiPoly from_terms(std::vector<Term> raw)
    {
        std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
        MultiPoly p;
        for (auto& t : raw) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second += t.second;
                if (p.terms_.back().second == 0) p.terms_.pop_back();
            } else if (t.second != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0); }

    C constant_value() const
    {
        if (terms_.empty() || terms_.back().first.degree() != 0) return C(0);
        return terms_.back().second;
    }

    const C& leading_coeff() const { return terms_.front().second; }
    Monomial leading_monomial() const { return terms_.front().first; }
    int total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

    int degree_in(int v) const
    {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.exponent(v));
        return d;
    }

    MultiPoly operator-() const
    {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a.terms_, b.terms_, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a.terms_, b.terms_, true); }

    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }

    MultiPoly scaled(const C& c) const
    {
        if (c == 0) return {};
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    MultiPoly shifted(Monomial mono) const
    {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.first = t.first * mono;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        const MultiPoly& small = a.size() <= b.size() ? a : b;
        const MultiPoly& big = a.size() <= b.size() ? b : a;
        if (small.size() == 1) return big.shifted(small.terms_[0].first).scaled(small.terms_[0].second);
        if (small.size() <= 4) {
            MultiPoly acc;
            for (const auto& t : small.terms_) acc += big.shifted(t.first).scaled(t.second);
            return acc;
        }
        std::unordered_map<std::uint64_t, C> acc;
        acc.reserve(a.size() * b.size());
        for (const auto& s : small.terms_) {
            for (const auto& g : big.terms_) {
                acc[(s.first * g.first).packed()] += s.second * g.second;
            }
        }
        MultiPoly r;
        r.terms_.reserve(acc.size());
        for (auto& [mono, c] : acc) {
            if (c != 0) r.terms_.emplace_back(from_packed(mono), std::move(c));
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

    /// Multiplication by a linear form: a merge of at most four shifted copies.
    MultiPoly times_linear(const FormCoeffs& form) const
    {
        MultiPoly acc;
        for (int v = 0; v < kNumVars; ++v) {
            if (form[v] == 0) continue;
            acc += shifted(Monomial::variable(v)).scaled(C(form[v]));
        }
        return acc;
    }

    /// Exact quotient by a nonzero linear form, or nullopt when the form
    /// does not divide. Runs the division algorithm against the leading
    /// variable of the form and stops at the first leading term that the
    /// divisor cannot cancel.
    std::optional<MultiPoly> divide_linear(const FormCoeffs& form) const
    {
        int lead = -1;
        for (int v = 0; v < kNumVars; ++v) {
            if (form[v] != 0) {
                lead = v;
                break;
            }
        }
        if (lead < 0) throw DivisionByZero("division by the zero linear form");
        if (is_zero()) return MultiPoly{};
        const Monomial lead_mono = Monomial::variable(lead);
        const C lead_coeff(form[lead]);

        std::map<std::uint64_t, C, std::greater<>> rem;
        for (const auto& t : terms_) rem.emplace(t.first.packed(), t.second);
        std::vector<Term> quot;
        while (!rem.empty()) {
            auto it = rem.begin();
            const Monomial mono = from_packed(it->first);
            if (!mono.divisible_by(lead_mono)) return std::nullopt;
            const Monomial q_mono = mono / lead_mono;
            C q_coeff = it->second / lead_coeff;
            rem.erase(it);
            for (int v = lead + 1; v < kNumVars; ++v) {
                if (form[v] == 0) continue;
                const std::uint64_t key = (q_mono * Monomial::variable(v)).packed();
                C delta = q_coeff * C(form[v]);
                auto [pos, inserted] = rem.try_emplace(key, 0);
                pos->second -= delta;
                if (pos->second == 0) rem.erase(pos);
            }
            quot.emplace_back(q_mono, std::move(q_coeff));
        }
        MultiPoly q;
        q.terms_ = std::move(quot);
        return q;
    }

    /// Replaces m by lam3.
    MultiPoly substitute_m_by_lam3() const
    {
        std::vector<Term> raw;
        raw.reserve(terms_.size());
        for (const auto& t : terms_) {
            auto e = t.first.exponents();
            e[2] += e[3];
            e[3] = 0;
            raw.emplace_back(Monomial::from_exponents(e), t.second);
        }
        return from_terms(std::move(raw));
    }

    /// Evaluates with a caller-supplied coefficient mapping into the
    /// target field F.
    template <class F, class CoeffMap>
    F evaluate(const std::array<F, kNumVars>& point, CoeffMap&& coeff_to_f) const
    {
        std::array<std::vector<F>, kNumVars> powers;
        for (int v = 0; v < kNumVars; ++v) {
            const int deg = degree_in(v);
            powers[v].reserve(deg + 1);
            powers[v].push_back(F(1));
            for (int i = 1; i <= deg; ++i) powers[v].push_back(powers[v].back() * point[v]);
        }
        F acc(0);
        for (const auto& t : terms_) {
            F term = coeff_to_f(t.second);
            for (int v = 0; v < kNumVars; ++v) {
                const int e = t.first.exponent(v);
                if (e) term = term * powers[v][e];
            }
            acc = acc + term;
        }
        return acc;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    /// Graded-lex text form, e.g. "3/2*lam1^2*lam2 - lam3 + 1".
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [mono, c] : terms_) {
            const bool negative = c < 0;
            C mag = negative ? C(-c) : c;
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            const bool unit = (mag == 1);
            if (mono.degree() == 0) {
                os << coeff_string(mag);
                continue;
            }
            if (!unit) os << coeff_string(mag) << '*';
            bool first_var = true;
            for (int v = 0; v < kNumVars; ++v) {
                const int e = mono.exponent(v);
                if (!e) continue;
                if (!first_var) os << '*';
                first_var = false;
                os << kVarNames[v];
                if (e > 1) os << '^' << e;
            }
        }
        return os.str();
    }

    static Monomial from_packed(std::uint64_t w)
    {
        std::array<int, kNumVars> e{};
        for (int v = 0; v < kNumVars; ++v) {
            e[v] = static_cast<int>((w >> (36 - Monomial::kFieldBits * v)) & Monomial::kFieldMask);
        }
        return Monomial::from_exponents(e);
    }

private:
    static std::string coeff_string(const C& c)
    {
        if constexpr (std::is_same_v<C, mpq_class> || std::is_same_v<C, mpz_class>) {
            return c.get_str();
        } else {
            std::ostringstream os;
            os << c;
            return os.str();
        }
    }

    static MultiPoly merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b)
    {
        MultiPoly r;
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
                r.terms_.push_back(a[i++]);
            } else if (i == a.size() || b[j].first > a[i].first) {
                r.terms_.emplace_back(b[j].first, negate_b ? C(-b[j].second) : b[j].second);
                ++j;
            } else {
                C c = negate_b ? C(a[i].second - b[j].second) : C(a[i].second + b[j].second);
                if (c != 0) r.terms_.emplace_back(a[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

using Poly = MultiPoly<Scalar>;

namespace detail {

/// Recursive-descent reader shared by the polynomial, linear-form and
/// rational-function grammars.
class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept(std::string_view word)
    {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void expect(std::string_view word)
    {
        if (!accept(word)) fail("expected '" + std::string(word) + "'");
    }

    long read_int()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) fail("expected integer");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    std::string read_digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    /// Unsigned rational literal "p" or "p/q". A '/' is only consumed when
    /// digits follow, so "( x ) / ( y )" is left intact.
    Scalar read_unsigned_scalar()
    {
        std::string num = read_digits();
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                return parse_scalar(num + "/" + read_digits());
            }
        }
        pos_ = save;
        return parse_scalar(num);
    }

    int read_var()
    {
        skip_ws();
        for (int v = 0; v < kNumVars; ++v) {
            const auto name = kVarNames[v];
            if (text_.substr(pos_, name.size()) == name) {
                const std::size_t end = pos_ + name.size();
                if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) continue;
                pos_ = end;
                return v;
            }
        }
        return -1;
    }

    std::size_t position() const { return pos_; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Poly read_poly(Lexer& lx)
{
    std::vector<Poly::Term> raw;
    bool negative = false;
    if (lx.accept('-')) negative = true;
    while (true) {
        Scalar coeff = 1;
        std::array<int, kNumVars> exps{};
        bool any = false;
        while (true) {
            const char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= lx.read_unsigned_scalar();
            } else {
                const int v = lx.read_var();
                if (v < 0) lx.fail("expected factor");
                int e = 1;
                if (lx.accept('^')) e = static_cast<int>(lx.read_int());
                if (e < 0) lx.fail("negative exponent in polynomial");
                exps[v] += e;
            }
            any = true;
            if (!lx.accept('*')) break;
        }
        if (!any) lx.fail("empty term");
        if (negative) coeff = -coeff;
        raw.emplace_back(Monomial::from_exponents(exps), coeff);
        if (lx.accept('+')) {
            negative = false;
        } else if (lx.accept('-')) {
            negative = true;
        } else {
            break;
        }
    }
    return Poly::from_terms(std::move(raw));
}

}  // namespace detail

inline Poly parse_poly(std::string_view text)
{
    detail::Lexer lx(text);
    Poly p = detail::read_poly(lx);
    if (!lx.at_end()) lx.fail("trailing input");
    return p;
}

}  // namespace wallx
