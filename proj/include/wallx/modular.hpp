#pragma once

// Arithmetic modulo the Mersenne prime 2^61 - 1 and seeded evaluation
// points for probabilistic identity testing.

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "wallx/error.hpp"
#include "wallx/multipoly.hpp"

namespace wallx {

/// Raised when an evaluation point makes a denominator vanish. Callers
/// resample; it only escapes as EvalDegenerate.
class PointCollision : public Error {
public:
    using Error::Error;
};

class ModInt {
public:
    static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

    constexpr ModInt() = default;
    constexpr ModInt(long long v) : v_(reduce_signed(v)) {}

    static constexpr ModInt from_raw(std::uint64_t v) { return ModInt(Raw{}, v % kPrime); }

    static ModInt from_bigint(const mpz_class& z)
    {
        mpz_class r = z % mpz_class(std::to_string(kPrime));
        if (r < 0) r += mpz_class(std::to_string(kPrime));
        return from_raw(std::stoull(r.get_str()));
    }

    /// Throws PointCollision when the denominator is divisible by p.
    static ModInt from_scalar(const mpq_class& q)
    {
        const ModInt den = from_bigint(q.get_den());
        if (den.is_zero()) throw PointCollision("rational coefficient denominator divisible by p");
        return from_bigint(q.get_num()) / den;
    }

    constexpr std::uint64_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr ModInt operator+(ModInt a, ModInt b)
    {
        std::uint64_t s = a.v_ + b.v_;
        if (s >= kPrime) s -= kPrime;
        return ModInt(Raw{}, s);
    }
    friend constexpr ModInt operator-(ModInt a, ModInt b)
    {
        return ModInt(Raw{}, a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + kPrime - b.v_);
    }
    constexpr ModInt operator-() const { return ModInt(Raw{}, v_ == 0 ? 0 : kPrime - v_); }

    friend constexpr ModInt operator*(ModInt a, ModInt b)
    {
        const unsigned __int128 prod = static_cast<unsigned __int128>(a.v_) * b.v_;
        std::uint64_t lo = static_cast<std::uint64_t>(prod & kPrime);
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
        std::uint64_t s = lo + hi;
        if (s >= kPrime) s -= kPrime;
        return ModInt(Raw{}, s);
    }

    ModInt pow(std::uint64_t e) const
    {
        ModInt base = *this, acc(1);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    ModInt inverse() const
    {
        if (is_zero()) throw PointCollision("inverse of zero modulo p");
        return pow(kPrime - 2);
    }

    friend ModInt operator/(ModInt a, ModInt b) { return a * b.inverse(); }

    ModInt& operator+=(ModInt b) { return *this = *this + b; }
    ModInt& operator-=(ModInt b) { return *this = *this - b; }
    ModInt& operator*=(ModInt b) { return *this = *this * b; }
    ModInt& operator/=(ModInt b) { return *this = *this / b; }

    friend constexpr bool operator==(ModInt, ModInt) = default;

    std::string to_string() const { return std::to_string(v_); }

private:
    struct Raw {};
    constexpr ModInt(Raw, std::uint64_t v) : v_(v) {}

    static constexpr std::uint64_t reduce_signed(long long v)
    {
        long long r = v % static_cast<long long>(kPrime);
        if (r < 0) r += static_cast<long long>(kPrime);
        return static_cast<std::uint64_t>(r);
    }

    std::uint64_t v_ = 0;
};

/// One assignment lam1, lam2, lam3, m -> nonzero residues mod p.
struct EvalPoint {
    std::uint64_t prime = ModInt::kPrime;
    std::array<ModInt, kNumVars> values{};
    std::uint64_t seed = 0;
    int index = 0;  ///< position in the seeded stream

    ModInt operator[](int v) const { return values[v]; }
};

/// Deterministic stream of evaluation points. mt19937_64 is fully
/// specified by the standard, so a seed reproduces the same points on
/// every platform; residues are reduced by modulo instead of a
/// distribution object for the same reason.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : seed_(seed), rng_(seed) {}

    EvalPoint next()
    {
        EvalPoint p;
        p.seed = seed_;
        p.index = drawn_++;
        for (auto& v : p.values) v = ModInt::from_raw(rng_() % (ModInt::kPrime - 1) + 1);
        return p;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    int drawn_ = 0;
};

inline constexpr int kMaxResample = 32;

/// Draws `count` points on which `probe` succeeds, resampling whenever it
/// throws PointCollision.
template <class Probe>
std::vector<EvalPoint> draw_points(std::uint64_t seed, int count, Probe&& probe)
{
    PointSampler sampler(seed);
    std::vector<EvalPoint> out;
    for (int i = 0; i < count; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxResample && !ok; ++attempt) {
            EvalPoint p = sampler.next();
            try {
                probe(p);
                out.push_back(p);
                ok = true;
            } catch (const PointCollision&) {
            }
        }
        if (!ok) throw EvalDegenerate("all resampling attempts hit denominator zeros");
    }
    return out;
}

}  // namespace wallx
