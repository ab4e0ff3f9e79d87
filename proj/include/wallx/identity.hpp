#pragma once

// Identity testing for rational functions: exact (symbolic) or by
// seeded evaluation modulo a 61-bit prime.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "wallx/modular.hpp"
#include "wallx/ratfun.hpp"

namespace wallx {

struct Backend {
    enum class Kind { symbolic, eval };
    Kind kind = Kind::symbolic;
    int points = 5;
    std::uint64_t seed = 42;

    static Backend symbolic() { return {}; }
    static Backend eval(int points, std::uint64_t seed) { return {Kind::eval, points, seed}; }

    bool is_symbolic() const { return kind == Kind::symbolic; }
    std::string name() const { return is_symbolic() ? "symbolic" : "eval"; }
};

struct IdentityResult {
    bool equal = false;
    std::optional<EvalPoint> witness;   ///< eval backend, unequal
    std::optional<RatFun> difference;   ///< symbolic backend, unequal
    std::optional<double> sz_bound;     ///< eval backend: (D/p)^N
};

/// Schwartz-Zippel failure probability (D/p)^N, computed in log space.
inline double sz_bound(long total_degree, int points)
{
    if (total_degree <= 0) return 0.0;
    const double ratio = static_cast<double>(total_degree) / static_cast<double>(ModInt::kPrime);
    return std::exp(points * std::log(ratio));
}

inline IdentityResult rf_equal(const RatFun& a, const RatFun& b, const Backend& backend)
{
    IdentityResult r;
    if (backend.is_symbolic()) {
        RatFun diff = a - b;
        r.equal = diff.is_zero();
        if (!r.equal) r.difference = std::move(diff);
        return r;
    }
    const auto pts = draw_points(backend.seed, backend.points, [&](const EvalPoint& p) {
        (void)a.eval_mod(p);
        (void)b.eval_mod(p);
    });
    r.equal = true;
    for (const auto& p : pts) {
        if (a.eval_mod(p) != b.eval_mod(p)) {
            r.equal = false;
            r.witness = p;
            break;
        }
    }
    r.sz_bound = sz_bound(a.degree_bound() + b.degree_bound(), backend.points);
    return r;
}

}  // namespace wallx
