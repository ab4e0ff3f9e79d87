#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>

#include "wallx/multipoly.hpp"

namespace wallx {

/// Integer linear form c1*lam1 + c2*lam2 + c3*lam3 + cm*m in canonical
/// orientation: the first nonzero coefficient is positive.
class LinearForm {
public:
    LinearForm() = default;

    /// Caller promises `coeffs` is nonzero and already canonical.
    static LinearForm from_canonical(const FormCoeffs& coeffs) { return LinearForm(coeffs); }

    const FormCoeffs& coeffs() const { return c_; }
    long operator[](int v) const { return c_[v]; }

    Poly to_poly() const { return Poly::linear(c_); }
    std::string to_string() const { return to_poly().to_string(); }

    friend auto operator<=>(const LinearForm&, const LinearForm&) = default;

private:
    explicit LinearForm(const FormCoeffs& c) : c_(c) {}
    FormCoeffs c_{};
};

/// A canonical form together with the parity used to reach it:
/// value = (negated ? -1 : 1) * form.
struct SignedForm {
    LinearForm form;
    bool negated = false;

    friend bool operator==(const SignedForm&, const SignedForm&) = default;
};

/// Canonicalises raw coefficients; nullopt for the zero form.
inline std::optional<SignedForm> canonical_form(FormCoeffs raw)
{
    int first = -1;
    for (int v = 0; v < kNumVars; ++v) {
        if (raw[v] != 0) {
            first = v;
            break;
        }
    }
    if (first < 0) return std::nullopt;
    const bool negated = raw[first] < 0;
    if (negated) {
        for (auto& c : raw) c = -c;
    }
    return SignedForm{LinearForm::from_canonical(raw), negated};
}

/// Weight vector (w0, w1, w2, w3, wm) on t0, t1, t2, t3, e^m.
using Weight5 = std::array<long, 5>;

/// w0*lam0 + w1*lam1 + w2*lam2 + w3*lam3 + wm*m with lam0 = -(lam1 + lam2 + lam3)
/// eliminated. Returns nullopt (the ZeroForm signal) when every resulting
/// coefficient vanishes, e.g. on the torus relation (1,1,1,1,0).
inline std::optional<SignedForm> linear_form_of_weight(const Weight5& w)
{
    return canonical_form({w[1] - w[0], w[2] - w[0], w[3] - w[0], w[4]});
}

namespace detail {

/// Reads a linear form: signed terms of the shape [integer*]variable,
/// stopping before any character that cannot continue the form.
inline FormCoeffs read_form(Lexer& lx)
{
    FormCoeffs c{};
    bool negative = lx.accept('-');
    bool any = false;
    while (true) {
        long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = std::stol(lx.read_digits());
            lx.expect('*');
        }
        const int v = lx.read_var();
        if (v < 0) lx.fail("expected variable in linear form");
        c[v] += negative ? -coeff : coeff;
        any = true;
        if (lx.accept('+')) {
            negative = false;
        } else if (lx.peek() == '-') {
            lx.accept('-');
            negative = true;
        } else {
            break;
        }
    }
    if (!any) lx.fail("empty linear form");
    return c;
}

}  // namespace detail

}  // namespace wallx
