// Exact scalar fields: arbitrary-precision rationals, and rational functions
// in one parameter t with rational coefficients.
#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dwc/errors.hpp"

namespace dwc {

using Rational = mpq_class;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
std::string to_string(const Rational& a);
/// Approximate storage size in bits; used to rank pivot candidates.
std::size_t bit_cost(const Rational& a);
/// Parses "p" or "p/q" with optional sign. Throws InputError.
Rational parse_rational(std::string_view text);

/// Dense univariate polynomial over Q, coefficients stored low to high with no
/// trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Rational& c);  // NOLINT: constants convert implicitly
    UniPoly(long c) : UniPoly(Rational(c)) {}  // NOLINT

    static UniPoly monomial(const Rational& c, int degree);
    static UniPoly variable() { return monomial(Rational(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& t) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const UniPoly& o);
    UniPoly operator-() const;
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    /// Quotient and remainder; b must be nonzero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

    std::string to_string(std::string_view var = "t") const;
    std::size_t bit_cost() const;

private:
    explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    void trim();

    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT
    RationalFunction(const UniPoly& p) : num_(p), den_(1) {}  // NOLINT
    RationalFunction(UniPoly num, UniPoly den);

    static RationalFunction t() { return RationalFunction(UniPoly::variable()); }

    const UniPoly& numerator() const { return num_; }
    const UniPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Evaluates at t0. Throws DiscriminantError when the denominator vanishes.
    Rational operator()(const Rational& t0) const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    RationalFunction operator-() const;
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    std::string to_string(std::string_view var = "t") const;
    std::size_t bit_cost() const { return num_.bit_cost() + den_.bit_cost(); }

private:
    void normalize();

    UniPoly num_;
    UniPoly den_;
};

inline bool is_zero(const RationalFunction& a) { return a.is_zero(); }
inline std::string to_string(const RationalFunction& a) { return a.to_string(); }
inline std::size_t bit_cost(const RationalFunction& a) { return a.bit_cost(); }

/// The two exact coefficient fields the engine is instantiated over.
template <class K>
concept ExactField = requires(const K& a, const K& b) {
    { K(1L) };
    { K(a + b) };
    { K(a - b) };
    { K(a * b) };
    { K(a / b) };
    { K(-a) };
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::same_as<bool>;
    { to_string(a) } -> std::same_as<std::string>;
    { bit_cost(a) } -> std::same_as<std::size_t>;
};

}  // namespace dwc
