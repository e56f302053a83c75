// Sparse multivariate polynomials over an exact field.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwc/scalar.hpp"

namespace dwc {

/// Exponent vector x^ν, one entry per ambient variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents);
    static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }
    static Monomial variable(std::size_t nvars, std::size_t k, int power = 1);

    std::size_t nvars() const { return e_.size(); }
    int operator[](std::size_t k) const { return e_[k]; }
    const std::vector<int>& exponents() const { return e_; }
    int degree() const;
    /// Σ w_i ν_i; an empty weight span means all weights 1.
    int weighted_degree(std::span<const int> weights) const;

    Monomial operator*(const Monomial& o) const;
    /// x^ν / x_k, or nullopt when ν_k = 0.
    std::optional<Monomial> lowered(std::size_t k) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Graded lexicographic with x0 > x1 > ...
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

    std::size_t hash() const;

private:
    std::vector<int> e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials of degree exactly d in nvars variables, descending grlex
/// (x0^d first). Count is C(d + nvars - 1, nvars - 1).
std::vector<Monomial> monomial_basis(std::size_t nvars, int d);
/// Monomials with Σ w_i ν_i = d, descending grlex. Weights must be positive.
std::vector<Monomial> weighted_monomial_basis(std::span<const int> weights, int d);

template <ExactField K>
class Polynomial {
public:
    using TermMap = std::map<Monomial, K, std::greater<>>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const K& c);
    static Polynomial variable(std::size_t nvars, std::size_t k);
    static Polynomial term(const Monomial& m, const K& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    K coefficient(const Monomial& m) const;

    /// Adds c·m, dropping the term if the coefficient cancels.
    void add_term(const Monomial& m, const K& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const K& c) const;
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Highest total degree of a term; -1 for the zero polynomial.
    int total_degree() const;
    int max_weighted_degree(std::span<const int> weights) const;

    /// Common degree of every term, or nullopt. Throws Error on zero.
    std::optional<int> homogeneous_degree() const;
    std::optional<int> weighted_homogeneous_degree(std::span<const int> weights) const;

    Polynomial partial_derivative(std::size_t k) const;

    /// Appends `extra` variables after the existing ones.
    Polynomial extended(std::size_t extra) const;

    std::string to_string(const std::vector<std::string>& names) const;
    std::string to_string() const;

private:
    void check_compatible(const Polynomial& o) const;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// x0..x{n-1}
std::vector<std::string> default_variable_names(std::size_t nvars);

Polynomial<RationalFunction> lift(const Polynomial<Rational>& p);
/// Evaluates every coefficient at t = t0. Throws DiscriminantError.
Polynomial<Rational> specialize(const Polynomial<RationalFunction>& p, const Rational& t0);

extern template class Polynomial<Rational>;
extern template class Polynomial<RationalFunction>;

}  // namespace dwc
