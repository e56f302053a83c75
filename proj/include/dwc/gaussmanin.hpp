// Gauss–Manin connection on top-degree primitive cohomology of a pencil
// F_t = F_0 + t·G of smooth projective hypersurfaces.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dwc/dwork.hpp"

namespace dwc {

struct Family {
    Polynomial<Rational> base;
    Polynomial<Rational> perturbation;  // ∂F_t/∂t; may be zero

    /// Degree m of the pencil; throws InputError when the pair is not two
    /// homogeneous polynomials of one degree in the same variables.
    int degree() const;
    std::size_t nvars() const { return base.nvars(); }
    Polynomial<RationalFunction> generic() const;
    Polynomial<Rational> at(const Rational& t0) const;
};

template <ExactField K>
using DenseMatrix = std::vector<std::vector<K>>;

/// Basis element b is the class of basis[b] · dx_0 ∧ … ∧ dx_n. Row b of
/// `entries` holds the coordinates of ∇ω_b, so a basis change ω' = Pω gives
/// entries' = P · entries · P^{-1}.
template <ExactField K>
struct ConnectionMatrix {
    std::vector<Polynomial<Rational>> basis;
    DenseMatrix<K> entries;
    int window_level = 0;  // staircase level where the reduction was solved

    std::size_t size() const { return basis.size(); }
};

/// Matrix of ω ↦ G·ω on H^{n+1}(Ω^{(0 mod m)}, d + dF∧), with basis
/// representatives taken t-free. Without a basis, monomials are chosen
/// from the reduction's standard monomials, lowest degree first. Throws
/// NotSmooth for singular F and Unstabilized when max_escalations level
/// increases do not reach the expected dimension.
template <ExactField K>
ConnectionMatrix<K> connection_matrix(const Polynomial<K>& f, const Polynomial<K>& g,
                                      const std::optional<std::vector<Polynomial<Rational>>>& basis = std::nullopt,
                                      int max_escalations = 4, Exec exec = Exec::Parallel);

ConnectionMatrix<RationalFunction> family_connection_matrix(
    const Family& fam, const std::optional<std::vector<Polynomial<Rational>>>& basis = std::nullopt,
    Exec exec = Exec::Parallel);

/// Monic lcm of all entry denominators.
UniPoly discriminant_polynomial(const ConnectionMatrix<RationalFunction>& cm);

/// Throws DiscriminantError when t0 is a pole of some entry.
ConnectionMatrix<Rational> specialize(const ConnectionMatrix<RationalFunction>& cm, const Rational& t0);

/// Specialization against direct computation at each sample, zero matrix for
/// the constant family, and conjugation under seeded random basis changes.
Verdict connection_properties_check(const Family& fam, const std::vector<Rational>& samples,
                                    const std::optional<std::vector<Polynomial<Rational>>>& basis = std::nullopt,
                                    std::uint64_t seed = 20240601, Exec exec = Exec::Parallel);

template <ExactField K>
DenseMatrix<K> multiply(const DenseMatrix<K>& a, const DenseMatrix<K>& b);
/// Throws Error when singular.
template <ExactField K>
DenseMatrix<K> inverse(const DenseMatrix<K>& a);
template <ExactField K>
std::string to_string(const DenseMatrix<K>& a);

}  // namespace dwc
