// Jacobian rings of homogeneous polynomials: Hilbert functions from
// Macaulay-matrix ranks, Milnor numbers, and primitive Hodge numbers of
// smooth projective hypersurfaces.
#pragma once

#include <cstddef>
#include <vector>

#include "dwc/cohomology.hpp"
#include "dwc/polynomial.hpp"

namespace dwc {

struct JacobianProfile {
    int m = 0;
    std::size_t nvars = 0;
    int socle_degree = 0;              // σ = nvars·(m − 2)
    std::vector<std::size_t> hilbert;  // h_0 .. h_σ when smooth, else h_0 .. h_{σ+2}
    std::size_t milnor = 0;            // Σ h_d
    bool smooth = false;

    std::size_t h(int d) const;
};

/// h_d = C(d+n, n) − rank of (g_0..g_n) ↦ Σ g_i ∂F/∂x_i into degree d, for
/// d = 0..σ+2. Smooth when h_{σ+1} = h_{σ+2} = 0. Degrees are ranked
/// concurrently under Exec::Parallel.
template <ExactField K>
JacobianProfile jacobian_hilbert(const Polynomial<K>& f, Exec exec = Exec::Parallel);

/// Throws NotSmooth for singular input.
template <ExactField K>
std::size_t milnor_number(const Polynomial<K>& f);

struct HodgeNumber {
    int q = 0;
    std::size_t h = 0;
};

/// h_q = dim R_F in degree qm − (n+1), q = 1..n. Throws NotSmooth.
std::vector<HodgeNumber> primitive_hodge_numbers(const JacobianProfile& profile);
template <ExactField K>
std::vector<HodgeNumber> primitive_hodge_numbers(const Polynomial<K>& f);

/// Σ h_d over d with d + nvars ≡ residue (mod modulus): the top-degree
/// dimension of strand `residue` for smooth F.
std::size_t jacobian_strand_dim(const JacobianProfile& profile, int modulus, int residue);

/// Cohomology of the staircase complex with differential dF∧ only. That
/// complex splits by level, so the answer is exact for every level ≤ L.
template <ExactField K>
ComplexDims dF_only_cohomology(const Polynomial<K>& f, const StrandSpec& spec, int level, Exec exec = Exec::Parallel);

std::size_t binomial(int n, int k);

}  // namespace dwc
