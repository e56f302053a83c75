// End-to-end pipelines: primitive cohomology of projective hypersurfaces,
// affine twisted cohomology, strand splittings, and the dimension identities
// relating them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwc/cohomology.hpp"
#include "dwc/griffiths.hpp"

namespace dwc {

struct PipelineOptions {
    std::optional<StabilizationPolicy> policy;
    Exec exec = Exec::Parallel;
    /// Use staircase truncation even when F is smooth.
    bool force_truncation = false;
};

struct Verdict {
    std::string name;
    std::vector<Check> checks;
    std::vector<CohomologyReport> reports;

    bool pass() const;
};

Check make_check(std::string name, std::size_t lhs, std::size_t rhs);
Check make_check(std::string name, const std::string& lhs, const std::string& rhs);

/// Throws Unstabilized when the report carries a certificate that did not agree.
void require_stable(const CohomologyReport& rep);

/// H^k(Ω^{(0 mod m)}, d + dF∧) for homogeneous F of degree m, labeled as
/// H^k_Y(P^n)^prim. Smooth F goes through the Jacobian ring unless
/// force_truncation; singular F is truncated and certified.
CohomologyReport primitive_dwork_cohomology(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// H^k(Ω^•(A^N), d + dG∧), labeled as reduced cohomology of U = G^{-1}(1)
/// shifted by one. Weighted-homogeneous G (weights empty: all ones) is summed
/// over its strands; other G is truncated directly.
CohomologyReport affine_twisted_cohomology(const Polynomial<Rational>& g, const std::vector<int>& weights = {},
                                           const PipelineOptions& opt = {});

/// One report per residue j = 0..m−1.
std::vector<CohomologyReport> strand_decomposition(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// Strands by truncation against the full complex by an independent route
/// (Milnor number when smooth, direct truncation otherwise).
Verdict strand_sum_check(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// F̃ = F + x_new^m: full dims multiply by m−1 with a degree shift, and
/// prim H^{i+2}(F̃) = Σ_{0<j<m} H^{i+1}(strand j of F).
Verdict thom_sebastiani_check(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// dim H̃^i(U) = dim H^{i+2}_Ỹ(P^{n+1})^prim + dim H^{i+1}_Y(P^n)^prim.
Verdict suspension_check(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// Koszul complex of ∂/∂x_j + Σ y_i ∂f_i/∂x_j, ∂/∂y_i + f_i on Q[x, y]: the
/// twisted complex of Φ = Σ y_i f_i in n + r variables (x first). `bound`
/// overrides the first staircase level.
CohomologyReport ci_dwork_koszul(const std::vector<Polynomial<Rational>>& f, std::optional<int> bound = std::nullopt,
                                 const PipelineOptions& opt = {});

/// Φ = Σ y_i y∨_i on 2r variables: one-dimensional cohomology in degree 2r.
Verdict fourier_lemma_check(int r, std::optional<int> bound = std::nullopt, const PipelineOptions& opt = {});

/// Jacobian path against truncation path degree by degree, plus the
/// classical middle Betti number of Y against prim + (1 if dim Y even).
/// Throws NotSmooth.
Verdict compare_smooth_paths(const Polynomial<Rational>& f, const PipelineOptions& opt = {});

/// b_{n−1}(Y) for a smooth degree-m hypersurface Y ⊂ P^n from χ(Y).
long middle_betti_number(int n, int m);

}  // namespace dwc
