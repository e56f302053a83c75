// Cohomology dimensions of truncated complexes, and the stabilization loop
// that turns truncations into certified answers.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dwc/forms.hpp"
#include "dwc/rank.hpp"

namespace dwc {

struct DegreeDims {
    int degree = 0;
    std::size_t space_dim = 0;
    std::size_t rank_out = 0;
    std::size_t cohomology = 0;
};

struct ComplexDims {
    std::vector<DegreeDims> degrees;

    std::size_t h(int k) const;
    long euler_spaces() const;
    long euler_cohomology() const;
    std::vector<std::size_t> cohomology_vector() const;
};

/// dim H^i = dim C^i − rank(d^i) − rank(d^{i−1}). Verifies d^{i+1}∘d^i = 0
/// first and throws NilpotenceViolation otherwise.
template <ExactField K>
ComplexDims cohomology_dims(const TruncatedComplex<K>& c, Exec exec = Exec::Parallel);

/// Staircase levels visited by stabilized_cohomology. `lag` is how far past
/// each level coboundaries are sought (see stabilized_cohomology).
struct StabilizationPolicy {
    int initial_bound = 0;
    int step = 1;
    int max_bound = 0;
    int lag = 1;

    /// initial = max(0, 2m − nvars): the top-form total-degree bound
    /// (n+1)(m−2) + (n+1) + 2m expressed as a level.
    static StabilizationPolicy defaults(std::size_t nvars, int m);
    void validate() const;
};

struct Certificate {
    std::vector<int> bounds;  // levels whose dims agreed (or the last three tried)
    int lag = 0;
    bool agreed = false;
};

enum class ComputationPath { Jacobian, Truncation };
std::string to_string(ComputationPath p);

struct LabeledDim {
    int degree = 0;          // raw complex degree k
    std::string key;         // machine label, e.g. "k4_prim"
    std::string label;       // normalized, e.g. "H^4_Y(P^3)^prim"
    std::size_t dim = 0;
};

struct Check {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

struct CohomologyReport {
    std::string input;
    std::string kind;  // which pipeline produced it
    int m = 0;
    std::size_t nvars = 0;
    std::vector<int> weights;
    int modulus = 1;
    std::optional<int> strand;  // residue when modulus > 1
    ComputationPath path = ComputationPath::Truncation;
    std::vector<LabeledDim> dims;
    std::optional<Certificate> certificate;
    /// Cohomology of the final staircase complex itself (Euler-checkable).
    std::optional<ComplexDims> staircase;
    std::vector<Check> checks;

    std::size_t dim(int k) const;
    bool stabilized() const { return !certificate || certificate->agreed; }
};

/// Cohomology of (Ω•, D) on a strand by truncation.
///
/// For each level L the report uses dim Im(H^k(C_L) → H^k(C_{L+lag})), which
/// needs only ranks:
///   dim C^k_L − rank(D|C^k_L) − rank(D|C^{k−1}_{L'}) + rank(π_{>L} ∘ D|C^{k−1}_{L'})
/// where π_{>L} keeps the coordinates of level > L. Levels advance by
/// policy.step until three consecutive levels give identical dims, or
/// max_bound is passed; the certificate records which. Agreement is evidence
/// of stabilization, not a proof.
template <ExactField K>
CohomologyReport stabilized_cohomology(const TwistedOperator<K>& op, const StabilizationPolicy& policy,
                                       Exec exec = Exec::Parallel);

template <ExactField K>
CohomologyReport stabilized_cohomology(const Polynomial<K>& f, const StrandSpec& spec,
                                       std::optional<StabilizationPolicy> policy = std::nullopt,
                                       Exec exec = Exec::Parallel);

/// The image dims for one (L, L') pair, exposed for tests.
template <ExactField K>
std::vector<std::size_t> filtered_cohomology(const TwistedOperator<K>& op, int level, int outer_level,
                                             Exec exec = Exec::Parallel);

}  // namespace dwc
