// Polynomial differential forms on affine space, the twisted differential
// d + dF∧, congruence strands, and degree-truncated complexes.
//
// Sign convention: dx_k ∧ dx_I = (−1)^{#{l ∈ I : l < k}} dx_{I ∪ {k}}.
//
// Truncation. A monomial form x^ν dx_I of form degree i has weighted total
// degree e = |ν|_w + |I|_w and level e − i·m, where m is the step of the
// potential (its weighted degree). d keeps e and raises i, so it lowers the
// level by m; dF∧ raises e by at most m and i by one, so it never raises the
// level. Forms of level ≤ L therefore span a finite subcomplex C_L, and the
// C_L exhaust Ω•. For homogeneous F the associated graded of this
// filtration is (Ω•, dF∧) split by level.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dwc/exec.hpp"
#include "dwc/polynomial.hpp"
#include "dwc/sparse_matrix.hpp"

namespace dwc {

/// Bitmask of the dx_k present; at most 32 ambient variables.
using IndexSet = std::uint32_t;

int index_count(IndexSet s);
std::vector<std::size_t> indices(IndexSet s);
/// Sign of dx_I ∧ dx_J relative to dx_{I∪J}; 0 when I ∩ J ≠ ∅.
int wedge_sign(IndexSet a, IndexSet b);

/// x^ν dx_I
struct MonomialForm {
    Monomial mono;
    IndexSet dx = 0;

    friend bool operator==(const MonomialForm&, const MonomialForm&) = default;
    friend auto operator<=>(const MonomialForm& a, const MonomialForm& b)
    {
        if (auto c = b.mono <=> a.mono; c != 0) return c;  // higher grlex first
        return a.dx <=> b.dx;
    }
};

struct MonomialFormHash {
    std::size_t operator()(const MonomialForm& f) const { return f.mono.hash() * 31u + f.dx; }
};

/// Column lookup for a basis of monomial forms. When every exponent fits,
/// x^ν dx_I is packed into one word (bits() per variable, then the dx mask)
/// so lookups need no allocation.
class FormIndex {
public:
    FormIndex() = default;
    explicit FormIndex(std::span<const MonomialForm> basis);

    std::optional<std::uint32_t> find(const MonomialForm& f) const;
    std::size_t size() const { return size_; }

    bool packed() const { return bits_ > 0; }
    int bits() const { return bits_; }
    /// nullopt when some exponent needs more than bits().
    std::optional<std::uint64_t> pack(const Monomial& m) const;
    std::optional<std::uint32_t> find_packed(std::uint64_t mono, IndexSet dx) const;

private:
    std::size_t nvars_ = 0;
    std::size_t size_ = 0;
    int bits_ = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> packed_;
    std::unordered_map<MonomialForm, std::uint32_t, MonomialFormHash> generic_;
};

FormIndex index_of(std::span<const MonomialForm> basis);

/// Ambient variables, optional weights, and a congruence class j mod m on
/// the weighted total degree |ν|_w + |I|_w. modulus = 1 is the full complex.
struct StrandSpec {
    std::size_t nvars = 0;
    int modulus = 1;
    int residue = 0;
    std::vector<int> weights;  // empty: all ones

    int weight(std::size_t k) const { return weights.empty() ? 1 : weights[k]; }
    int index_weight(IndexSet s) const;
    int total_degree(const MonomialForm& f) const;
    bool contains(const MonomialForm& f) const;
    void validate() const;
};

template <ExactField K>
class DifferentialForm {
public:
    using TermMap = std::map<MonomialForm, K>;

    DifferentialForm() = default;
    DifferentialForm(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}
    /// f · dx_I
    static DifferentialForm from_polynomial(const Polynomial<K>& f, IndexSet dx);
    static DifferentialForm monomial(const MonomialForm& f, const K& c, std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MonomialForm& f, const K& c);
    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator-=(const DifferentialForm& o);
    DifferentialForm scaled(const K& c) const;
    /// Multiplies every coefficient by the polynomial g.
    DifferentialForm multiplied(const Polynomial<K>& g) const;
    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
    friend bool operator==(const DifferentialForm&, const DifferentialForm&) = default;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void check_compatible(const DifferentialForm& o) const;

    std::size_t nvars_ = 0;
    int degree_ = 0;
    TermMap terms_;
};

template <ExactField K>
DifferentialForm<K> wedge(const DifferentialForm<K>& a, const DifferentialForm<K>& b);
template <ExactField K>
DifferentialForm<K> exterior_derivative(const DifferentialForm<K>& w);
/// dF as a 1-form.
template <ExactField K>
DifferentialForm<K> differential_of(const Polynomial<K>& f);
/// dω + dF ∧ ω
template <ExactField K>
DifferentialForm<K> twisted_differential(const Polynomial<K>& f, const DifferentialForm<K>& w);

/// All x^ν dx_I with |I| = i in the strand and |ν|_w ≤ coeff_bound, ordered by
/// ascending total degree, then index set (lexicographic), then descending
/// grlex on ν.
std::vector<MonomialForm> strand_basis(const StrandSpec& spec, int i, int coeff_bound);

enum class Differential {
    Twisted,  // d + dF∧
    DeRham,   // d
    Koszul,   // dF∧
};

/// The chosen differential on monomial forms, together with the staircase
/// filtration it respects.
template <ExactField K>
class TwistedOperator {
public:
    TwistedOperator(Polynomial<K> potential, StrandSpec spec, int step, Differential kind = Differential::Twisted);

    const StrandSpec& spec() const { return spec_; }
    int step() const { return step_; }
    Differential kind() const { return kind_; }
    const Polynomial<K>& potential() const { return f_; }
    std::size_t nvars() const { return spec_.nvars; }

    int level(const MonomialForm& f) const;
    /// Strand basis of form degree i at level ≤ L, ordered as strand_basis.
    std::vector<MonomialForm> staircase_basis(int i, int level) const;

    /// Image of one monomial form, as unsorted (form, coefficient) pairs.
    std::vector<std::pair<MonomialForm, K>> apply(const MonomialForm& f) const;
    DifferentialForm<K> apply(const DifferentialForm<K>& w) const;

    /// Row r is the image of source[r] in the coordinates of `target`. Terms
    /// missing from `target` raise Error unless drop_missing is set.
    SparseMatrix<K> matrix(std::span<const MonomialForm> source, const FormIndex& target, std::size_t target_size,
                           bool drop_missing, Exec exec) const;

private:
    /// ∂F/∂x_k with packed exponents, for FormIndex::find_packed.
    struct PackedGradient {
        std::vector<std::vector<std::pair<std::uint64_t, K>>> terms;
        int max_exponent = 0;
    };
    std::optional<PackedGradient> pack_gradient(const FormIndex& target) const;
    typename SparseMatrix<K>::Row image_row(const MonomialForm& f, const FormIndex& target, bool drop_missing,
                                            const PackedGradient* packed) const;

    Polynomial<K> f_;
    StrandSpec spec_;
    int step_;
    Differential kind_;
    std::vector<std::vector<std::pair<Monomial, K>>> grad_;
};

template <ExactField K>
struct TruncatedComplex {
    StrandSpec spec;
    int step = 1;
    int level = 0;
    Differential kind = Differential::Twisted;
    std::vector<std::vector<MonomialForm>> bases;  // form degrees 0..nvars
    std::vector<SparseMatrix<K>> maps;              // maps[i]: bases[i] -> bases[i+1]
};

/// Step implied by a potential for the given strand: its weighted degree
/// (which must be homogeneous and match the modulus when modulus > 1), or
/// the modulus itself for F = 0.
template <ExactField K>
int potential_step(const Polynomial<K>& f, const StrandSpec& spec);

template <ExactField K>
TruncatedComplex<K> assemble_complex(const TwistedOperator<K>& op, int level, Exec exec = Exec::Parallel);

/// Staircase complex C_L of (Ω•, d + dF∧) on the strand. Throws InputError
/// for non-homogeneous F on a proper strand or a modulus mismatch.
template <ExactField K>
TruncatedComplex<K> assemble_truncated_complex(const Polynomial<K>& f, const StrandSpec& spec, int level,
                                               Differential kind = Differential::Twisted, Exec exec = Exec::Parallel);

}  // namespace dwc
