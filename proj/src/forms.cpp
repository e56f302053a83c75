#include "dwc/forms.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <tuple>

#include <omp.h>

namespace dwc {

int index_count(IndexSet s) { return std::popcount(s); }

std::vector<std::size_t> indices(IndexSet s)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; s != 0; ++k, s >>= 1) {
        if (s & 1u) out.push_back(k);
    }
    return out;
}

int wedge_sign(IndexSet a, IndexSet b)
{
    if (a & b) return 0;
    // Count pairs (p ∈ a, q ∈ b) with p > q.
    int inversions = 0;
    for (std::size_t q : indices(b)) inversions += std::popcount(a >> (q + 1));
    return inversions % 2 ? -1 : 1;
}

FormIndex::FormIndex(std::span<const MonomialForm> basis) : size_(basis.size())
{
    if (!basis.empty()) nvars_ = basis.front().mono.nvars();
    int max_exp = 0;
    for (const auto& f : basis) {
        for (int e : f.mono.exponents()) max_exp = std::max(max_exp, e);
    }
    if (nvars_ > 0 && nvars_ < 32) {
        int bits = static_cast<int>((64 - nvars_) / nvars_);
        if (bits >= 2 && bits < 31 && max_exp < (1 << bits)) bits_ = bits;
    }
    if (packed()) {
        packed_.reserve(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            packed_.emplace(*pack(basis[i].mono) | (std::uint64_t{basis[i].dx} << (bits_ * nvars_)),
                            static_cast<std::uint32_t>(i));
        }
    } else {
        generic_.reserve(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) generic_.emplace(basis[i], static_cast<std::uint32_t>(i));
    }
}

std::optional<std::uint64_t> FormIndex::pack(const Monomial& m) const
{
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < m.nvars(); ++k) {
        if (m[k] >= (1 << bits_)) return std::nullopt;
        key |= static_cast<std::uint64_t>(m[k]) << (bits_ * static_cast<int>(k));
    }
    return key;
}

std::optional<std::uint32_t> FormIndex::find_packed(std::uint64_t mono, IndexSet dx) const
{
    auto it = packed_.find(mono | (std::uint64_t{dx} << (bits_ * nvars_)));
    if (it == packed_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> FormIndex::find(const MonomialForm& f) const
{
    if (!packed()) {
        auto it = generic_.find(f);
        if (it == generic_.end()) return std::nullopt;
        return it->second;
    }
    if (f.mono.nvars() != nvars_) return std::nullopt;
    auto key = pack(f.mono);
    if (!key) return std::nullopt;
    return find_packed(*key, f.dx);
}

FormIndex index_of(std::span<const MonomialForm> basis) { return FormIndex(basis); }

int StrandSpec::index_weight(IndexSet s) const
{
    int w = 0;
    for (std::size_t k : indices(s)) w += weight(k);
    return w;
}

int StrandSpec::total_degree(const MonomialForm& f) const
{
    return f.mono.weighted_degree(weights) + index_weight(f.dx);
}

bool StrandSpec::contains(const MonomialForm& f) const
{
    int r = total_degree(f) % modulus;
    return r == residue;
}

void StrandSpec::validate() const
{
    if (nvars == 0 || nvars > 32) throw InputError("ambient variable count must be in 1..32");
    if (modulus < 1) throw InputError("strand modulus must be >= 1");
    if (residue < 0 || residue >= modulus) throw InputError("strand residue must lie in 0..modulus-1");
    if (!weights.empty()) {
        if (weights.size() != nvars) throw InputError("weight count does not match variable count");
        for (int w : weights) {
            if (w <= 0) throw InputError("weights must be positive");
        }
    }
}

// ------------------------------------------------------- DifferentialForm

template <ExactField K>
DifferentialForm<K> DifferentialForm<K>::from_polynomial(const Polynomial<K>& f, IndexSet dx)
{
    DifferentialForm w(f.nvars(), index_count(dx));
    for (const auto& [m, c] : f.terms()) w.terms_.emplace(MonomialForm{m, dx}, c);
    return w;
}

template <ExactField K>
DifferentialForm<K> DifferentialForm<K>::monomial(const MonomialForm& f, const K& c, std::size_t nvars)
{
    DifferentialForm w(nvars, index_count(f.dx));
    w.add_term(f, c);
    return w;
}

template <ExactField K>
void DifferentialForm<K>::add_term(const MonomialForm& f, const K& c)
{
    if (f.mono.nvars() != nvars_) throw InputError("form variable-count mismatch");
    if (index_count(f.dx) != degree_) throw Error("term degree does not match form degree");
    if (dwc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(f, c);
    if (!inserted) {
        it->second = it->second + c;
        if (dwc::is_zero(it->second)) terms_.erase(it);
    }
}

template <ExactField K>
void DifferentialForm<K>::check_compatible(const DifferentialForm& o) const
{
    if (o.nvars_ != nvars_) throw InputError("form variable-count mismatch");
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw Error("adding forms of different degree");
}

template <ExactField K>
DifferentialForm<K>& DifferentialForm<K>::operator+=(const DifferentialForm& o)
{
    check_compatible(o);
    if (is_zero()) degree_ = o.degree_;
    for (const auto& [f, c] : o.terms_) add_term(f, c);
    return *this;
}

template <ExactField K>
DifferentialForm<K>& DifferentialForm<K>::operator-=(const DifferentialForm& o)
{
    check_compatible(o);
    if (is_zero()) degree_ = o.degree_;
    for (const auto& [f, c] : o.terms_) add_term(f, K(-c));
    return *this;
}

template <ExactField K>
DifferentialForm<K> DifferentialForm<K>::scaled(const K& c) const
{
    DifferentialForm r(nvars_, degree_);
    if (dwc::is_zero(c)) return r;
    for (const auto& [f, v] : terms_) r.terms_.emplace(f, K(v * c));
    return r;
}

template <ExactField K>
DifferentialForm<K> DifferentialForm<K>::multiplied(const Polynomial<K>& g) const
{
    if (g.nvars() != nvars_) throw InputError("form variable-count mismatch");
    DifferentialForm r(nvars_, degree_);
    for (const auto& [f, v] : terms_) {
        for (const auto& [m, c] : g.terms()) r.add_term(MonomialForm{f.mono * m, f.dx}, K(v * c));
    }
    return r;
}

template <ExactField K>
std::string DifferentialForm<K>::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty()) return "0";
    // Group by index set so each dx_I appears once.
    std::map<IndexSet, Polynomial<K>> grouped;
    for (const auto& [f, c] : terms_) {
        auto [it, _] = grouped.try_emplace(f.dx, Polynomial<K>(nvars_));
        it->second.add_term(f.mono, c);
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [dx, poly] : grouped) {
        if (!first) os << " + ";
        first = false;
        os << '(' << poly.to_string(names) << ')';
        if (dx == 0) continue;
        os << " d";
        bool sep = false;
        for (std::size_t k : indices(dx)) {
            os << (sep ? "^d" : "") << names.at(k);
            sep = true;
        }
    }
    return os.str();
}

template <ExactField K>
DifferentialForm<K> wedge(const DifferentialForm<K>& a, const DifferentialForm<K>& b)
{
    if (a.nvars() != b.nvars()) throw InputError("wedge of forms over different variables");
    DifferentialForm<K> r(a.nvars(), a.degree() + b.degree());
    for (const auto& [fa, ca] : a.terms()) {
        for (const auto& [fb, cb] : b.terms()) {
            int s = wedge_sign(fa.dx, fb.dx);
            if (s == 0) continue;
            K v = ca * cb;
            r.add_term(MonomialForm{fa.mono * fb.mono, fa.dx | fb.dx}, s > 0 ? v : K(-v));
        }
    }
    return r;
}

template <ExactField K>
DifferentialForm<K> exterior_derivative(const DifferentialForm<K>& w)
{
    DifferentialForm<K> r(w.nvars(), w.degree() + 1);
    for (const auto& [f, c] : w.terms()) {
        for (std::size_t k = 0; k < w.nvars(); ++k) {
            IndexSet bit = IndexSet{1} << k;
            if (f.dx & bit) continue;
            auto low = f.mono.lowered(k);
            if (!low) continue;
            int s = wedge_sign(bit, f.dx);
            K v = c * K(static_cast<long>(f.mono[k]));
            r.add_term(MonomialForm{*low, f.dx | bit}, s > 0 ? v : K(-v));
        }
    }
    return r;
}

template <ExactField K>
DifferentialForm<K> differential_of(const Polynomial<K>& f)
{
    DifferentialForm<K> r(f.nvars(), 1);
    for (std::size_t k = 0; k < f.nvars(); ++k) {
        auto partial = f.partial_derivative(k);
        for (const auto& [m, c] : partial.terms()) r.add_term(MonomialForm{m, IndexSet{1} << k}, c);
    }
    return r;
}

template <ExactField K>
DifferentialForm<K> twisted_differential(const Polynomial<K>& f, const DifferentialForm<K>& w)
{
    if (f.nvars() != w.nvars()) throw InputError("potential and form over different variables");
    return exterior_derivative(w) + wedge(differential_of(f), w);
}

// ---------------------------------------------------------------- bases

namespace {

bool index_lex_less(IndexSet a, IndexSet b)
{
    auto ia = indices(a);
    auto ib = indices(b);
    return ia < ib;
}

std::vector<IndexSet> index_sets(std::size_t nvars, int i)
{
    std::vector<IndexSet> out;
    for (IndexSet s = 0; s < (IndexSet{1} << nvars); ++s) {
        if (index_count(s) == i) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), index_lex_less);
    return out;
}

/// Forms with |I| = i in the strand and |ν|_w ≤ bound(I), emitted in
/// ascending total degree, then index set, then descending grlex.
std::vector<MonomialForm> enumerate_forms(const StrandSpec& spec, int i, const std::function<int(IndexSet)>& bound)
{
    spec.validate();
    std::vector<MonomialForm> out;
    if (i < 0 || i > static_cast<int>(spec.nvars)) return out;
    std::vector<int> w(spec.nvars, 1);
    if (!spec.weights.empty()) w = spec.weights;
    struct Slot {
        IndexSet s;
        int iw;
        int bound;
    };
    std::vector<Slot> slots;
    int max_e = -1;
    for (IndexSet s : index_sets(spec.nvars, i)) {
        Slot slot{s, spec.index_weight(s), bound(s)};
        max_e = std::max(max_e, slot.bound + slot.iw);
        slots.push_back(slot);
    }
    for (int e = 0; e <= max_e; ++e) {
        if (e % spec.modulus != spec.residue) continue;
        for (const auto& slot : slots) {
            int d = e - slot.iw;
            if (d < 0 || d > slot.bound) continue;
            for (auto& m : weighted_monomial_basis(w, d)) out.push_back(MonomialForm{std::move(m), slot.s});
        }
    }
    return out;
}

}  // namespace

std::vector<MonomialForm> strand_basis(const StrandSpec& spec, int i, int coeff_bound)
{
    return enumerate_forms(spec, i, [&](IndexSet) { return coeff_bound; });
}

// -------------------------------------------------------- TwistedOperator

template <ExactField K>
TwistedOperator<K>::TwistedOperator(Polynomial<K> potential, StrandSpec spec, int step, Differential kind)
    : f_(std::move(potential)), spec_(std::move(spec)), step_(step), kind_(kind)
{
    spec_.validate();
    if (f_.nvars() != spec_.nvars) throw InputError("potential and strand over different variables");
    if (step_ < 0) throw InputError("truncation step must be non-negative");
    for (std::size_t k = 0; k < spec_.nvars; ++k) {
        std::vector<std::pair<Monomial, K>> g;
        auto partial = f_.partial_derivative(k);
        for (const auto& [m, c] : partial.terms()) g.emplace_back(m, c);
        grad_.push_back(std::move(g));
    }
}

template <ExactField K>
int TwistedOperator<K>::level(const MonomialForm& f) const
{
    return spec_.total_degree(f) - index_count(f.dx) * step_;
}

template <ExactField K>
std::vector<MonomialForm> TwistedOperator<K>::staircase_basis(int i, int lvl) const
{
    return enumerate_forms(spec_, i, [&](IndexSet s) { return lvl + i * step_ - spec_.index_weight(s); });
}

template <ExactField K>
std::vector<std::pair<MonomialForm, K>> TwistedOperator<K>::apply(const MonomialForm& f) const
{
    std::vector<std::pair<MonomialForm, K>> out;
    for (std::size_t k = 0; k < spec_.nvars; ++k) {
        IndexSet bit = IndexSet{1} << k;
        if (f.dx & bit) continue;
        bool negative = wedge_sign(bit, f.dx) < 0;
        IndexSet dx = f.dx | bit;
        if (kind_ != Differential::Koszul && f.mono[k] > 0) {
            K v(static_cast<long>(f.mono[k]));
            out.emplace_back(MonomialForm{*f.mono.lowered(k), dx}, negative ? K(-v) : v);
        }
        if (kind_ != Differential::DeRham) {
            for (const auto& [g, c] : grad_[k]) out.emplace_back(MonomialForm{f.mono * g, dx}, negative ? K(-c) : c);
        }
    }
    return out;
}

template <ExactField K>
DifferentialForm<K> TwistedOperator<K>::apply(const DifferentialForm<K>& w) const
{
    DifferentialForm<K> r(w.nvars(), w.degree() + 1);
    for (const auto& [f, c] : w.terms()) {
        for (const auto& [g, v] : apply(f)) r.add_term(g, K(v * c));
    }
    return r;
}

template <ExactField K>
std::optional<typename TwistedOperator<K>::PackedGradient> TwistedOperator<K>::pack_gradient(const FormIndex& target) const
{
    if (!target.packed()) return std::nullopt;
    PackedGradient p;
    for (const auto& g : grad_) {
        std::vector<std::pair<std::uint64_t, K>> terms;
        for (const auto& [m, c] : g) {
            auto key = target.pack(m);
            if (!key) return std::nullopt;
            for (int e : m.exponents()) p.max_exponent = std::max(p.max_exponent, e);
            terms.emplace_back(*key, c);
        }
        p.terms.push_back(std::move(terms));
    }
    return p;
}

template <ExactField K>
typename SparseMatrix<K>::Row TwistedOperator<K>::image_row(const MonomialForm& f, const FormIndex& target,
                                                            bool drop_missing, const PackedGradient* packed) const
{
    typename SparseMatrix<K>::Row row;
    auto place = [&](std::optional<std::uint32_t> col, K v) {
        if (!col) {
            if (drop_missing) return;
            throw Error("differential image escapes the target basis");
        }
        row.emplace_back(*col, std::move(v));
    };
    int max_f = 0;
    for (int e : f.mono.exponents()) max_f = std::max(max_f, e);
    std::optional<std::uint64_t> pf;
    // Packed sums stay carry-free when every field sum fits in bits().
    if (packed && max_f + packed->max_exponent < (1 << target.bits())) pf = target.pack(f.mono);
    if (pf) {
        for (std::size_t k = 0; k < spec_.nvars; ++k) {
            IndexSet bit = IndexSet{1} << k;
            if (f.dx & bit) continue;
            bool negative = wedge_sign(bit, f.dx) < 0;
            IndexSet dx = f.dx | bit;
            if (kind_ != Differential::Koszul && f.mono[k] > 0) {
                K v(static_cast<long>(f.mono[k]));
                place(target.find_packed(*pf - (std::uint64_t{1} << (target.bits() * static_cast<int>(k))), dx),
                      negative ? K(-v) : v);
            }
            if (kind_ != Differential::DeRham) {
                for (const auto& [g, c] : packed->terms[k]) place(target.find_packed(*pf + g, dx), negative ? K(-c) : c);
            }
        }
    } else {
        for (auto& [g, v] : apply(f)) place(target.find(g), std::move(v));
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge coincident columns.
    typename SparseMatrix<K>::Row merged;
    for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second = merged.back().second + e.second;
        else merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const auto& e) { return dwc::is_zero(e.second); });
    return merged;
}

template <ExactField K>
SparseMatrix<K> TwistedOperator<K>::matrix(std::span<const MonomialForm> source, const FormIndex& target,
                                           std::size_t target_size, bool drop_missing, Exec exec) const
{
    std::vector<typename SparseMatrix<K>::Row> rows(source.size());
    const auto n = static_cast<std::ptrdiff_t>(source.size());
    auto packed = pack_gradient(target);
    const PackedGradient* pg = packed ? &*packed : nullptr;
    if (exec == Exec::Parallel) {
        // Exceptions may not leave an OpenMP region; record and rethrow.
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t r = 0; r < n; ++r) {
            try {
                rows[static_cast<std::size_t>(r)] = image_row(source[static_cast<std::size_t>(r)], target, drop_missing, pg);
            } catch (...) {
#pragma omp critical(dwc_assembly_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t r = 0; r < n; ++r) {
            rows[static_cast<std::size_t>(r)] = image_row(source[static_cast<std::size_t>(r)], target, drop_missing, pg);
        }
    }
    return SparseMatrix<K>::from_rows(target_size, std::move(rows));
}

// --------------------------------------------------------------- complexes

template <ExactField K>
int potential_step(const Polynomial<K>& f, const StrandSpec& spec)
{
    spec.validate();
    if (f.is_zero()) return spec.modulus;
    if (spec.modulus == 1) return std::max(0, f.max_weighted_degree(spec.weights));
    auto deg = f.weighted_homogeneous_degree(spec.weights);
    if (!deg) throw InputError("potential is not (weighted) homogeneous; strands need a homogeneous potential");
    if (*deg != spec.modulus) {
        throw InputError("potential degree " + std::to_string(*deg) + " does not match strand modulus " +
                         std::to_string(spec.modulus));
    }
    return *deg;
}

template <ExactField K>
TruncatedComplex<K> assemble_complex(const TwistedOperator<K>& op, int level, Exec exec)
{
    TruncatedComplex<K> c;
    c.spec = op.spec();
    c.step = op.step();
    c.level = level;
    c.kind = op.kind();
    const auto n = static_cast<int>(op.nvars());
    for (int i = 0; i <= n; ++i) c.bases.push_back(op.staircase_basis(i, level));
    for (int i = 0; i < n; ++i) {
        auto target = index_of(c.bases[static_cast<std::size_t>(i + 1)]);
        c.maps.push_back(op.matrix(c.bases[static_cast<std::size_t>(i)], target,
                                   c.bases[static_cast<std::size_t>(i + 1)].size(), false, exec));
    }
    return c;
}

template <ExactField K>
TruncatedComplex<K> assemble_truncated_complex(const Polynomial<K>& f, const StrandSpec& spec, int level,
                                               Differential kind, Exec exec)
{
    TwistedOperator<K> op(f, spec, potential_step(f, spec), kind);
    return assemble_complex(op, level, exec);
}

#define DWC_INSTANTIATE_FORMS(K)                                                                                 \
    template class DifferentialForm<K>;                                                                          \
    template DifferentialForm<K> wedge(const DifferentialForm<K>&, const DifferentialForm<K>&);                  \
    template DifferentialForm<K> exterior_derivative(const DifferentialForm<K>&);                                \
    template DifferentialForm<K> differential_of(const Polynomial<K>&);                                          \
    template DifferentialForm<K> twisted_differential(const Polynomial<K>&, const DifferentialForm<K>&);         \
    template class TwistedOperator<K>;                                                                           \
    template int potential_step(const Polynomial<K>&, const StrandSpec&);                                        \
    template TruncatedComplex<K> assemble_complex(const TwistedOperator<K>&, int, Exec);                         \
    template TruncatedComplex<K> assemble_truncated_complex(const Polynomial<K>&, const StrandSpec&, int,        \
                                                            Differential, Exec);

DWC_INSTANTIATE_FORMS(Rational)
DWC_INSTANTIATE_FORMS(RationalFunction)

}  // namespace dwc
