#include "dwc/cohomology.hpp"

#include <algorithm>

namespace dwc {

std::size_t ComplexDims::h(int k) const
{
    for (const auto& d : degrees) {
        if (d.degree == k) return d.cohomology;
    }
    return 0;
}

long ComplexDims::euler_spaces() const
{
    long s = 0;
    for (const auto& d : degrees) s += (d.degree % 2 ? -1 : 1) * static_cast<long>(d.space_dim);
    return s;
}

long ComplexDims::euler_cohomology() const
{
    long s = 0;
    for (const auto& d : degrees) s += (d.degree % 2 ? -1 : 1) * static_cast<long>(d.cohomology);
    return s;
}

std::vector<std::size_t> ComplexDims::cohomology_vector() const
{
    std::vector<std::size_t> v;
    for (const auto& d : degrees) v.push_back(d.cohomology);
    return v;
}

namespace {

ComplexDims dims_from_ranks(const std::vector<std::size_t>& spaces, const std::vector<std::size_t>& ranks)
{
    ComplexDims out;
    for (std::size_t k = 0; k < spaces.size(); ++k) {
        std::size_t in = k > 0 ? ranks[k - 1] : 0;
        std::size_t outr = k < ranks.size() ? ranks[k] : 0;
        if (outr + in > spaces[k]) throw NilpotenceViolation("ranks exceed space dimension in degree " + std::to_string(k));
        out.degrees.push_back({static_cast<int>(k), spaces[k], outr, spaces[k] - outr - in});
    }
    return out;
}

}  // namespace

template <ExactField K>
ComplexDims cohomology_dims(const TruncatedComplex<K>& c, Exec exec)
{
    for (std::size_t i = 0; i + 1 < c.maps.size(); ++i) {
        if (!c.maps[i].multiply(c.maps[i + 1]).is_zero_matrix()) {
            throw NilpotenceViolation("d^" + std::to_string(i + 1) + " ∘ d^" + std::to_string(i) + " is nonzero");
        }
    }
    std::vector<std::size_t> spaces;
    for (const auto& b : c.bases) spaces.push_back(b.size());
    std::vector<std::size_t> ranks;
    for (const auto& m : c.maps) ranks.push_back(exact_rank(m, exec));
    return dims_from_ranks(spaces, ranks);
}

StabilizationPolicy StabilizationPolicy::defaults(std::size_t nvars, int m)
{
    StabilizationPolicy p;
    p.step = std::max(1, m);
    p.initial_bound = std::max(0, 2 * m - static_cast<int>(nvars));
    p.max_bound = p.initial_bound + 6 * p.step;
    p.lag = p.step;
    return p;
}

void StabilizationPolicy::validate() const
{
    if (initial_bound < 0) throw InputError("initial_bound must be >= 0");
    if (step < 1) throw InputError("step must be >= 1");
    if (max_bound < initial_bound) throw InputError("max_bound must be >= initial_bound");
    if (lag < 0) throw InputError("lag must be >= 0");
}

std::string to_string(ComputationPath p) { return p == ComputationPath::Jacobian ? "jacobian" : "truncation"; }

std::size_t CohomologyReport::dim(int k) const
{
    for (const auto& d : dims) {
        if (d.degree == k) return d.dim;
    }
    return 0;
}

namespace {

/// Memoized ranks for one operator.
template <ExactField K>
class RankTable {
public:
    RankTable(const TwistedOperator<K>& op, Exec exec) : op_(op), exec_(exec) {}

    const std::vector<MonomialForm>& basis(int i, int level)
    {
        auto key = std::make_pair(i, level);
        auto it = bases_.find(key);
        if (it == bases_.end()) it = bases_.emplace(key, op_.staircase_basis(i, level)).first;
        return it->second;
    }

    /// rank of D : C^i_L → C^{i+1}_L
    std::size_t full(int i, int level)
    {
        if (i < 0 || i >= static_cast<int>(op_.nvars())) return 0;
        auto key = std::make_pair(i, level);
        if (auto it = full_.find(key); it != full_.end()) return it->second;
        const auto& src = basis(i, level);
        const auto& tgt = basis(i + 1, level);
        auto m = op_.matrix(src, index_of(tgt), tgt.size(), false, exec_);
        return full_[key] = exact_rank(m, exec_);
    }

    /// rank of π_{>L} ∘ D : C^i_{L'} → C^{i+1}_{L'} / C^{i+1}_L
    std::size_t projected(int i, int level, int outer)
    {
        if (i < 0 || i >= static_cast<int>(op_.nvars())) return 0;
        auto key = std::make_tuple(i, level, outer);
        if (auto it = projected_.find(key); it != projected_.end()) return it->second;
        std::vector<MonomialForm> src;
        for (const auto& f : basis(i, outer)) {
            if (op_.level(f) > level) src.push_back(f);
        }
        std::vector<MonomialForm> tgt;
        for (const auto& f : basis(i + 1, outer)) {
            if (op_.level(f) > level) tgt.push_back(f);
        }
        auto m = op_.matrix(src, index_of(tgt), tgt.size(), true, exec_);
        return projected_[key] = exact_rank(m, exec_);
    }

private:
    const TwistedOperator<K>& op_;
    Exec exec_;
    std::map<std::pair<int, int>, std::vector<MonomialForm>> bases_;
    std::map<std::pair<int, int>, std::size_t> full_;
    std::map<std::tuple<int, int, int>, std::size_t> projected_;
};

template <ExactField K>
std::vector<std::size_t> image_dims(RankTable<K>& table, int nvars, int level, int outer)
{
    std::vector<std::size_t> h;
    for (int k = 0; k <= nvars; ++k) {
        std::size_t space = table.basis(k, level).size();
        std::size_t out = table.full(k, level);
        std::size_t in = table.full(k - 1, outer);
        std::size_t kept = table.projected(k - 1, level, outer);
        h.push_back(space - out - in + kept);
    }
    return h;
}

}  // namespace

template <ExactField K>
std::vector<std::size_t> filtered_cohomology(const TwistedOperator<K>& op, int level, int outer_level, Exec exec)
{
    if (outer_level < level) throw InputError("outer level must be >= level");
    RankTable<K> table(op, exec);
    return image_dims(table, static_cast<int>(op.nvars()), level, outer_level);
}

template <ExactField K>
CohomologyReport stabilized_cohomology(const TwistedOperator<K>& op, const StabilizationPolicy& policy, Exec exec)
{
    policy.validate();
    RankTable<K> table(op, exec);
    const int n = static_cast<int>(op.nvars());
    std::vector<std::pair<int, std::vector<std::size_t>>> history;
    Certificate cert;
    cert.lag = policy.lag;
    for (int level = policy.initial_bound; level <= policy.max_bound; level += policy.step) {
        history.emplace_back(level, image_dims(table, n, level, level + policy.lag));
        if (history.size() >= 3) {
            const auto& a = history[history.size() - 3].second;
            const auto& b = history[history.size() - 2].second;
            const auto& c = history.back().second;
            if (a == b && b == c) {
                cert.agreed = true;
                break;
            }
        }
    }
    for (std::size_t i = history.size() >= 3 ? history.size() - 3 : 0; i < history.size(); ++i) {
        cert.bounds.push_back(history[i].first);
    }

    CohomologyReport rep;
    rep.kind = "twisted";
    rep.nvars = op.nvars();
    rep.m = op.step();
    rep.weights = op.spec().weights;
    rep.modulus = op.spec().modulus;
    if (rep.modulus > 1) rep.strand = op.spec().residue;
    rep.path = ComputationPath::Truncation;
    rep.input = op.potential().to_string();
    const auto& final_dims = history.back().second;
    for (int k = 0; k <= n; ++k) {
        rep.dims.push_back({k, "k" + std::to_string(k), "H^" + std::to_string(k), final_dims[static_cast<std::size_t>(k)]});
    }
    rep.certificate = cert;

    int last = history.back().first;
    std::vector<std::size_t> spaces;
    std::vector<std::size_t> ranks;
    for (int k = 0; k <= n; ++k) spaces.push_back(table.basis(k, last).size());
    for (int k = 0; k < n; ++k) ranks.push_back(table.full(k, last));
    rep.staircase = dims_from_ranks(spaces, ranks);
    return rep;
}

template <ExactField K>
CohomologyReport stabilized_cohomology(const Polynomial<K>& f, const StrandSpec& spec,
                                       std::optional<StabilizationPolicy> policy, Exec exec)
{
    int step = potential_step(f, spec);
    TwistedOperator<K> op(f, spec, step);
    return stabilized_cohomology(op, policy.value_or(StabilizationPolicy::defaults(spec.nvars, step)), exec);
}

#define DWC_INSTANTIATE_COHOMOLOGY(K)                                                                              \
    template ComplexDims cohomology_dims(const TruncatedComplex<K>&, Exec);                                        \
    template CohomologyReport stabilized_cohomology(const TwistedOperator<K>&, const StabilizationPolicy&, Exec); \
    template CohomologyReport stabilized_cohomology(const Polynomial<K>&, const StrandSpec&,                       \
                                                    std::optional<StabilizationPolicy>, Exec);                     \
    template std::vector<std::size_t> filtered_cohomology(const TwistedOperator<K>&, int, int, Exec);

DWC_INSTANTIATE_COHOMOLOGY(Rational)
DWC_INSTANTIATE_COHOMOLOGY(RationalFunction)

}  // namespace dwc
