#include "dwc/griffiths.hpp"

#include <exception>
#include <numeric>
#include <unordered_map>

#include <omp.h>

namespace dwc {

std::size_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

std::size_t JacobianProfile::h(int d) const
{
    if (d < 0 || d >= static_cast<int>(hilbert.size())) return 0;
    return hilbert[static_cast<std::size_t>(d)];
}

namespace {

template <ExactField K>
std::size_t macaulay_rank(const std::vector<Polynomial<K>>& partials, std::size_t nvars, int m, int d)
{
    int src_deg = d - (m - 1);
    if (src_deg < 0) return 0;
    auto target = monomial_basis(nvars, d);
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> idx;
    for (std::size_t i = 0; i < target.size(); ++i) idx.emplace(target[i], static_cast<std::uint32_t>(i));
    std::vector<typename SparseMatrix<K>::Row> rows;
    for (const auto& mu : monomial_basis(nvars, src_deg)) {
        for (const auto& p : partials) {
            typename SparseMatrix<K>::Row row;
            for (const auto& [mono, c] : p.terms()) row.emplace_back(idx.at(mono * mu), c);
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    return exact_rank(SparseMatrix<K>::from_rows(target.size(), std::move(rows)), Exec::Serial);
}

}  // namespace

template <ExactField K>
JacobianProfile jacobian_hilbert(const Polynomial<K>& f, Exec exec)
{
    if (f.is_zero()) throw InputError("Jacobian ring of the zero polynomial");
    auto deg = f.homogeneous_degree();
    if (!deg) throw InputError("Jacobian ring needs a homogeneous polynomial");
    if (*deg < 2) throw InputError("Jacobian ring needs degree >= 2");

    JacobianProfile p;
    p.m = *deg;
    p.nvars = f.nvars();
    p.socle_degree = static_cast<int>(p.nvars) * (p.m - 2);
    const int last = p.socle_degree + 2;
    std::vector<Polynomial<K>> partials;
    for (std::size_t k = 0; k < f.nvars(); ++k) partials.push_back(f.partial_derivative(k));

    std::vector<std::size_t> ranks(static_cast<std::size_t>(last) + 1, 0);
    const int n = static_cast<int>(p.nvars) - 1;
    if (exec == Exec::Parallel) {
        std::exception_ptr failure;
        // Larger degrees cost more; hand them out first.
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i <= last; ++i) {
            int d = last - i;
            try {
                ranks[static_cast<std::size_t>(d)] = macaulay_rank(partials, p.nvars, p.m, d);
            } catch (...) {
#pragma omp critical(dwc_macaulay_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (int d = 0; d <= last; ++d) ranks[static_cast<std::size_t>(d)] = macaulay_rank(partials, p.nvars, p.m, d);
    }
    for (int d = 0; d <= last; ++d) p.hilbert.push_back(binomial(d + n, n) - ranks[static_cast<std::size_t>(d)]);

    p.smooth = p.hilbert[static_cast<std::size_t>(last - 1)] == 0 && p.hilbert[static_cast<std::size_t>(last)] == 0;
    if (p.smooth) p.hilbert.resize(static_cast<std::size_t>(p.socle_degree) + 1);
    p.milnor = std::accumulate(p.hilbert.begin(), p.hilbert.end(), std::size_t{0});
    return p;
}

template <ExactField K>
std::size_t milnor_number(const Polynomial<K>& f)
{
    auto p = jacobian_hilbert(f);
    if (!p.smooth) throw NotSmooth("Jacobian ring is infinite-dimensional; use the truncation path");
    return p.milnor;
}

std::vector<HodgeNumber> primitive_hodge_numbers(const JacobianProfile& profile)
{
    if (!profile.smooth) throw NotSmooth("primitive Hodge numbers need a smooth hypersurface");
    const int n = static_cast<int>(profile.nvars) - 1;
    std::vector<HodgeNumber> out;
    for (int q = 1; q <= n; ++q) out.push_back({q, profile.h(q * profile.m - (n + 1))});
    return out;
}

template <ExactField K>
std::vector<HodgeNumber> primitive_hodge_numbers(const Polynomial<K>& f)
{
    return primitive_hodge_numbers(jacobian_hilbert(f));
}

std::size_t jacobian_strand_dim(const JacobianProfile& profile, int modulus, int residue)
{
    std::size_t s = 0;
    for (int d = 0; d < static_cast<int>(profile.hilbert.size()); ++d) {
        if ((d + static_cast<int>(profile.nvars)) % modulus == residue) s += profile.h(d);
    }
    return s;
}

template <ExactField K>
ComplexDims dF_only_cohomology(const Polynomial<K>& f, const StrandSpec& spec, int level, Exec exec)
{
    return cohomology_dims(assemble_truncated_complex(f, spec, level, Differential::Koszul, exec), exec);
}

#define DWC_INSTANTIATE_GRIFFITHS(K)                                                        \
    template JacobianProfile jacobian_hilbert(const Polynomial<K>&, Exec);                  \
    template std::size_t milnor_number(const Polynomial<K>&);                               \
    template std::vector<HodgeNumber> primitive_hodge_numbers(const Polynomial<K>&);        \
    template ComplexDims dF_only_cohomology(const Polynomial<K>&, const StrandSpec&, int, Exec);

DWC_INSTANTIATE_GRIFFITHS(Rational)
DWC_INSTANTIATE_GRIFFITHS(RationalFunction)

}  // namespace dwc
