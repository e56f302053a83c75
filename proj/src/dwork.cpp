#include "dwc/dwork.hpp"

#include <algorithm>
#include <functional>

namespace dwc {

bool Verdict::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check make_check(std::string name, std::size_t lhs, std::size_t rhs)
{
    return {std::move(name), std::to_string(lhs), std::to_string(rhs), lhs == rhs};
}

Check make_check(std::string name, const std::string& lhs, const std::string& rhs)
{
    return {std::move(name), lhs, rhs, lhs == rhs};
}

void require_stable(const CohomologyReport& rep)
{
    if (rep.stabilized()) return;
    std::string bounds;
    for (int b : rep.certificate->bounds) bounds += (bounds.empty() ? "" : ", ") + std::to_string(b);
    throw Unstabilized("truncation did not stabilize; last levels tried: " + bounds);
}

namespace {

using Labeler = std::function<void(LabeledDim&)>;

void relabel(CohomologyReport& rep, const Labeler& fn)
{
    for (auto& d : rep.dims) fn(d);
}

Labeler prim_labels(std::size_t nvars)
{
    const int n = static_cast<int>(nvars) - 1;
    return [n](LabeledDim& d) {
        int k = d.degree;
        d.key = "k" + std::to_string(k) + "_prim";
        d.label = "H^" + std::to_string(k) + "_Y(P^" + std::to_string(n) + ")^prim = H~^" + std::to_string(k - 1) +
                        "(P^" + std::to_string(n) + " - Y) = (H^" + std::to_string(k - n) + " p_+ RG_Y O)^prim";
    };
}

Labeler affine_labels()
{
    return [](LabeledDim& d) {
        d.key = "k" + std::to_string(d.degree);
        d.label = "H~^" + std::to_string(d.degree - 1) + "(U)";
    };
}

Labeler strand_labels(int modulus, int residue)
{
    return [modulus, residue](LabeledDim& d) {
        d.key = "k" + std::to_string(d.degree) + "_j" + std::to_string(residue);
        d.label = "H^" + std::to_string(d.degree) + "(Omega^(" + std::to_string(residue) + " mod " +
                        std::to_string(modulus) + "))";
    };
}

/// Report for smooth F: everything sits in top degree.
CohomologyReport jacobian_report(const Polynomial<Rational>& f, const JacobianProfile& p, std::size_t top,
                                 int modulus, std::optional<int> strand)
{
    CohomologyReport rep;
    rep.input = f.to_string();
    rep.m = p.m;
    rep.nvars = p.nvars;
    rep.modulus = modulus;
    rep.strand = strand;
    rep.path = ComputationPath::Jacobian;
    for (int k = 0; k <= static_cast<int>(p.nvars); ++k) {
        rep.dims.push_back({k, "", "", k == static_cast<int>(p.nvars) ? top : 0});
    }
    return rep;
}

int homogeneous_degree_or_throw(const Polynomial<Rational>& f, const char* what)
{
    if (f.is_zero()) throw InputError(std::string(what) + " needs a nonzero polynomial");
    auto m = f.homogeneous_degree();
    if (!m || *m < 1) throw InputError(std::string(what) + " needs a homogeneous polynomial of degree >= 1");
    return *m;
}

std::optional<JacobianProfile> smooth_profile(const Polynomial<Rational>& f, int m, Exec exec)
{
    if (m < 2) return std::nullopt;
    auto p = jacobian_hilbert(f, exec);
    if (!p.smooth) return std::nullopt;
    return p;
}

CohomologyReport truncated(const Polynomial<Rational>& f, const StrandSpec& spec, const PipelineOptions& opt)
{
    return stabilized_cohomology(f, spec, opt.policy, opt.exec);
}

/// Sum of strand reports of one potential.
CohomologyReport combine(const std::vector<CohomologyReport>& parts)
{
    CohomologyReport rep = parts.front();
    rep.modulus = 1;
    rep.strand.reset();
    for (std::size_t s = 1; s < parts.size(); ++s) {
        const auto& p = parts[s];
        for (std::size_t k = 0; k < rep.dims.size(); ++k) rep.dims[k].dim += p.dims[k].dim;
        if (rep.staircase && p.staircase) {
            for (std::size_t k = 0; k < rep.staircase->degrees.size(); ++k) {
                auto& a = rep.staircase->degrees[k];
                const auto& b = p.staircase->degrees[k];
                a.space_dim += b.space_dim;
                a.rank_out += b.rank_out;
                a.cohomology += b.cohomology;
            }
        }
        if (rep.certificate && p.certificate) {
            rep.certificate->agreed = rep.certificate->agreed && p.certificate->agreed;
            if (p.certificate->bounds.back() > rep.certificate->bounds.back()) {
                rep.certificate->bounds = p.certificate->bounds;
            }
        }
    }
    return rep;
}

CohomologyReport primitive_impl(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "primitive Dwork cohomology");
    CohomologyReport rep;
    auto profile = opt.force_truncation ? std::nullopt : smooth_profile(f, m, opt.exec);
    if (profile) {
        rep = jacobian_report(f, *profile, jacobian_strand_dim(*profile, m, 0), m, 0);
    } else {
        rep = truncated(f, StrandSpec{f.nvars(), m, 0, {}}, opt);
    }
    rep.kind = "dwork";
    relabel(rep, prim_labels(f.nvars()));
    return rep;
}

CohomologyReport affine_direct(const Polynomial<Rational>& g, const std::vector<int>& weights,
                               const PipelineOptions& opt)
{
    auto rep = truncated(g, StrandSpec{g.nvars(), 1, 0, weights}, opt);
    rep.kind = "affine";
    relabel(rep, affine_labels());
    return rep;
}

void add_stability(Verdict& v, const CohomologyReport& rep, const std::string& what)
{
    if (rep.certificate) {
        v.checks.push_back(make_check("stabilized: " + what, rep.certificate->agreed ? "agreed" : "not agreed", "agreed"));
    }
}

Polynomial<Rational> suspended(const Polynomial<Rational>& f, int m)
{
    auto ft = f.extended(1);
    ft.add_term(Monomial::variable(f.nvars() + 1, f.nvars(), m), Rational(1));
    return ft;
}

}  // namespace

CohomologyReport primitive_dwork_cohomology(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    return primitive_impl(f, opt);
}

CohomologyReport affine_twisted_cohomology(const Polynomial<Rational>& g, const std::vector<int>& weights,
                                           const PipelineOptions& opt)
{
    if (g.total_degree() < 1) throw InputError("affine twisted cohomology needs a nonconstant polynomial");
    StrandSpec probe{g.nvars(), 1, 0, weights};
    probe.validate();
    std::optional<int> d = weights.empty() ? g.homogeneous_degree() : g.weighted_homogeneous_degree(weights);

    CohomologyReport rep;
    if (weights.empty() && d && !opt.force_truncation) {
        if (auto profile = smooth_profile(g, *d, opt.exec)) {
            rep = jacobian_report(g, *profile, profile->milnor, 1, std::nullopt);
            rep.kind = "affine";
            relabel(rep, affine_labels());
            return rep;
        }
    }
    if (!d) return affine_direct(g, weights, opt);

    std::vector<CohomologyReport> parts;
    for (int j = 0; j < *d; ++j) parts.push_back(truncated(g, StrandSpec{g.nvars(), *d, j, weights}, opt));
    rep = combine(parts);
    rep.kind = "affine";
    rep.weights = weights;
    relabel(rep, affine_labels());
    return rep;
}

std::vector<CohomologyReport> strand_decomposition(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "strand decomposition");
    auto profile = opt.force_truncation ? std::nullopt : smooth_profile(f, m, opt.exec);
    std::vector<CohomologyReport> out;
    for (int j = 0; j < m; ++j) {
        CohomologyReport rep = profile ? jacobian_report(f, *profile, jacobian_strand_dim(*profile, m, j), m, j)
                                       : truncated(f, StrandSpec{f.nvars(), m, j, {}}, opt);
        rep.kind = "strand";
        relabel(rep, strand_labels(m, j));
        out.push_back(std::move(rep));
    }
    return out;
}

Verdict strand_sum_check(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "strand sum check");
    Verdict v;
    v.name = "strand_sum";
    PipelineOptions forced = opt;
    forced.force_truncation = true;
    auto strands = strand_decomposition(f, forced);

    CohomologyReport full;
    if (auto profile = smooth_profile(f, m, opt.exec)) {
        full = jacobian_report(f, *profile, profile->milnor, 1, std::nullopt);
        full.kind = "affine";
        relabel(full, affine_labels());
    } else {
        full = affine_direct(f, {}, opt);
    }
    for (const auto& s : strands) add_stability(v, s, "strand " + std::to_string(*s.strand));
    add_stability(v, full, "full complex");
    for (int k = 0; k <= static_cast<int>(f.nvars()); ++k) {
        std::size_t sum = 0;
        for (const auto& s : strands) sum += s.dim(k);
        v.checks.push_back(make_check("k" + std::to_string(k) + ": sum over strands = full", sum, full.dim(k)));
    }
    v.reports = std::move(strands);
    v.reports.push_back(std::move(full));
    return v;
}

Verdict thom_sebastiani_check(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "Thom-Sebastiani check");
    if (m < 2) throw InputError("Thom-Sebastiani check needs degree >= 2");
    Verdict v;
    v.name = "thom_sebastiani";
    auto ft = suspended(f, m);
    const int nv = static_cast<int>(f.nvars());

    auto full_f = affine_twisted_cohomology(f, {}, opt);
    auto full_ft = affine_twisted_cohomology(ft, {}, opt);
    add_stability(v, full_f, "full F");
    add_stability(v, full_ft, "full F~");
    v.checks.push_back(make_check("full k0 of F~ vanishes", full_ft.dim(0), 0));
    for (int a = 0; a <= nv; ++a) {
        v.checks.push_back(make_check("full k" + std::to_string(a + 1) + "(F~) = (m-1) * k" + std::to_string(a) + "(F)",
                                      full_ft.dim(a + 1), static_cast<std::size_t>(m - 1) * full_f.dim(a)));
    }

    auto prim_ft = primitive_impl(ft, opt);
    auto strands = strand_decomposition(f, opt);
    add_stability(v, prim_ft, "prim F~");
    v.checks.push_back(make_check("prim k0 of F~ vanishes", prim_ft.dim(0), 0));
    for (int k = 1; k <= nv + 1; ++k) {
        std::size_t sum = 0;
        for (int j = 1; j < m; ++j) sum += strands[static_cast<std::size_t>(j)].dim(k - 1);
        v.checks.push_back(make_check("prim k" + std::to_string(k) + "(F~) = sum_{0<j<m} strand j k" +
                                          std::to_string(k - 1) + "(F)",
                                      prim_ft.dim(k), sum));
    }
    v.reports = {full_f, full_ft, prim_ft};
    return v;
}

Verdict suspension_check(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "suspension check");
    if (m < 2) throw InputError("suspension check needs degree >= 2");
    Verdict v;
    v.name = "suspension";
    auto full = affine_twisted_cohomology(f, {}, opt);
    auto prim_ft = primitive_impl(suspended(f, m), opt);
    auto prim_f = primitive_impl(f, opt);
    add_stability(v, full, "U");
    add_stability(v, prim_ft, "prim F~");
    add_stability(v, prim_f, "prim F");
    for (int k = 0; k <= static_cast<int>(f.nvars()); ++k) {
        std::size_t rhs = prim_ft.dim(k + 1) + prim_f.dim(k);
        v.checks.push_back(make_check("H~^" + std::to_string(k - 1) + "(U) = prim k" + std::to_string(k + 1) +
                                          "(F~) + prim k" + std::to_string(k) + "(F)",
                                      full.dim(k), rhs));
    }
    v.reports = {full, prim_ft, prim_f};
    return v;
}

CohomologyReport ci_dwork_koszul(const std::vector<Polynomial<Rational>>& f, std::optional<int> bound,
                                 const PipelineOptions& opt)
{
    if (f.empty()) throw InputError("complete-intersection Koszul complex needs at least one equation");
    const std::size_t n = f.front().nvars();
    if (n < 1) throw InputError("complete-intersection Koszul complex needs at least one variable");
    for (const auto& fi : f) {
        if (fi.nvars() != n) throw InputError("all equations must use the same variables");
    }
    const std::size_t r = f.size();
    Polynomial<Rational> phi(n + r);
    for (std::size_t i = 0; i < r; ++i) {
        phi += f[i].extended(r) * Polynomial<Rational>::variable(n + r, n + i);
    }
    StrandSpec spec{n + r, 1, 0, {}};
    int step = potential_step(phi, spec);
    auto policy = opt.policy.value_or(StabilizationPolicy::defaults(n + r, step));
    if (bound) {
        policy.max_bound += *bound - policy.initial_bound;
        policy.initial_bound = *bound;
    }
    auto rep = stabilized_cohomology(phi, spec, policy, opt.exec);
    rep.kind = "koszul";
    const int shift = 2 * static_cast<int>(r);
    relabel(rep, [shift](LabeledDim& d) {
        d.key = "k" + std::to_string(d.degree);
        d.label = "H^" + std::to_string(d.degree - shift) + "_dR(Y)";
    });
    return rep;
}

Verdict fourier_lemma_check(int r, std::optional<int> bound, const PipelineOptions& opt)
{
    if (r < 1) throw InputError("Fourier check needs r >= 1");
    const std::size_t nv = 2 * static_cast<std::size_t>(r);
    Polynomial<Rational> phi(nv);
    for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) {
        phi += Polynomial<Rational>::variable(nv, i) * Polynomial<Rational>::variable(nv, i + static_cast<std::size_t>(r));
    }
    StrandSpec spec{nv, 1, 0, {}};
    auto policy = opt.policy.value_or(StabilizationPolicy::defaults(nv, 2));
    if (bound) {
        policy.max_bound += *bound - policy.initial_bound;
        policy.initial_bound = *bound;
    }
    auto rep = stabilized_cohomology(phi, spec, policy, opt.exec);
    rep.kind = "fourier";
    relabel(rep, [r](LabeledDim& d) {
        d.key = "k" + std::to_string(d.degree);
        d.label = "H^" + std::to_string(d.degree - 2 * r) + "(K[2r])";
    });

    Verdict v;
    v.name = "fourier_r" + std::to_string(r);
    add_stability(v, rep, "Fourier complex");
    std::size_t elsewhere = 0;
    for (const auto& d : rep.dims) {
        if (d.degree != 2 * r) elsewhere += d.dim;
    }
    v.checks.push_back(make_check("dim k" + std::to_string(2 * r), rep.dim(2 * r), 1));
    v.checks.push_back(make_check("dims outside k" + std::to_string(2 * r), elsewhere, 0));
    v.reports.push_back(std::move(rep));
    return v;
}

long middle_betti_number(int n, int m)
{
    // χ(Y) = ((1 − m)^{n+1} − 1)/m + n + 1; the other Betti numbers are 1 in
    // each even degree below 2·dim Y.
    long p = 1;
    for (int i = 0; i <= n; ++i) p *= (1 - m);
    long chi = (p - 1) / m + n + 1;
    int dim_y = n - 1;
    long others = dim_y % 2 == 0 ? n - 1 : n;
    return dim_y % 2 == 0 ? chi - others : others - chi;
}

Verdict compare_smooth_paths(const Polynomial<Rational>& f, const PipelineOptions& opt)
{
    int m = homogeneous_degree_or_throw(f, "path comparison");
    auto profile = smooth_profile(f, m, opt.exec);
    if (!profile) throw NotSmooth("path comparison needs a smooth hypersurface");
    Verdict v;
    v.name = "smooth_paths";
    PipelineOptions jac_opt = opt;
    jac_opt.force_truncation = false;
    PipelineOptions trunc_opt = opt;
    trunc_opt.force_truncation = true;
    auto jac = primitive_impl(f, jac_opt);
    auto trunc = primitive_impl(f, trunc_opt);
    add_stability(v, trunc, "truncation path");
    for (int k = 0; k <= static_cast<int>(f.nvars()); ++k) {
        v.checks.push_back(make_check("k" + std::to_string(k) + "_prim: jacobian = truncation", jac.dim(k), trunc.dim(k)));
    }
    std::size_t hodge = 0;
    for (const auto& h : primitive_hodge_numbers(*profile)) hodge += h.h;
    const int nv = static_cast<int>(f.nvars());
    v.checks.push_back(make_check("sum of primitive Hodge numbers = truncation top", hodge, trunc.dim(nv)));
    const int n = nv - 1;
    if (n >= 1) {
        long betti = middle_betti_number(n, m);
        std::size_t expect = trunc.dim(nv) + ((n - 1) % 2 == 0 ? 1 : 0);
        v.checks.push_back(make_check("middle Betti number = prim + hyperplane class", static_cast<std::size_t>(betti), expect));
    }
    v.reports = {jac, trunc};
    return v;
}

}  // namespace dwc
