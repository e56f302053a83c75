#include "dwc/gaussmanin.hpp"

#include <exception>
#include <random>

namespace dwc {

int Family::degree() const
{
    if (base.is_zero()) throw InputError("family base polynomial is zero");
    auto m = base.homogeneous_degree();
    if (!m || *m < 2) throw InputError("family base polynomial must be homogeneous of degree >= 2");
    if (perturbation.nvars() != base.nvars()) throw InputError("family perturbation uses different variables");
    if (!perturbation.is_zero() && perturbation.homogeneous_degree() != m) {
        throw InputError("family perturbation must be homogeneous of the base degree");
    }
    return *m;
}

Polynomial<RationalFunction> Family::generic() const
{
    return lift(base) + lift(perturbation).scaled(RationalFunction::t());
}

Polynomial<Rational> Family::at(const Rational& t0) const { return base + perturbation.scaled(t0); }

template <ExactField K>
DenseMatrix<K> multiply(const DenseMatrix<K>& a, const DenseMatrix<K>& b)
{
    std::size_t inner = b.size();
    std::size_t cols = inner ? b.front().size() : 0;
    DenseMatrix<K> out(a.size(), std::vector<K>(cols, K(0L)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) throw Error("dense matrix product dimension mismatch");
        for (std::size_t k = 0; k < inner; ++k) {
            if (is_zero(a[i][k])) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    }
    return out;
}

template <ExactField K>
DenseMatrix<K> inverse(const DenseMatrix<K>& a)
{
    const std::size_t n = a.size();
    DenseMatrix<K> w = a;
    DenseMatrix<K> inv(n, std::vector<K>(n, K(0L)));
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i].size() != n) throw Error("inverse of a non-square matrix");
        inv[i][i] = K(1L);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(w[p][c])) ++p;
        if (p == n) throw Error("matrix is singular");
        std::swap(w[p], w[c]);
        std::swap(inv[p], inv[c]);
        K s = K(1L) / w[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            w[c][j] = w[c][j] * s;
            inv[c][j] = inv[c][j] * s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || is_zero(w[r][c])) continue;
            K f = w[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                w[r][j] = w[r][j] - f * w[c][j];
                inv[r][j] = inv[r][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

template <ExactField K>
std::string to_string(const DenseMatrix<K>& a)
{
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < a[i].size(); ++j) s += (j ? ", " : "") + dwc::to_string(a[i][j]);
        s += "]";
    }
    return s + "]";
}

namespace {

Polynomial<Rational> as_field(const Polynomial<Rational>& p, const Rational*) { return p; }
Polynomial<RationalFunction> as_field(const Polynomial<Rational>& p, const RationalFunction*) { return lift(p); }

template <ExactField K>
Polynomial<K> to_field(const Polynomial<Rational>& p)
{
    return as_field(p, static_cast<const K*>(nullptr));
}

Polynomial<Rational> monomial_poly(const Monomial& mono)
{
    return Polynomial<Rational>::term(mono, Rational(1));
}

}  // namespace

template <ExactField K>
ConnectionMatrix<K> connection_matrix(const Polynomial<K>& f, const Polynomial<K>& g,
                                      const std::optional<std::vector<Polynomial<Rational>>>& basis,
                                      int max_escalations, Exec exec)
{
    if (f.is_zero()) throw InputError("connection matrix of the zero polynomial");
    auto deg = f.homogeneous_degree();
    if (!deg || *deg < 2) throw InputError("connection matrix needs a homogeneous polynomial of degree >= 2");
    if (g.nvars() != f.nvars()) throw InputError("perturbation uses different variables");
    const int m = *deg;
    const std::size_t nv = f.nvars();
    const int top_deg = static_cast<int>(nv);

    auto profile = jacobian_hilbert(f, exec);
    if (!profile.smooth) throw NotSmooth("hypersurface is not smooth at generic parameter");
    const std::size_t q = jacobian_strand_dim(profile, m, 0);

    StrandSpec spec{nv, m, 0, {}};
    TwistedOperator<K> op(f, spec, m);
    const IndexSet all = nv == 32 ? ~IndexSet{0} : ((IndexSet{1} << nv) - 1);
    auto top_form = [&](const Monomial& mono) { return MonomialForm{mono, all}; };
    const int g_deg = g.is_zero() ? 0 : g.total_degree();

    int level = -top_deg;  // socle level
    if (basis) {
        if (basis->size() != q) {
            throw InputError("basis has " + std::to_string(basis->size()) + " elements; cohomology has dimension " +
                             std::to_string(q));
        }
        for (const auto& b : *basis) {
            if (b.nvars() != nv) throw InputError("basis element uses different variables");
            if (b.is_zero()) throw InputError("basis element is zero");
            for (const auto& [mono, c] : b.terms()) {
                MonomialForm w = top_form(mono);
                if (!spec.contains(w)) throw InputError("basis element " + b.to_string() + " is not in strand 0");
                level = std::max(level, op.level(w) + g_deg);
            }
        }
    }

    for (int attempt = 0; attempt <= max_escalations; ++attempt, level += m) {
        auto top = op.staircase_basis(top_deg, level);
        std::reverse(top.begin(), top.end());  // high degree first, so pivots land there
        auto src = op.staircase_basis(top_deg - 1, level);
        auto index = index_of(top);
        auto dmat = op.matrix(src, index, top.size(), false, exec);
        RowEchelon<K> ech(top.size());
        for (const auto& row : dmat.row_data()) ech.insert(row);
        if (top.size() - ech.rank() != q) continue;

        std::vector<std::uint32_t> free_cols;
        std::vector<int> free_pos(top.size(), -1);
        for (std::uint32_t c = 0; c < top.size(); ++c) {
            if (!ech.is_pivot(c)) free_cols.push_back(c);
        }
        std::vector<Polynomial<Rational>> chosen;
        if (basis) {
            chosen = *basis;
        } else {
            for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) chosen.push_back(monomial_poly(top[*it].mono));
        }
        for (std::size_t i = 0; i < free_cols.size(); ++i) free_pos[free_cols[i]] = static_cast<int>(i);

        // Coordinates of h·dx in the free columns after reduction; nullopt when
        // h·dx leaves the window.
        auto coords = [&](const Polynomial<K>& h) -> std::optional<std::vector<K>> {
            std::vector<std::pair<std::uint32_t, K>> row;
            for (const auto& [mono, c] : h.terms()) {
                auto col = index.find(top_form(mono));
                if (!col) return std::nullopt;
                row.emplace_back(*col, c);
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<K> out(q, K(0L));
            for (const auto& [c, v] : ech.reduce(row)) out[static_cast<std::size_t>(free_pos[c])] = v;
            return out;
        };

        DenseMatrix<K> b_mat(q), v_mat(q);
        bool fits = true;
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
        for (std::size_t b = 0; b < q; ++b) {
            try {
                auto w = to_field<K>(chosen[b]);
                auto cb = coords(w);
                auto cv = coords(w * g);
                if (!cb || !cv) {
#pragma omp atomic write
                    fits = false;
                    continue;
                }
                b_mat[b] = std::move(*cb);
                v_mat[b] = std::move(*cv);
            } catch (...) {
#pragma omp critical(dwc_gm_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        if (!fits) continue;

        DenseMatrix<K> b_inv;
        try {
            b_inv = inverse(b_mat);
        } catch (const Error&) {
            throw InputError("basis classes are linearly dependent in cohomology");
        }
        ConnectionMatrix<K> out;
        out.basis = std::move(chosen);
        out.entries = q ? multiply(v_mat, b_inv) : DenseMatrix<K>{};
        out.window_level = level;
        return out;
    }
    throw Unstabilized("Gauss-Manin reduction window exhausted at level " + std::to_string(level - m));
}

ConnectionMatrix<RationalFunction> family_connection_matrix(const Family& fam,
                                                            const std::optional<std::vector<Polynomial<Rational>>>& basis,
                                                            Exec exec)
{
    fam.degree();
    return connection_matrix(fam.generic(), lift(fam.perturbation), basis, 4, exec);
}

UniPoly discriminant_polynomial(const ConnectionMatrix<RationalFunction>& cm)
{
    UniPoly acc(1L);
    for (const auto& row : cm.entries) {
        for (const auto& e : row) {
            const UniPoly& d = e.denominator();
            UniPoly g = gcd(acc, d);
            acc = UniPoly::divmod(acc * d, g).first;
        }
    }
    return acc.monic();
}

ConnectionMatrix<Rational> specialize(const ConnectionMatrix<RationalFunction>& cm, const Rational& t0)
{
    ConnectionMatrix<Rational> out;
    out.basis = cm.basis;
    out.window_level = cm.window_level;
    for (const auto& row : cm.entries) {
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(e(t0));
        out.entries.push_back(std::move(r));
    }
    return out;
}

namespace {

template <ExactField K>
bool all_zero(const DenseMatrix<K>& a)
{
    for (const auto& row : a) {
        for (const auto& e : row) {
            if (!is_zero(e)) return false;
        }
    }
    return true;
}

std::vector<Polynomial<Rational>> transform_basis(const DenseMatrix<Rational>& p, const std::vector<Polynomial<Rational>>& b)
{
    std::vector<Polynomial<Rational>> out;
    for (const auto& row : p) {
        Polynomial<Rational> acc(b.front().nvars());
        for (std::size_t j = 0; j < row.size(); ++j) acc += b[j].scaled(row[j]);
        out.push_back(std::move(acc));
    }
    return out;
}

DenseMatrix<RationalFunction> lift(const DenseMatrix<Rational>& a)
{
    DenseMatrix<RationalFunction> out;
    for (const auto& row : a) {
        std::vector<RationalFunction> r;
        for (const auto& e : row) r.emplace_back(e);
        out.push_back(std::move(r));
    }
    return out;
}

DenseMatrix<Rational> random_invertible(std::size_t n, std::mt19937_64& rng, bool diagonal)
{
    std::uniform_int_distribution<long> dist(-5, 5);
    for (;;) {
        DenseMatrix<Rational> p(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (diagonal && i != j) continue;
                p[i][j] = Rational{mpz_class(dist(rng)), mpz_class(static_cast<unsigned long>(1 + rng() % 3))};
                p[i][j].canonicalize();
            }
        }
        if (diagonal) {
            bool distinct = true;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) distinct = distinct && p[i][i] != p[j][j];
            }
            if (!distinct) continue;
        }
        try {
            inverse(p);
            return p;
        } catch (const Error&) {
        }
    }
}

}  // namespace

Verdict connection_properties_check(const Family& fam, const std::vector<Rational>& samples,
                                    const std::optional<std::vector<Polynomial<Rational>>>& basis, std::uint64_t seed,
                                    Exec exec)
{
    Verdict v;
    v.name = "gauss_manin";
    auto symbolic = family_connection_matrix(fam, basis, exec);

    for (const auto& t0 : samples) {
        std::string name = "specialize at t=" + t0.get_str() + " = compute at t=" + t0.get_str();
        ConnectionMatrix<Rational> spec_m;
        try {
            spec_m = specialize(symbolic, t0);
        } catch (const DiscriminantError&) {
            v.checks.push_back({name, "discriminant sample", "regular sample", false});
            continue;
        }
        try {
            auto direct = connection_matrix(fam.at(t0), fam.perturbation, symbolic.basis, 4, exec);
            v.checks.push_back(make_check(name, to_string(spec_m.entries), to_string(direct.entries)));
        } catch (const NotSmooth&) {
            v.checks.push_back({name, "singular fibre", "smooth fibre", false});
        }
    }

    Family constant{fam.base, Polynomial<Rational>(fam.nvars())};
    auto zero = family_connection_matrix(constant, std::nullopt, exec);
    v.checks.push_back(make_check("constant family gives zero", all_zero(zero.entries) ? "zero" : to_string(zero.entries), "zero"));

    std::mt19937_64 rng(seed);
    for (bool diagonal : {true, false}) {
        auto p = random_invertible(symbolic.size(), rng, diagonal);
        auto changed = family_connection_matrix(fam, transform_basis(p, symbolic.basis), exec);
        auto pl = lift(p);
        auto expect = multiply(multiply(pl, symbolic.entries), inverse(pl));
        v.checks.push_back(make_check(diagonal ? "diagonal rescale conjugates" : "random basis change conjugates",
                                      to_string(changed.entries), to_string(expect)));
    }
    return v;
}

#define DWC_INSTANTIATE_GM(K)                                                                                       \
    template ConnectionMatrix<K> connection_matrix(const Polynomial<K>&, const Polynomial<K>&,                      \
                                                   const std::optional<std::vector<Polynomial<Rational>>>&, int, Exec); \
    template DenseMatrix<K> multiply(const DenseMatrix<K>&, const DenseMatrix<K>&);                                  \
    template DenseMatrix<K> inverse(const DenseMatrix<K>&);                                                          \
    template std::string to_string(const DenseMatrix<K>&);

DWC_INSTANTIATE_GM(Rational)
DWC_INSTANTIATE_GM(RationalFunction)

}  // namespace dwc
