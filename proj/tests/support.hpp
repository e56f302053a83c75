// Shared generators, an independent modular-rank oracle, and the property
// checks used by both the unit suites and the acceptance binary.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dwc/cli.hpp"

namespace dwct {

using dwc::Rational;
using P = dwc::Polynomial<Rational>;
using Form = dwc::DifferentialForm<Rational>;

inline P mono(std::vector<int> e, long c = 1)
{
    return P::term(dwc::Monomial(std::move(e)), Rational(c));
}

inline P fermat(std::size_t nvars, int m)
{
    P f(nvars);
    for (std::size_t i = 0; i < nvars; ++i) f.add_term(dwc::Monomial::variable(nvars, i, m), Rational(1));
    return f;
}

inline P parse(const std::string& text, std::size_t nvars)
{
    return dwc::parse_polynomial(text, dwc::default_variable_names(nvars));
}

inline Rational small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    Rational r{mpz_class(num(rng)), mpz_class(den(rng))};
    r.canonicalize();
    return r;
}

inline dwc::Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, int degree)
{
    std::vector<int> e(nvars, 0);
    std::uniform_int_distribution<std::size_t> pick(0, nvars - 1);
    for (int k = 0; k < degree; ++k) ++e[pick(rng)];
    return dwc::Monomial(e);
}

inline P random_poly(std::mt19937_64& rng, std::size_t nvars, int max_degree, int terms)
{
    P f(nvars);
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int k = 0; k < terms; ++k) f.add_term(random_monomial(rng, nvars, deg(rng)), small_rational(rng));
    return f;
}

inline P random_homogeneous(std::mt19937_64& rng, std::size_t nvars, int degree, int terms)
{
    P f(nvars);
    for (int k = 0; k < terms; ++k) f.add_term(random_monomial(rng, nvars, degree), small_rational(rng));
    return f;
}

inline Form random_form(std::mt19937_64& rng, std::size_t nvars, int form_degree, int max_degree, int terms)
{
    Form w(nvars, form_degree);
    std::vector<std::size_t> idx(nvars);
    for (std::size_t i = 0; i < nvars; ++i) idx[i] = i;
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int k = 0; k < terms; ++k) {
        std::shuffle(idx.begin(), idx.end(), rng);
        dwc::IndexSet s = 0;
        for (int j = 0; j < form_degree; ++j) s |= dwc::IndexSet{1} << idx[static_cast<std::size_t>(j)];
        w.add_term({random_monomial(rng, nvars, deg(rng)), s}, small_rational(rng));
    }
    return w;
}

/// Random sparse matrix with small integer and rational entries; some rows
/// are combinations of others so ranks are not always maximal.
inline dwc::SparseMatrix<Rational> random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density)
{
    std::bernoulli_distribution hit(density);
    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols, Rational(0)));
    std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i > 2 && rng() % 4 == 0) {
            auto a = pick(rng) % i, b = pick(rng) % i;
            auto ca = small_rational(rng), cb = small_rational(rng);
            for (std::size_t j = 0; j < cols; ++j) dense[i][j] = ca * dense[a][j] + cb * dense[b][j];
            continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (hit(rng)) dense[i][j] = small_rational(rng);
        }
    }
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (dense[i][j] != 0) t.emplace_back(i, j, dense[i][j]);
        }
    }
    return dwc::SparseMatrix<Rational>::from_triplets(rows, cols, std::move(t));
}

// ----------------------------------------------------------- modular oracle

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p)) {
        if (e & 1) r = mulmod(r, a, p);
    }
    return r;
}

inline bool is_prime64(std::uint64_t n)
{
    if (n < 4) return n >= 2;
    if (n % 2 == 0) return false;
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1 || a % n == 0) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t random_prime62(std::mt19937_64& rng)
{
    for (;;) {
        std::uint64_t c = (rng() >> 2) | (std::uint64_t{1} << 61) | 1;
        if (is_prime64(c)) return c;
    }
}

/// Rank mod p by dense Gaussian elimination; -1 when a denominator vanishes.
inline long modular_rank(const dwc::SparseMatrix<Rational>& m, std::uint64_t p)
{
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto& [c, v] : m.row(i)) {
            mpz_class num = v.get_num() % mpz_class(std::to_string(p));
            if (num < 0) num += mpz_class(std::to_string(p));
            mpz_class den = v.get_den() % mpz_class(std::to_string(p));
            if (den == 0) return -1;
            std::uint64_t n64 = std::stoull(num.get_str()), d64 = std::stoull(den.get_str());
            a[i][c] = mulmod(n64, powmod(d64, p - 2, p), p);
        }
    }
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < a.size(); ++c) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        std::uint64_t inv = powmod(a[row][c], p - 2, p);
        for (std::size_t r = row + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t f = mulmod(a[r][c], inv, p);
            for (std::size_t j = c; j < m.cols(); ++j) {
                a[r][j] = (a[r][j] + p - mulmod(f, a[row][j], p)) % p;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

// ------------------------------------------------------- property checks

struct PropertyResult {
    std::size_t cases = 0;
    std::size_t failures = 0;
    bool ok() const { return cases > 0 && failures == 0; }
};

/// D(D(ω)) = 0 for random potentials and forms.
inline PropertyResult twisted_nilpotence(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t nv = 1 + rng() % 4;
        auto f = random_poly(rng, nv, 4, 1 + static_cast<int>(rng() % 4));
        int deg = static_cast<int>(rng() % (nv + 1));
        auto w = random_form(rng, nv, deg, 4, 1 + static_cast<int>(rng() % 5));
        auto dd = dwc::twisted_differential(f, dwc::twisted_differential(f, w));
        ++r.cases;
        if (!dd.is_zero()) ++r.failures;
    }
    return r;
}

/// Σ (−1)^i dim C^i = Σ (−1)^i dim H^i on a truncated complex.
inline bool euler_identity(const dwc::ComplexDims& d) { return d.euler_spaces() == d.euler_cohomology(); }

/// Euler identity on every staircase complex visited by the given jobs.
inline PropertyResult euler_on_complexes(const std::vector<std::pair<P, dwc::StrandSpec>>& inputs)
{
    PropertyResult r;
    for (const auto& [f, spec] : inputs) {
        auto rep = dwc::stabilized_cohomology(f, spec);
        for (int level : rep.certificate->bounds) {
            auto c = dwc::cohomology_dims(dwc::assemble_truncated_complex(f, spec, level));
            ++r.cases;
            if (!euler_identity(c)) ++r.failures;
        }
        ++r.cases;
        if (!rep.staircase || !euler_identity(*rep.staircase)) ++r.failures;
    }
    return r;
}

/// Gorenstein symmetry and μ = (m−1)^{n+1} for smooth inputs.
inline PropertyResult gorenstein_and_milnor(const std::vector<P>& smooth)
{
    PropertyResult r;
    for (const auto& f : smooth) {
        auto p = dwc::jacobian_hilbert(f);
        ++r.cases;
        bool ok = p.smooth;
        for (int d = 0; ok && d <= p.socle_degree; ++d) ok = p.h(d) == p.h(p.socle_degree - d);
        std::size_t mu = 1;
        for (std::size_t i = 0; i < p.nvars; ++i) mu *= static_cast<std::size_t>(p.m - 1);
        ok = ok && p.milnor == mu;
        if (!ok) ++r.failures;
    }
    return r;
}

/// Exact rank equals the largest rank over three random 62-bit primes.
inline PropertyResult modular_rank_agreement(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t rows = 5 + rng() % 36, cols = 5 + rng() % 56;
        auto m = random_sparse(rng, rows, cols, 0.15);
        long best = -1;
        for (int i = 0; i < 3; ++i) best = std::max(best, modular_rank(m, random_prime62(rng)));
        ++r.cases;
        if (static_cast<long>(dwc::exact_rank(m)) != best) ++r.failures;
    }
    return r;
}

}  // namespace dwct
