#include "dwc/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dwc {

Monomial::Monomial(std::vector<int> exponents) : e_(std::move(exponents))
{
    for (int v : e_) {
        if (v < 0) throw Error("negative exponent in monomial");
    }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t k, int power)
{
    std::vector<int> e(nvars, 0);
    e.at(k) = power;
    return Monomial(std::move(e));
}

int Monomial::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

int Monomial::weighted_degree(std::span<const int> weights) const
{
    if (weights.empty()) return degree();
    int d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) d += weights[i] * e_[i];
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    if (o.e_.size() != e_.size()) throw InputError("monomial variable-count mismatch");
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

std::optional<Monomial> Monomial::lowered(std::size_t k) const
{
    if (e_[k] == 0) return std::nullopt;
    Monomial r = *this;
    --r.e_[k];
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.e_ <=> b.e_;
}

std::size_t Monomial::hash() const
{
    std::size_t h = 1469598103934665603ull;
    for (int v : e_) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

void enumerate(std::span<const int> w, std::size_t pos, int remaining, std::vector<int>& cur, std::vector<Monomial>& out)
{
    if (pos + 1 == cur.size()) {
        int wk = w.empty() ? 1 : w[pos];
        if (remaining % wk == 0) {
            cur[pos] = remaining / wk;
            out.emplace_back(cur);
        }
        return;
    }
    int wk = w.empty() ? 1 : w[pos];
    for (int a = remaining / wk; a >= 0; --a) {
        cur[pos] = a;
        enumerate(w, pos + 1, remaining - a * wk, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> weighted_monomial_basis(std::span<const int> weights, int d)
{
    std::vector<Monomial> out;
    if (weights.empty() || d < 0) return out;
    for (int w : weights) {
        if (w <= 0) throw InputError("weights must be positive");
    }
    std::vector<int> cur(weights.size(), 0);
    enumerate(weights, 0, d, cur, out);
    // Lex-descending enumeration is already grlex-descending inside one
    // degree; for non-unit weights the plain degree varies, so sort.
    if (!std::all_of(weights.begin(), weights.end(), [](int w) { return w == 1; })) {
        std::sort(out.begin(), out.end(), std::greater<>());
    }
    return out;
}

std::vector<Monomial> monomial_basis(std::size_t nvars, int d)
{
    std::vector<int> ones(nvars, 1);
    return weighted_monomial_basis(ones, d);
}

std::vector<std::string> default_variable_names(std::size_t nvars)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

// ------------------------------------------------------------- Polynomial

template <ExactField K>
Polynomial<K> Polynomial<K>::constant(std::size_t nvars, const K& c)
{
    Polynomial p(nvars);
    p.add_term(Monomial::one(nvars), c);
    return p;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::variable(std::size_t nvars, std::size_t k)
{
    Polynomial p(nvars);
    p.add_term(Monomial::variable(nvars, k), K(1L));
    return p;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::term(const Monomial& m, const K& c)
{
    Polynomial p(m.nvars());
    p.add_term(m, c);
    return p;
}

template <ExactField K>
K Polynomial<K>::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0L) : it->second;
}

template <ExactField K>
void Polynomial<K>::add_term(const Monomial& m, const K& c)
{
    if (m.nvars() != nvars_) throw InputError("polynomial variable-count mismatch");
    if (dwc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (dwc::is_zero(it->second)) terms_.erase(it);
    }
}

template <ExactField K>
void Polynomial<K>::check_compatible(const Polynomial& o) const
{
    if (o.nvars_ != nvars_) {
        throw InputError("polynomial variable-count mismatch (" + std::to_string(nvars_) + " vs " +
                         std::to_string(o.nvars_) + ")");
    }
}

template <ExactField K>
Polynomial<K>& Polynomial<K>::operator+=(const Polynomial& o)
{
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

template <ExactField K>
Polynomial<K>& Polynomial<K>::operator-=(const Polynomial& o)
{
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, K(-c));
    return *this;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::operator-() const
{
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, K(-c));
    return r;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& o) const
{
    check_compatible(o);
    Polynomial r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, K(ca * cb));
    }
    return r;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::scaled(const K& c) const
{
    Polynomial r(nvars_);
    if (dwc::is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, K(v * c));
    return r;
}

template <ExactField K>
int Polynomial<K>::total_degree() const
{
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

template <ExactField K>
int Polynomial<K>::max_weighted_degree(std::span<const int> weights) const
{
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree(weights));
    return d;
}

template <ExactField K>
std::optional<int> Polynomial<K>::homogeneous_degree() const
{
    return weighted_homogeneous_degree({});
}

template <ExactField K>
std::optional<int> Polynomial<K>::weighted_homogeneous_degree(std::span<const int> weights) const
{
    if (terms_.empty()) throw Error("degree of the zero polynomial is undefined");
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int e = m.weighted_degree(weights);
        if (d && *d != e) return std::nullopt;
        d = e;
    }
    return d;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::partial_derivative(std::size_t k) const
{
    if (k >= nvars_) throw InputError("derivative index " + std::to_string(k) + " out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (auto low = m.lowered(k)) r.add_term(*low, K(c * K(static_cast<long>(m[k]))));
    }
    return r;
}

template <ExactField K>
Polynomial<K> Polynomial<K>::extended(std::size_t extra) const
{
    Polynomial r(nvars_ + extra);
    for (const auto& [m, c] : terms_) {
        auto e = m.exponents();
        e.resize(nvars_ + extra, 0);
        r.terms_.emplace(Monomial(std::move(e)), c);
    }
    return r;
}

template <ExactField K>
std::string Polynomial<K>::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coeff = dwc::to_string(c);
        bool negative = !coeff.empty() && coeff[0] == '-';
        bool compound = coeff.find_first_of("+-", 1) != std::string::npos || coeff.find('t') != std::string::npos;
        if (negative && !compound) coeff.erase(0, 1);
        if (!first) os << ((negative && !compound) ? " - " : " + ");
        else if (negative && !compound) os << '-';
        first = false;
        bool unit = coeff == "1";
        bool has_vars = m.degree() > 0;
        if (compound) os << '(' << coeff << ')';
        else if (!unit || !has_vars) os << coeff;
        bool need_star = compound || !unit;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) os << '*';
            os << names.at(i);
            if (m[i] > 1) os << '^' << m[i];
            need_star = true;
        }
    }
    return os.str();
}

template <ExactField K>
std::string Polynomial<K>::to_string() const
{
    return to_string(default_variable_names(nvars_));
}

template class Polynomial<Rational>;
template class Polynomial<RationalFunction>;

Polynomial<RationalFunction> lift(const Polynomial<Rational>& p)
{
    Polynomial<RationalFunction> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, RationalFunction(c));
    return r;
}

Polynomial<Rational> specialize(const Polynomial<RationalFunction>& p, const Rational& t0)
{
    Polynomial<Rational> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, c(t0));
    return r;
}

}  // namespace dwc
