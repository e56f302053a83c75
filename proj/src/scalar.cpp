#include "dwc/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dwc {

std::string to_string(const Rational& a) { return a.get_str(); }

std::size_t bit_cost(const Rational& a)
{
    return mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2);
}

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    auto valid_int = [](std::string_view v, bool allow_sign) {
        if (!v.empty() && allow_sign && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
        return !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw InputError("not a rational number: '" + std::string(text) + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    Rational r{mpz_class(num), mpz_class(den)};
    if (sgn(r.get_den()) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(const Rational& c)
{
    if (!dwc::is_zero(c)) c_.push_back(c);
}

UniPoly UniPoly::monomial(const Rational& c, int degree)
{
    if (dwc::is_zero(c)) return {};
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim()
{
    while (!c_.empty() && dwc::is_zero(c_.back())) c_.pop_back();
}

Rational UniPoly::operator()(const Rational& t) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

UniPoly UniPoly::derivative() const
{
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const
{
    if (is_zero()) return {};
    std::vector<Rational> v = c_;
    Rational lead = c_.back();
    for (auto& x : v) x /= lead;
    return UniPoly(std::move(v));
}

UniPoly& UniPoly::operator+=(const UniPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o)
{
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (dwc::is_zero(c_[i])) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(v);
    trim();
    return *this;
}

UniPoly UniPoly::operator-() const
{
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b)
{
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    std::vector<Rational> r = a.c_;
    const Rational& lead = b.c_.back();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational f = r[static_cast<std::size_t>(k + b.degree())] / lead;
        q[static_cast<std::size_t>(k)] = f;
        if (dwc::is_zero(f)) continue;
        for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(b.degree()));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

std::string UniPoly::to_string(std::string_view var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[static_cast<std::size_t>(k)];
        if (dwc::is_zero(c)) continue;
        Rational mag = abs(c);
        if (sgn(c) < 0) os << (first ? "-" : " - ");
        else if (!first) os << " + ";
        bool unit = mag == 1;
        if (!unit || k == 0) {
            os << mag.get_str();
            if (k > 0) os << '*';
        }
        if (k >= 1) os << var;
        if (k >= 2) os << '^' << k;
        first = false;
    }
    return os.str();
}

std::size_t UniPoly::bit_cost() const
{
    std::size_t s = 0;
    for (const auto& x : c_) s += dwc::bit_cost(x);
    return s;
}

UniPoly gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        auto r = UniPoly::divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// ------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize()
{
    if (num_.is_zero()) {
        den_ = UniPoly(1L);
        return;
    }
    if (den_.degree() > 0) {
        UniPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = UniPoly::divmod(num_, g).first;
            den_ = UniPoly::divmod(den_, g).first;
        }
    }
    Rational lead = den_.leading();
    if (lead != 1) {
        UniPoly inv{Rational(Rational(1) / lead)};
        num_ *= inv;
        den_ *= inv;
    }
}

Rational RationalFunction::operator()(const Rational& t0) const
{
    Rational d = den_(t0);
    if (dwc::is_zero(d)) {
        throw DiscriminantError("denominator " + den_.to_string() + " vanishes at t = " + t0.get_str());
    }
    return num_(t0) / d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o)
{
    if (den_ == o.den_) {
        num_ += o.num_;
        if (den_.degree() > 0) normalize();
        else if (num_.is_zero()) den_ = UniPoly(1L);
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o)
{
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o)
{
    if (o.is_zero()) throw Error("division by zero rational function");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

RationalFunction RationalFunction::operator-() const
{
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

std::string RationalFunction::to_string(std::string_view var) const
{
    if (den_.degree() == 0) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace dwc
