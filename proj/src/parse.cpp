#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "dwc/cli.hpp"

namespace dwc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), nvars_(vars.size())
    {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const auto& v = vars[i];
            if (v.empty() || !ident_start(v[0]) || !std::all_of(v.begin(), v.end(), ident_char)) {
                throw InputError("invalid variable name '" + v + "'");
            }
            if (!index_.emplace(v, i).second) throw InputError("duplicate variable '" + v + "'");
        }
    }

    Polynomial<Rational> parse()
    {
        Polynomial<Rational> out(nvars_);
        skip();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [mono, c] = term();
            if (sign < 0) c = -c;
            out.add_term(mono, c);
            first = false;
            skip();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what, pos_);
    }

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (!at_end() && digit(peek())) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::pair<Monomial, Rational> term()
    {
        std::vector<int> e(nvars_, 0);
        Rational c(1);
        for (;;) {
            skip();
            if (at_end()) fail("expected a number or variable");
            if (digit(peek())) {
                std::string num = digits();
                skip();
                if (!at_end() && peek() == '/') {
                    ++pos_;
                    skip();
                    if (at_end() || !digit(peek())) fail("expected a denominator");
                    std::size_t den_pos = pos_;
                    std::string den = digits();
                    if (std::all_of(den.begin(), den.end(), [](char ch) { return ch == '0'; })) {
                        pos_ = den_pos;
                        fail("zero denominator");
                    }
                    num += "/" + den;
                }
                c *= parse_rational(num);
            } else if (ident_start(peek())) {
                std::size_t start = pos_;
                while (!at_end() && ident_char(peek())) ++pos_;
                std::string name(s_.substr(start, pos_ - start));
                auto it = index_.find(name);
                if (it == index_.end()) {
                    pos_ = start;
                    fail("unknown variable '" + name + "'");
                }
                int power = 1;
                skip();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip();
                    if (at_end() || !digit(peek())) fail("expected a nonnegative integer exponent");
                    std::string p = digits();
                    if (p.size() > 6) fail("exponent too large");
                    power = std::stoi(p);
                }
                e[it->second] += power;
            } else {
                fail(std::string("unexpected character '") + peek() + "'");
            }
            skip();
            if (at_end() || peek() == '+' || peek() == '-') break;
            if (peek() != '*') fail("expected '*', '+' or '-'");
            ++pos_;
        }
        return {Monomial(std::move(e)), c};
    }

    std::string_view s_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace

Polynomial<Rational> parse_polynomial(std::string_view text, const std::vector<std::string>& variables)
{
    if (variables.empty()) throw InputError("no variables declared");
    return Parser(text, variables).parse();
}

std::vector<std::string> infer_variables(std::string_view text)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        if (ident_start(text[i])) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string name(text.substr(i, j - i));
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
            i = j;
        } else {
            ++i;
        }
    }
    auto split = [](const std::string& s) {
        std::size_t k = s.size();
        while (k > 0 && digit(s[k - 1])) --k;
        std::string suffix = s.substr(k);
        return std::make_tuple(s.substr(0, k), suffix.size(), suffix);
    };
    std::sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) { return split(a) < split(b); });
    return names;
}

}  // namespace dwc
