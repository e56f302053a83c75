// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace dwc;
using dwct::fermat;
using dwct::mono;
using dwct::P;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes << " [FAILED: " << what << "]";
        }
    }
    template <class A, class B>
    void equal(const A& lhs, const B& rhs, const std::string& what)
    {
        std::ostringstream s;
        s << what << " " << lhs << " vs " << rhs;
        expect(lhs == rhs, s.str());
    }
    void verdict(const Verdict& v)
    {
        for (const auto& c : v.checks) expect(c.pass, v.name + "/" + c.name + " " + c.lhs + " vs " + c.rhs);
        expect(!v.checks.empty(), v.name + " produced no checks");
    }
};

std::vector<std::size_t> hodge(const P& f)
{
    std::vector<std::size_t> v;
    for (const auto& h : primitive_hodge_numbers(f)) v.push_back(h.h);
    return v;
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::size_t pow_size(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

bool concentrated_top(const CohomologyReport& r, int top)
{
    for (int k = 0; k < top; ++k) {
        if (r.dim(k) != 0) return false;
    }
    return true;
}

bool certified(const CohomologyReport& r) { return r.certificate && r.certificate->agreed && r.certificate->bounds.size() == 3; }

const std::vector<P>& smooth_corpus()
{
    static const std::vector<P> c = {fermat(3, 2), fermat(3, 3), fermat(3, 4), fermat(4, 4)};
    return c;
}

void criterion1(Outcome& o)
{
    auto cubic = join(hodge(fermat(3, 3))), quartic = join(hodge(fermat(4, 4))), quintic = join(hodge(fermat(5, 5)));
    o.equal(cubic, "(1,1)", "cubic");
    o.equal(quartic, "(1,19,1)", "quartic");
    o.equal(quintic, "(1,101,101,1)", "quintic");
    o.notes << " cubic " << cubic << ", K3 " << quartic << ", quintic " << quintic;
}

void criterion2(Outcome& o)
{
    for (const auto& f : smooth_corpus()) o.verdict(compare_smooth_paths(f));
    o.notes << " conic, cubic, plane quartic, K3";
}

void criterion3(Outcome& o)
{
    auto r = primitive_dwork_cohomology(mono({1, 1, 1}));
    // Complement of three lines is (C*)^2 with reduced Betti numbers C(2,i), i > 0.
    o.equal(r.dim(2), binomial(2, 1), "k=2");
    o.equal(r.dim(3), binomial(2, 2), "k=3");
    o.equal(r.dim(0) + r.dim(1), 0u, "k<2");
    o.expect(certified(r), "certificate");
    o.notes << " dims {2:" << r.dim(2) << ", 3:" << r.dim(3) << "}";
}

void criterion4(Outcome& o)
{
    struct Case {
        int m;
        std::size_t nvars;
    };
    for (auto c : {Case{2, 1}, Case{3, 2}, Case{3, 3}, Case{4, 4}}) {
        auto r = affine_twisted_cohomology(fermat(c.nvars, c.m));
        auto top = static_cast<int>(c.nvars);
        o.equal(r.dim(top), pow_size(static_cast<std::size_t>(c.m - 1), c.nvars), "mu");
        o.expect(concentrated_top(r, top), "concentration");
        o.notes << " " << r.dim(top);
    }
}

void criterion5(Outcome& o)
{
    auto strands = strand_decomposition(fermat(4, 4));
    std::vector<std::size_t> top;
    std::size_t sum = 0;
    for (const auto& s : strands) {
        top.push_back(s.dim(4));
        sum += s.dim(4);
    }
    o.equal(join(top), "(21,20,20,20)", "quartic strands");
    o.equal(sum, 81u, "sum");
    for (const auto& f : {fermat(3, 3), fermat(4, 4), mono({1, 1, 1}), fermat(5, 5)}) o.verdict(strand_sum_check(f));
    o.notes << " strands " << join(top) << " sum " << sum;
}

void criterion6(Outcome& o)
{
    for (const auto& f : smooth_corpus()) o.verdict(thom_sebastiani_check(f));
    auto v = suspension_check(fermat(3, 3));
    o.verdict(v);
    auto surface = primitive_dwork_cohomology(fermat(4, 3)).dim(4);
    auto curve = primitive_dwork_cohomology(fermat(3, 3)).dim(3);
    auto full = affine_twisted_cohomology(fermat(3, 3)).dim(3);
    o.equal(full, surface + curve, "8 = 6 + 2");
    o.notes << " " << full << " = " << surface << " + " << curve;
}

void criterion7(Outcome& o)
{
    auto a = ci_dwork_koszul({mono({2}) - P::constant(1, Rational(1))});
    auto b = ci_dwork_koszul({mono({1})});
    auto c = ci_dwork_koszul({mono({1, 0}), mono({0, 1})});
    o.equal(a.dim(2), 2u, "x^2-1");
    o.equal(b.dim(2), 1u, "x");
    o.equal(c.dim(4), 1u, "(x1,x2)");
    o.expect(concentrated_top(a, 2) && concentrated_top(b, 2) && concentrated_top(c, 4), "concentration");
    o.expect(certified(a) && certified(b) && certified(c), "certificates");
    o.notes << " H^2 = " << a.dim(2) << ", " << b.dim(2) << "; H^4 = " << c.dim(4);
}

void criterion8(Outcome& o)
{
    for (int r : {1, 2}) {
        auto v = fourier_lemma_check(r);
        o.verdict(v);
        for (const auto& rep : v.reports) o.expect(certified(rep), "certificate r=" + std::to_string(r));
        o.expect(!v.reports.empty(), "report r=" + std::to_string(r));
    }
}

void criterion9(Outcome& o)
{
    Family fam{fermat(3, 3), mono({1, 1, 1}, -3)};
    std::vector<P> basis = {P::constant(3, Rational(1)), mono({1, 1, 1})};
    auto v = connection_properties_check(fam, {Rational(0), Rational(1, 2), Rational(-2)}, basis);
    o.verdict(v);
    auto cm = family_connection_matrix(fam, basis);
    o.equal(to_string(cm.entries), std::string("[[0, -3], [(1/3*t)/(t^3 - 1), (-3*t^2)/(t^3 - 1)]]"), "frozen matrix");
    o.notes << " " << v.checks.size() << " checks";
}

void criterion10(Outcome& o)
{
    auto nil = dwct::twisted_nilpotence(200, 17);
    auto euler = dwct::euler_on_complexes({
        {fermat(3, 3), StrandSpec{3, 3, 0, {}}},
        {mono({1, 1, 1}), StrandSpec{3, 3, 0, {}}},
        {mono({2}), StrandSpec{1, 1, 0, {}}},
        {mono({1, 1}), StrandSpec{2, 1, 0, {}}},
        {fermat(2, 3), StrandSpec{2, 3, 1, {}}},
    });
    auto gor = dwct::gorenstein_and_milnor({fermat(1, 2), fermat(2, 3), fermat(3, 2), fermat(3, 3), fermat(3, 4),
                                            fermat(4, 4), fermat(5, 5)});
    auto modr = dwct::modular_rank_agreement(50, 7);
    o.expect(nil.ok() && nil.cases == 200, "D^2 = 0");
    o.expect(euler.ok(), "Euler identity");
    o.expect(gor.ok(), "Gorenstein/mu");
    o.expect(modr.ok() && modr.cases == 50, "modular rank");
    o.notes << " D^2 " << nil.cases << ", Euler " << euler.cases << ", Gorenstein " << gor.cases << ", modular "
            << modr.cases;
}

}  // namespace

int main()
{
    std::cout << std::unitbuf;
    configure_threads_from_env();
    struct Criterion {
        std::string name;
        std::function<void(Outcome&)> run;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {"primitive Hodge numbers", criterion1, 120},
        {"two-path agreement on smooth inputs", criterion2, 300},
        {"singular triangle of lines", criterion3, 60},
        {"Milnor numbers of Fermat polynomials", criterion4, 120},
        {"strand decomposition", criterion5, 120},
        {"Thom-Sebastiani and suspension", criterion6, 180},
        {"complete-intersection Koszul complexes", criterion7, 60},
        {"Fourier lemma", criterion8, 60},
        {"Gauss-Manin properties", criterion9, 120},
        {"property suites", criterion10, 120},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream budget;
        budget << "time budget " << criteria[i].budget_s << " s";
        o.expect(s < criteria[i].budget_s, budget.str());
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].name << " ("
                  << std::fixed << std::setprecision(2) << s << " s)" << o.notes.str() << '\n';
        failures += o.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures;
}
