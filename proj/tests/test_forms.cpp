#include <doctest.h>

#include "support.hpp"

using namespace dwc;
using dwct::Form;
using dwct::mono;
using dwct::P;

namespace {

Form dx(std::size_t nvars, std::size_t k)
{
    return Form::monomial({Monomial::one(nvars), IndexSet{1} << k}, Rational(1), nvars);
}

Form function(const P& f) { return Form::from_polynomial(f, 0); }

}  // namespace

TEST_CASE("wedge products of one-forms")
{
    auto w01 = Form::monomial({Monomial::one(2), 0b11}, Rational(1), 2);
    CHECK(wedge(dx(2, 0), dx(2, 1)) == w01);
    CHECK(wedge(dx(2, 1), dx(2, 0)) == w01.scaled(Rational(-1)));
    CHECK(wedge(dx(2, 0), dx(2, 0)).is_zero());
    CHECK_THROWS(wedge(dx(2, 0), dx(3, 0)));
    CHECK(wedge_sign(0b010, 0b101) == -1);
    CHECK(wedge_sign(0b001, 0b110) == 1);
    CHECK(wedge_sign(0b011, 0b010) == 0);
}

TEST_CASE("wedge antisymmetry on random one-forms")
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 40; ++k) {
        auto a = dwct::random_form(rng, 3, 1, 2, 3), b = dwct::random_form(rng, 3, 1, 2, 3);
        CHECK(wedge(a, b) == wedge(b, a).scaled(Rational(-1)));
        CHECK(wedge(a, a).is_zero());
    }
}

TEST_CASE("exterior derivative examples")
{
    auto x0x1 = function(mono({1, 1}));
    CHECK(exterior_derivative(x0x1) ==
          Form::monomial({Monomial({0, 1}), 0b01}, Rational(1), 2) + Form::monomial({Monomial({1, 0}), 0b10}, Rational(1), 2));
    auto x0dx1 = Form::monomial({Monomial({1, 0}), 0b10}, Rational(1), 2);
    CHECK(exterior_derivative(x0dx1) == Form::monomial({Monomial::one(2), 0b11}, Rational(1), 2));
    CHECK(exterior_derivative(exterior_derivative(function(mono({2, 1})))).is_zero());
}

TEST_CASE("twisted differential examples")
{
    auto f = mono({2});
    CHECK(twisted_differential(f, function(P::constant(1, Rational(1)))) ==
          Form::monomial({Monomial({1}), 0b1}, Rational(2), 1));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; ++k) {
        auto g = dwct::random_poly(rng, 3, 3, 3);
        auto w = dwct::random_form(rng, 3, static_cast<int>(rng() % 4), 3, 4);
        CHECK(twisted_differential(g, twisted_differential(g, w)).is_zero());
    }
}

TEST_CASE("strand basis counts")
{
    StrandSpec s{3, 3, 0, {}};
    CHECK(strand_basis(s, 3, 3).size() == 11);
    CHECK(strand_basis(s, 1, 3).size() == 18);
    CHECK(strand_basis(s, 0, 3).size() == 11);
    for (const auto& f : strand_basis(s, 2, 6)) CHECK(s.contains(f));
    StrandSpec full{2, 1, 0, {}};
    CHECK(strand_basis(full, 0, 2).size() == 6);
}

TEST_CASE("strand validation")
{
    CHECK_THROWS_AS((StrandSpec{2, 3, 3, {}}.validate()), InputError);
    CHECK_THROWS_AS((StrandSpec{2, 0, 0, {}}.validate()), InputError);
    CHECK_THROWS_AS((StrandSpec{2, 3, 0, {1}}.validate()), InputError);
    CHECK_THROWS_AS((StrandSpec{2, 3, 0, {1, 0}}.validate()), InputError);
    CHECK_NOTHROW((StrandSpec{2, 6, 1, {3, 2}}.validate()));
}

TEST_CASE("D preserves strands and splits into d and dF by level")
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 25; ++k) {
        std::size_t nv = 2 + rng() % 2;
        int m = 2 + static_cast<int>(rng() % 3);
        auto f = dwct::random_homogeneous(rng, nv, m, 3);
        if (f.is_zero()) continue;
        int j = static_cast<int>(rng() % static_cast<unsigned>(m));
        StrandSpec spec{nv, m, j, {}};
        TwistedOperator<Rational> tw(f, spec, m), dr(f, spec, m, Differential::DeRham), ko(f, spec, m, Differential::Koszul);
        int i = static_cast<int>(rng() % nv);
        for (const auto& mf : strand_basis(spec, i, 5)) {
            auto w = Form::monomial(mf, Rational(1), nv);
            auto image = tw.apply(w);
            for (const auto& [g, c] : image.terms()) CHECK(spec.contains(g));
            auto d_part = dr.apply(w), k_part = ko.apply(w);
            CHECK(image == d_part + k_part);
            for (const auto& [g, c] : d_part.terms()) CHECK(tw.level(g) == tw.level(mf) - m);
            for (const auto& [g, c] : k_part.terms()) CHECK(tw.level(g) == tw.level(mf));
        }
    }
}

TEST_CASE("operator matrices agree serial and parallel")
{
    auto f = dwct::fermat(3, 3) + mono({1, 1, 1}, -2);
    StrandSpec spec{3, 3, 0, {}};
    TwistedOperator<Rational> op(f, spec, 3);
    auto src = op.staircase_basis(1, 6), tgt = op.staircase_basis(2, 6);
    auto idx = index_of(tgt);
    CHECK(op.matrix(src, idx, tgt.size(), false, Exec::Serial) == op.matrix(src, idx, tgt.size(), false, Exec::Parallel));
    auto small_tgt = op.staircase_basis(2, 3);
    CHECK_THROWS_AS(op.matrix(src, index_of(small_tgt), small_tgt.size(), false, Exec::Serial), Error);
}

TEST_CASE("assembled complexes")
{
    auto c = assemble_truncated_complex(dwct::fermat(3, 3), StrandSpec{3, 3, 0, {}}, 6);
    REQUIRE(c.maps.size() == 3);
    for (std::size_t i = 0; i + 1 < c.maps.size(); ++i) CHECK(c.maps[i].multiply(c.maps[i + 1]).is_zero_matrix());

    // F = 0 is the untwisted de Rham complex.
    auto zero = P(2);
    auto tw = assemble_truncated_complex(zero, StrandSpec{2, 1, 0, {}}, 3);
    auto dr = assemble_truncated_complex(zero, StrandSpec{2, 1, 0, {}}, 3, Differential::DeRham);
    for (std::size_t i = 0; i < tw.maps.size(); ++i) CHECK(tw.maps[i] == dr.maps[i]);
}

TEST_CASE("potential step rules")
{
    CHECK(potential_step(dwct::fermat(3, 3), StrandSpec{3, 3, 1, {}}) == 3);
    CHECK(potential_step(P(3), StrandSpec{3, 3, 1, {}}) == 3);
    CHECK(potential_step(mono({2, 0}) + mono({0, 1}), StrandSpec{2, 1, 0, {}}) == 2);
    CHECK_THROWS_AS(potential_step(mono({2, 0}) + mono({0, 1}), StrandSpec{2, 2, 0, {}}), InputError);
    CHECK_THROWS_AS(potential_step(dwct::fermat(3, 3), StrandSpec{3, 4, 0, {}}), InputError);
    CHECK(potential_step(mono({2, 0}) + mono({0, 3}), StrandSpec{2, 6, 0, {3, 2}}) == 6);
}

TEST_CASE("x0 squared: the class lives in strand 1 and the full complex")
{
    auto f = mono({2});
    auto s1 = stabilized_cohomology(f, StrandSpec{1, 2, 1, {}});
    CHECK(s1.dim(0) == 0);
    CHECK(s1.dim(1) == 1);
    auto s0 = stabilized_cohomology(f, StrandSpec{1, 2, 0, {}});
    CHECK(s0.dim(0) == 0);
    CHECK(s0.dim(1) == 0);
    auto full = stabilized_cohomology(f, StrandSpec{1, 1, 0, {}});
    CHECK(full.dim(1) == 1);
    CHECK(full.stabilized());
    // The staircase at level 4 already has the class.
    auto c = cohomology_dims(assemble_truncated_complex(f, StrandSpec{1, 1, 0, {}}, 4));
    CHECK(c.h(0) == 0);
    CHECK(c.h(1) == 1);
}
