#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace dwc;
using dwct::mono;
using dwct::P;
using QM = SparseMatrix<Rational>;

namespace {

QM from_dense(const std::vector<std::vector<long>>& d)
{
    std::vector<QM::Triplet> t;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d[i].size(); ++j) {
            if (d[i][j]) t.emplace_back(i, j, Rational(d[i][j]));
        }
    }
    return QM::from_triplets(d.size(), d.empty() ? 0 : d[0].size(), std::move(t));
}

}  // namespace

TEST_CASE("sparse matrix construction is validated")
{
    CHECK_THROWS_AS(QM::from_triplets(2, 2, {{0, 0, Rational(1)}, {0, 0, Rational(2)}}), Error);
    CHECK_THROWS_AS(QM::from_triplets(2, 2, {{0, 0, Rational(0)}}), Error);
    CHECK_THROWS_AS(QM::from_triplets(2, 2, {{2, 0, Rational(1)}}), Error);
    CHECK_THROWS_AS(QM::from_rows(2, {{{1, Rational(1)}, {0, Rational(1)}}}), Error);
    auto m = from_dense({{1, 2}, {0, 3}});
    CHECK(m.nnz() == 3);
    CHECK(m.transposed().transposed() == m);
    CHECK(m.multiply(from_dense({{1, 0}, {0, 1}})) == m);
}

TEST_CASE("exact rank examples")
{
    CHECK(exact_rank(from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(exact_rank(from_dense({{1, 2}, {2, 4}})) == 1);
    CHECK(exact_rank(QM(0, 5)) == 0);
    CHECK(exact_rank(QM(4, 0)) == 0);
    CHECK(exact_rank(from_dense({{0, 0}, {0, 0}})) == 0);
    auto wide = QM::from_triplets(2, 3, {{0, 0, Rational(1, 3)}, {0, 2, Rational(-5, 7)}, {1, 0, Rational(2, 3)}, {1, 2, Rational(-10, 7)}});
    CHECK(exact_rank(wide) == 1);
}

TEST_CASE("rank over the rational function field")
{
    using RM = SparseMatrix<RationalFunction>;
    auto t = RationalFunction::t();
    RationalFunction one(1L);
    auto m = RM::from_triplets(2, 2, {{0, 0, t}, {0, 1, one}, {1, 0, t * t}, {1, 1, t}});
    CHECK(exact_rank(m) == 1);
    auto n = RM::from_triplets(2, 2, {{0, 0, t}, {0, 1, one}, {1, 0, one}, {1, 1, t}});
    CHECK(exact_rank(n) == 2);  // det t^2 - 1 is nonzero generically
    CHECK(rank_reference(n) == 2);
}

TEST_CASE("elimination agrees with the reference and is permutation invariant")
{
    std::mt19937_64 rng(42);
    for (int k = 0; k < 30; ++k) {
        std::size_t rows = 3 + rng() % 30, cols = 3 + rng() % 30;
        auto m = dwct::random_sparse(rng, rows, cols, 0.2);
        auto r = exact_rank(m, Exec::Serial);
        CHECK(r == rank_reference(m));
        CHECK(r == exact_rank(m, Exec::Parallel));
        CHECK(r == exact_rank(m.transposed()));
        std::vector<std::size_t> rp(rows), cp(cols);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(r == exact_rank(m.permuted(rp, cp)));
    }
}

TEST_CASE("large buckets take the parallel branch and agree")
{
    std::mt19937_64 rng(99);
    auto m = dwct::random_sparse(rng, 160, 120, 0.05);
    CHECK(exact_rank(m, Exec::Parallel) == exact_rank(m, Exec::Serial));
    CHECK(exact_rank(m, Exec::Parallel) == rank_reference(m));
}

TEST_CASE("modular rank oracle on random 40x60 matrices")
{
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 10; ++k) {
        auto m = dwct::random_sparse(rng, 40, 60, 0.1);
        long best = -1;
        for (int i = 0; i < 3; ++i) best = std::max(best, dwct::modular_rank(m, dwct::random_prime62(rng)));
        CHECK(static_cast<long>(exact_rank(m)) == best);
    }
}

TEST_CASE("row echelon normal forms")
{
    RowEchelon<Rational> e(3);
    CHECK(e.insert({{0, Rational(1)}, {1, Rational(1)}}));
    CHECK(e.insert({{1, Rational(1)}, {2, Rational(1)}}));
    CHECK_FALSE(e.insert({{0, Rational(1)}, {2, Rational(-1)}}));
    CHECK(e.rank() == 2);
    CHECK(e.contains({{0, Rational(2)}, {1, Rational(2)}}));
    auto r = e.reduce({{0, Rational(1)}});
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == 2);
    CHECK(r[0].second == 1);
}

TEST_CASE("cohomology dimensions of small complexes")
{
    // Zero differentials: cohomology equals the spaces.
    auto c = dF_only_cohomology(P(2), StrandSpec{2, 1, 0, {}}, 3);
    for (const auto& d : c.degrees) CHECK(d.cohomology == d.space_dim);

    // Koszul complex of (x0, x1) on polynomials: one class in top degree.
    auto q = mono({2, 0}) + mono({0, 2});
    auto k = dF_only_cohomology(q, StrandSpec{2, 1, 0, {}}, 6);
    CHECK(k.h(0) == 0);
    CHECK(k.h(1) == 0);
    CHECK(k.h(2) == 1);

    // Untwisted de Rham complex of one variable.
    auto dr = stabilized_cohomology(P(1), StrandSpec{1, 1, 0, {}});
    CHECK(dr.dim(0) == 1);
    CHECK(dr.dim(1) == 0);

    TruncatedComplex<Rational> bad;
    bad.spec = StrandSpec{1, 1, 0, {}};
    bad.bases = {{{Monomial({0}), 0}}, {{Monomial({0}), 1}}, {{Monomial({1}), 1}}};
    bad.maps = {QM::from_triplets(1, 1, {{0, 0, Rational(1)}}), QM::from_triplets(1, 1, {{0, 0, Rational(1)}})};
    CHECK_THROWS_AS(cohomology_dims(bad), NilpotenceViolation);
}

TEST_CASE("stabilized cohomology examples")
{
    auto r = stabilized_cohomology(mono({1, 1}), StrandSpec{2, 1, 0, {}});
    CHECK(r.dim(2) == 1);
    CHECK(r.dim(1) == 0);
    CHECK(r.dim(0) == 0);
    REQUIRE(r.certificate);
    CHECK(r.certificate->agreed);
    CHECK(r.certificate->bounds.size() == 3);

    auto cubic = stabilized_cohomology(dwct::fermat(3, 3), StrandSpec{3, 1, 0, {}});
    CHECK(cubic.dim(3) == 8);
    CHECK(cubic.dim(3) == milnor_number(dwct::fermat(3, 3)));

    StabilizationPolicy tight{0, 2, 0, 2};
    auto cut = stabilized_cohomology(mono({1, 1}), StrandSpec{2, 1, 0, {}}, tight);
    REQUIRE(cut.certificate);
    CHECK_FALSE(cut.certificate->agreed);
    CHECK_FALSE(cut.stabilized());

    CHECK_THROWS_AS((StabilizationPolicy{-1, 1, 0, 0}.validate()), InputError);
    CHECK_THROWS_AS((StabilizationPolicy{0, 0, 0, 0}.validate()), InputError);
    CHECK_THROWS_AS((StabilizationPolicy{3, 1, 2, 0}.validate()), InputError);
}

TEST_CASE("filtered image dims never exceed the staircase cohomology")
{
    auto f = mono({1, 1, 1});
    StrandSpec spec{3, 3, 0, {}};
    TwistedOperator<Rational> op(f, spec, 3);
    for (int level : {0, 3, 6}) {
        auto img = filtered_cohomology(op, level, level + 3);
        auto full = cohomology_dims(assemble_complex(op, level));
        for (int k = 0; k <= 3; ++k) CHECK(img[static_cast<std::size_t>(k)] <= full.h(k));
        CHECK(filtered_cohomology(op, level, level) == full.cohomology_vector());
    }
    CHECK_THROWS_AS(filtered_cohomology(op, 3, 0), InputError);
}

TEST_CASE("machine-integer elimination falls back on overflow")
{
    // Entries beyond 64 bits force the multiprecision kernel from the start.
    Rational big{mpz_class("1180591620717411303424"), mpz_class(1)};
    auto huge = QM::from_triplets(2, 2, {{0, 0, big}, {0, 1, Rational(1)}, {1, 0, Rational(1)}, {1, 1, Rational(1)}});
    CHECK(exact_rank(huge) == 2);
    CHECK(exact_rank(huge) == exact_rank_multiprecision(huge));

    // Dense matrices with large entries overflow during elimination.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-1000000000L, 1000000000L);
    for (int k = 0; k < 5; ++k) {
        std::vector<QM::Triplet> t;
        for (std::size_t i = 0; i < 12; ++i) {
            for (std::size_t j = 0; j < 12; ++j) {
                long v = entry(rng);
                if (v != 0 && (i != 11 || k % 2 == 0)) t.emplace_back(i, j, Rational(v));
            }
        }
        auto m = QM::from_triplets(12, 12, std::move(t));
        CHECK(exact_rank(m) == exact_rank_multiprecision(m));
        CHECK(exact_rank(m) == rank_reference(m));
    }
    std::mt19937_64 rng2(12);
    for (int k = 0; k < 10; ++k) {
        auto m = dwct::random_sparse(rng2, 25, 25, 0.3);
        CHECK(exact_rank(m, Exec::Serial) == exact_rank_multiprecision(m, Exec::Serial));
    }
}
