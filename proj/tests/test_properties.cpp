#include <doctest.h>

#include "support.hpp"

using namespace dwc;
using dwct::fermat;
using dwct::mono;

TEST_CASE("D squares to zero on 200 random forms")
{
    auto r = dwct::twisted_nilpotence(200, 17);
    CHECK(r.cases == 200);
    CHECK(r.failures == 0);
}

TEST_CASE("Euler characteristic identity on computed complexes")
{
    auto r = dwct::euler_on_complexes({
        {fermat(3, 3), StrandSpec{3, 3, 0, {}}},
        {mono({1, 1, 1}), StrandSpec{3, 3, 0, {}}},
        {mono({2}), StrandSpec{1, 1, 0, {}}},
        {mono({1, 1}), StrandSpec{2, 1, 0, {}}},
        {fermat(2, 3), StrandSpec{2, 3, 1, {}}},
    });
    CHECK(r.ok());
}

TEST_CASE("Gorenstein symmetry and Milnor formula")
{
    auto r = dwct::gorenstein_and_milnor({fermat(1, 2), fermat(2, 3), fermat(3, 2), fermat(3, 3), fermat(4, 4),
                                          fermat(3, 4), fermat(5, 3)});
    CHECK(r.ok());
}

TEST_CASE("modular rank oracle on 50 random matrices")
{
    auto r = dwct::modular_rank_agreement(50, 7);
    CHECK(r.cases == 50);
    CHECK(r.failures == 0);
}
