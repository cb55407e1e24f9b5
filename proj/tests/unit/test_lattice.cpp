#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <syzmirror/lattice.hpp>

#include "../support.hpp"

using namespace syzmirror;
using namespace syzmirror::lattice;

namespace
{

bool mentions(const ValidationReport &r, const std::string &needle)
{
    for (const auto &f : r.failures) {
        if (f.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("validate_cy")
{
    CHECK(validate_cy(testing::local_p2()).ok());
    CHECK(validate_cy(testing::conifold()).ok());
    CHECK(validate_cy(testing::c3()).ok());

    auto bad_u = testing::local_p2();
    bad_u.u = {0, 0, 2};
    CHECK(mentions(validate_cy(bad_u), "CY condition"));

    ToricCYData det2{{{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}, {0, 0, 1}, {0, 0, 0, 0}, std::nullopt, std::nullopt};
    CHECK(mentions(validate_cy(det2), "unimodularity"));

    auto cb = testing::local_p2();
    cb.charge_basis = IntMatrix{{-6, 2, 2, 2}};
    CHECK(mentions(validate_cy(cb), "index 2"));
    cb.charge_basis = IntMatrix{{3, -1, -1, -1}};
    CHECK(validate_cy(cb).ok());
    cb.charge_basis = IntMatrix{{1, 1, 0, -2}};
    CHECK(mentions(validate_cy(cb), "annihilate"));
}

TEST_CASE("charge_basis")
{
    CHECK(charge_basis(testing::local_p2()) == IntMatrix{{-3, 1, 1, 1}});
    CHECK(charge_basis(testing::conifold()) == IntMatrix{{1, -1, 1, -1}});
    CHECK(charge_basis(testing::c3()).empty());
    CHECK(interior_rays(testing::local_p2()) == std::vector<int>{0});
    CHECK(interior_rays(testing::conifold()).empty());
}

TEST_CASE("dual_exponents")
{
    const auto p2 = dual_exponents(testing::local_p2());
    CHECK(p2[3] == IntVector{3, -1, -1});
    CHECK(dual_exponents(testing::conifold())[3] == IntVector{1, -1, 1});
    CHECK(p2[0] == IntVector{1, 0, 0});
    CHECK(p2[1] == IntVector{0, 1, 0});
    CHECK(p2[2] == IntVector{0, 0, 1});
}

TEST_CASE("divisor_pairing")
{
    const IntMatrix p2{{-3, 1, 1, 1}};
    CHECK(divisor_pairing(p2, {1}) == IntVector{-3, 1, 1, 1});
    CHECK(divisor_pairing(p2, {0}) == IntVector{0, 0, 0, 0});
    CHECK(divisor_pairing(IntMatrix{{1, -1, 1, -1}}, {1}) == IntVector{1, -1, 1, -1});
}

TEST_CASE("validate_brane")
{
    const auto con = testing::conifold();
    BraneSpec special{{{-1, 1, 0, 0}}, {0}, {0}, std::nullopt, std::nullopt};
    CHECK(validate_brane(con, special).ok());
    BraneSpec nonspecial{{{1, 1, 0, 0}}, {0}, {0}, std::nullopt, std::nullopt};
    CHECK(mentions(validate_brane(con, nonspecial), "special"));

    auto av = testing::av_brane(4, 0, 1, 2, 2);
    CHECK(validate_brane(con, av).ok());
    CHECK(av_indices(av).open == 2);
    CHECK(av_indices(av).edge == 1);

    auto two_constants = av;
    two_constants.constants = {1, 2};
    CHECK(mentions(validate_brane(con, two_constants), "exactly one nonzero constant"));

    auto odd_phase = av;
    odd_phase.phases = {1, 0};
    CHECK(mentions(validate_brane(con, odd_phase), "multiple of 2 pi"));

    auto not_edge = testing::av_brane(4, 1, 3, 0, 1);
    CHECK(mentions(validate_brane(con, not_edge), "not an edge"));

    BraneSpec dependent{{{-1, 1, 0, 0}, {1, -1, 0, 0}}, {0, 0}, {0, 0}, std::nullopt, std::nullopt};
    CHECK(mentions(validate_brane(con, dependent), "dependent"));
}

TEST_CASE("av_geometry")
{
    auto con = testing::conifold();
    con.lambda = {0, 0, 0, 0};
    auto b = testing::av_brane(4, 0, 1, 2, 2, {0, 2, 0});
    const auto g = av_geometry(con, b);
    CHECK(g.c == 2);
    CHECK(g.edge == std::pair<int, int>{0, 1});

    b.m0 = std::vector<Rational>{0, 0, 0};
    CHECK_THROWS_WITH_AS(av_geometry(con, b), doctest::Contains("multiple edges"), LatticeError);
    b.m0 = std::vector<Rational>{1, 0, 0};
    CHECK_THROWS_WITH_AS(av_geometry(con, b), doctest::Contains("not on the edge"), LatticeError);

    // local P^2, outer edge F_{1,2}: m0 = (-t, -t, t) gives c = t.
    const auto p2 = testing::local_p2();
    auto pb = testing::local_p2_brane();
    for (int t = 1; t <= 3; ++t) {
        pb.m0 = std::vector<Rational>{-t, -t, t};
        pb.constants = {0, t};
        CHECK(av_geometry(p2, pb).c == t);
        CHECK(validate_brane(p2, pb).ok());
    }
    pb.constants = {0, 5};
    CHECK(mentions(validate_brane(p2, pb), "differs"));
}

TEST_CASE("gross_discriminant")
{
    using P = std::vector<std::pair<int, int>>;
    CHECK(gross_discriminant(testing::c3()) == P{{0, 1}, {0, 2}, {1, 2}});
    CHECK(gross_discriminant(testing::conifold()) == P{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
    CHECK(gross_discriminant(testing::local_p2()) == P{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto none = testing::c3();
    none.max_cones.reset();
    CHECK_THROWS_AS(gross_discriminant(none), LatticeError);
}

TEST_CASE("permute_rays carries the charge basis")
{
    const auto p = permute_rays(testing::local_p2(), {1, 0, 2, 3});
    CHECK(*p.charge_basis == IntMatrix{{1, -3, 1, 1}});
    CHECK(p.rays[0] == IntVector{1, 0, 1});
    CHECK(validate_cy(p).ok());
}

// ---------------------------------------------------------------------------
// Properties over random unimodular toric data.

namespace
{

// Random fan-free toric data: the standard basis rays plus extra rays at height 1.
ToricCYData random_toric_data(testing::Generator &g)
{
    ToricCYData d;
    d.u = {0, 0, 1};
    d.rays = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
    const int extra = g.integer(0, 3);
    while (static_cast<int>(d.rays.size()) < 3 + extra) {
        IntVector v{g.integer(-3, 3), g.integer(-3, 3), 1};
        if (std::find(d.rays.begin(), d.rays.end(), v) == d.rays.end()) {
            d.rays.push_back(v);
        }
    }
    d.lambda.assign(d.rays.size(), Rational(0));
    return d;
}

} // namespace

TEST_CASE("charge basis and dual exponents are consistent")
{
    testing::Generator g(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = random_toric_data(g);
        const auto iota = charge_basis(d);
        CHECK(iota.size() == d.m() - d.n());
        d.charge_basis = iota;
        CHECK(validate_cy(d).ok());
        const auto dual = dual_exponents(d);
        for (const auto &row : dual) {
            CHECK(std::accumulate(row.begin(), row.end(), std::int64_t{0}) == 1);
        }
        for (const auto &r : iota) {
            IntVector total(d.n(), 0);
            for (std::size_t i = 0; i < d.m(); ++i) {
                for (std::size_t j = 0; j < d.n(); ++j) {
                    total[j] += r[i] * dual[i][j];
                }
            }
            CHECK(total == IntVector(d.n(), 0));
        }
    }
}

TEST_CASE("av constant is invariant along u, not along the edge direction")
{
    // Translating m0 by t*u keeps every pairing difference <m, v_i - v_j>.
    const auto p2 = testing::local_p2();
    const AvIndices idx{1, 2, 0};
    testing::Generator g(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<Rational> m{g.rational(), g.rational(), g.rational()};
        const Rational t = g.rational();
        const std::vector<Rational> shifted{m[0], m[1], m[2] + t};
        CHECK(av_constant_at(p2, idx, m) == av_constant_at(p2, idx, shifted));
    }
    // The edge F_{1,2} points along (-1,-1,1), which does move c.
    const std::vector<Rational> a{-1, -1, 1}, b{-2, -2, 2};
    CHECK(av_constant_at(p2, idx, a) != av_constant_at(p2, idx, b));
}
