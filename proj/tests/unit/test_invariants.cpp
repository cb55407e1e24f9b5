#include <doctest.h>

#include <syzmirror/invariants.hpp>
#include <syzmirror/mirror.hpp>

#include "../support.hpp"

using namespace syzmirror;
using namespace syzmirror::invariants;
using fps::Frame;

namespace
{

const FramePtr Q0 = std::make_shared<const Frame>(std::vector<std::string>{"Q0"}, std::vector<int>{1},
                                                  std::vector<int>{1});

TruncatedSeries exp_of(const FramePtr &f, int order, const TruncatedSeries::Terms &terms)
{
    return fps::exp_series(TruncatedSeries::from_terms(f, order, terms));
}

} // namespace

TEST_CASE("extract_open_gw")
{
    const auto t = extract_open_gw(exp_of(Q0, 4, {{{1}, -1}}));
    CHECK(t.n == ClassMap{{{1}, 1}});
    const auto t2 = extract_open_gw(exp_of(Q0, 4, {{{2}, -2}}));
    CHECK(t2.n == ClassMap{{{2}, 1}});

    const auto flat = std::make_shared<const Frame>(std::vector<std::string>{"Q1"});
    CHECK_THROWS_AS(extract_open_gw(exp_of(flat, 3, {{{1}, 1}})), InvariantError);
    CHECK_THROWS_AS(extract_open_gw(TruncatedSeries::constant(Q0, 3, 2)), InvariantError);
}

TEST_CASE("disc_potential")
{
    CHECK(disc_potential(exp_of(Q0, 4, {{{1}, -1}})) == TruncatedSeries::generator(Q0, 4, 0));
    for (int k = 1; k <= 4; ++k) {
        CHECK(disc_potential(exp_of(Q0, 4, {{{k}, -k}})) == TruncatedSeries::monomial(Q0, 4, {k}));
    }
}

TEST_CASE("mobius")
{
    const std::vector<int> expect{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
    for (int p = 1; p <= 12; ++p) {
        CHECK(mobius(p) == expect[static_cast<std::size_t>(p - 1)]);
    }
}

TEST_CASE("multiple_cover_inversion")
{
    InvariantTable t{Q0, 6, {}, std::nullopt};
    for (int k = 1; k <= 6; ++k) {
        t.n[{k}] = Rational(1, k * k);
    }
    const auto inv = multiple_cover_inversion(t);
    CHECK(*inv.N == ClassMap{{{1}, 1}});
    CHECK(integrality_check(inv).ok());

    InvariantTable prim{Q0, 6, {{{1}, Rational(1, 3)}}, std::nullopt};
    const auto p = multiple_cover_inversion(prim);
    CHECK(p.N->at({1}) == Rational(1, 3));
    CHECK(p.N->at({2}) == Rational(-1, 12));
    CHECK(p.N->at({6}) == Rational(1, 108));
    CHECK(p.N->count({4}) == 0);
    const auto rep = integrality_check(p);
    CHECK(rep.failures.size() == 5);
    CHECK(rep.failures.front() == fps::Exponent{1});

    InvariantTable empty{Q0, 6, {}, ClassMap{}};
    CHECK(integrality_check(empty).ok());
    CHECK_THROWS_AS(integrality_check(InvariantTable{Q0, 6, {}, std::nullopt}), InvariantError);
}

TEST_CASE("conifold brane invariants")
{
    const auto b = mirror::av_mirror_brane(testing::conifold(), testing::conifold_brane(), testing::conifold_frame(), 6);
    const auto table = multiple_cover_inversion(extract_open_gw(b.z2));
    for (int k = 1; k <= 6; ++k) {
        CHECK(table.n.at({k, 0}) == Rational(1, k * k));
        CHECK(table.n.at({0, k}) == Rational(1, k * k));
    }
    CHECK(*table.N == ClassMap{{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(integrality_check(table).ok());

    const auto F = disc_potential(b.z2);
    CHECK(fps::boundary_derivative(F) == fps::log_series(b.z2).scaled(-1));
}

// ---------------------------------------------------------------------------
// Round trips on random tables.

TEST_CASE("Mobius round trip on random tables")
{
    testing::Generator g(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = g.frame(3);
        const int order = g.integer(1, 8);
        InvariantTable t{f, order, {}, std::nullopt};
        for (int k = 0; k < 6; ++k) {
            auto e = g.exponent(*f, order);
            if (f->grade(e) > 0) {
                t.n[e] = g.rational();
            }
        }
        std::erase_if(t.n, [](const auto &kv) { return kv.second == 0; });
        const auto inv = multiple_cover_inversion(t);
        CHECK(multiple_cover_sum(*inv.N, *f, order) == t.n);
    }
}

TEST_CASE("extract/exp round trip on random tables")
{
    testing::Generator g(78);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> names{"P1", "P2"};
        std::vector<int> boundary{g.integer(1, 2), -g.integer(1, 2)};
        const auto f = std::make_shared<const Frame>(names, std::vector<int>{1, 1}, boundary);
        const int order = g.integer(1, 6);
        ClassMap n;
        TruncatedSeries::Terms logterms;
        for (int k = 0; k < 5; ++k) {
            auto e = g.exponent(*f, order);
            if (f->grade(e) > 0 && f->boundary(e) != 0) {
                n[e] = g.rational();
            }
        }
        std::erase_if(n, [](const auto &kv) { return kv.second == 0; });
        for (const auto &[e, v] : n) {
            logterms[e] = -v * f->boundary(e);
        }
        const auto z2 = fps::exp_series(TruncatedSeries::from_terms(f, order, logterms));
        CHECK(extract_open_gw(z2).n == n);
        const auto F = disc_potential(z2);
        CHECK(fps::boundary_derivative(F) == fps::log_series(z2).scaled(-1));
    }
}
