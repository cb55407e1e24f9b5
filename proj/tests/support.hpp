#ifndef SYZMIRROR_TESTS_SUPPORT_HPP
#define SYZMIRROR_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <syzmirror/fps.hpp>
#include <syzmirror/lattice.hpp>
#include <syzmirror/mirror.hpp>

namespace testing
{

using syzmirror::Rational;
using syzmirror::fps::Exponent;
using syzmirror::fps::FramePtr;
using syzmirror::fps::TruncatedSeries;

inline syzmirror::lattice::ToricCYData c3()
{
    return {{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}, {0, 0, 1}, {0, 0, 0}, std::vector<std::vector<int>>{{0, 1, 2}}, {}};
}

inline syzmirror::lattice::ToricCYData conifold()
{
    return {{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},
            {0, 0, 1},
            {0, 0, 0, 1},
            std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 3}},
            {}};
}

inline syzmirror::lattice::ToricCYData local_p2()
{
    return {{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}},
            {0, 0, 1},
            {0, 0, 0, 1},
            std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 3}, {0, 1, 3}},
            {}};
}

// Brane on the edge F_{i0 i1} with the constant on the e_{i2} - e_{i0} row.
inline syzmirror::lattice::BraneSpec av_brane(std::size_t m, int i0, int i1, int i2, Rational c,
                                              std::vector<Rational> m0 = {})
{
    syzmirror::lattice::BraneSpec b;
    syzmirror::lattice::IntVector r1(m, 0), r2(m, 0);
    r1[static_cast<std::size_t>(i1)] = 1;
    r1[static_cast<std::size_t>(i0)] = -1;
    r2[static_cast<std::size_t>(i2)] = 1;
    r2[static_cast<std::size_t>(i0)] = -1;
    b.charges = {r1, r2};
    b.constants = {0, c};
    b.phases = {0, 0};
    b.av_indices = std::vector<int>{i0, i1, i2};
    if (!m0.empty()) {
        b.m0 = m0;
    }
    return b;
}

// Inner conifold brane on F_{0,2}; open ray 1.
inline syzmirror::lattice::BraneSpec conifold_brane()
{
    return av_brane(4, 0, 2, 1, Rational(1, 2), {Rational(1, 2), Rational(-1, 2), 0});
}

// Frame {P1 = Q0, P2 = Q1 Q0^-1}.
inline syzmirror::mirror::FrameSpec conifold_frame()
{
    return {syzmirror::lattice::IntMatrix{{1, 0}, {-1, 1}}, {}, {1, -1}};
}

// Outer local P^2 brane on F_{1,2}, open ray 0.
inline syzmirror::lattice::BraneSpec local_p2_brane()
{
    return av_brane(4, 1, 2, 0, 1, {-1, -1, 1});
}

class Generator
{
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    Rational rational(int bound = 9)
    {
        const int num = integer(-bound, bound);
        const int den = integer(1, bound);
        return syzmirror::ratio(num, den);
    }

    Exponent exponent(const syzmirror::fps::Frame &f, int max_grade)
    {
        Exponent e(f.nvars(), 0);
        int budget = integer(0, max_grade);
        for (int tries = 0; tries < 4 * budget + 4 && budget > 0; ++tries) {
            const auto v = static_cast<std::size_t>(integer(0, static_cast<int>(f.nvars()) - 1));
            if (f.grading()[v] <= budget) {
                ++e[v];
                budget -= f.grading()[v];
            }
        }
        return e;
    }

    // Up to `terms` random terms; `constant` fixes the constant term when set.
    TruncatedSeries series(const FramePtr &f, int order, int terms, const Rational *constant = nullptr)
    {
        TruncatedSeries::Terms t;
        for (int k = 0; k < terms; ++k) {
            t[exponent(*f, order)] += rational();
        }
        if (constant) {
            t[Exponent(f->nvars(), 0)] = *constant;
        }
        std::erase_if(t, [](const auto &kv) { return kv.second == 0; });
        return TruncatedSeries::from_terms(f, order, std::move(t));
    }

    TruncatedSeries series_with_constant(const FramePtr &f, int order, int terms, const Rational &c)
    {
        return series(f, order, terms, &c);
    }

    FramePtr frame(int max_vars)
    {
        const int n = integer(1, max_vars);
        std::vector<std::string> names;
        std::vector<int> grading;
        for (int i = 0; i < n; ++i) {
            names.push_back("x" + std::to_string(i + 1));
            grading.push_back(integer(1, 2));
        }
        return std::make_shared<const syzmirror::fps::Frame>(names, grading);
    }

    std::mt19937_64 &engine()
    {
        return rng_;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace testing

#endif
