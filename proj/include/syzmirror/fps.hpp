#ifndef SYZMIRROR_FPS_HPP
#define SYZMIRROR_FPS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <syzmirror/rational.hpp>

// Exact multivariate truncated formal power series.
//
// A series lives on a Frame (a set of formal generators, each carrying a
// positive grade and an integer boundary grade) and is truncated at an order
// N: only monomials of weighted grade <= N are stored. Terms are kept in a
// sparse, lexicographically ordered exponent map, so iteration (and every
// serialized form) is deterministic.
namespace syzmirror::fps
{

using Exponent = std::vector<int>;

// Base for every error raised by this module.
struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FrameMismatch : SeriesError {
    using SeriesError::SeriesError;
};

// A precondition on a constant term (exp/log/inverse/substitution) failed.
struct ConstantTermError : SeriesError {
    using SeriesError::SeriesError;
};

struct PrecisionError : SeriesError {
    using SeriesError::SeriesError;
};

struct NonConvergence : SeriesError {
    using SeriesError::SeriesError;
};

class Frame
{
public:
    // grading defaults to all 1, boundary_grading to all 0.
    explicit Frame(std::vector<std::string> names, std::vector<int> grading = {},
                   std::vector<int> boundary_grading = {});

    // Generators named prefix1, prefix2, ... (or prefix0, ... when first_index is 0).
    static std::shared_ptr<const Frame> make(std::size_t nvars, const std::string &prefix, int first_index = 1);

    std::size_t nvars() const noexcept
    {
        return names_.size();
    }
    const std::vector<std::string> &names() const noexcept
    {
        return names_;
    }
    const std::vector<int> &grading() const noexcept
    {
        return grading_;
    }
    const std::vector<int> &boundary_grading() const noexcept
    {
        return boundary_;
    }

    int grade(const Exponent &e) const;
    int boundary(const Exponent &e) const;

    bool operator==(const Frame &other) const = default;

private:
    std::vector<std::string> names_;
    std::vector<int> grading_;
    std::vector<int> boundary_;
};

using FramePtr = std::shared_ptr<const Frame>;

class TruncatedSeries
{
public:
    using Terms = std::map<Exponent, Rational>;

    // The zero series.
    TruncatedSeries(FramePtr frame, int order);

    // Drops zero coefficients and terms above the order; throws on
    // exponents of the wrong length or with negative entries.
    static TruncatedSeries from_terms(FramePtr frame, int order, Terms terms);
    static TruncatedSeries constant(FramePtr frame, int order, const Rational &c);
    static TruncatedSeries monomial(FramePtr frame, int order, const Exponent &e, const Rational &c = 1);
    static TruncatedSeries generator(FramePtr frame, int order, std::size_t var);

    const Frame &frame() const noexcept
    {
        return *frame_;
    }
    const FramePtr &frame_ptr() const noexcept
    {
        return frame_;
    }
    int order() const noexcept
    {
        return order_;
    }
    const Terms &terms() const noexcept
    {
        return terms_;
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    Rational constant_term() const;
    // Coefficient of x^e; throws PrecisionError when grade(e) > order.
    Rational coefficient(const Exponent &e) const;
    // Smallest grade among stored terms, order + 1 for the zero series.
    int min_grade() const;

    TruncatedSeries truncated(int order) const;
    // Terms of grade <= g only (order unchanged).
    TruncatedSeries up_to_grade(int g) const;
    TruncatedSeries scaled(const Rational &c) const;

    TruncatedSeries &operator+=(const TruncatedSeries &other);
    TruncatedSeries &operator-=(const TruncatedSeries &other);
    TruncatedSeries &operator*=(const TruncatedSeries &other);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a += b;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a -= b;
    }
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator-(const TruncatedSeries &a)
    {
        return a.scaled(-1);
    }

    // Same frame, same order, same terms.
    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b);

private:
    FramePtr frame_;
    int order_;
    Terms terms_;
};

bool same_frame(const TruncatedSeries &a, const TruncatedSeries &b);

TruncatedSeries add(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries mul(const TruncatedSeries &a, const TruncatedSeries &b);

// exp(s) for s with zero constant term. A constant-zero input returns 1.
TruncatedSeries exp_series(const TruncatedSeries &s);
// log(s) for s with constant term 1. A constant-one input returns 0.
TruncatedSeries log_series(const TruncatedSeries &s);
// Multiplicative inverse of a unit series (nonzero constant term).
TruncatedSeries inverse(const TruncatedSeries &s);
TruncatedSeries pow_int(const TruncatedSeries &s, long k);

// Formal composition s(images[0], ..., images[n-1]). Every image must have
// zero constant term; the result lives on the images' frame. The result
// order is the largest grade for which the composite is fully determined
// by the known terms of s and of the images.
TruncatedSeries substitute(const TruncatedSeries &s, std::span<const TruncatedSeries> images);
// Same, with an explicit target (needed when s has no variables).
TruncatedSeries substitute(const TruncatedSeries &s, std::span<const TruncatedSeries> images, FramePtr target,
                           int target_order);

// c x^e -> c e[var] x^e.
TruncatedSeries log_derivative(const TruncatedSeries &s, std::size_t var);
// c x^e -> c <weights, e> x^e.
TruncatedSeries weighted_derivative(const TruncatedSeries &s, std::span<const int> weights);
// Weighted derivative along the frame's boundary grading.
TruncatedSeries boundary_derivative(const TruncatedSeries &s);

Rational coefficient(const TruncatedSeries &s, const Exponent &e);

// Unit-series-valued update map U_a(x) of a fixed-point system.
using UnitMap = std::function<TruncatedSeries(std::span<const TruncatedSeries>)>;

// Solves x_a = prefactor_a * U_a(x) for a = 0..k-1, where every prefactor has
// zero constant term and every U_a(x) has constant term 1. Iterates from
// x_a = prefactor_a; each pass fixes at least one more grade, so at most
// order + 1 passes are needed. Throws NonConvergence if a pass changes an
// already-fixed grade or the iteration has not stabilized by then.
std::vector<TruncatedSeries> fixed_point_system(std::span<const TruncatedSeries> prefactors,
                                                std::span<const UnitMap> units, FramePtr frame, int order);

// Human-readable form, terms by increasing grade: "1 - 2*Q1 + 5*Q1^2 + O(3)".
std::string format_series(const TruncatedSeries &s);

// All exponent vectors with nonnegative entries and weighted grade in [lo, hi].
std::vector<Exponent> exponents_in_grade_range(const Frame &frame, int lo, int hi);

} // namespace syzmirror::fps

#endif
