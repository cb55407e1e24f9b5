#include <syzmirror/fps.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace syzmirror::fps
{

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::vector<std::string> names, std::vector<int> grading, std::vector<int> boundary_grading)
    : names_(std::move(names)), grading_(std::move(grading)), boundary_(std::move(boundary_grading))
{
    if (grading_.empty()) {
        grading_.assign(names_.size(), 1);
    }
    if (boundary_.empty()) {
        boundary_.assign(names_.size(), 0);
    }
    if (grading_.size() != names_.size()) {
        throw SeriesError("frame grading has " + std::to_string(grading_.size()) + " entries for "
                          + std::to_string(names_.size()) + " generators");
    }
    if (boundary_.size() != names_.size()) {
        throw SeriesError("frame boundary grading has " + std::to_string(boundary_.size()) + " entries for "
                          + std::to_string(names_.size()) + " generators");
    }
    for (int g : grading_) {
        if (g < 1) {
            throw SeriesError("frame grading entries must be >= 1");
        }
    }
}

FramePtr Frame::make(std::size_t nvars, const std::string &prefix, int first_index)
{
    std::vector<std::string> names;
    names.reserve(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        names.push_back(prefix + std::to_string(static_cast<int>(i) + first_index));
    }
    return std::make_shared<const Frame>(std::move(names));
}

int Frame::grade(const Exponent &e) const
{
    int g = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        g += grading_[i] * e[i];
    }
    return g;
}

int Frame::boundary(const Exponent &e) const
{
    int b = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        b += boundary_[i] * e[i];
    }
    return b;
}

// ---------------------------------------------------------------------------
// TruncatedSeries

namespace
{

void check_frames(const TruncatedSeries &a, const TruncatedSeries &b)
{
    if (!same_frame(a, b)) {
        throw FrameMismatch("series live on different frames");
    }
}

Exponent add_exponents(const Exponent &a, const Exponent &b)
{
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

void accumulate(TruncatedSeries::Terms &terms, Exponent e, const Rational &c)
{
    auto [it, inserted] = terms.try_emplace(std::move(e), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms.erase(it);
        }
    }
}

} // namespace

bool same_frame(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a.frame_ptr() == b.frame_ptr() || a.frame() == b.frame();
}

TruncatedSeries::TruncatedSeries(FramePtr frame, int order) : frame_(std::move(frame)), order_(order)
{
    if (!frame_) {
        throw SeriesError("series requires a frame");
    }
    if (order_ < 0) {
        throw SeriesError("truncation order must be nonnegative");
    }
}

TruncatedSeries TruncatedSeries::from_terms(FramePtr frame, int order, Terms terms)
{
    TruncatedSeries s(std::move(frame), order);
    for (auto it = terms.begin(); it != terms.end();) {
        const auto &e = it->first;
        if (e.size() != s.frame_->nvars()) {
            throw SeriesError("exponent length does not match frame");
        }
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) {
            throw SeriesError("negative exponent in power series");
        }
        if (it->second == 0 || s.frame_->grade(e) > order) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    s.terms_ = std::move(terms);
    return s;
}

TruncatedSeries TruncatedSeries::constant(FramePtr frame, int order, const Rational &c)
{
    const auto n = frame->nvars();
    return monomial(std::move(frame), order, Exponent(n, 0), c);
}

TruncatedSeries TruncatedSeries::monomial(FramePtr frame, int order, const Exponent &e, const Rational &c)
{
    Terms t;
    t.emplace(e, c);
    return from_terms(std::move(frame), order, std::move(t));
}

TruncatedSeries TruncatedSeries::generator(FramePtr frame, int order, std::size_t var)
{
    if (var >= frame->nvars()) {
        throw SeriesError("generator index out of range");
    }
    Exponent e(frame->nvars(), 0);
    e[var] = 1;
    return monomial(std::move(frame), order, e);
}

Rational TruncatedSeries::constant_term() const
{
    auto it = terms_.find(Exponent(frame_->nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::coefficient(const Exponent &e) const
{
    if (e.size() != frame_->nvars()) {
        throw SeriesError("exponent length does not match frame");
    }
    if (frame_->grade(e) > order_) {
        throw PrecisionError("coefficient of grade " + std::to_string(frame_->grade(e))
                             + " requested from a series truncated at order " + std::to_string(order_));
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int TruncatedSeries::min_grade() const
{
    int g = order_ + 1;
    for (const auto &[e, c] : terms_) {
        g = std::min(g, frame_->grade(e));
    }
    return g;
}

TruncatedSeries TruncatedSeries::truncated(int order) const
{
    TruncatedSeries r(frame_, std::min(order, order_));
    for (const auto &[e, c] : terms_) {
        if (frame_->grade(e) <= r.order_) {
            r.terms_.emplace_hint(r.terms_.end(), e, c);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::up_to_grade(int g) const
{
    TruncatedSeries r(frame_, order_);
    for (const auto &[e, c] : terms_) {
        if (frame_->grade(e) <= g) {
            r.terms_.emplace_hint(r.terms_.end(), e, c);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rational &c) const
{
    TruncatedSeries r(frame_, order_);
    if (c == 0) {
        return r;
    }
    for (const auto &[e, v] : terms_) {
        r.terms_.emplace_hint(r.terms_.end(), e, v * c);
    }
    return r;
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &other)
{
    check_frames(*this, other);
    if (other.order_ < order_) {
        *this = truncated(other.order_);
    }
    for (const auto &[e, c] : other.terms_) {
        if (frame_->grade(e) <= order_) {
            accumulate(terms_, e, c);
        }
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &other)
{
    check_frames(*this, other);
    if (other.order_ < order_) {
        *this = truncated(other.order_);
    }
    for (const auto &[e, c] : other.terms_) {
        if (frame_->grade(e) <= order_) {
            accumulate(terms_, e, -c);
        }
    }
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    check_frames(a, b);
    const int order = std::min(a.order_, b.order_);
    const Frame &f = *a.frame_;

    // Second operand sorted by grade so the inner loop can stop early.
    std::vector<std::pair<int, const TruncatedSeries::Terms::value_type *>> rhs;
    rhs.reserve(b.terms_.size());
    for (const auto &kv : b.terms_) {
        rhs.emplace_back(f.grade(kv.first), &kv);
    }
    std::stable_sort(rhs.begin(), rhs.end(), [](const auto &x, const auto &y) { return x.first < y.first; });

    TruncatedSeries::Terms out;
    Rational prod;
    for (const auto &[ea, ca] : a.terms_) {
        const int ga = f.grade(ea);
        for (const auto &[gb, kv] : rhs) {
            if (ga + gb > order) {
                break;
            }
            prod = ca * kv->second;
            accumulate(out, add_exponents(ea, kv->first), prod);
        }
    }
    TruncatedSeries r(a.frame_, order);
    r.terms_ = std::move(out);
    return r;
}

TruncatedSeries &TruncatedSeries::operator*=(const TruncatedSeries &other)
{
    return *this = *this * other;
}

bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return same_frame(a, b) && a.order_ == b.order_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Elementary functions

TruncatedSeries add(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a + b;
}

TruncatedSeries mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a * b;
}

namespace
{

// Number of powers of t (zero constant term) that survive truncation.
int power_count(const TruncatedSeries &t)
{
    const int g = t.min_grade();
    return g > t.order() ? 0 : t.order() / g;
}

} // namespace

TruncatedSeries exp_series(const TruncatedSeries &s)
{
    if (s.constant_term() != 0) {
        throw ConstantTermError("exp_series requires a zero constant term");
    }
    const auto one = TruncatedSeries::constant(s.frame_ptr(), s.order(), 1);
    auto r = one;
    for (int k = power_count(s); k >= 1; --k) {
        r = one + (s * r).scaled(ratio(1, k));
    }
    return r;
}

TruncatedSeries log_series(const TruncatedSeries &s)
{
    if (s.constant_term() != 1) {
        throw ConstantTermError("log_series requires constant term 1");
    }
    const auto t = s - TruncatedSeries::constant(s.frame_ptr(), s.order(), 1);
    const int count = power_count(t);
    if (count == 0) {
        return TruncatedSeries(s.frame_ptr(), s.order());
    }
    auto sign = [](int k) { return k % 2 == 1 ? ratio(1, k) : ratio(-1, k); };
    auto r = TruncatedSeries::constant(s.frame_ptr(), s.order(), sign(count));
    for (int k = count - 1; k >= 1; --k) {
        r = TruncatedSeries::constant(s.frame_ptr(), s.order(), sign(k)) + t * r;
    }
    return t * r;
}

TruncatedSeries inverse(const TruncatedSeries &s)
{
    const Rational c = s.constant_term();
    if (c == 0) {
        throw ConstantTermError("series with zero constant term is not invertible");
    }
    const Rational cinv = 1 / c;
    const auto one = TruncatedSeries::constant(s.frame_ptr(), s.order(), 1);
    const auto t = s.scaled(cinv) - one;
    // 1/(1+t) = 1 - t(1 - t(1 - ...))
    auto r = one;
    for (int k = power_count(t); k >= 1; --k) {
        r = one - t * r;
    }
    return r.scaled(cinv);
}

TruncatedSeries pow_int(const TruncatedSeries &s, long k)
{
    if (k == 0) {
        return TruncatedSeries::constant(s.frame_ptr(), s.order(), 1);
    }
    if (k < 0) {
        if (s.constant_term() == 0) {
            throw ConstantTermError("negative power of a non-unit series");
        }
        return pow_int(inverse(s), -k);
    }
    auto result = TruncatedSeries::constant(s.frame_ptr(), s.order(), 1);
    auto base = s;
    while (true) {
        if (k & 1) {
            result *= base;
        }
        k >>= 1;
        if (k == 0) {
            break;
        }
        base *= base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Composition

TruncatedSeries substitute(const TruncatedSeries &s, std::span<const TruncatedSeries> images)
{
    if (images.empty()) {
        throw SeriesError("substitute needs an explicit target frame when there are no images");
    }
    int order = images.front().order();
    for (const auto &im : images) {
        order = std::min(order, im.order());
    }
    return substitute(s, images, images.front().frame_ptr(), order);
}

TruncatedSeries substitute(const TruncatedSeries &s, std::span<const TruncatedSeries> images, FramePtr target,
                           int target_order)
{
    const Frame &src = s.frame();
    if (images.size() != src.nvars()) {
        throw SeriesError("substitute needs one image per variable (" + std::to_string(src.nvars()) + "), got "
                          + std::to_string(images.size()));
    }

    // Lowest grade each image can contribute, and the grade below which the
    // composite is fully determined by the known terms of s.
    std::vector<int> low(images.size());
    int order = target_order;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto &im = images[i];
        if (!(im.frame() == *target)) {
            throw FrameMismatch("substitution images live on different frames");
        }
        if (im.constant_term() != 0) {
            throw ConstantTermError("substitution image " + std::to_string(i) + " has a nonzero constant term");
        }
        order = std::min(order, im.order());
        low[i] = im.min_grade();
        // Unknown terms of s have src-grade >= s.order() + 1, hence image
        // grade >= ceil((s.order() + 1) * low / w).
        const long num = static_cast<long>(s.order() + 1) * low[i];
        const long w = src.grading()[i];
        const long bound = (num + w - 1) / w - 1;
        if (bound < order) {
            order = static_cast<int>(bound);
        }
    }

    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    auto power = [&](std::size_t i, int k) -> const TruncatedSeries & {
        auto &cache = powers[i];
        if (cache.empty()) {
            cache.push_back(TruncatedSeries::constant(target, order, 1));
        }
        while (static_cast<int>(cache.size()) <= k) {
            cache.push_back((cache.back() * images[i]).truncated(order));
        }
        return cache[static_cast<std::size_t>(k)];
    };

    TruncatedSeries result(target, order);
    for (const auto &[e, c] : s.terms()) {
        long lower = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            lower += static_cast<long>(low[i]) * e[i];
        }
        if (lower > order) {
            continue;
        }
        auto term = TruncatedSeries::constant(target, order, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                term *= power(i, e[i]);
            }
        }
        result += term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Derivations

TruncatedSeries weighted_derivative(const TruncatedSeries &s, std::span<const int> weights)
{
    if (weights.size() != s.frame().nvars()) {
        throw SeriesError("derivative weights do not match frame");
    }
    TruncatedSeries::Terms out;
    for (const auto &[e, c] : s.terms()) {
        long w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            w += static_cast<long>(weights[i]) * e[i];
        }
        if (w != 0) {
            out.emplace_hint(out.end(), e, c * Rational(w));
        }
    }
    return TruncatedSeries::from_terms(s.frame_ptr(), s.order(), std::move(out));
}

TruncatedSeries log_derivative(const TruncatedSeries &s, std::size_t var)
{
    if (var >= s.frame().nvars()) {
        throw SeriesError("log_derivative variable index out of range");
    }
    std::vector<int> w(s.frame().nvars(), 0);
    w[var] = 1;
    return weighted_derivative(s, w);
}

TruncatedSeries boundary_derivative(const TruncatedSeries &s)
{
    return weighted_derivative(s, s.frame().boundary_grading());
}

Rational coefficient(const TruncatedSeries &s, const Exponent &e)
{
    return s.coefficient(e);
}

// ---------------------------------------------------------------------------
// Fixed-point systems

std::vector<TruncatedSeries> fixed_point_system(std::span<const TruncatedSeries> prefactors,
                                                std::span<const UnitMap> units, FramePtr frame, int order)
{
    if (prefactors.size() != units.size()) {
        throw SeriesError("fixed_point_system needs one update map per unknown");
    }
    std::vector<TruncatedSeries> x;
    x.reserve(prefactors.size());
    for (const auto &p : prefactors) {
        if (!(p.frame() == *frame)) {
            throw FrameMismatch("fixed-point prefactor lives on a different frame");
        }
        if (p.constant_term() != 0) {
            throw ConstantTermError("fixed-point prefactor must have zero constant term");
        }
        x.push_back(p.truncated(order));
    }

    for (int pass = 0; pass <= order + 1; ++pass) {
        std::vector<TruncatedSeries> next;
        next.reserve(x.size());
        for (std::size_t a = 0; a < x.size(); ++a) {
            auto u = units[a](std::span<const TruncatedSeries>(x));
            if (!(u.frame() == *frame)) {
                throw FrameMismatch("fixed-point update map returned a series on a different frame");
            }
            if (u.constant_term() != 1) {
                throw ConstantTermError("fixed-point update map " + std::to_string(a) + " is not a unit series");
            }
            next.push_back((prefactors[a] * u).truncated(order));
        }
        bool stable = true;
        for (std::size_t a = 0; a < x.size(); ++a) {
            if (!(next[a].up_to_grade(pass) == x[a].up_to_grade(pass))) {
                throw NonConvergence("fixed-point pass " + std::to_string(pass) + " altered an already fixed grade");
            }
            stable = stable && next[a] == x[a];
        }
        if (stable) {
            return x;
        }
        x = std::move(next);
    }
    throw NonConvergence("fixed-point iteration did not stabilize within " + std::to_string(order + 1) + " passes");
}

// ---------------------------------------------------------------------------

namespace
{

void enumerate(const Frame &f, int lo, int hi, std::size_t var, int grade, Exponent &cur, std::vector<Exponent> &out)
{
    if (var == f.nvars()) {
        if (grade >= lo) {
            out.push_back(cur);
        }
        return;
    }
    const int w = f.grading()[var];
    for (int k = 0; grade + k * w <= hi; ++k) {
        cur[var] = k;
        enumerate(f, lo, hi, var + 1, grade + k * w, cur, out);
    }
    cur[var] = 0;
}

} // namespace

std::vector<Exponent> exponents_in_grade_range(const Frame &frame, int lo, int hi)
{
    std::vector<Exponent> out;
    if (hi < 0 || lo > hi) {
        return out;
    }
    Exponent cur(frame.nvars(), 0);
    enumerate(frame, lo, hi, 0, 0, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_series(const TruncatedSeries &s)
{
    const Frame &f = s.frame();
    std::vector<std::pair<int, const TruncatedSeries::Terms::value_type *>> order;
    for (const auto &kv : s.terms()) {
        order.emplace_back(f.grade(kv.first), &kv);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return a.first < b.first; });

    std::string out;
    for (const auto &[g, kv] : order) {
        const auto &[e, c] = *kv;
        Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : "*") + f.names()[i];
            if (e[i] != 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    if (out.empty()) {
        out = "0";
    }
    return out + " + O(" + std::to_string(s.order() + 1) + ")";
}

} // namespace syzmirror::fps
