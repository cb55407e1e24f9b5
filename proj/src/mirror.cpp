#include <syzmirror/mirror.hpp>

#include <algorithm>
#include <numeric>

namespace syzmirror::mirror
{

using fps::Exponent;
using fps::Frame;

namespace
{

std::size_t closed_count(const ToricCYData &data)
{
    return data.m() >= data.n() ? data.m() - data.n() : 0;
}

// Copies a series on r variables into a frame with `offset` extra leading variables.
TruncatedSeries embed(const TruncatedSeries &s, FramePtr target, std::size_t offset)
{
    TruncatedSeries::Terms terms;
    for (const auto &[e, c] : s.terms()) {
        Exponent x(offset, 0);
        x.insert(x.end(), e.begin(), e.end());
        terms.emplace(std::move(x), c);
    }
    return TruncatedSeries::from_terms(std::move(target), s.order(), std::move(terms));
}

// sum_j row_j A_j
TruncatedSeries combine(const IntVector &row, const std::vector<TruncatedSeries> &A, FramePtr frame, int order)
{
    TruncatedSeries s(std::move(frame), order);
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0 && !A[j].is_zero()) {
            s += A[j].scaled(Rational(static_cast<long>(row[j])));
        }
    }
    return s;
}

std::vector<TruncatedSeries> closed_inverse(const ToricCYData &data, int order, FramePtr qframe, FramePtr Qframe,
                                            std::vector<TruncatedSeries> &A_composed)
{
    const auto iota = lattice::resolved_charge_basis(data);
    const std::size_t r = closed_count(data);
    const auto A = a_series_all(data, order, qframe);

    std::vector<TruncatedSeries> exponents;
    for (std::size_t a = 0; a < r; ++a) {
        exponents.push_back(combine(iota[a], A, qframe, order).scaled(-1));
    }
    std::vector<TruncatedSeries> prefactors;
    std::vector<fps::UnitMap> units;
    for (std::size_t a = 0; a < r; ++a) {
        prefactors.push_back(TruncatedSeries::generator(Qframe, order, a));
        units.emplace_back([&, a](std::span<const TruncatedSeries> x) {
            return exp_series(fps::substitute(exponents[a], x, Qframe, order));
        });
    }
    auto q = fps::fixed_point_system(prefactors, units, Qframe, order);

    A_composed.clear();
    for (const auto &Aj : A) {
        A_composed.push_back(fps::substitute(Aj, q, Qframe, order));
    }
    return q;
}

std::string monomial_text(const IntVector &physical)
{
    std::string s;
    for (std::size_t i = 0; i < physical.size(); ++i) {
        if (physical[i] == 0) {
            continue;
        }
        s += (s.empty() ? "" : "*") + ("Q" + std::to_string(i));
        if (physical[i] != 1) {
            s += "^" + std::to_string(physical[i]);
        }
    }
    return s.empty() ? "1" : s;
}

MirrorCurve curve_from_coefficients(const ToricCYData &data, std::vector<TruncatedSeries> coeffs, FramePtr frame,
                                    int order)
{
    const auto dual = lattice::dual_exponents(data);
    const std::size_t n = data.n();
    const std::size_t r = closed_count(data);
    MirrorCurve curve;
    curve.n_z = n - 1;
    curve.frame = frame;
    curve.order = order;
    for (std::size_t i = 0; i < data.m(); ++i) {
        CurveTerm t{IntVector(dual[i].begin() + 1, dual[i].end()), IntVector(r, 0), std::move(coeffs[i])};
        if (i >= n) {
            t.q_exponents[i - n] = 1;
        }
        curve.terms.push_back(std::move(t));
    }
    return curve;
}

TruncatedSeries lowest_grade_terms(const TruncatedSeries &s)
{
    const int g = s.min_grade();
    TruncatedSeries::Terms terms;
    for (const auto &[e, c] : s.terms()) {
        if (s.frame().grade(e) == g) {
            terms.emplace(e, c);
        }
    }
    return TruncatedSeries::from_terms(s.frame_ptr(), s.order(), std::move(terms));
}

} // namespace

// ---------------------------------------------------------------------------
// Mirror maps

Rational coefficient_E(const IntMatrix &iota, const IntVector &alpha, int i)
{
    const auto D = lattice::divisor_pairing(iota, alpha);
    const auto lead = -D.at(static_cast<std::size_t>(i)) - 1;
    if (lead < 0) {
        return 0;
    }
    Rational denom = 1;
    for (std::size_t j = 0; j < D.size(); ++j) {
        if (static_cast<int>(j) == i) {
            continue;
        }
        if (D[j] < 0) {
            return 0;
        }
        denom *= factorial(static_cast<long>(D[j]));
    }
    Rational v = factorial(static_cast<long>(lead)) / denom;
    return lead % 2 == 0 ? v : Rational(-v);
}

FramePtr closed_frame(std::size_t r, const std::string &prefix)
{
    return Frame::make(r, prefix, 1);
}

std::vector<TruncatedSeries> a_series_all(const ToricCYData &data, int order, FramePtr frame)
{
    const auto iota = lattice::resolved_charge_basis(data);
    const std::size_t r = closed_count(data);
    if (frame->nvars() < r) {
        throw MirrorError("frame too small for the closed variables");
    }
    const std::size_t offset = frame->nvars() - r;
    const auto closed = closed_frame(r, "q");
    const auto alphas = fps::exponents_in_grade_range(*closed, 1, order);

    std::vector<TruncatedSeries> out;
    for (std::size_t i = 0; i < data.m(); ++i) {
        TruncatedSeries::Terms terms;
        for (const auto &e : alphas) {
            const auto c = coefficient_E(iota, IntVector(e.begin(), e.end()), static_cast<int>(i));
            if (c != 0) {
                Exponent x(offset, 0);
                x.insert(x.end(), e.begin(), e.end());
                terms.emplace(std::move(x), c);
            }
        }
        out.push_back(TruncatedSeries::from_terms(frame, order, std::move(terms)));
    }
    return out;
}

TruncatedSeries a_series(const ToricCYData &data, int i, int order)
{
    auto all = a_series_all(data, order, closed_frame(closed_count(data), "q"));
    return all.at(static_cast<std::size_t>(i));
}

IntVector open_charge(const BraneSpec &brane, std::size_t m)
{
    const auto idx = lattice::av_indices(brane);
    IntVector l(m, 0);
    l.at(static_cast<std::size_t>(idx.edge)) += 1;
    l.at(static_cast<std::size_t>(idx.open)) -= 1;
    return l;
}

MirrorMapData mirror_map(const ToricCYData &data, int order, const BraneSpec *brane)
{
    const std::size_t r = closed_count(data);
    const auto iota = lattice::resolved_charge_basis(data);
    MirrorMapData out{MirrorMapData::Direction::ComplexToKahler, order, nullptr, brane != nullptr, {}, {}};
    out.frame = brane ? Frame::make(r + 1, "q", 0) : closed_frame(r, "q");
    out.A = a_series_all(data, order, out.frame);
    const std::size_t offset = brane ? 1 : 0;
    if (brane) {
        const auto l0 = open_charge(*brane, data.m());
        out.images.push_back(TruncatedSeries::generator(out.frame, order, 0)
                             * exp_series(combine(l0, out.A, out.frame, order)));
    }
    for (std::size_t a = 0; a < r; ++a) {
        out.images.push_back(TruncatedSeries::generator(out.frame, order, a + offset)
                             * exp_series(combine(iota[a], out.A, out.frame, order)));
    }
    return out;
}

MirrorMapData inverse_mirror_map(const ToricCYData &data, int order, const BraneSpec *brane)
{
    const std::size_t r = closed_count(data);
    const auto Qclosed = closed_frame(r, "Q");
    std::vector<TruncatedSeries> A;
    auto q = closed_inverse(data, order, closed_frame(r, "q"), Qclosed, A);

    MirrorMapData out{MirrorMapData::Direction::KahlerToComplex, order, Qclosed, brane != nullptr, {}, {}};
    if (!brane) {
        out.A = std::move(A);
        out.images = std::move(q);
        return out;
    }
    out.frame = Frame::make(r + 1, "Q", 0);
    for (const auto &a : A) {
        out.A.push_back(embed(a, out.frame, 1));
    }
    const auto l0 = open_charge(*brane, data.m());
    out.images.push_back(TruncatedSeries::generator(out.frame, order, 0)
                         * exp_series(combine(l0, out.A, out.frame, order).scaled(-1)));
    for (const auto &qa : q) {
        out.images.push_back(embed(qa, out.frame, 1));
    }
    return out;
}

std::vector<TruncatedSeries> fiber_open_gw(const ToricCYData &data, int order)
{
    const auto inv = inverse_mirror_map(data, order);
    std::vector<TruncatedSeries> out;
    for (const auto &a : inv.A) {
        out.push_back(exp_series(a.scaled(-1)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curve

MirrorCurve build_curve(const ToricCYData &data, bool corrected, int order)
{
    const auto frame = closed_frame(closed_count(data), "Q");
    std::vector<TruncatedSeries> coeffs;
    if (corrected) {
        coeffs = fiber_open_gw(data, order);
    } else {
        coeffs.assign(data.m(), TruncatedSeries::constant(frame, order, 1));
    }
    return curve_from_coefficients(data, std::move(coeffs), frame, order);
}

std::string MirrorCurve::pretty() const
{
    std::string out;
    for (const auto &t : terms) {
        std::vector<std::string> parts;
        if (!(t.coefficient.size() == 1 && t.coefficient.constant_term() == 1)) {
            parts.push_back("(" + fps::format_series(t.coefficient) + ")");
        }
        for (std::size_t a = 0; a < t.q_exponents.size(); ++a) {
            if (t.q_exponents[a] != 0) {
                parts.push_back(frame->names()[a]
                                + (t.q_exponents[a] == 1 ? "" : "^" + std::to_string(t.q_exponents[a])));
            }
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < t.z_exponents.size(); ++j) {
                const auto e = t.z_exponents[j];
                if ((pass == 0 && e > 0) || (pass == 1 && e < 0)) {
                    parts.push_back("z" + std::to_string(j + 1) + (e == 1 ? "" : "^" + std::to_string(e)));
                }
            }
        }
        std::string term;
        for (const auto &p : parts) {
            term += (term.empty() ? "" : "*") + p;
        }
        out += (out.empty() ? "" : " + ") + (term.empty() ? "1" : term);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Naive branes

std::vector<BraneEquation> naive_brane(const ToricCYData &data, const BraneSpec &brane)
{
    const auto dual = lattice::dual_exponents(data);
    const std::size_t n = data.n();
    const std::size_t m = data.m();
    std::vector<BraneEquation> out;
    for (std::size_t a = 0; a < brane.charges.size(); ++a) {
        const auto &l = brane.charges[a];
        if (l.size() != m) {
            throw MirrorError("charge row " + std::to_string(a) + " has the wrong length");
        }
        if (std::accumulate(l.begin(), l.end(), std::int64_t{0}) != 0) {
            throw MirrorError("charge row " + std::to_string(a) + " is not special (l.1 != 0)");
        }
        BraneEquation eq;
        for (std::size_t j = 1; j < n; ++j) {
            std::int64_t e = -l[j];
            for (std::size_t i = n; i < m; ++i) {
                e -= l[i] * dual[i][j];
            }
            eq.z_exponents.push_back(e);
        }
        for (std::size_t i = n; i < m; ++i) {
            eq.q_exponents.push_back(-l[i]);
        }
        eq.c = a < brane.constants.size() ? brane.constants[a] : Rational(0);
        eq.phase = a < brane.phases.size() ? brane.phases[a] : Rational(0);
        out.push_back(std::move(eq));
    }
    return out;
}

std::vector<int> av_permutation(const ToricCYData &data, const BraneSpec &brane)
{
    if (data.n() != 3) {
        throw MirrorError("brane coordinates need a threefold (n = 3)");
    }
    const auto idx = lattice::av_indices(brane);
    std::vector<int> perm{idx.vertex, idx.open, idx.edge};
    for (int i = 0; i < static_cast<int>(data.m()); ++i) {
        if (std::find(perm.begin(), perm.end(), i) == perm.end()) {
            perm.push_back(i);
        }
    }
    IntMatrix lead;
    for (int k = 0; k < 3; ++k) {
        lead.push_back(data.rays.at(static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])));
    }
    const auto d = lattice::determinant(lead);
    if (d != 1 && d != -1) {
        throw MirrorError("rays v_" + std::to_string(idx.vertex) + ", v_" + std::to_string(idx.open) + ", v_"
                          + std::to_string(idx.edge) + " are not a lattice basis (determinant " + std::to_string(d)
                          + ")");
    }
    return perm;
}

BraneSpec permute_brane(const BraneSpec &brane, const std::vector<int> &perm)
{
    std::vector<int> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        inv[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
    }
    BraneSpec out = brane;
    for (auto &row : out.charges) {
        IntVector r;
        for (int p : perm) {
            r.push_back(row.at(static_cast<std::size_t>(p)));
        }
        row = std::move(r);
    }
    if (out.av_indices) {
        for (auto &i : *out.av_indices) {
            i = inv.at(static_cast<std::size_t>(i));
        }
    }
    return out;
}

NaiveAvCoordinates naive_av_brane(const ToricCYData &data, const BraneSpec &brane)
{
    NaiveAvCoordinates out;
    out.permutation = av_permutation(data, brane);
    const auto pdata = lattice::permute_rays(data, out.permutation);
    const auto pbrane = permute_brane(brane, out.permutation);
    out.equations = naive_brane(pdata, pbrane);
    for (std::size_t a = 0; a < pbrane.charges.size() && a < out.equations.size(); ++a) {
        const auto &eq = out.equations[a];
        const bool closed_free = std::all_of(eq.q_exponents.begin(), eq.q_exponents.end(), [](auto x) { return x == 0; });
        if (pbrane.charges[a][1] == 1) {
            // z1^{-1} = exp(c + i phi), i.e. z1 = exp(-c - i phi) = Q0.
            out.z1_is_open_parameter = closed_free && eq.z_exponents == IntVector{-1, 0};
        } else if (pbrane.charges[a][2] == 1) {
            out.z2_is_one = closed_free && eq.z_exponents == IntVector{0, -1} && eq.c == 0
                            && is_integer(eq.phase / 2);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brane frames

BraneFrame::BraneFrame(std::size_t r, const FrameSpec &spec) : r_(r)
{
    const std::size_t d = r + 1;
    if (spec.generators) {
        generators_ = *spec.generators;
    } else {
        generators_.assign(d, IntVector(d, 0));
        for (std::size_t i = 0; i < d; ++i) {
            generators_[i][i] = 1;
        }
    }
    if (generators_.size() != d
        || std::any_of(generators_.begin(), generators_.end(), [d](const auto &g) { return g.size() != d; })) {
        throw MirrorError("brane frame needs " + std::to_string(d) + " generators over (Q0..Q" + std::to_string(r)
                          + ")");
    }
    const auto det = lattice::determinant(generators_);
    if (det != 1 && det != -1) {
        throw MirrorError("brane frame generators are not unimodular (determinant " + std::to_string(det) + ")");
    }
    // inverse_[i] = coordinates of the physical unit vector e_i in the generators.
    for (std::size_t i = 0; i < d; ++i) {
        IntVector e(d, 0);
        e[i] = 1;
        inverse_.push_back(lattice::solve_coordinates(generators_, e));
    }

    bool unit_vectors = true;
    for (std::size_t k = 0; k < d; ++k) {
        const auto &g = generators_[k];
        unit_vectors = unit_vectors && std::count(g.begin(), g.end(), 0) == static_cast<long>(d - 1)
                       && std::count(g.begin(), g.end(), 1) == 1;
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < d; ++k) {
        if (unit_vectors) {
            const auto pos = std::find(generators_[k].begin(), generators_[k].end(), 1) - generators_[k].begin();
            names.push_back("Q" + std::to_string(pos));
        } else {
            names.push_back("P" + std::to_string(k + 1));
        }
    }
    std::vector<int> boundary = spec.boundary_grading;
    if (boundary.empty()) {
        for (const auto &g : generators_) {
            boundary.push_back(static_cast<int>(g[0]));
        }
    }
    try {
        frame_ = std::make_shared<const Frame>(std::move(names), spec.grading, std::move(boundary));
    } catch (const fps::SeriesError &e) {
        throw MirrorError(std::string("brane frame: ") + e.what());
    }
}

Exponent BraneFrame::to_frame(const IntVector &physical) const
{
    const std::size_t d = r_ + 1;
    if (physical.size() != d) {
        throw MirrorError("physical exponent has the wrong length");
    }
    Exponent f(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        Rational x = 0;
        for (std::size_t i = 0; i < d; ++i) {
            x += Rational(static_cast<long>(physical[i])) * inverse_[i][k];
        }
        if (!is_integer(x) || x < 0) {
            throw FrameEscape("monomial " + monomial_text(physical) + " escapes the brane frame monoid");
        }
        f[k] = static_cast<int>(x.get_num().get_si());
    }
    return f;
}

IntVector BraneFrame::to_physical(const Exponent &f) const
{
    IntVector p(r_ + 1, 0);
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] += f[k] * generators_[k][i];
        }
    }
    return p;
}

TruncatedSeries BraneFrame::from_closed(const TruncatedSeries &s, int order) const
{
    if (s.frame().nvars() != r_) {
        throw MirrorError("series is not on the closed variables");
    }
    // Smallest frame grade of a closed variable bounds the grade of every unknown term.
    long mu = -1;
    for (std::size_t a = 0; a < r_; ++a) {
        Rational g = 0;
        for (std::size_t k = 0; k <= r_; ++k) {
            g += inverse_[a + 1][k] * frame_->grading()[k];
        }
        if (g <= 0) {
            throw MirrorError("frame grading does not bound closed variable Q" + std::to_string(a + 1));
        }
        const long gi = static_cast<long>(g.get_num().get_si() / g.get_den().get_si());
        mu = mu < 0 ? gi : std::min(mu, gi);
    }
    int out_order = order;
    if (mu > 0) {
        out_order = static_cast<int>(std::min<long>(order, (static_cast<long>(s.order()) + 1) * mu - 1));
    }
    TruncatedSeries::Terms terms;
    for (const auto &[e, c] : s.terms()) {
        IntVector p(r_ + 1, 0);
        std::copy(e.begin(), e.end(), p.begin() + 1);
        auto f = to_frame(p);
        if (frame_->grade(f) <= out_order) {
            terms.emplace(std::move(f), c);
        }
    }
    return TruncatedSeries::from_terms(frame_, out_order, std::move(terms));
}

TruncatedSeries BraneFrame::monomial(const IntVector &physical, int order, const Rational &c) const
{
    return TruncatedSeries::monomial(frame_, order, to_frame(physical), c);
}

TruncatedSeries BraneFrame::modulo_closed(const TruncatedSeries &s) const
{
    TruncatedSeries::Terms terms;
    for (const auto &[e, c] : s.terms()) {
        const auto p = to_physical(e);
        if (std::all_of(p.begin() + 1, p.end(), [](auto x) { return x == 0; })) {
            terms.emplace(e, c);
        }
    }
    return TruncatedSeries::from_terms(s.frame_ptr(), s.order(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Curve roots

CurveRoot solve_curve_root_full(const MirrorCurve &curve, const TruncatedSeries &z1, const BraneFrame &frame,
                                int order)
{
    if (curve.n_z != 2) {
        throw MirrorError("curve roots need exactly two z-variables");
    }
    if (!(z1.frame() == *frame.frame())) {
        throw fps::FrameMismatch("z1 is not on the brane frame");
    }
    const auto &F = *frame.frame();
    const std::size_t d = F.nvars();

    // z1 = P^{f0} * unit
    IntVector q0(d, 0);
    q0[0] = 1;
    const auto f0 = frame.to_frame(q0);
    const int g0 = F.grade(f0);
    TruncatedSeries::Terms unit_terms;
    for (const auto &[e, c] : z1.terms()) {
        Exponent x(d);
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = e[k] - f0[k];
            if (x[k] < 0) {
                throw MirrorError("z1 is not Q0 times a series in the brane frame");
            }
        }
        unit_terms.emplace(std::move(x), c);
    }
    if (z1.order() - g0 < 0) {
        throw fps::PrecisionError("z1 is known below the grade of Q0");
    }
    const auto unit = TruncatedSeries::from_terms(frame.frame(), z1.order() - g0, std::move(unit_terms));
    if (unit.constant_term() == 0) {
        throw MirrorError("z1 / Q0 is not a unit series");
    }

    std::int64_t amin = 0, bmin = 0, bmax = 0;
    for (const auto &t : curve.terms) {
        amin = std::min(amin, t.z_exponents[0]);
        bmin = std::min(bmin, t.z_exponents[1]);
        bmax = std::max(bmax, t.z_exponents[1]);
    }
    // Coefficients of the denominator-cleared polynomial in z2. Each term is
    // P^m * (1 + delta) * unit^a, known to grade(m) plus the cofactor's order.
    std::vector<TruncatedSeries> coeffs(static_cast<std::size_t>(bmax - bmin + 1), TruncatedSeries(frame.frame(), order));
    std::vector<TruncatedSeries> unit_powers{TruncatedSeries::constant(frame.frame(), unit.order(), 1)};
    for (const auto &t : curve.terms) {
        const auto a = t.z_exponents[0] - amin;
        const auto b = t.z_exponents[1] - bmin;
        IntVector phys(d, 0);
        phys[0] = a;
        std::copy(t.q_exponents.begin(), t.q_exponents.end(), phys.begin() + 1);
        const auto m = frame.to_frame(phys);
        const int gm = F.grade(m);
        if (gm > order) {
            continue;
        }
        while (static_cast<std::int64_t>(unit_powers.size()) <= a) {
            unit_powers.push_back(unit_powers.back() * unit);
        }
        auto cofactor = frame.from_closed(t.coefficient, order - gm);
        if (a > 0) {
            cofactor = cofactor * unit_powers[static_cast<std::size_t>(a)].truncated(
                                      std::min(order - gm, unit_powers[static_cast<std::size_t>(a)].order()));
        }
        TruncatedSeries::Terms shifted;
        for (const auto &[e, v] : cofactor.terms()) {
            Exponent x(e);
            for (std::size_t k = 0; k < d; ++k) {
                x[k] += m[k];
            }
            shifted.emplace(std::move(x), v);
        }
        coeffs[static_cast<std::size_t>(b)] +=
            TruncatedSeries::from_terms(frame.frame(), std::min(order, gm + cofactor.order()), std::move(shifted));
    }
    int work = order;
    for (const auto &c : coeffs) {
        work = std::min(work, c.order());
    }

    // Divide out the common frame monomial.
    std::optional<Exponent> common;
    for (const auto &c : coeffs) {
        for (const auto &[e, v] : c.terms()) {
            if (!common) {
                common = e;
            } else {
                for (std::size_t k = 0; k < d; ++k) {
                    (*common)[k] = std::min((*common)[k], e[k]);
                }
            }
        }
    }
    if (!common) {
        throw BranchError("the curve equation vanishes identically on z1");
    }
    const int shift = F.grade(*common);
    const int K = work - shift;
    if (K < 0) {
        throw fps::PrecisionError("curve equation has no terms within the truncation order");
    }
    std::vector<TruncatedSeries> p;
    for (const auto &c : coeffs) {
        TruncatedSeries::Terms terms;
        for (const auto &[e, v] : c.terms()) {
            Exponent x(d);
            for (std::size_t k = 0; k < d; ++k) {
                x[k] = e[k] - (*common)[k];
            }
            terms.emplace(std::move(x), v);
        }
        p.push_back(TruncatedSeries::from_terms(frame.frame(), K, std::move(terms)));
    }

    // Grade-0 root.
    std::vector<Rational> p0;
    for (const auto &c : p) {
        p0.push_back(c.constant_term());
    }
    auto eval = [&](const Rational &y, bool derivative) {
        Rational v = 0;
        for (std::size_t k = p0.size(); k-- > 0;) {
            if (derivative) {
                if (k >= 1) {
                    v = v * y + p0[k] * static_cast<long>(k);
                }
            } else {
                v = v * y + p0[k];
            }
        }
        return v;
    };
    std::size_t degree = 0;
    for (std::size_t k = 0; k < p0.size(); ++k) {
        if (p0[k] != 0) {
            degree = k;
        }
    }
    Rational root;
    if (eval(Rational(-1), false) == 0 && eval(Rational(-1), true) != 0) {
        root = -1;
    } else if (degree == 1) {
        root = -p0[0] / p0[1];
    } else {
        std::string poly;
        for (std::size_t k = 0; k < p0.size(); ++k) {
            if (p0[k] != 0) {
                poly += (poly.empty() ? "" : " + ") + to_string(p0[k]) + "*z2^" + std::to_string(k);
            }
        }
        throw BranchError("no simple grade-0 root for z2; grade-0 equation is " + (poly.empty() ? "0" : poly));
    }

    auto horner = [&](const std::vector<TruncatedSeries> &cs, const TruncatedSeries &y) {
        TruncatedSeries v(frame.frame(), K);
        for (std::size_t k = cs.size(); k-- > 0;) {
            v = v * y + cs[k].truncated(K);
        }
        return v;
    };
    std::vector<TruncatedSeries> dp;
    for (std::size_t k = 1; k < p.size(); ++k) {
        dp.push_back(p[k].scaled(Rational(static_cast<long>(k))));
    }

    auto y = TruncatedSeries::constant(frame.frame(), K, root);
    bool stable = false;
    for (int it = 0; it <= K + 1; ++it) {
        const auto value = horner(p, y);
        if (value.is_zero()) {
            stable = true;
            break;
        }
        y = y - value * fps::inverse(horner(dp, y));
    }
    if (!stable || !horner(p, y).is_zero()) {
        throw fps::NonConvergence("Newton iteration for z2 did not converge");
    }

    TruncatedSeries residual(frame.frame(), K);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        residual = residual * y + coeffs[k].truncated(K);
    }
    return {y, residual};
}

TruncatedSeries solve_curve_root(const MirrorCurve &curve, const TruncatedSeries &z1, const BraneFrame &frame,
                                 int order)
{
    return solve_curve_root_full(curve, z1, frame, order).z2;
}

// ---------------------------------------------------------------------------
// Aganagic-Vafa branes

BraneMirrorSeries av_mirror_brane(const ToricCYData &data, const BraneSpec &brane, const FrameSpec &frame_spec,
                                  int order, std::optional<std::pair<int, int>> normalization)
{
    const auto perm = av_permutation(data, brane);
    const auto pdata = lattice::permute_rays(data, perm);
    const std::size_t r = closed_count(pdata);
    const BraneFrame bf(r, frame_spec);
    const auto Qframe = closed_frame(r, "Q");

    std::vector<int> candidates{-1, 1};
    if (normalization) {
        candidates = {normalization->first};
    }

    std::string failures;
    int work = order;
    while (true) {
        std::vector<TruncatedSeries> A;
        closed_inverse(pdata, work, closed_frame(r, "q"), Qframe, A);
        std::vector<TruncatedSeries> deltas;
        for (const auto &a : A) {
            deltas.push_back(exp_series(a.scaled(-1)));
        }
        const auto curve = curve_from_coefficients(pdata, deltas, Qframe, work);

        // In the reordered rays the open ray is 1 and the edge partner is 2.
        IntVector q0(r + 1, 0);
        q0[0] = 1;
        const auto z1 = bf.monomial(q0, work) * bf.from_closed(exp_series(A[1] - A[2]), work);

        failures.clear();
        int reached = -1;
        for (int e1 : candidates) {
            const auto root = solve_curve_root_full(curve, z1.scaled(e1), bf, work);
            reached = std::max(reached, root.z2.order());
            if (root.z2.order() < order) {
                continue;
            }
            const Rational c0 = root.z2.constant_term();
            if (c0 != 1 && c0 != -1) {
                failures += " e1=" + std::to_string(e1) + ": z2 has constant term " + to_string(c0) + ";";
                continue;
            }
            const int e2 = normalization ? normalization->second : (c0 > 0 ? 1 : -1);
            const auto z2 = root.z2.scaled(e2).truncated(order);
            if (z2.constant_term() != 1) {
                failures += " e1=" + std::to_string(e1) + ", e2=" + std::to_string(e2)
                            + ": z2 has constant term " + to_string(z2.constant_term()) + ";";
                continue;
            }
            const auto L = log_series(z2);
            std::string offending;
            for (const auto &[e, c] : L.terms()) {
                if (bf.frame()->boundary(e) == 0) {
                    offending += " " + monomial_text(bf.to_physical(e));
                }
            }
            if (!offending.empty()) {
                failures += " e1=" + std::to_string(e1) + ": -log z2 has boundary-grade-0 monomials" + offending + ";";
                continue;
            }
            return {bf.frame(), z1.truncated(order), z2, {e1, e2}, root.residual.truncated(order), perm};
        }
        if (reached >= order || work > 4 * order + 8) {
            break;
        }
        work += order - std::max(reached, 0);
    }
    if (failures.empty()) {
        throw fps::PrecisionError("brane frame cannot reach truncation order " + std::to_string(order));
    }
    throw NormalizationError("no sign normalization (e1, e2) works:" + failures);
}

CorrectionReport compare_naive(const ToricCYData &data, const BraneSpec &brane, const FrameSpec &frame_spec, int order,
                               std::optional<std::pair<int, int>> normalization)
{
    auto corrected = av_mirror_brane(data, brane, frame_spec, order, normalization);
    const BraneFrame bf(closed_count(data), frame_spec);
    IntVector q0(closed_count(data) + 1, 0);
    q0[0] = 1;

    CorrectionReport rep{corrected.z1 - bf.monomial(q0, corrected.z1.order()),
                         corrected.z2 - TruncatedSeries::constant(bf.frame(), corrected.z2.order(), 1),
                         TruncatedSeries(bf.frame(), order),
                         TruncatedSeries(bf.frame(), order),
                         false,
                         false,
                         TruncatedSeries(bf.frame(), order),
                         TruncatedSeries(bf.frame(), order),
                         naive_av_brane(data, brane),
                         std::move(corrected)};
    rep.z1_mod_closed = bf.modulo_closed(rep.z1_minus_q0);
    rep.z2_mod_closed = bf.modulo_closed(rep.z2_minus_one);
    rep.z1_vanishes_mod_closed = rep.z1_mod_closed.is_zero();
    rep.z2_vanishes_mod_closed = rep.z2_mod_closed.is_zero();
    rep.z1_leading = lowest_grade_terms(rep.z1_minus_q0);
    rep.z2_leading = lowest_grade_terms(rep.z2_minus_one);
    return rep;
}

} // namespace syzmirror::mirror
