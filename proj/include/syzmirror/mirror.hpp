#ifndef SYZMIRROR_MIRROR_HPP
#define SYZMIRROR_MIRROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <syzmirror/fps.hpp>
#include <syzmirror/lattice.hpp>

// Mirror curve, mirror maps in both directions, fiber corrections 1 + delta_i
// and the mirror coordinates of Aganagic-Vafa branes.
//
// Closed Kahler variables are Q1..Qr (r = m - n), complex variables q1..qr.
// The open variable of a brane is Q0 (q0 on the complex side).
namespace syzmirror::mirror
{

using fps::FramePtr;
using fps::TruncatedSeries;
using lattice::BraneSpec;
using lattice::IntMatrix;
using lattice::IntVector;
using lattice::ToricCYData;

// A mathematical precondition failed: no usable root branch, a monomial left
// the brane frame, or no sign normalization works.
struct MirrorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchError : MirrorError {
    using MirrorError::MirrorError;
};

struct FrameEscape : MirrorError {
    using MirrorError::MirrorError;
};

struct NormalizationError : MirrorError {
    using MirrorError::MirrorError;
};

// E_i(alpha) = (-1)^{-<D_i,a>-1} (-<D_i,a>-1)! / prod_{j != i} <D_j,a>!,
// zero when -<D_i,a>-1 < 0 or any <D_j,a> (j != i) is negative.
Rational coefficient_E(const IntMatrix &iota, const IntVector &alpha, int i);

// Frame Q1..Qr (or q1..qr); grading 1.
FramePtr closed_frame(std::size_t r, const std::string &prefix);

// A_i(q) = sum_{alpha > 0} E_i(alpha) q^alpha on the closed frame q1..qr.
TruncatedSeries a_series(const ToricCYData &data, int i, int order);
std::vector<TruncatedSeries> a_series_all(const ToricCYData &data, int order, FramePtr frame);

// Open direction of a brane as a row over the rays: e_edge - e_open.
IntVector open_charge(const BraneSpec &brane, std::size_t m);

struct MirrorMapData {
    enum class Direction { ComplexToKahler, KahlerToComplex };
    Direction direction;
    int order;
    FramePtr frame;                       // source variables ([q0,] q1..qr) or ([Q0,] Q1..Qr)
    bool has_open = false;                // images[0] is the open direction
    std::vector<TruncatedSeries> A;       // A_j(q), or A_j(q(Q)) for the inverse
    std::vector<TruncatedSeries> images;  // Q(q) for the map, q(Q) for the inverse
};

// Q_a = q_a exp(sum_j iota_j^(a) A_j(q)); with a brane also
// Q0 = q0 exp(sum_j l_j^(0) A_j(q)).
MirrorMapData mirror_map(const ToricCYData &data, int order, const BraneSpec *brane = nullptr);

// q_a(Q) solving q_a = Q_a exp(-sum_j iota_j^(a) A_j(q)); with a brane also
// q0(Q) = Q0 exp(-sum_j l_j^(0) A_j(q(Q))).
MirrorMapData inverse_mirror_map(const ToricCYData &data, int order, const BraneSpec *brane = nullptr);

// 1 + delta_i = exp(-A_i(q(Q))) for every ray, on the closed frame Q1..Qr.
std::vector<TruncatedSeries> fiber_open_gw(const ToricCYData &data, int order);

struct CurveTerm {
    IntVector z_exponents;                // length n - 1
    IntVector q_exponents;                // length r
    TruncatedSeries coefficient;          // 1 + delta_i
};

struct MirrorCurve {
    std::size_t n_z = 0;
    FramePtr frame;                       // Q1..Qr
    int order = 0;
    std::vector<CurveTerm> terms;

    // "1 + z1 + z2 + Q1*z2*z1^-1"; nontrivial coefficients are shown in parentheses.
    std::string pretty() const;
};

MirrorCurve build_curve(const ToricCYData &data, bool corrected, int order);

struct BraneEquation {
    IntVector z_exponents;                // length n - 1
    IntVector q_exponents;                // length r
    Rational c;
    Rational phase;                       // multiple of pi
};

// prod_j z_j^{e_j} prod_a Q_a^{f_a} = exp(c + i phi) for every charge row.
std::vector<BraneEquation> naive_brane(const ToricCYData &data, const BraneSpec &brane);

// Ray order [vertex, open, edge, rest...] used for brane coordinates.
std::vector<int> av_permutation(const ToricCYData &data, const BraneSpec &brane);
// The brane with its charge columns reordered by perm.
BraneSpec permute_brane(const BraneSpec &brane, const std::vector<int> &perm);

struct NaiveAvCoordinates {
    std::vector<int> permutation;
    std::vector<BraneEquation> equations;   // in the reordered rays
    bool z1_is_open_parameter = false;      // z1 = exp(-c - i phi) = Q0
    bool z2_is_one = false;
};

NaiveAvCoordinates naive_av_brane(const ToricCYData &data, const BraneSpec &brane);

// Frame for brane series. Generators are exponent vectors over the physical
// variables (Q0, Q1, ..., Qr) forming a unimodular matrix; a physical monomial
// belongs to the frame monoid when its frame exponents are all nonnegative.
struct FrameSpec {
    std::optional<IntMatrix> generators;
    std::vector<int> grading;
    std::vector<int> boundary_grading;    // defaults to the Q0 component of each generator
};

class BraneFrame
{
public:
    BraneFrame(std::size_t r, const FrameSpec &spec);

    const FramePtr &frame() const noexcept
    {
        return frame_;
    }
    const IntMatrix &generators() const noexcept
    {
        return generators_;
    }
    std::size_t closed_count() const noexcept
    {
        return r_;
    }

    // Frame exponents of a physical monomial; throws FrameEscape outside the monoid.
    fps::Exponent to_frame(const IntVector &physical) const;
    IntVector to_physical(const fps::Exponent &frame_exponent) const;

    // A series on the closed frame Q1..Qr rewritten in this frame, truncated at `order`.
    TruncatedSeries from_closed(const TruncatedSeries &s, int order) const;
    // Frame monomial Q0^{b0} Q^b.
    TruncatedSeries monomial(const IntVector &physical, int order, const Rational &c = 1) const;
    // Drops every term whose physical exponent involves a closed variable.
    TruncatedSeries modulo_closed(const TruncatedSeries &s) const;

private:
    std::size_t r_;
    IntMatrix generators_;
    std::vector<std::vector<Rational>> inverse_;
    FramePtr frame_;
};

// Solves W(z1, z2) = 0 for z2 over the brane frame by Newton iteration from
// the simple grade-0 root (-1 when it is one). Requires n_z == 2.
struct CurveRoot {
    TruncatedSeries z2;
    TruncatedSeries residual;             // z1^a z2^b W(z1, z2) with denominators cleared
};

CurveRoot solve_curve_root_full(const MirrorCurve &curve, const TruncatedSeries &z1, const BraneFrame &frame,
                                int order);
TruncatedSeries solve_curve_root(const MirrorCurve &curve, const TruncatedSeries &z1, const BraneFrame &frame,
                                 int order);

struct BraneMirrorSeries {
    FramePtr frame;
    TruncatedSeries z1;
    TruncatedSeries z2;
    std::pair<int, int> sign_normalization;   // curve coordinates are (e1 z1, e2 z2)
    TruncatedSeries residual;
    std::vector<int> permutation;
};

// z1 = q0(Q) from the inverse mirror map, z2 the normalized root of the
// corrected curve. Tries e1 = -1 then +1 unless `normalization` is given.
BraneMirrorSeries av_mirror_brane(const ToricCYData &data, const BraneSpec &brane, const FrameSpec &frame_spec,
                                  int order, std::optional<std::pair<int, int>> normalization = std::nullopt);

struct CorrectionReport {
    TruncatedSeries z1_minus_q0;
    TruncatedSeries z2_minus_one;
    TruncatedSeries z1_mod_closed;        // (z1 - Q0) with closed variables set to 0
    TruncatedSeries z2_mod_closed;        // (z2 - 1) with closed variables set to 0
    bool z1_vanishes_mod_closed = false;
    bool z2_vanishes_mod_closed = false;
    TruncatedSeries z1_leading;           // lowest-grade terms of z1 - Q0
    TruncatedSeries z2_leading;
    NaiveAvCoordinates naive;
    BraneMirrorSeries corrected;
};

CorrectionReport compare_naive(const ToricCYData &data, const BraneSpec &brane, const FrameSpec &frame_spec, int order,
                               std::optional<std::pair<int, int>> normalization = std::nullopt);

} // namespace syzmirror::mirror

#endif
