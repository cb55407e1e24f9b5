#ifndef SYZMIRROR_LATTICE_HPP
#define SYZMIRROR_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <syzmirror/rational.hpp>

// Integer-lattice combinatorics of toric Calabi-Yau data: validation, the
// charge matrix, dual-basis exponents, brane charge conditions and the
// combinatorial discriminant of the Gross fibration.
namespace syzmirror::lattice
{

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToricCYData {
    std::vector<IntVector> rays;                      // m vectors in Z^n
    IntVector u;                                      // CY covector
    std::vector<Rational> lambda;                     // polytope offsets, one per ray
    std::optional<std::vector<std::vector<int>>> max_cones;
    std::optional<IntMatrix> charge_basis;            // (m-n) x m, authoritative when present

    std::size_t n() const
    {
        return u.size();
    }
    std::size_t m() const
    {
        return rays.size();
    }
};

// Aganagic-Vafa index triple. Rows of the brane are e_edge - e_vertex and
// e_open - e_vertex; the brane meets the edge F_{vertex, edge}.
struct AvIndices {
    int vertex = 0;
    int edge = 1;
    int open = 2;
};

struct BraneSpec {
    IntMatrix charges;                    // k x m rows l^(a)
    std::vector<Rational> constants;      // c^(a)
    std::vector<Rational> phases;         // phi^(a) / pi
    std::optional<std::vector<int>> av_indices;   // (i0, i1, i2)
    std::optional<std::vector<Rational>> m0;      // point of M_Q on the edge
};

struct ValidationReport {
    std::vector<std::string> failures;

    bool ok() const
    {
        return failures.empty();
    }
};

ValidationReport validate_cy(const ToricCYData &data);

// Z-basis of ker(Z^m -> Z^n, e_i -> v_i), Hermite-normalized, then each row
// oriented so its first nonzero entry on an interior ("compact divisor")
// column is negative.
IntMatrix charge_basis(const ToricCYData &data);
// data.charge_basis when supplied, otherwise charge_basis(data).
IntMatrix resolved_charge_basis(const ToricCYData &data);

// Row i holds the coordinates of v_i in the basis v_0..v_{n-1}; column j is
// <v_j^*, v_i>. Throws LatticeError if the leading rays are not unimodular.
IntMatrix dual_exponents(const ToricCYData &data);

// <D_j, alpha> = sum_a alpha_a iota^(a)_j for j = 0..m-1.
IntVector divisor_pairing(const IntMatrix &iota, const IntVector &alpha);

ValidationReport validate_brane(const ToricCYData &data, const BraneSpec &brane);

// Index triple of an Aganagic-Vafa brane. The row carrying the nonzero
// constant is the open direction; without constants the triple is read as
// (vertex, edge, open).
AvIndices av_indices(const BraneSpec &brane);

struct AvGeometry {
    std::vector<Rational> m0;
    Rational c;
    std::pair<int, int> edge;
    std::vector<Rational> support;        // <m0, v_j> + lambda_j for every j
};

// Checks m0 lies in the relative interior of the edge F_{i0 i1} and returns
// c = lambda_{i2} - lambda_{i0} + <m0, v_{i2} - v_{i0}>.
AvGeometry av_geometry(const ToricCYData &data, const BraneSpec &brane);

// The AV constant evaluated at an arbitrary point of M_Q (no edge checks).
Rational av_constant_at(const ToricCYData &data, const AvIndices &idx, const std::vector<Rational> &point);

// Pairs {i, j} spanning a 2-dimensional cone of the fan, sorted.
std::vector<std::pair<int, int>> gross_discriminant(const ToricCYData &data);

// ---------------------------------------------------------------------------
// Exact integer linear algebra used across modules.

std::int64_t determinant(const IntMatrix &square);
// Integer kernel {x : x^T A = 0} of an m x n matrix A given by rows, as a
// row-Hermite basis.
IntMatrix left_kernel(const IntMatrix &rows);
void hermite_normalize(IntMatrix &rows);
std::size_t rank(const IntMatrix &rows);
// Solves sum_j x_j basis[j] = target exactly over Q; basis is square.
std::vector<Rational> solve_coordinates(const IntMatrix &basis, const IntVector &target);

// Indices of rays in the relative interior of the convex hull of all rays
// inside the hyperplane <u, .> = 1. Empty when not identifiable (n > 3).
std::vector<int> interior_rays(const ToricCYData &data);

// Reorders rays (and lambda, charge columns, cones) so that perm[k] becomes ray k.
ToricCYData permute_rays(const ToricCYData &data, const std::vector<int> &perm);

} // namespace syzmirror::lattice

#endif
