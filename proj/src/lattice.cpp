#include <syzmirror/lattice.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace syzmirror::lattice
{

namespace
{

std::int64_t dot(const IntVector &a, const IntVector &b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

Rational dot(const std::vector<Rational> &a, const IntVector &b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        s += a[i] * Rational(static_cast<long>(b[i]));
    }
    return s;
}

std::string join(const std::vector<int> &idx)
{
    std::string s;
    for (int i : idx) {
        s += std::to_string(i);
    }
    return s;
}

std::string row_str(const IntVector &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + ")";
}

// Moves the row with the smallest nonzero |entry| in column `col` among rows
// [from, end) to position `from` and clears the column below it.
bool eliminate_column(IntMatrix &rows, std::size_t from, std::size_t col)
{
    while (true) {
        std::size_t best = rows.size();
        for (std::size_t r = from; r < rows.size(); ++r) {
            if (rows[r][col] != 0 && (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col]))) {
                best = r;
            }
        }
        if (best == rows.size()) {
            return false;
        }
        std::swap(rows[from], rows[best]);
        bool done = true;
        for (std::size_t r = from + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) {
                continue;
            }
            const std::int64_t q = rows[r][col] / rows[from][col];
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                rows[r][c] -= q * rows[from][c];
            }
            if (rows[r][col] != 0) {
                done = false;
            }
        }
        if (done) {
            return true;
        }
    }
}

std::vector<std::vector<Rational>> coordinates_all(const ToricCYData &data)
{
    const std::size_t n = data.n();
    IntMatrix basis(data.rays.begin(), data.rays.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::vector<Rational>> out;
    for (const auto &v : data.rays) {
        out.push_back(solve_coordinates(basis, v));
    }
    return out;
}

std::int64_t cross(const std::pair<Rational, Rational> &o, const std::pair<Rational, Rational> &a,
                   const std::pair<Rational, Rational> &b, Rational &out)
{
    out = (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    return sgn(out);
}

} // namespace

// ---------------------------------------------------------------------------
// Linear algebra

std::int64_t determinant(const IntMatrix &a)
{
    const std::size_t n = a.size();
    if (n == 0) {
        return 1;
    }
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw LatticeError("determinant of a non-square matrix");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = static_cast<long>(a[i][j]);
        }
    }
    // Bareiss fraction-free elimination.
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1].get_si();
}

void hermite_normalize(IntMatrix &rows)
{
    if (rows.empty()) {
        return;
    }
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        if (!eliminate_column(rows, r, c)) {
            continue;
        }
        if (rows[r][c] < 0) {
            for (auto &x : rows[r]) {
                x = -x;
            }
        }
        for (std::size_t above = 0; above < r; ++above) {
            std::int64_t q = rows[above][c] / rows[r][c];
            if (rows[above][c] - q * rows[r][c] < 0) {
                --q;
            }
            for (std::size_t k = 0; k < cols; ++k) {
                rows[above][k] -= q * rows[r][k];
            }
        }
        ++r;
    }
    rows.resize(r);
}

IntMatrix left_kernel(const IntMatrix &a)
{
    const std::size_t m = a.size();
    if (m == 0) {
        return {};
    }
    const std::size_t n = a.front().size();
    IntMatrix aug(m, IntVector(n + m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        std::copy(a[i].begin(), a[i].end(), aug[i].begin());
        aug[i][n + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        if (eliminate_column(aug, r, c)) {
            ++r;
        }
    }
    IntMatrix kernel;
    for (std::size_t i = r; i < m; ++i) {
        kernel.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
    }
    hermite_normalize(kernel);
    return kernel;
}

std::size_t rank(const IntMatrix &rows)
{
    IntMatrix copy = rows;
    if (copy.empty()) {
        return 0;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < copy.front().size() && r < copy.size(); ++c) {
        if (eliminate_column(copy, r, c)) {
            ++r;
        }
    }
    return r;
}

std::vector<Rational> solve_coordinates(const IntMatrix &basis, const IntVector &target)
{
    const std::size_t n = basis.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            m[r][j] = static_cast<long>(basis[j].at(r));
        }
        m[r][n] = static_cast<long>(target.at(r));
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            throw LatticeError("singular basis");
        }
        std::swap(m[c], m[p]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) {
                continue;
            }
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k) {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m[i][n] / m[i][i];
    }
    return x;
}

// ---------------------------------------------------------------------------
// Toric data

ValidationReport validate_cy(const ToricCYData &data)
{
    ValidationReport rep;
    auto &f = rep.failures;
    const std::size_t n = data.n();
    const std::size_t m = data.m();

    if (n == 0) {
        f.push_back("u is empty");
        return rep;
    }
    bool shapes_ok = true;
    for (std::size_t i = 0; i < m; ++i) {
        if (data.rays[i].size() != n) {
            f.push_back("ray " + std::to_string(i) + " has dimension " + std::to_string(data.rays[i].size())
                        + ", expected " + std::to_string(n));
            shapes_ok = false;
        }
    }
    if (!shapes_ok) {
        return rep;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto p = dot(data.u, data.rays[i]);
        if (p != 1) {
            f.push_back("CY condition: <u, v_" + std::to_string(i) + "> = " + std::to_string(p) + ", expected 1");
        }
    }
    if (m < n) {
        f.push_back("need at least n = " + std::to_string(n) + " rays");
    } else {
        IntMatrix lead(data.rays.begin(), data.rays.begin() + static_cast<std::ptrdiff_t>(n));
        const auto d = determinant(lead);
        if (d != 1 && d != -1) {
            f.push_back("unimodularity: leading rays v_0..v_" + std::to_string(n - 1) + " have determinant "
                        + std::to_string(d));
        }
    }
    if (!data.lambda.empty() && data.lambda.size() != m) {
        f.push_back("lambda has " + std::to_string(data.lambda.size()) + " entries, expected " + std::to_string(m));
    }
    if (data.max_cones) {
        for (std::size_t c = 0; c < data.max_cones->size(); ++c) {
            const auto &cone = (*data.max_cones)[c];
            std::set<int> seen(cone.begin(), cone.end());
            if (seen.size() != cone.size() || cone.size() > n) {
                f.push_back("max cone " + std::to_string(c) + " is malformed");
            }
            for (int i : cone) {
                if (i < 0 || static_cast<std::size_t>(i) >= m) {
                    f.push_back("max cone " + std::to_string(c) + " references ray " + std::to_string(i));
                }
            }
        }
    }
    if (data.charge_basis && m >= n) {
        const auto &cb = *data.charge_basis;
        if (cb.size() != m - n) {
            f.push_back("charge basis has " + std::to_string(cb.size()) + " rows, expected " + std::to_string(m - n));
        }
        bool rows_ok = true;
        for (std::size_t a = 0; a < cb.size(); ++a) {
            if (cb[a].size() != m) {
                f.push_back("charge basis row " + std::to_string(a) + " has wrong length");
                rows_ok = false;
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    s += cb[a][i] * data.rays[i][k];
                }
                if (s != 0) {
                    f.push_back("charge basis row " + std::to_string(a) + " does not annihilate the rays");
                    rows_ok = false;
                    break;
                }
            }
            if (std::accumulate(cb[a].begin(), cb[a].end(), std::int64_t{0}) != 0) {
                f.push_back("charge basis row " + std::to_string(a) + " does not sum to zero");
            }
        }
        if (rows_ok && cb.size() == m - n && !cb.empty()) {
            if (rank(cb) != cb.size()) {
                f.push_back("charge basis rows are linearly dependent");
            } else {
                // Saturated iff the gcd of the maximal minors is 1.
                const std::size_t k = cb.size();
                std::vector<int> sel(m, 0);
                std::fill(sel.end() - static_cast<std::ptrdiff_t>(k), sel.end(), 1);
                Integer g = 0;
                do {
                    IntMatrix minor(k, IntVector());
                    for (std::size_t a = 0; a < k; ++a) {
                        for (std::size_t i = 0; i < m; ++i) {
                            if (sel[i]) {
                                minor[a].push_back(cb[a][i]);
                            }
                        }
                    }
                    Integer d = static_cast<long>(determinant(minor));
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
                } while (std::next_permutation(sel.begin(), sel.end()));
                if (g != 1) {
                    f.push_back("charge basis spans a sublattice of index " + g.get_str() + " in the kernel");
                }
            }
        }
    }
    return rep;
}

std::vector<int> interior_rays(const ToricCYData &data)
{
    const std::size_t n = data.n();
    std::vector<int> out;
    if (n < 2 || n > 3 || data.m() <= n) {
        return out;
    }
    std::vector<std::vector<Rational>> coords;
    try {
        coords = coordinates_all(data);
    } catch (const LatticeError &) {
        return out;
    }
    const std::size_t m = data.m();
    if (n == 2) {
        Rational lo = coords[0][1], hi = coords[0][1];
        for (const auto &c : coords) {
            lo = std::min(lo, c[1]);
            hi = std::max(hi, c[1]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (coords[i][1] > lo && coords[i][1] < hi) {
                out.push_back(static_cast<int>(i));
            }
        }
        return out;
    }
    using Pt = std::pair<Rational, Rational>;
    std::vector<Pt> pts;
    for (const auto &c : coords) {
        pts.emplace_back(c[1], c[2]);
    }
    std::vector<Pt> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() < 3) {
        return out;
    }
    // Andrew's monotone chain, collinear points dropped: counter-clockwise hull.
    std::vector<Pt> hull(2 * sorted.size());
    std::size_t k = 0;
    Rational tmp;
    for (const auto &p : sorted) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p, tmp) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = sorted.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], sorted[i], tmp) <= 0) {
            --k;
        }
        hull[k++] = sorted[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        return out;
    }
    for (std::size_t i = 0; i < m; ++i) {
        bool inside = true;
        for (std::size_t e = 0; e < hull.size() && inside; ++e) {
            inside = cross(hull[e], hull[(e + 1) % hull.size()], pts[i], tmp) > 0;
        }
        if (inside) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

IntMatrix charge_basis(const ToricCYData &data)
{
    auto basis = left_kernel(data.rays);
    const auto interior = interior_rays(data);
    for (auto &row : basis) {
        for (int col : interior) {
            if (row[static_cast<std::size_t>(col)] == 0) {
                continue;
            }
            if (row[static_cast<std::size_t>(col)] > 0) {
                for (auto &x : row) {
                    x = -x;
                }
            }
            break;
        }
    }
    return basis;
}

IntMatrix resolved_charge_basis(const ToricCYData &data)
{
    return data.charge_basis ? *data.charge_basis : charge_basis(data);
}

IntMatrix dual_exponents(const ToricCYData &data)
{
    const std::size_t n = data.n();
    if (data.m() < n) {
        throw LatticeError("fewer rays than the lattice rank");
    }
    IntMatrix lead(data.rays.begin(), data.rays.begin() + static_cast<std::ptrdiff_t>(n));
    const auto d = determinant(lead);
    if (d != 1 && d != -1) {
        throw LatticeError("leading rays are not a unimodular basis (determinant " + std::to_string(d) + ")");
    }
    IntMatrix out;
    for (const auto &c : coordinates_all(data)) {
        IntVector row;
        for (const auto &x : c) {
            row.push_back(x.get_num().get_si());
        }
        out.push_back(std::move(row));
    }
    return out;
}

IntVector divisor_pairing(const IntMatrix &iota, const IntVector &alpha)
{
    if (iota.size() != alpha.size()) {
        throw LatticeError("alpha has " + std::to_string(alpha.size()) + " entries for " + std::to_string(iota.size())
                           + " charge rows");
    }
    const std::size_t m = iota.empty() ? 0 : iota.front().size();
    IntVector out(m, 0);
    for (std::size_t a = 0; a < iota.size(); ++a) {
        for (std::size_t j = 0; j < m; ++j) {
            out[j] += alpha[a] * iota[a][j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Branes

AvIndices av_indices(const BraneSpec &brane)
{
    if (!brane.av_indices || brane.av_indices->size() != 3) {
        throw LatticeError("brane has no Aganagic-Vafa index triple");
    }
    const auto &t = *brane.av_indices;
    AvIndices idx{t[0], t[1], t[2]};
    if (brane.constants.size() == 2 && brane.constants[0] != 0 && brane.constants[1] == 0) {
        std::swap(idx.edge, idx.open);
    }
    return idx;
}

ValidationReport validate_brane(const ToricCYData &data, const BraneSpec &brane)
{
    ValidationReport rep;
    auto &f = rep.failures;
    const std::size_t m = data.m();
    const std::size_t k = brane.charges.size();

    bool shapes_ok = true;
    for (std::size_t a = 0; a < k; ++a) {
        const auto &row = brane.charges[a];
        if (row.size() != m) {
            f.push_back("charge " + std::to_string(a) + " has length " + std::to_string(row.size()) + ", expected "
                        + std::to_string(m));
            shapes_ok = false;
            continue;
        }
        const auto s = std::accumulate(row.begin(), row.end(), std::int64_t{0});
        if (s != 0) {
            f.push_back("charge " + std::to_string(a) + " " + row_str(row)
                        + " violates the special condition l.1 = 0 (sum " + std::to_string(s) + ")");
        }
    }
    if (shapes_ok && rank(brane.charges) != k) {
        f.push_back("charges are linearly dependent");
    }
    if (!brane.constants.empty() && brane.constants.size() != k) {
        f.push_back("expected " + std::to_string(k) + " constants");
    }
    if (!brane.phases.empty() && brane.phases.size() != k) {
        f.push_back("expected " + std::to_string(k) + " phases");
    }

    if (!brane.av_indices) {
        return rep;
    }
    const auto &t = *brane.av_indices;
    if (t.size() != 3 || std::set<int>(t.begin(), t.end()).size() != 3
        || std::any_of(t.begin(), t.end(), [m](int i) { return i < 0 || static_cast<std::size_t>(i) >= m; })) {
        f.push_back("Aganagic-Vafa indices must be three distinct ray indices");
        return rep;
    }
    if (k != 2 || !shapes_ok) {
        f.push_back("an Aganagic-Vafa brane has exactly two charges");
        return rep;
    }
    for (std::size_t a = 0; a < 2; ++a) {
        IntVector expect(m, 0);
        expect[static_cast<std::size_t>(t[a + 1])] += 1;
        expect[static_cast<std::size_t>(t[0])] -= 1;
        if (brane.charges[a] != expect) {
            f.push_back("Aganagic-Vafa charge " + std::to_string(a) + " should be e_" + std::to_string(t[a + 1])
                        + " - e_" + std::to_string(t[0]));
        }
    }
    if (brane.constants.size() == 2) {
        const int nonzero = (brane.constants[0] != 0) + (brane.constants[1] != 0);
        if (nonzero != 1) {
            f.push_back("an Aganagic-Vafa brane has exactly one nonzero constant (found "
                        + std::to_string(nonzero) + ")");
        } else if (brane.phases.size() == 2) {
            const std::size_t edge_row = brane.constants[0] == 0 ? 0 : 1;
            const Rational half = brane.phases[edge_row] / 2;
            if (!is_integer(half)) {
                f.push_back("holonomy phase on the zero-constant charge must be a multiple of 2 pi");
            }
        }
    }
    if (data.max_cones) {
        const auto idx = av_indices(brane);
        const bool is_edge = std::any_of(data.max_cones->begin(), data.max_cones->end(), [&](const auto &cone) {
            return std::find(cone.begin(), cone.end(), idx.vertex) != cone.end()
                   && std::find(cone.begin(), cone.end(), idx.edge) != cone.end();
        });
        if (!is_edge) {
            f.push_back("rays " + std::to_string(idx.vertex) + "," + std::to_string(idx.edge)
                        + " do not span a cone, so F_{" + join({idx.vertex, idx.edge}) + "} is not an edge");
        }
    }
    if (brane.m0) {
        try {
            const auto geo = av_geometry(data, brane);
            if (brane.constants.size() == 2) {
                const auto idx = av_indices(brane);
                const std::size_t open_row = idx.open == t[1] ? 0 : 1;
                if (brane.constants[open_row] != geo.c) {
                    f.push_back("brane constant " + to_string(brane.constants[open_row])
                                + " differs from the edge geometry value " + to_string(geo.c));
                }
            }
        } catch (const LatticeError &e) {
            f.push_back(e.what());
        }
    }
    return rep;
}

AvGeometry av_geometry(const ToricCYData &data, const BraneSpec &brane)
{
    const auto idx = av_indices(brane);
    if (!brane.m0) {
        throw LatticeError("av_geometry needs the point m0");
    }
    const auto &m0 = *brane.m0;
    if (m0.size() != data.n()) {
        throw LatticeError("m0 has dimension " + std::to_string(m0.size()) + ", expected " + std::to_string(data.n()));
    }
    AvGeometry g;
    g.m0 = m0;
    g.edge = {idx.vertex, idx.edge};
    for (std::size_t j = 0; j < data.m(); ++j) {
        const Rational lam = data.lambda.empty() ? Rational(0) : data.lambda[j];
        g.support.push_back(dot(m0, data.rays[j]) + lam);
    }
    const std::string edge = "F_{" + join({idx.vertex, idx.edge}) + "}";
    if (g.support[static_cast<std::size_t>(idx.vertex)] != 0 || g.support[static_cast<std::size_t>(idx.edge)] != 0) {
        throw LatticeError("m0 is not on the edge " + edge);
    }
    for (std::size_t j = 0; j < data.m(); ++j) {
        if (static_cast<int>(j) == idx.vertex || static_cast<int>(j) == idx.edge) {
            continue;
        }
        if (g.support[j] == 0) {
            throw LatticeError("m0 lies on multiple edges (facet " + std::to_string(j)
                               + " also vanishes); not an Aganagic-Vafa brane");
        }
        if (g.support[j] < 0) {
            throw LatticeError("m0 lies outside the polytope (facet " + std::to_string(j) + ")");
        }
    }
    g.c = av_constant_at(data, idx, m0);
    if (g.c == 0) {
        throw LatticeError("Aganagic-Vafa constant c vanishes");
    }
    // The point lambda + beta^vee(m0) satisfies <p, l_edge> = 0, <p, l_open> = c.
    const auto &p = g.support;
    if (p[static_cast<std::size_t>(idx.edge)] - p[static_cast<std::size_t>(idx.vertex)] != 0
        || p[static_cast<std::size_t>(idx.open)] - p[static_cast<std::size_t>(idx.vertex)] != g.c) {
        throw LatticeError("Aganagic-Vafa line equations fail at m0");
    }
    return g;
}

Rational av_constant_at(const ToricCYData &data, const AvIndices &idx, const std::vector<Rational> &point)
{
    const auto o = static_cast<std::size_t>(idx.open);
    const auto v = static_cast<std::size_t>(idx.vertex);
    IntVector diff(data.n());
    for (std::size_t k = 0; k < data.n(); ++k) {
        diff[k] = data.rays[o][k] - data.rays[v][k];
    }
    const Rational lo = data.lambda.empty() ? Rational(0) : data.lambda[o];
    const Rational lv = data.lambda.empty() ? Rational(0) : data.lambda[v];
    return lo - lv + dot(point, diff);
}

std::vector<std::pair<int, int>> gross_discriminant(const ToricCYData &data)
{
    if (!data.max_cones) {
        throw LatticeError("gross_discriminant needs the maximal cones");
    }
    std::set<std::pair<int, int>> pairs;
    for (const auto &cone : *data.max_cones) {
        for (std::size_t a = 0; a < cone.size(); ++a) {
            for (std::size_t b = a + 1; b < cone.size(); ++b) {
                pairs.emplace(std::min(cone[a], cone[b]), std::max(cone[a], cone[b]));
            }
        }
    }
    return {pairs.begin(), pairs.end()};
}

ToricCYData permute_rays(const ToricCYData &data, const std::vector<int> &perm)
{
    const std::size_t m = data.m();
    if (perm.size() != m) {
        throw LatticeError("permutation has wrong length");
    }
    std::vector<int> inv(m, -1);
    for (std::size_t k = 0; k < m; ++k) {
        inv.at(static_cast<std::size_t>(perm[k])) = static_cast<int>(k);
    }
    if (std::find(inv.begin(), inv.end(), -1) != inv.end()) {
        throw LatticeError("not a permutation");
    }
    ToricCYData out;
    out.u = data.u;
    for (int p : perm) {
        out.rays.push_back(data.rays[static_cast<std::size_t>(p)]);
        if (!data.lambda.empty()) {
            out.lambda.push_back(data.lambda[static_cast<std::size_t>(p)]);
        }
    }
    if (data.max_cones) {
        std::vector<std::vector<int>> cones;
        for (const auto &cone : *data.max_cones) {
            std::vector<int> c;
            for (int i : cone) {
                c.push_back(inv[static_cast<std::size_t>(i)]);
            }
            std::sort(c.begin(), c.end());
            cones.push_back(std::move(c));
        }
        out.max_cones = std::move(cones);
    }
    // The charge basis is carried along rather than recomputed so that its
    // orientation is preserved.
    IntMatrix cb = resolved_charge_basis(data);
    for (auto &row : cb) {
        IntVector r;
        for (int p : perm) {
            r.push_back(row[static_cast<std::size_t>(p)]);
        }
        row = std::move(r);
    }
    out.charge_basis = std::move(cb);
    return out;
}

} // namespace syzmirror::lattice
