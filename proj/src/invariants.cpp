#include <syzmirror/invariants.hpp>

#include <numeric>

namespace syzmirror::invariants
{

namespace
{

std::string exponent_text(const Exponent &e)
{
    std::string s = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
        s += (i ? "," : "") + std::to_string(e[i]);
    }
    return s + "]";
}

// -log z2 divided termwise by the boundary grading.
TruncatedSeries divided_log(const TruncatedSeries &z2)
{
    if (z2.constant_term() != 1) {
        throw InvariantError("z2 must have constant term 1");
    }
    const auto L = fps::log_series(z2).scaled(-1);
    TruncatedSeries::Terms terms;
    for (const auto &[e, c] : L.terms()) {
        const int b = z2.frame().boundary(e);
        if (b == 0) {
            throw InvariantError("monomial " + exponent_text(e)
                                 + " of -log z2 has zero boundary grading (wrong frame or not an Aganagic-Vafa brane)");
        }
        terms.emplace(e, c / b);
    }
    return TruncatedSeries::from_terms(z2.frame_ptr(), z2.order(), std::move(terms));
}

int common_divisor(const Exponent &e)
{
    int g = 0;
    for (int x : e) {
        g = std::gcd(g, x);
    }
    return g;
}

Exponent divided(const Exponent &e, int p)
{
    Exponent r(e);
    for (auto &x : r) {
        x /= p;
    }
    return r;
}

} // namespace

InvariantTable extract_open_gw(const TruncatedSeries &z2)
{
    const auto F = divided_log(z2);
    InvariantTable t;
    t.frame = z2.frame_ptr();
    t.order = z2.order();
    t.n = F.terms();
    return t;
}

TruncatedSeries disc_potential(const TruncatedSeries &z2)
{
    return divided_log(z2);
}

int mobius(int p)
{
    if (p < 1) {
        throw std::domain_error("mobius of a nonpositive integer");
    }
    int result = 1;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            p /= d;
            if (p % d == 0) {
                return 0;
            }
            result = -result;
        }
    }
    return p > 1 ? -result : result;
}

InvariantTable multiple_cover_inversion(const InvariantTable &table)
{
    // Every class whose multiple lies in the table is needed, including
    // classes where n vanishes, so iterate over all classes up to the order.
    ClassMap N;
    for (const auto &beta : fps::exponents_in_grade_range(*table.frame, 1, table.order)) {
        const int g = common_divisor(beta);
        Rational v = 0;
        for (int p = 1; p <= g; ++p) {
            if (g % p != 0) {
                continue;
            }
            const int mu = mobius(p);
            if (mu == 0) {
                continue;
            }
            const auto it = table.n.find(divided(beta, p));
            if (it != table.n.end()) {
                v += ratio(mu, p * p) * it->second;
            }
        }
        if (v != 0) {
            N.emplace(beta, v);
        }
    }
    InvariantTable out = table;
    out.N = std::move(N);
    return out;
}

ClassMap multiple_cover_sum(const ClassMap &N, const fps::Frame &frame, int order)
{
    ClassMap n;
    for (const auto &[beta, v] : N) {
        if (frame.grade(beta) < 1) {
            throw InvariantError("class " + exponent_text(beta) + " has nonpositive grade");
        }
        for (int p = 1; frame.grade(beta) * p <= order; ++p) {
            Exponent multiple(beta);
            for (auto &x : multiple) {
                x *= p;
            }
            auto &slot = n[multiple];
            slot += v / (p * p);
        }
    }
    std::erase_if(n, [](const auto &kv) { return kv.second == 0; });
    return n;
}

IntegralityReport integrality_check(const InvariantTable &table)
{
    if (!table.N) {
        throw InvariantError("integrality check needs the instanton numbers N");
    }
    IntegralityReport rep;
    for (const auto &[beta, v] : *table.N) {
        if (!is_integer(v)) {
            rep.failures.push_back(beta);
        }
    }
    return rep;
}

} // namespace syzmirror::invariants
