#ifndef SYZMIRROR_INVARIANTS_HPP
#define SYZMIRROR_INVARIANTS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <syzmirror/fps.hpp>

// Open Gromov-Witten invariants read off a brane's z2 series, the disc
// potential, and multiple-cover inversion.
namespace syzmirror::invariants
{

using fps::Exponent;
using fps::FramePtr;
using fps::TruncatedSeries;

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ClassMap = std::map<Exponent, Rational>;

struct InvariantTable {
    FramePtr frame;
    int order = 0;
    ClassMap n;
    std::optional<ClassMap> N;
};

// n_beta = [Q^beta](-log z2) / boundary(beta).
InvariantTable extract_open_gw(const TruncatedSeries &z2);

// F with boundary_derivative(F) = -log z2.
TruncatedSeries disc_potential(const TruncatedSeries &z2);

int mobius(int p);

// N_beta = sum_{p | beta} mu(p) n_{beta/p} / p^2, divisibility componentwise.
InvariantTable multiple_cover_inversion(const InvariantTable &table);
// n_beta = sum_{p | beta} N_{beta/p} / p^2.
ClassMap multiple_cover_sum(const ClassMap &N, const fps::Frame &frame, int order);

struct IntegralityReport {
    std::vector<Exponent> failures;

    bool ok() const
    {
        return failures.empty();
    }
};

IntegralityReport integrality_check(const InvariantTable &table);

} // namespace syzmirror::invariants

#endif
