#ifndef SYZMIRROR_SERIALIZE_HPP
#define SYZMIRROR_SERIALIZE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include <syzmirror/fps.hpp>
#include <syzmirror/invariants.hpp>
#include <syzmirror/lattice.hpp>
#include <syzmirror/mirror.hpp>

namespace syzmirror::io
{

using json = nlohmann::json;

// Malformed input document. `where` is "line L, column C" for syntax errors
// and a field path such as "toric.lambda[2]" otherwise.
struct ParseError : std::runtime_error {
    ParseError(std::string where_, const std::string &message)
        : std::runtime_error(where_ + ": " + message), where(std::move(where_))
    {
    }
    std::string where;
};

// [{"e": [..], "c": "p/q"}, ...] in lexicographic exponent order.
json series_to_json(const fps::TruncatedSeries &s);
fps::TruncatedSeries series_from_json(const json &j, fps::FramePtr frame, int order);

json frame_to_json(const fps::Frame &f);

// [{"beta": [..], "n": "p/q", "N": int | "p/q"}, ...]
json table_to_json(const invariants::InvariantTable &t);

struct JobDocument {
    lattice::ToricCYData toric;
    std::optional<lattice::BraneSpec> brane;
    mirror::FrameSpec frame;
    int truncation = 1;
    bool corrected = true;
    std::optional<std::pair<int, int>> normalization;
};

JobDocument parse_job(std::string_view text);

} // namespace syzmirror::io

#endif
