#include <syzmirror/serialize.hpp>

#include <algorithm>

namespace syzmirror::io
{

namespace
{

std::string location(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string at(const std::string &path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const json &field(const json &obj, const std::string &key, const std::string &path)
{
    if (!obj.is_object()) {
        throw ParseError(path, "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path.empty() ? key : path + "." + key, "missing field");
    }
    return *it;
}

const json *optional_field(const json &obj, const std::string &key)
{
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t read_int(const json &j, const std::string &path)
{
    if (!j.is_number_integer()) {
        throw ParseError(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

Rational read_rational(const json &j, const std::string &path)
{
    if (j.is_number_integer()) {
        return Rational(static_cast<long>(j.get<std::int64_t>()));
    }
    if (!j.is_string()) {
        throw ParseError(path, "expected a rational string \"p\" or \"p/q\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const RationalParseError &e) {
        throw ParseError(path, e.what());
    }
}

const json &array(const json &j, const std::string &path)
{
    if (!j.is_array()) {
        throw ParseError(path, "expected an array");
    }
    return j;
}

lattice::IntVector int_vector(const json &j, const std::string &path)
{
    lattice::IntVector v;
    const auto &a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        v.push_back(read_int(a[i], at(path, i)));
    }
    return v;
}

lattice::IntMatrix int_matrix(const json &j, const std::string &path)
{
    lattice::IntMatrix m;
    const auto &a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.push_back(int_vector(a[i], at(path, i)));
    }
    return m;
}

std::vector<int> small_ints(const json &j, const std::string &path)
{
    std::vector<int> v;
    for (auto x : int_vector(j, path)) {
        v.push_back(static_cast<int>(x));
    }
    return v;
}

std::vector<Rational> rationals(const json &j, const std::string &path)
{
    std::vector<Rational> v;
    const auto &a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        v.push_back(read_rational(a[i], at(path, i)));
    }
    return v;
}

} // namespace

json series_to_json(const fps::TruncatedSeries &s)
{
    json out = json::array();
    for (const auto &[e, c] : s.terms()) {
        out.push_back({{"e", e}, {"c", to_string(c)}});
    }
    return out;
}

fps::TruncatedSeries series_from_json(const json &j, fps::FramePtr frame, int order)
{
    fps::TruncatedSeries::Terms terms;
    const auto &a = array(j, "series");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto path = at("series", i);
        auto e = small_ints(field(a[i], "e", path), path + ".e");
        auto c = read_rational(field(a[i], "c", path), path + ".c");
        terms[std::move(e)] += c;
    }
    try {
        return fps::TruncatedSeries::from_terms(std::move(frame), order, std::move(terms));
    } catch (const fps::SeriesError &e) {
        throw ParseError("series", e.what());
    }
}

json frame_to_json(const fps::Frame &f)
{
    return {{"names", f.names()}, {"grading", f.grading()}, {"boundary_grading", f.boundary_grading()}};
}

json table_to_json(const invariants::InvariantTable &t)
{
    std::map<fps::Exponent, json> rows;
    for (const auto &[beta, n] : t.n) {
        rows[beta] = {{"beta", beta}, {"n", to_string(n)}};
    }
    if (t.N) {
        for (const auto &[beta, N] : *t.N) {
            auto &row = rows[beta];
            if (row.is_null()) {
                row = {{"beta", beta}, {"n", "0"}};
            }
            if (is_integer(N)) {
                row["N"] = N.get_num().get_si();
            } else {
                row["N"] = to_string(N);
            }
        }
        for (auto &[beta, row] : rows) {
            if (!row.contains("N")) {
                row["N"] = 0;
            }
        }
    }
    json out = json::array();
    for (auto &[beta, row] : rows) {
        out.push_back(std::move(row));
    }
    return out;
}

JobDocument parse_job(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(location(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
    }
    if (!doc.is_object()) {
        throw ParseError("document", "expected an object");
    }

    JobDocument job;
    const auto &toric = field(doc, "toric", "");
    job.toric.rays = int_matrix(field(toric, "rays", "toric"), "toric.rays");
    job.toric.u = int_vector(field(toric, "u", "toric"), "toric.u");
    if (const auto *l = optional_field(toric, "lambda")) {
        job.toric.lambda = rationals(*l, "toric.lambda");
    } else {
        job.toric.lambda.assign(job.toric.rays.size(), Rational(0));
    }
    if (const auto *c = optional_field(toric, "max_cones")) {
        std::vector<std::vector<int>> cones;
        const auto &a = array(*c, "toric.max_cones");
        for (std::size_t i = 0; i < a.size(); ++i) {
            cones.push_back(small_ints(a[i], at("toric.max_cones", i)));
        }
        job.toric.max_cones = std::move(cones);
    }
    if (const auto *cb = optional_field(toric, "charge_basis")) {
        job.toric.charge_basis = int_matrix(*cb, "toric.charge_basis");
    }

    if (const auto *b = optional_field(doc, "brane")) {
        lattice::BraneSpec brane;
        brane.charges = int_matrix(field(*b, "charges", "brane"), "brane.charges");
        if (const auto *c = optional_field(*b, "constants")) {
            brane.constants = rationals(*c, "brane.constants");
        } else {
            brane.constants.assign(brane.charges.size(), Rational(0));
        }
        if (const auto *p = optional_field(*b, "phases")) {
            brane.phases = rationals(*p, "brane.phases");
        } else {
            brane.phases.assign(brane.charges.size(), Rational(0));
        }
        if (const auto *av = optional_field(*b, "av_indices")) {
            brane.av_indices = small_ints(*av, "brane.av_indices");
        }
        if (const auto *m0 = optional_field(*b, "m0")) {
            brane.m0 = rationals(*m0, "brane.m0");
        }
        if (const auto *f = optional_field(*b, "frame")) {
            job.frame.generators = int_matrix(*f, "brane.frame");
        }
        if (const auto *g = optional_field(*b, "grading")) {
            job.frame.grading = small_ints(*g, "brane.grading");
        }
        if (const auto *g = optional_field(*b, "boundary_grading")) {
            job.frame.boundary_grading = small_ints(*g, "brane.boundary_grading");
        }
        job.brane = std::move(brane);
    }

    if (const auto *t = optional_field(doc, "truncation")) {
        const auto v = read_int(*t, "truncation");
        if (v < 1 || v > 1000) {
            throw ParseError("truncation", "must be a positive integer");
        }
        job.truncation = static_cast<int>(v);
    }
    if (const auto *c = optional_field(doc, "corrected")) {
        if (!c->is_boolean()) {
            throw ParseError("corrected", "expected true or false");
        }
        job.corrected = c->get<bool>();
    }
    if (const auto *n = optional_field(doc, "normalization")) {
        const auto v = int_vector(*n, "normalization");
        if (v.size() != 2 || std::any_of(v.begin(), v.end(), [](auto x) { return x != 1 && x != -1; })) {
            throw ParseError("normalization", "expected two signs, each 1 or -1");
        }
        job.normalization = std::pair<int, int>(static_cast<int>(v[0]), static_cast<int>(v[1]));
    }
    return job;
}

} // namespace syzmirror::io
