#include <syzmirror/cli.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include <syzmirror/invariants.hpp>
#include <syzmirror/mirror.hpp>

namespace syzmirror::cli
{

using io::json;

namespace
{

struct ValidationError : std::runtime_error {
    explicit ValidationError(std::vector<std::string> f)
        : std::runtime_error("validation failed"), failures(std::move(f))
    {
    }
    std::vector<std::string> failures;
};

json error_record(const std::string &kind, const std::string &message)
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

json matrix_json(const lattice::IntMatrix &m)
{
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(row);
    }
    return out;
}

json series_block(const fps::TruncatedSeries &s)
{
    return io::series_to_json(s);
}

json frame_block(const mirror::BraneFrame &bf)
{
    auto j = io::frame_to_json(*bf.frame());
    j["generators"] = matrix_json(bf.generators());
    return j;
}

void require_valid(const io::JobDocument &job, bool need_brane)
{
    auto rep = lattice::validate_cy(job.toric);
    if (need_brane) {
        if (!job.brane) {
            rep.failures.push_back("document has no brane");
        } else if (!job.brane->av_indices) {
            rep.failures.push_back("brane has no av_indices");
        } else if (rep.ok()) {
            const auto b = lattice::validate_brane(job.toric, *job.brane);
            rep.failures.insert(rep.failures.end(), b.failures.begin(), b.failures.end());
        }
    }
    if (!rep.ok()) {
        throw ValidationError(rep.failures);
    }
}

std::string pretty_series(const std::string &label, const fps::TruncatedSeries &s)
{
    return label + " = " + fps::format_series(s) + "\n";
}

CommandResult cmd_validate(const io::JobDocument &job)
{
    CommandResult res;
    const auto cy = lattice::validate_cy(job.toric);
    json out{{"cy", {{"ok", cy.ok()}, {"failures", cy.failures}}}};
    bool ok = cy.ok();
    std::string pretty = cy.ok() ? "toric data: ok\n" : "toric data: FAILED\n";
    for (const auto &f : cy.failures) {
        pretty += "  " + f + "\n";
    }
    if (cy.ok()) {
        out["charge_basis"] = matrix_json(lattice::resolved_charge_basis(job.toric));
        out["dual_exponents"] = matrix_json(lattice::dual_exponents(job.toric));
        if (job.toric.max_cones) {
            json pairs = json::array();
            for (const auto &[i, j] : lattice::gross_discriminant(job.toric)) {
                pairs.push_back({i, j});
            }
            out["gross_discriminant"] = pairs;
        }
    }
    if (job.brane) {
        const auto br = cy.ok() ? lattice::validate_brane(job.toric, *job.brane)
                                : lattice::ValidationReport{{"toric data invalid; brane not checked"}};
        out["brane"] = {{"ok", br.ok()}, {"failures", br.failures}};
        ok = ok && br.ok();
        pretty += br.ok() ? "brane: ok\n" : "brane: FAILED\n";
        for (const auto &f : br.failures) {
            pretty += "  " + f + "\n";
        }
        if (br.ok() && job.brane->av_indices && job.brane->m0) {
            const auto g = lattice::av_geometry(job.toric, *job.brane);
            json support = json::array();
            for (const auto &s : g.support) {
                support.push_back(to_string(s));
            }
            out["av_geometry"] = {{"c", to_string(g.c)}, {"edge", {g.edge.first, g.edge.second}}, {"support", support}};
            pretty += "Aganagic-Vafa constant c = " + to_string(g.c) + "\n";
        }
    }
    out["ok"] = ok;
    res.output = std::move(out);
    res.pretty = std::move(pretty);
    res.exit_code = ok ? Success : ValidationFailure;
    return res;
}

CommandResult cmd_curve(const io::JobDocument &job, int order, bool corrected)
{
    require_valid(job, false);
    const auto curve = mirror::build_curve(job.toric, corrected, order);
    json terms = json::array();
    for (const auto &t : curve.terms) {
        terms.push_back({{"z", t.z_exponents}, {"Q", t.q_exponents}, {"coefficient", series_block(t.coefficient)}});
    }
    CommandResult res;
    res.output = {{"n_z", curve.n_z},
                  {"corrected", corrected},
                  {"frame", io::frame_to_json(*curve.frame)},
                  {"terms", terms},
                  {"pretty", curve.pretty()}};
    res.pretty = "W = " + curve.pretty() + "\n";
    return res;
}

const lattice::BraneSpec *open_brane(const io::JobDocument &job)
{
    return job.brane && job.brane->av_indices ? &*job.brane : nullptr;
}

CommandResult cmd_map(const io::JobDocument &job, int order, bool inverse)
{
    require_valid(job, false);
    const auto *brane = open_brane(job);
    if (brane) {
        require_valid(job, true);
    }
    const auto data = inverse ? mirror::inverse_mirror_map(job.toric, order, brane)
                              : mirror::mirror_map(job.toric, order, brane);
    json A = json::array(), images = json::array();
    std::string pretty;
    for (std::size_t j = 0; j < data.A.size(); ++j) {
        A.push_back(series_block(data.A[j]));
        pretty += pretty_series("A" + std::to_string(j), data.A[j]);
    }
    const auto &target = inverse ? "q" : "Q";
    for (std::size_t a = 0; a < data.images.size(); ++a) {
        images.push_back(series_block(data.images[a]));
        const std::size_t label = data.has_open ? a : a + 1;
        pretty += pretty_series(target + std::to_string(label), data.images[a]);
    }
    CommandResult res;
    res.output = {{"direction", inverse ? "Q->q" : "q->Q"},
                  {"frame", io::frame_to_json(*data.frame)},
                  {"open", data.has_open},
                  {"A", A},
                  {"images", images}};
    res.pretty = std::move(pretty);
    return res;
}

CommandResult cmd_fiber(const io::JobDocument &job, int order)
{
    require_valid(job, false);
    const auto deltas = mirror::fiber_open_gw(job.toric, order);
    json out = json::array();
    std::string pretty;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out.push_back(series_block(deltas[i]));
        pretty += pretty_series("1+delta" + std::to_string(i), deltas[i]);
    }
    CommandResult res;
    res.output = {{"frame", io::frame_to_json(*mirror::closed_frame(job.toric.m() - job.toric.n(), "Q"))},
                  {"one_plus_delta", out}};
    res.pretty = std::move(pretty);
    return res;
}

json brane_series_json(const mirror::BraneMirrorSeries &b, const mirror::BraneFrame &bf)
{
    return {{"frame", frame_block(bf)},
            {"permutation", b.permutation},
            {"z1", series_block(b.z1)},
            {"z2", series_block(b.z2)},
            {"normalization", {b.sign_normalization.first, b.sign_normalization.second}},
            {"residual", series_block(b.residual)},
            {"residual_zero", b.residual.is_zero()}};
}

std::string normalization_text(const std::pair<int, int> &n)
{
    return "normalization (e1, e2) = (" + std::to_string(n.first) + ", " + std::to_string(n.second) + ")\n";
}

CommandResult cmd_brane(const io::JobDocument &job, int order, std::optional<std::pair<int, int>> norm)
{
    require_valid(job, true);
    const mirror::BraneFrame bf(job.toric.m() - job.toric.n(), job.frame);
    const auto b = mirror::av_mirror_brane(job.toric, *job.brane, job.frame, order, norm);
    CommandResult res;
    res.output = brane_series_json(b, bf);
    res.pretty = pretty_series("z1", b.z1) + pretty_series("z2", b.z2) + normalization_text(b.sign_normalization)
                 + (b.residual.is_zero() ? "residual: 0\n" : "residual: NONZERO\n");
    return res;
}

CommandResult cmd_disc(const io::JobDocument &job, int order, std::optional<std::pair<int, int>> norm)
{
    require_valid(job, true);
    const mirror::BraneFrame bf(job.toric.m() - job.toric.n(), job.frame);
    const auto b = mirror::av_mirror_brane(job.toric, *job.brane, job.frame, order, norm);
    const auto table = invariants::multiple_cover_inversion(invariants::extract_open_gw(b.z2));
    const auto F = invariants::disc_potential(b.z2);
    const auto check = invariants::integrality_check(table);

    json failures = json::array();
    for (const auto &beta : check.failures) {
        failures.push_back(beta);
    }
    CommandResult res;
    res.output = {{"frame", frame_block(bf)},
                  {"normalization", {b.sign_normalization.first, b.sign_normalization.second}},
                  {"F", series_block(F)},
                  {"invariants", io::table_to_json(table)},
                  {"integrality", {{"pass", check.ok()}, {"failures", failures}}}};
    std::ostringstream p;
    p << pretty_series("F", F) << normalization_text(b.sign_normalization);
    p << "beta\tn\tN\n";
    for (const auto &row : res.output["invariants"]) {
        p << row["beta"].dump() << "\t" << row["n"].get<std::string>() << "\t" << row["N"].dump() << "\n";
    }
    p << (check.ok() ? "integrality: pass\n" : "integrality: FAIL\n");
    res.pretty = p.str();
    return res;
}

CommandResult cmd_compare(const io::JobDocument &job, int order, std::optional<std::pair<int, int>> norm)
{
    require_valid(job, true);
    const mirror::BraneFrame bf(job.toric.m() - job.toric.n(), job.frame);
    const auto rep = mirror::compare_naive(job.toric, *job.brane, job.frame, order, norm);
    json eqs = json::array();
    for (const auto &e : rep.naive.equations) {
        eqs.push_back({{"z", e.z_exponents}, {"Q", e.q_exponents}, {"c", to_string(e.c)}, {"phase", to_string(e.phase)}});
    }
    CommandResult res;
    res.output = {
        {"naive",
         {{"permutation", rep.naive.permutation},
          {"equations", eqs},
          {"z1_is_open_parameter", rep.naive.z1_is_open_parameter},
          {"z2_is_one", rep.naive.z2_is_one}}},
        {"corrected", brane_series_json(rep.corrected, bf)},
        {"z1_minus_Q0", series_block(rep.z1_minus_q0)},
        {"z2_minus_1", series_block(rep.z2_minus_one)},
        {"z1_mod_closed", series_block(rep.z1_mod_closed)},
        {"z2_mod_closed", series_block(rep.z2_mod_closed)},
        {"vanish_mod_closed", {{"z1", rep.z1_vanishes_mod_closed}, {"z2", rep.z2_vanishes_mod_closed}}},
        {"leading", {{"z1", series_block(rep.z1_leading)}, {"z2", series_block(rep.z2_leading)}}},
    };
    res.pretty = std::string("naive: z1 = Q0 ") + (rep.naive.z1_is_open_parameter ? "yes" : "no") + ", z2 = 1 "
                 + (rep.naive.z2_is_one ? "yes" : "no") + "\n" + pretty_series("z1 - Q0", rep.z1_minus_q0)
                 + pretty_series("z2 - 1", rep.z2_minus_one) + pretty_series("(z1 - Q0) mod closed", rep.z1_mod_closed)
                 + pretty_series("(z2 - 1) mod closed", rep.z2_mod_closed);
    return res;
}

} // namespace

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names{"validate",         "curve",        "mirror-map",   "inverse-map",
                                                "fiber-invariants", "brane-mirror", "disc-invariants", "compare-naive"};
    return names;
}

CommandResult run_command(const std::string &command, std::string_view document, const CommandOptions &options)
{
    CommandResult res;
    try {
        const auto job = io::parse_job(document);
        const int order = options.order.value_or(job.truncation);
        if (order < 1) {
            throw io::ParseError("order", "must be a positive integer");
        }
        const bool corrected = options.corrected.value_or(job.corrected);
        const auto norm = options.normalization ? options.normalization : job.normalization;

        if (command == "validate") {
            res = cmd_validate(job);
        } else if (command == "curve") {
            res = cmd_curve(job, order, corrected);
        } else if (command == "mirror-map") {
            res = cmd_map(job, order, false);
        } else if (command == "inverse-map") {
            res = cmd_map(job, order, true);
        } else if (command == "fiber-invariants") {
            res = cmd_fiber(job, order);
        } else if (command == "brane-mirror") {
            res = cmd_brane(job, order, norm);
        } else if (command == "disc-invariants") {
            res = cmd_disc(job, order, norm);
        } else if (command == "compare-naive") {
            res = cmd_compare(job, order, norm);
        } else {
            return {Failure, error_record("usage", "unknown command '" + command + "'"), {}};
        }
        res.output["command"] = command;
        res.output["order"] = order;
    } catch (const io::ParseError &e) {
        res = {ParseFailure, error_record("parse", e.what()), {}};
        res.output["error"]["where"] = e.where;
    } catch (const ValidationError &e) {
        res = {ValidationFailure, error_record("validation", "input failed validation"), {}};
        res.output["error"]["failures"] = e.failures;
    } catch (const mirror::MirrorError &e) {
        res = {PreconditionFailure, error_record("precondition", e.what()), {}};
    } catch (const fps::SeriesError &e) {
        res = {PreconditionFailure, error_record("precondition", e.what()), {}};
    } catch (const invariants::InvariantError &e) {
        res = {PreconditionFailure, error_record("precondition", e.what()), {}};
    } catch (const lattice::LatticeError &e) {
        res = {PreconditionFailure, error_record("precondition", e.what()), {}};
    } catch (const std::exception &e) {
        res = {Failure, error_record("internal", e.what()), {}};
    }
    return res;
}

int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Mirror curves, mirror maps and disc invariants of toric Calabi-Yau threefolds", "syzmirror"};
    std::string command;
    std::string input = "-";
    std::optional<int> order;
    bool corrected = true;
    std::string output = "json";
    std::string normalization;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
    app.add_option("--input,-i", input, "Job document path, '-' for stdin");
    app.add_option("--order,-n", order, "Truncation order (overrides the document)")->check(CLI::PositiveNumber);
    auto *corrected_opt = app.add_flag("--corrected", corrected, "Include the fiber corrections (true/false)");
    app.add_option("--output,-o", output, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
    app.add_option("--normalization", normalization, "Sign normalization e1,e2 with entries 1 or -1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? Success : Failure;
    }

    CommandOptions options;
    options.order = order;
    if (corrected_opt->count() > 0) {
        options.corrected = corrected;
    }
    if (!normalization.empty()) {
        int e1 = 0, e2 = 0;
        char comma = 0;
        std::istringstream s(normalization);
        if (!(s >> e1 >> comma >> e2) || comma != ',' || (e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) {
            err << "--normalization expects e1,e2 with entries 1 or -1\n";
            return Failure;
        }
        options.normalization = std::pair<int, int>(e1, e2);
    }

    std::string text;
    if (input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream f(input, std::ios::binary);
        if (!f) {
            out << error_record("io", "cannot read " + input).dump(2) << "\n";
            return Failure;
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
    }

    const auto res = run_command(command, text, options);
    out << res.output.dump(2) << "\n";
    if (output == "pretty") {
        if (res.output.contains("error")) {
            err << "error: " << res.output["error"]["message"].get<std::string>() << "\n";
        } else {
            err << res.pretty;
        }
    }
    return res.exit_code;
}

} // namespace syzmirror::cli
