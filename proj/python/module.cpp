#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <syzmirror/cli.hpp>

namespace py = pybind11;
using namespace syzmirror;

PYBIND11_MODULE(_syzmirror, m)
{
    m.doc() = "Exact mirror-map and brane series for toric Calabi-Yau threefolds";

    m.def("command_names", &cli::command_names);

    m.def(
        "run_command",
        [](const std::string &command, const std::string &document, std::optional<int> order,
           std::optional<bool> corrected, std::optional<std::pair<int, int>> normalization) {
            cli::CommandOptions opt{order, corrected, normalization};
            cli::CommandResult r;
            {
                py::gil_scoped_release release;
                r = cli::run_command(command, document, opt);
            }
            return py::make_tuple(r.exit_code, r.output.dump(), r.pretty);
        },
        py::arg("command"), py::arg("document"), py::kw_only(), py::arg("order") = py::none(),
        py::arg("corrected") = py::none(), py::arg("normalization") = py::none(),
        "Runs one command on a JSON job; returns (exit_code, json_text, pretty_text).");
}
