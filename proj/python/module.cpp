#include <pybind11/pybind11.h>

#include <fstream>

#include "semiinf/config.hpp"
#include "semiinf/workbench.hpp"

namespace py = pybind11;
using namespace semiinf;

namespace {
Config read_config(const std::string& path, const std::string& h_max) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!h_max.empty()) j["h_max"] = h_max;
    return parse_config(j);
}

py::tuple run(const std::string& path, const std::string& command, const std::string& suite, const std::string& h_max,
              int jobs, bool emit_witnesses, int hl_degree, const std::string& cache_dir) {
    Config cfg = read_config(path, h_max);
    Request req;
    req.command = command;
    req.suite = suite;
    req.jobs = jobs;
    req.emit_witnesses = emit_witnesses;
    req.hl_degree = hl_degree;
    req.cache_dir = cache_dir;
    Report rep;
    {
        py::gil_scoped_release release;
        rep = run_command(cfg, req);
    }
    return py::make_tuple(rep.exit_code, rep.json.dump());
}
}  // namespace

PYBIND11_MODULE(_semiinf, m) {
    m.doc() = "exact semi-infinite cohomology of free-field gauge theories";
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    m.def("run", &run, py::arg("config"), py::arg("command"), py::arg("suite") = "all", py::arg("h_max") = "",
          py::arg("jobs") = 1, py::arg("emit_witnesses") = false, py::arg("hl_degree") = -1, py::arg("cache_dir") = "",
          "run a workbench command; returns (exit_code, report JSON text)");
    m.def("config_hash", [](const std::string& path, const std::string& h_max) { return config_hash(read_config(path, h_max)); },
          py::arg("config"), py::arg("h_max") = "");
    m.attr("schema_version") = kSchemaVersion;
    m.attr("code_version") = kCodeVersion;
}
