#include "help2p/lattice_oracle.hpp"
#include "help2p/mod4.hpp"
#include "help2p/pgq.hpp"
#include "help2p/table_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace help2p;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
Family family_of(const std::string& name) {
    if (name == "PSL") return Family::PSL;
    if (name == "PGL") return Family::PGL;
    throw UnsupportedInput("family must be PSL or PGL, got " + name);
}

const CharacterTable& table_for(const std::string& family, std::int64_t q, const std::optional<std::string>& document,
                                std::optional<CharacterTable>& storage) {
    if (document) return storage.emplace(ingest_table(*document));
    return builtin_table(family_of(family), q);
}

std::string solve_json(const std::string& family, std::int64_t q, std::int64_t order, bool mod4,
                       const std::optional<std::string>& table_json, unsigned jobs) {
    std::optional<CharacterTable> storage;
    const auto& table = table_for(family, q, table_json, storage);
    SolveOptions options;
    options.jobs = jobs;
    const auto providers = mod4 ? applicable_providers(table, order) : ProviderList{};
    py::gil_scoped_release release;
    return to_json(solve(table, order, providers, options), table).dump();
}

std::string order2p_json(std::int64_t q, const std::string& family, bool mod4, unsigned jobs) {
    VerdictOptions options;
    options.use_mod4 = mod4;
    options.solve.jobs = jobs;
    py::gil_scoped_release release;
    return to_json(order2p_verdict(q, family_of(family), options).verdict).dump();
}

std::string pgq_json(std::int64_t q, const std::string& family, const std::vector<std::string>& disabled, bool mod4) {
    PgqOptions options;
    options.order2p.use_mod4 = mod4;
    options.disabled_rules.insert(disabled.begin(), disabled.end());
    py::gil_scoped_release release;
    return to_json(pgq_verdict(q, family_of(family), options)).dump();
}

std::string oracle_json(const std::string& experiment, std::size_t a, std::size_t c, int precision, std::size_t samples,
                        std::uint64_t seed, unsigned jobs) {
    py::gil_scoped_release release;
    if (experiment == "v4") return to_json(run_v4_trace_experiment(a, c, precision, samples, seed, jobs)).dump();
    if (experiment == "d8") return to_json(run_d8_trace_experiment(a, precision, samples, seed, jobs)).dump();
    if (experiment == "closure") return to_json(v4_pattern_closure(a, c, precision, samples, seed)).dump();
    if (experiment == "lambda") return to_json(lambda_closure_check()).dump();
    throw UnsupportedInput("unknown experiment " + experiment);
}

py::object to_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(py::int_(py::str(r.get_num().get_str())),
                                                             py::int_(py::str(r.get_den().get_str())));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "HeLP and mod-4 block constraints for PSL(2,q) and PGL(2,q)";

    py::register_exception<UnsupportedInput>(m, "UnsupportedInput", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    m.def("root_trace", [](std::int64_t n, std::int64_t a) { return to_fraction(root_trace(n, a)); }, py::arg("n"),
          py::arg("a"));
    m.def("table_json", [](const std::string& family, std::int64_t q) { return export_table(builtin_table(family_of(family), q)); },
          py::arg("family"), py::arg("q"));
    m.def("validate_table_json", [](const std::string& doc) { return ingest_table(doc).descriptor(); }, py::arg("document"));
    m.def("solve_json", &solve_json, py::arg("family"), py::arg("q"), py::arg("order"), py::arg("mod4") = true,
          py::arg("table") = std::nullopt, py::arg("jobs") = 1);
    m.def("order2p_json", &order2p_json, py::arg("q"), py::arg("family") = "PSL", py::arg("mod4") = true,
          py::arg("jobs") = 1);
    m.def("pgq_json", &pgq_json, py::arg("q"), py::arg("family") = "PSL",
          py::arg("disabled") = std::vector<std::string>{}, py::arg("mod4") = true);
    m.def("conditions_json", [](std::int64_t q) { return to_json(pgq_conditions(q)).dump(); }, py::arg("q"));
    m.def("oracle_json", &oracle_json, py::arg("experiment"), py::arg("a") = 1, py::arg("c") = 1,
          py::arg("precision") = TruncatedTwoAdicInt::default_precision, py::arg("samples") = 1000, py::arg("seed") = 1,
          py::arg("jobs") = 1);
    m.def("lambda_membership",
          [](long x, long y, long z) -> std::optional<std::tuple<long, long, long>> {
              const auto c = lambda_membership({Integer(x), Integer(y), Integer(z)});
              if (!c) return std::nullopt;
              return std::tuple{(*c)[0].get_si(), (*c)[1].get_si(), (*c)[2].get_si()};
          },
          py::arg("x"), py::arg("y"), py::arg("z"));
}
