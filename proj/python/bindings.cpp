#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isogeny2/pipeline.hpp"
#include "isogeny2/rm_q5.hpp"

namespace py = pybind11;
using namespace isogeny2;

namespace {

std::vector<uint64_t> to_ints(const FieldPtr& F, const std::vector<Fe>& v) {
  std::vector<uint64_t> out;
  for (const Fe& x : v) out.push_back(F->coeffs(x)[0]);
  return out;
}

std::vector<std::vector<uint64_t>> mat_ints(const Mat& M) {
  std::vector<std::vector<uint64_t>> out(M.rows());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) out[i].push_back(M.field()->coeffs(M.at(i, j))[0]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_isogeny2, m) {
  m.doc() = "Explicit isogenies between Jacobians of genus 2 curves";

  static py::exception<Error> exc(m, "IsogenyError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      exc(e.what());
    }
  });

  m.def(
      "run_json",
      [](const std::string& config) {
        RunConfig cfg = config_from_json(nlohmann::json::parse(config));
        py::gil_scoped_release release;
        return run(cfg).dump();
      },
      py::arg("config"), "Run the pipeline on a JSON config string; returns a JSON string.");

  m.def(
      "igusa_invariants",
      [](uint64_t p, const std::vector<int64_t>& coeffs) {
        auto F = Field::prime(p);
        auto j = igusa_invariants(CurveModel::from_ints(F, coeffs).sextic());
        return to_ints(F, {j.begin(), j.end()});
      },
      py::arg("p"), py::arg("coeffs"));

  m.def(
      "gundlach_to_igusa",
      [](uint64_t p, int64_t g1, int64_t g2) {
        auto F = Field::prime(p);
        auto j = gundlach_to_igusa(F, {F->from_int(g1), F->from_int(g2)});
        return to_ints(F, {j.begin(), j.end()});
      },
      py::arg("p"), py::arg("g1"), py::arg("g2"));

  m.def(
      "dtg_matrix",
      [](uint64_t p, const std::vector<int64_t>& coeffs, int64_t sqrt5) {
        auto F = Field::prime(p);
        return mat_ints(dtG_matrix_unchecked(CurveModel::from_ints(F, coeffs), F->from_int(sqrt5)).dtg);
      },
      py::arg("p"), py::arg("coeffs"), py::arg("sqrt5"));
}
