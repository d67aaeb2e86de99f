#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltashell/multidim.hpp"
#include "deltashell/negcount.hpp"
#include "deltashell/oracle.hpp"
#include "deltashell/special.hpp"

namespace py = pybind11;
using namespace deltashell;

namespace {

ShellConfig config_of(const std::vector<double>& radii, const std::vector<double>& strengths) {
  return make_config(radii, strengths);
}

ChannelSpec channel_of(std::optional<double> l, std::optional<int> n, std::optional<int> ell) {
  if (l) return ChannelSpec::raw(*l);
  if (n && ell) return ChannelSpec::angular(*n, *ell);
  throw DomainError("give l, or both n and ell");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Negative eigenvalue counts for radial delta-shell operators";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<CountResult>(m, "CountResult")
      .def_readonly("count", &CountResult::count)
      .def_readonly("degenerate", &CountResult::degenerate)
      .def_readonly("alternative", &CountResult::alternative)
      .def_readonly("kappa_plus_alpha", &CountResult::kappa_plus_alpha)
      .def_readonly("method", &CountResult::method)
      .def("__repr__", [](const CountResult& r) {
        return "CountResult(count=" + std::to_string(r.count) + ", method='" + r.method + "')";
      });

  m.def(
      "count",
      [](const std::vector<double>& radii, const std::vector<double>& strengths, std::optional<double> l,
         std::optional<int> n, std::optional<int> ell, std::optional<double> tol) {
        return count_bound_states(config_of(radii, strengths), channel_of(l, n, ell), tol);
      },
      py::arg("radii"), py::arg("strengths"), py::kw_only(), py::arg("l") = py::none(), py::arg("n") = py::none(),
      py::arg("ell") = py::none(), py::arg("tol") = py::none(),
      "Number of negative eigenvalues in one channel.");

  m.def(
      "total",
      [](const std::vector<double>& radii, const std::vector<double>& strengths, int n, std::optional<int> lmax) {
        const TotalResult t = total_bound_states(config_of(radii, strengths), n, lmax);
        py::list ledger;
        for (const auto& e : t.ledger.entries)
          ledger.append(py::dict(py::arg("l") = e.ell, py::arg("l_eff") = e.l_eff, py::arg("mult") = e.multiplicity,
                                 py::arg("kappa") = e.kappa));
        return py::make_tuple(t.total, ledger);
      },
      py::arg("radii"), py::arg("strengths"), py::arg("n"), py::arg("lmax") = py::none(),
      "Total count in R^n and the per-channel ledger.");

  m.def(
      "kappa_matrix",
      [](const std::vector<double>& radii, const std::vector<double>& strengths, double l) {
        const auto k = kappa_matrix(config_of(radii, strengths), l).entries;
        std::vector<std::vector<double>> out(k.rows(), std::vector<double>(k.cols()));
        for (Eigen::Index i = 0; i < k.rows(); ++i)
          for (Eigen::Index j = 0; j < k.cols(); ++j) out[i][j] = k(i, j);
        return out;
      },
      py::arg("radii"), py::arg("strengths"), py::arg("l"));

  m.def(
      "oscillation_count",
      [](const std::vector<double>& radii, const std::vector<double>& strengths, double l) {
        return oscillation_count(config_of(radii, strengths), l);
      },
      py::arg("radii"), py::arg("strengths"), py::arg("l"));

  m.def("phi", &phi_l, py::arg("l"), py::arg("lam"), py::arg("r"));
  m.def("psi", &psi_l, py::arg("l"), py::arg("lam"), py::arg("r"));
  m.def("green_kernel", &green_kernel, py::arg("l"), py::arg("lam"), py::arg("r"), py::arg("s"));
  m.def("effective_l", &effective_l, py::arg("n"), py::arg("ell"));
  m.def("channel_multiplicity", &channel_multiplicity, py::arg("n"), py::arg("ell"));
}
