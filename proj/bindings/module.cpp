#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfcdf/accuracy.hpp"
#include "sfcdf/composed_error.hpp"
#include "sfcdf/quadrature.hpp"
#include "sfcdf/sampling.hpp"
#include "sfcdf/special_functions.hpp"

namespace py = pybind11;

namespace {

sfcdf::Orientation parse_orientation(const std::string& s) {
  if (s == "production") return sfcdf::Orientation::production;
  if (s == "cost") return sfcdf::Orientation::cost;
  throw std::invalid_argument("orientation must be 'production' or 'cost'");
}

sfcdf::TnMethod parse_tn_method(const std::string& s) {
  if (s == "bvn") return sfcdf::TnMethod::bvn;
  if (s == "owen") return sfcdf::TnMethod::owen;
  throw std::invalid_argument("tn method must be 'bvn' or 'owen'");
}

sfcdf::ExpMethod parse_exp_method(const std::string& s) {
  if (s == "emg") return sfcdf::ExpMethod::emg;
  if (s == "direct") return sfcdf::ExpMethod::direct;
  throw std::invalid_argument("exp method must be 'emg' or 'direct'");
}

} // namespace

PYBIND11_MODULE(_sfcdf, m) {
  m.doc() = "Analytic cdfs of the stochastic-frontier composed error eps = v - u";

  m.def("std_normal_pdf", &sfcdf::std_normal_pdf, py::arg("x"));
  m.def("std_normal_cdf", &sfcdf::std_normal_cdf, py::arg("x"));
  m.def("log_std_normal_cdf", &sfcdf::log_std_normal_cdf, py::arg("x"));
  m.def("owen_t", &sfcdf::owen_t, py::arg("h"), py::arg("g"),
        "Owen's T function T(h, g).");
  m.def("bvn_cdf", &sfcdf::bvn_cdf, py::arg("h"), py::arg("k"), py::arg("rho"),
        "Standard bivariate normal cdf P(X <= h, Y <= k).");

  m.def(
      "tn_pdf",
      [](double mu, double sigma_u, double sigma_v, double eps) {
        return sfcdf::tn_pdf(sfcdf::TruncNormalParams(mu, sigma_u, sigma_v), eps);
      },
      py::arg("mu"), py::arg("sigma_u"), py::arg("sigma_v"), py::arg("eps"),
      "Density of eps = v - u with truncated-normal inefficiency.");
  m.def(
      "tn_cdf",
      [](double mu, double sigma_u, double sigma_v, double kappa, const std::string& method,
         const std::string& orientation) {
        return sfcdf::cdf(sfcdf::TruncNormalParams(mu, sigma_u, sigma_v), kappa,
                          parse_orientation(orientation), parse_tn_method(method));
      },
      py::arg("mu"), py::arg("sigma_u"), py::arg("sigma_v"), py::arg("kappa"),
      py::arg("method") = "bvn", py::arg("orientation") = "production",
      "Cdf of the truncated-normal-family composed error.");
  m.def("half_normal_cdf", &sfcdf::half_normal_cdf, py::arg("sigma_u"), py::arg("sigma_v"),
        py::arg("kappa"), "Closed form for the mu = 0 (half-normal) case.");

  m.def(
      "exp_pdf",
      [](double lam, double sigma_v, double eps) {
        return sfcdf::exp_pdf(sfcdf::ExpParams(lam, sigma_v), eps);
      },
      py::arg("lambda"), py::arg("sigma_v"), py::arg("eps"),
      "Density of eps = v - u with exponential inefficiency.");
  m.def(
      "exp_cdf",
      [](double lam, double sigma_v, double kappa, const std::string& method,
         const std::string& orientation) {
        return sfcdf::cdf(sfcdf::ExpParams(lam, sigma_v), kappa,
                          parse_orientation(orientation), parse_exp_method(method));
      },
      py::arg("lambda"), py::arg("sigma_v"), py::arg("kappa"), py::arg("method") = "emg",
      py::arg("orientation") = "production",
      "Cdf of the exponential-family composed error.");

  m.def(
      "quad_cdf_tn",
      [](double mu, double sigma_u, double sigma_v, double kappa, int level_max,
         double abs_tol, double lower_cut) {
        const auto r = sfcdf::quad_cdf(sfcdf::TruncNormalParams(mu, sigma_u, sigma_v), kappa,
                                       {level_max, abs_tol, lower_cut});
        return py::make_tuple(r.value, r.error_estimate, r.converged);
      },
      py::arg("mu"), py::arg("sigma_u"), py::arg("sigma_v"), py::arg("kappa"),
      py::arg("level_max") = 12, py::arg("abs_tol") = 1e-12, py::arg("lower_cut") = -40.0,
      "Tanh-sinh oracle; returns (value, error_estimate, converged).");
  m.def(
      "quad_cdf_exp",
      [](double lam, double sigma_v, double kappa, int level_max, double abs_tol,
         double lower_cut) {
        const auto r = sfcdf::quad_cdf(sfcdf::ExpParams(lam, sigma_v), kappa,
                                       {level_max, abs_tol, lower_cut});
        return py::make_tuple(r.value, r.error_estimate, r.converged);
      },
      py::arg("lambda"), py::arg("sigma_v"), py::arg("kappa"), py::arg("level_max") = 12,
      py::arg("abs_tol") = 1e-12, py::arg("lower_cut") = -40.0,
      "Tanh-sinh oracle; returns (value, error_estimate, converged).");

  m.def("sample_trunc_normal", &sfcdf::sample_trunc_normal, py::arg("mu"), py::arg("sigma"),
        py::arg("n"), py::arg("seed"), "Deterministic TN(mu, sigma^2, 0, inf) draws.");
  m.def("sample_exponential", &sfcdf::sample_exponential, py::arg("lambda"), py::arg("n"),
        py::arg("seed"), "Deterministic rate-lambda exponential draws.");
  m.def("sample_normal", &sfcdf::sample_normal, py::arg("sigma"), py::arg("n"),
        py::arg("seed"), "Deterministic N(0, sigma^2) draws.");
  m.def(
      "empirical_quantile",
      [](const std::vector<double>& draws, double p) {
        return sfcdf::empirical_quantile(draws, p);
      },
      py::arg("draws"), py::arg("p"), "Type-1 (ceil(p n)-th order statistic) quantile.");

#ifdef SFCDF_VERSION
  m.attr("__version__") = SFCDF_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
