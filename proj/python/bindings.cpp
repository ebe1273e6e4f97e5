#include "thetacong/arith.hpp"
#include "thetacong/congruence.hpp"
#include "thetacong/error.hpp"
#include "thetacong/etaforms.hpp"
#include "thetacong/jobs.hpp"
#include "thetacong/partitions.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace thetacong;

namespace {

py::dict series_dict(const Q24Series &s)
{
    py::dict d;
    d["ell"] = s.ell();
    d["start"] = s.start();
    d["coeffs"] = std::vector<std::uint32_t>(s.coeffs().begin(), s.coeffs().end());
    return d;
}

py::object shape_object(const std::optional<ThetaShape> &s)
{
    if (!s)
        return py::none();
    py::dict d;
    d["b"] = s->b;
    d["kind"] = to_string(s->kind);
    d["scalar"] = s->scalar;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Partition congruences for r-colored partitions modulo primes";

    py::register_exception<Error>(m, "ThetacongError");

    m.def("kronecker", &kronecker, py::arg("a"), py::arg("n"));
    m.def("sigma", [](std::int64_t n_max) {
        const auto t = sigma_sieve(n_max);
        return std::vector<std::uint64_t>(t.values().begin(), t.values().end());
    }, py::arg("n_max"), "sigma(n) for 0 <= n <= n_max (entry 0 is 0)");
    m.def("inv_mod", &inv_mod, py::arg("a"), py::arg("ell"));

    m.def("pr_mod", [](int r, std::uint32_t ell, std::int64_t n_max) { return pr_mod(r, ell, n_max).values; },
          py::arg("r"), py::arg("ell"), py::arg("n_max"));
    m.def("pr_exact", [](int r, std::int64_t n_max) {
        py::list out;
        for (const auto &v : pr_exact(r, n_max).values)
            out.append(py::int_(py::str(v.get_str())));
        return out;
    }, py::arg("r"), py::arg("n_max"));

    m.def("eta_pow", [](std::int64_t e, std::uint32_t ell, std::int64_t trunc) { return series_dict(eta_pow(e, ell, trunc)); },
          py::arg("e"), py::arg("ell"), py::arg("trunc"));
    m.def("build_f", [](int r, std::uint32_t ell, int delta, std::int64_t trunc) {
        return series_dict(build_f(r, ell, delta, trunc).series);
    }, py::arg("r"), py::arg("ell"), py::arg("delta"), py::arg("trunc"));
    m.def("theta_detect_f", [](int r, std::uint32_t ell, int delta, std::int64_t trunc) {
        return shape_object(theta_detect(build_f(r, ell, delta, trunc).series));
    }, py::arg("r"), py::arg("ell"), py::arg("delta"), py::arg("trunc") = 12000,
       "theta_detect applied to f_{r,ell,delta}");
    m.def("dim_modular_forms", &dim_modular_forms, py::arg("k"));
    m.def("dim_cusp_forms", &dim_cusp_forms, py::arg("k"));

    m.def("ramanujan_check", &ramanujan_check, py::arg("r"), py::arg("ell"), py::arg("n_probe") = 2000);
    m.def("reduce_modulus", &reduce_modulus, py::arg("r"), py::arg("t"), py::arg("m"), py::arg("ell"));
    m.def("brute_verify", py::overload_cast<int, std::uint32_t, std::int64_t, std::int64_t, std::int64_t>(&brute_verify),
          py::arg("r"), py::arg("ell"), py::arg("m"), py::arg("t"), py::arg("n_max"));
    m.def("etafamily_verify", &etafamily_verify, py::arg("r"), py::arg("ell"), py::arg("family_case"),
          py::arg("trunc") = 2000);
    m.def("abnormal_verify", [](int r, std::uint32_t ell, int abnormal_case, std::int64_t trunc) {
        return shape_object(abnormal_verify(r, ell, abnormal_case, trunc));
    }, py::arg("r"), py::arg("ell"), py::arg("abnormal_case"), py::arg("trunc") = 2000);
    m.def("figure_pairs", [](std::int64_t r_max, std::uint32_t ell_max) {
        std::vector<std::pair<std::int64_t, std::uint32_t>> out;
        for (const auto &p : figure_pairs(r_max, ell_max))
            out.emplace_back(p.r, p.ell);
        return out;
    }, py::arg("r_max") = 501, py::arg("ell_max") = 1583);

    m.def("search", [](int r, std::uint32_t ell, int delta, std::uint32_t m_min, std::uint32_t m_max,
                       std::int64_t t_budget) {
        SearchOptions opt;
        opt.t_budget = t_budget;
        py::list out;
        for (const auto &v : rule_out_search(r, ell, delta, m_min, m_max, opt)) {
            py::dict d;
            d["r"] = v.r;
            d["ell"] = v.ell;
            d["m"] = v.m;
            d["delta"] = v.delta;
            d["status"] = to_string(v.status);
            d["t_plus"] = v.t_plus;
            d["t_minus"] = v.t_minus;
            d["budget_limited"] = v.budget_limited;
            d["notes"] = v.notes;
            out.append(d);
        }
        return out;
    }, py::arg("r"), py::arg("ell"), py::arg("delta"), py::arg("m_min") = 5, py::arg("m_max") = 200,
       py::arg("t_budget") = 100000);
}
