// Python bindings. Rationals cross the boundary as "p/q" strings; the package
// __init__ turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "hyplyap/error.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/hyperbolic.hpp"
#include "hyplyap/lyapunov.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/run_record.hpp"
#include "hyplyap/series.hpp"

namespace py = pybind11;
using namespace hyplyap;

namespace {

using Quad = std::tuple<double, double, double, double>;

hyperbolic::Isometry isometry(const Quad& m) {
  return {std::get<0>(m), std::get<1>(m), std::get<2>(m), std::get<3>(m)};
}

Quad quad(const hyperbolic::Isometry& m) { return {m.a, m.b, m.c, m.d}; }

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::vector<Rational> rationals(const std::vector<std::string>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

monodromy::MonodromyRep pick_rep(std::optional<int> case_id, const std::optional<std::vector<std::string>>& alpha,
                                 const std::optional<std::vector<std::string>>& beta) {
  if (case_id) {
    if (alpha || beta) throw Error(ErrorCode::InvalidParams, "give either case or alpha/beta, not both");
    return monodromy::cy_realization(*case_id);
  }
  if (!alpha || !beta) throw Error(ErrorCode::InvalidParams, "need case or both alpha and beta");
  return monodromy::levelt_construct(monodromy::HypergeometricParams::make(rationals(*alpha), rationals(*beta)));
}

py::dict fit_dict(const series::GrowthFit& f) {
  py::dict d;
  d["C"] = f.C;
  d["intercept"] = f.intercept;
  d["rms_sqrt"] = f.rms_sqrt;
  d["slope_linear"] = f.slope_linear;
  d["intercept_linear"] = f.intercept_linear;
  d["rms_linear"] = f.rms_linear;
  d["n0"] = f.n0;
  d["N"] = f.N;
  d["sqrt_growth_preferred"] = f.sqrt_growth_preferred();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hyplyap, m) {
  m.doc() = "Lyapunov spectra of hypergeometric local systems, Hodge-bundle degrees and period series";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&] { return py::object(py::exception<Error>(m, "HyplyapError", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("version", [] { return std::string(tool_version()); });

  // geometry
  m.def("mobius_apply", [](const Quad& mat, std::pair<double, double> z) {
    const auto w = hyperbolic::mobius_apply(isometry(mat), {z.first, z.second});
    return std::make_pair(w.x, w.y);
  });
  m.def("geodesic_step", [](const Quad& frame, double dt) {
    return quad(hyperbolic::geodesic_step({isometry(frame)}, dt).frame);
  });
  m.def("basepoint", [](const Quad& frame) {
    const auto z = hyperbolic::basepoint({isometry(frame)});
    return std::make_pair(z.x, z.y);
  });
  m.def("reduce_to_domain", [](const Quad& frame) {
    const auto r = hyperbolic::reduce_to_domain({isometry(frame)});
    std::vector<std::string> labels;
    for (auto l : r.word.labels()) labels.emplace_back(hyperbolic::label_name(l));
    return std::make_pair(quad(r.frame.frame), labels);
  });

  // monodromy
  m.def("catalog", [] {
    py::list out;
    for (const auto& c : monodromy::cy_catalog()) {
      py::dict d;
      d["id"] = c.id;
      d["label"] = c.label;
      d["C"] = c.C;
      d["d"] = c.d;
      d["mu1"] = to_string(c.mu1);
      d["mu2"] = to_string(c.mu2);
      d["thin_expected"] = c.thin_expected();
      out.append(d);
    }
    return out;
  });
  m.def(
      "check_nonexpanding",
      [](std::optional<int> case_id, std::optional<std::vector<std::string>> alpha,
         std::optional<std::vector<std::string>> beta) {
        const auto s = monodromy::check_nonexpanding(pick_rep(case_id, alpha, beta));
        py::dict d;
        d["h0"] = s.moduli[0];
        d["h1"] = s.moduli[1];
        d["hinf"] = s.moduli[2];
        d["non_expanding"] = s.non_expanding;
        return d;
      },
      py::arg("case") = py::none(), py::arg("alpha") = py::none(), py::arg("beta") = py::none());
  m.def("hodge_numbers", [](const std::vector<std::string>& alpha, const std::vector<std::string>& beta) {
    return monodromy::hodge_numbers(monodromy::HypergeometricParams::make(rationals(alpha), rationals(beta)));
  });

  // exact degrees and bounds
  m.def("cy_hodge_degrees", [](const std::string& mu1, const std::string& mu2) {
    const auto d = hodge::cy_hodge_degrees(parse_rational(mu1), parse_rational(mu2));
    return strings({d.e30, d.e21, d.e12, d.e03});
  });
  m.def("main_bound", [](const std::string& deg_par, long genus, long cusps) {
    return to_string(hodge::main_bound(parse_rational(deg_par), genus, cusps));
  });
  m.def("orbifold_chi", [](const std::string& mu1, const std::string& mu2) {
    return to_string(hodge::orbifold_normalize({}, parse_rational(mu1), parse_rational(mu2)).chi_abs);
  });
  m.def("hyperelliptic_quotient_degree", [](long genus, long k, const std::string& stratum) {
    return to_string(hodge::hyperelliptic_quotient_degree(genus, k, hodge::parse_stratum(stratum)));
  });
  m.def("large_genus_bound", [](long genus, long k, const std::string& stratum) {
    const auto b = hodge::large_genus_bound(genus, k, hodge::parse_stratum(stratum));
    return std::make_pair(to_string(b.sum_bound), to_string(b.lambda_k_bound));
  });

  // simulation
  m.def(
      "estimate",
      [](std::optional<int> case_id, std::optional<std::vector<std::string>> alpha,
         std::optional<std::vector<std::string>> beta, double dt, std::int64_t steps, std::int64_t burn_in,
         std::int64_t qr_interval, std::int64_t trajectories, std::uint64_t seed, double y_guard, int cusp_rotation,
         unsigned threads) {
        const auto rep = pick_rep(case_id, alpha, beta);
        lyapunov::SimulationConfig cfg;
        cfg.dt = dt;
        cfg.steps = steps;
        cfg.burn_in = burn_in;
        cfg.qr_interval = qr_interval;
        cfg.trajectories = trajectories;
        cfg.seed = seed;
        cfg.y_guard = y_guard;
        cfg.assignment.rotation = cusp_rotation;
        lyapunov::LyapunovEstimate e;
        {
          py::gil_scoped_release release;
          e = lyapunov::estimate(rep, cfg, threads);
        }
        py::dict d;
        d["lambda"] = e.lambda;
        d["stderr"] = e.std_error;
        d["total_time"] = e.total_time;
        d["symmetry_defect"] = e.symmetry_defect;
        d["per_trajectory"] = e.per_trajectory;
        return d;
      },
      py::arg("case") = py::none(), py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
      py::arg("dt") = 0.1, py::arg("steps") = 2'000'000, py::arg("burn_in") = 10'000, py::arg("qr_interval") = 10,
      py::arg("trajectories") = 8, py::arg("seed") = 1, py::arg("y_guard") = 1e-12, py::arg("cusp_rotation") = 0,
      py::arg("threads") = 1);
  m.def("symmetry_defect", [](const std::vector<double>& lambda) { return lyapunov::symmetry_defect(lambda); });

  // series
  m.def("psi0_series", [](std::size_t n) { return strings(series::psi0_series(n).coefficients()); });
  m.def("wronskian_series", [](std::size_t n) { return strings(series::wronskian_series(n).coefficients()); });
  m.def("lambda_q_series", [](std::size_t n) { return strings(series::lambda_q_series(n).coefficients()); });
  m.def("inverse_F_coefficients", [](std::size_t n) {
    std::vector<Rational> c;
    {
      py::gil_scoped_release release;
      c = series::inverse_F_coefficients(n).coefficients();
    }
    return strings(c);
  });
  m.def(
      "growth_fit",
      [](const std::vector<std::string>& coeffs, std::size_t n0, std::size_t n) {
        return fit_dict(series::growth_fit(series::RationalSeries(rationals(coeffs)), n0, n));
      },
      py::arg("coeffs"), py::arg("n0"), py::arg("N") = 0);
}
