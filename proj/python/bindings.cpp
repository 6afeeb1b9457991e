#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "risqn/config.hpp"
#include "risqn/csv.hpp"
#include "risqn/entanglement.hpp"
#include "risqn/experiments.hpp"
#include "risqn/fso_channel.hpp"
#include "risqn/geometry.hpp"
#include "risqn/link_success.hpp"
#include "risqn/network_model.hpp"
#include "risqn/optimizer.hpp"
#include "risqn/specfun.hpp"

namespace py = pybind11;
using namespace risqn;

namespace {

py::dict solution_dict(const AllocationSolution& s) {
  py::dict d;
  d["ris"] = py::make_tuple(s.ris.x, s.ris.y, s.ris.h);
  d["r_in"] = s.r_in;
  d["p_succ"] = s.p_succ;
  d["r_e2e"] = s.r_e2e;
  d["fidelity"] = s.fidelity;
  d["wfi"] = s.wfi;
  d["objective"] = s.objective;
  d["feasible"] = s.feasible;
  py::dict flags;
  flags["memory"] = s.flags.memory;
  flags["min_rate"] = s.flags.min_rate;
  flags["fairness"] = s.flags.fairness;
  flags["fidelity"] = s.flags.fidelity;
  flags["region"] = s.flags.region;
  flags["separation"] = s.flags.separation;
  flags["rate_domain"] = s.flags.rate_domain;
  d["flags"] = flags;
  return d;
}

std::string table_to_csv(const ResultTable& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_risqn, m) {
  m.doc() = "RIS-assisted FSO entanglement distribution: link statistics, noise, optimization";

  py::register_exception<specfun::QuadratureError>(m, "QuadratureError");
  py::register_exception<NoFeasibleSolution>(m, "NoFeasibleSolution");

  py::class_<Point3D>(m, "Point3D")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("h"))
      .def_readwrite("x", &Point3D::x)
      .def_readwrite("y", &Point3D::y)
      .def_readwrite("h", &Point3D::h)
      .def("__repr__", [](const Point3D& p) {
        std::ostringstream s;
        s << "Point3D(" << p.x << ", " << p.y << ", " << p.h << ")";
        return s.str();
      });
  m.def("distance", &distance);

  py::class_<EnvironmentParams>(m, "EnvironmentParams")
      .def(py::init<>())
      .def_readwrite("wavelength", &EnvironmentParams::wavelength)
      .def_readwrite("attenuation_db_per_km", &EnvironmentParams::attenuation_db_per_km)
      .def_readwrite("cn2", &EnvironmentParams::cn2)
      .def_readwrite("aperture_radius", &EnvironmentParams::aperture_radius)
      .def_readwrite("beam_divergence", &EnvironmentParams::beam_divergence)
      .def_readwrite("sigma_theta", &EnvironmentParams::sigma_theta)
      .def_readwrite("sigma_phi", &EnvironmentParams::sigma_phi)
      .def_readwrite("ris_efficiency", &EnvironmentParams::ris_efficiency)
      .def_readwrite("responsivity", &EnvironmentParams::responsivity)
      .def_readwrite("gain_threshold", &EnvironmentParams::gain_threshold);

  m.def(
      "environment",
      [](const std::string& weather, const std::string& turbulence, const std::string& pointing) {
        return make_environment(parse_weather(weather), parse_turbulence(turbulence),
                                parse_pointing(pointing));
      },
      py::arg("weather") = "sunny", py::arg("turbulence") = "moderate",
      py::arg("pointing") = "low");

  m.def("atmospheric_loss", &atmospheric_loss, py::arg("env"), py::arg("d_e2e"));
  m.def("rytov_variance", &rytov_variance, py::arg("env"), py::arg("d"));
  m.def(
      "turbulence_params",
      [](double s2) {
        const TurbulenceParams t = turbulence_params(s2);
        return py::make_tuple(t.alpha, t.beta);
      },
      py::arg("rytov_var"), "(alpha, beta) of the Gamma-Gamma law");
  m.def("gamma_gamma_pdf", [](double ha, double alpha, double beta) {
    return gamma_gamma_pdf(ha, TurbulenceParams{alpha, beta, 0.0});
  });

  m.def(
      "prob_success",
      [](const EnvironmentParams& env, double d_sr, double d_ri) {
        return prob_success(build_link_budget(env, LinkGeometry{d_sr, d_ri}));
      },
      py::arg("env"), py::arg("d_sr"), py::arg("d_ri"));
  m.def(
      "prob_success_mc",
      [](const EnvironmentParams& env, double d_sr, double d_ri, std::size_t n,
         std::uint64_t seed) {
        const McEstimate e =
            prob_success_mc(build_link_budget(env, LinkGeometry{d_sr, d_ri}), n, seed);
        return py::make_tuple(e.probability, e.std_error);
      },
      py::arg("env"), py::arg("d_sr"), py::arg("d_ri"), py::arg("samples") = 1000000,
      py::arg("seed") = 1, "(estimate, standard error)");

  py::class_<BellDiagonalState>(m, "BellDiagonalState")
      .def(py::init<double, double, double, double>(), py::arg("l00"), py::arg("l01"),
           py::arg("l10"), py::arg("l11"))
      .def_readwrite("l00", &BellDiagonalState::l00)
      .def_readwrite("l01", &BellDiagonalState::l01)
      .def_readwrite("l10", &BellDiagonalState::l10)
      .def_readwrite("l11", &BellDiagonalState::l11)
      .def_property_readonly("fidelity", &BellDiagonalState::fidelity)
      .def_static("werner", &BellDiagonalState::werner);
  m.def("werner_from_alpha", &werner_from_alpha);
  m.def("rate_from_alpha", &rate_from_alpha);
  m.def("alpha_from_rate", &alpha_from_rate);
  m.def(
      "storage_time", [](double d) { return storage_time(d, MemoryParams{}); },
      py::arg("d_e2e"));
  m.def("phase_damp_prob", &phase_damp_prob);
  m.def(
      "e2e_state",
      [](const BellDiagonalState& s, double t, double p2, double coherence_time) {
        MemoryParams mem;
        mem.coherence_time = coherence_time;
        return e2e_state(s, t, mem, p2);
      },
      py::arg("state"), py::arg("t"), py::arg("p2"), py::arg("coherence_time") = 2.43e-3);

  m.def("jfi", [](const std::vector<double>& r) { return jfi(r); });
  m.def("wfi", [](const std::vector<double>& r, const std::vector<double>& w) { return wfi(r, w); });

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_property_readonly("users", [](const ProblemInstance& p) { return p.users; })
      .def_property_readonly("weights", &ProblemInstance::weights)
      .def_property_readonly("min_fidelity",
                             [](const ProblemInstance& p) {
                               std::vector<double> f;
                               for (const auto& d : p.demands) f.push_back(d.min_fidelity);
                               return f;
                             })
      .def("__len__", &ProblemInstance::size);

  m.def(
      "instance_from_config",
      [](const std::string& text, std::uint64_t seed) {
        return resolve_instance(parse_config(text), seed);
      },
      py::arg("config_text") = "", py::arg("seed") = 1,
      "Problem instance from INI text (empty text: defaults, three sampled users)");

  m.def(
      "evaluate",
      [](const ProblemInstance& inst, const Point3D& ris, const std::vector<double>& rates) {
        return solution_dict(evaluate(inst, ris, rates));
      },
      py::arg("instance"), py::arg("ris"), py::arg("rates"));

  m.def(
      "optimize",
      [](const ProblemInstance& inst, const std::string& framework, std::uint64_t seed,
         double cooling, int iters_per_temp, const std::string& energy) {
        SAConfig cfg;
        cfg.seed = seed;
        cfg.cooling = cooling;
        cfg.iters_per_temp = iters_per_temp;
        cfg.energy = parse_energy(energy);
        OptimizerResult r;
        {
          py::gil_scoped_release release;
          r = simulated_annealing(inst, cfg, parse_framework(framework));
        }
        py::dict d = solution_dict(r.best);
        d["evaluations"] = r.evaluations;
        d["score"] = r.best_score;
        std::vector<double> trace;
        for (const auto& e : r.trace) trace.push_back(e.best_score);
        d["trace"] = trace;
        return d;
      },
      py::arg("instance"), py::arg("framework") = "proposed", py::arg("seed") = 1,
      py::arg("cooling") = 0.95, py::arg("iters_per_temp") = 200,
      py::arg("energy") = "weighted-sum-rate");

  m.def(
      "exhaustive_search",
      [](const ProblemInstance& inst, int nx, int ny, int nh, int rate_levels,
         const std::string& framework) {
        GridSpec g;
        g.nx = nx;
        g.ny = ny;
        g.nh = nh;
        g.rate_levels = rate_levels;
        return solution_dict(exhaustive_search(inst, g, parse_framework(framework)));
      },
      py::arg("instance"), py::arg("nx") = 10, py::arg("ny") = 10, py::arg("nh") = 4,
      py::arg("rate_levels") = 8, py::arg("framework") = "proposed");

  m.def("experiment_names", &experiment_names);
  m.def(
      "run_experiment",
      [](const std::string& name, const std::string& config_text, int reps, std::uint64_t seed,
         unsigned threads) {
        ExperimentOptions o;
        o.base = parse_config(config_text);
        o.reps = reps;
        o.seed = seed;
        o.threads = threads;
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(name, o);
        }
        py::dict d;
        d["csv"] = table_to_csv(r.table);
        d["summary"] = r.summary;
        d["runs"] = r.runs;
        d["feasible_runs"] = r.feasible_runs;
        return d;
      },
      py::arg("name"), py::arg("config_text") = "", py::arg("reps") = 50, py::arg("seed") = 1,
      py::arg("threads") = 0);

  auto sf = m.def_submodule("specfun", "Special functions");
  sf.def("bessel_k", &specfun::bessel_k, py::arg("nu"), py::arg("x"));
  sf.def("log_bessel_k", &specfun::log_bessel_k, py::arg("nu"), py::arg("x"));
  sf.def("gamma_p", &specfun::gamma_p, py::arg("a"), py::arg("x"));
  sf.def("gamma_q", &specfun::gamma_q, py::arg("a"), py::arg("x"));
}
