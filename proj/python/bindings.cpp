#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpol/analysis.hpp"
#include "qpol/config.hpp"
#include "qpol/experiments.hpp"
#include "qpol/reference_eigen.hpp"
#include "qpol/verify.hpp"

namespace py = pybind11;
using namespace qpol;

namespace {

CoincidenceConfig make_coincidence_config(const std::vector<double>& angles_deg,
                                          long long pairs_per_angle,
                                          std::uint64_t seed,
                                          const SamplingDistribution& distribution,
                                          Criterion criterion, bool coupled) {
  CoincidenceConfig config;
  config.grid = AngleGrid::from_list(angles_deg);
  config.pairs_per_angle = pairs_per_angle;
  config.master_seed = seed;
  config.distribution = distribution;
  config.criterion = criterion;
  config.coupled = coupled;
  return config;
}

MalusConfig make_malus_config(const std::vector<double>& angles_deg,
                              long long photons_per_angle, std::uint64_t seed,
                              const SamplingDistribution& distribution,
                              Criterion criterion) {
  MalusConfig config;
  config.grid = AngleGrid::from_list(angles_deg);
  config.photons_per_angle = photons_per_angle;
  config.master_seed = seed;
  config.distribution = distribution;
  config.criterion = criterion;
  return config;
}

}  // namespace

PYBIND11_MODULE(_qpol, m) {
  m.doc() = "Quasi-deterministic analyzer Monte Carlo for photon polarization";

  py::enum_<RotationKind>(m, "RotationKind")
      .value("SPINOR", RotationKind::Spinor)
      .value("VECTOR", RotationKind::Vector);
  py::enum_<Channel>(m, "Channel")
      .value("PLUS", Channel::Plus)
      .value("MINUS", Channel::Minus);
  py::enum_<Criterion>(m, "Criterion")
      .value("DETERMINISTIC", Criterion::Deterministic)
      .value("MALUS_PROBABILISTIC", Criterion::MalusProbabilistic);

  py::class_<FieldState>(m, "FieldState")
      .def(py::init(&FieldState::make), py::arg("amplitude"), py::arg("beta"),
           py::arg("alpha_x") = 0.0, py::arg("delta") = 0.0)
      .def_readonly("amplitude", &FieldState::amplitude)
      .def_readonly("beta", &FieldState::beta)
      .def_readonly("alpha_x", &FieldState::alpha_x)
      .def_readonly("delta", &FieldState::delta);

  py::class_<StokesS>(m, "StokesS")
      .def(py::init([](double s0, double s1, double s2, double s3) {
             return StokesS{s0, s1, s2, s3};
           }),
           py::arg("s0"), py::arg("s1"), py::arg("s2"), py::arg("s3"))
      .def_readonly("s0", &StokesS::s0)
      .def_readonly("s1", &StokesS::s1)
      .def_readonly("s2", &StokesS::s2)
      .def_readonly("s3", &StokesS::s3)
      .def("__repr__", [](const StokesS& s) {
        return "StokesS(" + std::to_string(s.s0) + ", " + std::to_string(s.s1) +
               ", " + std::to_string(s.s2) + ", " + std::to_string(s.s3) + ")";
      });

  py::class_<HermitianAnalyzerMatrix>(m, "HermitianAnalyzerMatrix")
      .def(py::init(&HermitianAnalyzerMatrix::make), py::arg("a"), py::arg("d"),
           py::arg("h"), py::arg("phi"))
      .def_readonly("a", &HermitianAnalyzerMatrix::a)
      .def_readonly("d", &HermitianAnalyzerMatrix::d)
      .def_readonly("h", &HermitianAnalyzerMatrix::h)
      .def_readonly("phi", &HermitianAnalyzerMatrix::phi);

  py::class_<StokesP>(m, "StokesP")
      .def_readonly("p0", &StokesP::p0)
      .def_readonly("p1", &StokesP::p1)
      .def_readonly("p2", &StokesP::p2)
      .def_readonly("p3", &StokesP::p3);

  py::class_<EigenPair>(m, "EigenPair")
      .def_readonly("lambda_plus", &EigenPair::lambda_plus)
      .def_readonly("lambda_minus", &EigenPair::lambda_minus);

  py::class_<EigenstateResiduals>(m, "EigenstateResiduals")
      .def_readonly("r1", &EigenstateResiduals::r1)
      .def_readonly("r2", &EigenstateResiduals::r2)
      .def_readonly("r3", &EigenstateResiduals::r3)
      .def("max_abs", &EigenstateResiduals::max_abs);

  py::class_<SamplingDistribution>(m, "SamplingDistribution")
      .def_static("arccos_uniform", &SamplingDistribution::arccos_uniform)
      .def_static("gaussian",
                  py::overload_cast<double>(&SamplingDistribution::gaussian),
                  py::arg("sigma"))
      .def_static("gaussian_default",
                  py::overload_cast<>(&SamplingDistribution::gaussian))
      .def_readonly("sigma", &SamplingDistribution::sigma);

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init([](std::uint64_t seed, std::uint32_t angle, std::uint32_t block,
                       std::uint32_t lane) {
             return RandomStream(seed, {angle, block, lane});
           }),
           py::arg("seed"), py::arg("angle_index") = 0, py::arg("block_index") = 0,
           py::arg("lane") = 0)
      .def("uniform01", &RandomStream::uniform01)
      .def("uniform_symmetric", &RandomStream::uniform_symmetric)
      .def("normal", &RandomStream::normal, py::arg("sigma"));

  py::class_<Analyzer>(m, "Analyzer")
      .def(py::init(&Analyzer::make), py::arg("theta") = 0.0, py::arg("p0") = 1.0,
           py::arg("phi_sign") = 1,
           py::arg("distribution") = SamplingDistribution::arccos_uniform(),
           py::arg("criterion") = Criterion::Deterministic,
           py::arg("kind") = RotationKind::Vector)
      .def_readonly("theta", &Analyzer::theta)
      .def_readonly("p0", &Analyzer::p0);

  py::class_<ChannelOutcome>(m, "ChannelOutcome")
      .def_readonly("channel", &ChannelOutcome::channel)
      .def_readonly("post_state", &ChannelOutcome::post_state)
      .def_readonly("t_value", &ChannelOutcome::t_value)
      .def_readonly("drawn_arg", &ChannelOutcome::drawn_arg);

  py::class_<CountTable>(m, "CountTable")
      .def(py::init([](std::uint64_t pp, std::uint64_t pm, std::uint64_t mp,
                       std::uint64_t mm) {
             return CountTable{pp, pm, mp, mm};
           }),
           py::arg("n_pp"), py::arg("n_pm"), py::arg("n_mp"), py::arg("n_mm"))
      .def_readonly("n_pp", &CountTable::n_pp)
      .def_readonly("n_pm", &CountTable::n_pm)
      .def_readonly("n_mp", &CountTable::n_mp)
      .def_readonly("n_mm", &CountTable::n_mm)
      .def("total", &CountTable::total);

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("theta_deg", &ResultRow::theta_deg)
      .def_readonly("counts", &ResultRow::counts)
      .def_readonly("gamma", &ResultRow::gamma)
      .def_readonly("normalized_pp", &ResultRow::normalized_pp)
      .def_readonly("gamma_ref", &ResultRow::gamma_ref)
      .def_readonly("malus_plus_ref", &ResultRow::malus_plus_ref)
      .def_readonly("malus_minus_ref", &ResultRow::malus_minus_ref)
      .def_readonly("gamma_sigma", &ResultRow::gamma_sigma);

  py::class_<ChshResult>(m, "ChshResult")
      .def_readonly("s_value", &ChshResult::s_value)
      .def_readonly("e_values", &ChshResult::e_values)
      .def_readonly("setting_angles_deg", &ChshResult::setting_angles_deg)
      .def_readonly("s_sigma", &ChshResult::s_sigma);

  py::class_<FitReport>(m, "FitReport")
      .def_readonly("chi_square", &FitReport::chi_square)
      .def_readonly("degrees_of_freedom", &FitReport::degrees_of_freedom)
      .def_readonly("reduced_chi_square", &FitReport::reduced_chi_square)
      .def_readonly("max_abs_residual_sigmas", &FitReport::max_abs_residual_sigmas)
      .def_readonly("pass_", &FitReport::pass);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);

  m.def("default_gaussian_sigma", &default_gaussian_sigma);
  m.def("field_to_stokes", &field_to_stokes, py::arg("field"));
  m.def("matrix_to_stokes", &matrix_to_stokes, py::arg("matrix"));
  m.def("eigenvalues", &eigenvalues, py::arg("matrix"));
  m.def("eigenstate_residuals", &eigenstate_residuals, py::arg("s"), py::arg("p"),
        py::arg("branch"));
  m.def("rotate_stokes", &rotate_stokes, py::arg("s"), py::arg("theta"),
        py::arg("kind"));
  m.def("sample_arg", &sample_arg, py::arg("distribution"), py::arg("rng"));
  m.def("transit", &transit, py::arg("analyzer"), py::arg("state"),
        py::arg("frame_offset_q"), py::arg("rng"));
  m.def("frame_offset", &frame_offset, py::arg("kind"), py::arg("delta_theta"));

  m.def(
      "run_malus",
      [](const std::vector<double>& angles_deg, long long photons_per_angle,
         std::uint64_t seed, const SamplingDistribution& distribution,
         Criterion criterion, int threads) {
        return run_malus(make_malus_config(angles_deg, photons_per_angle, seed,
                                           distribution, criterion),
                         threads);
      },
      py::arg("angles_deg"), py::arg("photons_per_angle"), py::arg("seed") = 1,
      py::arg("distribution") = SamplingDistribution::arccos_uniform(),
      py::arg("criterion") = Criterion::Deterministic, py::arg("threads") = 1);

  m.def(
      "run_coincidence",
      [](const std::vector<double>& angles_deg, long long pairs_per_angle,
         std::uint64_t seed, const SamplingDistribution& distribution,
         Criterion criterion, bool coupled, int threads) {
        return run_coincidence(
            make_coincidence_config(angles_deg, pairs_per_angle, seed, distribution,
                                    criterion, coupled),
            threads);
      },
      py::arg("angles_deg"), py::arg("pairs_per_angle"), py::arg("seed") = 1,
      py::arg("distribution") = SamplingDistribution::arccos_uniform(),
      py::arg("criterion") = Criterion::Deterministic, py::arg("coupled") = true,
      py::arg("threads") = 1);

  m.def(
      "chsh_run",
      [](double a1, double a2, double b1, double b2, long long pairs_per_setting,
         std::uint64_t seed, const SamplingDistribution& distribution,
         Criterion criterion, bool coupled, int threads) {
        const CoincidenceConfig base = make_coincidence_config(
            {0.0}, pairs_per_setting, seed, distribution, criterion, coupled);
        return chsh_run(base, a1, a2, b1, b2, threads);
      },
      py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"),
      py::arg("pairs_per_setting"), py::arg("seed") = 1,
      py::arg("distribution") = SamplingDistribution::arccos_uniform(),
      py::arg("criterion") = Criterion::Deterministic, py::arg("coupled") = true,
      py::arg("threads") = 1);

  m.def("gamma", &qpol::gamma, py::arg("counts"));
  m.def("normalized_pp", &qpol::normalized_pp, py::arg("counts"));
  m.def("reference_curves",
        [](double theta_deg, long long n_half) {
          const ReferenceCurves c = reference_curves(theta_deg, n_half);
          return py::make_tuple(c.malus_plus, c.malus_minus, c.gamma_qm);
        },
        py::arg("theta_deg"), py::arg("n_half"));
  m.def("closed_form_plus_probability", &closed_form_plus_probability,
        py::arg("theta_deg"), py::arg("distribution"));
  m.def("binomial_sigma", &binomial_sigma, py::arg("n"), py::arg("p"));
  m.def(
      "chi_square_fit",
      [](const std::vector<double>& observed, const std::vector<double>& expected,
         double trials_per_point, double variance_floor) {
        return chi_square_fit(observed, expected, trials_per_point, variance_floor);
      },
      py::arg("observed"), py::arg("expected"), py::arg("trials_per_point"),
      py::arg("variance_floor") = 0.0);
  m.def("run_verification", &run_verification, py::arg("seed") = 1);
}
