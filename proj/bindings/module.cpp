#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "fpqc/bounds.hpp"
#include "fpqc/channels.hpp"
#include "fpqc/experiments.hpp"
#include "fpqc/gaussian.hpp"
#include "fpqc/majorana.hpp"
#include "fpqc/metrics.hpp"
#include "fpqc/serialization.hpp"

namespace py = pybind11;
using namespace fpqc;

namespace {

StatePurity purity_from_string(const std::string& name) {
  if (name == "pure") return StatePurity::Pure;
  if (name == "mixed") return StatePurity::Mixed;
  throw std::invalid_argument("purity must be 'pure' or 'mixed'");
}

template <typename T>
std::string json_string(const T& value) {
  nlohmann::json j = value;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fermionic Gaussian systems, randomizing channels, and their "
            "privacy diagnostics";

  // ---- Majorana algebra ----

  py::class_<PauliString>(m, "PauliString")
      .def_property_readonly("modes", &PauliString::modes)
      .def_property_readonly("phase", [](const PauliString& s) { return s.phase().str(); })
      .def_property_readonly("letters",
                             [](const PauliString& s) {
                               std::string out;
                               for (Pauli p : s.letters()) out += pauli_char(p);
                               return out;
                             })
      .def("to_dense", &PauliString::to_dense)
      .def("__mul__", &PauliString::operator*)
      .def("__repr__", &PauliString::str);

  py::class_<MajoranaMonomial>(m, "MajoranaMonomial",
                               "Product of Majorana operators with an exact "
                               "fourth-root-of-unity phase")
      .def(py::init([](int modes, std::uint64_t bits, const std::string& phase) {
             return MajoranaMonomial(modes, bits, Phase::parse(phase));
           }),
           py::arg("modes"), py::arg("bits"), py::arg("phase") = "+1")
      .def_property_readonly("modes", &MajoranaMonomial::modes)
      .def_property_readonly("bits", &MajoranaMonomial::bits)
      .def_property_readonly("phase",
                             [](const MajoranaMonomial& mono) { return mono.phase().str(); })
      .def_property_readonly("weight", &MajoranaMonomial::weight)
      .def("is_hermitian", &MajoranaMonomial::is_hermitian)
      .def("adjoint", &MajoranaMonomial::adjoint)
      .def("to_pauli", &MajoranaMonomial::to_pauli)
      .def("to_dense", &MajoranaMonomial::to_dense)
      .def("__mul__", &MajoranaMonomial::operator*)
      .def("__eq__", [](const MajoranaMonomial& a, const MajoranaMonomial& b) { return a == b; })
      .def("__repr__", &MajoranaMonomial::str);

  m.def("jordan_wigner", &jordan_wigner, py::arg("k"), py::arg("modes"),
        "Majorana operator c_k as a Pauli string (Z...Z then X or Y)");
  m.def("majorana_operator", &majorana_operator, py::arg("k"), py::arg("modes"));
  m.def("parity_operator", &parity_operator, py::arg("modes"));
  m.def("fpqc_unitary", &fpqc_unitary, py::arg("ell"), py::arg("modes"),
        "i * parity * c_ell; conjugation flips the sign of c_ell only");
  m.def("hermitian_monomial", &hermitian_monomial, py::arg("modes"), py::arg("bits"));

  // ---- Gaussian states ----

  py::class_<NormalForm>(m, "NormalForm")
      .def_readonly("frame", &NormalForm::frame)
      .def_readonly("spectrum", &NormalForm::spectrum)
      .def("reconstruct", &NormalForm::reconstruct);

  m.def("normal_form",
        [](const RealMatrix& gamma) { return normal_form(SkewSymmetricMatrix(gamma)); },
        py::arg("gamma"),
        "Canonical form gamma = O blockdiag([[0,s],[-s,0]]) O^T, spectrum "
        "nonnegative descending");
  m.def("skew_exponential",
        [](const RealMatrix& gamma) { return skew_exponential(SkewSymmetricMatrix(gamma)); },
        py::arg("gamma"));
  m.def("special_orthogonal_log",
        [](const RealMatrix& o) { return special_orthogonal_log(o).matrix(); },
        py::arg("orthogonal"));
  m.def("state_spectrum_from_generator", &state_spectrum_from_generator,
        py::arg("block_value"), "tanh(|s|): generator block value to state spectrum");
  m.def("gaussian_unitary",
        [](const RealMatrix& gamma) { return gaussian_unitary(SkewSymmetricMatrix(gamma)); },
        py::arg("gamma"),
        "Dense unitary whose Majorana conjugation action is e^gamma");
  m.def("covariance_of",
        [](const DenseOperator& rho) { return covariance_of(rho).matrix(); },
        py::arg("rho"), "C_mn = (i/2) Tr(rho [c_m, c_n])");
  m.def("random_skew_symmetric",
        [](int modes, std::uint64_t seed) {
          return SkewSymmetricMatrix::random(modes, seed).matrix();
        },
        py::arg("modes"), py::arg("seed"));

  py::class_<FermionicGaussianState>(m, "FermionicGaussianState")
      .def(py::init<std::vector<double>, RealMatrix>(), py::arg("spectrum"),
           py::arg("frame"))
      .def_property_readonly("modes", &FermionicGaussianState::modes)
      .def_property_readonly("spectrum", &FermionicGaussianState::spectrum)
      .def_property_readonly("frame", &FermionicGaussianState::frame)
      .def("density", &FermionicGaussianState::density,
           py::return_value_policy::copy)
      .def("to_json", &json_string<FermionicGaussianState>);

  m.def("state_from_spectrum", &state_from_spectrum, py::arg("spectrum"),
        py::arg("frame"));
  m.def("entropy", &entropy, py::arg("state"),
        "Sum of per-mode binary entropies, in bits");
  m.def("purity", &purity, py::arg("state"));
  m.def("random_gaussian_state",
        [](int modes, const std::string& purity_name, std::uint64_t seed) {
          return random_gaussian_state(modes, purity_from_string(purity_name), seed);
        },
        py::arg("modes"), py::arg("purity"), py::arg("seed"));

  // ---- Channels ----

  py::class_<MonomialExpansion>(m, "MonomialExpansion")
      .def_property_readonly("modes", &MonomialExpansion::modes)
      .def_property_readonly("coefficients",
                             [](const MonomialExpansion& e) { return e.coefficients(); })
      .def("coefficient", &MonomialExpansion::coefficient, py::arg("bits"));
  m.def("expand", &expand, py::arg("operator"),
        "Coefficients alpha_b = Tr(c(b)^dag A) over the monomial basis");
  m.def("reconstruct", &reconstruct, py::arg("expansion"));

  py::class_<AttenuationChannel>(m, "AttenuationChannel")
      .def(py::init<int, std::vector<double>>(), py::arg("modes"), py::arg("xi"))
      .def_property_readonly("modes", &AttenuationChannel::modes)
      .def_property_readonly("xi", &AttenuationChannel::xi)
      .def("to_json", &json_string<AttenuationChannel>);
  m.def("apply_attenuation", &apply_attenuation, py::arg("channel"), py::arg("rho"));

  py::class_<KrausTerm>(m, "KrausTerm")
      .def(py::init<double, MajoranaMonomial>(), py::arg("weight"), py::arg("unitary"))
      .def_readonly("weight", &KrausTerm::weight)
      .def_readonly("unitary", &KrausTerm::unitary);

  py::class_<RandomUnitaryChannel>(m, "RandomUnitaryChannel")
      .def(py::init<int, std::vector<KrausTerm>>(), py::arg("modes"), py::arg("kraus"))
      .def_property_readonly("modes", &RandomUnitaryChannel::modes)
      .def_property_readonly("kraus", &RandomUnitaryChannel::kraus)
      .def("to_json", &json_string<RandomUnitaryChannel>);

  m.def("fpqc_paper", &fpqc_paper, py::arg("modes"),
        "The 2M unitaries i*parity*c_ell with uniform weights");
  m.def("fpqc_full", &fpqc_full, py::arg("modes"),
        "All 4^M Hermitian monomials; exact randomizer");
  m.def("fpqc_random_subset", &fpqc_random_subset, py::arg("modes"),
        py::arg("subset_size"), py::arg("seed"));
  m.def("apply", &apply, py::arg("channel"), py::arg("rho"));

  py::class_<ChoiDiagnostics>(m, "ChoiDiagnostics")
      .def_readonly("is_cp", &ChoiDiagnostics::is_cp)
      .def_readonly("is_tp", &ChoiDiagnostics::is_tp)
      .def_readonly("min_eigenvalue", &ChoiDiagnostics::min_eigenvalue)
      .def_readonly("tp_residual", &ChoiDiagnostics::tp_residual)
      .def("__repr__", [](const ChoiDiagnostics& d) {
        std::ostringstream out;
        out << "ChoiDiagnostics(is_cp=" << (d.is_cp ? "True" : "False")
            << ", is_tp=" << (d.is_tp ? "True" : "False")
            << ", min_eigenvalue=" << d.min_eigenvalue
            << ", tp_residual=" << d.tp_residual << ")";
        return out.str();
      });
  m.def("choi_cp_check",
        py::overload_cast<const RandomUnitaryChannel&>(&choi_cp_check),
        py::arg("channel"));
  m.def("choi_cp_check", py::overload_cast<const AttenuationChannel&>(&choi_cp_check),
        py::arg("channel"));
  m.def("attenuation_choi_diagnostics", &attenuation_choi_diagnostics,
        py::arg("modes"), py::arg("xi"),
        "Choi diagnostics for damping coefficients without the [0,1] restriction");

  // ---- Metrics ----

  m.def("schatten_norm", &schatten_norm, py::arg("operator"), py::arg("p"),
        "l_p norm of the singular values; p may be math.inf");
  m.def("distance_to_mms", &distance_to_mms, py::arg("rho"), py::arg("p"));

  py::class_<PqcVerdict>(m, "PqcVerdict")
      .def_readonly("p", &PqcVerdict::p)
      .def_readonly("epsilon", &PqcVerdict::epsilon)
      .def_readonly("dimension", &PqcVerdict::dimension)
      .def_readonly("threshold", &PqcVerdict::threshold)
      .def_readonly("measured", &PqcVerdict::measured)
      .def_readonly("passes", &PqcVerdict::passes)
      .def("to_json", &json_string<PqcVerdict>);
  m.def("pqc_test", &pqc_test, py::arg("channel"), py::arg("states"),
        py::arg("epsilon"), py::arg("p"), py::arg("dimension") = py::none(),
        "Worst-case output distance to I/d against the epsilon/d^((p-1)/p) "
        "threshold");

  // ---- Bounds ----

  auto bounds_mod = m.def_submodule("bounds", "Log-space closed-form bound evaluators");
  bounds_mod.def("net_log_cardinality", &bounds::net_log_cardinality,
                 py::arg("epsilon"), py::arg("modes"));
  bounds_mod.def("proof_net_log_cardinality", &bounds::proof_net_log_cardinality,
                 py::arg("epsilon"), py::arg("modes"));
  bounds_mod.def("mcdiarmid_tail", &bounds::mcdiarmid_tail, py::arg("t"),
                 py::arg("bounded_differences"));
  bounds_mod.def("mcdiarmid_log_tail", &bounds::mcdiarmid_log_tail, py::arg("t"),
                 py::arg("bounded_differences"));

  py::class_<bounds::ConcentrationBound>(bounds_mod, "ConcentrationBound")
      .def_readonly("tail", &bounds::ConcentrationBound::tail)
      .def_readonly("log_tail", &bounds::ConcentrationBound::log_tail)
      .def_readonly("centering", &bounds::ConcentrationBound::centering);
  bounds_mod.def("concentration_tail", &bounds::concentration_tail, py::arg("t"),
                 py::arg("modes"), py::arg("cardinality"));

  py::class_<bounds::FinalProbabilityBound>(bounds_mod, "FinalProbabilityBound")
      .def_readonly("log_probability", &bounds::FinalProbabilityBound::log_probability)
      .def_readonly("inner", &bounds::FinalProbabilityBound::inner)
      .def_readonly("bounded_below_one",
                    &bounds::FinalProbabilityBound::bounded_below_one);
  bounds_mod.def("final_log_probability", &bounds::final_log_probability,
                 py::arg("epsilon"), py::arg("modes"), py::arg("cardinality"));

  py::class_<bounds::CardinalityThreshold>(bounds_mod, "CardinalityThreshold")
      .def_readonly("threshold", &bounds::CardinalityThreshold::threshold)
      .def_readonly("kappa", &bounds::CardinalityThreshold::kappa)
      .def_readonly("valid", &bounds::CardinalityThreshold::valid);
  bounds_mod.def("prop2_threshold", &bounds::prop2_threshold, py::arg("epsilon"),
                 py::arg("modes"), py::arg("c"));
  bounds_mod.def("prop1_threshold", &bounds::prop1_threshold, py::arg("epsilon"),
                 py::arg("modes"), py::arg("p"), py::arg("kappa"));
  bounds_mod.def("evaluate",
                 [](double epsilon, int modes, double p, double cardinality,
                    double t, double c, double kappa) {
                   bounds::BoundQuery q{epsilon, modes, p, cardinality, t, c, kappa};
                   return bounds::evaluate_bounds(q).dump();
                 },
                 py::arg("epsilon") = 0.1, py::arg("modes") = 3, py::arg("p") = 1.0,
                 py::arg("cardinality") = 16.0, py::arg("t") = 0.1,
                 py::arg("c") = 1.0, py::arg("kappa") = 1.0,
                 "All evaluators for one query, as a JSON string");

  // ---- Experiments ----

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("modes", &ExperimentConfig::modes)
      .def_readwrite("p", &ExperimentConfig::p)
      .def_readwrite("epsilon", &ExperimentConfig::epsilon)
      .def_readwrite("num_states", &ExperimentConfig::num_states)
      .def_readwrite("subset_sizes", &ExperimentConfig::subset_sizes)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("workers", &ExperimentConfig::workers)
      .def_property(
          "channel_family",
          [](const ExperimentConfig& c) { return to_string(c.channel_family); },
          [](ExperimentConfig& c, const std::string& name) {
            c.channel_family = channel_family_from_string(name);
          })
      .def("validate", &ExperimentConfig::validate);

  m.def("surrogate_net", &surrogate_net, py::arg("modes"), py::arg("count"),
        py::arg("seed"), "i.i.d. pure Gaussian states standing in for a net");

  py::class_<SizeStatistics>(m, "SizeStatistics")
      .def_readonly("subset_size", &SizeStatistics::subset_size)
      .def_readonly("samples", &SizeStatistics::samples)
      .def_readonly("max_distance", &SizeStatistics::max_distance)
      .def_readonly("mean_distance", &SizeStatistics::mean_distance)
      .def_readonly("q50", &SizeStatistics::q50)
      .def_readonly("q90", &SizeStatistics::q90)
      .def_readonly("q99", &SizeStatistics::q99)
      .def_readonly("pass_fraction", &SizeStatistics::pass_fraction)
      .def_readonly("median_trial_max", &SizeStatistics::median_trial_max);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("per_size", &SweepResult::per_size)
      .def("to_csv",
           [](const SweepResult& r) {
             std::ostringstream out;
             export_csv(r, out);
             return out.str();
           })
      .def("to_json", [](const SweepResult& r) {
        std::ostringstream out;
        export_json(r, out);
        return out.str();
      });
  m.def("sweep_cardinality", &sweep_cardinality, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ConcentrationPoint>(m, "ConcentrationPoint")
      .def_readonly("subset_size", &ConcentrationPoint::subset_size)
      .def_readonly("t", &ConcentrationPoint::t)
      .def_readonly("empirical_frequency", &ConcentrationPoint::empirical_frequency)
      .def_readonly("analytic_bound", &ConcentrationPoint::analytic_bound);

  py::class_<ConcentrationAudit>(m, "ConcentrationAudit")
      .def_readonly("subset_size", &ConcentrationAudit::subset_size)
      .def_readonly("draws", &ConcentrationAudit::draws)
      .def_readonly("mean_y", &ConcentrationAudit::mean_y)
      .def_readonly("centering", &ConcentrationAudit::centering)
      .def_readonly("centering_hilbert", &ConcentrationAudit::centering_hilbert)
      .def_readonly("bounded_difference_max",
                    &ConcentrationAudit::bounded_difference_max)
      .def_readonly("bounded_difference_limit",
                    &ConcentrationAudit::bounded_difference_limit);

  py::class_<ConcentrationResult>(m, "ConcentrationResult")
      .def_readonly("points", &ConcentrationResult::points)
      .def_readonly("audits", &ConcentrationResult::audits)
      .def("to_csv",
           [](const ConcentrationResult& r) {
             std::ostringstream out;
             export_csv(r, out);
             return out.str();
           })
      .def("to_json", [](const ConcentrationResult& r) {
        std::ostringstream out;
        export_json(r, out);
        return out.str();
      });
  m.def("concentration_experiment", &concentration_experiment, py::arg("config"),
        py::arg("t_grid"), py::call_guard<py::gil_scoped_release>());

  m.def("export_sweep",
        [](const SweepResult& r, const std::string& path, const std::string& format) {
          export_result(r, path, export_format_from_string(format));
        },
        py::arg("result"), py::arg("path"), py::arg("format") = "csv");
  m.def("export_concentration",
        [](const ConcentrationResult& r, const std::string& path,
           const std::string& format) {
          export_result(r, path, export_format_from_string(format));
        },
        py::arg("result"), py::arg("path"), py::arg("format") = "csv");
}
