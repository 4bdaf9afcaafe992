#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <string>

#include "twoq/cli.hpp"
#include "twoq/frontier.hpp"
#include "twoq/measures.hpp"
#include "twoq/states.hpp"
#include "twoq/tomo.hpp"
#include "twoq/version.hpp"

namespace py = pybind11;

namespace {

using twoq::ComplexMatrix;
using twoq::complexd;
using twoq::DensityMatrix;

py::array_t<std::complex<double>> matrix_to_numpy(const ComplexMatrix& m) {
    const int n = m.dim();
    py::array_t<std::complex<double>> out({n, n});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) buf(i, j) = m(i, j);
    return out;
}

ComplexMatrix numpy_to_matrix(const py::array_t<std::complex<double>>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw twoq::BadDimension("expected a square 2-d array");
    const int n = static_cast<int>(arr.shape(0));
    ComplexMatrix m(n);
    auto buf = arr.unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = buf(i, j);
    return m;
}

DensityMatrix numpy_to_state(const py::array_t<std::complex<double>>& arr) {
    return DensityMatrix(numpy_to_matrix(arr));
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

twoq::FamilyParams params_from_kwargs(const std::string& family, double alpha, double p,
                                      double q, double gamma, double exponent) {
    twoq::FamilyParams fp;
    fp.family = twoq::family_from_name(upper(family));
    fp.alpha = alpha;
    fp.p = p;
    fp.q = q;
    fp.gamma = gamma;
    fp.exponent = exponent;
    return fp;
}

twoq::Subsystem subsystem_from(const std::string& which) {
    if (which == "a" || which == "A") return twoq::Subsystem::A;
    if (which == "b" || which == "B") return twoq::Subsystem::B;
    throw twoq::BadDimension("subsystem must be 'a' or 'b'");
}

twoq::PauliAxis axis_from(const std::string& name) {
    if (name == "x" || name == "X") return twoq::PauliAxis::X;
    if (name == "y" || name == "Y") return twoq::PauliAxis::Y;
    if (name == "z" || name == "Z") return twoq::PauliAxis::Z;
    throw twoq::ParamOutOfRange("axis must be x, y or z");
}

py::dict budget_to_dict(const twoq::InfoBudget& b) {
    py::dict d;
    d["i_a"] = b.i_a;
    d["i_b"] = b.i_b;
    d["i_local"] = b.i_local;
    d["i_corr"] = b.i_corr;
    d["i_total"] = b.i_total;
    d["measure"] = b.measure == twoq::InfoMeasure::VonNeumann ? "vn" : "linear";
    return d;
}

}  // namespace

PYBIND11_MODULE(_twoq, m) {
    m.doc() = "two-qubit information toolkit (C++ core)";
    m.attr("__version__") = twoq::kVersion;

    py::register_exception<twoq::ParamOutOfRange>(m, "ParamOutOfRange", PyExc_ValueError);
    py::register_exception<twoq::InvalidState>(m, "InvalidStateError", PyExc_ValueError);
    py::register_exception<twoq::BadShots>(m, "BadShots", PyExc_ValueError);

    m.def(
        "make_state",
        [](const std::string& family, double alpha, double p, double q, double gamma,
           double exponent) {
            return matrix_to_numpy(
                twoq::make_state(params_from_kwargs(family, alpha, p, q, gamma, exponent)).mat);
        },
        py::arg("family"), py::arg("alpha") = 0.0, py::arg("p") = 1.0, py::arg("q") = 1.0,
        py::arg("gamma") = 0.0, py::arg("exponent") = 1.0,
        "Density matrix of a named family: pure, werner, mems2, as1, as2, s, d.");

    m.def(
        "apply_channel",
        [](const py::array_t<std::complex<double>>& rho, const std::string& kind,
           double strength, const std::string& target, const std::string& basis) {
            twoq::ChannelSpec spec;
            if (kind == "global_white_noise")
                spec.kind = twoq::ChannelKind::GlobalWhiteNoise;
            else if (kind == "local_dephase")
                spec.kind = twoq::ChannelKind::LocalDephase;
            else if (kind == "local_depolarize")
                spec.kind = twoq::ChannelKind::LocalDepolarize;
            else if (kind == "mems_recombine")
                spec.kind = twoq::ChannelKind::MemsRecombine;
            else
                throw twoq::ParamOutOfRange("unknown channel kind: " + kind);
            spec.strength = strength;
            spec.target = target == "both" ? twoq::ChannelTarget::Both
                          : subsystem_from(target) == twoq::Subsystem::A
                              ? twoq::ChannelTarget::A
                              : twoq::ChannelTarget::B;
            spec.basis = axis_from(basis);
            return matrix_to_numpy(twoq::apply_channel(numpy_to_state(rho), spec).mat);
        },
        py::arg("rho"), py::arg("kind"), py::arg("strength"), py::arg("target") = "a",
        py::arg("basis") = "z");

    m.def(
        "validate",
        [](const py::array_t<std::complex<double>>& rho) {
            const twoq::ValidationReport r = twoq::validate(numpy_to_state(rho));
            py::dict d;
            d["trace_deviation"] = r.trace_deviation;
            d["min_eigenvalue"] = r.min_eigenvalue;
            d["hermiticity_deviation"] = r.hermiticity_deviation;
            d["trace_ok"] = r.trace_ok;
            d["psd_ok"] = r.psd_ok;
            d["hermitian_ok"] = r.hermitian_ok;
            d["passed"] = r.passed();
            return d;
        },
        py::arg("rho"));

    m.def(
        "sample_random_state",
        [](int rank, std::uint64_t seed) {
            return matrix_to_numpy(twoq::sample_random_state(rank, seed).mat);
        },
        py::arg("rank"), py::arg("seed"));

    m.def(
        "partial_trace",
        [](const py::array_t<std::complex<double>>& rho, const std::string& keep) {
            return matrix_to_numpy(
                twoq::partial_trace(numpy_to_matrix(rho), subsystem_from(keep)));
        },
        py::arg("rho"), py::arg("keep"));

    m.def(
        "kron",
        [](const py::array_t<std::complex<double>>& a,
           const py::array_t<std::complex<double>>& b) {
            return matrix_to_numpy(twoq::kron(numpy_to_matrix(a), numpy_to_matrix(b)));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "hermitian_eigen",
        [](const py::array_t<std::complex<double>>& mat) {
            const twoq::EigenDecomposition ed = twoq::hermitian_eigen(numpy_to_matrix(mat));
            return py::make_tuple(ed.eigenvalues, matrix_to_numpy(ed.eigenvectors));
        },
        py::arg("m"), "Ascending eigenvalues and the unitary column eigenbasis.");

    m.def("von_neumann_entropy",
          [](const py::array_t<std::complex<double>>& rho) {
              return twoq::von_neumann_entropy(numpy_to_state(rho));
          });
    m.def("linear_information", [](const py::array_t<std::complex<double>>& rho) {
        return twoq::linear_information(numpy_to_state(rho));
    });
    m.def("purity", [](const py::array_t<std::complex<double>>& rho) {
        return twoq::purity(numpy_to_state(rho));
    });
    m.def("concurrence", [](const py::array_t<std::complex<double>>& rho) {
        return twoq::concurrence(numpy_to_state(rho));
    });
    m.def("tangle", [](const py::array_t<std::complex<double>>& rho) {
        return twoq::tangle(numpy_to_state(rho));
    });

    m.def(
        "info_budget",
        [](const py::array_t<std::complex<double>>& rho, const std::string& measure) {
            const DensityMatrix dm = numpy_to_state(rho);
            return budget_to_dict(measure == "linear" ? twoq::info_budget_linear(dm)
                                                      : twoq::info_budget_vn(dm));
        },
        py::arg("rho"), py::arg("measure") = "vn");

    m.def("bloch", [](const py::array_t<std::complex<double>>& rho) {
        const twoq::BlochVector v = twoq::bloch(numpy_to_state(rho));
        return py::make_tuple(v.x, v.y, v.z);
    });

    m.def("visibility_predictability", [](const py::array_t<std::complex<double>>& rho) {
        const auto vp = twoq::visibility_predictability(numpy_to_state(rho));
        return py::make_tuple(vp.visibility, vp.predictability);
    });

    m.def(
        "triality_ledger",
        [](const py::array_t<std::complex<double>>& rho, const std::string& which) {
            const twoq::DualityLedger l =
                twoq::triality_ledger(numpy_to_state(rho), subsystem_from(which));
            py::dict d;
            d["visibility"] = l.visibility;
            d["predictability"] = l.predictability;
            d["concurrence"] = l.concurrence;
            d["lhs_duality"] = l.lhs_duality;
            d["lhs_triality"] = l.lhs_triality;
            return d;
        },
        py::arg("rho"), py::arg("which") = "a");

    m.def(
        "max_tangle_at_entropy",
        [](double target_entropy, int restarts, std::uint64_t seed) {
            const twoq::FrontierPoint p =
                twoq::max_tangle_at_entropy(target_entropy, restarts, seed);
            py::dict d;
            d["entropy"] = p.entropy;
            d["max_tangle"] = p.max_tangle;
            d["argmax_state"] = matrix_to_numpy(p.argmax_state.mat);
            d["converged"] = p.converged;
            d["iterations"] = p.iterations;
            return d;
        },
        py::arg("target_entropy"), py::arg("restarts") = 16, py::arg("seed") = 0);

    m.def(
        "simulate_counts",
        [](const py::array_t<std::complex<double>>& rho, std::uint64_t shots,
           std::uint64_t seed) {
            py::list out;
            for (const auto& r :
                 twoq::tomo::simulate_counts(numpy_to_state(rho), shots, seed)) {
                py::dict d;
                const auto name = [](twoq::PauliAxis a) {
                    return a == twoq::PauliAxis::X ? "x" : a == twoq::PauliAxis::Y ? "y" : "z";
                };
                d["basis_a"] = name(r.basis_a);
                d["basis_b"] = name(r.basis_b);
                d["counts"] = r.outcome_counts;
                d["shots"] = r.shots;
                out.append(d);
            }
            return out;
        },
        py::arg("rho"), py::arg("shots"), py::arg("seed") = 0);

    m.def(
        "reconstruct",
        [](const py::list& records) {
            std::vector<twoq::tomo::MeasurementRecord> recs;
            for (const auto& item : records) {
                const py::dict d = item.cast<py::dict>();
                twoq::tomo::MeasurementRecord r;
                r.basis_a = axis_from(d["basis_a"].cast<std::string>());
                r.basis_b = axis_from(d["basis_b"].cast<std::string>());
                r.outcome_counts = d["counts"].cast<std::array<std::uint64_t, 4>>();
                r.shots = d.contains("shots") ? d["shots"].cast<std::uint64_t>() : 0;
                recs.push_back(r);
            }
            const twoq::tomo::ReconstructionResult rr = twoq::tomo::reconstruct(recs);
            return matrix_to_numpy(rr.rho_hat.mat);
        },
        py::arg("records"));

    m.def(
        "fidelity",
        [](const py::array_t<std::complex<double>>& rho,
           const py::array_t<std::complex<double>>& sigma) {
            return twoq::tomo::fidelity(numpy_to_state(rho), numpy_to_state(sigma));
        },
        py::arg("rho"), py::arg("sigma"));

    m.def(
        "error_bars",
        [](const py::array_t<std::complex<double>>& rho, std::uint64_t shots, int resamples,
           std::uint64_t seed) {
            const twoq::tomo::ErrorBars e =
                twoq::tomo::error_bars(numpy_to_state(rho), shots, resamples, seed);
            py::dict d;
            d["tangle"] = py::make_tuple(e.tangle_mean, e.tangle_std);
            d["i_a"] = py::make_tuple(e.i_a_mean, e.i_a_std);
            d["i_b"] = py::make_tuple(e.i_b_mean, e.i_b_std);
            d["i_corr"] = py::make_tuple(e.i_corr_mean, e.i_corr_std);
            d["i_total"] = py::make_tuple(e.i_total_mean, e.i_total_std);
            d["resamples"] = e.resamples;
            return d;
        },
        py::arg("rho"), py::arg("shots"), py::arg("resamples") = 100, py::arg("seed") = 0);

    m.def("state_to_json", [](const py::array_t<std::complex<double>>& rho) {
        return twoq::state_to_json(numpy_to_state(rho));
    });
    m.def("state_from_json", [](const std::string& text) {
        return matrix_to_numpy(twoq::state_from_json(text).mat);
    });
}
