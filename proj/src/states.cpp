#include "twoq/states.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "twoq/rng.hpp"

namespace twoq {

namespace {

std::vector<complexd> ket(int index, int dim) {
    std::vector<complexd> v(dim);
    v[index] = 1.0;
    return v;
}

std::vector<complexd> bell_phi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, 0.0, 0.0, r};
}

std::vector<complexd> bell_psi_minus() {
    const double r = 1.0 / std::sqrt(2.0);
    return {0.0, r, -r, 0.0};
}

const ComplexMatrix& pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return pauli_x();
        case PauliAxis::Y: return pauli_y();
        default: return pauli_z();
    }
}

DensityMatrix dephase(const DensityMatrix& rho, double s, PauliAxis axis, Subsystem target) {
    const ComplexMatrix k = target == Subsystem::A
                                ? kron(pauli(axis), ComplexMatrix::identity(2))
                                : kron(ComplexMatrix::identity(2), pauli(axis));
    ComplexMatrix out = (1.0 - s) * rho.mat + s * (k * rho.mat * k);
    return DensityMatrix(out.hermitized());
}

DensityMatrix depolarize(const DensityMatrix& rho, double s, Subsystem target) {
    const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
    ComplexMatrix noise = target == Subsystem::A
                              ? kron(half, partial_trace(rho.mat, Subsystem::B))
                              : kron(partial_trace(rho.mat, Subsystem::A), half);
    ComplexMatrix out = (1.0 - s) * rho.mat + s * noise;
    return DensityMatrix(out.hermitized());
}

DensityMatrix mems_recombine(const DensityMatrix& rho, double s) {
    const ComplexMatrix flip_a = kron(pauli_x(), ComplexMatrix::identity(2));
    const ComplexMatrix project_b = kron(ComplexMatrix::identity(2), outer(ket(0, 2)));
    ComplexMatrix branch = project_b * (flip_a * rho.mat * flip_a) * project_b;
    const double tr = branch.trace().real();
    if (tr <= 1e-14) return rho;  // polarizer blocks the whole branch
    branch *= complexd(1.0 / tr, 0.0);
    ComplexMatrix out = (1.0 - s) * rho.mat + s * branch;
    return DensityMatrix(out.hermitized());
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Pure: return "PURE";
        case Family::Werner: return "WERNER";
        case Family::Mems2: return "MEMS2";
        case Family::As1: return "AS1";
        case Family::As2: return "AS2";
        case Family::S: return "S";
        case Family::D: return "D";
    }
    throw ParamOutOfRange("unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "PURE") return Family::Pure;
    if (name == "WERNER") return Family::Werner;
    if (name == "MEMS2") return Family::Mems2;
    if (name == "AS1") return Family::As1;
    if (name == "AS2") return Family::As2;
    if (name == "S") return Family::S;
    if (name == "D") return Family::D;
    throw ParamOutOfRange("unknown family name: " + name);
}

DensityMatrix make_state(const FamilyParams& params) {
    constexpr double kPi4 = 0.78539816339744830961;
    switch (params.family) {
        case Family::Pure: {
            if (params.alpha < 0.0 || params.alpha > kPi4 + 1e-12)
                throw ParamOutOfRange("Pure: alpha must lie in [0, pi/4]");
            std::vector<complexd> psi = {std::cos(params.alpha), 0.0, 0.0,
                                         std::sin(params.alpha)};
            return DensityMatrix(outer(psi));
        }
        case Family::Werner: {
            if (params.p < 0.0 || params.p > 1.0)
                throw ParamOutOfRange("Werner: p must lie in [0,1]");
            ComplexMatrix m = params.p * outer(bell_psi_minus()) +
                              (0.25 * (1.0 - params.p)) * ComplexMatrix::identity(4);
            return DensityMatrix(std::move(m));
        }
        case Family::Mems2: {
            if (params.p < 2.0 / 3.0 - 1e-12 || params.p > 1.0)
                throw ParamOutOfRange("Mems2: p must lie in [2/3, 1]");
            ComplexMatrix m = params.p * outer(bell_phi_plus()) +
                              (1.0 - params.p) * outer(ket(2, 4));
            return DensityMatrix(std::move(m));
        }
        case Family::As1: {
            if (params.p < 0.0 || params.p > 1.0)
                throw ParamOutOfRange("As1: p must lie in [0,1]");
            ComplexMatrix a = params.p * outer(ket(0, 2)) +
                              (0.5 * (1.0 - params.p)) * ComplexMatrix::identity(2);
            return DensityMatrix(kron(a, outer(ket(0, 2))));
        }
        case Family::As2: {
            if (params.q < 0.0 || params.q > 1.0)
                throw ParamOutOfRange("As2: q must lie in [0,1]");
            ComplexMatrix b = params.q * outer(ket(0, 2)) +
                              (0.5 * (1.0 - params.q)) * ComplexMatrix::identity(2);
            return DensityMatrix(kron(0.5 * ComplexMatrix::identity(2), b));
        }
        case Family::S: {
            if (params.p < 0.0 || params.p > 1.0)
                throw ParamOutOfRange("S: p must lie in [0,1]");
            ComplexMatrix m = params.p * outer(ket(0, 4)) +
                              (0.25 * (1.0 - params.p)) * ComplexMatrix::identity(4);
            return DensityMatrix(std::move(m));
        }
        case Family::D: {
            if (params.gamma < 0.0 || params.gamma > 1.0)
                throw ParamOutOfRange("D: gamma must lie in [0,1]");
            if (!(params.exponent > 0.0))
                throw ParamOutOfRange("D: exponent must be > 0");
            const double g = params.gamma;
            const double ge = std::pow(g, params.exponent);
            const double cx = 1.0 - g;
            const double cz = 1.0 - ge;
            const double cy = cx * cz;
            ComplexMatrix m = ComplexMatrix::identity(4);
            m -= cx * kron(pauli_x(), pauli_x());
            m -= cy * kron(pauli_y(), pauli_y());
            m -= cz * kron(pauli_z(), pauli_z());
            m *= complexd(0.25, 0.0);
            return DensityMatrix(m.hermitized());
        }
    }
    throw ParamOutOfRange("unknown family");
}

DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec) {
    if (rho.dim() != 4) throw BadDimension("apply_channel expects a two-qubit state");
    if (spec.strength < 0.0 || spec.strength > 1.0)
        throw ParamOutOfRange("channel strength must lie in [0,1]");
    const double s = spec.strength;
    switch (spec.kind) {
        case ChannelKind::GlobalWhiteNoise: {
            ComplexMatrix out = (1.0 - s) * rho.mat + (0.25 * s) * ComplexMatrix::identity(4);
            return DensityMatrix(std::move(out));
        }
        case ChannelKind::LocalDephase: {
            if (spec.target == ChannelTarget::Both)
                return dephase(dephase(rho, s, spec.basis, Subsystem::A), s, spec.basis,
                               Subsystem::B);
            return dephase(rho, s, spec.basis,
                           spec.target == ChannelTarget::A ? Subsystem::A : Subsystem::B);
        }
        case ChannelKind::LocalDepolarize: {
            if (spec.target == ChannelTarget::Both)
                return depolarize(depolarize(rho, s, Subsystem::A), s, Subsystem::B);
            return depolarize(rho, s,
                              spec.target == ChannelTarget::A ? Subsystem::A : Subsystem::B);
        }
        case ChannelKind::MemsRecombine:
            return mems_recombine(rho, s);
    }
    throw ParamOutOfRange("unknown channel kind");
}

ValidationReport validate(const DensityMatrix& rho) {
    ValidationReport r;
    r.hermiticity_deviation = rho.mat.hermiticity_error();
    r.hermitian_ok = r.hermiticity_deviation <= 1e-12;
    r.trace_deviation = std::abs(rho.mat.trace() - complexd(1.0, 0.0));
    r.trace_ok = r.trace_deviation <= 1e-10;
    if (r.hermitian_ok) {
        const EigenDecomposition ed = hermitian_eigen(rho.mat);
        r.min_eigenvalue = ed.eigenvalues.front();
    } else {
        // eigenvalues of the Hermitian part still give a usable diagnostic
        const EigenDecomposition ed = hermitian_eigen(rho.mat.hermitized());
        r.min_eigenvalue = ed.eigenvalues.front();
    }
    r.psd_ok = r.min_eigenvalue >= -1e-9;
    return r;
}

DensityMatrix sample_random_state(int rank, std::uint64_t seed) {
    if (rank < 1 || rank > 4) throw BadRank("rank must lie in 1..4");
    SplitMix64 rng(seed);

    auto haar_pure = [&rng]() {
        std::vector<complexd> v(4);
        double norm_sq = 0.0;
        for (complexd& z : v) {
            z = complexd(sample_gaussian(rng), sample_gaussian(rng));
            norm_sq += std::norm(z);
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (complexd& z : v) z *= inv;
        return v;
    };

    if (rank == 1) return DensityMatrix(outer(haar_pure()).hermitized());

    const std::vector<double> w = sample_dirichlet(rng, rank);
    ComplexMatrix m(4);
    for (int k = 0; k < rank; ++k) m += w[k] * outer(haar_pure());
    return DensityMatrix(m.hermitized());
}

std::string state_to_json(const DensityMatrix& rho) {
    nlohmann::json j;
    j["dim"] = rho.dim();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(rho.dim()) * rho.dim());
    im.reserve(re.capacity());
    for (int i = 0; i < rho.dim(); ++i)
        for (int k = 0; k < rho.dim(); ++k) {
            re.push_back(rho.mat(i, k).real());
            im.push_back(rho.mat(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

DensityMatrix state_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 4) throw BadDimension("state JSON dim must be 2 or 4");
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    const std::size_t n = static_cast<std::size_t>(dim) * dim;
    if (re.size() != n || im.size() != n)
        throw IoError("state JSON re/im arrays have wrong length");
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i) * dim + k;
            m(i, k) = complexd(re[idx], im[idx]);
        }
    return DensityMatrix(std::move(m));
}

}  // namespace twoq
