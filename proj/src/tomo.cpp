#include "twoq/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "twoq/measures.hpp"
#include "twoq/rng.hpp"

namespace twoq::tomo {

namespace {

constexpr std::array<PauliAxis, 3> kAxes = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

const ComplexMatrix& sigma(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return pauli_x();
        case PauliAxis::Y: return pauli_y();
        default: return pauli_z();
    }
}

int axis_index(PauliAxis axis) { return axis == PauliAxis::X ? 0 : axis == PauliAxis::Y ? 1 : 2; }

std::string axis_name(PauliAxis axis) {
    return axis == PauliAxis::X ? "x" : axis == PauliAxis::Y ? "y" : "z";
}

PauliAxis axis_from_name(const std::string& s) {
    if (s == "x") return PauliAxis::X;
    if (s == "y") return PauliAxis::Y;
    if (s == "z") return PauliAxis::Z;
    throw IoError("unknown Pauli axis label: " + s);
}

ComplexMatrix projector(PauliAxis axis, int sign) {
    ComplexMatrix p = ComplexMatrix::identity(2);
    p += (sign == 0 ? 1.0 : -1.0) * sigma(axis);
    p *= complexd(0.5, 0.0);
    return p;
}

/// Project a Hermitian unit-trace-ish matrix onto the nearest (Frobenius)
/// PSD matrix of trace one: shift the spectrum by a water-filling constant
/// and clip at zero.
DensityMatrix project_to_physical(const ComplexMatrix& m) {
    const EigenDecomposition ed = hermitian_eigen(m.hermitized());
    const int n = m.dim();
    std::vector<double> lam(ed.eigenvalues.rbegin(), ed.eigenvalues.rend());  // descending

    std::vector<double> clipped(n, 0.0);
    double cumulative = 0.0;
    int kept = 0;
    for (int k = 0; k < n; ++k) {
        cumulative += lam[k];
        const double shift = (cumulative - 1.0) / (k + 1);
        if (lam[k] - shift > 0.0 || k == 0) kept = k + 1;
    }
    double cum_kept = 0.0;
    for (int k = 0; k < kept; ++k) cum_kept += lam[k];
    const double shift = (cum_kept - 1.0) / kept;
    for (int k = 0; k < kept; ++k) clipped[k] = lam[k] - shift;

    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < kept; ++k) {
                // descending index k maps to ascending column n-1-k
                const int c = n - 1 - k;
                s += ed.eigenvectors(i, c) * clipped[k] * std::conj(ed.eigenvectors(j, c));
            }
            out(i, j) = s;
        }
    return DensityMatrix(out.hermitized());
}

struct Correlators {
    double joint[3][3] = {};   // <sigma_i x sigma_j>
    double single_a[3] = {};   // <sigma_i x I>, averaged over b settings
    double single_b[3] = {};   // <I x sigma_j>, averaged over a settings
};

Correlators correlators_from_records(const std::vector<MeasurementRecord>& records) {
    bool seen[3][3] = {};
    Correlators c;
    double weight_a[3] = {};
    double weight_b[3] = {};
    for (const MeasurementRecord& r : records) {
        const int i = axis_index(r.basis_a);
        const int j = axis_index(r.basis_b);
        if (seen[i][j]) throw MissingSettings("duplicate setting in count table");
        seen[i][j] = true;
        const double n00 = static_cast<double>(r.outcome_counts[0]);
        const double n01 = static_cast<double>(r.outcome_counts[1]);
        const double n10 = static_cast<double>(r.outcome_counts[2]);
        const double n11 = static_cast<double>(r.outcome_counts[3]);
        const double total = n00 + n01 + n10 + n11;
        if (total <= 0.0) continue;  // empty table contributes nothing
        c.joint[i][j] = (n00 - n01 - n10 + n11) / total;
        c.single_a[i] += (n00 + n01 - n10 - n11) / total;
        weight_a[i] += 1.0;
        c.single_b[j] += (n00 - n01 + n10 - n11) / total;
        weight_b[j] += 1.0;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!seen[i][j]) throw MissingSettings("count table must contain all 9 settings");
    for (int k = 0; k < 3; ++k) {
        if (weight_a[k] > 0.0) c.single_a[k] /= weight_a[k];
        if (weight_b[k] > 0.0) c.single_b[k] /= weight_b[k];
    }
    return c;
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / (static_cast<double>(xs.size()) - 1.0));
}

}  // namespace

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, PauliAxis basis_a,
                                            PauliAxis basis_b) {
    if (rho.dim() != 4) throw BadDimension("tomography expects a two-qubit state");
    std::array<double, 4> p{};
    for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
            const ComplexMatrix pi = kron(projector(basis_a, sa), projector(basis_b, sb));
            const ComplexMatrix prod = rho.mat * pi;
            p[2 * sa + sb] = std::max(0.0, prod.trace().real());
        }
    return p;
}

std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho, std::uint64_t shots,
                                               std::uint64_t seed) {
    if (shots < 1) throw BadShots("shots must be >= 1");
    std::vector<MeasurementRecord> out;
    out.reserve(9);
    SplitMix64 rng(seed);
    for (PauliAxis a : kAxes)
        for (PauliAxis b : kAxes) {
            const std::array<double, 4> p = outcome_probabilities(rho, a, b);
            MeasurementRecord rec;
            rec.basis_a = a;
            rec.basis_b = b;
            rec.shots = shots;
            for (int k = 0; k < 4; ++k)
                rec.outcome_counts[k] =
                    sample_poisson(rng, static_cast<double>(shots) * p[k]);
            out.push_back(rec);
        }
    return out;
}

ReconstructionResult reconstruct(const std::vector<MeasurementRecord>& records,
                                 const ReconstructOptions& options) {
    const Correlators c = correlators_from_records(records);

    ComplexMatrix m = ComplexMatrix::identity(4);
    for (int i = 0; i < 3; ++i) {
        m += c.single_a[i] * kron(sigma(kAxes[i]), ComplexMatrix::identity(2));
        m += c.single_b[i] * kron(ComplexMatrix::identity(2), sigma(kAxes[i]));
        for (int j = 0; j < 3; ++j)
            m += c.joint[i][j] * kron(sigma(kAxes[i]), sigma(kAxes[j]));
    }
    m *= complexd(0.25, 0.0);

    ReconstructionResult r;
    if (options.psd_projection) {
        r.rho_hat = project_to_physical(m);
        r.iterations = 1;
    } else {
        r.rho_hat.mat = m.hermitized();  // raw linear inversion, may be unphysical
        r.iterations = 0;
    }
    return r;
}

ReconstructionResult reconstruct_single(const std::vector<MeasurementRecord>& records,
                                        Subsystem which) {
    const Correlators c = correlators_from_records(records);
    const double* r3 = which == Subsystem::A ? c.single_a : c.single_b;
    ComplexMatrix m = ComplexMatrix::identity(2);
    for (int i = 0; i < 3; ++i) m += r3[i] * sigma(kAxes[i]);
    m *= complexd(0.5, 0.0);
    ReconstructionResult r;
    r.rho_hat = project_to_physical(m);
    r.iterations = 1;
    return r;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma_state) {
    if (rho.dim() != sigma_state.dim()) throw BadDimension("fidelity dimension mismatch");
    const EigenDecomposition ed = hermitian_eigen(rho.mat);
    const int n = rho.dim();
    ComplexMatrix sqrt_rho(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < n; ++k) {
                const double lam = std::max(ed.eigenvalues[k], 0.0);
                s += ed.eigenvectors(i, k) * std::sqrt(lam) * std::conj(ed.eigenvectors(j, k));
            }
            sqrt_rho(i, j) = s;
        }
    const ComplexMatrix inner = (sqrt_rho * sigma_state.mat * sqrt_rho).hermitized();
    const EigenDecomposition ei = hermitian_eigen(inner);
    double root_sum = 0.0;
    for (double lam : ei.eigenvalues) root_sum += std::sqrt(std::max(lam, 0.0));
    return std::min(1.0, root_sum * root_sum);
}

ErrorBars error_bars(const DensityMatrix& rho, std::uint64_t shots, int resamples,
                     std::uint64_t seed) {
    if (resamples < 2) throw ParamOutOfRange("error_bars needs resamples >= 2");
    std::vector<double> t, ia, ib, ic, it;
    t.reserve(resamples);
    for (int k = 0; k < resamples; ++k) {
        const std::vector<MeasurementRecord> recs =
            simulate_counts(rho, shots, derive_seed(seed, static_cast<std::uint64_t>(k)));
        const ReconstructionResult rec = reconstruct(recs);
        const InfoBudget b = info_budget_vn(rec.rho_hat);
        t.push_back(tangle(rec.rho_hat));
        ia.push_back(b.i_a);
        ib.push_back(b.i_b);
        ic.push_back(b.i_corr);
        it.push_back(b.i_total);
    }
    auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    ErrorBars e;
    e.resamples = resamples;
    e.tangle_mean = mean(t);
    e.tangle_std = sample_std(t, e.tangle_mean);
    e.i_a_mean = mean(ia);
    e.i_a_std = sample_std(ia, e.i_a_mean);
    e.i_b_mean = mean(ib);
    e.i_b_std = sample_std(ib, e.i_b_mean);
    e.i_corr_mean = mean(ic);
    e.i_corr_std = sample_std(ic, e.i_corr_mean);
    e.i_total_mean = mean(it);
    e.i_total_std = sample_std(it, e.i_total_mean);
    return e;
}

void write_counts_csv(const std::vector<MeasurementRecord>& records, std::ostream& os) {
    os << "setting_a,setting_b,n00,n01,n10,n11\n";
    for (const MeasurementRecord& r : records) {
        os << axis_name(r.basis_a) << ',' << axis_name(r.basis_b);
        for (std::uint64_t n : r.outcome_counts) os << ',' << n;
        os << '\n';
    }
}

std::vector<MeasurementRecord> read_counts_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty count table");
    if (line != "setting_a,setting_b,n00,n01,n10,n11")
        throw IoError("unexpected count table header: " + line);
    std::vector<MeasurementRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        MeasurementRecord r;
        std::getline(ss, field, ',');
        r.basis_a = axis_from_name(field);
        std::getline(ss, field, ',');
        r.basis_b = axis_from_name(field);
        std::uint64_t total = 0;
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(ss, field, ',')) throw IoError("truncated count row");
            r.outcome_counts[k] = std::stoull(field);
            total += r.outcome_counts[k];
        }
        r.shots = total;
        out.push_back(r);
    }
    return out;
}

}  // namespace twoq::tomo
