#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "twoq/states.hpp"

namespace twoq::tomo {

/// Counts for one joint Pauli setting. Outcomes are ordered by joint
/// eigenvalue sign: n00 = (+,+), n01 = (+,-), n10 = (-,+), n11 = (-,-);
/// each outcome is an independent Poisson draw around shots * p(outcome).
struct MeasurementRecord {
    PauliAxis basis_a = PauliAxis::Z;
    PauliAxis basis_b = PauliAxis::Z;
    std::array<std::uint64_t, 4> outcome_counts{};
    std::uint64_t shots = 0;
};

struct ReconstructionResult {
    DensityMatrix rho_hat;
    double fidelity_to_truth = -1.0;  // filled by fidelity() when truth is known
    int iterations = 0;
};

/// Per-measure mean and standard deviation over Monte Carlo resamples.
struct ErrorBars {
    double tangle_mean = 0.0, tangle_std = 0.0;
    double i_a_mean = 0.0, i_a_std = 0.0;
    double i_b_mean = 0.0, i_b_std = 0.0;
    double i_corr_mean = 0.0, i_corr_std = 0.0;
    double i_total_mean = 0.0, i_total_std = 0.0;
    int resamples = 0;
};

struct ReconstructOptions {
    bool psd_projection = true;  // disablable only as a verification fault probe
};

/// Born-rule outcome probabilities for one joint setting, outcome order
/// as in MeasurementRecord.
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, PauliAxis basis_a,
                                            PauliAxis basis_b);

/// All 9 joint Pauli settings (xx, xy, ..., zz) with Poissonian counts.
/// Deterministic per seed. Throws BadShots for shots < 1.
std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho, std::uint64_t shots,
                                               std::uint64_t seed);

/// Linear inversion of the empirical Pauli correlators to the 16-term
/// Bloch expansion, then Frobenius-nearest projection onto the unit-trace
/// PSD cone. Throws MissingSettings unless all 9 settings are present.
ReconstructionResult reconstruct(const std::vector<MeasurementRecord>& records,
                                 const ReconstructOptions& options = {});

/// Single-qubit reconstruction from the marginal counts of the same
/// 9-setting table.
ReconstructionResult reconstruct_single(const std::vector<MeasurementRecord>& records,
                                        Subsystem which);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// simulate -> reconstruct -> measures, repeated over derived seeds.
ErrorBars error_bars(const DensityMatrix& rho, std::uint64_t shots, int resamples,
                     std::uint64_t seed);

/// CSV with header setting_a,setting_b,n00,n01,n10,n11.
void write_counts_csv(const std::vector<MeasurementRecord>& records, std::ostream& os);
std::vector<MeasurementRecord> read_counts_csv(std::istream& is);

}  // namespace twoq::tomo
