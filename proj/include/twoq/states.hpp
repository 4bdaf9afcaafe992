#pragma once

#include <cstdint>
#include <string>

#include "twoq/linalg.hpp"

namespace twoq {

/// Hermitian, unit-trace, positive-semidefinite matrix of dim 2 or 4.
/// Constructors in this module guarantee the invariants; matrices from
/// elsewhere should be checked with validate().
struct DensityMatrix {
    ComplexMatrix mat;

    DensityMatrix() : mat(2) {}
    explicit DensityMatrix(ComplexMatrix m) : mat(std::move(m)) {
        if (mat.dim() != 2 && mat.dim() != 4)
            throw BadDimension("density matrices have dim 2 or 4");
    }

    int dim() const { return mat.dim(); }
};

enum class Family { Pure, Werner, Mems2, As1, As2, S, D };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Parameters for make_state. Only the fields relevant to the chosen
/// family are read; `exponent` is the power applied to gamma for the
/// second dephasing basis of the D family (the Schmidt angle keeps the
/// name alpha).
struct FamilyParams {
    Family family = Family::Pure;
    double alpha = 0.0;     // Schmidt angle, [0, pi/4] (Pure)
    double p = 1.0;         // mixing weight, [0,1]; [2/3,1] for Mems2
    double q = 1.0;         // mixing weight, [0,1] (As2)
    double gamma = 0.0;     // dephasing strength, [0,1] (D)
    double exponent = 1.0;  // gamma exponent, > 0 (D)
};

/// Two-qubit state constructors:
///   Pure(alpha):  |psi><psi|, |psi> = cos a|00> + sin a|11>
///   Werner(p):    p|psi-><psi-| + (1-p)/4 * I4
///   Mems2(p):     p|phi+><phi+| + (1-p)|10><10|,  p in [2/3, 1]
///   As1(p):       (p|0><0| + (1-p)/2 * I2) (x) |0><0|
///   As2(q):       (I2/2) (x) (q|0><0| + (1-q)/2 * I2)
///   S(p):         p|00><00| + (1-p)/4 * I4
///   D(g, e):      (I - (1-g) XX - (1-g)(1-g^e) YY - (1-g^e) ZZ)/4
DensityMatrix make_state(const FamilyParams& params);

enum class ChannelKind { GlobalWhiteNoise, LocalDephase, LocalDepolarize, MemsRecombine };
enum class ChannelTarget { A, B, Both };
enum class PauliAxis { X, Y, Z };

struct ChannelSpec {
    ChannelKind kind = ChannelKind::GlobalWhiteNoise;
    double strength = 0.0;                      // [0,1]
    ChannelTarget target = ChannelTarget::A;    // LocalDephase / LocalDepolarize
    PauliAxis basis = PauliAxis::Z;             // LocalDephase only
};

/// Noise operations of the source scheme:
///   GlobalWhiteNoise(s):   rho -> (1-s) rho + s I4/4
///   LocalDephase(s,ax,t):  rho -> (1-s) rho + s K rho K, K = pauli(ax) on t
///   LocalDepolarize(s,t):  target marginal -> (1-s) rho_t + s I2/2
///   MemsRecombine(s):      (1-s) rho + s B(rho), where B projects the
///                          a-flipped state onto |0> of qubit b and
///                          renormalizes; feeding Pure(pi/4) with s = 1-p
///                          yields Mems2(p).
DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec);

struct ValidationReport {
    double trace_deviation = 0.0;      // |Tr rho - 1|
    double min_eigenvalue = 0.0;
    double hermiticity_deviation = 0.0;
    bool trace_ok = false;             // trace_deviation <= 1e-10
    bool psd_ok = false;               // min_eigenvalue >= -1e-9
    bool hermitian_ok = false;         // hermiticity_deviation <= 1e-12

    bool passed() const { return trace_ok && psd_ok && hermitian_ok; }
};

ValidationReport validate(const DensityMatrix& rho);

/// Rank-constrained random two-qubit state: rank-1 draws are Haar pure
/// states; rank-k mixes k independent Haar pure states with flat
/// Dirichlet weights. Deterministic per seed.
DensityMatrix sample_random_state(int rank, std::uint64_t seed);

/// JSON wire form {"dim": n, "re": [...], "im": [...]}, row-major.
std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);

}  // namespace twoq
