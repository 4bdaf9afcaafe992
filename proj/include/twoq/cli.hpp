#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twoq/measures.hpp"
#include "twoq/states.hpp"

namespace twoq::cli {

/// One grid point of a family sweep. All numeric fields come from a
/// single state evaluation. `param2` is the gamma exponent for the D
/// family and NaN elsewhere.
struct SweepRecord {
    std::string family;
    double param = 0.0;
    double param2 = 0.0;
    double entropy_total = 0.0;  // von Neumann entropy of the joint state
    double tangle = 0.0;
    double i_a = 0.0;
    double i_b = 0.0;
    double i_local = 0.0;
    double i_corr = 0.0;
    double i_total = 0.0;
    std::string measure;  // "vn" | "linear"
    double lhs_duality_a = 0.0;
    double lhs_triality_a = 0.0;
};

/// Grid sweep over a family's natural parameter range:
/// PURE alpha in [0,pi/4]; WERNER/AS1/S p in [0,1]; MEMS2 p in [2/3,1];
/// AS2 q in [0,1]; D gamma in [0,1] at fixed exponent.
std::vector<SweepRecord> sweep(Family family, int grid, InfoMeasure measure,
                               double exponent = 1.0);

/// Two-stage separable sweep: qubit a dephased from pure to fully mixed
/// (AS1 rows, p = 1-t), then qubit b (AS2 rows, q = 2-t), t in [0,2].
std::vector<SweepRecord> sweep_as_composite(int grid, InfoMeasure measure);

std::string sweep_csv_header();
void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os);
std::vector<SweepRecord> parse_sweep_csv(std::istream& is);

/// Rebuild the state a sweep row was computed from.
DensityMatrix state_from_record(const SweepRecord& rec);

enum class FigureId { Plane, Pure, WernerMems, Product, Linear, Dephased };

FigureId figure_from_name(const std::string& name);
std::string figure_name(FigureId id);

struct FigureOptions {
    int grid = 101;
    std::uint64_t seed = 0;
    int restarts = 16;  // plane only
};

/// Writes <out_path> (CSV) plus <out_path>.meta.json. Output is a pure
/// function of (figure, options): byte-identical across runs.
void write_figure(FigureId fig, const std::string& out_path, const FigureOptions& options);

struct VerifyOptions {
    int samples = 1000;
    std::uint64_t seed = 0;
    /// Fault probe: reconstruct without the PSD projection so that the
    /// tomography non-negativity check must fail. Negative control only.
    bool skip_psd_projection = false;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

VerifyReport run_verify(const VerifyOptions& options);
std::string verify_report_json(const VerifyReport& report, const VerifyOptions& options);

struct TomoRunOptions {
    FamilyParams family;
    std::uint64_t shots = 1000000;
    int resamples = 100;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string counts_out_path;  // optional: first resample's count table
};

/// Simulated tomography of an ideal family state: writes a CSV of
/// measure,ideal,mean,stddev rows plus <out>.meta.json.
void run_tomo(const TomoRunOptions& options);

/// "%.12g" with NaN spelled "nan"; the single formatter behind every CSV.
std::string fmt_double(double v);

}  // namespace twoq::cli
