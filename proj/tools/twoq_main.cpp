#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twoq/cli.hpp"
#include "twoq/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct SweepArgs {
    std::string family = "pure";
    int grid = 101;
    std::string measure = "vn";
    double exponent = 1.0;
    std::string out = "-";
};

struct FigureArgs {
    std::string fig;
    std::string out;
    int grid = 101;
    std::uint64_t seed = 0;
    int restarts = 16;
};

struct VerifyArgs {
    int samples = 1000;
    std::uint64_t seed = 0;
    bool skip_psd = false;
    std::string out = "-";
};

struct TomoArgs {
    std::string family = "werner";
    double alpha = 0.0;
    double p = 1.0;
    double q = 1.0;
    double gamma = 0.0;
    double exponent = 1.0;
    std::uint64_t shots = 1000000;
    int resamples = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string counts_out;
};

twoq::InfoMeasure measure_from_flag(const std::string& m) {
    if (m == "vn") return twoq::InfoMeasure::VonNeumann;
    if (m == "linear") return twoq::InfoMeasure::Linear;
    throw twoq::ParamOutOfRange("measure must be vn or linear");
}

twoq::FamilyParams family_params_from_args(const TomoArgs& a) {
    twoq::FamilyParams fp;
    std::string name = a.family;
    for (char& c : name) c = static_cast<char>(std::toupper(c));
    fp.family = twoq::family_from_name(name);
    fp.alpha = a.alpha;
    fp.p = a.p;
    fp.q = a.q;
    fp.gamma = a.gamma;
    fp.exponent = a.exponent;
    return fp;
}

void emit(const std::string& out, const std::string& content) {
    if (out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw twoq::IoError("cannot open for writing: " + out);
    os << content;
}

int run_sweep(const SweepArgs& args) {
    std::string name = args.family;
    for (char& c : name) c = static_cast<char>(std::toupper(c));
    std::vector<twoq::cli::SweepRecord> rows;
    if (name == "AS_COMPOSITE") {
        rows = twoq::cli::sweep_as_composite(args.grid, measure_from_flag(args.measure));
    } else {
        rows = twoq::cli::sweep(twoq::family_from_name(name), args.grid,
                                measure_from_flag(args.measure), args.exponent);
    }
    std::ostringstream csv;
    twoq::cli::write_sweep_csv(rows, csv);
    emit(args.out, csv.str());
    return kExitOk;
}

int run_figure(const FigureArgs& args) {
    twoq::cli::FigureOptions opts;
    opts.grid = args.grid;
    opts.seed = args.seed;
    opts.restarts = args.restarts;
    twoq::cli::write_figure(twoq::cli::figure_from_name(args.fig), args.out, opts);
    return kExitOk;
}

int run_verify(const VerifyArgs& args) {
    twoq::cli::VerifyOptions opts;
    opts.samples = args.samples;
    opts.seed = args.seed;
    opts.skip_psd_projection = args.skip_psd;
    const twoq::cli::VerifyReport report = twoq::cli::run_verify(opts);
    emit(args.out, twoq::cli::verify_report_json(report, opts));
    return report.all_passed() ? kExitOk : kExitFailure;
}

int run_tomo(const TomoArgs& args) {
    twoq::cli::TomoRunOptions opts;
    opts.family = family_params_from_args(args);
    opts.shots = args.shots;
    opts.resamples = args.resamples;
    opts.seed = args.seed;
    opts.out_path = args.out;
    opts.counts_out_path = args.counts_out;
    twoq::cli::run_tomo(opts);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit information toolkit: state families, entropy and "
                 "entanglement ledgers, tangle-entropy frontier, simulated tomography"};
    app.set_version_flag("--version", std::string("twoq ") + twoq::kVersion);
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "family sweep to CSV");
    sweep->add_option("--family", sweep_args.family,
                      "pure|werner|mems2|as1|as2|as_composite|s|d")
        ->default_val("pure");
    sweep->add_option("--grid", sweep_args.grid, "grid points")->default_val(101);
    sweep->add_option("--measure", sweep_args.measure, "vn|linear")->default_val("vn");
    sweep->add_option("--exponent", sweep_args.exponent, "gamma exponent (family d)")
        ->default_val(1.0);
    sweep->add_option("--out", sweep_args.out, "output path, - for stdout")->default_val("-");

    FigureArgs figure_args;
    CLI::App* figure = app.add_subcommand("figure", "figure dataset to CSV + metadata");
    figure->add_option("--fig", figure_args.fig,
                       "plane|pure|werner_mems|product|linear|dephased")
        ->required();
    figure->add_option("--out", figure_args.out, "output CSV path")->required();
    figure->add_option("--grid", figure_args.grid, "grid points")->default_val(101);
    figure->add_option("--seed", figure_args.seed, "random seed")->default_val(0);
    figure->add_option("--restarts", figure_args.restarts, "frontier restarts (plane)")
        ->default_val(16);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--samples", verify_args.samples, "random-state sample count")
        ->default_val(1000);
    verify->add_option("--seed", verify_args.seed, "random seed")->default_val(0);
    verify->add_option("--out", verify_args.out, "report path, - for stdout")->default_val("-");
    verify
        ->add_flag("--debug-skip-psd-projection", verify_args.skip_psd,
                   "fault probe: bypass the tomography PSD projection")
        ->group("");  // hidden from --help

    TomoArgs tomo_args;
    CLI::App* tomo = app.add_subcommand("tomo-run", "simulated tomography with error bars");
    tomo->alias("tomo_run");
    tomo->add_option("--family", tomo_args.family, "pure|werner|mems2|as1|as2|s|d")
        ->default_val("werner");
    tomo->add_option("--alpha", tomo_args.alpha, "Schmidt angle (pure)")->default_val(0.0);
    tomo->add_option("--p", tomo_args.p, "mixing weight")->default_val(1.0);
    tomo->add_option("--q", tomo_args.q, "mixing weight (as2)")->default_val(1.0);
    tomo->add_option("--gamma", tomo_args.gamma, "dephasing strength (d)")->default_val(0.0);
    tomo->add_option("--exponent", tomo_args.exponent, "gamma exponent (d)")->default_val(1.0);
    tomo->add_option("--shots", tomo_args.shots, "mean photocounts per setting")
        ->default_val(1000000);
    tomo->add_option("--resamples", tomo_args.resamples, "Monte Carlo resamples")
        ->default_val(100);
    tomo->add_option("--seed", tomo_args.seed, "random seed")->default_val(0);
    tomo->add_option("--out", tomo_args.out, "output CSV path")->required();
    tomo->add_option("--counts-out", tomo_args.counts_out,
                     "also write the first resample's count table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (figure->parsed()) return run_figure(figure_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (tomo->parsed()) return run_tomo(tomo_args);
    } catch (const twoq::ParamOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const twoq::BadShots& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const twoq::BadEntropy& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
