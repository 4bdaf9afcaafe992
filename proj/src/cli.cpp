#include "twoq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "twoq/frontier.hpp"
#include "twoq/rng.hpp"
#include "twoq/tomo.hpp"
#include "twoq/version.hpp"

namespace twoq::cli {

namespace {

constexpr double kPi4 = 0.78539816339744830961;
const double kNan = std::numeric_limits<double>::quiet_NaN();

std::string measure_name(InfoMeasure m) { return m == InfoMeasure::VonNeumann ? "vn" : "linear"; }

InfoBudget budget_of(const DensityMatrix& rho, InfoMeasure m) {
    return m == InfoMeasure::VonNeumann ? info_budget_vn(rho) : info_budget_linear(rho);
}

SweepRecord record_from_state(const std::string& family, double param, double param2,
                              const DensityMatrix& rho, InfoMeasure measure) {
    SweepRecord r;
    r.family = family;
    r.param = param;
    r.param2 = param2;
    r.entropy_total = von_neumann_entropy(rho);
    const DualityLedger ledger = triality_ledger(rho, Subsystem::A);
    r.tangle = ledger.concurrence * ledger.concurrence;
    const InfoBudget b = budget_of(rho, measure);
    r.i_a = b.i_a;
    r.i_b = b.i_b;
    r.i_local = b.i_local;
    r.i_corr = b.i_corr;
    r.i_total = b.i_total;
    r.measure = measure_name(measure);
    r.lhs_duality_a = ledger.lhs_duality;
    r.lhs_triality_a = ledger.lhs_triality;
    return r;
}

/// Closed-form entropies used for the parameter-at-entropy inversions of
/// the plane figure (kept off the eigensolver path on purpose).
double werner_entropy_closed(double p) {
    double s = 0.0;
    const double big = (1.0 + 3.0 * p) / 4.0;
    const double small = (1.0 - p) / 4.0;
    if (big > 1e-300) s -= big * std::log2(big);
    if (small > 1e-300) s -= 3.0 * small * std::log2(small);
    return s;
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 1e-300) s -= p * std::log2(p);
    if (1.0 - p > 1e-300) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

/// Bisect a monotone function on [lo,hi] for f(x) = target.
double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
    double flo = f(lo);
    double fhi = f(hi);
    const bool increasing = fhi > flo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < target) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

nlohmann::ordered_json base_metadata(const std::string& kind) {
    nlohmann::ordered_json j;
    j["tool"] = "twoq";
    j["tool_version"] = kVersion;
    j["kind"] = kind;
    return j;
}

}  // namespace

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<SweepRecord> sweep(Family family, int grid, InfoMeasure measure, double exponent) {
    if (grid < 2) throw ParamOutOfRange("sweep grid must have at least 2 points");
    std::vector<SweepRecord> rows;
    rows.reserve(grid);
    const std::string tag = family_name(family);
    for (int k = 0; k < grid; ++k) {
        const double t = static_cast<double>(k) / (grid - 1);
        FamilyParams fp;
        fp.family = family;
        double param = t;
        double param2 = kNan;
        switch (family) {
            case Family::Pure:
                param = t * kPi4;
                fp.alpha = param;
                break;
            case Family::Werner:
            case Family::As1:
            case Family::S:
                fp.p = param;
                break;
            case Family::Mems2:
                param = 2.0 / 3.0 + t / 3.0;
                fp.p = param;
                break;
            case Family::As2:
                fp.q = param;
                break;
            case Family::D:
                fp.gamma = param;
                fp.exponent = exponent;
                param2 = exponent;
                break;
        }
        rows.push_back(record_from_state(tag, param, param2, make_state(fp), measure));
    }
    return rows;
}

std::vector<SweepRecord> sweep_as_composite(int grid, InfoMeasure measure) {
    if (grid < 2) throw ParamOutOfRange("sweep grid must have at least 2 points");
    std::vector<SweepRecord> rows;
    rows.reserve(grid);
    for (int k = 0; k < grid; ++k) {
        const double t = 2.0 * k / (grid - 1);
        FamilyParams fp;
        if (t <= 1.0) {
            fp.family = Family::As1;
            fp.p = 1.0 - t;
        } else {
            fp.family = Family::As2;
            fp.q = 2.0 - t;
        }
        const double param = t <= 1.0 ? fp.p : fp.q;
        rows.push_back(
            record_from_state(family_name(fp.family), param, kNan, make_state(fp), measure));
    }
    return rows;
}

std::string sweep_csv_header() {
    return "family,param,param2,entropy_total,tangle,i_a,i_b,i_local,i_corr,i_total,"
           "measure,lhs_duality_a,lhs_triality_a";
}

void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os) {
    os << sweep_csv_header() << '\n';
    for (const SweepRecord& r : rows) {
        os << r.family << ',' << fmt_double(r.param) << ',' << fmt_double(r.param2) << ','
           << fmt_double(r.entropy_total) << ',' << fmt_double(r.tangle) << ','
           << fmt_double(r.i_a) << ',' << fmt_double(r.i_b) << ',' << fmt_double(r.i_local)
           << ',' << fmt_double(r.i_corr) << ',' << fmt_double(r.i_total) << ',' << r.measure
           << ',' << fmt_double(r.lhs_duality_a) << ',' << fmt_double(r.lhs_triality_a)
           << '\n';
    }
}

std::vector<SweepRecord> parse_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty sweep CSV");
    if (line != sweep_csv_header()) throw IoError("unexpected sweep CSV header: " + line);
    std::vector<SweepRecord> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SweepRecord r;
        auto next = [&]() {
            if (!std::getline(ss, field, ',')) throw IoError("truncated sweep CSV row");
            return field;
        };
        r.family = next();
        r.param = std::stod(next());
        r.param2 = std::stod(next());
        r.entropy_total = std::stod(next());
        r.tangle = std::stod(next());
        r.i_a = std::stod(next());
        r.i_b = std::stod(next());
        r.i_local = std::stod(next());
        r.i_corr = std::stod(next());
        r.i_total = std::stod(next());
        r.measure = next();
        r.lhs_duality_a = std::stod(next());
        r.lhs_triality_a = std::stod(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

DensityMatrix state_from_record(const SweepRecord& rec) {
    FamilyParams fp;
    fp.family = family_from_name(rec.family);
    switch (fp.family) {
        case Family::Pure: fp.alpha = rec.param; break;
        case Family::Werner:
        case Family::Mems2:
        case Family::S:
        case Family::As1: fp.p = rec.param; break;
        case Family::As2: fp.q = rec.param; break;
        case Family::D:
            fp.gamma = rec.param;
            fp.exponent = rec.param2;
            break;
    }
    return make_state(fp);
}

FigureId figure_from_name(const std::string& name) {
    if (name == "plane") return FigureId::Plane;
    if (name == "pure") return FigureId::Pure;
    if (name == "werner_mems") return FigureId::WernerMems;
    if (name == "product") return FigureId::Product;
    if (name == "linear") return FigureId::Linear;
    if (name == "dephased") return FigureId::Dephased;
    throw ParamOutOfRange("unknown figure id: " + name);
}

std::string figure_name(FigureId id) {
    switch (id) {
        case FigureId::Plane: return "plane";
        case FigureId::Pure: return "pure";
        case FigureId::WernerMems: return "werner_mems";
        case FigureId::Product: return "product";
        case FigureId::Linear: return "linear";
        case FigureId::Dephased: return "dephased";
    }
    throw ParamOutOfRange("unknown figure id");
}

void write_figure(FigureId fig, const std::string& out_path, const FigureOptions& options) {
    if (options.grid < 2) throw ParamOutOfRange("figure grid must have at least 2 points");
    nlohmann::ordered_json meta = base_metadata("figure");
    meta["figure"] = figure_name(fig);
    meta["grid"] = options.grid;
    meta["seed"] = options.seed;

    std::ostringstream csv;
    if (fig == FigureId::Plane) {
        meta["restarts"] = options.restarts;
        meta["columns"] = {"entropy",       "frontier_tangle", "frontier_i_corr",
                           "frontier_converged", "werner_tangle",  "mems2_tangle"};
        const double mems_max_entropy = binary_entropy(2.0 / 3.0);
        const FrontierGrid grid{0.0, 2.0, options.grid};
        const std::vector<FrontierPoint> pts =
            trace_frontier(grid, options.restarts, options.seed);
        double crossover = kNan;
        csv << "entropy,frontier_tangle,frontier_i_corr,frontier_converged,"
               "werner_tangle,mems2_tangle\n";
        for (const FrontierPoint& p : pts) {
            const double s = p.entropy;
            const double frontier_i_corr = info_budget_vn(p.argmax_state).i_corr;
            double werner_t = kNan;
            if (s <= 2.0) {
                const double pw = bisect(werner_entropy_closed, 0.0, 1.0, s);
                FamilyParams fp;
                fp.family = Family::Werner;
                fp.p = pw;
                werner_t = tangle(make_state(fp));
            }
            double mems_t = kNan;
            if (s <= mems_max_entropy) {
                const double pm = bisect(binary_entropy, 1.0, 2.0 / 3.0, s);
                FamilyParams fp;
                fp.family = Family::Mems2;
                fp.p = pm;
                mems_t = tangle(make_state(fp));
                if (p.max_tangle <= mems_t + 1e-3) crossover = s;
            }
            csv << fmt_double(s) << ',' << fmt_double(p.max_tangle) << ','
                << fmt_double(frontier_i_corr) << ',' << (p.converged ? 1 : 0) << ','
                << fmt_double(werner_t) << ',' << fmt_double(mems_t) << '\n';
        }
        // empirical entropy up to which the rank-2 family stays on the boundary
        meta["mems2_boundary_match_max_entropy"] = fmt_double(crossover);
    } else {
        meta["columns"] = {"family", "param",  "param2", "entropy_total", "tangle",
                           "i_a",    "i_b",    "i_local", "i_corr",       "i_total",
                           "measure", "lhs_duality_a", "lhs_triality_a"};
        std::vector<SweepRecord> rows;
        auto append = [&rows](std::vector<SweepRecord> more) {
            rows.insert(rows.end(), more.begin(), more.end());
        };
        switch (fig) {
            case FigureId::Pure:
                append(sweep(Family::Pure, options.grid, InfoMeasure::VonNeumann));
                break;
            case FigureId::WernerMems:
                append(sweep(Family::Werner, options.grid, InfoMeasure::VonNeumann));
                append(sweep(Family::Mems2, options.grid, InfoMeasure::VonNeumann));
                break;
            case FigureId::Product:
                append(sweep_as_composite(options.grid, InfoMeasure::VonNeumann));
                append(sweep(Family::S, options.grid, InfoMeasure::VonNeumann));
                break;
            case FigureId::Linear:
                append(sweep(Family::Pure, options.grid, InfoMeasure::Linear));
                append(sweep(Family::As1, options.grid, InfoMeasure::Linear));
                break;
            case FigureId::Dephased: {
                for (double e : {0.25, 0.5, 1.0, 2.0, 4.0})
                    append(sweep(Family::D, options.grid, InfoMeasure::VonNeumann, e));
                append(sweep(Family::Werner, options.grid, InfoMeasure::VonNeumann));
                append(sweep(Family::Mems2, options.grid, InfoMeasure::VonNeumann));
                break;
            }
            default: break;
        }
        std::ostringstream body;
        write_sweep_csv(rows, body);
        csv << body.str();
    }

    write_text_file(out_path, csv.str());
    write_text_file(out_path + ".meta.json", meta.dump(2) + "\n");
}

bool VerifyReport::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

// ---- verify checks -------------------------------------------------------

using Check = std::function<CheckResult()>;

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
        r.detail = body();  // empty detail means success with nothing to add
        r.pass = true;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

ComplexMatrix random_hermitian(SplitMix64& rng, int dim) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            g(i, j) = complexd(sample_gaussian(rng), sample_gaussian(rng));
    return (0.5 * (g + g.adjoint())).hermitized();
}

ComplexMatrix random_unitary2(SplitMix64& rng) {
    std::vector<complexd> c0(2), c1(2);
    for (auto* col : {&c0, &c1})
        for (complexd& z : *col) z = complexd(sample_gaussian(rng), sample_gaussian(rng));
    double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
    for (complexd& z : c0) z /= n0;
    const complexd overlap = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
    c1[0] -= overlap * c0[0];
    c1[1] -= overlap * c0[1];
    double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    for (complexd& z : c1) z /= n1;
    ComplexMatrix u(2);
    u(0, 0) = c0[0];
    u(1, 0) = c0[1];
    u(0, 1) = c1[0];
    u(1, 1) = c1[1];
    return u;
}

std::vector<complexd> random_pure4(SplitMix64& rng) {
    std::vector<complexd> v(4);
    double n = 0.0;
    for (complexd& z : v) {
        z = complexd(sample_gaussian(rng), sample_gaussian(rng));
        n += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(n);
    for (complexd& z : v) z *= inv;
    return v;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    if (options.samples < 1) throw ParamOutOfRange("verify needs samples >= 1");
    const int n = options.samples;
    const std::uint64_t seed = options.seed;
    VerifyReport report;

    report.checks.push_back(run_check("linalg_eigen_reconstruction", [&] {
        const int trials = std::max(10, n / 10);
        double worst = 0.0;
        for (int k = 0; k < trials; ++k) {
            SplitMix64 rng(derive_seed(seed, 10000 + k));
            const int dim = (k % 2 == 0) ? 2 : 4;
            const ComplexMatrix h = random_hermitian(rng, dim);
            const EigenDecomposition ed = hermitian_eigen(h);
            ComplexMatrix rebuilt(dim);
            double lam_sum = 0.0;
            for (int c = 0; c < dim; ++c) {
                lam_sum += ed.eigenvalues[c];
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        rebuilt(i, j) += ed.eigenvectors(i, c) * ed.eigenvalues[c] *
                                         std::conj(ed.eigenvectors(j, c));
            }
            worst = std::max(worst, rebuilt.max_abs_diff(h));
            require(rebuilt.max_abs_diff(h) <= 1e-10, "eigen reconstruction above 1e-10");
            const ComplexMatrix vtv = ed.eigenvectors.adjoint() * ed.eigenvectors;
            require(vtv.max_abs_diff(ComplexMatrix::identity(dim)) <= 1e-10,
                    "eigenvector matrix is not unitary within 1e-10");
            require(std::abs(lam_sum - h.trace().real()) <= 1e-12 * std::max(1.0, h.max_abs()),
                    "trace does not match eigenvalue sum");
        }
        return "worst reconstruction error " + fmt_double(worst);
    }));

    report.checks.push_back(run_check("family_states_valid", [&] {
        SplitMix64 rng(derive_seed(seed, 1));
        const int per_family = std::max(8, n / 7);
        for (int k = 0; k < per_family; ++k) {
            const double u = rng.next_double();
            const double v = rng.next_double();
            for (Family f : {Family::Pure, Family::Werner, Family::Mems2, Family::As1,
                             Family::As2, Family::S, Family::D}) {
                FamilyParams fp;
                fp.family = f;
                fp.alpha = u * kPi4;
                fp.p = f == Family::Mems2 ? 2.0 / 3.0 + u / 3.0 : u;
                fp.q = u;
                fp.gamma = u;
                fp.exponent = 0.1 + 4.0 * v;
                const ValidationReport r = validate(make_state(fp));
                require(r.passed(), "family " + family_name(f) + " produced invalid state");
            }
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("channel_preserves_state", [&] {
        const int trials = std::min(n, 1000);
        for (int k = 0; k < trials; ++k) {
            const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(seed, 20000 + k));
            for (ChannelKind kind : {ChannelKind::GlobalWhiteNoise, ChannelKind::LocalDephase,
                                     ChannelKind::LocalDepolarize, ChannelKind::MemsRecombine}) {
                for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    ChannelSpec spec;
                    spec.kind = kind;
                    spec.strength = s;
                    spec.target = k % 2 == 0 ? ChannelTarget::A : ChannelTarget::B;
                    spec.basis = k % 3 == 0   ? PauliAxis::X
                                 : k % 3 == 1 ? PauliAxis::Y
                                              : PauliAxis::Z;
                    const ValidationReport r = validate(apply_channel(rho, spec));
                    require(r.passed(), "channel output failed validation");
                }
            }
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("eq3_additivity", [&] {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(seed, 30000 + k));
            const InfoBudget b = info_budget_vn(rho);
            worst = std::max(worst, std::abs(b.i_local + b.i_corr - b.i_total));
            require(std::abs(b.i_local + b.i_corr - b.i_total) <= 1e-10,
                    "budget additivity violated beyond 1e-10");
        }
        return "worst additivity defect " + fmt_double(worst);
    }));

    report.checks.push_back(run_check("mutual_info_nonneg", [&] {
        double lowest = 1e300;
        for (int k = 0; k < n; ++k) {
            const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(seed, 30000 + k));
            const InfoBudget b = info_budget_vn(rho);
            lowest = std::min(lowest, b.i_corr);
            require(b.i_corr >= -1e-10, "mutual information below -1e-10");
        }
        return "lowest i_corr " + fmt_double(lowest);
    }));

    report.checks.push_back(run_check("pure_schmidt_identities", [&] {
        for (int k = 0; k <= 100; ++k) {
            FamilyParams fp;
            fp.family = Family::Pure;
            fp.alpha = kPi4 * k / 100.0;
            const DensityMatrix rho = make_state(fp);
            const InfoBudget b = info_budget_vn(rho);
            const double s_a =
                von_neumann_entropy(DensityMatrix(partial_trace(rho.mat, Subsystem::A)));
            require(std::abs(b.i_corr - 2.0 * s_a) <= 1e-9, "i_corr != 2 S(rho_a)");
            require(std::abs(b.i_a - b.i_b) <= 1e-9, "Schmidt marginals differ");
            require(std::abs(b.i_total - 2.0) <= 1e-9, "pure i_total != 2");
            const DualityLedger l = triality_ledger(rho, Subsystem::A);
            require(std::abs(l.lhs_triality - 1.0) <= 1e-9, "pure triality lhs != 1");
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("linear_as1_closed_form", [&] {
        for (int k = 0; k <= 100; ++k) {
            const double p = k / 100.0;
            FamilyParams fp;
            fp.family = Family::As1;
            fp.p = p;
            const InfoBudget b = info_budget_linear(make_state(fp));
            require(std::abs(b.i_corr - (p * p - 1.0) / 3.0) <= 1e-9,
                    "linear i_corr deviates from (p^2-1)/3");
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("triality_duality_bounds", [&] {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(seed, 40000 + k));
            const DualityLedger l = triality_ledger(rho, k % 2 ? Subsystem::A : Subsystem::B);
            worst = std::max(worst, l.lhs_triality);
            require(l.lhs_triality <= 1.0 + 1e-9, "triality bound violated");
            require(l.lhs_duality <= 1.0 + 1e-9, "duality bound violated");
        }
        return "largest lhs_triality " + fmt_double(worst);
    }));

    report.checks.push_back(run_check("concurrence_pure_crosscheck", [&] {
        const int trials = std::min(n, 1000);
        const ComplexMatrix yy = kron(pauli_y(), pauli_y());
        for (int k = 0; k < trials; ++k) {
            SplitMix64 rng(derive_seed(seed, 50000 + k));
            const std::vector<complexd> psi = random_pure4(rng);
            std::vector<complexd> psi_conj(4);
            for (int i = 0; i < 4; ++i) psi_conj[i] = std::conj(psi[i]);
            const double overlap = std::abs(inner(psi, matvec(yy, psi_conj)));
            const double c = concurrence(DensityMatrix(outer(psi).hermitized()));
            require(std::abs(c - overlap) <= 1e-9, "Wootters vs pure-state overlap mismatch");
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("werner_closed_forms", [&] {
        for (int k = 0; k <= 100; ++k) {
            const double p = k / 100.0;
            FamilyParams fp;
            fp.family = Family::Werner;
            fp.p = p;
            const DensityMatrix rho = make_state(fp);
            require(std::abs(concurrence(rho) - std::max(0.0, (3.0 * p - 1.0) / 2.0)) <= 1e-9,
                    "Werner concurrence deviates from closed form");
            require(std::abs(purity(rho) - (1.0 + 3.0 * p * p) / 4.0) <= 1e-12,
                    "Werner purity deviates from closed form");
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("dephased_family_marginals", [&] {
        const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
        for (int gi = 0; gi < 20; ++gi)
            for (int ei = 0; ei < 20; ++ei) {
                FamilyParams fp;
                fp.family = Family::D;
                fp.gamma = gi / 19.0;
                fp.exponent = std::pow(10.0, -1.0 + 2.0 * ei / 19.0);  // 0.1 .. 10
                const DensityMatrix rho = make_state(fp);
                require(partial_trace(rho.mat, Subsystem::A).max_abs_diff(half) <= 1e-12,
                        "dephased marginal a deviates from I/2");
                require(partial_trace(rho.mat, Subsystem::B).max_abs_diff(half) <= 1e-12,
                        "dephased marginal b deviates from I/2");
                const InfoBudget b = info_budget_vn(rho);
                require(std::abs(b.i_local) <= 1e-12, "dephased i_local not zero");
            }
        return std::string{};
    }));

    report.checks.push_back(run_check("nonmonotonic_witness", [&] {
        const double pw = bisect(werner_entropy_closed, 0.0, 1.0, 0.6);
        const double pm = bisect(binary_entropy, 1.0, 2.0 / 3.0, 0.6);
        FamilyParams w, m;
        w.family = Family::Werner;
        w.p = pw;
        m.family = Family::Mems2;
        m.p = pm;
        const DensityMatrix rw = make_state(w);
        const DensityMatrix rm = make_state(m);
        const double margin_t = tangle(rm) - tangle(rw);
        const double margin_i = info_budget_vn(rw).i_corr - info_budget_vn(rm).i_corr;
        require(margin_t > 1e-3, "tangle ordering witness failed");
        require(margin_i > 1e-3, "i_corr ordering witness failed");
        return "tangle margin " + fmt_double(margin_t) + ", i_corr margin " +
               fmt_double(margin_i);
    }));

    report.checks.push_back(run_check("local_unitary_invariance", [&] {
        const int trials = std::max(10, std::min(n, 200));
        for (int k = 0; k < trials; ++k) {
            SplitMix64 rng(derive_seed(seed, 60000 + k));
            const DensityMatrix rho = sample_random_state(1 + k % 4, rng.next_u64());
            const ComplexMatrix u = kron(random_unitary2(rng), random_unitary2(rng));
            const DensityMatrix rotated((u * rho.mat * u.adjoint()).hermitized());
            require(std::abs(concurrence(rho) - concurrence(rotated)) <= 1e-9,
                    "concurrence not locally invariant");
            const InfoBudget b0 = info_budget_vn(rho);
            const InfoBudget b1 = info_budget_vn(rotated);
            require(std::abs(b0.i_a - b1.i_a) <= 1e-9 && std::abs(b0.i_b - b1.i_b) <= 1e-9 &&
                        std::abs(b0.i_corr - b1.i_corr) <= 1e-9 &&
                        std::abs(b0.i_total - b1.i_total) <= 1e-9,
                    "info budget not locally invariant");
        }
        return std::string{};
    }));

    report.checks.push_back(run_check("tomo_noiseless_inversion", [&] {
        FamilyParams fp;
        fp.family = Family::Werner;
        fp.p = 0.7;
        const DensityMatrix rho = make_state(fp);
        std::vector<tomo::MeasurementRecord> recs;
        for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
            for (PauliAxis b : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
                const std::array<double, 4> p = tomo::outcome_probabilities(rho, a, b);
                tomo::MeasurementRecord r;
                r.basis_a = a;
                r.basis_b = b;
                r.shots = 4000;
                for (int k = 0; k < 4; ++k)
                    r.outcome_counts[k] =
                        static_cast<std::uint64_t>(std::llround(4000.0 * p[k]));
                recs.push_back(r);
            }
        const tomo::ReconstructionResult rr = tomo::reconstruct(recs);
        require(rr.rho_hat.mat.max_abs_diff(rho.mat) <= 1e-9,
                "noiseless inversion not exact within 1e-9");
        return std::string{};
    }));

    report.checks.push_back(run_check("tomo_mutual_info_nonneg", [&] {
        FamilyParams fp;
        fp.family = Family::Pure;
        fp.alpha = kPi4;
        const DensityMatrix truth = make_state(fp);
        tomo::ReconstructOptions ropts;
        ropts.psd_projection = !options.skip_psd_projection;
        double lowest = 1e300;
        for (int k = 0; k < 20; ++k) {
            const std::vector<tomo::MeasurementRecord> recs =
                tomo::simulate_counts(truth, 10000, derive_seed(seed, 70000 + k));
            const tomo::ReconstructionResult rr = tomo::reconstruct(recs, ropts);
            require(validate(rr.rho_hat).passed(), "reconstructed state failed validation");
            const InfoBudget b = info_budget_vn(rr.rho_hat);
            lowest = std::min(lowest, b.i_corr);
            require(b.i_corr >= -1e-10, "reconstructed mutual information negative");
        }
        return "lowest reconstructed i_corr " + fmt_double(lowest);
    }));

    return report;
}

std::string verify_report_json(const VerifyReport& report, const VerifyOptions& options) {
    nlohmann::ordered_json j = base_metadata("verify");
    j["samples"] = options.samples;
    j["seed"] = options.seed;
    j["fault_skip_psd_projection"] = options.skip_psd_projection;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["passed"] = report.all_passed();
    return j.dump(2) + "\n";
}

void run_tomo(const TomoRunOptions& options) {
    if (options.out_path.empty()) throw IoError("tomo run needs an output path");
    const DensityMatrix rho = make_state(options.family);
    if (options.shots < 1) throw BadShots("shots must be >= 1");

    const InfoBudget ideal = info_budget_vn(rho);
    const double ideal_tangle = tangle(rho);
    const tomo::ErrorBars bars =
        tomo::error_bars(rho, options.shots, options.resamples, options.seed);

    std::ostringstream csv;
    csv << "measure,ideal,mean,stddev\n";
    auto row = [&csv](const char* name, double ideal_v, double mean, double sd) {
        csv << name << ',' << fmt_double(ideal_v) << ',' << fmt_double(mean) << ','
            << fmt_double(sd) << '\n';
    };
    row("tangle", ideal_tangle, bars.tangle_mean, bars.tangle_std);
    row("i_a", ideal.i_a, bars.i_a_mean, bars.i_a_std);
    row("i_b", ideal.i_b, bars.i_b_mean, bars.i_b_std);
    row("i_corr", ideal.i_corr, bars.i_corr_mean, bars.i_corr_std);
    row("i_total", ideal.i_total, bars.i_total_mean, bars.i_total_std);
    write_text_file(options.out_path, csv.str());

    nlohmann::ordered_json meta = base_metadata("tomo_run");
    meta["family"] = family_name(options.family.family);
    meta["alpha"] = options.family.alpha;
    meta["p"] = options.family.p;
    meta["q"] = options.family.q;
    meta["gamma"] = options.family.gamma;
    meta["exponent"] = options.family.exponent;
    meta["shots"] = options.shots;
    meta["resamples"] = options.resamples;
    meta["seed"] = options.seed;
    meta["ideal_state"] = nlohmann::ordered_json::parse(state_to_json(rho));
    write_text_file(options.out_path + ".meta.json", meta.dump(2) + "\n");

    if (!options.counts_out_path.empty()) {
        std::ostringstream counts;
        tomo::write_counts_csv(tomo::simulate_counts(rho, options.shots, derive_seed(options.seed, 0)),
                               counts);
        write_text_file(options.counts_out_path, counts.str());
    }
}

}  // namespace twoq::cli
