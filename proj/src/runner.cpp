#include "lattice_pdo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "lattice_pdo/config.hpp"
#include "lattice_pdo/criteria.hpp"
#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/format.hpp"
#include "lattice_pdo/kernel.hpp"
#include "lattice_pdo/report_io.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/spectral.hpp"

namespace lpdo {

namespace {

using ojson = nlohmann::ordered_json;

// Raised after outputs are written when the task itself did not succeed.
struct NumericFailure {
    std::string code;
    std::string message;
};

class Artifacts {
public:
    explicit Artifacts(const ExperimentConfig& cfg) : csv_(cfg.formats.count("csv") > 0),
                                                      json_(cfg.formats.count("json") > 0),
                                                      binary_(cfg.formats.count("binary") > 0) {}

    bool csv() const { return csv_; }
    bool binary() const { return binary_; }

    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }
    void add_json(const std::string& name, const ojson& j)
    {
        if (json_)
            add(name, j.dump(2) + "\n");
    }
    template <class Writer>
    void add_csv(const std::string& name, Writer&& writer)
    {
        if (!csv_)
            return;
        std::ostringstream os;
        writer(os);
        add(name, os.str());
    }

    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

private:
    bool csv_, json_, binary_;
    std::vector<std::pair<std::string, std::string>> files_;
};

ojson truncation_json(const LatticeSpec& spec, std::int64_t radius)
{
    return {{"R", radius}, {"n", spec.dim()}, {"hbar", spec.hbar()}};
}

void write_sums_csv(std::ostream& os, const std::vector<std::tuple<std::string, std::int64_t, double>>& rows)
{
    os << "sum,R,value\n";
    for (const auto& [name, radius, value] : rows)
        os << name << ',' << radius << ',' << format_double(value) << '\n';
}

CriterionQuery query_of(const ExperimentConfig& cfg)
{
    const auto& t = cfg.params;
    return CriterionQuery::make(t.p, t.r, t.p1, t.p2, cfg.lattice.dim(), t.q);
}

void task_coeffs(const ExperimentConfig& cfg, Artifacts& out)
{
    const Symbol sym = make_symbol(cfg);
    const BoxTruncation box(resolve_radius(cfg, false));
    const auto table = coefficient_table(sym, cfg.lattice, box, cfg.params.freq_radius, cfg.params.method,
                                         cfg.params.points);
    out.add_csv("coefficients.csv",
                [&](std::ostream& os) { write_coefficients_csv(os, table, cfg.lattice.dim()); });
    ojson summary;
    summary["symbol"] = sym.id();
    summary["entries"] = table.size();
    summary["k_radius"] = box.radius();
    summary["freq_radius"] = cfg.params.freq_radius;
    if (cfg.params.q_tilde)
        summary["decay"] = to_json(estimate_decay_constant(sym, cfg.lattice, *cfg.params.q_tilde, box.radius(),
                                                           cfg.params.freq_radius));
    out.add_json("coefficients.json", summary);
}

void task_assemble(const ExperimentConfig& cfg, Artifacts& out)
{
    const Symbol sym = make_symbol(cfg);
    const auto kernel = assemble(sym, cfg.lattice, BoxTruncation(resolve_radius(cfg, false)), cfg.params.method);
    out.add_csv("kernel.csv", [&](std::ostream& os) { write_kernel_csv(os, kernel); });
    if (out.binary()) {
        std::ostringstream os(std::ios::binary);
        write_kernel_binary(os, kernel);
        out.add("kernel.bin", os.str());
    }
    const auto herm = hermitian_check(kernel, kHermitianTolerance);
    ojson summary;
    summary["provenance"] = kernel.provenance();
    summary["size"] = kernel.size();
    summary["truncation"] = truncation_json(cfg.lattice, kernel.box().radius());
    summary["hermitian"] = herm.hermitian;
    summary["max_asymmetry"] = herm.max_asymmetry;
    out.add_json("kernel.json", summary);
}

void task_check_bounds(const ExperimentConfig& cfg, Artifacts& out)
{
    const Symbol sym = make_symbol(cfg);
    const std::int64_t radius = resolve_radius(cfg, true);
    const auto k1 = assemble(sym, cfg.lattice, BoxTruncation(radius), cfg.params.method);
    const auto k2 = assemble(sym, cfg.lattice, BoxTruncation(2 * radius), cfg.params.method);
    const double p = cfg.params.p;

    std::vector<std::pair<std::string, std::function<double(const KernelMatrix&)>>> sums;
    sums.emplace_back("l1_to_linf", [](const KernelMatrix& k) { return sup_entry(k); });
    if (std::isfinite(p)) {
        sums.emplace_back("l1_to_lp", [p](const KernelMatrix& k) { return schur_l1_lp(k, p); });
        if (p > 1.0)
            sums.emplace_back("lp_mixed", [p](const KernelMatrix& k) { return mixed_lp_sum(k, p); });
    }

    CriterionReport report = order_conditions(effective_order(cfg), query_of(cfg));
    report.truncation = TruncationInfo{radius, cfg.lattice.dim(), cfg.lattice.hbar()};
    ojson doubling = ojson::object();
    std::vector<std::tuple<std::string, std::int64_t, double>> rows;
    for (const auto& [name, fn] : sums) {
        const double a = fn(k1), b = fn(k2);
        report.sums[name] = a;
        doubling[name] = to_json(doubling_check(a, b, cfg.params.increment_tol));
        rows.emplace_back(name, radius, a);
        rows.emplace_back(name, 2 * radius, b);
    }
    ojson j = to_json(report);
    j["doubling"] = doubling;
    out.add_json("criteria.json", j);
    out.add_csv("sums.csv", [&](std::ostream& os) { write_sums_csv(os, rows); });
}

void task_check_nuclear(const ExperimentConfig& cfg, Artifacts& out)
{
    const Symbol sym = make_symbol(cfg);
    const std::int64_t radius = resolve_radius(cfg, true);
    const auto& t = cfg.params;
    const double a = nuclear_sum(assemble(sym, cfg.lattice, BoxTruncation(radius), t.method), t.r, t.p2);
    const double b = nuclear_sum(assemble(sym, cfg.lattice, BoxTruncation(2 * radius), t.method), t.r, t.p2);

    const SymbolOrder order = effective_order(cfg);
    CriterionReport report = order_conditions(order, query_of(cfg));
    report.sums["nuclear"] = a;
    report.truncation = TruncationInfo{radius, cfg.lattice.dim(), cfg.lattice.hbar()};
    ojson j = to_json(report);
    j["doubling"] = {{"nuclear", to_json(doubling_check(a, b, t.increment_tol))}};
    if (t.q_tilde) {
        const auto decay = estimate_decay_constant(sym, cfg.lattice, *t.q_tilde, 2 * radius, 2 * radius);
        j["decay"] = to_json(decay);
        j["tail_bound"] = to_json(truncation_tail_bound(order, decay, cfg.lattice, radius, *t.q_tilde));
    }
    out.add_json("criteria.json", j);
    out.add_csv("sums.csv", [&](std::ostream& os) {
        write_sums_csv(os, {{"nuclear", radius, a}, {"nuclear", 2 * radius, b}});
    });
}

void task_order_report(const ExperimentConfig& cfg, Artifacts& out)
{
    const SymbolOrder order = effective_order(cfg);
    ojson j = to_json(order_conditions(order, query_of(cfg)));
    j["order"] = {{"mu", order.mu}, {"rho", order.rho}, {"delta", order.delta}};
    out.add_json("order.json", j);
}

void task_diag_approx(const ExperimentConfig& cfg, Artifacts& out)
{
    const Symbol sym = make_symbol(cfg);
    auto kernel = assemble(sym, cfg.lattice, BoxTruncation(resolve_radius(cfg, false)), cfg.params.method);
    const auto herm = hermitian_check(kernel, kHermitianTolerance);
    if (!herm.hermitian)
        kernel = hermitian_part(kernel);

    const auto report = diagonal_approximation(kernel, effective_order(cfg));
    const auto spectrum = eigendecompose_hermitian(kernel, true);
    const auto sandwich = sandwich_check(kernel, spectrum);

    ojson j = to_json(report);
    j["symmetrized"] = !herm.hermitian;
    j["original_max_asymmetry"] = herm.max_asymmetry;
    j["truncation"] = truncation_json(cfg.lattice, kernel.box().radius());
    j["eigen_residual"] = spectrum.residual_norm;
    j["sandwich_all_hold"] = std::all_of(sandwich.begin(), sandwich.end(), [](const auto& r) { return r.holds; });
    out.add_json("diag_approx.json", j);
    out.add_csv("diag_approx.csv",
                [&](std::ostream& os) { write_diag_approx_csv(os, report, cfg.lattice.dim()); });
    out.add_csv("sandwich.csv", [&](std::ostream& os) { write_sandwich_csv(os, sandwich); });
}

PotentialSpec potential_of(const ExperimentConfig& cfg)
{
    try {
        return PotentialSpec::make(*cfg.symbol->potential, cfg.lattice.dim());
    } catch (const DomainError& e) {
        throw ConfigError("invalid_potential", "/symbol/params/potential", e.what());
    }
}

void task_spectrum(const ExperimentConfig& cfg, Artifacts& out, bool fit_required)
{
    const PotentialSpec potential = potential_of(cfg);
    SpectrumOptions options;
    options.max_dimension = cfg.params.max_dimension;
    if (cfg.radius)
        options.max_dimension = std::min(options.max_dimension, BoxTruncation(*cfg.radius).size(cfg.lattice.dim()));
    options.shift = cfg.symbol->lambda;

    const auto spectrum = spectrum_converged(cfg.lattice, potential, cfg.params.j_max, cfg.params.tol, options);
    const auto oracle = weyl_oracle(cfg.lattice, potential, BoxTruncation(spectrum.radius_used), cfg.params.j_max,
                                    options.shift);
    double weyl_dev = 0.0;
    for (std::size_t j = 0; j < std::min(oracle.size(), spectrum.eigenvalues.size()); ++j)
        weyl_dev = std::max(weyl_dev, std::abs(spectrum.eigenvalues[j] - oracle[j]));

    const int n = cfg.lattice.dim();
    ojson j;
    j["j_max"] = cfg.params.j_max;
    j["tol"] = cfg.params.tol;
    j["all_converged"] = spectrum.all_converged;
    j["converged_count"] = std::count(spectrum.converged.begin(), spectrum.converged.end(), true);
    j["radii"] = spectrum.radii;
    j["R_used"] = spectrum.radius_used;
    j["weyl_oracle_max_deviation"] = weyl_dev;
    j["weyl_oracle_bound"] = 4.0 * n / (cfg.lattice.hbar() * cfg.lattice.hbar());

    std::optional<NumericFailure> failure;
    if (cfg.params.j_range) {
        const auto [first, last] = *cfg.params.j_range;
        try {
            j["growth"] = to_json(fit_growth_exponent(spectrum, first, last, potential.order()));
        } catch (const DomainError& e) {
            j["growth"] = nullptr;
            failure = NumericFailure{"fit_failed", e.what()};
        }
    } else if (fit_required) {
        j["growth"] = nullptr;
    }
    out.add_csv("spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, spectrum); });
    out.add_json(fit_required ? "growth.json" : "spectrum.json", j);

    if (!spectrum.all_converged && !failure)
        failure = NumericFailure{"not_converged", "budget exhausted before all requested eigenvalues converged"};
    if (failure)
        throw *failure;
}

std::string quote(const std::string& s)
{
    std::ostringstream os;
    os << std::quoted(s);
    return os.str();
}

std::string error_line(const std::string& code, const std::string& field, const std::string& message)
{
    return "error code=" + code + " field=" + (field.empty() ? "/" : field) + " message=" + quote(message);
}

}  // namespace

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

RunOutcome run_experiment(const ojson& config, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    ExperimentConfig cfg;
    try {
        cfg = parse_config(config);
    } catch (const ConfigError& e) {
        outcome.exit_code = exit_config_error;
        outcome.error_line = error_line(e.code(), e.field(), e.what());
        return outcome;
    }
    outcome.directory = options.out_dir ? *options.out_dir : std::filesystem::path(cfg.output_directory);

    Artifacts out(cfg);
    std::optional<NumericFailure> failure;
    try {
        switch (cfg.task) {
        case Task::coeffs: task_coeffs(cfg, out); break;
        case Task::assemble: task_assemble(cfg, out); break;
        case Task::check_bounds: task_check_bounds(cfg, out); break;
        case Task::check_nuclear: task_check_nuclear(cfg, out); break;
        case Task::order_report: task_order_report(cfg, out); break;
        case Task::diag_approx: task_diag_approx(cfg, out); break;
        case Task::spectrum: task_spectrum(cfg, out, false); break;
        case Task::fit_growth: task_spectrum(cfg, out, true); break;
        }
    } catch (const ConfigError& e) {
        outcome.exit_code = exit_config_error;
        outcome.error_line = error_line(e.code(), e.field(), e.what());
        return outcome;
    } catch (const NumericFailure& f) {
        failure = f;
    } catch (const std::exception& e) {
        outcome.exit_code = exit_numeric_error;
        outcome.error_line = error_line("numeric_error", "/task", e.what());
        return outcome;
    }

    std::error_code ec;
    std::filesystem::create_directories(outcome.directory, ec);
    ojson files = ojson::array();
    for (const auto& [name, content] : out.files()) {
        std::ofstream f(outcome.directory / name, std::ios::binary);
        f << content;
        if (!f) {
            outcome.exit_code = exit_config_error;
            outcome.error_line = error_line("io_error", "/output/directory", "cannot write " + name);
            return outcome;
        }
        files.push_back({{"path", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
        outcome.files.push_back(name);
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    ojson manifest;
    manifest["tool"] = "lattice-pdo";
    manifest["version"] = kLibraryVersion;
    manifest["task"] = to_string(cfg.task);
    manifest["config"] = cfg.raw;
    manifest["threads"] = options.threads ? ojson(*options.threads) : ojson(nullptr);
    manifest["seed"] = options.seed ? ojson(*options.seed) : ojson(nullptr);
    manifest["wall_time_seconds"] = elapsed.count();
    manifest["status"] = failure ? failure->code : "ok";
    manifest["files"] = files;
    std::ofstream(outcome.directory / "manifest.json") << manifest.dump(2) << '\n';
    outcome.files.push_back("manifest.json");

    if (failure) {
        outcome.exit_code = exit_numeric_error;
        outcome.error_line = error_line(failure->code, "/task", failure->message);
    }
    return outcome;
}

RunOutcome run_config_file(const std::filesystem::path& path, const RunOptions& options)
{
    std::ifstream in(path);
    if (!in) {
        RunOutcome o;
        o.exit_code = exit_config_error;
        o.error_line = error_line("io_error", "/", "cannot open " + path.string());
        return o;
    }
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        RunOutcome o;
        o.exit_code = exit_config_error;
        o.error_line = error_line("parse_error", "/", e.what());
        return o;
    }
    return run_experiment(doc, options);
}

}  // namespace lpdo
