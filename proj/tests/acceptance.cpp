// Acceptance run: one PASS/FAIL line per criterion, non-zero exit when any fails.

#include <omp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lattice_pdo/criteria.hpp"
#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/kernel.hpp"
#include "lattice_pdo/runner.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/spectral.hpp"
#include "lattice_pdo/symbols.hpp"

using namespace lpdo;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!detail.empty())
            detail += "; ";
        detail += what + (ok ? "" : " [violated]");
        pass = pass && ok;
    }
};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Outcome kernel_fidelity()
{
    Outcome out;
    bool exact = true;
    std::size_t columns = 0;
    for (double hbar : {1.0, 0.5, 0.1}) {
        const LatticeSpec spec(hbar, 1);
        const BoxTruncation box(12);
        const auto k = assemble(difference_symbol(), spec, box);
        const Eigen::Index size = k.size();
        // Column i is interior when i − ħ is still in the box.
        for (Eigen::Index i = 1; i < size; ++i) {
            ++columns;
            for (Eigen::Index row = 0; row < size; ++row) {
                const Complex expected = row == i - 1 ? Complex(1.0) : row == i ? Complex(-1.0) : Complex(0.0);
                exact = exact && k(row, i) == expected;
            }
        }
    }
    out.require(exact, "exact (Te_i)(k) columns checked: " + std::to_string(columns));
    return out;
}

Outcome quadrature_exactness()
{
    Outcome out;
    const std::vector<std::pair<std::string, Symbol>> symbols = {
        {"difference", difference_symbol()},
        {"multiplication", multiplication_symbol(0.5)},
        {"constant", constant_symbol(Complex(2.0, -1.0))},
        {"decaying", decaying_test_symbol(3.0, 2.0, 1.0)},
        {"schrodinger", schrodinger_symbol(LatticeSpec(1.0, 1), Potential::anharmonic(1.0, 2), 0.5)},
        {"schrodinger-2d", schrodinger_symbol(LatticeSpec(0.5, 2), Potential::anharmonic(1.0, 1), 0.0)},
    };
    double worst = 0.0;
    for (const auto& [name, sym] : symbols) {
        const LatticeSpec spec(name == "schrodinger-2d" ? 0.5 : 1.0, sym.dim());
        const auto closed = coefficient_table(sym, spec, BoxTruncation(3), 3, CoefficientMethod::automatic);
        const auto quad = coefficient_table(sym, spec, BoxTruncation(3), 3, CoefficientMethod::quadrature);
        double err = 0.0;
        for (std::size_t i = 0; i < closed.size(); ++i)
            err = std::max(err, std::abs(closed[i].value - quad[i].value));
        worst = std::max(worst, err);
        out.require(sym.has_closed_form_coefficients() && err <= 1e-12, name + " max error " + num(err));
    }
    return out;
}

Outcome roundtrip()
{
    Outcome out;
    std::mt19937_64 rng(20240901);
    std::normal_distribution<double> normal;
    const LatticeSpec spec(1.0, 1);
    const BoxTruncation box(4);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXcd m(9, 9);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m(i) = Complex(normal(rng), normal(rng));
        const KernelMatrix k(spec, box, m, "random");
        const auto back = assemble(symbol_from_matrix(k), spec, box);
        worst = std::max(worst, (back.entries() - m).cwiseAbs().maxCoeff());
    }
    out.require(worst <= 1e-10, "100 trials, max error " + num(worst));
    return out;
}

Outcome decision_engine()
{
    Outcome out;
    const LatticeSpec spec(1.0, 1);
    const auto sym = decaying_test_symbol(3.0, 1.0, 0.0);
    const double at_500 = nuclear_sum(assemble(sym, spec, BoxTruncation(500)), 1.0, 2.0);
    const double at_1000 = nuclear_sum(assemble(sym, spec, BoxTruncation(1000)), 1.0, 2.0);
    const auto check = doubling_check(at_500, at_1000, 1e-8);
    out.require(check.converged, "nuclear increment R=500->1000 " + num(check.increment) + " < 1e-8");

    const auto report = order_conditions(SymbolOrder::make(-3.0, 1.0, 0.0), CriterionQuery::make(2.0, 1.0, 2.0, 2.0, 1));
    out.require(report.verdicts.at("r_nuclear").verdict == Verdict::holds, "engine r-nuclear holds");

    const auto mult = multiplication_symbol(1.0);
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::int64_t r : {50, 100, 200}) {
        const double a = sup_entry(assemble(mult, spec, BoxTruncation(r)));
        const double b = sup_entry(assemble(mult, spec, BoxTruncation(2 * r)));
        worst_ratio = std::min(worst_ratio, doubling_check(a, b, 1e-8).ratio);
    }
    out.require(worst_ratio >= kDivergenceRatio, "eps=1 l1->linf doubling ratio " + num(worst_ratio) + " >= 1.5");
    return out;
}

Outcome analytic_series()
{
    Outcome out;
    const LatticeSpec spec(1.0, 1);
    const double sum = nuclear_sum(assemble(decaying_test_symbol(2.0, 1.0, 0.0), spec, BoxTruncation(1000)), 1.0, 2.0);
    const double exact = std::numbers::pi * std::numbers::pi / 3.0 - 1.0;
    out.require(std::abs(sum - exact) <= 1e-3,
                "R=1000 sum " + num(sum) + " vs pi^2/3-1, error " + num(std::abs(sum - exact)));
    return out;
}

Outcome eigensolver_oracles()
{
    Outcome out;
    Eigen::MatrixXcd m(3, 3);
    m << 3, -1, 0, -1, 2, -1, 0, -1, 3;
    const auto small = eigendecompose_hermitian(m, false);
    double err = 0.0;
    const double expected[3] = {1.0, 3.0, 4.0};
    for (int i = 0; i < 3; ++i)
        err = std::max(err, std::abs(small.eigenvalues(i) - expected[i]));
    out.require(err <= 1e-10, "3x3 error " + num(err));

    constexpr int n = 50;
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lap(i, i) = 2.0;
        if (i + 1 < n)
            lap(i, i + 1) = lap(i + 1, i) = -1.0;
    }
    const auto spectrum = eigendecompose_hermitian(lap, false);
    double lerr = 0.0;
    for (int j = 1; j <= n; ++j)
        lerr = std::max(lerr, std::abs(spectrum.eigenvalues(j - 1) - (2.0 - 2.0 * std::cos(j * std::numbers::pi / 51.0))));
    out.require(lerr <= 1e-10, "Laplacian N=50 error " + num(lerr));
    return out;
}

Outcome diagonal_approximation_check()
{
    Outcome out;
    const auto sym = decaying_test_symbol(3.0, 2.0, 1.0);
    const auto kernel = hermitian_part(assemble(sym, LatticeSpec(1.0, 1), BoxTruncation(60)));
    const auto report = diagonal_approximation(kernel, sym.order());
    out.require(report.weyl_max_deviation <= report.residue_norm + 1e-8,
                "Weyl " + num(report.weyl_max_deviation) + " <= ||R|| " + num(report.residue_norm) + " + 1e-8");
    const double exponent = report.fitted_exponent.value_or(0.0);
    out.require(report.fitted_exponent.has_value() && exponent <= -2.5, "residual exponent " + num(exponent) + " <= -2.5");
    const auto spectrum = eigendecompose_hermitian(kernel, true);
    const auto records = sandwich_check(kernel, spectrum);
    std::size_t holding = 0;
    for (const auto& r : records)
        holding += r.holds ? 1 : 0;
    out.require(records.size() == 121 && holding == 121, "sandwich holds for " + std::to_string(holding) + "/121");
    return out;
}

void growth_case(Outcome& out, const std::string& name, int l, double lo, double hi)
{
    const LatticeSpec spec(1.0, 1);
    const auto potential = PotentialSpec::make(Potential::anharmonic(1.0, l), 1);
    SpectrumOptions options;
    options.max_dimension = 1001;
    const auto t0 = std::chrono::steady_clock::now();
    const auto spectrum = spectrum_converged(spec, potential, 300, 1e-8, options);
    std::int64_t largest = 0;
    for (auto r : spectrum.radii)
        largest = std::max(largest, 2 * r + 1);
    out.require(spectrum.all_converged && largest <= 1001,
                name + " converged at R=" + std::to_string(spectrum.radius_used) + ", largest matrix " +
                    std::to_string(largest));
    if (!spectrum.all_converged)
        return;
    const auto fit = fit_growth_exponent(spectrum, 100, 300, potential.order());
    out.require(fit.slope >= lo && fit.slope <= hi, name + " slope " + num(fit.slope) + " in [" + num(lo) + ", " + num(hi) + "]");
    bool exceeds = !fit.slope_exceeds_inverse_r.empty();
    for (const auto& [r, ok] : fit.slope_exceeds_inverse_r)
        exceeds = exceeds && ok;
    out.require(exceeds, name + " slope > 1/r for " + std::to_string(fit.slope_exceeds_inverse_r.size()) + " sampled r");
    const auto oracle = weyl_oracle(spec, potential, BoxTruncation(spectrum.radius_used), 300);
    double deviation = 0.0;
    for (std::size_t j = 0; j < 300; ++j)
        deviation = std::max(deviation, std::abs(spectrum.eigenvalues[j] - oracle[j]));
    out.require(deviation <= 4.0, name + " Weyl oracle deviation " + num(deviation) + " <= 4");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(seconds < 60.0, name + " " + num(seconds) + " s < 60 s");
}

Outcome growth_exponents()
{
    Outcome out;
    growth_case(out, "V=k^2", 1, 1.9, 2.1);
    growth_case(out, "V=k^4", 2, 3.8, 4.2);
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism()
{
    Outcome out;
    const fs::path root = fs::temp_directory_path() / ("lattice_pdo_acceptance_" + std::to_string(::getpid()));
    const std::vector<std::pair<ojson, std::vector<std::string>>> runs = {
        {ojson::parse(R"({"lattice":{"hbar":1,"dim":1},"symbol":{"family":"decaying","params":{"s":3,"a":2,"b":1}},
                         "truncation":{"radius":200},"task":"check-bounds","params":{"p":2}})"),
         {"sums.csv"}},
        {ojson::parse(R"({"lattice":{"hbar":1,"dim":1},"symbol":{"family":"decaying","params":{"s":3,"a":1,"b":0}},
                         "truncation":{"radius":200},"task":"check-nuclear","params":{"r":1,"p2":2}})"),
         {"sums.csv"}},
        {ojson::parse(R"({"lattice":{"hbar":1,"dim":1},"task":"spectrum","params":{"j_max":100},
                         "symbol":{"family":"schrodinger","params":{"potential":{"type":"anharmonic","l":1}}}})"),
         {"spectrum.csv"}},
        {ojson::parse(R"({"lattice":{"hbar":1,"dim":2},"task":"spectrum","params":{"j_max":10},
                         "symbol":{"family":"schrodinger","params":{"potential":{"type":"anharmonic","l":1}}}})"),
         {"spectrum.csv"}},
        {ojson::parse(R"({"lattice":{"hbar":1,"dim":1},"symbol":{"family":"decaying","params":{"s":3,"a":2,"b":1}},
                         "truncation":{"radius":60},"task":"diag-approx"})"),
         {"diag_approx.csv", "sandwich.csv"}},
    };
    const int previous = omp_get_max_threads();
    std::size_t compared = 0;
    bool identical = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::vector<std::string> bodies[2];
        const int counts[2] = {1, 8};
        for (int t = 0; t < 2; ++t) {
            omp_set_num_threads(counts[t]);
            RunOptions opt;
            opt.out_dir = root / ("run" + std::to_string(i) + "_t" + std::to_string(counts[t]));
            opt.threads = counts[t];
            const auto result = run_experiment(runs[i].first, opt);
            if (result.exit_code != exit_ok) {
                identical = false;
                out.require(false, "run " + std::to_string(i) + " failed: " + result.error_line);
                continue;
            }
            for (const auto& name : runs[i].second)
                bodies[t].push_back(slurp(result.directory / name));
        }
        identical = identical && bodies[0] == bodies[1] && !bodies[0].empty();
        compared += bodies[0].size();
    }
    omp_set_num_threads(previous);
    fs::remove_all(root);
    out.require(identical, std::to_string(compared) + " CSV bodies byte-identical at 1 and 8 threads");
    return out;
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "kernel fidelity", 1.0, kernel_fidelity},
        {2, "quadrature exactness", 1.0, quadrature_exactness},
        {3, "roundtrip", 5.0, roundtrip},
        {4, "decision engine vs sums", 10.0, decision_engine},
        {5, "analytic series", 5.0, analytic_series},
        {6, "eigensolver oracles", 1.0, eigensolver_oracles},
        {7, "diagonal approximation", 30.0, diagonal_approximation_check},
        {8, "growth exponents", 120.0, growth_exponents},
        {9, "determinism", 60.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.require(seconds < c.limit_seconds, num(seconds) + " s < " + num(c.limit_seconds) + " s");
        failures += out.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
