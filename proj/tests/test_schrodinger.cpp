#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/kernel.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/spectral.hpp"
#include "support.hpp"

using namespace lpdo;

namespace {

const LatticeSpec kUnit(1.0, 1);

PotentialSpec anharmonic(int l, int dim = 1) { return PotentialSpec::make(Potential::anharmonic(1.0, l), dim); }

std::vector<double> sorted_eigenvalues(const KernelMatrix& k)
{
    const auto s = eigendecompose_hermitian(k, false);
    return {s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size()};
}

}  // namespace

TEST_CASE("build_hamiltonian examples")
{
    const auto h = build_hamiltonian(kUnit, anharmonic(1), BoxTruncation(1));
    Eigen::MatrixXcd expected(3, 3);
    expected << 3, -1, 0, -1, 2, -1, 0, -1, 3;
    CHECK(h.entries() == expected);

    SUBCASE("zero potential is the bare kinetic part")
    {
        const auto free = build_hamiltonian(kUnit, Potential::anharmonic(0.0, 1), BoxTruncation(30));
        for (double lambda : sorted_eigenvalues(free)) {
            CHECK(lambda >= -1e-12);
            CHECK(lambda <= 4.0 + 1e-12);
        }
        const auto half = build_hamiltonian(LatticeSpec(0.5, 1), Potential::anharmonic(0.0, 1), BoxTruncation(1));
        Eigen::MatrixXcd m(3, 3);
        m << 8, -4, 0, -4, 8, -4, 0, -4, 8;
        CHECK(half.entries() == m);
    }

    SUBCASE("shift adds to the diagonal")
    {
        const auto shifted = build_hamiltonian(kUnit, anharmonic(1), BoxTruncation(1), 2.5);
        CHECK(test::max_abs_diff(shifted.entries(), expected + 2.5 * Eigen::MatrixXcd::Identity(3, 3)) == 0.0);
    }

    SUBCASE("two dimensions: neighbours along both axes")
    {
        const LatticeSpec spec(1.0, 2);
        const auto h2 = build_hamiltonian(spec, anharmonic(1, 2), BoxTruncation(1));
        REQUIRE(h2.size() == 9);
        CHECK(h2(4, 4) == Complex(4.0));
        CHECK(h2(0, 0) == Complex(6.0));
        CHECK(h2(4, 1) == Complex(-1.0));
        CHECK(h2(4, 3) == Complex(-1.0));
        CHECK(h2(4, 0) == Complex(0.0));
        CHECK(h2(2, 3) == Complex(0.0));  // (−1,1) and (0,−1) are not neighbours
        CHECK(hermitian_check(h2, 0.0).hermitian);
    }

    CHECK_THROWS_AS(build_hamiltonian(LatticeSpec(1.0, 2), anharmonic(1), BoxTruncation(1)), DomainError);
    CHECK_THROWS_AS(build_hamiltonian(kUnit, anharmonic(1), BoxTruncation(1), std::nan("")), DomainError);
}

TEST_CASE("stencil matches the symbol path")
{
    for (const LatticeSpec& spec : {LatticeSpec(1.0, 1), LatticeSpec(0.5, 1), LatticeSpec(0.7, 2)}) {
        for (int l : {1, 2}) {
            for (double lambda : {0.0, 1.5}) {
                const Potential v = Potential::anharmonic(1.0, l);
                for (std::int64_t r : {0, 2, 5}) {
                    const BoxTruncation box(r);
                    const auto stencil = build_hamiltonian(spec, v, box, lambda);
                    const auto symbol = assemble(schrodinger_symbol(spec, v, lambda), spec, box);
                    CHECK(test::max_abs_diff(stencil.entries(), symbol.entries()) <= 1e-12);
                }
            }
        }
    }
    const LatticeSpec spec(1.0, 2);
    const Potential poly = Potential::polynomial({{1.0, {2, 0}}, {0.5, {0, 4}}});
    CHECK(test::max_abs_diff(build_hamiltonian(spec, poly, BoxTruncation(3)).entries(),
                             assemble(schrodinger_symbol(spec, poly, 0.0), spec, BoxTruncation(3)).entries()) <= 1e-12);
}

TEST_CASE("PotentialSpec validation")
{
    CHECK_NOTHROW(anharmonic(1));
    CHECK_NOTHROW(anharmonic(2, 3));
    CHECK_NOTHROW(PotentialSpec::make(Potential::polynomial({{1.0, {2, 0}}, {1.0, {0, 2}}}), 2));
    CHECK_THROWS_AS(PotentialSpec::make(Potential::anharmonic(0.0, 1), 1), DomainError);
    // Negative somewhere on the sampled box.
    CHECK_THROWS_AS(PotentialSpec::make(Potential::polynomial({{-1.0, {2}}}), 1), DomainError);
    CHECK_THROWS_AS(PotentialSpec::make(Potential::polynomial({{1.0, {3}}}), 1), DomainError);
    // Not confining along the second axis.
    CHECK_THROWS_AS(PotentialSpec::make(Potential::polynomial({{1.0, {2, 0}}}), 2), DomainError);
    CHECK_THROWS_AS(PotentialSpec::make(Potential::polynomial({{1.0, {2, 0}}}), 1), DomainError);
    CHECK(anharmonic(2).order() == 4.0);
}

TEST_CASE("weyl_oracle")
{
    const auto v = weyl_oracle(kUnit, anharmonic(1), BoxTruncation(2), 5);
    CHECK(v == std::vector<double>{2, 3, 3, 6, 6});
    const auto q = weyl_oracle(kUnit, anharmonic(2), BoxTruncation(3), 3);
    CHECK(q[1] == 3.0);
    CHECK(q[2] == 3.0);
    const auto q2 = weyl_oracle(LatticeSpec(1.0, 2), anharmonic(2, 2), BoxTruncation(1), 9);
    CHECK(std::count(q2.begin(), q2.end(), 5.0) == 4);  // V(±e_j) + 2n = 1 + 4
    for (int l : {1, 2}) {
        const auto zero = weyl_oracle(kUnit, anharmonic(l), BoxTruncation(0), 10);
        REQUIRE(zero.size() == 1);
        CHECK(zero[0] == 2.0);
    }
    CHECK(weyl_oracle(kUnit, anharmonic(1), BoxTruncation(2), 2, 1.0) == std::vector<double>{3, 4});
}

TEST_CASE("Weyl sandwich and monotonicity")
{
    for (const LatticeSpec& spec : {LatticeSpec(1.0, 1), LatticeSpec(0.5, 1), LatticeSpec(1.0, 2)}) {
        const int n = spec.dim();
        const BoxTruncation box(n == 1 ? 30 : 6);
        const auto base = sorted_eigenvalues(build_hamiltonian(spec, Potential::anharmonic(1.0, 1), box));
        const auto oracle = weyl_oracle(spec, Potential::anharmonic(1.0, 1), box, base.size());
        const double bound = 4.0 * n / (spec.hbar() * spec.hbar());
        for (std::size_t j = 0; j < base.size(); ++j)
            CHECK(std::abs(base[j] - oracle[j]) <= bound + 1e-8);

        // Adding a non-negative potential never lowers a sorted eigenvalue.
        const Potential bigger = n == 1 ? Potential::polynomial({{1.0, {2}}, {0.3, {4}}})
                                        : Potential::polynomial({{1.0, {2, 0}}, {1.0, {0, 2}}, {0.2, {2, 2}}});
        const auto raised = sorted_eigenvalues(build_hamiltonian(spec, bigger, box));
        for (std::size_t j = 0; j < base.size(); ++j)
            CHECK(raised[j] >= base[j] - 1e-10);
    }
}

TEST_CASE("spectrum_converged")
{
    SUBCASE("harmonic potential, ten eigenvalues")
    {
        const auto s = spectrum_converged(kUnit, anharmonic(1), 10, 1e-8);
        CHECK(s.all_converged);
        REQUIRE(s.eigenvalues.size() == 10);
        CHECK(s.eigenvalues[0] > 0.0);
        CHECK(s.radii.front() == 25);
        CHECK(s.radius_used >= 25);
        const auto oracle = weyl_oracle(kUnit, anharmonic(1), BoxTruncation(s.radius_used), 10);
        for (std::size_t j = 0; j < 10; ++j)
            CHECK(std::abs(s.eigenvalues[j] - oracle[j]) <= 4.0);
        for (std::size_t j = 1; j < 10; ++j)
            CHECK(s.eigenvalues[j - 1] <= s.eigenvalues[j]);
    }

    SUBCASE("converged values are independent of the box")
    {
        const auto s = spectrum_converged(kUnit, anharmonic(1), 20, 1e-10);
        REQUIRE(s.all_converged);
        const auto big = sorted_eigenvalues(build_hamiltonian(kUnit, anharmonic(1), BoxTruncation(300)));
        for (std::size_t j = 0; j < 20; ++j)
            CHECK(std::abs(s.eigenvalues[j] - big[j]) <= 1e-8 * (1.0 + big[j]));
    }

    SUBCASE("budget exhausted gives a partial result")
    {
        SpectrumOptions opt;
        opt.max_dimension = 41;
        // A soft potential on a fine lattice needs a wide box.
        const auto s = spectrum_converged(LatticeSpec(0.05, 1), PotentialSpec::make(Potential::anharmonic(0.01, 1), 1),
                                          5, 1e-12, opt);
        CHECK_FALSE(s.all_converged);
        CHECK(s.radius_used == 20);
        CHECK(s.converged.size() == 5);
    }

    SUBCASE("two dimensions start from the same point budget")
    {
        const auto s = spectrum_converged(LatticeSpec(1.0, 2), anharmonic(1, 2), 4, 1e-8);
        CHECK(s.all_converged);
        CHECK(s.radii.front() == 3);
        // Ground state of the separable operator: twice the 1D ground state.
        const auto one_d = spectrum_converged(kUnit, anharmonic(1), 1, 1e-10);
        CHECK(s.eigenvalues[0] == doctest::Approx(2.0 * one_d.eigenvalues[0]).epsilon(1e-6));
    }

    CHECK_THROWS_AS(spectrum_converged(kUnit, anharmonic(1), 0, 1e-8), DomainError);
    CHECK_THROWS_AS(spectrum_converged(kUnit, anharmonic(1), 5, 0.0), DomainError);
}

TEST_CASE("fit_growth_exponent")
{
    SUBCASE("exact power sequence")
    {
        std::vector<double> lambda(400);
        for (std::size_t j = 1; j <= lambda.size(); ++j)
            lambda[j - 1] = static_cast<double>(j * j);
        const auto fit = fit_growth_exponent(lambda, 100, 300, 2.0);
        CHECK(std::abs(fit.slope - 2.0) <= 1e-12);
        CHECK(std::abs(fit.intercept) <= 1e-10);
        CHECK(fit.j_first == 100);
        CHECK(fit.j_last == 300);
        for (const auto& [r, holds] : fit.r_bound_satisfied) {
            CHECK(r > 0.5);
            CHECK(r <= 1.0);
            CHECK(holds);
            CHECK(fit.slope_exceeds_inverse_r.at(r));
        }
    }

    CHECK(sampled_r_values(2.0) == std::vector<double>{1.0, 0.75, 0.55});
    CHECK(sampled_r_values(4.0) == std::vector<double>{1.0, 0.625, 0.3});
    CHECK(sampled_r_values(1.0).empty());
    CHECK(sampled_r_values(0.5).empty());

    SUBCASE("harmonic and quartic potentials")
    {
        for (auto [l, lo, hi] : {std::tuple{1, 1.9, 2.1}, std::tuple{2, 3.8, 4.2}}) {
            SpectrumOptions opt;
            const auto s = spectrum_converged(kUnit, anharmonic(l), 300, 1e-8, opt);
            REQUIRE(s.all_converged);
            const auto fit = fit_growth_exponent(s, 100, 300, 2.0 * l);
            CHECK(fit.slope >= lo);
            CHECK(fit.slope <= hi);
            for (const auto& [r, exceeds] : fit.slope_exceeds_inverse_r)
                CHECK(exceeds);
        }
    }

    SUBCASE("errors")
    {
        const std::vector<double> with_zero{1.0, 0.0, 3.0, 4.0};
        CHECK_THROWS_AS(fit_growth_exponent(with_zero, 1, 4, 2.0), DomainError);
        CHECK_NOTHROW(fit_growth_exponent(with_zero, 3, 4, 2.0));
        CHECK_THROWS_AS(fit_growth_exponent(with_zero, 0, 3, 2.0), DomainError);
        CHECK_THROWS_AS(fit_growth_exponent(with_zero, 3, 3, 2.0), DomainError);
        CHECK_THROWS_AS(fit_growth_exponent(with_zero, 3, 5, 2.0), DomainError);

        ConvergedSpectrum partial;
        partial.eigenvalues = {1.0, 2.0, 3.0};
        partial.converged = {true, true, false};
        CHECK_NOTHROW(fit_growth_exponent(partial, 1, 2, 2.0));
        CHECK_THROWS_AS(fit_growth_exponent(partial, 1, 3, 2.0), DomainError);
    }
}
