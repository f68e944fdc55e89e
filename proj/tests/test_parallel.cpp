#include <doctest.h>

#include <omp.h>

#include <random>
#include <sstream>

#include "lattice_pdo/criteria.hpp"
#include "lattice_pdo/format.hpp"
#include "lattice_pdo/kernel.hpp"
#include "lattice_pdo/reference.hpp"
#include "lattice_pdo/report_io.hpp"
#include "support.hpp"

using namespace lpdo;

namespace {

// Runs f with the given OpenMP pool size, restoring the previous one.
template <class F>
auto with_threads(int threads, F f)
{
    const int previous = omp_get_max_threads();
    omp_set_num_threads(threads);
    auto result = f();
    omp_set_num_threads(previous);
    return result;
}

std::string sums_text(const KernelMatrix& k)
{
    std::ostringstream os;
    os << format_double(schur_l1_lp(k, 1.5)) << ',' << format_double(sup_entry(k)) << ','
       << format_double(mixed_lp_sum(k, 3.0)) << ',' << format_double(nuclear_sum(k, 0.5, 2.0)) << '\n';
    return os.str();
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference")
{
    const LatticeSpec spec1(0.5, 1);
    const LatticeSpec spec2(1.0, 2);
    std::mt19937_64 rng(41);
    const KernelMatrix random(spec1, BoxTruncation(4), test::random_matrix(9, rng));
    const std::vector<std::pair<Symbol, LatticeSpec>> cases{
        {decaying_test_symbol(3, 2, 1), spec1},
        {schrodinger_symbol(spec2, Potential::anharmonic(1.0, 2), 0.5), spec2},
        {multiplication_symbol(1.0, 2), spec2},
        {symbol_from_matrix(random), spec1},
    };
    for (const auto& [sym, spec] : cases) {
        INFO(sym.id());
        const BoxTruncation box(spec.dim() == 1 ? 4 : 2);
        for (auto method : {CoefficientMethod::automatic, CoefficientMethod::quadrature}) {
            const auto par = with_threads(4, [&] { return assemble(sym, spec, box, method); });
            const auto ref = reference::assemble(sym, spec, box, method);
            CHECK(test::max_abs_diff(par.entries(), ref.entries()) <= 1e-13);

            const auto table = with_threads(3, [&] { return coefficient_table(sym, spec, box, 2, method); });
            const auto ref_table = reference::coefficient_table(sym, spec, box, 2, method, kDefaultQuadraturePoints);
            REQUIRE(table.size() == ref_table.size());
            for (std::size_t i = 0; i < table.size(); ++i) {
                CHECK(table[i].k == ref_table[i].k);
                CHECK(table[i].m == ref_table[i].m);
                CHECK(std::abs(table[i].value - ref_table[i].value) <= 1e-13);
            }
        }
        const auto k = assemble(sym, spec, box);
        const Eigen::VectorXcd a = test::random_matrix(k.size(), rng).col(0);
        CHECK((with_threads(4, [&] { return lpdo::apply(k, a); }) - reference::apply(k, a)).cwiseAbs().maxCoeff() <= 1e-12);
        const double tol = 1e-12;
        CHECK(schur_l1_lp(k, 1.5) == doctest::Approx(reference::schur_l1_lp(k, 1.5)).epsilon(tol));
        CHECK(sup_entry(k) == reference::sup_entry(k));
        CHECK(mixed_lp_sum(k, 3.0) == doctest::Approx(reference::mixed_lp_sum(k, 3.0)).epsilon(tol));
        CHECK(nuclear_sum(k, 0.5, 2.0) == doctest::Approx(reference::nuclear_sum(k, 0.5, 2.0)).epsilon(tol));
    }

    for (const LatticeSpec& spec : {LatticeSpec(1.0, 1), LatticeSpec(0.5, 2)}) {
        const Potential v = Potential::anharmonic(1.0, 1);
        const BoxTruncation box(spec.dim() == 1 ? 10 : 3);
        const auto par = with_threads(4, [&] { return build_hamiltonian(spec, v, box, 0.25); });
        CHECK(par.entries() == reference::build_hamiltonian(spec, v, box, 0.25).entries());
    }
}

TEST_CASE("results do not depend on the thread count")
{
    const LatticeSpec spec(1.0, 1);
    const auto sym = decaying_test_symbol(3, 2, 1);
    const BoxTruncation box(150);
    const auto one = with_threads(1, [&] { return assemble(sym, spec, box); });
    for (int threads : {2, 3, 8}) {
        const auto many = with_threads(threads, [&] { return assemble(sym, spec, box); });
        CHECK(many.entries() == one.entries());
        CHECK(with_threads(threads, [&] { return sums_text(many); }) == with_threads(1, [&] { return sums_text(one); }));
    }

    const auto table1 = with_threads(1, [&] { return coefficient_table(sym, spec, BoxTruncation(20), 3); });
    const auto table8 = with_threads(8, [&] { return coefficient_table(sym, spec, BoxTruncation(20), 3); });
    std::ostringstream a, b;
    write_coefficients_csv(a, table1, 1);
    write_coefficients_csv(b, table8, 1);
    CHECK(a.str() == b.str());
}

TEST_CASE("format_double is shortest round-trip text")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1e-20) == "1e-20");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    for (double x : {1.0 / 3.0, 2.287871, 6.02214076e23, -1.5e-300})
        CHECK(std::stod(format_double(x)) == x);
}
