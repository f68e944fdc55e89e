#include <doctest.h>

#include <set>
#include <vector>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/lattice.hpp"

using namespace lpdo;

TEST_CASE("enumerate_box lists points lexicographically")
{
    SUBCASE("unit spacing, one dimension")
    {
        const auto pts = enumerate_box(LatticeSpec(1.0, 1), BoxTruncation(1));
        REQUIRE(pts.size() == 3);
        CHECK(pts[0][0] == -1.0);
        CHECK(pts[1][0] == 0.0);
        CHECK(pts[2][0] == 1.0);
    }
    SUBCASE("spacing scales the points")
    {
        const auto pts = enumerate_box(LatticeSpec(0.5, 1), BoxTruncation(2));
        const std::vector<double> expected{-1.0, -0.5, 0.0, 0.5, 1.0};
        REQUIRE(pts.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(pts[i][0] == expected[i]);
    }
    SUBCASE("two dimensions, first coordinate slowest")
    {
        const auto pts = enumerate_box(LatticeSpec(1.0, 2), BoxTruncation(1));
        REQUIRE(pts.size() == 9);
        CHECK(pts.front() == Coords{-1.0, -1.0});
        CHECK(pts[1] == Coords{-1.0, 0.0});
        CHECK(pts.back() == Coords{1.0, 1.0});
    }
}

TEST_CASE("index_of and point_of")
{
    CHECK(index_of(LatticeSpec(1.0, 1), BoxTruncation(1), Coords{0.0}) == 1);
    CHECK(index_of(LatticeSpec(1.0, 2), BoxTruncation(1), Coords{0.0, 0.0}) == 4);
    CHECK_THROWS_AS(index_of(LatticeSpec(1.0, 1), BoxTruncation(1), Coords{2.0}), DomainError);
    CHECK_THROWS_AS(index_of(LatticeSpec(1.0, 1), BoxTruncation(3), Coords{0.5}), DomainError);
    CHECK_THROWS_AS(index_of(LatticeSpec(1.0, 2), BoxTruncation(3), Coords{0.0}), DomainError);
    CHECK_THROWS_AS(point_of(LatticeSpec(1.0, 1), BoxTruncation(1), 3), DomainError);

    // Within the 1e-9 membership tolerance, rounding noise is accepted.
    CHECK(index_of(LatticeSpec(0.1, 1), BoxTruncation(5), Coords{0.1 * 3 + 1e-12}) == 8);
    CHECK_THROWS_AS(index_of(LatticeSpec(1.0, 1), BoxTruncation(5), Coords{1.0 + 1e-6}), DomainError);
}

TEST_CASE("roundtrip and size over several boxes")
{
    for (double hbar : {1.0, 0.5, 0.1, 2.0}) {
        for (int dim : {1, 2, 3}) {
            for (std::int64_t radius : {0, 1, 2, 4}) {
                const LatticeSpec spec(hbar, dim);
                const BoxTruncation box(radius);
                std::size_t expected = 1;
                for (int d = 0; d < dim; ++d)
                    expected *= static_cast<std::size_t>(2 * radius + 1);
                REQUIRE(box.size(dim) == expected);
                std::set<IntCoords> seen;
                for (std::size_t i = 0; i < expected; ++i) {
                    const Coords p = point_of(spec, box, i);
                    CHECK(index_of(spec, box, p) == i);
                    seen.insert(to_integer(spec, p));
                }
                CHECK(seen.size() == expected);
            }
        }
    }
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(LatticeSpec(0.0, 1), DomainError);
    CHECK_THROWS_AS(LatticeSpec(-1.0, 1), DomainError);
    CHECK_THROWS_AS(LatticeSpec(1.0, 0), DomainError);
    CHECK_THROWS_AS(BoxTruncation(-1), DomainError);
    CHECK(BoxTruncation(0).size(3) == 1);
}

TEST_CASE("norms")
{
    CHECK(euclidean_norm(Coords{3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(max_norm(IntCoords{-3, 2}) == 3);
    CHECK(euclidean_norm(IntCoords{}) == 0.0);
}
