#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regen/matrix.hpp"
#include "regen/rng.hpp"

using namespace regen;

namespace {

gf::Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    gf::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (auto& b : m.row(r)) b = rng.byte();
    return m;
}

}  // namespace

TEST_CASE("rank of identity and zero matrices") {
    CHECK(gf::Matrix::identity(7).rank() == 7);
    CHECK(gf::Matrix(5, 9).rank() == 0);
}

TEST_CASE("random 43x49 matrices are full row rank almost always") {
    // decodability workhorse: 43 random rows over 49 columns
    Rng rng(2024);
    int fullRank = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        if (random_matrix(43, 49, rng).rank() == 43) ++fullRank;
    }
    CHECK(fullRank >= 990);
}

TEST_CASE("rank is invariant under row swaps and nonzero row scaling") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        std::size_t rows = 2 + rng.below(8), cols = 2 + rng.below(8);
        gf::Matrix m = random_matrix(rows, cols, rng);
        std::size_t base = m.rank();

        gf::Matrix swapped = m;
        std::size_t r1 = rng.below(rows), r2 = rng.below(rows);
        for (std::size_t c = 0; c < cols; ++c) std::swap(swapped.at(r1, c), swapped.at(r2, c));
        CHECK(swapped.rank() == base);

        gf::Matrix scaled = m;
        std::uint8_t factor = rng.nonzero_byte();
        std::size_t r = rng.below(rows);
        for (std::size_t c = 0; c < cols; ++c) scaled.at(r, c) = gf::mul(scaled.at(r, c), factor);
        CHECK(scaled.rank() == base);
    }
}

TEST_CASE("solve returns rhs against the identity") {
    Rng rng(9);
    gf::Matrix rhs = random_matrix(6, 3, rng);
    CHECK(gf::Matrix::identity(6).solve(rhs) == rhs);
}

TEST_CASE("solve inverts a known product") {
    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        gf::Matrix m = random_matrix(8, 8, rng);
        if (m.rank() < 8) continue;
        gf::Matrix x = random_matrix(8, 4, rng);
        CHECK(m.solve(m * x) == x);
    }
}

TEST_CASE("solve on overdetermined consistent systems") {
    Rng rng(11);
    gf::Matrix m = random_matrix(12, 7, rng);
    REQUIRE(m.rank() == 7);
    gf::Matrix x = random_matrix(7, 2, rng);
    CHECK(m.solve(m * x) == x);
}

TEST_CASE("solve rejects rank-deficient systems") {
    gf::Matrix m(3, 3);
    // duplicate rows
    for (int c = 0; c < 3; ++c) {
        m.at(0, c) = static_cast<std::uint8_t>(c + 1);
        m.at(1, c) = static_cast<std::uint8_t>(c + 1);
        m.at(2, c) = static_cast<std::uint8_t>(7 * c + 3);
    }
    gf::Matrix rhs(3, 1);
    rhs.at(0, 0) = 1;
    rhs.at(1, 0) = 2;  // also inconsistent, but rank fails first
    CHECK_THROWS_AS(m.solve(rhs), SingularSystem);
    CHECK(m.rank() == 2);
}

TEST_CASE("product agrees with the definition entry by entry") {
    Rng rng(12);
    gf::Matrix a = random_matrix(5, 6, rng), b = random_matrix(6, 4, rng);
    gf::Matrix c = a * b;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            std::uint8_t acc = 0;
            for (std::size_t l = 0; l < 6; ++l) acc = gf::add(acc, gf::mul(a.at(i, l), b.at(l, j)));
            CHECK(c.at(i, j) == acc);
        }
}

TEST_CASE("vstack stacks rows in order") {
    Rng rng(13);
    gf::Matrix a = random_matrix(2, 5, rng), b = random_matrix(3, 5, rng);
    gf::Matrix s = a.vstack(b);
    REQUIRE(s.rows() == 5);
    for (std::size_t c = 0; c < 5; ++c) {
        CHECK(s.at(0, c) == a.at(0, c));
        CHECK(s.at(4, c) == b.at(2, c));
    }
}
