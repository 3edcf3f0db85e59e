#include <random>

#include "doctest.h"
#include "tenstab/linalg.hpp"

using namespace tenstab;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, long rows, long cols, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

void check_snf_contract(const IntMatrix& m) {
    SmithDecomposition d = smith_normal_form(m);
    CHECK(d.U * m * d.V == d.S);
    CHECK(d.U * d.Uinv == IntMatrix::identity(m.rows()));
    CHECK(d.Uinv * d.U == IntMatrix::identity(m.rows()));
    CHECK(d.V * d.Vinv == IntMatrix::identity(m.cols()));
    CHECK(d.Vinv * d.V == IntMatrix::identity(m.cols()));
    for (long i = 0; i < d.S.rows(); ++i)
        for (long j = 0; j < d.S.cols(); ++j)
            if (i != j) CHECK(d.S.at(i, j) == 0);
    for (size_t i = 0; i < d.diag.size(); ++i) {
        CHECK(d.diag[i] >= 0);
        if (i + 1 < d.diag.size() && d.diag[i] != 0) CHECK(d.diag[i + 1] % d.diag[i] == 0);
        if (d.diag[i] == 0 && i + 1 < d.diag.size()) CHECK(d.diag[i + 1] == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
    IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 3}});
    SmithDecomposition d = smith_normal_form(m);
    CHECK(d.diag == std::vector<Int>{1, 6});
    check_snf_contract(m);
}

TEST_CASE("smith normal form edge cases") {
    check_snf_contract(IntMatrix(0, 0));
    check_snf_contract(IntMatrix(0, 3));
    check_snf_contract(IntMatrix(3, 0));
    check_snf_contract(IntMatrix::zero(2, 2));
    check_snf_contract(IntMatrix::identity(4));
    SmithDecomposition d = smith_normal_form(IntMatrix::zero(2, 3));
    CHECK(d.diag == std::vector<Int>{0, 0});
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(0);
    for (int t = 0; t < 60; ++t) {
        long r = 1 + static_cast<long>(rng() % 5), c = 1 + static_cast<long>(rng() % 5);
        check_snf_contract(random_matrix(rng, r, c, -9, 9));
    }
}

TEST_CASE("invariant factors do not depend on row/column order") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        IntMatrix m = random_matrix(rng, 3, 4, -6, 6);
        IntMatrix p(3, 4);
        for (long i = 0; i < 3; ++i)
            for (long j = 0; j < 4; ++j) p.at(2 - i, (j + 1) % 4) = m.at(i, j);
        CHECK(smith_normal_form(m).diag == smith_normal_form(p).diag);
    }
}

TEST_CASE("solve over the integers") {
    IntMatrix m = IntMatrix::from_rows({{2, 4}, {0, 3}});
    auto x = solve(m, {2, 3});
    REQUIRE(x.has_value());
    CHECK(m * *x == IntVec{2, 3});
    CHECK_FALSE(solve(m, {1, 0}).has_value());
    CHECK_FALSE(solve(IntMatrix::from_rows({{2}}), {3}).has_value());
    auto y = solve(IntMatrix(2, 0), {0, 0});
    REQUIRE(y.has_value());
    CHECK(y->empty());
    CHECK_FALSE(solve(IntMatrix(1, 0), {5}).has_value());
}

TEST_CASE("solve with a modulus") {
    auto x = solve(IntMatrix::from_rows({{2}}), {3}, Int(5));
    REQUIRE(x.has_value());
    CHECK(((*x)[0] * 2 - 3) % 5 == 0);
    CHECK_FALSE(solve(IntMatrix::from_rows({{2}}), {1}, Int(4)).has_value());
    auto y = solve(IntMatrix::from_rows({{2}}), {2}, Int(4));
    REQUIRE(y.has_value());
    CHECK(((*y)[0] * 2 - 2) % 4 == 0);
}

TEST_CASE("kernel over the integers") {
    IntMatrix m = IntMatrix::from_rows({{1, 2, 3}});
    IntMatrix k = kernel_basis(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());
    CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
    CHECK(kernel_basis(IntMatrix(0, 2)).cols() == 2);
}

TEST_CASE("kernel with a modulus") {
    // { x : 2x = 0 mod 4 } is generated by 2.
    IntMatrix k = kernel_basis(IntMatrix::from_rows({{2}}), Int(4));
    bool has2 = false;
    for (long j = 0; j < k.cols(); ++j) {
        CHECK(k.at(0, j) % 2 == 0);
        if (abs(k.at(0, j)) == 2) has2 = true;
    }
    CHECK(has2);
}

TEST_CASE("random solve round trips") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
        long r = 1 + static_cast<long>(rng() % 4), c = 1 + static_cast<long>(rng() % 4);
        IntMatrix m = random_matrix(rng, r, c, -5, 5);
        IntMatrix x0 = random_matrix(rng, c, 1, -5, 5);
        IntVec b = m * x0.col(0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m * *x == b);
    }
}

TEST_CASE("kernel columns span the kernel lattice") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        long r = 1 + static_cast<long>(rng() % 3), c = 1 + static_cast<long>(rng() % 4);
        IntMatrix m = random_matrix(rng, r, c, -4, 4);
        IntMatrix k = kernel_basis(m);
        CHECK((m * k).is_zero());
        // Any solution of m x = 0 found by brute force over a small box must
        // be an integer combination of the kernel columns.
        for (long a = -2; a <= 2; ++a)
            for (long b2 = -2; b2 <= 2; ++b2) {
                if (c < 2) continue;
                IntVec x = zero_vec(c);
                x[0] = a;
                x[1] = b2;
                if (vec_is_zero(m * x)) CHECK(solve(k, x).has_value());
            }
    }
}
