#include <map>
#include <random>

#include "doctest.h"
#include "tenstab/module.hpp"

using namespace tenstab;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, long rows, long cols, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

FPModule random_module(std::mt19937_64& rng, const Ring& ring) {
    long g = 1 + static_cast<long>(rng() % 3);
    long r = static_cast<long>(rng() % 4);
    long hi = ring.modular() ? ring.modulus.get_si() - 1 : 5;
    return make_module(ring, g, random_matrix(rng, g, r, ring.modular() ? 0 : -5, hi));
}

// Independent oracle: the multiset of element orders determines a finite
// abelian group up to isomorphism only partially, so compare the counts of
// solutions of p^j * x = 0 for all prime powers instead, which is a
// complete invariant.
std::map<Int, long> torsion_profile(const FPModule& m) {
    auto elems = enumerate_elements(m);
    std::map<Int, long> profile;
    for (Int d = 1; d <= 64; ++d) {
        long c = 0;
        for (const auto& e : elems)
            if (element_is_zero(m, vec_scale(d, e))) ++c;
        profile[d] = c;
    }
    return profile;
}

}  // namespace

TEST_CASE("invariant factors and shapes") {
    Ring z = ring_Z();
    FPModule a = make_module(z, 2, IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(module_shape(a) == "Z/6");
    auto [rank, tors] = invariant_factors(a);
    CHECK(rank == 0);
    CHECK(tors == std::vector<Int>{6});
    CHECK(module_shape(free_module(z, 2)) == "Z^2");
    CHECK(module_shape(zero_module(z)) == "0");
    CHECK(is_zero_module(make_module(z, 1, IntMatrix::from_rows({{1}}))));

    Ring z4 = ring_Zmod(4);
    FPModule b = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    CHECK(module_shape(b) == "Z/2");
    CHECK(module_shape(free_module(z4, 1)) == "Z/4");
    CHECK(module_order(b) == 2);
}

TEST_CASE("element identity is decided by lattice membership") {
    Ring z = ring_Z();
    FPModule a = make_module(z, 2, IntMatrix::from_rows({{2, 1}, {0, 3}}));
    // Relations 2e1 and e1 + 3e2; so 6e2 = 3*(e1+3e2) - ... check directly.
    CHECK(element_is_zero(a, {2, 0}));
    CHECK(element_is_zero(a, {1, 3}));
    CHECK(element_is_zero(a, {0, 6}));
    CHECK_FALSE(element_is_zero(a, {0, 3}));
    CHECK(elements_equal(a, {1, 0}, {1, 6}));

    Ring z4 = ring_Zmod(4);
    FPModule b = free_module(z4, 1);
    CHECK(element_is_zero(b, {4}));
    CHECK_FALSE(element_is_zero(b, {2}));
}

TEST_CASE("make_map rejects ill-defined maps") {
    Ring z = ring_Z();
    FPModule z2 = make_module(z, 1, IntMatrix::from_rows({{2}}));
    FPModule z3 = make_module(z, 1, IntMatrix::from_rows({{3}}));
    CHECK_THROWS_AS(make_map(z2, z3, IntMatrix::from_rows({{1}})), NotWellDefined);
    CHECK_NOTHROW(make_map(z2, z2, IntMatrix::from_rows({{1}})));
    CHECK_NOTHROW(make_map(z2, z3, IntMatrix::from_rows({{0}})));
}

TEST_CASE("kernel and cokernel against enumeration") {
    Ring z = ring_Z();
    FPModule z4m = make_module(z, 1, IntMatrix::from_rows({{4}}));
    ModuleMap t = make_map(z4m, z4m, IntMatrix::from_rows({{2}}));
    auto k = kernel(t);
    CHECK(module_shape(k.module) == "Z/2");
    CHECK(is_monic(k.map));
    for (const auto& e : enumerate_elements(k.module)) CHECK(element_is_zero(z4m, tenstab::apply(t, tenstab::apply(k.map, e))));
    auto c = cokernel(t);
    CHECK(module_shape(c.module) == "Z/2");
    CHECK(is_epic(c.map));
    auto im = image(t);
    CHECK(module_shape(im.module) == "Z/2");
    CHECK(is_monic(im.into_target));
    CHECK(is_epic(im.from_source));
    CHECK(maps_equal(compose(im.into_target, im.from_source), t));
}

TEST_CASE("kernel/cokernel exactness on random maps") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 25; ++t) {
        Ring ring = (t % 2) ? ring_Zmod((t % 4 == 1) ? 4 : 6) : ring_Z();
        FPModule a = random_module(rng, ring), b = random_module(rng, ring);
        IntMatrix raw = random_matrix(rng, b.gens, a.gens, -3, 3);
        ModuleMap f;
        try {
            f = make_map(a, b, raw);
        } catch (const NotWellDefined&) {
            f = make_map(a, b, IntMatrix(b.gens, a.gens));
        }
        auto k = kernel(f);
        CHECK(is_monic(k.map));
        CHECK(is_zero_map(compose(f, k.map)));
        // Every element killed by f comes from the kernel (tested when finite).
        try {
            for (const auto& e : enumerate_elements(a))
                if (element_is_zero(b, tenstab::apply(f, e))) CHECK(solve_map(k.map, e).has_value());
        } catch (const InfiniteModule&) {
        }
        auto c = cokernel(f);
        CHECK(is_epic(c.map));
        CHECK(is_zero_map(compose(c.map, f)));
        auto im = image(f);
        CHECK(is_monic(im.into_target));
        CHECK(is_epic(im.from_source));
        CHECK(maps_equal(compose(im.into_target, im.from_source), f));
    }
}

TEST_CASE("tensor product against the structure theorem") {
    Ring z = ring_Z();
    FPModule z4m = make_module(z, 1, IntMatrix::from_rows({{4}}));
    FPModule z6m = make_module(z, 1, IntMatrix::from_rows({{6}}));
    CHECK(module_shape(tensor(z4m, z6m)) == "Z/2");
    CHECK(module_shape(tensor(free_module(z, 2), z6m)) == "Z/6 + Z/6");
    CHECK(module_shape(tensor(z4m, zero_module(z))) == "0");

    std::mt19937_64 rng(11);
    for (int t = 0; t < 15; ++t) {
        Ring ring = (t % 2) ? ring_Zmod(4) : ring_Z();
        FPModule a = random_module(rng, ring), b = random_module(rng, ring);
        auto [ra, ta] = invariant_factors(a);
        auto [rb, tb] = invariant_factors(b);
        // Expected tensor: bilinear combination of cyclic pieces.
        long rank = ra * rb;
        std::vector<Int> gcds;
        for (const auto& x : ta) {
            for (const auto& y : tb) gcds.push_back(gcd(x, y));
            for (long i = 0; i < rb; ++i) gcds.push_back(x);
        }
        for (const auto& y : tb)
            for (long i = 0; i < ra; ++i) gcds.push_back(y);
        IntMatrix rel(static_cast<long>(gcds.size()) + rank, static_cast<long>(gcds.size()));
        for (size_t i = 0; i < gcds.size(); ++i) rel.at(static_cast<long>(i), static_cast<long>(i)) = gcds[i];
        FPModule expected = make_module(ring, rel.rows(), rel);
        CHECK(is_isomorphic(tensor(a, b), expected));
    }
}

TEST_CASE("direct sum data") {
    Ring z4 = ring_Zmod(4);
    FPModule a = free_module(z4, 1);
    FPModule b = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    auto s = direct_sum(a, b);
    CHECK(module_shape(s.module) == "Z/2 + Z/4");
    CHECK(maps_equal(compose(s.proj1, s.inj1), identity_map(a)));
    CHECK(maps_equal(compose(s.proj2, s.inj2), identity_map(b)));
    CHECK(is_zero_map(compose(s.proj2, s.inj1)));
}

TEST_CASE("enumeration matches module order and is duplicate free") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 12; ++t) {
        Ring ring = ring_Zmod((t % 2) ? 4 : 9);
        FPModule a = random_module(rng, ring);
        auto elems = enumerate_elements(a);
        CHECK(Int(static_cast<long>(elems.size())) == module_order(a));
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = i + 1; j < elems.size(); ++j) CHECK_FALSE(elements_equal(a, elems[i], elems[j]));
    }
    CHECK_THROWS_AS(enumerate_elements(free_module(ring_Z(), 1)), InfiniteModule);
}

TEST_CASE("isomorphism agrees with the torsion profile oracle") {
    std::mt19937_64 rng(13);
    std::vector<FPModule> mods;
    for (int t = 0; t < 10; ++t) mods.push_back(random_module(rng, ring_Zmod(t % 2 ? 8 : 6)));
    for (size_t i = 0; i < mods.size(); ++i)
        for (size_t j = 0; j < mods.size(); ++j) {
            if (!(mods[i].ring == mods[j].ring)) continue;
            CHECK(is_isomorphic(mods[i], mods[j]) == (torsion_profile(mods[i]) == torsion_profile(mods[j])));
        }
}
