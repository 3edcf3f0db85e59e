#include <random>

#include "doctest.h"
#include "tenstab/chase.hpp"

using namespace tenstab;

namespace {

FPModule random_module(std::mt19937_64& rng, const Ring& ring) {
    long g = 1 + static_cast<long>(rng() % 2);
    long r = static_cast<long>(rng() % 3);
    std::uniform_int_distribution<long> d(0, ring.modulus.get_si() - 1);
    IntMatrix rel(g, r);
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < r; ++j) rel.at(i, j) = d(rng);
    return make_module(ring, g, rel);
}

std::optional<SES> random_ses(std::mt19937_64& rng, const Ring& ring) {
    FPModule y = random_module(rng, ring), z = random_module(rng, ring);
    IntMatrix raw(y.gens, z.gens);
    for (long i = 0; i < y.gens; ++i)
        for (long j = 0; j < z.gens; ++j) raw.at(i, j) = static_cast<long>(rng() % 5);
    SES s = ses_from_map(ModuleMap{z, y, raw});
    try {
        certify_ses(s);
    } catch (const Error&) {
        return std::nullopt;
    }
    return s;
}

}  // namespace

TEST_CASE("snake connecting map: classic Tor ladder") {
    // 0 -> Z -x p-> Z -> Z/p -> 0 tensored with Z/p: the ladder
    //   Z/p --p=0--> Z/p --id--> (Z/p (x) Z/p)
    // with verticals given by the multiplication maps; the connecting map
    // ker(right) -> coker(left) is an isomorphism Z/p -> Z/p.
    for (long p : {2L, 3L, 5L}) {
        Ring z = ring_Z();
        FPModule zp = make_module(z, 1, IntMatrix::from_rows({{p}}));
        // Rows: top = (Z/p --0--> Z/p --1--> Z/p), exact at middle since the
        // first map is p = 0; bottom = (Z/p --1--> Z/p --0--> Z/p)... build
        // the honest diagram instead: top row A (x) Z/p for the SES.
        // Top:    Z (x) Z/p --p--> Z (x) Z/p ->> Z/p (x) Z/p
        // Bottom: Z (x) Z/p --p--> Z (x) Z/p ->> Z/p (x) Z/p with identity
        // verticals does not produce a snake; the standard Tor snake needs
        // the two-row ladder with middle SES rows. Use:
        //   A1 = Z(x)Z/p, A2 = Z(x)Z/p, A3 = Z/p(x)Z/p ; f1 = p, f2 = quot
        //   B1 = 0,       B2 = 0,       B3 = 0
        // which is degenerate. The meaningful classic check: connecting of
        //   ker(Z/p (x) Z/p -> 0) via lift through f2, apply b = 0 ... is 0.
        // So instead run the snake on the multiplication-by-p ladder:
        FPModule zp2 = make_module(z, 1, IntMatrix::from_rows({{p * p}}));
        // 0 -> Z/p -> Z/p^2 -> Z/p -> 0 with vertical multiplication by p.
        ModuleMap f1 = make_map(zp, zp2, IntMatrix::from_rows({{p}}));
        ModuleMap f2 = make_map(zp2, zp, IntMatrix::from_rows({{1}}));
        ModuleMap mid = make_map(zp2, zp2, IntMatrix::from_rows({{p}}));
        SnakeInput s{f1, f2, zero_map(zp, zp), mid, zero_map(zp, zp), f1, f2};
        auto out = connecting_hom(s);
        // ker(c) = Z/p, coker(a) = Z/p, connecting = iso (snake for
        // multiplication by p on the extension class).
        CHECK(module_shape(out.ker_c.module) == "Z/" + Int(p).get_str());
        CHECK(module_shape(out.coker_a.module) == "Z/" + Int(p).get_str());
        CHECK(is_iso(out.connecting));
    }
}

TEST_CASE("snake connecting map: split rows give zero") {
    Ring z4 = ring_Zmod(4);
    FPModule a = free_module(z4, 1);
    FPModule b = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    auto sum = direct_sum(a, b);
    // Split SES a >-> a + b ->> b on both rows, identity verticals.
    SnakeInput s{sum.inj1, sum.proj2, identity_map(a), identity_map(sum.module), identity_map(b), sum.inj1, sum.proj2};
    auto out = connecting_hom(s);
    CHECK(is_zero_map(out.connecting));
}

TEST_CASE("snake connecting map: monic right vertical gives zero domain") {
    Ring z4 = ring_Zmod(4);
    FPModule f = free_module(z4, 1);
    auto sum = direct_sum(f, f);
    SnakeInput s{sum.inj1, sum.proj2, identity_map(f), identity_map(sum.module), identity_map(f), sum.inj1, sum.proj2};
    auto out = connecting_hom(s);
    CHECK(is_zero_module(out.ker_c.module));
}

TEST_CASE("snake naturality and generator independence") {
    // Multiplication-by-2 ladder on 0 -> Z/2 -> Z/4 -> Z/2 -> 0 over Z,
    // compared with the same ladder re-presented with doubled generators.
    Ring z = ring_Z();
    FPModule z2 = make_module(z, 1, IntMatrix::from_rows({{2}}));
    FPModule z4 = make_module(z, 1, IntMatrix::from_rows({{4}}));
    ModuleMap f1 = make_map(z2, z4, IntMatrix::from_rows({{2}}));
    ModuleMap f2 = make_map(z4, z2, IntMatrix::from_rows({{1}}));
    ModuleMap mid = make_map(z4, z4, IntMatrix::from_rows({{2}}));
    SnakeInput s{f1, f2, zero_map(z2, z2), mid, zero_map(z2, z2), f1, f2};
    auto out1 = connecting_hom(s);
    // Re-present the middle with two generators (g, 2g).
    FPModule z4b = make_module(z, 2, IntMatrix::from_rows({{4, 2}, {0, -1}}));
    ModuleMap j = make_map(z4, z4b, IntMatrix::from_rows({{1}, {0}}));
    ModuleMap jinv = make_map(z4b, z4, IntMatrix::from_rows({{1, 2}}));
    CHECK(is_iso(j));
    SnakeInput s2{compose(j, f1), compose(f2, jinv), s.a, compose(j, compose(mid, jinv)), s.c, compose(j, f1),
                  compose(f2, jinv)};
    auto out2 = connecting_hom(s2);
    // Same kernel and cokernel modules; the connecting maps agree.
    CHECK(maps_equal(out1.connecting, out2.connecting));
}

TEST_CASE("cubes from random module sequences anticommute and commute") {
    std::mt19937_64 rng(40);
    int built = 0;
    while (built < 6) {
        Ring ring = ring_Zmod(built % 2 ? 4 : 6);
        auto s = random_ses(rng, ring);
        if (!s) continue;
        FPModule a = random_module(rng, ring);
        if (is_zero_module(a)) continue;
        ++built;
        ProjResolution ra(a);
        Horseshoe h(*s);
        for (long i = 0; i < 2; ++i)
            for (long k = 0; k < 2; ++k) {
                Cube c = build_cube(ra, i, h, k);
                auto r1 = verify_cube_down_horizontal(c);
                CHECK(r1.ok);
                auto r2 = verify_cube_horizontal_down(c);
                CHECK(r2.ok);
            }
    }
}

TEST_CASE("cube with a zero module sequence factor passes vacuously") {
    Ring z4 = ring_Zmod(4);
    FPModule zero = zero_module(z4);
    FPModule b = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    SES s{zero_map(zero, b), identity_map(b)};
    certify_ses(s);
    ProjResolution ra(make_module(z4, 1, IntMatrix::from_rows({{2}})));
    Horseshoe h(s);
    Cube c = build_cube(ra, 0, h, 0);
    auto r1 = verify_cube_down_horizontal(c);
    CHECK(r1.ok);
    auto r2 = verify_cube_horizontal_down(c);
    CHECK(r2.ok);
}
