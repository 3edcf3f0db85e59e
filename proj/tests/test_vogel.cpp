#include <random>

#include "doctest.h"
#include "tenstab/vogel.hpp"

using namespace tenstab;

namespace {

// a coherent sequence over a certified tower, seeded by a random element of
// the stage at the certificate index
CoherentSequence random_coherent(StabSystem& sys, std::mt19937_64& rng, long degree, long top_k) {
    Tower tw;  // only need the certificate index; rebuild cheaply via asymptotic data
    AsymptoticValue v = asymptotic_T(sys.A(), sys.B(), degree, top_k);
    REQUIRE(v.determined);
    REQUIRE(v.tower.cert.kind == Certificate::StabilizedAt);
    long k0 = v.tower.cert.index;
    SubQuotient st = sys.stab(k0 + degree, k0);
    IntVec coords(static_cast<size_t>(st.module.gens));
    for (auto& c : coords) c = static_cast<long>(rng() % 4);
    (void)tw;
    return coherent_from_stage(sys, degree, k0, coords, top_k);
}

}  // namespace

TEST_CASE("zero and finitely supported chains are cycles with zero projection") {
    Ring z4 = ring_Zmod(4);
    FPModule z2 = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    StabSystem sys(z2, z2);
    // the zero chain
    VogelChain zero;
    zero.degree = 0;
    zero.first = 1;
    for (long j = 1; j <= 5; ++j) {
        FPModule st = tensor(sys.P().p(j), sys.I().i(j - 1));
        zero.components.push_back(IntVec(static_cast<size_t>(st.gens), Int(0)));
    }
    zero.tail = VogelTail{VogelTail::Zero, 0, 0};
    CycleReport rep = check_cycle(sys, zero);
    CHECK(rep.is_cycle);
    CHECK(rep.confluence == 1);
    CoherentSequence phi = project_kappa(sys, zero);
    for (size_t t = 0; t < phi.entries.size(); ++t) {
        SubQuotient st = sys.stab(phi.start_k + static_cast<long>(t), phi.start_k + static_cast<long>(t));
        CHECK(element_is_zero(st.module, phi.entries[t]));
    }
    // a single nonzero component: the boundary is finitely supported, so it
    // is still a cycle, and coherence forces the projection to vanish
    std::mt19937_64 rng(5);
    VogelChain spike = zero;
    spike.components[2] = IntVec(spike.components[2].size());
    for (auto& c : spike.components[2]) c = static_cast<long>(rng() % 4);
    CycleReport rep2 = check_cycle(sys, spike);
    CHECK(rep2.is_cycle);
    CoherentSequence phi2 = project_kappa(sys, spike);
    for (size_t t = 0; t < phi2.entries.size(); ++t) {
        SubQuotient st =
            sys.stab(phi2.start_k + static_cast<long>(t), phi2.start_k + static_cast<long>(t));
        CHECK(element_is_zero(st.module, phi2.entries[t]));
    }
}

TEST_CASE("round trip on the constant generator over Z/4") {
    Ring z4 = ring_Zmod(4);
    FPModule z2 = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    StabSystem sys(z2, z2);
    CoherentSequence phi = coherent_from_stage(sys, 0, 0, IntVec{Int(1)}, 9);
    REQUIRE(is_coherent(sys, phi));
    CHECK(phi.tail.kind == VogelTail::Periodic);
    VogelChain s = lift_surjectivity(sys, phi, 9);
    // the lifted chain has nonzero components at every stage
    for (size_t t = 0; t < s.components.size(); ++t) {
        FPModule st = tensor(sys.P().p(s.first + static_cast<long>(t)),
                             sys.I().i(s.first + static_cast<long>(t) - 1));
        CHECK(!element_is_zero(st, s.components[t]));
    }
    CycleReport rep = check_cycle(sys, s);
    CHECK(rep.is_cycle);
    CHECK(s.tail.kind == VogelTail::Periodic);
    CoherentSequence back = project_kappa(sys, s);
    CHECK(sequences_equal(sys, back, phi));
    // evaluation at the bottom Tor stage is nonzero (the stage map is monic)
    IntVec lam = lambda_evaluation(sys, phi);
    CHECK(!element_is_zero(sys.tor1(0, 1).module, lam));
}

TEST_CASE("round trip on random coherent sequences") {
    std::mt19937_64 rng(91);
    for (long m : {4L, 9L, 8L}) {
        Ring ring = ring_Zmod(m);
        FPModule a = make_module(ring, 1, IntMatrix::from_rows({{m == 9 ? 3L : 2L}}));
        FPModule b = a;
        StabSystem sys(a, b);
        for (long n : {0L, 1L}) {
            for (int trial = 0; trial < 3; ++trial) {
                CoherentSequence phi = random_coherent(sys, rng, n, 9);
                REQUIRE(is_coherent(sys, phi));
                VogelChain s = lift_surjectivity(sys, phi, 9 + n);
                CHECK(check_cycle(sys, s).is_cycle);
                CoherentSequence back = project_kappa(sys, s);
                CHECK(sequences_equal(sys, back, phi));
            }
        }
    }
}

TEST_CASE("projection is additive") {
    std::mt19937_64 rng(92);
    Ring z4 = ring_Zmod(4);
    FPModule z2 = make_module(z4, 1, IntMatrix::from_rows({{2}}));
    StabSystem sys(z2, z2);
    for (int trial = 0; trial < 4; ++trial) {
        CoherentSequence p1 = random_coherent(sys, rng, 0, 9);
        CoherentSequence p2 = random_coherent(sys, rng, 0, 9);
        VogelChain s1 = lift_surjectivity(sys, p1, 9);
        VogelChain s2 = lift_surjectivity(sys, p2, 9);
        VogelChain sum = chain_add(s1, s2);
        REQUIRE(check_cycle(sys, sum).is_cycle);
        CoherentSequence both = project_kappa(sys, sum);
        CHECK(sequences_equal(sys, both, sequence_add(p1, p2)));
    }
}
