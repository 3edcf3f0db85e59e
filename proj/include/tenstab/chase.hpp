#pragma once

#include "tenstab/resolution.hpp"

namespace tenstab {

// The four-step staircase used by every connecting homomorphism here:
// lift an element through an epi, move it down, pull it back through a
// mono, move it down again.  All steps are exact solves; the global sign
// convention of the library is "no sign is introduced by the staircase".
struct Staircase {
    ModuleMap lift;   // epi  T1 ->> S1
    ModuleMap move1;  // T1 -> T2
    ModuleMap pull;   // mono S2 >-> T2
    ModuleMap move2;  // S2 -> S3
};

IntVec staircase_chase(const Staircase& st, const IntVec& x);

// For alpha : S1 -> X, the induced map ker(alpha) -> S3 obtained by chasing
// every kernel generator.  Well-definedness is certified by make_map.
ModuleMap face_connecting(const Staircase& st, const SubQuotient& ker_alpha);

// Classical 2x3 snake ladder:
//      A1 --f1--> A2 --f2--> A3        (exact at A2, f2 epic)
//      |a         |b         |c
//      B1 --g1--> B2 --g2--> B3        (exact at B2, g1 monic)
struct SnakeInput {
    ModuleMap f1, f2, a, b, c, g1, g2;
};

void certify_snake(const SnakeInput& s);

// Connecting homomorphism ker(c) -> coker(a), returned with the two
// bookkeeping maps (the kernel inclusion and the cokernel projection).
struct SnakeOutput {
    SubQuotient ker_c;
    SubQuotient coker_a;
    ModuleMap connecting;  // ker_c.module -> coker_a.module
};

SnakeOutput connecting_hom(const SnakeInput& s);

// 3x3x3 commutative diagram.  Axes: c (col) is the injective-resolution
// direction, v (row) is the projective-resolution direction, d (depth) is
// the module short-exact-sequence direction.  node[d][v][c]; maps point in
// the direction of increasing index.
struct Cube {
    FPModule node[3][3][3];
    IntMatrix hmat[3][3][2];  // node[d][v][c] -> node[d][v][c+1]
    IntMatrix vmat[3][2][3];  // node[d][v][c] -> node[d][v+1][c]
    IntMatrix dmat[2][3][3];  // node[d][v][c] -> node[d+1][v][c]

    ModuleMap h(long d, long v, long c) const;
    ModuleMap v_(long d, long v, long c) const;
    ModuleMap dp(long d, long v, long c) const;
};

// Conditions shared by both cube lemmas: every same-direction three-term
// sequence is exact at its middle term, every second arrow of such a
// sequence is epic, and all small squares commute.
void certify_cube_common(const Cube& c);
// Extra short-exactness (monic first maps) per lemma.
void certify_cube_down_horizontal(const Cube& c);
void certify_cube_horizontal_down(const Cube& c);

struct CubeReport {
    bool ok = true;
    long checked = 0;  // kernel generators examined
    std::string detail;
};

// Front-then-bottom = -(right) on ker(alpha), alpha : N1'' -> N''.
CubeReport verify_cube_down_horizontal(const Cube& c);
// Top-then-back = left on ker(alpha) /\ ker(gamma), alpha : L1'' -> M1'',
// gamma : L1'' -> L''.
CubeReport verify_cube_horizontal_down(const Cube& c);

// The standard comparison cube: vertical = the syzygy sequence
// Omega^{i+1}A >-> P_i ->> Omega^i A, horizontal = level-k column of the
// horseshoe of 0 -> B' -> B -> B'' -> 0, depth = the module sequence, all
// tensored together.  Valid over Z/m.
Cube build_cube(ProjResolution& ra, long i, Horseshoe& h, long k);

}  // namespace tenstab
