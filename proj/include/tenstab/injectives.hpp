#pragma once

#include "tenstab/module.hpp"

namespace tenstab {

// ---------------------------------------------------------------------------
// Injective envelopes over Z/m.  The ring Z/m is quasi-Frobenius, so the
// envelope of a finitely presented module is again finitely presented and
// everything stays inside the FP world.
// ---------------------------------------------------------------------------

struct Envelope {
    FPModule env;
    ModuleMap emb;  // monic, source = the given module
};

Envelope injective_envelope_mod(const FPModule& b);

// A finitely presented module over Z/m is injective iff each invariant
// factor d satisfies: for every prime p dividing d, p^(v_p(m)) divides d.
bool is_injective_mod(const FPModule& b);

// ---------------------------------------------------------------------------
// Mixed modules over Z: a finitely generated part plus divisible summands
// Q^q, (Q/Z)^z and Pruefer p-groups Z[1/p]/Z.  These are exactly the shapes
// reachable from finitely presented modules via injective envelopes and
// their cosyzygies, and all arithmetic below is exact (rational numbers,
// lattice membership) -- no truncation is involved.
// ---------------------------------------------------------------------------

struct MixedModule {
    FPModule fg;                  // over Z
    long q_rank = 0;              // copies of Q
    long qmodz_rank = 0;          // copies of Q/Z
    std::vector<Int> pruefer;     // one prime per Pruefer coordinate

    bool purely_fp() const { return q_rank == 0 && qmodz_rank == 0 && pruefer.empty(); }
    bool divisible() const { return fg.gens == 0; }
    bool operator==(const MixedModule& o) const {
        return fg == o.fg && q_rank == o.q_rank && qmodz_rank == o.qmodz_rank && pruefer == o.pruefer;
    }
};

struct MixedElement {
    IntVec fg;
    std::vector<Rat> q;
    std::vector<Rat> qmodz;    // canonical representative in [0,1)
    std::vector<Rat> pruefer;  // in [0,1), denominator a power of the coordinate prime
};

MixedModule mixed_from_fp(const FPModule& m);
MixedModule mixed_zero_module();
bool mixed_is_zero_module(const MixedModule& m);
std::string mixed_shape(const MixedModule& m);

MixedElement mixed_zero(const MixedModule& m);
MixedElement mixed_from_fp_elem(const IntVec& x);
MixedElement mixed_canonical(const MixedModule& m, const MixedElement& x);
MixedElement mixed_add(const MixedModule& m, const MixedElement& x, const MixedElement& y);
MixedElement mixed_sub(const MixedModule& m, const MixedElement& x, const MixedElement& y);
MixedElement mixed_scale(const MixedModule& m, const Int& c, const MixedElement& x);
bool mixed_elem_is_zero(const MixedModule& m, const MixedElement& x);
bool mixed_elems_equal(const MixedModule& m, const MixedElement& x, const MixedElement& y);

// M^n with coordinate-major layout (copy i of M occupies the i-th block of
// every component type).
MixedModule power_mixed(const MixedModule& m, long n);
MixedElement flatten(const MixedModule& m, const std::vector<MixedElement>& v);
std::vector<MixedElement> unflatten(const MixedModule& m, long n, const MixedElement& x);

// Apply an integer matrix T (rows x cols) to an element of M^cols, landing
// in M^rows; this is T tensor id_M under the identification Z^n (x) M = M^n.
MixedElement apply_int_matrix(const IntMatrix& t, const MixedModule& m, const MixedElement& x);

// Map from a finitely presented Z-module into a mixed module, given by the
// images of the generators.
struct MixedMap {
    FPModule source;
    MixedModule target;
    std::vector<MixedElement> images;
};

MixedMap make_mixed_map(const FPModule& source, const MixedModule& target, std::vector<MixedElement> images);
MixedElement apply_mixed(const MixedMap& f, const IntVec& x);
std::optional<IntVec> solve_mixed(const MixedMap& f, const MixedElement& y);
// Kernel of a mixed-target map, as a finitely presented submodule of the
// source.  Exact: membership conditions for the divisible components are
// turned into integer congruences by clearing denominators.
SubQuotient kernel_into_mixed(const MixedMap& f);
bool mixed_map_is_monic(const MixedMap& f);

// Injective envelope and first cosyzygy over Z, bundled with the quotient
// map env -> cosyz and its canonical section.  For B with free rank r and
// torsion Z/d_i decomposed into prime powers p^k:
//   env   = Q^r  +  (+) Pruefer(p)            (one per prime power)
//   cosyz = (Q/Z)^r  +  (+) Pruefer(p)        (Pruefer mod Z/p^k is Pruefer)
// The quotient reduces Q-coordinates mod 1 and multiplies the Pruefer
// coordinate for p^k by p^k; the section takes canonical representatives.
struct EnvelopeZ {
    FPModule base;
    MixedModule env;
    MixedMap emb;            // B -> env, monic with divisible cokernel
    MixedModule cosyz;       // the first cosyzygy; always injective, so the
                             // second cosyzygy over Z is 0
    std::vector<Int> scale;  // per Pruefer coordinate of env: the p^k above
};

EnvelopeZ envelope_z(const FPModule& b);

// The quotient env^n -> cosyz^n and its section, applied coordinate-wise.
MixedElement envq_apply(const EnvelopeZ& e, long n, const MixedElement& x);
MixedElement envq_section(const EnvelopeZ& e, long n, const MixedElement& y);

// Kernel of T tensor id_M : M^cols -> M^rows as a finitely presented module
// together with generators realized inside M^cols.  Throws InfiniteModule
// when the kernel is not finite (it is finite whenever T has full column
// rank over Q or M has no Q and no free summands).
struct MixedKernel {
    FPModule module;
    MixedMap gens;  // source = module presentation, target = power(M, cols)
};

MixedKernel mixed_matrix_kernel(const IntMatrix& t, const MixedModule& m);

}  // namespace tenstab
