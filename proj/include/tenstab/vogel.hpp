#pragma once

#include "tenstab/stable.hpp"

namespace tenstab {

// ---------------------------------------------------------------------------
// Finite-horizon chains in the product complex (P_i (x) I^{i-n-1})_i, the
// projection to coherent sequences in the stabilized-tensor tower, and the
// constructive lift showing that projection is onto.  Everything lives over
// a fixed StabSystem (one free resolution of A, one injective resolution
// of B); chains and sequences are stored as coordinate vectors in the
// ambient tensor stages.
// ---------------------------------------------------------------------------

struct VogelTail {
    enum Kind {
        Zero,      // all components above the window vanish
        Periodic,  // components repeat with the stated period above the prefix
        Window     // finite-horizon data only; no certified tail
    };
    Kind kind = Window;
    long prefix = 0;  // number of leading components before the periodic part
    long period = 0;
};

struct VogelChain {
    long degree = 0;  // n
    long first = 1;   // index of the first stored component (>= max(1, n+1))
    // components[t] is an element of P_{first+t} (x) I^{first+t-n-1},
    // stored as generator coordinates of the ambient tensor module
    std::vector<IntVec> components;
    VogelTail tail;
};

struct CoherentSequence {
    long degree = 0;
    long start_k = 0;  // entries[t] sits at cosyzygy index k = start_k + t
    // entries[t] is an element of stab(start_k+t+degree, start_k+t),
    // in the coordinates of that kernel module
    std::vector<IntVec> entries;
    VogelTail tail;
};

struct CycleReport {
    bool is_cycle = false;
    long confluence = 0;  // smallest index from which the alternating
                          // boundary relations hold
};

// Verify d_I(s_j) = (-1)^{j+1} d_P(s_{j+1}) from some index on.  For a
// periodic tail the relations are checked on the window and the stage data
// is checked to repeat (even period), which extends them forever; for a
// zero tail the trailing component must be closed under d_I.
CycleReport check_cycle(StabSystem& sys, const VogelChain& s);

// Whether consecutive entries satisfy Delta(phi_{k+1}) = phi_k, including
// one period of a periodic tail.
bool is_coherent(StabSystem& sys, const CoherentSequence& phi);

// The projection kappa: pull d_P(s_{j+1}) back through the hull embedding,
// push down to the syzygy, corestrict into the stabilized tensor, and fix
// signs by the residue of j - confluence mod 4.  Entries below the
// confluence index come from applying the structure maps downward.  The
// result is coherence-checked; a failed check raises ChaseFailure.
CoherentSequence project_kappa(StabSystem& sys, const VogelChain& s);

// The surjectivity lift: choose s_j stagewise so that s_j maps onto the
// signed entry and d_P(s_j) = (-1)^j d_I(s_{j-1}).  Each stage is one
// linear solve; an unsolvable stage raises ChaseFailure (that would be
// evidence against the construction, not a silent failure).  The sequence
// must carry entries up to cosyzygy index horizon - degree.
VogelChain lift_surjectivity(StabSystem& sys, const CoherentSequence& phi, long horizon);

// Extend a single element given at a stage of a certified tower to a
// coherent sequence on cosyzygy indices [start_k, top_k]: downward along
// the structure maps, upward through their inverses (the tower must be
// StabilizedAt with top_k at or above the certificate index).
CoherentSequence coherent_from_stage(StabSystem& sys, long degree, long stage_k, const IntVec& coords,
                                     long top_k);

// Pointwise sum on a common window.
VogelChain chain_add(const VogelChain& a, const VogelChain& b);
CoherentSequence sequence_add(const CoherentSequence& a, const CoherentSequence& b);
bool sequences_equal(StabSystem& sys, const CoherentSequence& a, const CoherentSequence& b);

// Evaluation at the bottom stage composed with the stage-wise monomorphism
// into Tor_1: the image of the lowest entry with syzygy index >= 1 inside
// tor1(i-1, k).  Returns the coordinates in that kernel module.
IntVec lambda_evaluation(StabSystem& sys, const CoherentSequence& phi);

}  // namespace tenstab
