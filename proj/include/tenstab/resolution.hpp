#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "tenstab/injectives.hpp"

namespace tenstab {

// Short exact sequence 0 -> B' -f-> B -g-> B'' -> 0.
struct SES {
    ModuleMap f, g;
};

// Throws NotExact/PreconditionFailure unless f is monic, g is epic,
// g o f = 0 and ker g is contained in im f.
void certify_ses(const SES& s);

// The tautological exact sequence im(g) >-> Y ->> coker(g) of a map g.
SES ses_from_map(const ModuleMap& g);

// Free resolution ... -> P_1 -> P_0 ->> A, built lazily.  Stage data is
// shared: copies of the handle see the same underlying chain, so syzygies
// of syzygies coincide on the nose with deeper stages of the same chain.
class ProjResolution {
public:
    explicit ProjResolution(FPModule a);
    const FPModule& base() const;
    FPModule p(long k);              // P_k (free)
    FPModule syzygy(long k);         // Omega^k, with Omega^0 = base
    ModuleMap diff(long k);          // d_k : P_k -> P_{k-1}, k >= 1
    ModuleMap aug(long k);           // epi P_k ->> Omega^k (identity matrix)
    ModuleMap incl(long k);          // monic Omega^k -> P_{k-1}, k >= 1
    // Detected (prefix, period) with syzygy(prefix + period) == syzygy(prefix)
    // as presentations; stages are still materialized on demand, the tail is
    // just cheap copies.
    std::optional<std::pair<long, long>> periodicity(long probe_depth = 16);

private:
    struct State;
    std::shared_ptr<State> st_;
    void extend(long k);
};

// Injective resolution B >-> I^0 -> I^1 -> ... over Z/m, all stages
// finitely presented.
class InjResolution {
public:
    explicit InjResolution(FPModule b);
    const FPModule& base() const;
    FPModule i(long k);              // I^k
    FPModule cosyzygy(long k);       // Sigma^k, with Sigma^0 = base
    ModuleMap emb(long k);           // monic Sigma^k -> I^k
    ModuleMap proj(long k);          // epi I^k ->> Sigma^{k+1} (identity matrix)
    ModuleMap diff(long k);          // I^k -> I^{k+1}
    std::optional<std::pair<long, long>> periodicity(long probe_depth = 16);

private:
    struct State;
    std::shared_ptr<State> st_;
    void extend(long k);
};

// Chain lift of f : A -> B to comparison maps f_k : P_k(A) -> P_k(B) with
// d o f_k = f_{k-1} o d and aug o f_0 = f o aug.
std::vector<ModuleMap> lift_map(const ModuleMap& f, ProjResolution& ra, ProjResolution& rb, long length);

// Injectivity extension over Z/m: given monic f : X -> M and g : X -> N
// with N injective, produce h : M -> N with h o f = g.  Solved as one
// integer linear system in the matrix entries of h.
ModuleMap extend_along(const ModuleMap& f, const ModuleMap& g);

// Horseshoe data for a short exact sequence over Z/m: a levelwise-split
// ladder of injective resolutions whose outer columns are exactly the
// canonical envelope resolutions of B' and B''.
struct HorseshoeLevel {
    FPModule sp, s, spp;             // cosyzygies at this level, left/middle/right
    ModuleMap alpha, beta;           // exact: sp >-> s ->> spp
    FPModule ip, imid, ipp;          // level injectives; imid = ip + ipp
    ModuleMap emb_sp, emb_s, emb_spp;  // vertical embeddings into them
    ModuleMap iota, pi;              // ip >-> imid ->> ipp (split inclusion/projection)
};

class Horseshoe {
public:
    explicit Horseshoe(SES s);
    const SES& base() const;
    HorseshoeLevel level(long k);

private:
    struct State;
    std::shared_ptr<State> st_;
};

}  // namespace tenstab
