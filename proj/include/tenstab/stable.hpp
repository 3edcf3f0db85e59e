#pragma once

#include <map>
#include <string>
#include <vector>

#include "tenstab/chase.hpp"

namespace tenstab {

// ---------------------------------------------------------------------------
// Injective stabilization of the tensor product and the towers built from it.
// Everything is computed from one free resolution of A and one injective
// resolution of B; all structure maps are element-level staircase chases.
// ---------------------------------------------------------------------------

struct StabilizedTensor {
    FPModule module;             // the stabilized tensor product
    ModuleMap inclusion;         // monic, into tensor(A, B)
    std::string envelope_shape;  // the injective hull the kernel was taken against
};

// Kernel of A (x) B -> A (x) E(B).  Over Z the hull is a mixed module and
// the kernel is extracted by exact congruence solving; over Z/m everything
// stays finitely presented.
StabilizedTensor inj_stabilize(const FPModule& a, const FPModule& b);

struct TorGroup {
    FPModule module;
    ModuleMap reps;  // monic; cycle representatives inside syzygy(n) (x) B
};

// Tor_n(A, B) from the free resolution of A, with representatives.  The
// resolution of a syzygy is the truncated resolution of A, so the degree
// shift Tor_{n+1}(A, -) = Tor_n(Omega A, -) holds as an equality of
// presentations, not just an isomorphism.
TorGroup tor(const FPModule& a, const FPModule& b, long n);

// Tor_n(A, M) for a mixed coefficient module over Z, n >= 1.
MixedKernel tor_mixed(const FPModule& a, const MixedModule& m, long n);

// delta : Tor_1(A, Sigma B) -> (A ottilde B), the corestricted connecting
// homomorphism.  Epic always; an isomorphism whenever the hull of B is
// projective (always the case over Z/m).
ModuleMap delta_map(const FPModule& a, const FPModule& b);

// Delta_i : (Omega^i A ~ Sigma^i B) -> (Omega^{i-1} A ~ Sigma^{i-1} B).
ModuleMap structure_delta(const FPModule& a, const FPModule& b, long i);

// ---------------------------------------------------------------------------
// Towers and their certified limits.
// ---------------------------------------------------------------------------

struct Certificate {
    enum Kind { StabilizedAt, MittagLefflerImage, Inconclusive };
    Kind kind = Inconclusive;
    long index = 0;    // stage (in k units) from which the certificate holds
    long horizon = 0;  // number of maps actually computed
    long period = 0;   // verified repetition period of the tail (stage units)
    std::string detail;
};

struct TowerStage {
    long k = 0;           // cosyzygy index; the syzygy index is k + degree
    FPModule module;
    ModuleMap inclusion;  // into the ambient tensor product
};

struct Tower {
    long degree = 0;
    long start_k = 0;                // stages[j] sits at k = start_k + j
    std::vector<TowerStage> stages;
    std::vector<ModuleMap> maps;     // maps[j] : stages[j+1] -> stages[j]
    Certificate cert;
};

struct AsymptoticValue {
    bool determined = false;
    FPModule limit;  // meaningful only when determined
    Tower tower;
    long degree = 0;
};

// Stage modules Omega^{k+n} A ~ Sigma^k B for k, k+n >= 0 with the
// structure maps Delta, certified against detected resolution periodicity.
Tower tower(const FPModule& a, const FPModule& b, long n, long horizon = 8);

// The inverse limit of the tower.  Starts from `horizon` and doubles it
// (cap 64) while the certificate is inconclusive.  Only certified limits
// are asserted.
AsymptoticValue asymptotic_T(const FPModule& a, const FPModule& b, long n, long horizon = 8);

// Stages Tor_1(Omega^{k+n} A, Sigma^{k+1} B) with connecting-homomorphism
// structure maps (glued double-snake chase).
Tower tor_tower(const FPModule& a, const FPModule& b, long n, long horizon = 8);

struct IntertwineResult {
    Tower stab, tors;
    // southeast[j] : tors.stages[j] -> stab.stages[j] (epic)
    // northeast[j] : stab.stages[j+1] -> tors.stages[j] (monic)
    std::vector<ModuleMap> southeast, northeast;
    bool southeast_epic = false;
    bool northeast_monic = false;
    bool squares_commute = false;   // Delta = SE o NE and tau = NE o SE
    bool factorization_ok = false;  // image of tau recovers the stab stage
};

IntertwineResult intertwine(const FPModule& a, const FPModule& b, long n, long horizon = 8);

struct SatelliteResult {
    Tower tower;                      // coker(Tor_1(-, I^k) -> Tor_1(-, Sigma^{k+1} B)) stages
    std::vector<ModuleMap> to_stab;   // stage-wise map to the stabilized-tensor tower
    bool stagewise_iso = false;
    bool squares_commute = false;
    bool gamma_iso = false;           // the correcting automorphism of Tor_1 is an iso
};

SatelliteResult satellite_tower(const FPModule& a, const FPModule& b, long n, long horizon = 8);

struct DimShiftReport {
    bool ok = false;
    bool b_shift_ok = false;  // stages of T_n(A, Sigma^k B) equal shifted stages of T_{n-k}(A, B)
    bool a_shift_ok = false;  // stages of T_n(Omega^j A, B) equal stages of T_{n+j}(A, B)
    std::string detail;
};

DimShiftReport dimension_shift_check(const FPModule& a, const FPModule& b, long n, long k, long j,
                                     long horizon = 6);

// ---------------------------------------------------------------------------
// Connecting homomorphisms for a short exact sequence of coefficients.
// ---------------------------------------------------------------------------

// kappa^i : (Omega^i A ~ Sigma^{i-1} B'') -> (Omega^i A ~ Sigma^i B'),
// chased through the level-(i-1) horseshoe column.  i >= 1.
ModuleMap kappa_stage(const FPModule& a, const SES& s, long i);

struct OmegaResult {
    Tower source;  // T_n(A, B'')
    Tower target;  // T_{n-1}(A, B')
    std::vector<ModuleMap> kappa;  // kappa[j] : source.stages[j] -> target stage at k+1
    std::vector<int> sign;         // omega[j] = sign[j] * kappa[j], sign = (-1)^(k+n)
    bool squares_commute = false;     // signed stages commute with the Delta maps
    bool comp_after_zero = false;     // T(A, alpha) o omega = 0 stage-wise
    bool comp_before_zero = false;    // omega o T(A, beta) = 0 stage-wise
    AsymptoticValue lim_source, lim_target;
    bool limit_determined = false;
    ModuleMap limit_map;  // omega_n : T_n(A, B'') -> T_{n-1}(A, B')
};

OmegaResult connecting_omega(const FPModule& a, const SES& s, long n, long horizon = 8);

struct RhoResult {
    Tower tor_source;  // Tor tower of B'' in degree n
    Tower tor_target;  // Tor tower of B' in degree n-1
    long first = 0;                // theta[t] sits at source stage index first + t
    std::vector<ModuleMap> theta;  // Tor-level connecting chases
    std::vector<int> sign;         // rho[t] = sign[t] * theta[t]
    bool squares_commute = false;  // signed theta commute with the Tor structure maps
    bool anti_stab = false;        // the three unsigned squares anticommute
    bool anti_torstab = false;
    bool anti_tortor = false;
    bool cube_down_horizontal = false;  // spatial-lemma verifiers on the instance
    bool cube_horizontal_down = false;
    bool limit_determined = false;
    ModuleMap limit_map;       // transported to the stabilized-tensor limits
    bool agrees_with_omega = false;
    int relative_sign = 1;     // limit_map == relative_sign * omega limit map
};

RhoResult second_construction_omega(const FPModule& a, const SES& s, long n, long horizon = 8);

// ---------------------------------------------------------------------------
// The shared chase engine over Z/m.  One free resolution of A, one injective
// resolution of B; every map below is produced by the same four-step
// staircase and certified well-defined on construction.
// ---------------------------------------------------------------------------

class StabSystem {
public:
    StabSystem(const FPModule& a, const FPModule& b);
    StabSystem(ProjResolution pa, const FPModule& b);
    StabSystem(ProjResolution pa, InjResolution ib);

    ProjResolution& P() { return p_; }
    InjResolution& I() { return i_; }
    const FPModule& A() const { return a_; }
    const FPModule& B() const { return b_; }

    // Omega^i A ~ Sigma^k B inside syzygy(i) (x) cosyzygy(k).
    SubQuotient stab(long i, long k);
    // Tor_1(Omega^i A, Sigma^k B) inside syzygy(i+1) (x) cosyzygy(k).
    SubQuotient tor1(long i, long k);

    ModuleMap structure_delta(long i, long k);  // stab(i,k) -> stab(i-1,k-1), i,k >= 1
    ModuleMap southeast(long i, long k);        // tor1(i,k) -> stab(i,k-1), k >= 1
    ModuleMap northeast(long i, long k);        // stab(i,k) -> tor1(i-1,k), i >= 1
    ModuleMap tor_structure(long i, long k);    // tor1(i,k) -> tor1(i-1,k-1), i,k >= 1

private:
    FPModule a_, b_;
    ProjResolution p_;
    InjResolution i_;
    std::map<std::pair<long, long>, SubQuotient> stab_, tor1_;
    std::map<std::pair<long, long>, ModuleMap> sd_, se_, ne_, ts_;
    Staircase se_staircase(long i, long k);
    friend class ConnectingSystem;
};

// Chase context for a fixed A and a short exact sequence of coefficient
// modules, built on the horseshoe ladder.
class ConnectingSystem {
public:
    ConnectingSystem(const FPModule& a, SES s);

    StabSystem& left();    // (A, B')
    StabSystem& right();   // (A, B'')
    Horseshoe& horseshoe();

    // stage of the middle tower, using the horseshoe's middle column
    SubQuotient stab_mid(long i, long k);

    ModuleMap kappa(long i, long k);    // stab''(i,k) -> stab'(i,k+1)
    ModuleMap partial(long i, long k);  // tor1''(i,k) -> stab'(i,k)
    ModuleMap theta(long i, long k);    // tor1''(i,k) -> tor1'(i-1,k), i >= 1

    ModuleMap t_alpha(long i, long k);  // stab'(i,k) -> stab_mid(i,k)
    ModuleMap t_beta(long i, long k);   // stab_mid(i,k) -> stab''(i,k)

private:
    SES ses_;
    ProjResolution p_;
    Horseshoe h_;
    StabSystem lft_, rgt_;
    std::map<std::pair<long, long>, SubQuotient> mid_;
    std::map<std::pair<long, long>, ModuleMap> kap_, par_, the_;
    void check_level(long k);
};

// Comparison maps Sigma^k f : Sigma^k B -> Sigma^k C extending f : B -> C
// through the two canonical injective resolutions (levels 0..length).
std::vector<ModuleMap> cosyzygy_maps(const ModuleMap& f, InjResolution& rb, InjResolution& rc,
                                     long length);

// Induced map (Omega^i A ~ Sigma^k B) -> (Omega^i A ~ Sigma^k C) from the
// comparison maps above; s1, s2 must share the resolution of A.
ModuleMap induced_stab_map(StabSystem& s1, StabSystem& s2, const std::vector<ModuleMap>& sigf,
                           long i, long k);

}  // namespace tenstab
