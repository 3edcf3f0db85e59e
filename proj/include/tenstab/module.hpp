#pragma once

#include <utility>

#include "tenstab/linalg.hpp"

namespace tenstab {

// Base ring: the integers (modulus == 0) or integers modulo m >= 2.
struct Ring {
    Int modulus = 0;
    bool modular() const { return modulus != 0; }
    bool operator==(const Ring& o) const { return modulus == o.modulus; }
    std::string to_string() const { return modular() ? "Z/" + modulus.get_str() : "Z"; }
};

inline Ring ring_Z() { return Ring{0}; }
inline Ring ring_Zmod(const Int& m) {
    if (m < 2) throw Error("ring modulus must be >= 2");
    return Ring{m};
}

// A finitely presented module: `gens` generators subject to the columns of
// `rel`.  Over Z/m the implicit relations m*e_i are NOT stored; rel_full()
// appends them on demand.  Presentations are kept as given: two modules
// with different presentations of the same isomorphism class are distinct
// values, and elements are compared through lattice membership, never by
// reducing to a canonical form.
struct FPModule {
    Ring ring;
    long gens = 0;
    IntMatrix rel;  // gens x (number of relations); columns are relations

    IntMatrix rel_full() const {
        if (!ring.modular()) return rel;
        return hstack(rel, IntMatrix::identity(gens) * ring.modulus);
    }
    bool operator==(const FPModule& o) const { return ring == o.ring && gens == o.gens && rel == o.rel; }
};

struct ModuleMap {
    FPModule source, target;
    IntMatrix matrix;  // target.gens x source.gens; column j = image of e_j
};

struct SubQuotient {
    FPModule module;
    ModuleMap map;  // kernel: inclusion into the source; cokernel: projection from the target
};

struct ImageData {
    FPModule module;
    ModuleMap into_target;   // monic
    ModuleMap from_source;   // epic
};

struct SumData {
    FPModule module;
    ModuleMap inj1, inj2;    // inclusions of the summands
    ModuleMap proj1, proj2;  // projections onto the summands
};

FPModule make_module(const Ring& ring, long gens, const IntMatrix& rel);
FPModule zero_module(const Ring& ring);
FPModule free_module(const Ring& ring, long rank);

// Invariant factor decomposition: (free rank, torsion factors > 1 in a
// divisibility chain).  Over Z/m the free rank is always 0 here and the
// factors divide m.
std::pair<long, std::vector<Int>> invariant_factors(const FPModule& m);
bool is_zero_module(const FPModule& m);
bool is_isomorphic(const FPModule& a, const FPModule& b);
std::string module_shape(const FPModule& m);  // e.g. "Z^2 + Z/2 + Z/6", "0"
Int module_order(const FPModule& m);          // throws InfiniteModule

// Element x of M is the coset of the coordinate vector x; zero iff x lies
// in the full relation lattice.  Decided by an exact solve.
bool element_is_zero(const FPModule& m, const IntVec& x);
bool elements_equal(const FPModule& m, const IntVec& x, const IntVec& y);

// Throws NotWellDefined unless the matrix carries every relation of the
// source into the relation lattice of the target.
ModuleMap make_map(const FPModule& source, const FPModule& target, const IntMatrix& matrix);
ModuleMap identity_map(const FPModule& m);
ModuleMap zero_map(const FPModule& source, const FPModule& target);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
IntVec apply(const ModuleMap& f, const IntVec& x);
bool maps_equal(const ModuleMap& f, const ModuleMap& g);
bool is_zero_map(const ModuleMap& f);

// Preimage solve: some x with f(x) = y in the target, if any.
std::optional<IntVec> solve_map(const ModuleMap& f, const IntVec& y);

// Generators (as coordinate vectors in ambient Z^gens) of the lattice
// { x : matrix * x lies in the relation lattice of `target` }.
IntMatrix preimage_lattice(const IntMatrix& matrix, const FPModule& target);

SubQuotient kernel(const ModuleMap& f);
SubQuotient cokernel(const ModuleMap& f);
ImageData image(const ModuleMap& f);
bool is_monic(const ModuleMap& f);
bool is_epic(const ModuleMap& f);
bool is_iso(const ModuleMap& f);

FPModule tensor(const FPModule& a, const FPModule& b);  // generator (i,j) at index i*b.gens + j
ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g);
SumData direct_sum(const FPModule& a, const FPModule& b);

// All elements of a finite module, one coordinate vector per coset,
// enumerated deterministically.  Throws InfiniteModule otherwise.
std::vector<IntVec> enumerate_elements(const FPModule& m);

}  // namespace tenstab
