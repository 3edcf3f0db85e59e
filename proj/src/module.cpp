#include "tenstab/module.hpp"

#include <sstream>

namespace tenstab {

FPModule make_module(const Ring& ring, long gens, const IntMatrix& rel) {
    if (rel.rows() != gens) throw Error("make_module: relation matrix must have one row per generator");
    return FPModule{ring, gens, rel};
}

FPModule zero_module(const Ring& ring) { return FPModule{ring, 0, IntMatrix(0, 0)}; }

FPModule free_module(const Ring& ring, long rank) { return FPModule{ring, rank, IntMatrix(rank, 0)}; }

std::pair<long, std::vector<Int>> invariant_factors(const FPModule& m) {
    SmithDecomposition d = smith_normal_form(m.rel_full());
    long rank = m.gens;
    std::vector<Int> tors;
    for (const auto& di : d.diag) {
        if (di != 0) {
            --rank;
            if (di != 1) tors.push_back(di);
        }
    }
    return {rank, tors};
}

bool is_zero_module(const FPModule& m) {
    auto [rank, tors] = invariant_factors(m);
    return rank == 0 && tors.empty();
}

bool is_isomorphic(const FPModule& a, const FPModule& b) {
    if (!(a.ring == b.ring)) return false;
    return invariant_factors(a) == invariant_factors(b);
}

std::string module_shape(const FPModule& m) {
    auto [rank, tors] = invariant_factors(m);
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << (rank == 1 ? "Z" : "Z^" + std::to_string(rank));
        first = false;
    }
    for (const auto& t : tors) {
        if (!first) os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Int module_order(const FPModule& m) {
    auto [rank, tors] = invariant_factors(m);
    if (rank > 0) throw InfiniteModule("module_order: module has free rank " + std::to_string(rank));
    Int n = 1;
    for (const auto& t : tors) n *= t;
    return n;
}

bool element_is_zero(const FPModule& m, const IntVec& x) {
    if (static_cast<long>(x.size()) != m.gens) throw Error("element_is_zero: coordinate size mismatch");
    if (m.ring.modular()) return solve(m.rel, x, m.ring.modulus).has_value();
    return solve(m.rel, x).has_value();
}

bool elements_equal(const FPModule& m, const IntVec& x, const IntVec& y) {
    return element_is_zero(m, vec_sub(x, y));
}

ModuleMap make_map(const FPModule& source, const FPModule& target, const IntMatrix& matrix) {
    if (matrix.rows() != target.gens || matrix.cols() != source.gens)
        throw Error("make_map: matrix shape must be target.gens x source.gens");
    if (!(source.ring == target.ring)) throw Error("make_map: ring mismatch");
    for (long j = 0; j < source.rel.cols(); ++j) {
        if (!element_is_zero(target, matrix * source.rel.col(j)))
            throw NotWellDefined("make_map: relation " + std::to_string(j) + " is not sent to zero");
    }
    return ModuleMap{source, target, matrix};
}

ModuleMap identity_map(const FPModule& m) { return ModuleMap{m, m, IntMatrix::identity(m.gens)}; }

ModuleMap zero_map(const FPModule& source, const FPModule& target) {
    return ModuleMap{source, target, IntMatrix(target.gens, source.gens)};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (!(f.target == g.source)) throw Error("compose: middle modules differ");
    return ModuleMap{f.source, g.target, g.matrix * f.matrix};
}

IntVec apply(const ModuleMap& f, const IntVec& x) { return f.matrix * x; }

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.source == g.source) || !(f.target == g.target)) return false;
    for (long j = 0; j < f.source.gens; ++j)
        if (!elements_equal(f.target, f.matrix.col(j), g.matrix.col(j))) return false;
    return true;
}

bool is_zero_map(const ModuleMap& f) {
    for (long j = 0; j < f.source.gens; ++j)
        if (!element_is_zero(f.target, f.matrix.col(j))) return false;
    return true;
}

std::optional<IntVec> solve_map(const ModuleMap& f, const IntVec& y) {
    IntMatrix aug = hstack(f.matrix, f.target.rel_full());
    auto z = solve(aug, y);
    if (!z) return std::nullopt;
    z->resize(static_cast<size_t>(f.source.gens));
    return z;
}

IntMatrix preimage_lattice(const IntMatrix& matrix, const FPModule& target) {
    IntMatrix aug = hstack(matrix, target.rel_full());
    IntMatrix k = kernel_basis(aug);
    return lattice_column_basis(submatrix_rows(k, 0, matrix.cols()));
}

SubQuotient kernel(const ModuleMap& f) {
    IntMatrix kgen = preimage_lattice(f.matrix, f.target);
    IntMatrix krel = preimage_lattice(kgen, f.source);
    FPModule k = make_module(f.source.ring, kgen.cols(), krel);
    return SubQuotient{k, ModuleMap{k, f.source, kgen}};
}

SubQuotient cokernel(const ModuleMap& f) {
    FPModule c = make_module(f.target.ring, f.target.gens, hstack(f.target.rel, f.matrix));
    return SubQuotient{c, ModuleMap{f.target, c, IntMatrix::identity(f.target.gens)}};
}

ImageData image(const ModuleMap& f) {
    IntMatrix irel = preimage_lattice(f.matrix, f.target);
    FPModule im = make_module(f.source.ring, f.source.gens, irel);
    return ImageData{im, ModuleMap{im, f.target, f.matrix}, ModuleMap{f.source, im, IntMatrix::identity(f.source.gens)}};
}

bool is_monic(const ModuleMap& f) { return is_zero_module(kernel(f).module); }

bool is_epic(const ModuleMap& f) { return is_zero_module(cokernel(f).module); }

bool is_iso(const ModuleMap& f) { return is_monic(f) && is_epic(f); }

FPModule tensor(const FPModule& a, const FPModule& b) {
    if (!(a.ring == b.ring)) throw Error("tensor: ring mismatch");
    long g = a.gens * b.gens;
    std::vector<IntVec> cols;
    for (long r = 0; r < a.rel.cols(); ++r)
        for (long j = 0; j < b.gens; ++j) {
            IntVec c = zero_vec(g);
            for (long i = 0; i < a.gens; ++i) c[static_cast<size_t>(i * b.gens + j)] = a.rel.at(i, r);
            cols.push_back(std::move(c));
        }
    for (long s = 0; s < b.rel.cols(); ++s)
        for (long i = 0; i < a.gens; ++i) {
            IntVec c = zero_vec(g);
            for (long j = 0; j < b.gens; ++j) c[static_cast<size_t>(i * b.gens + j)] = b.rel.at(j, s);
            cols.push_back(std::move(c));
        }
    return make_module(a.ring, g, from_cols(g, cols));
}

ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g) {
    FPModule src = tensor(f.source, g.source);
    FPModule tgt = tensor(f.target, g.target);
    return ModuleMap{src, tgt, kron(f.matrix, g.matrix)};
}

SumData direct_sum(const FPModule& a, const FPModule& b) {
    long g = a.gens + b.gens;
    IntMatrix rel(g, a.rel.cols() + b.rel.cols());
    for (long i = 0; i < a.gens; ++i)
        for (long j = 0; j < a.rel.cols(); ++j) rel.at(i, j) = a.rel.at(i, j);
    for (long i = 0; i < b.gens; ++i)
        for (long j = 0; j < b.rel.cols(); ++j) rel.at(a.gens + i, a.rel.cols() + j) = b.rel.at(i, j);
    FPModule s = make_module(a.ring, g, rel);
    IntMatrix i1(g, a.gens), i2(g, b.gens), p1(a.gens, g), p2(b.gens, g);
    for (long i = 0; i < a.gens; ++i) {
        i1.at(i, i) = 1;
        p1.at(i, i) = 1;
    }
    for (long i = 0; i < b.gens; ++i) {
        i2.at(a.gens + i, i) = 1;
        p2.at(i, a.gens + i) = 1;
    }
    return SumData{s, ModuleMap{a, s, i1}, ModuleMap{b, s, i2}, ModuleMap{s, a, p1}, ModuleMap{s, b, p2}};
}

std::vector<IntVec> enumerate_elements(const FPModule& m) {
    SmithDecomposition d = smith_normal_form(m.rel_full());
    long n = static_cast<long>(d.diag.size());
    std::vector<Int> bounds(static_cast<size_t>(m.gens), 0);
    Int total = 1;
    for (long i = 0; i < m.gens; ++i) {
        Int di = (i < n) ? d.diag[static_cast<size_t>(i)] : Int(0);
        if (di == 0) throw InfiniteModule("enumerate_elements: module is infinite");
        bounds[static_cast<size_t>(i)] = di;
        total *= di;
    }
    if (total > 1000000) throw Error("enumerate_elements: module too large (" + total.get_str() + " elements)");
    std::vector<IntVec> out;
    IntVec y(static_cast<size_t>(m.gens), 0);
    for (;;) {
        out.push_back(d.Uinv * y);
        long i = m.gens - 1;
        while (i >= 0) {
            y[static_cast<size_t>(i)] += 1;
            if (y[static_cast<size_t>(i)] < bounds[static_cast<size_t>(i)]) break;
            y[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

}  // namespace tenstab
