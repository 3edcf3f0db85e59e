#include "tenstab/injectives.hpp"

#include <map>
#include <sstream>

namespace tenstab {

namespace {

// Prime power factorization by trial division; all inputs here are tiny.
std::vector<std::pair<Int, long>> factorize(Int n) {
    std::vector<std::pair<Int, long>> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        long k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long valuation(Int n, const Int& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Rat frac(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rat r = x - Rat(fl);
    r.canonicalize();
    return r;
}

bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

Int int_part_of_scaled(const Rat& x, const Int& scale) {
    Rat y = x * Rat(scale);
    y.canonicalize();
    if (y.get_den() != 1) throw Error("internal: denominator not cleared");
    return y.get_num();
}

}  // namespace

// --------------------------------------------------------------------------
// Quasi-Frobenius case: envelopes over Z/m.
// --------------------------------------------------------------------------

Envelope injective_envelope_mod(const FPModule& b) {
    if (!b.ring.modular()) throw PreconditionFailure("injective_envelope_mod: ring must be Z/m");
    const Int& m = b.ring.modulus;
    SmithDecomposition d = smith_normal_form(b.rel_full());
    std::vector<long> idx;
    std::vector<Int> factor;
    for (long i = 0; i < b.gens; ++i) {
        Int di = d.diag[static_cast<size_t>(i)];
        if (di == 1) continue;
        // The envelope of Z/d inside the self-injective ring Z/m is Z/m'
        // where m' keeps the full m-valuation of every prime dividing d.
        Int mp = 1;
        for (const auto& [p, k] : factorize(di)) {
            (void)k;
            Int pv = 1;
            for (long v = 0; v < valuation(m, p); ++v) pv *= p;
            mp *= pv;
        }
        idx.push_back(i);
        factor.push_back(mp);
    }
    long n = static_cast<long>(idx.size());
    IntMatrix rel(n, n);
    for (long t = 0; t < n; ++t) rel.at(t, t) = factor[static_cast<size_t>(t)];
    FPModule e = make_module(b.ring, n, rel);
    IntMatrix emb(n, b.gens);
    for (long t = 0; t < n; ++t) {
        long i = idx[static_cast<size_t>(t)];
        Int s = factor[static_cast<size_t>(t)] / d.diag[static_cast<size_t>(i)];
        for (long j = 0; j < b.gens; ++j) emb.at(t, j) = s * d.U.at(i, j);
    }
    ModuleMap f = make_map(b, e, emb);
    if (!is_monic(f)) throw Error("internal: envelope embedding is not monic");
    return Envelope{e, f};
}

bool is_injective_mod(const FPModule& b) {
    if (!b.ring.modular()) throw PreconditionFailure("is_injective_mod: ring must be Z/m");
    auto [rank, tors] = invariant_factors(b);
    (void)rank;
    for (const auto& t : tors)
        for (const auto& [p, k] : factorize(t))
            if (k != valuation(b.ring.modulus, p)) return false;
    return true;
}

// --------------------------------------------------------------------------
// Mixed modules over Z.
// --------------------------------------------------------------------------

MixedModule mixed_from_fp(const FPModule& m) {
    if (m.ring.modular()) throw PreconditionFailure("mixed_from_fp: ring must be Z");
    return MixedModule{m, 0, 0, {}};
}

MixedModule mixed_zero_module() { return MixedModule{zero_module(ring_Z()), 0, 0, {}}; }

bool mixed_is_zero_module(const MixedModule& m) {
    return m.q_rank == 0 && m.qmodz_rank == 0 && m.pruefer.empty() && is_zero_module(m.fg);
}

std::string mixed_shape(const MixedModule& m) {
    std::ostringstream os;
    bool first = true;
    auto piece = [&](const std::string& s) {
        if (!first) os << " + ";
        os << s;
        first = false;
    };
    if (!is_zero_module(m.fg)) piece(module_shape(m.fg));
    if (m.q_rank == 1) piece("Q");
    if (m.q_rank > 1) piece("Q^" + std::to_string(m.q_rank));
    if (m.qmodz_rank == 1) piece("Q/Z");
    if (m.qmodz_rank > 1) piece("(Q/Z)^" + std::to_string(m.qmodz_rank));
    std::map<Int, long> pc;
    for (const auto& p : m.pruefer) pc[p]++;
    for (const auto& [p, c] : pc) {
        std::string s = "Pruefer(" + p.get_str() + ")";
        piece(c == 1 ? s : s + "^" + std::to_string(c));
    }
    if (first) os << "0";
    return os.str();
}

MixedElement mixed_zero(const MixedModule& m) {
    MixedElement x;
    x.fg = zero_vec(m.fg.gens);
    x.q.assign(static_cast<size_t>(m.q_rank), Rat(0));
    x.qmodz.assign(static_cast<size_t>(m.qmodz_rank), Rat(0));
    x.pruefer.assign(m.pruefer.size(), Rat(0));
    return x;
}

MixedElement mixed_from_fp_elem(const IntVec& x) {
    MixedElement e;
    e.fg = x;
    return e;
}

MixedElement mixed_canonical(const MixedModule& m, const MixedElement& x) {
    (void)m;
    MixedElement y = x;
    for (auto& v : y.qmodz) v = frac(v);
    for (auto& v : y.pruefer) v = frac(v);
    return y;
}

MixedElement mixed_add(const MixedModule& m, const MixedElement& x, const MixedElement& y) {
    MixedElement z = x;
    for (size_t i = 0; i < z.fg.size(); ++i) z.fg[i] += y.fg[i];
    for (size_t i = 0; i < z.q.size(); ++i) z.q[i] += y.q[i];
    for (size_t i = 0; i < z.qmodz.size(); ++i) z.qmodz[i] += y.qmodz[i];
    for (size_t i = 0; i < z.pruefer.size(); ++i) z.pruefer[i] += y.pruefer[i];
    return mixed_canonical(m, z);
}

MixedElement mixed_sub(const MixedModule& m, const MixedElement& x, const MixedElement& y) {
    MixedElement z = x;
    for (size_t i = 0; i < z.fg.size(); ++i) z.fg[i] -= y.fg[i];
    for (size_t i = 0; i < z.q.size(); ++i) z.q[i] -= y.q[i];
    for (size_t i = 0; i < z.qmodz.size(); ++i) z.qmodz[i] -= y.qmodz[i];
    for (size_t i = 0; i < z.pruefer.size(); ++i) z.pruefer[i] -= y.pruefer[i];
    return mixed_canonical(m, z);
}

MixedElement mixed_scale(const MixedModule& m, const Int& c, const MixedElement& x) {
    MixedElement z = x;
    for (auto& v : z.fg) v *= c;
    for (auto& v : z.q) v *= Rat(c);
    for (auto& v : z.qmodz) v *= Rat(c);
    for (auto& v : z.pruefer) v *= Rat(c);
    return mixed_canonical(m, z);
}

bool mixed_elem_is_zero(const MixedModule& m, const MixedElement& x) {
    for (const auto& v : x.q)
        if (v != 0) return false;
    for (const auto& v : x.qmodz)
        if (!rat_is_integer(v)) return false;
    for (const auto& v : x.pruefer)
        if (!rat_is_integer(v)) return false;
    if (m.fg.gens > 0 && !element_is_zero(m.fg, x.fg)) return false;
    return true;
}

bool mixed_elems_equal(const MixedModule& m, const MixedElement& x, const MixedElement& y) {
    return mixed_elem_is_zero(m, mixed_sub(m, x, y));
}

MixedModule power_mixed(const MixedModule& m, long n) {
    MixedModule p;
    FPModule fg = zero_module(ring_Z());
    for (long i = 0; i < n; ++i) fg = direct_sum(fg, m.fg).module;
    p.fg = fg;
    p.q_rank = n * m.q_rank;
    p.qmodz_rank = n * m.qmodz_rank;
    for (long i = 0; i < n; ++i) p.pruefer.insert(p.pruefer.end(), m.pruefer.begin(), m.pruefer.end());
    return p;
}

MixedElement flatten(const MixedModule& m, const std::vector<MixedElement>& v) {
    MixedElement x;
    for (const auto& e : v) {
        x.fg.insert(x.fg.end(), e.fg.begin(), e.fg.end());
        x.q.insert(x.q.end(), e.q.begin(), e.q.end());
        x.qmodz.insert(x.qmodz.end(), e.qmodz.begin(), e.qmodz.end());
        x.pruefer.insert(x.pruefer.end(), e.pruefer.begin(), e.pruefer.end());
    }
    (void)m;
    return x;
}

std::vector<MixedElement> unflatten(const MixedModule& m, long n, const MixedElement& x) {
    std::vector<MixedElement> v(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        MixedElement& e = v[static_cast<size_t>(i)];
        e.fg.assign(x.fg.begin() + i * m.fg.gens, x.fg.begin() + (i + 1) * m.fg.gens);
        e.q.assign(x.q.begin() + i * m.q_rank, x.q.begin() + (i + 1) * m.q_rank);
        e.qmodz.assign(x.qmodz.begin() + i * m.qmodz_rank, x.qmodz.begin() + (i + 1) * m.qmodz_rank);
        long np = static_cast<long>(m.pruefer.size());
        e.pruefer.assign(x.pruefer.begin() + i * np, x.pruefer.begin() + (i + 1) * np);
    }
    return v;
}

MixedElement apply_int_matrix(const IntMatrix& t, const MixedModule& m, const MixedElement& x) {
    auto src = unflatten(m, t.cols(), x);
    std::vector<MixedElement> dst(static_cast<size_t>(t.rows()), mixed_zero(m));
    for (long i = 0; i < t.rows(); ++i)
        for (long j = 0; j < t.cols(); ++j) {
            if (t.at(i, j) == 0) continue;
            dst[static_cast<size_t>(i)] =
                mixed_add(m, dst[static_cast<size_t>(i)], mixed_scale(m, t.at(i, j), src[static_cast<size_t>(j)]));
        }
    return flatten(m, dst);
}

MixedElement apply_mixed(const MixedMap& f, const IntVec& x) {
    MixedElement y = mixed_zero(f.target);
    for (size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) continue;
        y = mixed_add(f.target, y, mixed_scale(f.target, x[j], f.images[j]));
    }
    return y;
}

MixedMap make_mixed_map(const FPModule& source, const MixedModule& target, std::vector<MixedElement> images) {
    if (source.ring.modular()) throw PreconditionFailure("make_mixed_map: source must live over Z");
    if (static_cast<long>(images.size()) != source.gens) throw Error("make_mixed_map: one image per generator required");
    MixedMap f{source, target, std::move(images)};
    for (long j = 0; j < source.rel.cols(); ++j) {
        if (!mixed_elem_is_zero(target, apply_mixed(f, source.rel.col(j))))
            throw NotWellDefined("make_mixed_map: relation " + std::to_string(j) + " is not sent to zero");
    }
    return f;
}

namespace {

// Reduce the equation sum_j x_j * images[j] = y in a mixed module to an
// integer linear system.  Divisible components are handled by clearing
// denominators: a Q-coordinate gives an exact equation, a Q/Z-coordinate a
// congruence mod the denominator lcm, a Pruefer p-coordinate a congruence
// mod the covering p-power.  Auxiliary columns encode the congruences and
// the relation lattice of the finitely generated part.
struct MixedSystem {
    IntMatrix a;  // rows x (gens + aux)
    IntVec rhs;
    long gens;
};

MixedSystem assemble_mixed_system(const MixedModule& target, const std::vector<MixedElement>& images,
                                  const MixedElement& y) {
    long g = static_cast<long>(images.size());
    long fgr = target.fg.gens;
    long rows = fgr + target.q_rank + target.qmodz_rank + static_cast<long>(target.pruefer.size());
    std::vector<std::pair<long, Int>> aux;  // (row, modulus)
    IntMatrix base(rows, g);
    IntVec rhs(static_cast<size_t>(rows));
    long r = 0;
    for (long t = 0; t < fgr; ++t, ++r) {
        for (long j = 0; j < g; ++j) base.at(r, j) = images[static_cast<size_t>(j)].fg[static_cast<size_t>(t)];
        rhs[static_cast<size_t>(r)] = y.fg[static_cast<size_t>(t)];
    }
    auto scaled_row = [&](auto getter, long t, long row, const Int& scale) {
        for (long j = 0; j < g; ++j)
            base.at(row, j) = int_part_of_scaled(getter(images[static_cast<size_t>(j)], t), scale);
        rhs[static_cast<size_t>(row)] = int_part_of_scaled(getter(y, t), scale);
    };
    auto den_lcm = [&](auto getter, long t) {
        Int l = getter(y, t).get_den();
        for (long j = 0; j < g; ++j) l = lcm(l, getter(images[static_cast<size_t>(j)], t).get_den());
        return l;
    };
    auto get_q = [](const MixedElement& e, long t) { return e.q[static_cast<size_t>(t)]; };
    auto get_qz = [](const MixedElement& e, long t) { return e.qmodz[static_cast<size_t>(t)]; };
    auto get_pr = [](const MixedElement& e, long t) { return e.pruefer[static_cast<size_t>(t)]; };
    for (long t = 0; t < target.q_rank; ++t, ++r) scaled_row(get_q, t, r, den_lcm(get_q, t));
    for (long t = 0; t < target.qmodz_rank; ++t, ++r) {
        Int l = den_lcm(get_qz, t);
        scaled_row(get_qz, t, r, l);
        if (l != 1) aux.emplace_back(r, l);
    }
    for (long t = 0; t < static_cast<long>(target.pruefer.size()); ++t, ++r) {
        Int l = den_lcm(get_pr, t);
        scaled_row(get_pr, t, r, l);
        if (l != 1) aux.emplace_back(r, l);
    }
    // Congruence columns, then the relation lattice of the fg part.
    IntMatrix auxm(rows, static_cast<long>(aux.size()));
    for (long c = 0; c < auxm.cols(); ++c) auxm.at(aux[static_cast<size_t>(c)].first, c) = aux[static_cast<size_t>(c)].second;
    IntMatrix fgrel = target.fg.rel_full();
    IntMatrix fgblock(rows, fgrel.cols());
    for (long i = 0; i < fgr; ++i)
        for (long j = 0; j < fgrel.cols(); ++j) fgblock.at(i, j) = fgrel.at(i, j);
    return MixedSystem{hstack(hstack(base, auxm), fgblock), rhs, g};
}

}  // namespace

std::optional<IntVec> solve_mixed(const MixedMap& f, const MixedElement& y) {
    MixedSystem s = assemble_mixed_system(f.target, f.images, y);
    auto z = solve(s.a, s.rhs);
    if (!z) return std::nullopt;
    z->resize(static_cast<size_t>(s.gens));
    return z;
}

SubQuotient kernel_into_mixed(const MixedMap& f) {
    MixedSystem s = assemble_mixed_system(f.target, f.images, mixed_zero(f.target));
    IntMatrix k = kernel_basis(s.a);
    IntMatrix kgen = lattice_column_basis(submatrix_rows(k, 0, s.gens));
    IntMatrix krel = preimage_lattice(kgen, f.source);
    FPModule km = make_module(f.source.ring, kgen.cols(), krel);
    return SubQuotient{km, ModuleMap{km, f.source, kgen}};
}

bool mixed_map_is_monic(const MixedMap& f) { return is_zero_module(kernel_into_mixed(f).module); }

// --------------------------------------------------------------------------
// Envelopes over Z.
// --------------------------------------------------------------------------

EnvelopeZ envelope_z(const FPModule& b) {
    if (b.ring.modular()) throw PreconditionFailure("envelope_z: ring must be Z");
    SmithDecomposition d = smith_normal_form(b.rel);
    long nd = static_cast<long>(d.diag.size());
    std::vector<long> free_idx;
    struct Piece {
        long idx;
        Int pk;
    };
    std::vector<Piece> pieces;
    std::vector<Int> primes;
    for (long i = 0; i < b.gens; ++i) {
        Int di = (i < nd) ? d.diag[static_cast<size_t>(i)] : Int(0);
        if (di == 0) {
            free_idx.push_back(i);
        } else if (di > 1) {
            for (const auto& [p, k] : factorize(di)) {
                Int pk = 1;
                for (long v = 0; v < k; ++v) pk *= p;
                pieces.push_back({i, pk});
                primes.push_back(p);
            }
        }
    }
    EnvelopeZ e;
    e.base = b;
    e.env = MixedModule{zero_module(ring_Z()), static_cast<long>(free_idx.size()), 0, primes};
    e.cosyz = MixedModule{zero_module(ring_Z()), 0, static_cast<long>(free_idx.size()), primes};
    for (const auto& pc : pieces) e.scale.push_back(pc.pk);
    std::vector<MixedElement> images;
    for (long j = 0; j < b.gens; ++j) {
        MixedElement x = mixed_zero(e.env);
        for (size_t c = 0; c < free_idx.size(); ++c) x.q[c] = Rat(d.U.at(free_idx[c], j));
        for (size_t t = 0; t < pieces.size(); ++t) x.pruefer[t] = frac(Rat(d.U.at(pieces[t].idx, j)) / Rat(pieces[t].pk));
        images.push_back(x);
    }
    e.emb = make_mixed_map(b, e.env, std::move(images));
    if (!mixed_map_is_monic(e.emb)) throw Error("internal: envelope embedding is not monic");
    return e;
}

MixedElement envq_apply(const EnvelopeZ& e, long n, const MixedElement& x) {
    auto v = unflatten(e.env, n, x);
    std::vector<MixedElement> out;
    for (const auto& c : v) {
        MixedElement y = mixed_zero(e.cosyz);
        for (long t = 0; t < e.env.q_rank; ++t) y.qmodz[static_cast<size_t>(t)] = frac(c.q[static_cast<size_t>(t)]);
        for (size_t t = 0; t < e.scale.size(); ++t) y.pruefer[t] = frac(c.pruefer[t] * Rat(e.scale[t]));
        out.push_back(y);
    }
    return flatten(e.cosyz, out);
}

MixedElement envq_section(const EnvelopeZ& e, long n, const MixedElement& y) {
    MixedElement yc = mixed_canonical(power_mixed(e.cosyz, n), y);
    auto v = unflatten(e.cosyz, n, yc);
    std::vector<MixedElement> out;
    for (const auto& c : v) {
        MixedElement x = mixed_zero(e.env);
        for (long t = 0; t < e.env.q_rank; ++t) x.q[static_cast<size_t>(t)] = c.qmodz[static_cast<size_t>(t)];
        for (size_t t = 0; t < e.scale.size(); ++t) {
            Rat r = c.pruefer[t] / Rat(e.scale[t]);
            r.canonicalize();
            x.pruefer[t] = r;
        }
        out.push_back(x);
    }
    return flatten(e.env, out);
}

// --------------------------------------------------------------------------
// Kernels of integer matrices acting on powers of a mixed module.
// --------------------------------------------------------------------------

MixedKernel mixed_matrix_kernel(const IntMatrix& t, const MixedModule& m) {
    long a = t.cols();
    MixedModule pa = power_mixed(m, a);
    SmithDecomposition d = smith_normal_form(t);
    long rank = 0;
    for (const auto& di : d.diag)
        if (di != 0) ++rank;
    bool full_col_rank = (rank == a);
    if (!full_col_rank && (m.q_rank > 0 || m.qmodz_rank > 0 || !m.pruefer.empty()))
        throw InfiniteModule("mixed_matrix_kernel: divisible part contributes an infinite kernel");

    std::vector<MixedElement> gens;
    std::vector<Int> orders;  // 0 = no cyclic relation recorded for this generator
    FPModule fg_kernel = zero_module(ring_Z());
    if (m.fg.gens > 0) {
        FPModule src = tensor(free_module(ring_Z(), a), m.fg);
        FPModule dst = tensor(free_module(ring_Z(), t.rows()), m.fg);
        ModuleMap tm{src, dst, kron(t, IntMatrix::identity(m.fg.gens))};
        auto k = kernel(tm);
        fg_kernel = k.module;
        for (long j = 0; j < k.module.gens; ++j) {
            MixedElement x = mixed_zero(pa);
            x.fg = k.map.matrix.col(j);
            gens.push_back(x);
            orders.push_back(0);
        }
    }
    // Divisible contributions per diagonal entry of the Smith form: the
    // kernel of diag(d) on Q/Z is (1/d)Z/Z and on the p-Pruefer group the
    // p-part of that.
    for (long i = 0; i < a; ++i) {
        Int di = d.diag[static_cast<size_t>(i)];
        if (di <= 1) continue;
        IntVec col = d.V.col(i);
        for (long c = 0; c < m.qmodz_rank; ++c) {
            MixedElement x = mixed_zero(pa);
            for (long j = 0; j < a; ++j)
                x.qmodz[static_cast<size_t>(j * m.qmodz_rank + c)] = frac(Rat(col[static_cast<size_t>(j)]) / Rat(di));
            gens.push_back(x);
            orders.push_back(di);
        }
        long np = static_cast<long>(m.pruefer.size());
        for (long c = 0; c < np; ++c) {
            Int p = m.pruefer[static_cast<size_t>(c)];
            long v = valuation(di, p);
            if (v == 0) continue;
            Int pv = 1;
            for (long w = 0; w < v; ++w) pv *= p;
            MixedElement x = mixed_zero(pa);
            for (long j = 0; j < a; ++j)
                x.pruefer[static_cast<size_t>(j * np + c)] = frac(Rat(col[static_cast<size_t>(j)]) / Rat(pv));
            gens.push_back(x);
            orders.push_back(pv);
        }
    }
    long n = static_cast<long>(gens.size());
    long fgn = fg_kernel.gens;
    // Presentation: the fg kernel keeps its own relations, each divisible
    // generator is cyclic of the recorded order, and the two parts are
    // independent.
    std::vector<IntVec> rels;
    for (long j = 0; j < fg_kernel.rel.cols(); ++j) {
        IntVec r = zero_vec(n);
        for (long i = 0; i < fgn; ++i) r[static_cast<size_t>(i)] = fg_kernel.rel.at(i, j);
        rels.push_back(r);
    }
    for (long i = fgn; i < n; ++i) {
        IntVec r = zero_vec(n);
        r[static_cast<size_t>(i)] = orders[static_cast<size_t>(i)];
        rels.push_back(r);
    }
    FPModule km = make_module(ring_Z(), n, from_cols(n, rels));
    MixedMap gm = make_mixed_map(km, pa, std::move(gens));
    return MixedKernel{km, gm};
}

}  // namespace tenstab
