#include "tenstab/resolution.hpp"

namespace tenstab {

void certify_ses(const SES& s) {
    if (!(s.f.target == s.g.source)) throw PreconditionFailure("certify_ses: middle modules differ");
    if (!is_monic(s.f)) throw NotExact("certify_ses: left map is not monic");
    if (!is_epic(s.g)) throw NotExact("certify_ses: right map is not epic");
    if (!is_zero_map(compose(s.g, s.f))) throw NotExact("certify_ses: composite is not zero");
    auto k = kernel(s.g);
    for (long j = 0; j < k.module.gens; ++j)
        if (!solve_map(s.f, k.map.matrix.col(j)).has_value())
            throw NotExact("certify_ses: kernel of the right map is not covered by the left map");
}

SES ses_from_map(const ModuleMap& g) {
    auto im = image(g);
    auto c = cokernel(im.into_target);
    return SES{im.into_target, c.map};
}

// ---------------------------------------------------------------------------
// Free resolutions.
// ---------------------------------------------------------------------------

struct ProjResolution::State {
    std::mutex mu;
    FPModule base;
    std::vector<FPModule> frees;      // P_k
    std::vector<FPModule> syzygies;   // Omega^k; [0] = base
    std::vector<ModuleMap> incls;     // incls[k] : Omega^{k+1} -> P_k
};

ProjResolution::ProjResolution(FPModule a) : st_(std::make_shared<State>()) {
    st_->base = std::move(a);
    st_->syzygies.push_back(st_->base);
}

const FPModule& ProjResolution::base() const { return st_->base; }

void ProjResolution::extend(long k) {
    std::lock_guard<std::mutex> lock(st_->mu);
    while (static_cast<long>(st_->frees.size()) <= k) {
        const FPModule& om = st_->syzygies.back();
        FPModule p = free_module(om.ring, om.gens);
        // ker(P_k ->> Omega^k) is the full relation lattice of Omega^k.
        IntMatrix kgen = preimage_lattice(IntMatrix::identity(om.gens), om);
        IntMatrix krel = preimage_lattice(kgen, p);
        FPModule next = make_module(om.ring, kgen.cols(), krel);
        st_->frees.push_back(p);
        st_->syzygies.push_back(next);
        st_->incls.push_back(ModuleMap{next, p, kgen});
    }
}

FPModule ProjResolution::p(long k) {
    extend(k);
    return st_->frees[static_cast<size_t>(k)];
}

FPModule ProjResolution::syzygy(long k) {
    extend(k);
    return st_->syzygies[static_cast<size_t>(k)];
}

ModuleMap ProjResolution::aug(long k) {
    extend(k);
    return ModuleMap{st_->frees[static_cast<size_t>(k)], st_->syzygies[static_cast<size_t>(k)],
                     IntMatrix::identity(st_->syzygies[static_cast<size_t>(k)].gens)};
}

ModuleMap ProjResolution::incl(long k) {
    if (k < 1) throw PreconditionFailure("ProjResolution::incl: k must be >= 1");
    extend(k);
    return st_->incls[static_cast<size_t>(k - 1)];
}

ModuleMap ProjResolution::diff(long k) {
    if (k < 1) throw PreconditionFailure("ProjResolution::diff: k must be >= 1");
    return compose(incl(k), aug(k));
}

std::optional<std::pair<long, long>> ProjResolution::periodicity(long probe_depth) {
    for (long pre = 1; pre < probe_depth; ++pre)
        for (long per = 1; pre + per <= probe_depth; ++per)
            if (syzygy(pre) == syzygy(pre + per) && incl(pre).matrix == incl(pre + per).matrix)
                return std::make_pair(pre, per);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Injective resolutions over Z/m.
// ---------------------------------------------------------------------------

struct InjResolution::State {
    std::mutex mu;
    FPModule base;
    std::vector<FPModule> injs;        // I^k
    std::vector<FPModule> cosyzygies;  // Sigma^k; [0] = base
    std::vector<ModuleMap> embs;       // embs[k] : Sigma^k -> I^k
};

InjResolution::InjResolution(FPModule b) : st_(std::make_shared<State>()) {
    if (!b.ring.modular()) throw PreconditionFailure("InjResolution: ring must be Z/m");
    st_->base = std::move(b);
    st_->cosyzygies.push_back(st_->base);
}

const FPModule& InjResolution::base() const { return st_->base; }

void InjResolution::extend(long k) {
    std::lock_guard<std::mutex> lock(st_->mu);
    while (static_cast<long>(st_->injs.size()) <= k) {
        const FPModule& sig = st_->cosyzygies.back();
        Envelope e = injective_envelope_mod(sig);
        FPModule next = cokernel(e.emb).module;
        st_->injs.push_back(e.env);
        st_->embs.push_back(e.emb);
        st_->cosyzygies.push_back(next);
    }
}

FPModule InjResolution::i(long k) {
    extend(k);
    return st_->injs[static_cast<size_t>(k)];
}

FPModule InjResolution::cosyzygy(long k) {
    extend(k > 0 ? k - 1 : 0);
    return st_->cosyzygies[static_cast<size_t>(k)];
}

ModuleMap InjResolution::emb(long k) {
    extend(k);
    return st_->embs[static_cast<size_t>(k)];
}

ModuleMap InjResolution::proj(long k) {
    extend(k);
    // Sigma^{k+1} is literally coker(emb_k), presented on the generators of
    // I^k, so the projection matrix is the identity.
    return ModuleMap{st_->injs[static_cast<size_t>(k)], st_->cosyzygies[static_cast<size_t>(k + 1)],
                     IntMatrix::identity(st_->injs[static_cast<size_t>(k)].gens)};
}

ModuleMap InjResolution::diff(long k) { return compose(emb(k + 1), proj(k)); }

std::optional<std::pair<long, long>> InjResolution::periodicity(long probe_depth) {
    for (long pre = 1; pre < probe_depth; ++pre)
        for (long per = 1; pre + per <= probe_depth; ++per)
            if (cosyzygy(pre) == cosyzygy(pre + per) && emb(pre).matrix == emb(pre + per).matrix)
                return std::make_pair(pre, per);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Comparison lifts and injectivity extensions.
// ---------------------------------------------------------------------------

std::vector<ModuleMap> lift_map(const ModuleMap& f, ProjResolution& ra, ProjResolution& rb, long length) {
    if (!(ra.base() == f.source) || !(rb.base() == f.target))
        throw PreconditionFailure("lift_map: resolutions do not match the map");
    std::vector<ModuleMap> lifts;
    for (long k = 0; k <= length; ++k) {
        FPModule pa = ra.p(k), pb = rb.p(k);
        IntMatrix cols(pb.gens, pa.gens);
        for (long j = 0; j < pa.gens; ++j) {
            IntVec target_elem;
            std::optional<IntVec> sol;
            if (k == 0) {
                target_elem = tenstab::apply(f, tenstab::apply(ra.aug(0), unit_vec(pa.gens, j)));
                sol = solve_map(rb.aug(0), target_elem);
            } else {
                target_elem = tenstab::apply(lifts.back(), tenstab::apply(ra.diff(k), unit_vec(pa.gens, j)));
                // Solve d_k(B) y = target strictly in the free module P_{k-1}(B):
                // solvable because target lies in the image of the syzygy.
                ModuleMap db = rb.diff(k);
                sol = solve_map(db, target_elem);
            }
            if (!sol) throw ChaseFailure("lift_map: comparison lift failed at level " + std::to_string(k));
            cols.set_col(j, *sol);
        }
        lifts.push_back(ModuleMap{pa, pb, cols});
    }
    return lifts;
}

ModuleMap extend_along(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.source == g.source)) throw PreconditionFailure("extend_along: sources differ");
    const FPModule& m = f.target;
    const FPModule& n = g.target;
    long nh = n.gens * m.gens;  // unknown entries of h, column-major
    // h * f.matrix = g.matrix  modulo the relation lattice of N (one block of
    // auxiliary columns per equation group), and h must kill the relations
    // of M.
    IntMatrix nrel = n.rel_full();
    long ng = f.source.gens + m.rel.cols();
    IntMatrix lhs(ng * n.gens, nh + ng * nrel.cols());
    IntVec rhs(static_cast<size_t>(ng * n.gens));
    auto put_block = [&](long block, const IntVec& mcol) {
        // equations: sum_t h[, t] * mcol[t] = rhs block
        for (long t = 0; t < m.gens; ++t)
            for (long i = 0; i < n.gens; ++i) lhs.at(block * n.gens + i, t * n.gens + i) = mcol[static_cast<size_t>(t)];
        for (long j = 0; j < nrel.cols(); ++j)
            for (long i = 0; i < n.gens; ++i) lhs.at(block * n.gens + i, nh + block * nrel.cols() + j) = nrel.at(i, j);
    };
    long blk = 0;
    for (long j = 0; j < f.source.gens; ++j, ++blk) {
        put_block(blk, f.matrix.col(j));
        IntVec gcol = g.matrix.col(j);
        for (long i = 0; i < n.gens; ++i) rhs[static_cast<size_t>(blk * n.gens + i)] = gcol[static_cast<size_t>(i)];
    }
    for (long j = 0; j < m.rel.cols(); ++j, ++blk) put_block(blk, m.rel.col(j));
    auto sol = solve(lhs, rhs);
    if (!sol) throw ChaseFailure("extend_along: no extension exists (target not injective enough?)");
    IntMatrix h(n.gens, m.gens);
    for (long t = 0; t < m.gens; ++t)
        for (long i = 0; i < n.gens; ++i) h.at(i, t) = (*sol)[static_cast<size_t>(t * n.gens + i)];
    return make_map(m, n, h);
}

// ---------------------------------------------------------------------------
// Horseshoe.
// ---------------------------------------------------------------------------

struct Horseshoe::State {
    std::mutex mu;
    SES base;
    std::vector<HorseshoeLevel> levels;
    SES current;  // the cosyzygy sequence feeding the next level
};

Horseshoe::Horseshoe(SES s) : st_(std::make_shared<State>()) {
    certify_ses(s);
    if (!s.f.source.ring.modular()) throw PreconditionFailure("Horseshoe: ring must be Z/m");
    st_->base = s;
    st_->current = s;
}

const SES& Horseshoe::base() const { return st_->base; }

HorseshoeLevel Horseshoe::level(long k) {
    std::lock_guard<std::mutex> lock(st_->mu);
    while (static_cast<long>(st_->levels.size()) <= k) {
        const SES& cur = st_->current;
        HorseshoeLevel lv;
        lv.sp = cur.f.source;
        lv.s = cur.f.target;
        lv.spp = cur.g.target;
        lv.alpha = cur.f;
        lv.beta = cur.g;
        Envelope ep = injective_envelope_mod(lv.sp);
        Envelope epp = injective_envelope_mod(lv.spp);
        lv.ip = ep.env;
        lv.ipp = epp.env;
        auto sum = direct_sum(ep.env, epp.env);
        lv.imid = sum.module;
        lv.iota = sum.inj1;
        lv.pi = sum.proj2;
        lv.emb_sp = ep.emb;
        lv.emb_spp = epp.emb;
        // Middle embedding: first coordinate extends emb(B') along alpha
        // using injectivity of E(B'), second is emb(B'') after beta.
        ModuleMap h = extend_along(lv.alpha, lv.emb_sp);
        ModuleMap second = compose(lv.emb_spp, lv.beta);
        IntMatrix u = vstack(h.matrix, second.matrix);
        lv.emb_s = make_map(lv.s, lv.imid, u);
        if (!is_monic(lv.emb_s)) throw ChaseFailure("Horseshoe: middle embedding failed to be monic");
        // Next level: induced sequence of cosyzygies.
        auto csp = cokernel(lv.emb_sp);
        auto cs = cokernel(lv.emb_s);
        auto cspp = cokernel(lv.emb_spp);
        ModuleMap a2 = make_map(csp.module, cs.module, lv.iota.matrix);
        ModuleMap b2 = make_map(cs.module, cspp.module, lv.pi.matrix);
        SES next{a2, b2};
        certify_ses(next);
        st_->levels.push_back(lv);
        st_->current = next;
    }
    return st_->levels[static_cast<size_t>(k)];
}

}  // namespace tenstab
