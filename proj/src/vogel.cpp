#include "tenstab/vogel.hpp"

#include <numeric>

namespace tenstab {

namespace {

IntVec scale_vec(const IntVec& v, int s) {
    IntVec out = v;
    if (s < 0)
        for (auto& c : out) c = -c;
    return out;
}

IntVec concat_vec(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

long chain_index_m(long j, long n) { return j - n - 1; }  // hull level of P_j (x) I^m

FPModule chain_stage(StabSystem& sys, long j, long n) {
    return tensor(sys.P().p(j), sys.I().i(chain_index_m(j, n)));
}

// d_P restricted to the stage: P_j (x) I^m -> P_{j-1} (x) I^m.
ModuleMap d_p(StabSystem& sys, long j, long n) {
    return tensor_map(sys.P().diff(j), identity_map(sys.I().i(chain_index_m(j, n))));
}

// d_I restricted to the stage: P_j (x) I^m -> P_j (x) I^{m+1}.
ModuleMap d_i(StabSystem& sys, long j, long n) {
    return tensor_map(identity_map(sys.P().p(j)), sys.I().diff(chain_index_m(j, n)));
}

// the epi P_j (x) I^{j-n-1} ->> Omega^j A (x) Sigma^{j-n} B
ModuleMap onto_stage(StabSystem& sys, long j, long n) {
    long m = chain_index_m(j, n);
    ModuleMap down = tensor_map(sys.P().aug(j), identity_map(sys.I().i(m)));
    ModuleMap out = tensor_map(identity_map(sys.P().syzygy(j)), sys.I().proj(m));
    return compose(out, down);
}

int confluence_sign(long j) { return j % 2 == 0 ? -1 : 1; }  // (-1)^{j+1}

// d_I(s_j) = (-1)^{j+1} d_P(s_{j+1}), compared inside P_j (x) I^{j-n}
bool relation_holds(StabSystem& sys, const VogelChain& s, long t) {
    long j = s.first + t;
    ModuleMap di = d_i(sys, j, s.degree);
    ModuleMap dp = d_p(sys, j + 1, s.degree);
    IntVec lhs = tenstab::apply(di, s.components[static_cast<size_t>(t)]);
    IntVec rhs = scale_vec(tenstab::apply(dp, s.components[static_cast<size_t>(t + 1)]),
                           confluence_sign(j));
    return elements_equal(di.target, lhs, rhs);
}

// stage presentations and boundary matrices repeat when shifting by p
bool chain_stage_repeats(StabSystem& sys, long j, long n, long p) {
    return chain_stage(sys, j, n) == chain_stage(sys, j + p, n) &&
           d_p(sys, j, n).matrix == d_p(sys, j + p, n).matrix &&
           d_i(sys, j, n).matrix == d_i(sys, j + p, n).matrix &&
           onto_stage(sys, j, n).matrix == onto_stage(sys, j + p, n).matrix;
}

SubQuotient stage_of(StabSystem& sys, const CoherentSequence& phi, long t) {
    long k = phi.start_k + t;
    return sys.stab(k + phi.degree, k);
}

}  // namespace

CycleReport check_cycle(StabSystem& sys, const VogelChain& s) {
    long count = static_cast<long>(s.components.size());
    if (count == 0) return CycleReport{true, s.first};
    long last_fail = -1;  // offset t of the last failing relation
    for (long t = 0; t + 1 < count; ++t)
        if (!relation_holds(sys, s, t)) last_fail = t;
    long k = s.first + last_fail + 1;
    switch (s.tail.kind) {
        case VogelTail::Zero: {
            // beyond the window the relations degenerate to d_I(s_last) = 0
            ModuleMap di = d_i(sys, s.first + count - 1, s.degree);
            bool closed = element_is_zero(
                di.target, tenstab::apply(di, s.components[static_cast<size_t>(count - 1)]));
            if (!closed) k = s.first + count;  // confluent only above the window
            return CycleReport{true, k};
        }
        case VogelTail::Periodic: {
            long p = s.tail.period;
            if (p <= 0 || p % 2 != 0) return CycleReport{false, k};
            if (s.tail.prefix + 2 * p > count) return CycleReport{false, k};
            for (long t = s.tail.prefix; t + p < count; ++t) {
                if (!(s.components[static_cast<size_t>(t)] == s.components[static_cast<size_t>(t + p)]))
                    return CycleReport{false, k};
                if (!chain_stage_repeats(sys, s.first + t, s.degree, p)) return CycleReport{false, k};
            }
            // relations verified across one full period extend forever
            bool ok = last_fail + 1 <= s.tail.prefix && s.tail.prefix + p + 1 < count;
            return CycleReport{ok, k};
        }
        case VogelTail::Window:
            return CycleReport{last_fail + 2 < count, k};
    }
    return CycleReport{false, k};
}

bool is_coherent(StabSystem& sys, const CoherentSequence& phi) {
    long count = static_cast<long>(phi.entries.size());
    for (long t = 0; t + 1 < count; ++t) {
        long k = phi.start_k + t + 1;
        ModuleMap d = sys.structure_delta(k + phi.degree, k);
        if (!elements_equal(d.target, tenstab::apply(d, phi.entries[static_cast<size_t>(t + 1)]),
                            phi.entries[static_cast<size_t>(t)]))
            return false;
    }
    if (phi.tail.kind == VogelTail::Periodic) {
        long p = phi.tail.period;
        if (p <= 0 || phi.tail.prefix + p >= count) return false;
        for (long t = phi.tail.prefix; t + p < count; ++t) {
            if (!(stage_of(sys, phi, t).module == stage_of(sys, phi, t + p).module)) return false;
            if (!(phi.entries[static_cast<size_t>(t)] == phi.entries[static_cast<size_t>(t + p)]))
                return false;
        }
    }
    return true;
}

CoherentSequence project_kappa(StabSystem& sys, const VogelChain& s) {
    CycleReport rep = check_cycle(sys, s);
    if (!rep.is_cycle) throw ChaseFailure("projection applied to a chain that is not a cycle");
    long n = s.degree;
    long count = static_cast<long>(s.components.size());
    long jmax = s.first + count - 1;
    CoherentSequence phi;
    phi.degree = n;
    phi.start_k = std::max(0L, -n);
    long jtop = jmax - 1;  // the chase at j consumes s_{j+1}
    if (jtop < rep.confluence) throw ChaseFailure("window too short for any chase above confluence");
    std::vector<IntVec> upper;  // entries at cosyzygy indices [confluence-n .. jtop-n]
    for (long j = rep.confluence; j <= jtop; ++j) {
        long m = j - n;
        IntVec bullet = tenstab::apply(d_p(sys, j + 1, n),
                                       s.components[static_cast<size_t>(j + 1 - s.first)]);
        // pull back through the hull embedding of the cosyzygy
        ModuleMap pull = tensor_map(identity_map(sys.P().p(j)), sys.I().emb(m));
        auto box = solve_map(pull, bullet);
        if (!box) throw ChaseFailure("boundary does not pull back through the hull embedding");
        // push down along the augmentation and land in the stabilization
        ModuleMap down = tensor_map(sys.P().aug(j), identity_map(sys.I().cosyzygy(m)));
        auto w = solve_map(sys.stab(j, m).map, tenstab::apply(down, *box));
        if (!w) throw ChaseFailure("chased element escapes the stabilized tensor");
        // the mod-4 sign rule, anchored on the absolute index so that it
        // matches the alternating signs of the boundary relations
        long i4 = ((j % 4) + 4) % 4;
        upper.push_back(scale_vec(*w, (i4 == 0 || i4 == 1) ? 1 : -1));
    }
    // extend downward, applying the structure maps
    long klow = rep.confluence - n;
    std::vector<IntVec> lower;
    IntVec cur = upper.front();
    for (long k = klow; k > phi.start_k; --k) {
        cur = tenstab::apply(sys.structure_delta(k + n, k), cur);
        lower.push_back(cur);
    }
    for (auto it = lower.rbegin(); it != lower.rend(); ++it) phi.entries.push_back(*it);
    for (auto& e : upper) phi.entries.push_back(e);
    // tail: literal repetition of the computed entries, period a multiple of 4
    phi.tail = VogelTail{VogelTail::Window, 0, 0};
    if (s.tail.kind == VogelTail::Zero) {
        bool top_zero = element_is_zero(
            stage_of(sys, phi, static_cast<long>(phi.entries.size()) - 1).module, phi.entries.back());
        if (top_zero) phi.tail = VogelTail{VogelTail::Zero, 0, 0};
    } else if (s.tail.kind == VogelTail::Periodic) {
        long p = std::lcm(s.tail.period, 4L);
        long total = static_cast<long>(phi.entries.size());
        long t0 = klow - phi.start_k + std::max(0L, s.tail.prefix - (rep.confluence - s.first));
        bool ok = t0 >= 0 && t0 + p < total;
        for (long t = t0; ok && t + p < total; ++t)
            ok = stage_of(sys, phi, t).module == stage_of(sys, phi, t + p).module &&
                 phi.entries[static_cast<size_t>(t)] == phi.entries[static_cast<size_t>(t + p)];
        if (ok) phi.tail = VogelTail{VogelTail::Periodic, t0, p};
    }
    if (!is_coherent(sys, phi)) throw ChaseFailure("projected sequence failed the coherence check");
    return phi;
}

VogelChain lift_surjectivity(StabSystem& sys, const CoherentSequence& phi, long horizon) {
    if (!is_coherent(sys, phi)) throw PreconditionFailure("lift requires a coherent sequence");
    long n = phi.degree;
    VogelChain s;
    s.degree = n;
    s.first = std::max(1L, n + 1);
    long jmax = horizon;
    if (jmax < s.first) throw PreconditionFailure("horizon below the first chain index");
    auto entry_at = [&](long k) -> IntVec {
        long t = k - phi.start_k;
        if (t < 0 || t >= static_cast<long>(phi.entries.size()))
            throw PreconditionFailure("coherent sequence does not cover the requested window");
        return phi.entries[static_cast<size_t>(t)];
    };
    auto sigma = [](long j) { return (j % 4 == 1 || j % 4 == 2) ? 1 : -1; };
    for (long j = s.first; j <= jmax; ++j) {
        long k = j - n;
        ModuleMap onto = onto_stage(sys, j, n);
        IntVec target = scale_vec(tenstab::apply(sys.stab(j, k).map, entry_at(k)), sigma(j));
        if (j == s.first) {
            auto x = solve_map(onto, target);
            if (!x) throw ChaseFailure("initial stage of the lift is unsolvable");
            s.components.push_back(*x);
            continue;
        }
        // one linear system: map onto the signed entry AND match the
        // boundary of the previous component
        ModuleMap dp = d_p(sys, j, n);
        SumData sum = direct_sum(onto.target, dp.target);
        ModuleMap both = make_map(onto.source, sum.module, vstack(onto.matrix, dp.matrix));
        IntVec want = scale_vec(
            tenstab::apply(d_i(sys, j - 1, n), s.components[static_cast<size_t>(j - 1 - s.first)]),
            j % 2 == 0 ? 1 : -1);  // d_P(s_j) = (-1)^j d_I(s_{j-1})
        auto x = solve_map(both, concat_vec(target, want));
        if (!x)
            throw ChaseFailure("lift correction unsolvable at stage " + std::to_string(j) +
                               "; this would contradict the surjectivity argument");
        s.components.push_back(*x);
    }
    // certify a periodic tail by state repetition: the recurrence for s_{j+1}
    // is deterministic, so once the stage data, the entry and the component
    // repeat (with the sign phase, period a multiple of 4), they repeat forever
    s.tail = VogelTail{VogelTail::Window, 0, 0};
    if (phi.tail.kind == VogelTail::Periodic && phi.tail.period > 0) {
        long p = std::lcm(phi.tail.period, 4L);
        long count = static_cast<long>(s.components.size());
        for (long t0 = 0; t0 + 2 * p <= count - 1; ++t0) {
            bool ok = true;
            for (long t = t0; ok && t + p < count; ++t)
                ok = s.components[static_cast<size_t>(t)] == s.components[static_cast<size_t>(t + p)] &&
                     chain_stage_repeats(sys, s.first + t, n, p);
            if (ok) {
                s.tail = VogelTail{VogelTail::Periodic, t0, p};
                break;
            }
        }
    }
    return s;
}

CoherentSequence coherent_from_stage(StabSystem& sys, long degree, long stage_k, const IntVec& coords,
                                     long top_k) {
    CoherentSequence phi;
    phi.degree = degree;
    phi.start_k = std::max(0L, -degree);
    if (stage_k < phi.start_k || top_k < stage_k)
        throw PreconditionFailure("stage indices out of range");
    std::vector<IntVec> down;
    IntVec cur = coords;
    for (long k = stage_k; k > phi.start_k; --k) {
        cur = tenstab::apply(sys.structure_delta(k + degree, k), cur);
        down.push_back(cur);
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) phi.entries.push_back(*it);
    phi.entries.push_back(coords);
    cur = coords;
    for (long k = stage_k + 1; k <= top_k; ++k) {
        ModuleMap d = sys.structure_delta(k + degree, k);
        if (!is_iso(d))
            throw PreconditionFailure("upward extension requires invertible structure maps");
        auto x = solve_map(d, cur);
        if (!x) throw ChaseFailure("upward extension failed");
        cur = *x;
        phi.entries.push_back(cur);
    }
    // detect a literal repetition, normalized to a multiple of 4
    phi.tail = VogelTail{VogelTail::Window, 0, 0};
    long total = static_cast<long>(phi.entries.size());
    for (long p = 4; 2 * p <= total - 1; p += 4) {
        for (long t0 = 0; t0 + 2 * p <= total - 1; ++t0) {
            bool ok = true;
            for (long t = t0; ok && t + p < total; ++t)
                ok = stage_of(sys, phi, t).module == stage_of(sys, phi, t + p).module &&
                     phi.entries[static_cast<size_t>(t)] == phi.entries[static_cast<size_t>(t + p)];
            if (ok) {
                phi.tail = VogelTail{VogelTail::Periodic, t0, p};
                return phi;
            }
        }
    }
    return phi;
}

VogelChain chain_add(const VogelChain& a, const VogelChain& b) {
    if (a.degree != b.degree || a.first != b.first || a.components.size() != b.components.size())
        throw PreconditionFailure("chains live on different windows");
    VogelChain out = a;
    for (size_t t = 0; t < out.components.size(); ++t) {
        if (a.components[t].size() != b.components[t].size())
            throw PreconditionFailure("component shapes differ");
        for (size_t c = 0; c < out.components[t].size(); ++c)
            out.components[t][c] = a.components[t][c] + b.components[t][c];
    }
    if (!(a.tail.kind == b.tail.kind && a.tail.prefix == b.tail.prefix &&
          a.tail.period == b.tail.period))
        out.tail = VogelTail{VogelTail::Window, 0, 0};
    return out;
}

CoherentSequence sequence_add(const CoherentSequence& a, const CoherentSequence& b) {
    if (a.degree != b.degree || a.start_k != b.start_k || a.entries.size() != b.entries.size())
        throw PreconditionFailure("sequences live on different windows");
    CoherentSequence out = a;
    for (size_t t = 0; t < out.entries.size(); ++t) {
        if (a.entries[t].size() != b.entries[t].size())
            throw PreconditionFailure("entry shapes differ");
        for (size_t c = 0; c < out.entries[t].size(); ++c)
            out.entries[t][c] = a.entries[t][c] + b.entries[t][c];
    }
    if (!(a.tail.kind == b.tail.kind && a.tail.prefix == b.tail.prefix &&
          a.tail.period == b.tail.period))
        out.tail = VogelTail{VogelTail::Window, 0, 0};
    return out;
}

bool sequences_equal(StabSystem& sys, const CoherentSequence& a, const CoherentSequence& b) {
    if (a.degree != b.degree) return false;
    long lo = std::max(a.start_k, b.start_k);
    long hi = std::min(a.start_k + static_cast<long>(a.entries.size()),
                       b.start_k + static_cast<long>(b.entries.size())) -
              1;
    if (hi < lo) return false;
    for (long k = lo; k <= hi; ++k) {
        SubQuotient st = sys.stab(k + a.degree, k);
        if (!elements_equal(st.module, a.entries[static_cast<size_t>(k - a.start_k)],
                            b.entries[static_cast<size_t>(k - b.start_k)]))
            return false;
    }
    return true;
}

IntVec lambda_evaluation(StabSystem& sys, const CoherentSequence& phi) {
    long k = std::max(phi.start_k, 1 - phi.degree);
    long t = k - phi.start_k;
    if (t >= static_cast<long>(phi.entries.size()))
        throw PreconditionFailure("sequence window does not reach a Tor stage");
    ModuleMap ne = sys.northeast(k + phi.degree, k);
    return tenstab::apply(ne, phi.entries[static_cast<size_t>(t)]);
}

}  // namespace tenstab
