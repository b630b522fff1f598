#include <algorithm>
#include <numeric>

#include "abslog/domain.hpp"

// Down-closed sets of intervals, represented by finitely many generators:
// concrete intervals plus arithmetic singleton progressions
// {[a+dk, a+dk] | k >= 0}. The represented set is the union of the principal
// down-sets of the generators; no generators at all is the lattice bottom.

namespace abslog {

namespace {

constexpr size_t kEnumCap = 4096; // max singletons when a progression is clipped

int64_t pos_mod(int64_t x, int64_t m) { return ((x % m) + m) % m; }

bool gen_leq_gen(const Interval& a, const Interval& b) { return a.subset_of(b); }

bool gen_leq_prog(const Interval& a, const Progression& p) {
    if (a.empty) return true;
    return a.is_singleton() && p.contains(a.lo.v);
}

bool prog_leq_gen(const Progression& p, const Interval& b) {
    return !b.empty && b.hi.kind == Bound::PosInf && !(Bound::of(p.start) < b.lo);
}

bool prog_leq_prog(const Progression& p, const Progression& q) {
    return p.start >= q.start && (p.start - q.start) % q.step == 0 && p.step % q.step == 0;
}

const Interval& as_interval(const Value& v) { return v.interval(); }

} // namespace

DownSet normalize_downset(DownSet d) {
    std::vector<Interval> gens;
    for (const auto& g : d.gens) gens.push_back(as_interval(g));
    std::vector<Progression> progs = d.progs;

    // Dedupe progressions and drop those dominated by another generator.
    std::vector<Progression> keep_p;
    for (size_t i = 0; i < progs.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < progs.size() && !dominated; ++j) {
            if (i == j) continue;
            if (prog_leq_prog(progs[i], progs[j]) &&
                !(prog_leq_prog(progs[j], progs[i]) && j > i))
                dominated = true;
        }
        for (const auto& g : gens)
            if (prog_leq_gen(progs[i], g)) dominated = true;
        if (!dominated) keep_p.push_back(progs[i]);
    }

    std::vector<Interval> keep_g;
    for (size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < gens.size() && !dominated; ++j) {
            if (i == j) continue;
            if (gen_leq_gen(gens[i], gens[j]) && !(gens[i] == gens[j] && j > i))
                dominated = true;
        }
        for (const auto& p : keep_p)
            if (gen_leq_prog(gens[i], p)) dominated = true;
        if (!dominated) keep_g.push_back(gens[i]);
    }

    DownSet out;
    for (const auto& g : keep_g) out.gens.push_back(Value(g));
    out.progs = std::move(keep_p);
    // Canonical generator order for structural equality in tests.
    std::sort(out.gens.begin(), out.gens.end());
    std::sort(out.progs.begin(), out.progs.end(), [](const Progression& a, const Progression& b) {
        return a.start != b.start ? a.start < b.start : a.step < b.step;
    });
    return out;
}

bool downset_leq(const DownSet& a, const DownSet& b) {
    for (const auto& gv : a.gens) {
        const Interval& g = as_interval(gv);
        bool ok = false;
        for (const auto& hv : b.gens)
            if (gen_leq_gen(g, as_interval(hv))) { ok = true; break; }
        for (const auto& q : b.progs)
            if (!ok && gen_leq_prog(g, q)) ok = true;
        if (!ok) return false;
    }
    for (const auto& p : a.progs) {
        bool ok = false;
        for (const auto& hv : b.gens)
            if (prog_leq_gen(p, as_interval(hv))) { ok = true; break; }
        for (const auto& q : b.progs)
            if (!ok && prog_leq_prog(p, q)) ok = true;
        if (!ok) return false;
    }
    return true;
}

DownSet downset_join(const DownSet& a, const DownSet& b) {
    DownSet out = a;
    out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
    out.progs.insert(out.progs.end(), b.progs.begin(), b.progs.end());
    return normalize_downset(std::move(out));
}

DownSet downset_oplus(const DownSet& a, const DownSet& b) {
    // Selection-join of the two down-sets followed by down-closure, computed
    // pairwise on generators.
    DownSet out;
    auto pair_int = [&](const Interval& g, const Interval& h) {
        out.gens.push_back(Value(interval_hull(g, h)));
    };
    auto pair_int_prog = [&](const Interval& g, const Progression& p) {
        if (g.empty) { out.progs.push_back(p); return; }
        throw UnsupportedGeneratorAlgebra(
            "sum of a progression with a non-empty interval generator");
    };
    for (const auto& gv : a.gens) {
        for (const auto& hv : b.gens) pair_int(as_interval(gv), as_interval(hv));
        for (const auto& q : b.progs) pair_int_prog(as_interval(gv), q);
    }
    for (const auto& p : a.progs) {
        for (const auto& hv : b.gens) pair_int_prog(as_interval(hv), p);
        for ([[maybe_unused]] const auto& q : b.progs)
            throw UnsupportedGeneratorAlgebra("sum of two progressions");
    }
    return normalize_downset(std::move(out));
}

DownSet downset_meet(const DownSet& a, const DownSet& b) {
    if ((a.gens.empty() && a.progs.empty()) || (b.gens.empty() && b.progs.empty()))
        return DownSet{};
    DownSet out;
    auto clip_prog = [&](const Progression& p, const Interval& I) {
        if (I.empty) { out.gens.push_back(Value(Interval::make_empty())); return; }
        int64_t start = p.start;
        if (I.lo.finite() && I.lo.v > start) {
            int64_t delta = I.lo.v - start;
            start += ((delta + p.step - 1) / p.step) * p.step;
        }
        if (I.hi.kind == Bound::PosInf) {
            out.progs.push_back(Progression{start, p.step});
            return;
        }
        if (Bound::of(start) <= I.hi) {
            uint64_t n = static_cast<uint64_t>((I.hi.v - start) / p.step) + 1;
            if (n > kEnumCap)
                throw UnsupportedGeneratorAlgebra("progression clip exceeds enumeration cap");
            for (uint64_t k = 0; k < n; ++k)
                out.gens.push_back(Value(Interval::singleton(start + static_cast<int64_t>(k) * p.step)));
        } else {
            out.gens.push_back(Value(Interval::make_empty()));
        }
    };
    auto meet_progs = [&](const Progression& p, const Progression& q) {
        // Common elements: x >= max(starts), x = p.start (mod p.step),
        // x = q.start (mod q.step).
        int64_t g = std::gcd(p.step, q.step);
        if (pos_mod(p.start - q.start, g) != 0) {
            out.gens.push_back(Value(Interval::make_empty()));
            return;
        }
        int64_t l = p.step / g * q.step; // lcm
        // Walk p's elements until one hits q (at most l/p.step steps).
        int64_t x = std::max(p.start, q.start);
        x = p.start + ((x - p.start + p.step - 1) / p.step) * p.step;
        bool found = false;
        for (int64_t i = 0; i <= l / p.step; ++i, x += p.step)
            if (q.contains(x)) { found = true; break; }
        if (found)
            out.progs.push_back(Progression{x, l});
        else
            out.gens.push_back(Value(Interval::make_empty()));
    };
    for (const auto& gv : a.gens) {
        for (const auto& hv : b.gens)
            out.gens.push_back(Value(interval_meet(as_interval(gv), as_interval(hv))));
        for (const auto& q : b.progs) {
            const Interval& g = as_interval(gv);
            // Elements below both: singletons of q inside g (down-sets:
            // down(g) meet down(q) = union of down(g meet [v,v]), v in q).
            if (g.empty) out.gens.push_back(Value(Interval::make_empty()));
            else clip_prog(q, g);
        }
    }
    for (const auto& p : a.progs) {
        for (const auto& hv : b.gens) {
            const Interval& h = as_interval(hv);
            if (h.empty) out.gens.push_back(Value(Interval::make_empty()));
            else clip_prog(p, h);
        }
        for (const auto& q : b.progs) meet_progs(p, q);
    }
    return normalize_downset(std::move(out));
}

DownSet downset_omega(const DownSet& d) {
    if (d.gens.empty() && d.progs.empty()) return DownSet{};
    // The countable sum realizes the join of every non-empty selection; after
    // down-closure a single maximal generator remains: the hull of all
    // per-generator limits (a progression's limit is the ray from its start).
    Interval hull = Interval::make_empty();
    for (const auto& gv : d.gens) hull = interval_hull(hull, as_interval(gv));
    for (const auto& p : d.progs)
        hull = interval_hull(hull, Interval::make(Bound::of(p.start), Bound::pos_inf()));
    DownSet out;
    out.gens.push_back(Value(hull));
    return normalize_downset(std::move(out));
}

namespace {

void transfer_prog(const ElcAtom& e, const Progression& p, DownSet& out) {
    switch (e.kind) {
        case ElcAtom::Kind::Skip:
            out.progs.push_back(p);
            return;
        case ElcAtom::Kind::Diverge:
            return; // handled upstream; contributes nothing
        case ElcAtom::Kind::Assign:
            switch (e.aexp.kind) {
                case AExp::Kind::Var:
                    out.progs.push_back(p);
                    return;
                case AExp::Kind::AddC:
                    out.progs.push_back(Progression{p.start + e.aexp.c, p.step});
                    return;
                case AExp::Kind::SubC:
                    out.progs.push_back(Progression{p.start - e.aexp.c, p.step});
                    return;
                case AExp::Kind::Const:
                case AExp::Kind::Neg:
                    throw UnsupportedGeneratorAlgebra(
                        "assignment does not preserve progression shape");
            }
            return;
        case ElcAtom::Kind::Filter:
            break;
    }
    const BExp& b = e.bexp;
    auto emit_prefix = [&](int64_t last) {
        // Elements of p strictly up to and including `last`.
        if (last < p.start) { out.gens.push_back(Value(Interval::make_empty())); return; }
        uint64_t n = static_cast<uint64_t>((last - p.start) / p.step) + 1;
        if (n > kEnumCap)
            throw UnsupportedGeneratorAlgebra("progression prefix exceeds enumeration cap");
        for (uint64_t k = 0; k < n; ++k)
            out.gens.push_back(Value(Interval::singleton(p.start + static_cast<int64_t>(k) * p.step)));
    };
    auto emit_suffix = [&](int64_t first) {
        int64_t start = p.start;
        if (first > start) start += ((first - start + p.step - 1) / p.step) * p.step;
        out.progs.push_back(Progression{start, p.step});
    };
    if (b.kind == BExp::Kind::Cmp) {
        switch (b.op) {
            case BExp::CmpOp::Lt: emit_prefix(b.c - 1); return;
            case BExp::CmpOp::Le: emit_prefix(b.c); return;
            case BExp::CmpOp::Gt: emit_suffix(b.c + 1); return;
            case BExp::CmpOp::Ge: emit_suffix(b.c); return;
            case BExp::CmpOp::Eq:
                out.gens.push_back(Value(p.contains(b.c) ? Interval::singleton(b.c)
                                                         : Interval::make_empty()));
                return;
            case BExp::CmpOp::Ne:
                if (!p.contains(b.c)) { out.progs.push_back(p); return; }
                emit_prefix(b.c - 1);          // finite part below the hole
                emit_suffix(b.c + 1);          // progression after the hole
                return;
        }
        return;
    }
    // Parity/residue filter: keep v = p.start + k*p.step with v = r (mod m),
    // i.e. k*step = r - start (mod m).
    auto solve = [&](int64_t residue) {
        int64_t g = std::gcd(p.step, b.m);
        if (pos_mod(residue - p.start, g) != 0) return; // no solutions
        int64_t period = b.m / g;
        for (int64_t k = 0; k < period; ++k) {
            if (pos_mod(p.start + k * p.step, b.m) == residue) {
                out.progs.push_back(Progression{p.start + k * p.step, p.step * period});
                return;
            }
        }
    };
    if (!b.negated) {
        size_t before = out.progs.size();
        solve(pos_mod(b.r, b.m));
        if (out.progs.size() == before)
            out.gens.push_back(Value(Interval::make_empty()));
    } else {
        size_t before = out.progs.size();
        for (int64_t r = 0; r < b.m; ++r)
            if (r != pos_mod(b.r, b.m)) solve(r);
        if (out.progs.size() == before)
            out.gens.push_back(Value(Interval::make_empty()));
    }
}

} // namespace

DownSet downset_transfer(const ElcAtom& e, const DownSet& d) {
    if (d.gens.empty() && d.progs.empty()) return DownSet{};
    DownSet out;
    for (const auto& gv : d.gens)
        out.gens.push_back(Value(interval_transfer(e, as_interval(gv))));
    for (const auto& p : d.progs) transfer_prog(e, p, out);
    if (out.gens.empty() && out.progs.empty())
        out.gens.push_back(Value(Interval::make_empty()));
    return normalize_downset(std::move(out));
}

DownSet abstract_down(const HyperSet& H) {
    DownSet out;
    for (const auto& m : H.members) out.gens.push_back(Value(m.interval()));
    return normalize_downset(std::move(out));
}

} // namespace abslog
