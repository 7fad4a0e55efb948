#ifndef ALGSH_LATTICE_ANALYSIS_HPP
#define ALGSH_LATTICE_ANALYSIS_HPP

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algsh/errors.hpp"
#include "algsh/subshift.hpp"
#include "algsh/varieties.hpp"

namespace algsh {

// ---------------------------------------------------------------------------
// Extremal points: for each a, the coordinatewise meet of all points with
// x_0 >= a (and the dual join of points with x_0 <= a).
// ---------------------------------------------------------------------------

struct ExtremalFamily {
    FiniteAlgebra alg;              // a lattice
    std::vector<Epp> m_points;      // indexed by carrier element
    std::vector<Epp> M_points;
};

namespace detail {

// Values at steps 1, 2, ... of the extremal sequence, produced by evolving
// the set of presentation states reachable at each position.  Deterministic
// on state subsets, so eventually periodic; returns (preperiod, period).
struct StepSeq {
    Word pre;   // values at steps 1..|pre|
    Word per;   // then periodic
    Symbol value(long long step) const { // step >= 1
        const long long l = static_cast<long long>(pre.size());
        if (step <= l) return pre[static_cast<std::size_t>(step - 1)];
        return per[static_cast<std::size_t>((step - 1 - l) % static_cast<long long>(per.size()))];
    }
};

inline StepSeq subset_evolution(const LabeledGraph& g, const std::set<int>& start,
                                const std::function<Symbol(const std::vector<Symbol>&)>& combine) {
    auto out = g.out_edges();
    std::map<std::set<int>, int> seen;
    std::vector<Symbol> values;
    std::set<int> cur = start;
    for (;;) {
        auto [it, fresh] = seen.try_emplace(cur, static_cast<int>(values.size()));
        if (!fresh) {
            StepSeq seq;
            const int l = it->second;
            seq.pre.assign(values.begin(), values.begin() + l);
            seq.per.assign(values.begin() + l, values.end());
            if (seq.per.empty()) throw internal_error("subset_evolution: empty cycle");
            return seq;
        }
        std::vector<Symbol> labels;
        std::set<int> nxt;
        for (int v : cur)
            for (int ei : out[static_cast<std::size_t>(v)]) {
                labels.push_back(g.edges[static_cast<std::size_t>(ei)].label);
                nxt.insert(g.edges[static_cast<std::size_t>(ei)].to);
            }
        if (labels.empty()) throw internal_error("subset_evolution: untrimmed graph");
        values.push_back(combine(labels));
        cur = std::move(nxt);
    }
}

inline LabeledGraph reverse_graph(const LabeledGraph& g) {
    LabeledGraph r;
    r.vertices = g.vertices;
    for (const auto& e : g.edges) r.edges.push_back({e.to, e.from, e.label});
    return r;
}

} // namespace detail

inline ExtremalFamily compute_extremal(const Subshift& x, const FiniteAlgebra& alg) {
    if (x.alphabet != alg.carrier)
        throw type_error("compute_extremal: alphabet does not match carrier");
    LatticeOrder ord(alg);
    const auto b1 = language(x, 1);
    for (Symbol a = 0; a < alg.carrier; ++a)
        if (!b1.count({a}))
            throw precondition_error("compute_extremal: symbol " + alg.label(a) +
                                     " never occurs");
    ExtremalFamily fam;
    fam.alg = alg;
    const LabeledGraph rev = detail::reverse_graph(x.graph);
    auto one_direction = [&](const LabeledGraph& g, Symbol a, bool meet) {
        // states after an edge at the origin with label >= a (resp. <= a)
        std::set<int> start;
        std::vector<Symbol> origin_labels;
        for (const auto& e : g.edges) {
            const bool ok = meet ? ord.leq(a, e.label) : ord.leq(e.label, a);
            if (ok) {
                start.insert(e.to);
                origin_labels.push_back(e.label);
            }
        }
        if (start.empty())
            throw precondition_error("compute_extremal: no point with required origin symbol");
        auto combine = [&ord, meet](const std::vector<Symbol>& ls) {
            return meet ? ord.meet_all(ls) : ord.join_all(ls);
        };
        const Symbol at0 = combine(origin_labels);
        return std::make_pair(detail::subset_evolution(g, start, combine), at0);
    };
    for (Symbol a = 0; a < alg.carrier; ++a) {
        for (const bool meet : {true, false}) {
            auto [fwd, at0] = one_direction(x.graph, a, meet);
            auto [bwd, at0b] = one_direction(rev, a, meet);
            if (at0 != at0b) throw internal_error("compute_extremal: origin mismatch");
            auto f = [&fwd = fwd, &bwd = bwd, at0 = at0](long long i) {
                if (i == 0) return at0;
                return i > 0 ? fwd.value(i) : bwd.value(-i);
            };
            Epp p = Epp::from_fn(f, static_cast<long long>(bwd.pre.size()),
                                 static_cast<long long>(bwd.per.size()),
                                 static_cast<long long>(fwd.pre.size()) + 1,
                                 static_cast<long long>(fwd.per.size()));
            (meet ? fam.m_points : fam.M_points).push_back(p);
        }
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Cellwise lattice check, two independent routes.
// ---------------------------------------------------------------------------

struct LatticeCheckVerdict {
    bool yes = true;
    std::string failing_op;     // "meet" or "join" when route (i) finds the witness
    Word witness;               // word in the op image but not in X
};

namespace detail {

/// Presentation of { x : the constraints "x_i = a forces x_{i+j} >= seq_a(j)
/// for j >= 1" hold }, where seq_a is an eventually periodic value sequence.
/// States are sets of (symbol, sequence index) obligations.
inline Subshift forward_constraint_shift(int alphabet, const LatticeOrder& ord,
                                         const std::vector<detail::StepSeq>& seqs,
                                         int max_states = max_states_limit()) {
    std::vector<int> len, prelen;
    for (const auto& s : seqs) {
        prelen.push_back(static_cast<int>(s.pre.size()));
        len.push_back(static_cast<int>(s.pre.size() + s.per.size()));
    }
    auto value_at = [&seqs](int a, int idx) {
        const auto& s = seqs[static_cast<std::size_t>(a)];
        return idx < static_cast<int>(s.pre.size())
                   ? s.pre[static_cast<std::size_t>(idx)]
                   : s.per[static_cast<std::size_t>(idx) - s.pre.size()];
    };
    auto advance = [&](int a, int idx) {
        ++idx;
        if (idx >= len[static_cast<std::size_t>(a)]) idx = prelen[static_cast<std::size_t>(a)];
        return idx;
    };
    // obligations whose remaining values are all bottom impose nothing; drop them
    const Symbol bot = ord.bottom();
    std::vector<int> dead_from(seqs.size());
    for (std::size_t a = 0; a < seqs.size(); ++a) {
        bool per_bot = true;
        for (Symbol s : seqs[a].per) per_bot &= (s == bot);
        if (!per_bot) {
            dead_from[a] = len[a];  // never droppable
            continue;
        }
        int d = prelen[a];
        while (d > 0 && seqs[a].pre[static_cast<std::size_t>(d - 1)] == bot) --d;
        dead_from[a] = d;
    }
    auto droppable = [&](int a, int idx) { return idx >= dead_from[static_cast<std::size_t>(a)]; };
    using State = std::set<std::pair<int, int>>;   // (symbol a, index into seq_a)
    std::map<State, int> ids;
    std::vector<State> states;
    auto intern = [&](const State& st) {
        auto [it, fresh] = ids.try_emplace(st, static_cast<int>(states.size()));
        if (fresh) {
            if (states.size() >= static_cast<std::size_t>(max_states))
                throw resource_error("forward_constraint_shift: state limit exceeded");
            states.push_back(st);
        }
        return it->second;
    };
    LabeledGraph g;
    std::deque<int> work;
    work.push_back(intern(State{}));
    std::set<int> expanded;
    while (!work.empty()) {
        const int id = work.front();
        work.pop_front();
        if (!expanded.insert(id).second) continue;
        const State st = states[static_cast<std::size_t>(id)];
        for (Symbol s = 0; s < alphabet; ++s) {
            bool ok = true;
            for (const auto& [a, idx] : st)
                if (!ord.leq(value_at(a, idx), s)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            State nxt;
            for (const auto& [a, idx] : st) {
                const int ni = advance(a, idx);
                if (!droppable(a, ni)) nxt.insert({a, ni});
            }
            if (!droppable(s, 0)) nxt.insert({s, 0});
            const int nid = intern(nxt);
            g.edges.push_back({id, nid, s});
            work.push_back(nid);
        }
    }
    g.vertices = static_cast<int>(states.size());
    Subshift z;
    z.alphabet = alphabet;
    z.graph = trim(g);
    return z;
}

inline Subshift intersect_shifts(const Subshift& a, const Subshift& b) {
    if (a.alphabet != b.alphabet) throw type_error("intersect: alphabet mismatch");
    LabeledGraph g;
    g.vertices = a.graph.vertices * b.graph.vertices;
    for (const auto& ea : a.graph.edges)
        for (const auto& eb : b.graph.edges)
            if (ea.label == eb.label)
                g.edges.push_back({ea.from * b.graph.vertices + eb.from,
                                   ea.to * b.graph.vertices + eb.to, ea.label});
    Subshift z;
    z.alphabet = a.alphabet;
    z.graph = trim(g);
    return z;
}

inline detail::StepSeq epp_side(const Epp& p, bool right) {
    detail::StepSeq s;
    if (right) {
        s.pre = p.right_tail;
        s.per = p.right_period;
        // steps start at position 1; drop position 0 from the tail
        if (!s.pre.empty()) s.pre.erase(s.pre.begin());
        else {
            // position 0 sits inside the periodic part; rotate it out
            s.per.push_back(s.per.front());
            s.per.erase(s.per.begin());
        }
    } else {
        s.pre.assign(p.left_tail.rbegin(), p.left_tail.rend());
        s.per.assign(p.left_period.rbegin(), p.left_period.rend());
    }
    return s;
}

} // namespace detail

/// The sofic shift { x : for all i, x >= sigma^{-i}(m^{x_i}) } built from a
/// computed extremal family.
inline Subshift extremal_constraint_shift(const ExtremalFamily& fam) {
    LatticeOrder ord(fam.alg);
    const int alphabet = fam.alg.carrier;
    std::vector<detail::StepSeq> fwd, bwd;
    for (Symbol a = 0; a < alphabet; ++a) {
        fwd.push_back(detail::epp_side(fam.m_points[static_cast<std::size_t>(a)], true));
        bwd.push_back(detail::epp_side(fam.m_points[static_cast<std::size_t>(a)], false));
    }
    Subshift zf = detail::forward_constraint_shift(alphabet, ord, fwd);
    Subshift zb_rev = detail::forward_constraint_shift(alphabet, ord, bwd);
    Subshift zb;
    zb.alphabet = alphabet;
    zb.graph = trim(detail::reverse_graph(zb_rev.graph));
    // origin constraint x_i >= m^{x_i}_0 holds automatically (m^a_0 = a when
    // every symbol occurs)
    return detail::intersect_shifts(zf, zb);
}

inline BlockMap lattice_meet_map(const FiniteAlgebra& alg) {
    return {0, 2, alg.carrier, alg.carrier,
            [alg](const Word& w) { return alg.apply(0, {w[0], w[1]}); }};
}
inline BlockMap lattice_join_map(const FiniteAlgebra& alg) {
    return {0, 2, alg.carrier, alg.carrier,
            [alg](const Word& w) { return alg.apply(1, {w[0], w[1]}); }};
}

inline LatticeCheckVerdict cellwise_lattice_check(const Subshift& x, const FiniteAlgebra& alg) {
    check_identities(alg, find_variety("lattice")); // throws type_error on bad signature
    LatticeCheckVerdict v;
    // route (i): closure under cellwise meet and join
    bool closed = true;
    for (const bool is_meet : {true, false}) {
        BlockMap f = is_meet ? lattice_meet_map(alg) : lattice_join_map(alg);
        Subshift img = apply_blockmap_image(f, {x, x});
        auto c = contains(x, img);
        if (!c.yes) {
            closed = false;
            if (v.yes) {
                v.yes = false;
                v.failing_op = is_meet ? "meet" : "join";
                v.witness = c.witness;
            }
        }
    }
    // route (ii): the extremal-family characterization
    ExtremalFamily fam = compute_extremal(x, alg);
    Subshift z = extremal_constraint_shift(fam);
    const bool route2 = sofic_equal(z, x);
    if (closed != route2)
        throw internal_error("cellwise_lattice_check: closure and extremal routes disagree");
    return v;
}

// ---------------------------------------------------------------------------
// Soficity of extremal families.
// ---------------------------------------------------------------------------

struct SoficityVerdict {
    bool certified = false;
    int window = 0;
    int preperiod = 0, period = 0;  // for rule-based families, when certified
};

inline SoficityVerdict soficity_check(const ExtremalFamily&) {
    // computed families are eventually periodic by construction
    return {true, 0, 0, 0};
}

/// Bounded search for eventual periodicity of a position-indexed rule, in
/// both directions.  Absence within the window is a refutation up to the
/// window, not a proof.
inline SoficityVerdict soficity_check_rule(const std::function<Symbol(long long)>& rule,
                                           int window) {
    if (window < 1) throw precondition_error("soficity_check_rule: window must be >= 1");
    const long long horizon = 4LL * window;
    auto periodic_with = [&](int sign, int pre, int per) {
        for (long long i = pre; i + per <= horizon; ++i)
            if (rule(sign * i) != rule(sign * (i + per))) return false;
        return true;
    };
    SoficityVerdict v;
    v.window = window;
    for (int pre = 0; pre <= window; ++pre)
        for (int per = 1; pre + per <= window; ++per)
            if (periodic_with(1, pre, per) && periodic_with(-1, pre, per)) {
                v.certified = true;
                v.preperiod = pre;
                v.period = per;
                return v;
            }
    return v;
}

// ---------------------------------------------------------------------------
// Binary classification (alphabet = the two-element lattice).
// ---------------------------------------------------------------------------

struct BinaryClass {
    enum Tag { full, periodic, right_cone, left_cone } tag = full;
    int n = 0;              // for periodic
    std::vector<int> P;     // for cones
};

inline Subshift subshift_from_class(const BinaryClass& c) {
    switch (c.tag) {
        case BinaryClass::full:
            return Subshift::full_shift(2);
        case BinaryClass::periodic: {
            std::vector<Word> forb;
            Word u(static_cast<std::size_t>(c.n + 1));
            do {
                if (u.front() != u.back()) forb.push_back(u);
            } while (next_tuple(u, 2));
            return Subshift::from_forbidden(2, forb);
        }
        case BinaryClass::right_cone:
        case BinaryClass::left_cone: {
            std::vector<Word> forb;
            for (int p : c.P) {
                Word u(static_cast<std::size_t>(p + 1), 0);
                // right cone forbids 1...0, left cone forbids 0...1
                u.front() = c.tag == BinaryClass::right_cone ? 1 : 0;
                u.back() = c.tag == BinaryClass::right_cone ? 0 : 1;
                // middle cells range over everything: enumerate
                Word mid(static_cast<std::size_t>(p - 1), 0);
                if (p == 1) {
                    forb.push_back(u);
                } else {
                    do {
                        for (int i = 1; i < p; ++i) u[static_cast<std::size_t>(i)] =
                            mid[static_cast<std::size_t>(i - 1)];
                        forb.push_back(u);
                    } while (next_tuple(mid, 2));
                }
            }
            return Subshift::from_forbidden(2, forb);
        }
    }
    throw internal_error("subshift_from_class: bad tag");
}

inline bool closed_under_complement(const Subshift& x) {
    if (x.alphabet != 2) throw type_error("closed_under_complement: binary only");
    BlockMap comp = BlockMap::cellwise(2, 2, [](Symbol s) { return 1 - s; });
    return contains(x, apply_blockmap_image(comp, {x})).yes;
}

inline BinaryClass classify_binary(const Subshift& x) {
    if (x.alphabet != 2) throw type_error("classify_binary: binary alphabet required");
    if (x.empty() || language(x, 1).size() < 2)
        throw precondition_error("classify_binary: trivial subshift");
    FiniteAlgebra two = chain_lattice(2);
    LatticeCheckVerdict lv = cellwise_lattice_check(x, two);
    if (!lv.yes)
        throw precondition_error("classify_binary: not a cellwise lattice subshift");
    ExtremalFamily fam = compute_extremal(x, two);
    const Epp& m1 = fam.m_points[1];
    // horizons past which m^1 is periodic
    const long long hr = static_cast<long long>(m1.right_tail.size()) +
                         2 * static_cast<long long>(m1.right_period.size());
    const long long hl = static_cast<long long>(m1.left_tail.size()) +
                         2 * static_cast<long long>(m1.left_period.size());
    std::vector<long long> pos, neg;
    for (long long i = 1; i <= hr; ++i)
        if (m1.at(i) == 1) pos.push_back(i);
    for (long long i = 1; i <= hl; ++i)
        if (m1.at(-i) == 1) neg.push_back(i);
    // also catch purely periodic 1s beyond the scanned window
    bool right_ones = false, left_ones = false;
    for (Symbol s : m1.right_period) right_ones |= (s == 1);
    for (Symbol s : m1.left_period) left_ones |= (s == 1);
    if (pos.empty() && !right_ones && neg.empty() && !left_ones) {
        BinaryClass c;
        c.tag = BinaryClass::full;
        return c;
    }
    const bool has_pos = !pos.empty() || right_ones;
    const bool has_neg = !neg.empty() || left_ones;
    BinaryClass c;
    if (has_pos && has_neg) {
        long long g = 0;
        for (long long k : pos) g = std::gcd(g, k);
        for (long long k : neg) g = std::gcd(g, k);
        c.tag = BinaryClass::periodic;
        c.n = static_cast<int>(g);
    } else {
        c.tag = has_pos ? BinaryClass::right_cone : BinaryClass::left_cone;
        const auto& ks = has_pos ? pos : neg;
        const long long h = has_pos ? hr : hl;
        // greedy sieve: minimal generators under sums
        std::vector<bool> gen(static_cast<std::size_t>(h + 1), false);
        gen[0] = true;
        for (long long k : ks) {
            if (!gen[static_cast<std::size_t>(k)]) {
                c.P.push_back(static_cast<int>(k));
                for (long long i = 0; i + k <= h; ++i)
                    if (gen[static_cast<std::size_t>(i)]) gen[static_cast<std::size_t>(i + k)] = true;
            }
        }
    }
    if (!sofic_equal(x, subshift_from_class(c)))
        throw internal_error("classify_binary: class does not regenerate the subshift");
    return c;
}

} // namespace algsh

#endif
