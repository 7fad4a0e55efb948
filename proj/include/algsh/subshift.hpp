#ifndef ALGSH_SUBSHIFT_HPP
#define ALGSH_SUBSHIFT_HPP

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "algsh/algebra.hpp"
#include "algsh/errors.hpp"
#include "algsh/evp.hpp"

namespace algsh {

inline int max_states_limit() {
    if (const char* s = std::getenv("ALGSH_MAX_STATES")) {
        const int v = std::atoi(s);
        if (v > 0) return v;
    }
    return 10000;
}

struct LabeledGraph {
    struct Edge {
        int from, to;
        Symbol label;
    };
    int vertices = 0;
    std::vector<Edge> edges;

    std::vector<std::vector<int>> out_edges() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(vertices));
        for (std::size_t i = 0; i < edges.size(); ++i)
            out[static_cast<std::size_t>(edges[i].from)].push_back(static_cast<int>(i));
        return out;
    }
    std::vector<std::vector<int>> in_edges() const {
        std::vector<std::vector<int>> in(static_cast<std::size_t>(vertices));
        for (std::size_t i = 0; i < edges.size(); ++i)
            in[static_cast<std::size_t>(edges[i].to)].push_back(static_cast<int>(i));
        return in;
    }
};

/// Removes vertices not lying on a bi-infinite path (no outgoing or no
/// incoming edge, iteratively).
inline LabeledGraph trim(const LabeledGraph& g) {
    std::vector<bool> alive(static_cast<std::size_t>(g.vertices), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outd(static_cast<std::size_t>(g.vertices), 0),
            ind(static_cast<std::size_t>(g.vertices), 0);
        for (const auto& e : g.edges) {
            if (!alive[static_cast<std::size_t>(e.from)] || !alive[static_cast<std::size_t>(e.to)])
                continue;
            ++outd[static_cast<std::size_t>(e.from)];
            ++ind[static_cast<std::size_t>(e.to)];
        }
        for (int v = 0; v < g.vertices; ++v)
            if (alive[static_cast<std::size_t>(v)] &&
                (outd[static_cast<std::size_t>(v)] == 0 || ind[static_cast<std::size_t>(v)] == 0)) {
                alive[static_cast<std::size_t>(v)] = false;
                changed = true;
            }
    }
    std::vector<int> remap(static_cast<std::size_t>(g.vertices), -1);
    LabeledGraph t;
    for (int v = 0; v < g.vertices; ++v)
        if (alive[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = t.vertices++;
    for (const auto& e : g.edges)
        if (alive[static_cast<std::size_t>(e.from)] && alive[static_cast<std::size_t>(e.to)])
            t.edges.push_back({remap[static_cast<std::size_t>(e.from)],
                               remap[static_cast<std::size_t>(e.to)], e.label});
    return t;
}

// ---------------------------------------------------------------------------
// Factor-language DFA (subset construction from the all-states set).  All
// states accept; a word is in the language iff its run exists.
// ---------------------------------------------------------------------------

struct Dfa {
    int alphabet = 0;
    int start = -1;                          // -1 when the language is empty
    std::vector<std::vector<int>> trans;     // trans[state][symbol] = state or -1

    int step(int state, Symbol s) const {
        if (state < 0) return -1;
        return trans[static_cast<std::size_t>(state)][static_cast<std::size_t>(s)];
    }
    int run(int state, const Word& w) const {
        for (Symbol s : w) {
            state = step(state, s);
            if (state < 0) return -1;
        }
        return state;
    }
    std::size_t states() const { return trans.size(); }
};

inline Dfa factor_dfa(const LabeledGraph& g, int alphabet, int max_states = max_states_limit()) {
    Dfa d;
    d.alphabet = alphabet;
    if (g.vertices == 0) return d;
    using Subset = std::vector<int>;
    std::map<Subset, int> ids;
    std::deque<Subset> work;
    Subset all(static_cast<std::size_t>(g.vertices));
    for (int v = 0; v < g.vertices; ++v) all[static_cast<std::size_t>(v)] = v;
    ids[all] = 0;
    d.start = 0;
    d.trans.emplace_back(static_cast<std::size_t>(alphabet), -1);
    work.push_back(all);
    auto out = g.out_edges();
    while (!work.empty()) {
        Subset q = work.front();
        work.pop_front();
        const int qid = ids[q];
        for (Symbol s = 0; s < alphabet; ++s) {
            std::set<int> next;
            for (int v : q)
                for (int ei : out[static_cast<std::size_t>(v)])
                    if (g.edges[static_cast<std::size_t>(ei)].label == s)
                        next.insert(g.edges[static_cast<std::size_t>(ei)].to);
            if (next.empty()) continue;
            Subset nq(next.begin(), next.end());
            auto [it, fresh] = ids.try_emplace(nq, static_cast<int>(d.trans.size()));
            if (fresh) {
                if (d.trans.size() >= static_cast<std::size_t>(max_states))
                    throw resource_error("factor_dfa: state limit exceeded");
                d.trans.emplace_back(static_cast<std::size_t>(alphabet), -1);
                work.push_back(nq);
            }
            d.trans[static_cast<std::size_t>(qid)][static_cast<std::size_t>(s)] = it->second;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Subshift presentation.  The graph is kept trimmed; `normal` marks graphs
// that went through determinize + minimize (used as a cheap canonical-ish
// form so repeated image constructions stay small).
// ---------------------------------------------------------------------------

struct Subshift {
    int alphabet = 0;
    LabeledGraph graph;     // trimmed
    bool normal = false;

    bool empty() const { return graph.vertices == 0; }

    static Subshift full_shift(int alphabet) {
        Subshift x;
        x.alphabet = alphabet;
        x.graph.vertices = 1;
        for (Symbol s = 0; s < alphabet; ++s) x.graph.edges.push_back({0, 0, s});
        x.normal = true;
        return x;
    }

    static Subshift from_graph(int alphabet, const LabeledGraph& g) {
        Subshift x;
        x.alphabet = alphabet;
        x.graph = trim(g);
        return x;
    }

    /// SFT as a memory-m vertex shift (de Bruijn graph), m = max forbidden
    /// word length - 1.  Edge u -> v is labeled with the first symbol of u,
    /// so bi-infinite label sequences are exactly the points.
    static Subshift from_forbidden(int alphabet, const std::vector<Word>& forbidden) {
        std::size_t maxlen = 0;
        for (const Word& w : forbidden) {
            if (w.empty()) throw type_error("empty forbidden word");
            maxlen = std::max(maxlen, w.size());
        }
        auto contains_forbidden = [&forbidden](const Word& w) {
            for (const Word& f : forbidden) {
                if (f.size() > w.size()) continue;
                for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
                    if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i)))
                        return true;
            }
            return false;
        };
        const int m = maxlen == 0 ? 0 : static_cast<int>(maxlen) - 1;
        Subshift x;
        x.alphabet = alphabet;
        if (m == 0) {
            LabeledGraph g;
            g.vertices = 1;
            for (Symbol s = 0; s < alphabet; ++s)
                if (!contains_forbidden({s})) g.edges.push_back({0, 0, s});
            x.graph = trim(g);
            return x;
        }
        // vertices = allowed m-words
        std::map<Word, int> ids;
        std::vector<Word> words;
        Word w(static_cast<std::size_t>(m), 0);
        do {
            if (!contains_forbidden(w)) {
                ids[w] = static_cast<int>(words.size());
                words.push_back(w);
            }
        } while (next_tuple(w, alphabet));
        LabeledGraph g;
        g.vertices = static_cast<int>(words.size());
        for (std::size_t u = 0; u < words.size(); ++u) {
            for (Symbol s = 0; s < alphabet; ++s) {
                Word ext = words[u];
                ext.push_back(s);
                if (contains_forbidden(ext)) continue;
                Word v(ext.begin() + 1, ext.end());
                auto it = ids.find(v);
                if (it == ids.end()) continue;
                g.edges.push_back({static_cast<int>(u), it->second, words[u][0]});
            }
        }
        x.graph = trim(g);
        return x;
    }

    Dfa dfa(int max_states = max_states_limit()) const {
        return factor_dfa(graph, alphabet, max_states);
    }
};

/// Deterministic presentation from the factor DFA, trimmed.  Presents the
/// same subshift.
inline Subshift determinize(const Subshift& x, int max_states = max_states_limit()) {
    Dfa d = x.dfa(max_states);
    LabeledGraph g;
    g.vertices = static_cast<int>(d.states());
    for (int q = 0; q < g.vertices; ++q)
        for (Symbol s = 0; s < x.alphabet; ++s)
            if (d.trans[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] >= 0)
                g.edges.push_back({q, d.trans[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)], s});
    Subshift y;
    y.alphabet = x.alphabet;
    y.graph = trim(g);
    return y;
}

/// Moore refinement on a deterministic graph; merges states with the same
/// right language.
inline Subshift minimize_deterministic(const Subshift& x) {
    const LabeledGraph& g = x.graph;
    if (g.vertices == 0) return x;
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.vertices),
                                       std::vector<int>(static_cast<std::size_t>(x.alphabet), -1));
    for (const auto& e : g.edges) {
        if (succ[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.label)] != -1 &&
            succ[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.label)] != e.to)
            throw internal_error("minimize_deterministic: graph is not deterministic");
        succ[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.label)] = e.to;
    }
    std::vector<int> block(static_cast<std::size_t>(g.vertices), 0);
    int nblocks = 1;
    for (;;) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> nb(static_cast<std::size_t>(g.vertices));
        for (int v = 0; v < g.vertices; ++v) {
            std::vector<int> sig;
            sig.push_back(block[static_cast<std::size_t>(v)]);
            for (Symbol s = 0; s < x.alphabet; ++s) {
                const int t = succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
                sig.push_back(t < 0 ? -1 : block[static_cast<std::size_t>(t)]);
            }
            auto [it, fresh] = sig_ids.try_emplace(sig, static_cast<int>(sig_ids.size()));
            nb[static_cast<std::size_t>(v)] = it->second;
        }
        if (static_cast<int>(sig_ids.size()) == nblocks) break;
        nblocks = static_cast<int>(sig_ids.size());
        block = std::move(nb);
    }
    LabeledGraph m;
    m.vertices = nblocks;
    std::set<std::tuple<int, int, Symbol>> seen;
    for (const auto& e : g.edges) {
        auto key = std::make_tuple(block[static_cast<std::size_t>(e.from)],
                                   block[static_cast<std::size_t>(e.to)], e.label);
        if (seen.insert(key).second)
            m.edges.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    Subshift y;
    y.alphabet = x.alphabet;
    y.graph = trim(m);
    y.normal = true;
    return y;
}

inline Subshift normalize(const Subshift& x, int max_states = max_states_limit()) {
    if (x.normal) return x;
    return minimize_deterministic(determinize(x, max_states));
}

// ---------------------------------------------------------------------------
// Language and containment.
// ---------------------------------------------------------------------------

inline std::set<Word> language(const Subshift& x, int n) {
    std::set<Word> out;
    if (x.empty()) return out;
    if (n == 0) {
        out.insert(Word{});
        return out;
    }
    Dfa d = x.dfa();
    std::function<void(int, Word&)> rec = [&](int state, Word& w) {
        if (static_cast<int>(w.size()) == n) {
            out.insert(w);
            return;
        }
        for (Symbol s = 0; s < x.alphabet; ++s) {
            const int t = d.step(state, s);
            if (t < 0) continue;
            w.push_back(s);
            rec(t, w);
            w.pop_back();
        }
    };
    Word w;
    rec(d.start, w);
    return out;
}

struct ContainmentVerdict {
    bool yes = true;
    Word witness;   // shortest, lexicographically least word in B but not in A
};

/// Decides B subseteq A (as subshifts, via factor languages).
inline ContainmentVerdict contains(const Subshift& a, const Subshift& b) {
    if (a.alphabet != b.alphabet) throw type_error("contains: alphabet mismatch");
    ContainmentVerdict v;
    if (b.empty()) return v;
    Dfa db = b.dfa();
    if (a.empty()) {
        v.yes = false;
        // lexicographically least symbol occurring in B
        for (Symbol s = 0; s < b.alphabet; ++s)
            if (db.step(db.start, s) >= 0) {
                v.witness = {s};
                return v;
            }
        throw internal_error("contains: nonempty shift with empty language");
    }
    Dfa da = a.dfa();
    std::map<std::pair<int, int>, std::pair<std::pair<int, int>, Symbol>> parent;
    std::deque<std::pair<int, int>> work;
    std::set<std::pair<int, int>> seen;
    std::pair<int, int> start{db.start, da.start};
    seen.insert(start);
    work.push_back(start);
    while (!work.empty()) {
        auto cur = work.front();
        work.pop_front();
        for (Symbol s = 0; s < a.alphabet; ++s) {
            const int nb = db.step(cur.first, s);
            if (nb < 0) continue;
            const int na = da.step(cur.second, s);
            std::pair<int, int> nxt{nb, na};
            if (na < 0) {
                // reconstruct witness
                Word w{s};
                auto p = cur;
                while (p != start) {
                    auto [pr, sym] = parent.at(p);
                    w.push_back(sym);
                    p = pr;
                }
                std::reverse(w.begin(), w.end());
                v.yes = false;
                v.witness = w;
                return v;
            }
            if (seen.insert(nxt).second) {
                parent[nxt] = {cur, s};
                work.push_back(nxt);
            }
        }
    }
    return v;
}

inline bool sofic_equal(const Subshift& a, const Subshift& b) {
    return contains(a, b).yes && contains(b, a).yes;
}

// ---------------------------------------------------------------------------
// Products and tuple coding.
// ---------------------------------------------------------------------------

inline Symbol tuple_encode(const std::vector<int>& alphabets, const Word& t) {
    Symbol s = 0;
    for (std::size_t i = 0; i < alphabets.size(); ++i) s = s * alphabets[i] + t[i];
    return s;
}

inline Word tuple_decode(const std::vector<int>& alphabets, Symbol s) {
    Word t(alphabets.size());
    for (std::size_t i = alphabets.size(); i-- > 0;) {
        t[i] = s % alphabets[i];
        s /= alphabets[i];
    }
    return t;
}

/// Product shift over the tuple-encoded alphabet (first component most
/// significant).
inline Subshift product_shift(const std::vector<Subshift>& parts) {
    if (parts.empty()) throw type_error("product_shift: empty list");
    std::vector<int> alphabets;
    for (const auto& p : parts) alphabets.push_back(p.alphabet);
    int alpha = 1;
    for (int a : alphabets) alpha *= a;
    // vertices = tuples of vertices, edges = tuples of edges
    std::vector<int> vcount;
    for (const auto& p : parts) vcount.push_back(p.graph.vertices);
    for (int c : vcount)
        if (c == 0) {
            Subshift e;
            e.alphabet = alpha;
            return e;
        }
    auto venc = [&vcount](const std::vector<int>& t) {
        int s = 0;
        for (std::size_t i = 0; i < vcount.size(); ++i) s = s * vcount[i] + t[i];
        return s;
    };
    LabeledGraph g;
    g.vertices = 1;
    for (int c : vcount) g.vertices *= c;
    std::vector<std::size_t> pick(parts.size(), 0);
    for (;;) {
        std::vector<int> from(parts.size()), to(parts.size());
        Word labels(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& e = parts[i].graph.edges[pick[i]];
            from[i] = e.from;
            to[i] = e.to;
            labels[i] = e.label;
        }
        g.edges.push_back({venc(from), venc(to), tuple_encode(alphabets, labels)});
        std::size_t i = parts.size();
        bool done = true;
        while (i-- > 0) {
            if (++pick[i] < parts[i].graph.edges.size()) {
                done = false;
                break;
            }
            pick[i] = 0;
        }
        if (done) break;
    }
    Subshift x;
    x.alphabet = alpha;
    x.graph = trim(g);
    return x;
}

// ---------------------------------------------------------------------------
// Block maps.
// ---------------------------------------------------------------------------

/// Local rule of a sliding block code with `arity` argument shifts over a
/// common alphabet.  The rule receives the flattened slot-major window:
/// args[slot * (2r+1) + pos], pos in [0, 2r].
struct BlockMap {
    int radius = 0;
    int arity = 1;
    int domain_alphabet = 0;    // per-slot alphabet
    int codomain_alphabet = 0;
    std::function<Symbol(const Word&)> rule;

    /// Optional factorization through a cellwise combiner: the rule equals
    /// a unary sliding map applied to the coordinatewise combination of the
    /// (individually shifted) arguments.  Images then avoid the product path
    /// construction, which is exponential in arity.
    struct Staged {
        std::function<Symbol(const Word&)> combine;     // arity symbols -> symbol
        int combined_alphabet = 0;
        std::vector<int> slot_shift;                    // per-slot offset
        int unary_radius = 0;
        std::function<Symbol(const Word&)> unary;       // (2*unary_radius+1)-window
    };
    std::optional<Staged> staged;

    Symbol apply_window(const Word& w) const { return rule(w); }

    static BlockMap identity(int alphabet) {
        return {0, 1, alphabet, alphabet, [](const Word& w) { return w[0]; }};
    }
    static BlockMap shift(int alphabet, int k) {
        const int r = std::abs(k);
        return {r, 1, alphabet, alphabet,
                [r, k](const Word& w) { return w[static_cast<std::size_t>(r + k)]; }};
    }
    /// Radius-0 relabeling.
    static BlockMap cellwise(int domain_alphabet, int codomain_alphabet,
                             std::function<Symbol(Symbol)> f) {
        return {0, 1, domain_alphabet, codomain_alphabet,
                [f = std::move(f)](const Word& w) { return f(w[0]); }};
    }
};

/// Builds a block map from a staged form; the total radius covers the unary
/// window plus the largest slot shift.
inline BlockMap staged_blockmap(int arity, int domain_alphabet, int codomain_alphabet,
                                std::function<Symbol(const Word&)> combine, int combined_alphabet,
                                std::vector<int> slot_shift, int unary_radius,
                                std::function<Symbol(const Word&)> unary) {
    int r = unary_radius;
    for (int s : slot_shift) r = std::max(r, unary_radius + std::abs(s));
    BlockMap f;
    f.radius = r;
    f.arity = arity;
    f.domain_alphabet = domain_alphabet;
    f.codomain_alphabet = codomain_alphabet;
    f.staged = BlockMap::Staged{combine, combined_alphabet, slot_shift, unary_radius, unary};
    f.rule = [arity, combine, slot_shift, unary_radius, unary, r](const Word& w) {
        const int W = 2 * r + 1;
        Word u(static_cast<std::size_t>(2 * unary_radius + 1));
        for (int p = -unary_radius; p <= unary_radius; ++p) {
            Word cell(static_cast<std::size_t>(arity));
            for (int s = 0; s < arity; ++s)
                cell[static_cast<std::size_t>(s)] =
                    w[static_cast<std::size_t>(s) * static_cast<std::size_t>(W) +
                      static_cast<std::size_t>(r + p + slot_shift[static_cast<std::size_t>(s)])];
            u[static_cast<std::size_t>(p + unary_radius)] = combine(cell);
        }
        return unary(u);
    };
    return f;
}

/// Image of a block map: the domain is the product of `parts`; returns a
/// normalized presentation of f(X).
inline Subshift apply_blockmap_image(const BlockMap& f, const std::vector<Subshift>& parts,
                                     int max_states = max_states_limit()) {
    if (static_cast<std::size_t>(f.arity) != parts.size())
        throw type_error("apply_blockmap_image: arity mismatch");
    if (f.staged && f.arity > 1) {
        // slot shifts do not change the image: each part is shift invariant
        const auto& st = *f.staged;
        BlockMap comb{0, f.arity, f.domain_alphabet, st.combined_alphabet, nullptr};
        comb.rule = [&st, n = f.arity](const Word& flat) {
            Word cell(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s) cell[static_cast<std::size_t>(s)] =
                flat[static_cast<std::size_t>(s)];
            return st.combine(cell);
        };
        Subshift mid = apply_blockmap_image(comb, parts, max_states);
        BlockMap un{st.unary_radius, 1, st.combined_alphabet, f.codomain_alphabet, st.unary};
        return apply_blockmap_image(un, {mid}, max_states);
    }
    Subshift domain = parts.size() == 1 ? parts[0] : product_shift(parts);
    std::vector<int> alphabets;
    for (const auto& p : parts) alphabets.push_back(p.alphabet);
    const int r = f.radius;
    const int w = 2 * r + 1;
    auto evaluate = [&](const Word& window_encoded) {
        // decode tuple symbols into the slot-major layout the rule expects
        Word flat(static_cast<std::size_t>(f.arity) * static_cast<std::size_t>(w));
        for (int pos = 0; pos < w; ++pos) {
            Word t = parts.size() == 1 ? Word{window_encoded[static_cast<std::size_t>(pos)]}
                                       : tuple_decode(alphabets, window_encoded[static_cast<std::size_t>(pos)]);
            for (int slot = 0; slot < f.arity; ++slot)
                flat[static_cast<std::size_t>(slot) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(pos)] = t[static_cast<std::size_t>(slot)];
        }
        return f.rule(flat);
    };
    if (domain.empty()) {
        Subshift e;
        e.alphabet = f.codomain_alphabet;
        return e;
    }
    LabeledGraph out;
    if (r == 0) {
        out.vertices = domain.graph.vertices;
        for (const auto& e : domain.graph.edges)
            out.edges.push_back({e.from, e.to, evaluate({e.label})});
    } else {
        // vertices = paths of 2r edges in the domain graph
        auto adj = domain.graph.out_edges();
        std::map<std::vector<int>, int> ids;
        std::vector<std::vector<int>> paths;
        std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& p) {
            if (static_cast<int>(p.size()) == 2 * r) {
                if (ids.try_emplace(p, static_cast<int>(paths.size())).second) paths.push_back(p);
                return;
            }
            const int v = p.empty() ? -1 : domain.graph.edges[static_cast<std::size_t>(p.back())].to;
            if (p.empty()) {
                for (std::size_t ei = 0; ei < domain.graph.edges.size(); ++ei) {
                    p.push_back(static_cast<int>(ei));
                    grow(p);
                    p.pop_back();
                }
            } else {
                for (int ei : adj[static_cast<std::size_t>(v)]) {
                    p.push_back(ei);
                    grow(p);
                    p.pop_back();
                }
            }
        };
        std::vector<int> p;
        grow(p);
        if (paths.size() > static_cast<std::size_t>(max_states))
            throw resource_error("apply_blockmap_image: path count exceeds state limit");
        out.vertices = static_cast<int>(paths.size());
        for (const auto& path : paths) {
            const int last = domain.graph.edges[static_cast<std::size_t>(path.back())].to;
            for (int ei : adj[static_cast<std::size_t>(last)]) {
                std::vector<int> ext = path;
                ext.push_back(ei);
                Word window;
                for (int e : ext)
                    window.push_back(domain.graph.edges[static_cast<std::size_t>(e)].label);
                std::vector<int> nxt(ext.begin() + 1, ext.end());
                auto it = ids.find(nxt);
                if (it == ids.end()) continue;
                out.edges.push_back({ids.at(path), it->second, evaluate(window)});
            }
        }
    }
    Subshift img;
    img.alphabet = f.codomain_alphabet;
    img.graph = trim(out);
    return normalize(img, max_states);
}

struct BlockMapComparison {
    bool equal = true;
    Word witness;   // a window (tuple-encoded) where center outputs differ
};

/// Exact comparison of two block maps on a common domain: compare on all
/// words of length 2*max(r_f, r_g)+1 of the (product) domain.
inline BlockMapComparison blockmap_equal_on(const BlockMap& f, const BlockMap& g,
                                            const std::vector<Subshift>& parts) {
    if (f.arity != g.arity || f.domain_alphabet != g.domain_alphabet)
        throw type_error("blockmap_equal_on: domain mismatch");
    if (f.codomain_alphabet != g.codomain_alphabet)
        throw type_error("blockmap_equal_on: codomain mismatch");
    Subshift domain = parts.size() == 1 ? parts[0] : product_shift(parts);
    std::vector<int> alphabets;
    for (const auto& p : parts) alphabets.push_back(p.alphabet);
    const int R = std::max(f.radius, g.radius);
    auto center_apply = [&](const BlockMap& h, const Word& window) {
        const int w = 2 * h.radius + 1;
        Word flat(static_cast<std::size_t>(h.arity) * static_cast<std::size_t>(w));
        for (int pos = 0; pos < w; ++pos) {
            const Symbol enc = window[static_cast<std::size_t>(R - h.radius + pos)];
            Word t = parts.size() == 1 ? Word{enc} : tuple_decode(alphabets, enc);
            for (int slot = 0; slot < h.arity; ++slot)
                flat[static_cast<std::size_t>(slot) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(pos)] = t[static_cast<std::size_t>(slot)];
        }
        return h.rule(flat);
    };
    BlockMapComparison cmp;
    for (const Word& w : language(domain, 2 * R + 1)) {
        if (center_apply(f, w) != center_apply(g, w)) {
            cmp.equal = false;
            cmp.witness = w;
            return cmp;
        }
    }
    return cmp;
}

// ---------------------------------------------------------------------------
// Eventually periodic points vs sofic presentations.
// ---------------------------------------------------------------------------

/// Membership of an eventually periodic point in a sofic shift: every factor
/// must be in the language; decided by subset evolution with pumping on both
/// periodic ends.
inline bool epp_in_sofic(const Subshift& x, const Epp& p) {
    if (x.empty()) return false;
    Dfa d = x.dfa();
    for (Symbol s : p.left_period)
        if (s < 0 || s >= x.alphabet) throw type_error("epp_in_sofic: symbol out of alphabet");
    // limit subset after the left-infinite periodic ray
    std::set<int> cur;
    for (std::size_t q = 0; q < d.states(); ++q) cur.insert(static_cast<int>(q));
    auto read_set = [&d](const std::set<int>& q, const Word& w) {
        std::set<int> out = q;
        for (Symbol s : w) {
            std::set<int> nxt;
            for (int st : out) {
                const int t = d.step(st, s);
                if (t >= 0) nxt.insert(t);
            }
            out = std::move(nxt);
            if (out.empty()) break;
        }
        return out;
    };
    for (;;) {
        std::set<int> nxt = read_set(cur, p.left_period);
        if (nxt == cur) break;
        if (nxt.empty()) return false;
        cur = std::move(nxt);
        // decreasing from the all-set: stabilizes within |states| rounds
    }
    cur = read_set(cur, p.left_tail);
    if (cur.empty()) return false;
    cur = read_set(cur, p.right_tail);
    if (cur.empty()) return false;
    std::set<std::set<int>> seen;
    while (seen.insert(cur).second) {
        cur = read_set(cur, p.right_period);
        if (cur.empty()) return false;
    }
    return true;
}

/// Words w of length n with ^inf(w)^inf in X.
inline std::vector<Word> periodic_points(const Subshift& x, int n) {
    std::vector<Word> out;
    for (const Word& w : language(x, n)) {
        Epp p;
        p.left_period = w;
        p.right_period = w;
        p.canonicalize();
        if (epp_in_sofic(x, p)) out.push_back(w);
    }
    return out;
}

/// Runs a block map over one period of a fully periodic point.
inline Word apply_rule_periodic(const BlockMap& f, const Word& period) {
    const int n = static_cast<int>(period.size());
    Word out(period.size());
    for (int i = 0; i < n; ++i) {
        Word flat(static_cast<std::size_t>(f.arity) * static_cast<std::size_t>(2 * f.radius + 1));
        for (int posn = -f.radius; posn <= f.radius; ++posn) {
            const Symbol enc = period[static_cast<std::size_t>(((i + posn) % n + n) % n)];
            // arity > 1 windows must be pre-encoded in the period symbols
            flat[static_cast<std::size_t>(posn + f.radius)] = enc;
        }
        out[static_cast<std::size_t>(i)] = f.rule(flat);
    }
    return out;
}

} // namespace algsh

#endif
