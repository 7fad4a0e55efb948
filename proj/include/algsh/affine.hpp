#ifndef ALGSH_AFFINE_HPP
#define ALGSH_AFFINE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algsh/algebra.hpp"

namespace algsh {

/// Unary self-maps on the carrier reachable by affine maps (one variable,
/// all other argument slots constant), graded by nesting depth.
struct AffineClosure {
    std::vector<std::set<Word>> by_depth;          // by_depth[d] = maps of depth <= d
    std::optional<int> stabilized_at;              // least d with by_depth[d] == by_depth[d+1]
    std::map<Word, std::string> witness;           // one expression per map
};

inline AffineClosure affine_closure(const FiniteAlgebra& alg, int max_depth) {
    if (max_depth < 1) throw precondition_error("affine_closure: max_depth must be >= 1");
    const int n = alg.carrier;
    AffineClosure cl;

    std::set<Word> cur;
    Word id(static_cast<std::size_t>(n));
    for (Symbol s = 0; s < n; ++s) id[static_cast<std::size_t>(s)] = s;
    cur.insert(id);
    cl.witness[id] = "xi";
    for (Symbol c = 0; c < n; ++c) {
        Word k(static_cast<std::size_t>(n), c);
        if (cur.insert(k).second) cl.witness[k] = alg.label(c);
    }
    cl.by_depth.push_back(cur);

    for (int d = 0; d < max_depth; ++d) {
        std::set<Word> next = cur;
        for (const Word& g : cur) {
            for (std::size_t op = 0; op < alg.sig.size(); ++op) {
                const int k = alg.sig.arity(op);
                if (k == 0) continue;
                for (int slot = 0; slot < k; ++slot) {
                    Word ctx(static_cast<std::size_t>(k), 0);
                    do {
                        Word h(static_cast<std::size_t>(n));
                        for (Symbol x = 0; x < n; ++x) {
                            Word args = ctx;
                            args[static_cast<std::size_t>(slot)] = g[static_cast<std::size_t>(x)];
                            h[static_cast<std::size_t>(x)] = alg.apply(op, args);
                        }
                        if (next.insert(h).second) {
                            std::string e = alg.sig.name(op) + "(";
                            for (int i = 0; i < k; ++i) {
                                if (i) e += ",";
                                e += (i == slot) ? cl.witness.at(g)
                                                 : alg.label(ctx[static_cast<std::size_t>(i)]);
                            }
                            cl.witness[h] = e + ")";
                        }
                    } while (next_tuple(ctx, n));
                }
            }
        }
        cl.by_depth.push_back(next);
        if (next == cur) {
            cl.stabilized_at = d;
            break;
        }
        cur = std::move(next);
    }
    return cl;
}

/// Least k with by_depth[k] == by_depth[k+1] (== the full closure).  The
/// unary function space is finite, so this always terminates.
inline int shallowness(const FiniteAlgebra& alg) {
    int cap = 4;
    const int hard = alg.carrier * 64 + 64; // generous; growth adds a map per level
    for (;;) {
        AffineClosure cl = affine_closure(alg, cap);
        if (cl.stabilized_at) return *cl.stabilized_at;
        if (cap >= hard) throw internal_error("shallowness: closure failed to stabilize");
        cap = std::min(cap * 2, hard);
    }
}

} // namespace algsh

#endif
