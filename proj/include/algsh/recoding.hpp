#ifndef ALGSH_RECODING_HPP
#define ALGSH_RECODING_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "algsh/errors.hpp"
#include "algsh/subshift.hpp"
#include "algsh/varieties.hpp"

namespace algsh {

// ---------------------------------------------------------------------------
// A subshift carrying algebra operations given as block maps.
// ---------------------------------------------------------------------------

struct SubshiftAlgebra {
    Subshift x;
    Signature sig;
    std::vector<BlockMap> ops;

    int max_op_radius() const {
        int r = 0;
        for (const auto& f : ops) r = std::max(r, f.radius);
        return r;
    }

    /// Image containment of every operation: f(X, ..., X) must lie in X.
    void validate() const {
        if (ops.size() != sig.size())
            throw type_error("SubshiftAlgebra: operation count does not match signature");
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (ops[i].arity != sig.arity(i) || ops[i].domain_alphabet != x.alphabet ||
                ops[i].codomain_alphabet != x.alphabet)
                throw type_error("SubshiftAlgebra: bad operation shape for " + sig.name(i));
            std::vector<Subshift> parts(static_cast<std::size_t>(ops[i].arity), x);
            if (parts.empty()) continue;  // nullary ops checked via constants elsewhere
            if (!contains(x, apply_blockmap_image(ops[i], parts)).yes)
                throw precondition_error("SubshiftAlgebra: image of " + sig.name(i) +
                                         " leaves the subshift");
        }
    }
};

/// Evaluates a term over variable windows by sliding composition; exact for
/// block maps applied to independent variables.  Variable windows must be
/// long enough for the term's accumulated radius.
inline Symbol eval_term_center(const SubshiftAlgebra& a, const Term& t,
                               const std::vector<Word>& var_windows, int center) {
    if (t.var >= 0) return var_windows[static_cast<std::size_t>(t.var)]
                                      [static_cast<std::size_t>(center)];
    const BlockMap& f = a.ops[static_cast<std::size_t>(t.op)];
    Word flat(static_cast<std::size_t>(f.arity) * static_cast<std::size_t>(2 * f.radius + 1));
    for (int slot = 0; slot < f.arity; ++slot)
        for (int d = -f.radius; d <= f.radius; ++d)
            flat[static_cast<std::size_t>(slot) * static_cast<std::size_t>(2 * f.radius + 1) +
                 static_cast<std::size_t>(d + f.radius)] =
                eval_term_center(a, t.args[static_cast<std::size_t>(slot)], var_windows,
                                 center + d);
    return f.rule(flat);
}

inline int term_radius(const SubshiftAlgebra& a, const Term& t) {
    if (t.var >= 0) return 0;
    int sub = 0;
    for (const auto& arg : t.args) sub = std::max(sub, term_radius(a, arg));
    return sub + a.ops[static_cast<std::size_t>(t.op)].radius;
}

/// Checks the variety's identities on variable assignments drawn from windows
/// of X, wide enough for both sides' radii.  Exhaustive while the assignment
/// space fits the budget; beyond that a fixed-seed uniform sample of `budget`
/// assignments is used, so wide-radius operations stay checkable.
inline IdentityVerdict check_subshift_identities(const SubshiftAlgebra& a,
                                                 const Variety& variety,
                                                 std::size_t budget = 200000) {
    if (!(a.sig == variety.sig))
        throw type_error("check_subshift_identities: signature mismatch");
    IdentityVerdict verdict;
    for (const Identity& id : variety.identities) {
        const int R = std::max(term_radius(a, id.lhs), term_radius(a, id.rhs));
        const auto words = language(a.x, 2 * R + 1);
        std::vector<const Word*> ws;
        for (const auto& w : words) ws.push_back(&w);
        double space = 1;
        for (int v = 0; v < id.nvars; ++v) space *= static_cast<double>(ws.size());
        const bool sampled = space > static_cast<double>(budget);
        std::uint64_t seed = 0x9e3779b97f4a7c15ull;
        std::vector<std::size_t> pick(static_cast<std::size_t>(id.nvars), 0);
        std::size_t iterations = 0;
        bool violated = false;
        for (;;) {
            if (sampled) {
                for (auto& p : pick) {
                    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
                    p = static_cast<std::size_t>((seed >> 17) % ws.size());
                }
            }
            std::vector<Word> assign;
            for (std::size_t v = 0; v < pick.size(); ++v) assign.push_back(*ws[pick[v]]);
            bool guard = true;
            if (id.guard_leq) {
                if (a.ops[0].radius != 0)
                    throw precondition_error(
                        "check_subshift_identities: guarded identity needs a cellwise meet");
                const Word& lo = assign[static_cast<std::size_t>(id.guard_leq->first)];
                const Word& hi = assign[static_cast<std::size_t>(id.guard_leq->second)];
                for (std::size_t i = 0; i < lo.size() && guard; ++i)
                    guard = a.ops[0].rule({lo[i], hi[i]}) == lo[i];
            }
            if (guard &&
                eval_term_center(a, id.lhs, assign, R) != eval_term_center(a, id.rhs, assign, R)) {
                verdict.pass = false;
                Word witness;
                for (const Word& w : assign)
                    witness.insert(witness.end(), w.begin(), w.end());
                verdict.violations.push_back({id.name, witness});
                violated = true;
            }
            if (violated) break;
            if (sampled) {
                if (++iterations >= budget) break;
                continue;
            }
            std::size_t i = pick.size();
            bool done = true;
            while (i-- > 0) {
                if (++pick[i] < ws.size()) {
                    done = false;
                    break;
                }
                pick[i] = 0;
            }
            if (done) break;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Affine closure over a subshift: unary maps generated by plugging closure
// members into one operation slot, with constant windows elsewhere.  Members
// are kept as radius-reduced center tables.
// ---------------------------------------------------------------------------

struct AffineTable {
    int radius = 0;
    std::map<Word, Symbol> table;   // allowed (2*radius+1)-words -> symbol
    std::string witness;
};

struct AffineBlockClosure {
    std::vector<AffineTable> members;
    bool stabilized = false;
    int radius_limit = 0;
    std::string unbounded_witness;  // set when not stabilized
    int generations = 0;

    int working_radius() const {
        int r = 0;
        for (const auto& m : members) r = std::max(r, m.radius);
        return r;
    }
};

namespace detail {

class LangCache {
  public:
    explicit LangCache(const Subshift& x) : x_(&x) {}
    const std::vector<Word>& words(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        auto ws = language(*x_, n);
        return cache_.emplace(n, std::vector<Word>(ws.begin(), ws.end())).first->second;
    }

  private:
    const Subshift* x_;
    std::map<int, std::vector<Word>> cache_;
};

/// Shrinks a center table to its true radius: drop a boundary cell pair when
/// the output never depends on it.
inline void reduce_table(AffineTable& t, LangCache& lang) {
    while (t.radius > 0) {
        std::map<Word, Symbol> core;
        bool reducible = true;
        for (const auto& [w, s] : t.table) {
            Word c(w.begin() + 1, w.end() - 1);
            auto [it, fresh] = core.try_emplace(c, s);
            if (!fresh && it->second != s) {
                reducible = false;
                break;
            }
        }
        if (!reducible) break;
        // every core word of the narrower language must be covered
        if (core.size() != lang.words(2 * t.radius - 1).size()) break;
        t.table = std::move(core);
        --t.radius;
    }
}

} // namespace detail

inline AffineBlockClosure affine_block_closure(const SubshiftAlgebra& a, int radius_limit,
                                               std::size_t max_members = 100000) {
    if (radius_limit < a.max_op_radius())
        throw precondition_error("affine_block_closure: radius_limit below operation radius");
    a.validate();
    detail::LangCache lang(a.x);
    AffineBlockClosure cl;
    cl.radius_limit = radius_limit;

    auto key_of = [](const AffineTable& t) { return std::make_pair(t.radius, t.table); };
    std::set<std::pair<int, std::map<Word, Symbol>>> seen;
    std::deque<std::size_t> work;
    auto add = [&](AffineTable t) {
        detail::reduce_table(t, lang);
        if (seen.insert(key_of(t)).second) {
            if (cl.members.size() >= max_members)
                throw resource_error("affine_block_closure: member limit " +
                                     std::to_string(max_members) + " exceeded");
            cl.members.push_back(std::move(t));
            work.push_back(cl.members.size() - 1);
            return static_cast<long>(cl.members.size()) - 1;
        }
        return -1L;
    };

    {
        AffineTable id;
        id.radius = 0;
        for (const Word& w : lang.words(1)) id.table[w] = w[0];
        id.witness = "xi";
        add(std::move(id));
        for (const Word& c : lang.words(1)) {
            AffineTable k;
            k.radius = 0;
            for (const Word& w : lang.words(1)) k.table[w] = c[0];
            k.witness = "const(" + std::to_string(c[0]) + ")";
            add(std::move(k));
        }
    }

    auto window_str = [](const Word& w) {
        std::string s = "[";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(w[i]);
        }
        return s + "]";
    };

    // For composites whose naive radius exceeds the limit, windows are grouped
    // by their radius-limit core together with the member's sliding output
    // vector; two vectors under one core that disagree after the operation
    // certify irreducibility.  The grouping depends only on the member and
    // the operation radius, so it is cached, with the vectors deduplicated
    // and the co-occurring pairs collected once.
    struct CoreInfo {
        std::vector<Word> vs;                               // distinct output vectors
        std::vector<std::pair<Word, std::vector<int>>> groups;  // core -> vector ids
    };
    std::map<std::pair<std::size_t, int>, CoreInfo> core_cache;
    auto core_vectors = [&](std::size_t gi, int r) -> const CoreInfo& {
        auto key = std::make_pair(gi, r);
        auto it = core_cache.find(key);
        if (it != core_cache.end()) return it->second;
        const AffineTable& g = cl.members[gi];
        const int R = g.radius + r;
        std::unordered_map<Word, Symbol, WordHash> fast(g.table.begin(), g.table.end());
        std::unordered_map<Word, int, WordHash> vid;
        std::map<Word, std::set<int>> by_core;
        CoreInfo info;
        Word sub(static_cast<std::size_t>(2 * g.radius + 1));
        for (const Word& w : lang.words(2 * R + 1)) {
            Word v(static_cast<std::size_t>(2 * r + 1));
            bool alive = true;
            for (int d = -r; d <= r; ++d) {
                sub.assign(w.begin() + (R + d - g.radius), w.begin() + (R + d + g.radius + 1));
                auto mit = fast.find(sub);
                if (mit == fast.end()) {
                    alive = false;
                    break;
                }
                v[static_cast<std::size_t>(d + r)] = mit->second;
            }
            if (!alive) continue;
            auto [vit, fresh] = vid.try_emplace(v, static_cast<int>(info.vs.size()));
            if (fresh) info.vs.push_back(std::move(v));
            Word core(w.begin() + (R - radius_limit), w.begin() + (R + radius_limit + 1));
            by_core[core].insert(vit->second);
        }
        for (auto& [core, ids] : by_core)
            info.groups.emplace_back(core, std::vector<int>(ids.begin(), ids.end()));
        return core_cache.emplace(key, std::move(info)).first->second;
    };

    // Each new member is expanded immediately, so radius growth along a chain
    // of compositions is detected before a generation's breadth is
    // materialized.
    std::function<bool(std::size_t)> process = [&](std::size_t gi) -> bool {
        ++cl.generations;
        const AffineTable g = cl.members[gi];  // copy: members may grow
        for (std::size_t op = 0; op < a.ops.size(); ++op) {
            const BlockMap& f = a.ops[op];
            const int n = f.arity;
            if (n == 0) continue;
            const int r = f.radius;
            const bool over = g.radius + r > radius_limit;
            for (int slot = 0; slot < n; ++slot) {
                const auto& consts = lang.words(2 * r + 1);
                std::vector<std::size_t> pick(static_cast<std::size_t>(n - 1), 0);
                for (;;) {
                    auto expr = [&] {
                        std::string e = a.sig.name(op) + "(";
                        for (int s2 = 0; s2 < n; ++s2) {
                            if (s2) e += ",";
                            e += (s2 == slot)
                                     ? g.witness
                                     : window_str(consts[pick[static_cast<std::size_t>(
                                           s2 < slot ? s2 : s2 - 1)]]);
                        }
                        return e + ")";
                    };
                    auto eval_with = [&](const Word& v) {
                        Word flat(static_cast<std::size_t>(n) *
                                  static_cast<std::size_t>(2 * r + 1));
                        for (int s2 = 0; s2 < n; ++s2)
                            for (int d = -r; d <= r; ++d)
                                flat[static_cast<std::size_t>(s2) *
                                         static_cast<std::size_t>(2 * r + 1) +
                                     static_cast<std::size_t>(d + r)] =
                                    (s2 == slot)
                                        ? v[static_cast<std::size_t>(d + r)]
                                        : consts[pick[static_cast<std::size_t>(
                                              s2 < slot ? s2 : s2 - 1)]]
                                                [static_cast<std::size_t>(d + r)];
                        return f.rule(flat);
                    };
                    AffineTable t;
                    bool alive = true;
    if (over) {
                        t.radius = radius_limit;
                        const CoreInfo& ci = core_vectors(gi, r);
                        Word outs(ci.vs.size());
                        for (std::size_t i = 0; i < ci.vs.size(); ++i)
                            outs[i] = eval_with(ci.vs[i]);
                        for (const auto& [core, ids] : ci.groups) {
                            const Symbol out = outs[static_cast<std::size_t>(ids[0])];
                            for (std::size_t i = 1; i < ids.size(); ++i)
                                if (outs[static_cast<std::size_t>(ids[i])] != out) {
                                    cl.unbounded_witness = expr();
                                    return false;
                                }
                            t.table.emplace_hint(t.table.end(), core, out);
                        }
                        // cores whose extensions all left the language
                        if (t.table.size() != lang.words(2 * radius_limit + 1).size())
                            alive = false;
                    } else {
                        t.radius = g.radius + r;
                        for (const Word& w : lang.words(2 * t.radius + 1)) {
                            Word v(static_cast<std::size_t>(2 * r + 1));
                            for (int d = -r; d <= r; ++d) {
                                Word sub(w.begin() + (r + d),
                                         w.begin() + (r + d + 2 * g.radius + 1));
                                auto it = g.table.find(sub);
                                if (it == g.table.end()) {
                                    // the member's sliding image left the
                                    // language; composite undefined here
                                    alive = false;
                                    break;
                                }
                                v[static_cast<std::size_t>(d + r)] = it->second;
                            }
                            if (!alive) break;
                            t.table.emplace_hint(t.table.end(), w, eval_with(v));
                        }
                    }
                    if (alive) {
                        detail::reduce_table(t, lang);
                        if (t.radius > radius_limit) {
                            cl.unbounded_witness = expr();
                            return false;
                        }
                        if (seen.insert(key_of(t)).second) {
                            t.witness = expr();
                            if (cl.members.size() >= max_members)
                                throw resource_error("affine_block_closure: member limit " +
                                                     std::to_string(max_members) + " exceeded");
                            cl.members.push_back(std::move(t));
                            if (!process(cl.members.size() - 1)) return false;
                        }
                    }
                    // next constant tuple
                    std::size_t i = pick.size();
                    bool done = true;
                    while (i-- > 0) {
                        if (++pick[i] < consts.size()) {
                            done = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (done) break;
                }
            }
        }
        return true;
    };

    while (!work.empty()) {
        const std::size_t gi = work.front();
        work.pop_front();
        if (!process(gi)) {
            cl.stabilized = false;
            return cl;
        }
    }
    cl.stabilized = true;
    return cl;
}

// ---------------------------------------------------------------------------
// Recoding to a cellwise algebra on the quotient alphabet.
// ---------------------------------------------------------------------------

struct RecodedSubshift {
    int r = 0;                          // window radius of the quotient map
    int nclasses = 0;
    std::vector<Word> class_rep;        // a representative (2r+1)-word per class
    std::map<Word, int> word_class;
    Subshift y;                         // image over the class alphabet
    BlockMap psi;                       // X -> Y
    std::vector<std::map<Word, Symbol>> induced_ops;    // class tuples -> class
};

inline RecodedSubshift recode(const SubshiftAlgebra& a, const AffineBlockClosure& cl) {
    if (!cl.stabilized)
        throw precondition_error("recode: affine closure not stabilized; witness " +
                                 cl.unbounded_witness);
    RecodedSubshift rc;
    rc.r = std::max(cl.working_radius(), a.max_op_radius());
    const int W = 2 * rc.r + 1;
    const auto words_set = language(a.x, W);
    std::vector<Word> words(words_set.begin(), words_set.end());
    // extend each member table to radius r by center restriction
    auto member_at = [&](const AffineTable& m, const Word& w) {
        Word sub(w.begin() + (rc.r - m.radius), w.begin() + (rc.r + m.radius + 1));
        auto it = m.table.find(sub);
        if (it == m.table.end()) throw internal_error("recode: window outside member table");
        return it->second;
    };
    // group words by their member-output signatures
    std::map<Word, int> sig_class;
    for (const Word& w : words) {
        Word sig;
        for (const auto& m : cl.members) sig.push_back(member_at(m, w));
        auto [it, fresh] = sig_class.try_emplace(sig, static_cast<int>(rc.class_rep.size()));
        if (fresh) rc.class_rep.push_back(w);
        rc.word_class[w] = it->second;
    }
    rc.nclasses = static_cast<int>(rc.class_rep.size());
    // class refines letter equality (identity is a closure member)
    for (const auto& [w, c] : rc.word_class)
        if (w[static_cast<std::size_t>(rc.r)] !=
            rc.class_rep[static_cast<std::size_t>(c)][static_cast<std::size_t>(rc.r)])
            throw internal_error("recode: class does not determine the center letter");
    auto word_class = rc.word_class;
    const int r = rc.r;
    rc.psi = {r, 1, a.x.alphabet, rc.nclasses, [word_class, r](const Word& w) {
                  auto it = word_class.find(w);
                  if (it == word_class.end())
                      throw internal_error("recode: window outside the language");
                  return it->second;
              }};
    rc.y = apply_blockmap_image(rc.psi, {a.x});
    // induced operations must be cellwise: the output class at the center
    // depends only on the argument classes at the center
    for (std::size_t op = 0; op < a.ops.size(); ++op) {
        const BlockMap& f = a.ops[static_cast<std::size_t>(op)];
        const int n = f.arity;
        std::map<Word, Symbol> table;
        if (n == 0) {
            // constants induce the class of their constant output window
            Word out(static_cast<std::size_t>(W), f.rule(Word{}));
            auto oit = rc.word_class.find(out);
            if (oit == rc.word_class.end())
                throw internal_error("recode: operation output leaves the language");
            table.try_emplace(Word{}, oit->second);
            rc.induced_ops.push_back(std::move(table));
            continue;
        }
        const int R = rc.r + f.radius;
        std::vector<Subshift> parts(static_cast<std::size_t>(n), a.x);
        Subshift dom = n == 1 ? a.x : product_shift(parts);
        std::vector<int> alphabets(static_cast<std::size_t>(n), a.x.alphabet);
        for (const Word& enc : language(dom, 2 * R + 1)) {
            // split into per-argument windows
            std::vector<Word> arg(static_cast<std::size_t>(n),
                                  Word(static_cast<std::size_t>(2 * R + 1)));
            for (int pos = 0; pos <= 2 * R; ++pos) {
                Word t = n == 1 ? Word{enc[static_cast<std::size_t>(pos)]}
                                : tuple_decode(alphabets, enc[static_cast<std::size_t>(pos)]);
                for (int j = 0; j < n; ++j)
                    arg[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)] =
                        t[static_cast<std::size_t>(j)];
            }
            // output window of f at positions [-r, r] around the center
            Word out(static_cast<std::size_t>(W));
            for (int p = -rc.r; p <= rc.r; ++p) {
                Word flat(static_cast<std::size_t>(n) *
                          static_cast<std::size_t>(2 * f.radius + 1));
                for (int j = 0; j < n; ++j)
                    for (int d = -f.radius; d <= f.radius; ++d)
                        flat[static_cast<std::size_t>(j) *
                                 static_cast<std::size_t>(2 * f.radius + 1) +
                             static_cast<std::size_t>(d + f.radius)] =
                            arg[static_cast<std::size_t>(j)]
                               [static_cast<std::size_t>(R + p + d)];
                out[static_cast<std::size_t>(p + rc.r)] = f.rule(flat);
            }
            auto oit = rc.word_class.find(out);
            if (oit == rc.word_class.end())
                throw internal_error("recode: operation output leaves the language");
            Word key;
            for (int j = 0; j < n; ++j) {
                Word cw(arg[static_cast<std::size_t>(j)].begin() + (R - rc.r),
                        arg[static_cast<std::size_t>(j)].begin() + (R + rc.r + 1));
                key.push_back(rc.word_class.at(cw));
            }
            auto [it, fresh] = table.try_emplace(key, oit->second);
            if (!fresh && it->second != oit->second)
                throw internal_error("recode: induced operation " + a.sig.name(op) +
                                     " is not cellwise");
        }
        rc.induced_ops.push_back(std::move(table));
    }
    return rc;
}

// ---------------------------------------------------------------------------
// Depth distinguishability by behavior closure: affine expressions evaluated
// on a finite set of test points over a window, with constants drawn from
// the language.  Exact as a refutation: if no depth-d behavior matches, no
// depth-d affine map can equal the target.
// ---------------------------------------------------------------------------

struct BehaviorSearch {
    // behaviors are flattened output matrices: tests x window cells
    std::set<Word> by_depth_cumulative;     // after the last computed depth
    std::vector<std::size_t> sizes;         // |behaviors| per depth
};

/// All behaviors of affine expressions of depth <= max_depth, where the ops
/// are radius 0 (composition on windows is then exact).  `tests` are the
/// test-point windows (each of window length), constants range over `consts`.
inline BehaviorSearch behavior_closure(const FiniteAlgebra& alg, const std::vector<Word>& tests,
                                       const std::vector<Word>& consts, int max_depth) {
    for (std::size_t op = 0; op < alg.sig.size(); ++op)
        if (alg.sig.arity(op) == 0)
            throw precondition_error("behavior_closure: nullary ops unsupported");
    const std::size_t L = tests.empty() ? 0 : tests[0].size();
    BehaviorSearch bs;
    std::set<Word> cur;
    {
        Word id;
        for (const Word& t : tests) id.insert(id.end(), t.begin(), t.end());
        cur.insert(id);
        for (const Word& c : consts) {
            if (c.size() != L) throw type_error("behavior_closure: window length mismatch");
            Word k;
            for (std::size_t i = 0; i < tests.size(); ++i)
                k.insert(k.end(), c.begin(), c.end());
            cur.insert(k);
        }
    }
    bs.sizes.push_back(cur.size());
    for (int d = 1; d <= max_depth; ++d) {
        std::set<Word> next = cur;
        for (const Word& b : cur) {
            for (std::size_t op = 0; op < alg.sig.size(); ++op) {
                const int n = alg.sig.arity(op);
                for (int slot = 0; slot < n; ++slot) {
                    std::vector<std::size_t> pick(static_cast<std::size_t>(n - 1), 0);
                    for (;;) {
                        Word out(b.size());
                        for (std::size_t i = 0; i < b.size(); ++i) {
                            Word args(static_cast<std::size_t>(n));
                            for (int s2 = 0; s2 < n; ++s2)
                                args[static_cast<std::size_t>(s2)] =
                                    (s2 == slot)
                                        ? b[i]
                                        : consts[pick[static_cast<std::size_t>(
                                              s2 < slot ? s2 : s2 - 1)]][i % L];
                            out[i] = alg.apply(op, args);
                        }
                        next.insert(std::move(out));
                        std::size_t i = pick.size();
                        bool done = true;
                        while (i-- > 0) {
                            if (++pick[i] < consts.size()) {
                                done = false;
                                break;
                            }
                            pick[i] = 0;
                        }
                        if (done) break;
                    }
                }
            }
        }
        cur = std::move(next);
        bs.sizes.push_back(cur.size());
    }
    bs.by_depth_cumulative = std::move(cur);
    return bs;
}

} // namespace algsh

#endif
