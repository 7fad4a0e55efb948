#ifndef ALGSH_FIXTURES_HPP
#define ALGSH_FIXTURES_HPP

#include <string>
#include <vector>

#include "algsh/recoding.hpp"
#include "algsh/subshift.hpp"
#include "algsh/varieties.hpp"

namespace algsh {

/// Cellwise algebra structure on a subshift: every operation applied
/// coordinate by coordinate.
inline SubshiftAlgebra cellwise_subshift_algebra(const Subshift& x, const FiniteAlgebra& alg) {
    if (x.alphabet != alg.carrier)
        throw type_error("cellwise_subshift_algebra: alphabet mismatch");
    SubshiftAlgebra a;
    a.x = x;
    a.sig = alg.sig;
    for (std::size_t op = 0; op < alg.sig.size(); ++op) {
        const int n = alg.sig.arity(op);
        a.ops.push_back({0, n, x.alphabet, x.alphabet,
                         [alg, op](const Word& w) { return alg.apply(op, w); }});
    }
    return a;
}

// ---------------------------------------------------------------------------
// Four-symbol lattice SFT.  Symbols encode a sign and a digit:
//   0 = 0-,  1 = 0+,  2 = 1-,  3 = 1+
// with the order 0- < 0+ < 1+, 0- < 1- < 1+ (0+ and 1- incomparable).
// Join is cellwise; meet is the cellwise meet followed by rewriting the
// locally forbidden patterns, which closes at radius 3.
// ---------------------------------------------------------------------------

namespace four_symbol {

inline int digit(Symbol s) { return s >> 1; }
inline bool plus(Symbol s) { return (s & 1) == 1; }
inline Symbol make(int d, bool pl) { return 2 * d + (pl ? 1 : 0); }

inline FiniteAlgebra lattice() {
    auto leq = [](Symbol a, Symbol b) { return a == b || a == 0 || b == 3; };
    return lattice_from_order(4, leq, "sign-digit lattice");
}

inline std::vector<Word> forbidden_words() {
    std::vector<Word> forb;
    forb.push_back({0, 3});     // 0- followed by 1+
    for (Symbol a : {0, 2})
        for (Symbol b : {0, 2})
            for (Symbol c = 0; c < 4; ++c)
                if (digit(a) + digit(b) + digit(c) > 0) forb.push_back({a, b, c});
    return forb;
}

inline Subshift shift() { return Subshift::from_forbidden(4, forbidden_words()); }

/// One full pass of the rewrite rules on a buffer, in place; the rules only
/// clear digits, so iterating to a fixpoint terminates.
inline bool rewrite_pass(Word& w) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        // minus-minus pair: clear the digits of the pair and the next cell
        if (!plus(w[i]) && !plus(w[i + 1])) {
            for (std::size_t j = i; j < w.size() && j <= i + 2; ++j)
                if (digit(w[j]) != 0) {
                    w[j] = make(0, plus(w[j]));
                    changed = true;
                }
        }
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == 0 && w[i + 1] == 3) {
            w[i + 1] = 1;
            changed = true;
        }
    return changed;
}

inline Word rewrite_fixpoint(Word w) {
    while (rewrite_pass(w)) {
    }
    return w;
}

/// Closed form of the rewriting on a 7-window of cellwise meets (center 3):
/// digits cleared where a minus-minus pair covers the cell, then the pair
/// rule on the result.
inline Symbol rewrite_rule(const Word& m) {
    auto minus = [&m](int j) { return j >= 0 && j < 7 && !plus(m[static_cast<std::size_t>(j)]); };
    auto covered = [&minus](int j) {
        return (minus(j) && minus(j + 1)) || (minus(j - 1) && minus(j)) ||
               (minus(j - 2) && minus(j - 1));
    };
    auto d2 = [&](int j) { return covered(j) ? 0 : digit(m[static_cast<std::size_t>(j)]); };
    int d = d2(3);
    if (plus(m[3]) && d == 1 && minus(2) && d2(2) == 0) d = 0;
    return make(d, plus(m[3]));
}

/// Window layout: slot-major, radius 3 (x at 0..6, y at 7..13, center 3).
inline Symbol meet_rule(const Word& w) {
    static const FiniteAlgebra lat = lattice();
    Word m(7);
    for (int p = 0; p < 7; ++p) m[static_cast<std::size_t>(p)] =
        lat.apply(0, {w[static_cast<std::size_t>(p)], w[static_cast<std::size_t>(p + 7)]});
    return rewrite_rule(m);
}

inline BlockMap meet_map() {
    return staged_blockmap(
        2, 4, 4,
        [](const Word& c) {
            static const FiniteAlgebra lat = lattice();
            return lat.apply(0, c);
        },
        4, {0, 0}, 3, [](const Word& m) { return rewrite_rule(m); });
}

inline SubshiftAlgebra algebra() {
    SubshiftAlgebra a;
    a.x = shift();
    a.sig = Signature{{{"meet", 2}, {"join", 2}}};
    FiniteAlgebra lat = lattice();
    a.ops.push_back(meet_map());
    a.ops.push_back({0, 2, 4, 4, [lat](const Word& w) { return lat.apply(1, {w[0], w[1]}); }});
    return a;
}

inline Epp meet_points(const Epp& a, const Epp& b) {
    return apply_local_rule({a, b}, 3, meet_rule);
}
inline Epp join_points(const Epp& a, const Epp& b) {
    FiniteAlgebra lat = lattice();
    return apply_local_rule({a, b}, 0, [lat](const Word& w) { return lat.apply(1, {w[0], w[1]}); });
}

inline Epp point_x() {         // ^inf 1+ . 0+ 1+^inf
    Epp p;
    p.left_period = {3};
    p.right_tail = {1};
    p.right_period = {3};
    p.canonicalize();
    return p;
}
inline Epp point_y() { return Epp::uniform(3); }
inline Epp point_zp() { return Epp::uniform(1); }       // ^inf 0+^inf
inline Epp point_zk(int k) {   // 1- at position k, 1+ elsewhere
    Epp base;
    base.left_period = {3};
    base.right_tail = {2};
    base.right_period = {3};
    base.canonicalize();
    return base.shifted(-k);
}

/// t_k applied to a point: alternately meet with z_0..z_k and join with z'.
inline Epp t_k(const Epp& xi, int k) {
    Epp cur = xi;
    for (int j = 0; j <= k; ++j) {
        cur = meet_points(cur, point_zk(j));
        cur = join_points(cur, point_zp());
    }
    return cur;
}

inline Epp expected_tk_x(int k) {   // ^inf 1+ . (0+)^{k+2} 1+^inf
    Epp p;
    p.left_period = {3};
    p.right_tail.assign(static_cast<std::size_t>(k + 2), 1);
    p.right_period = {3};
    p.canonicalize();
    return p;
}

} // namespace four_symbol

// ---------------------------------------------------------------------------
// Quasigroup structure on the binary full shift: x*y = s(x)+s(y),
// x/y = s^{-1}(x)+y, x\y = x+s^{-1}(y), with s the shift and + cellwise
// addition mod 2.  Right multiplication by a constant iterates to
// arbitrarily large radii.
// ---------------------------------------------------------------------------

inline SubshiftAlgebra quasigroup_shift() {
    SubshiftAlgebra a;
    a.x = Subshift::full_shift(2);
    a.sig = find_variety("quasigroup").sig;
    auto xor2 = [](const Word& c) { return (c[0] + c[1]) % 2; };
    auto center = [](const Word& u) { return u[0]; };
    a.ops.push_back(staged_blockmap(2, 2, 2, xor2, 2, {1, 1}, 0, center));      // mul
    a.ops.push_back(staged_blockmap(2, 2, 2, xor2, 2, {-1, 0}, 0, center));     // rdiv
    a.ops.push_back(staged_blockmap(2, 2, 2, xor2, 2, {0, -1}, 0, center));     // ldiv
    return a;
}

// ---------------------------------------------------------------------------
// Groupoid with an absorbing element: alphabet {0, 1, 2, B} (B = index 3),
// forbidden pairs {10, 11, 20, 21}.  The products t_k(xi) = ((xi * x^1) *
// x^2) ... * x^k distinguish depth k from depth k-1.
// ---------------------------------------------------------------------------

namespace bottom_groupoid {

inline FiniteAlgebra algebra() {
    FiniteAlgebra g;
    g.name = "bottom groupoid";
    g.carrier = 4;
    g.sig = Signature{{{"mul", 2}}};
    g.tables = {{0, 0, 0, 3,
                 1, 2, 1, 3,
                 2, 2, 2, 3,
                 3, 3, 3, 3}};
    return g;
}

inline Subshift shift() {
    return Subshift::from_forbidden(4, {{1, 0}, {1, 1}, {2, 0}, {2, 1}});
}

inline Epp point_x(int i) {    // 0s, a single 1 at position i, then 2s
    Epp base;
    base.left_period = {0};
    base.right_tail = {1};
    base.right_period = {2};
    base.canonicalize();
    return base.shifted(-i);
}

inline Epp mul_points(const Epp& a, const Epp& b) {
    FiniteAlgebra g = algebra();
    return apply_local_rule({a, b}, 0, [g](const Word& w) { return g.apply(0, w); });
}

inline Epp t_k(const Epp& xi, int k) {
    Epp cur = xi;
    for (int j = 1; j <= k; ++j) cur = mul_points(cur, point_x(j));
    return cur;
}

struct DepthReport {
    int k = 0;
    bool values_match = true;       // t_k acts on the x^i as expected
    bool depth_refuted = true;      // no depth-(k-1) behavior matches t_k
    std::size_t behaviors_searched = 0;
};

inline DepthReport depth_fixture(int k) {
    DepthReport rep;
    rep.k = k;
    const long long lo = -1, hi = k + 1;
    for (int i = static_cast<int>(lo); i <= hi; ++i) {
        Epp out = t_k(point_x(i), k);
        if (1 <= i && i <= k) {
            for (long long p = lo - 2; p <= hi + 2; ++p)
                if (out.at(p) == 1) rep.values_match = false;
        } else {
            if (!(out == point_x(i))) rep.values_match = false;
        }
    }
    // exhaustive refutation on windows: constants range over the language
    std::vector<Word> tests;
    for (int i = static_cast<int>(lo); i <= hi; ++i) tests.push_back(point_x(i).window(lo, hi));
    const int L = static_cast<int>(hi - lo + 1);
    auto consts_set = language(shift(), L);
    std::vector<Word> consts(consts_set.begin(), consts_set.end());
    BehaviorSearch bs = behavior_closure(algebra(), tests, consts, k - 1);
    rep.behaviors_searched = bs.by_depth_cumulative.size();
    Word target;
    for (int i = static_cast<int>(lo); i <= hi; ++i) {
        Word w = t_k(point_x(i), k).window(lo, hi);
        target.insert(target.end(), w.begin(), w.end());
    }
    rep.depth_refuted = !bs.by_depth_cumulative.count(target);
    return rep;
}

} // namespace bottom_groupoid

// ---------------------------------------------------------------------------
// Non-sofic extremal rule on the three-element chain 0 < a < 1: value 1 at
// the origin, a at all positions +-2^j, 0 elsewhere.
// ---------------------------------------------------------------------------

inline Symbol powers_of_two_rule(long long i) {
    if (i == 0) return 2;
    long long a = i < 0 ? -i : i;
    while (a % 2 == 0) a /= 2;
    return a == 1 ? 1 : 0;
}

} // namespace algsh

#endif
