#ifndef ALGSH_VARIETIES_HPP
#define ALGSH_VARIETIES_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algsh/algebra.hpp"
#include "algsh/errors.hpp"

namespace algsh {

// ---------------------------------------------------------------------------
// Identity catalog.  Terms are over numbered variables; operations refer to
// positions in the variety's signature, so algebras are matched positionally
// (arities must line up, names are free).
// ---------------------------------------------------------------------------

struct Term {
    int var = -1;                 // >= 0: variable index
    int op = -1;                  // >= 0: operation position in the signature
    std::vector<Term> args;

    static Term v(int i) { return Term{i, -1, {}}; }
    static Term f(int op, std::vector<Term> args) { return Term{-1, op, std::move(args)}; }

    Symbol eval(const FiniteAlgebra& alg, const Word& assign) const {
        if (var >= 0) return assign[static_cast<std::size_t>(var)];
        Word vals;
        vals.reserve(args.size());
        for (const Term& t : args) vals.push_back(t.eval(alg, assign));
        return alg.apply(static_cast<std::size_t>(op), vals);
    }
};

struct Identity {
    std::string name;
    int nvars = 0;
    Term lhs, rhs;
    // Optional guard: identity is only required when guard_lhs <= guard_rhs
    // in the lattice order induced by operation 0 (meet).  Used for the
    // modularity clause, which the catalog states as a conditional law.
    std::optional<std::pair<int, int>> guard_leq;
};

struct Variety {
    std::string name;
    Signature sig;                 // canonical role order
    std::vector<Identity> identities;
};

namespace detail {

inline Term V(int i) { return Term::v(i); }
inline Term F(int op, std::vector<Term> a) { return Term::f(op, std::move(a)); }

inline std::vector<Identity> lattice_identities() {
    // op 0 = meet, op 1 = join
    std::vector<Identity> ids;
    for (int o = 0; o < 2; ++o) {
        const std::string suffix = o == 0 ? " (meet)" : " (join)";
        ids.push_back({"idempotence" + suffix, 1, F(o, {V(0), V(0)}), V(0), {}});
        ids.push_back({"commutativity" + suffix, 2, F(o, {V(0), V(1)}), F(o, {V(1), V(0)}), {}});
        ids.push_back({"associativity" + suffix, 3,
                       F(o, {F(o, {V(0), V(1)}), V(2)}), F(o, {V(0), F(o, {V(1), V(2)})}), {}});
        ids.push_back({"absorption" + suffix, 2,
                       F(o, {V(0), F(1 - o, {V(0), V(1)})}), V(0), {}});
    }
    return ids;
}

} // namespace detail

inline const std::vector<Variety>& variety_catalog() {
    using detail::F;
    using detail::V;
    static const std::vector<Variety> catalog = [] {
        std::vector<Variety> vs;

        Variety lat{"lattice", Signature{{{"meet", 2}, {"join", 2}}}, detail::lattice_identities()};
        vs.push_back(lat);

        Variety mod = lat;
        mod.name = "modular-lattice";
        mod.identities.push_back({"modularity (a<=b)", 3,
                                  F(1, {V(0), F(0, {V(1), V(2)})}),
                                  F(0, {V(1), F(1, {V(0), V(2)})}),
                                  std::pair<int, int>{0, 1}});
        vs.push_back(mod);

        Variety dist = lat;
        dist.name = "distributive-lattice";
        dist.identities.push_back({"distributivity (join over meet)", 3,
                                   F(1, {V(0), F(0, {V(1), V(2)})}),
                                   F(0, {F(1, {V(0), V(1)}), F(1, {V(0), V(2)})}), {}});
        dist.identities.push_back({"distributivity (meet over join)", 3,
                                   F(0, {V(0), F(1, {V(1), V(2)})}),
                                   F(1, {F(0, {V(0), V(1)}), F(0, {V(0), V(2)})}), {}});
        vs.push_back(dist);

        Variety boole = dist;
        boole.name = "boolean-algebra";
        boole.sig = Signature{{{"meet", 2}, {"join", 2}, {"compl", 1}, {"one", 0}, {"zero", 0}}};
        boole.identities.push_back({"bottom absorption", 1, F(0, {V(0), F(4, {})}), F(4, {}), {}});
        boole.identities.push_back({"top absorption", 1, F(1, {V(0), F(3, {})}), F(3, {}), {}});
        boole.identities.push_back({"complement meet", 1, F(0, {V(0), F(2, {V(0)})}), F(4, {}), {}});
        boole.identities.push_back({"complement join", 1, F(1, {V(0), F(2, {V(0)})}), F(3, {}), {}});
        vs.push_back(boole);

        Variety qg{"quasigroup", Signature{{{"mul", 2}, {"rdiv", 2}, {"ldiv", 2}}}, {}};
        qg.identities.push_back({"x*(x\\y)=y", 2, F(0, {V(0), F(2, {V(0), V(1)})}), V(1), {}});
        qg.identities.push_back({"x\\(x*y)=y", 2, F(2, {V(0), F(0, {V(0), V(1)})}), V(1), {}});
        qg.identities.push_back({"(x/y)*y=x", 2, F(0, {F(1, {V(0), V(1)}), V(1)}), V(0), {}});
        qg.identities.push_back({"(x*y)/y=x", 2, F(1, {F(0, {V(0), V(1)}), V(1)}), V(0), {}});
        vs.push_back(qg);

        // Semigroups, monoids and groups carry their defining laws
        // explicitly (associativity and unit/inverse laws).
        Variety sg{"semigroup", Signature{{{"mul", 2}}}, {}};
        sg.identities.push_back({"associativity", 3,
                                 F(0, {F(0, {V(0), V(1)}), V(2)}), F(0, {V(0), F(0, {V(1), V(2)})}), {}});
        vs.push_back(sg);

        Variety mon = sg;
        mon.name = "monoid";
        mon.sig = Signature{{{"mul", 2}, {"e", 0}}};
        mon.identities.push_back({"left unit", 1, F(0, {F(1, {}), V(0)}), V(0), {}});
        mon.identities.push_back({"right unit", 1, F(0, {V(0), F(1, {})}), V(0), {}});
        vs.push_back(mon);

        Variety grp = sg;
        grp.name = "group";
        grp.sig = Signature{{{"mul", 2}, {"inv", 1}, {"e", 0}}};
        grp.identities.push_back({"left unit", 1, F(0, {F(2, {}), V(0)}), V(0), {}});
        grp.identities.push_back({"right unit", 1, F(0, {V(0), F(2, {})}), V(0), {}});
        grp.identities.push_back({"left inverse", 1, F(0, {F(1, {V(0)}), V(0)}), F(2, {}), {}});
        grp.identities.push_back({"right inverse", 1, F(0, {V(0), F(1, {V(0)})}), F(2, {}), {}});
        vs.push_back(grp);

        return vs;
    }();
    return catalog;
}

inline const Variety& find_variety(const std::string& name) {
    for (const Variety& v : variety_catalog())
        if (v.name == name) return v;
    throw type_error("unknown variety: " + name);
}

// ---------------------------------------------------------------------------
// check_identities
// ---------------------------------------------------------------------------

struct IdentityViolation {
    std::string identity;
    Word witness;           // variable assignment
};

struct IdentityVerdict {
    bool pass = true;
    std::vector<IdentityViolation> violations;   // first witness per identity
};

inline IdentityVerdict check_identities(const FiniteAlgebra& alg, const Variety& variety) {
    if (alg.sig.size() != variety.sig.size())
        throw type_error("algebra has " + std::to_string(alg.sig.size()) + " operations, variety " +
                         variety.name + " needs " + std::to_string(variety.sig.size()));
    for (std::size_t op = 0; op < variety.sig.size(); ++op)
        if (alg.sig.arity(op) != variety.sig.arity(op))
            throw type_error("operation " + alg.sig.name(op) + " has arity " +
                             std::to_string(alg.sig.arity(op)) + ", variety role " +
                             variety.sig.name(op) + " needs arity " +
                             std::to_string(variety.sig.arity(op)));
    IdentityVerdict v;
    for (const Identity& id : variety.identities) {
        Word assign(static_cast<std::size_t>(id.nvars), 0);
        bool violated = false;
        do {
            if (id.guard_leq) {
                // lattice order from operation 0 (meet)
                const Symbol a = assign[static_cast<std::size_t>(id.guard_leq->first)];
                const Symbol b = assign[static_cast<std::size_t>(id.guard_leq->second)];
                if (alg.apply(0, {a, b}) != a) continue;
            }
            if (id.lhs.eval(alg, assign) != id.rhs.eval(alg, assign)) {
                v.pass = false;
                v.violations.push_back({id.name, assign});
                violated = true;
                break;
            }
        } while (id.nvars > 0 && next_tuple(assign, alg.carrier));
        if (!violated && id.nvars == 0) {
            if (id.lhs.eval(alg, {}) != id.rhs.eval(alg, {})) {
                v.pass = false;
                v.violations.push_back({id.name, {}});
            }
        }
    }
    return v;
}

inline IdentityVerdict check_identities(const FiniteAlgebra& alg, const std::string& variety_name) {
    return check_identities(alg, find_variety(variety_name));
}

// ---------------------------------------------------------------------------
// Lattice order helpers.
// ---------------------------------------------------------------------------

struct LatticeOrder {
    const FiniteAlgebra* alg;
    explicit LatticeOrder(const FiniteAlgebra& a) : alg(&a) {}
    Symbol meet(Symbol a, Symbol b) const { return alg->apply(0, {a, b}); }
    Symbol join(Symbol a, Symbol b) const { return alg->apply(1, {a, b}); }
    bool leq(Symbol a, Symbol b) const { return meet(a, b) == a; }
    Symbol bottom() const {
        Symbol b = 0;
        for (Symbol s = 1; s < alg->carrier; ++s) b = meet(b, s);
        return b;
    }
    Symbol top() const {
        Symbol t = 0;
        for (Symbol s = 1; s < alg->carrier; ++s) t = join(t, s);
        return t;
    }
    Symbol meet_all(const std::vector<Symbol>& xs) const {
        Symbol m = xs.at(0);
        for (std::size_t i = 1; i < xs.size(); ++i) m = meet(m, xs[i]);
        return m;
    }
    Symbol join_all(const std::vector<Symbol>& xs) const {
        Symbol m = xs.at(0);
        for (std::size_t i = 1; i < xs.size(); ++i) m = join(m, xs[i]);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Builders for standard algebras.
// ---------------------------------------------------------------------------

/// Lattice from a reflexive partial order given as a <= matrix.
inline FiniteAlgebra lattice_from_order(int n, const std::function<bool(Symbol, Symbol)>& leq,
                                        const std::string& name = "lattice") {
    FiniteAlgebra a;
    a.name = name;
    a.carrier = n;
    a.sig = Signature{{{"meet", 2}, {"join", 2}}};
    std::vector<Symbol> meet_t, join_t;
    for (Symbol x = 0; x < n; ++x)
        for (Symbol y = 0; y < n; ++y) {
            Symbol inf = -1, sup = -1;
            for (Symbol z = 0; z < n; ++z) {
                if (leq(z, x) && leq(z, y) && (inf < 0 || leq(inf, z))) inf = z;
                if (leq(x, z) && leq(y, z) && (sup < 0 || leq(z, sup))) sup = z;
            }
            // verify greatest/least among bounds
            for (Symbol z = 0; z < n; ++z) {
                if (leq(z, x) && leq(z, y) && !leq(z, inf))
                    throw type_error(name + ": pair has no meet");
                if (leq(x, z) && leq(y, z) && !leq(sup, z))
                    throw type_error(name + ": pair has no join");
            }
            if (inf < 0 || sup < 0) throw type_error(name + ": not a lattice");
            meet_t.push_back(inf);
            join_t.push_back(sup);
        }
    a.tables = {meet_t, join_t};
    return a;
}

inline FiniteAlgebra chain_lattice(int n) {
    return lattice_from_order(n, [](Symbol a, Symbol b) { return a <= b; },
                              "chain" + std::to_string(n));
}

/// Pentagon: 0 < a < b < 1 and 0 < c < 1, with a,b incomparable to c.
/// Elements 0,1,2,3,4 = 0,a,b,c,1.
inline FiniteAlgebra pentagon_n5() {
    auto leq = [](Symbol x, Symbol y) {
        if (x == y || x == 0 || y == 4) return true;
        if (x == 1 && y == 2) return true;
        return false;
    };
    return lattice_from_order(5, leq, "N5");
}

/// Diamond: 0 < a,b,c < 1 with a,b,c pairwise incomparable.
inline FiniteAlgebra diamond_m3() {
    auto leq = [](Symbol x, Symbol y) { return x == y || x == 0 || y == 4; };
    return lattice_from_order(5, leq, "M3");
}

/// Power-set Boolean algebra 2^T; elements are bitmasks over `atoms` atoms.
inline FiniteAlgebra powerset_boolean(int atoms) {
    FiniteAlgebra a;
    a.name = "2^" + std::to_string(atoms);
    a.carrier = 1 << atoms;
    a.sig = find_variety("boolean-algebra").sig;
    const int n = a.carrier;
    std::vector<Symbol> meet_t, join_t, compl_t;
    for (Symbol x = 0; x < n; ++x) {
        compl_t.push_back((n - 1) & ~x);
        for (Symbol y = 0; y < n; ++y) {
            meet_t.push_back(x & y);
            join_t.push_back(x | y);
        }
    }
    a.tables = {meet_t, join_t, compl_t, {n - 1}, {0}};
    return a;
}

/// The lattice reduct (meet/join only) of 2^T.
inline FiniteAlgebra powerset_lattice(int atoms) {
    FiniteAlgebra b = powerset_boolean(atoms);
    FiniteAlgebra a;
    a.name = b.name + " (lattice)";
    a.carrier = b.carrier;
    a.sig = Signature{{{"meet", 2}, {"join", 2}}};
    a.tables = {b.tables[0], b.tables[1]};
    return a;
}

inline FiniteAlgebra group_from_table(int n, const std::vector<Symbol>& mul,
                                      const std::string& name) {
    FiniteAlgebra g;
    g.name = name;
    g.carrier = n;
    g.sig = find_variety("group").sig;
    // locate unit and inverses
    Symbol e = -1;
    for (Symbol c = 0; c < n && e < 0; ++c) {
        bool unit = true;
        for (Symbol x = 0; x < n; ++x)
            if (mul[static_cast<std::size_t>(c * n + x)] != x ||
                mul[static_cast<std::size_t>(x * n + c)] != x)
                unit = false;
        if (unit) e = c;
    }
    if (e < 0) throw type_error(name + ": no unit element");
    std::vector<Symbol> inv(static_cast<std::size_t>(n), -1);
    for (Symbol x = 0; x < n; ++x)
        for (Symbol y = 0; y < n; ++y)
            if (mul[static_cast<std::size_t>(x * n + y)] == e) inv[static_cast<std::size_t>(x)] = y;
    g.tables = {mul, inv, {e}};
    return g;
}

inline FiniteAlgebra cyclic_group(int n) {
    std::vector<Symbol> mul;
    for (Symbol x = 0; x < n; ++x)
        for (Symbol y = 0; y < n; ++y) mul.push_back((x + y) % n);
    return group_from_table(n, mul, "Z" + std::to_string(n));
}

inline FiniteAlgebra group_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return direct_product({a, b});
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of small lattices and semigroups (used by the
// shallowness sweeps).
// ---------------------------------------------------------------------------

/// All lattices with `n` elements, up to isomorphism, as meet/join algebras.
/// Posets are generated by adding elements along a linear extension, then
/// deduplicated by canonical relation matrix.
inline std::vector<FiniteAlgebra> all_lattices(int n) {
    std::vector<std::vector<std::uint8_t>> posets; // leq matrices, row-major
    std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i * n + i)] = 1;

    std::function<void(int)> grow = [&](int k) {
        if (k == n) {
            posets.push_back(leq);
            return;
        }
        // choose the down-set of element k among 0..k-1: any subset, closed
        // downwards via transitivity afterwards
        for (int mask = 0; mask < (1 << k); ++mask) {
            auto saved = leq;
            bool ok = true;
            for (int j = 0; j < k; ++j)
                if (mask & (1 << j))
                    for (int i = 0; i < k; ++i)
                        if (leq[static_cast<std::size_t>(i * n + j)])
                            leq[static_cast<std::size_t>(i * n + k)] = 1;
            (void)ok;
            grow(k + 1);
            leq = saved;
        }
    };
    grow(0);

    auto canonical = [n](const std::vector<std::uint8_t>& m) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::uint8_t> best;
        do {
            std::vector<std::uint8_t> cur(m.size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cur[static_cast<std::size_t>(i * n + j)] =
                        m[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] * n +
                                                   perm[static_cast<std::size_t>(j)])];
            if (best.empty() || cur < best) best = cur;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    };

    std::set<std::vector<std::uint8_t>> seen;
    std::vector<FiniteAlgebra> out;
    for (const auto& m : posets) {
        auto q = [&m, n](Symbol a, Symbol b) {
            return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(b)] != 0;
        };
        // lattice check happens inside lattice_from_order
        FiniteAlgebra alg;
        try {
            alg = lattice_from_order(n, q, "lattice" + std::to_string(n));
        } catch (const type_error&) {
            continue;
        }
        if (!seen.insert(canonical(m)).second) continue;
        out.push_back(std::move(alg));
    }
    return out;
}

inline std::vector<FiniteAlgebra> all_distributive_lattices(int n) {
    std::vector<FiniteAlgebra> out;
    for (auto& l : all_lattices(n))
        if (check_identities(l, "distributive-lattice").pass) out.push_back(std::move(l));
    return out;
}

/// All associative multiplication tables on n elements (labeled), found by
/// backtracking.  Stops after `limit` semigroups if limit > 0.
inline std::vector<FiniteAlgebra> all_semigroups(int n, std::size_t limit = 0) {
    std::vector<FiniteAlgebra> out;
    std::vector<Symbol> mul(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    auto get = [&mul, n](Symbol x, Symbol y) { return mul[static_cast<std::size_t>(x * n + y)]; };

    std::function<bool(int)> fill = [&](int cell) -> bool {
        if (limit && out.size() >= limit) return true;
        if (cell == n * n) {
            FiniteAlgebra s;
            s.name = "semigroup" + std::to_string(n);
            s.carrier = n;
            s.sig = find_variety("semigroup").sig;
            s.tables = {mul};
            out.push_back(std::move(s));
            return false;
        }
        const Symbol x = cell / n, y = cell % n;
        for (Symbol v = 0; v < n; ++v) {
            mul[static_cast<std::size_t>(cell)] = v;
            bool ok = true;
            // check all associativity triples whose entries are all decided
            for (Symbol a = 0; a < n && ok; ++a)
                for (Symbol b = 0; b < n && ok; ++b)
                    for (Symbol c = 0; c < n && ok; ++c) {
                        const Symbol ab = get(a, b), bc = get(b, c);
                        if (ab < 0 || bc < 0) continue;
                        const Symbol l = get(ab, c), r = get(a, bc);
                        if (l >= 0 && r >= 0 && l != r) ok = false;
                    }
            if (ok && fill(cell + 1)) return true;
        }
        mul[static_cast<std::size_t>(cell)] = -1;
        (void)x;
        (void)y;
        return false;
    };
    fill(0);
    return out;
}

/// Groups of order up to 8 (one per isomorphism class).
inline std::vector<FiniteAlgebra> small_groups_up_to_8() {
    std::vector<FiniteAlgebra> out;
    for (int n : {1, 2, 3, 5, 7}) out.push_back(cyclic_group(n));
    out.push_back(cyclic_group(4));
    out.push_back(group_product(cyclic_group(2), cyclic_group(2)));
    out.push_back(cyclic_group(6));
    // S3 as permutations of 3 points
    {
        std::vector<std::array<int, 3>> perms;
        std::array<int, 3> p{0, 1, 2};
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        std::vector<Symbol> mul;
        for (const auto& a : perms)
            for (const auto& b : perms) {
                std::array<int, 3> c{a[static_cast<std::size_t>(b[0])],
                                     a[static_cast<std::size_t>(b[1])],
                                     a[static_cast<std::size_t>(b[2])]};
                mul.push_back(static_cast<Symbol>(
                    std::find(perms.begin(), perms.end(), c) - perms.begin()));
            }
        out.push_back(group_from_table(6, mul, "S3"));
    }
    out.push_back(cyclic_group(8));
    out.push_back(group_product(cyclic_group(4), cyclic_group(2)));
    out.push_back(group_product(group_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)));
    // D4: symmetries of the square, elements r^i s^j
    {
        auto enc = [](int i, int j) { return i + 4 * j; };
        std::vector<Symbol> mul(64);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 2; ++l) {
                        // (r^i s^j)(r^k s^l) = r^(i + k*(j?-1:1)) s^(j^l)
                        const int rr = ((i + (j ? -k : k)) % 4 + 4) % 4;
                        mul[static_cast<std::size_t>(enc(i, j) * 8 + enc(k, l))] =
                            enc(rr, j ^ l);
                    }
        out.push_back(group_from_table(8, mul, "D4"));
    }
    // Q8: {1,-1,i,-i,j,-j,k,-k} as 0..7 with sign bit
    {
        auto enc = [](int unit, int neg) { return unit * 2 + neg; }; // unit 0=1,1=i,2=j,3=k
        auto mul1 = [](int a, int b, int& neg) -> int {
            // quaternion unit multiplication
            static const int tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
            // sgn[a][b] = 1 when unit_a * unit_b = -unit_{tab}
            neg ^= sgn[a][b];
            return tab[a][b];
        };
        std::vector<Symbol> mul(64);
        for (int a = 0; a < 4; ++a)
            for (int s = 0; s < 2; ++s)
                for (int b = 0; b < 4; ++b)
                    for (int t = 0; t < 2; ++t) {
                        int neg = s ^ t;
                        const int u = mul1(a, b, neg);
                        mul[static_cast<std::size_t>(enc(a, s) * 8 + enc(b, t))] = enc(u, neg);
                    }
        out.push_back(group_from_table(8, mul, "Q8"));
    }
    return out;
}

} // namespace algsh

#endif
