#ifndef ALGSH_ALGEBRA_HPP
#define ALGSH_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "algsh/errors.hpp"
#include "algsh/evp.hpp"

namespace algsh {

struct Signature {
    // name -> arity, ordered; names pairwise distinct
    std::vector<std::pair<std::string, int>> symbols;

    int arity(std::size_t op) const { return symbols[op].second; }
    const std::string& name(std::size_t op) const { return symbols[op].first; }
    std::size_t size() const { return symbols.size(); }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& [n, a] : symbols) {
            if (a < 0) throw type_error("negative arity for operation " + n);
            if (!seen.insert(n).second) throw type_error("duplicate operation name " + n);
        }
    }

    bool operator==(const Signature&) const = default;
};

/// A finite algebra: carrier {0, .., n-1} plus one total operation table per
/// signature symbol.  Tables are stored in lexicographic argument order with
/// the first argument most significant.
struct FiniteAlgebra {
    std::string name = "algebra";
    int carrier = 0;
    Signature sig;
    std::vector<std::vector<Symbol>> tables;       // tables[op][index]
    std::vector<std::string> labels;               // optional element aliases

    Symbol apply(std::size_t op, const Word& args) const {
        std::size_t idx = 0;
        for (Symbol a : args) idx = idx * static_cast<std::size_t>(carrier) + static_cast<std::size_t>(a);
        return tables[op][idx];
    }

    std::string label(Symbol s) const {
        if (s >= 0 && static_cast<std::size_t>(s) < labels.size() && !labels[s].empty())
            return labels[s];
        return std::to_string(s);
    }

    void validate() const {
        sig.validate();
        if (carrier <= 0) throw type_error("carrier must be positive");
        if (tables.size() != sig.size()) throw type_error("table count does not match signature");
        for (std::size_t op = 0; op < sig.size(); ++op) {
            std::size_t want = 1;
            for (int i = 0; i < sig.arity(op); ++i) want *= static_cast<std::size_t>(carrier);
            if (tables[op].size() != want)
                throw type_error("table for " + sig.name(op) + " has wrong size");
            for (Symbol s : tables[op])
                if (s < 0 || s >= carrier)
                    throw type_error("table entry out of carrier for " + sig.name(op));
        }
    }
};

// Iterates over all tuples in {0..n-1}^k in lexicographic order.
inline bool next_tuple(Word& t, int n) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < n) return true;
        t[i] = 0;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Congruences.  A partition is stored as a block-id vector normalized so that
// block ids appear in first-occurrence order.
// ---------------------------------------------------------------------------

using Partition = std::vector<int>;

inline void normalize_partition(Partition& p) {
    std::vector<int> remap(p.size(), -1);
    int next = 0;
    for (int& b : p) {
        if (remap[static_cast<std::size_t>(b)] < 0) remap[static_cast<std::size_t>(b)] = next++;
        b = remap[static_cast<std::size_t>(b)];
    }
}

inline int block_count(const Partition& p) {
    return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
}

inline Partition identity_partition(int n) {
    Partition p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Partition full_partition(int n) { return Partition(static_cast<std::size_t>(n), 0); }

inline std::vector<std::vector<Symbol>> partition_blocks(const Partition& p) {
    std::vector<std::vector<Symbol>> blocks(static_cast<std::size_t>(block_count(p)));
    for (std::size_t i = 0; i < p.size(); ++i) blocks[static_cast<std::size_t>(p[i])].push_back(static_cast<Symbol>(i));
    return blocks;
}

/// Compatibility with all operations (single-coordinate substitution suffices).
inline bool is_congruence(const FiniteAlgebra& alg, const Partition& p) {
    const int n = alg.carrier;
    for (std::size_t op = 0; op < alg.sig.size(); ++op) {
        const int k = alg.sig.arity(op);
        if (k == 0) continue;
        Word args(static_cast<std::size_t>(k), 0);
        do {
            for (int pos = 0; pos < k; ++pos) {
                Word alt = args;
                const Symbol orig = args[static_cast<std::size_t>(pos)];
                for (Symbol b = 0; b < n; ++b) {
                    if (b == orig || p[static_cast<std::size_t>(b)] != p[static_cast<std::size_t>(orig)]) continue;
                    alt[static_cast<std::size_t>(pos)] = b;
                    if (p[static_cast<std::size_t>(alg.apply(op, args))] !=
                        p[static_cast<std::size_t>(alg.apply(op, alt))])
                        return false;
                }
            }
        } while (next_tuple(args, n));
    }
    return true;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
    Partition partition() {
        Partition p(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) p[i] = find(static_cast<int>(i));
        normalize_partition(p);
        return p;
    }
};

} // namespace detail

/// Smallest congruence identifying every pair in `pairs` (closure under
/// operations and transitivity).
inline Partition generated_congruence(const FiniteAlgebra& alg,
                                      const std::vector<std::pair<Symbol, Symbol>>& pairs) {
    const int n = alg.carrier;
    detail::UnionFind uf(n);
    std::vector<std::pair<Symbol, Symbol>> work;
    for (auto [a, b] : pairs)
        if (uf.unite(a, b)) work.emplace_back(a, b);
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (std::size_t op = 0; op < alg.sig.size(); ++op) {
            const int k = alg.sig.arity(op);
            if (k == 0) continue;
            Word ctx(static_cast<std::size_t>(k), 0);
            do {
                for (int pos = 0; pos < k; ++pos) {
                    Word u = ctx, v = ctx;
                    u[static_cast<std::size_t>(pos)] = x;
                    v[static_cast<std::size_t>(pos)] = y;
                    const Symbol fu = alg.apply(op, u), fv = alg.apply(op, v);
                    if (uf.unite(fu, fv)) work.emplace_back(fu, fv);
                }
            } while (next_tuple(ctx, n));
        }
    }
    return uf.partition();
}

inline Partition principal_congruence(const FiniteAlgebra& alg, Symbol a, Symbol b) {
    return generated_congruence(alg, {{a, b}});
}

/// Join in Con(S): transitive closure of the union (compatibility is
/// preserved automatically for congruences).
inline Partition congruence_join(const Partition& p, const Partition& q) {
    detail::UnionFind uf(static_cast<int>(p.size()));
    auto merge_by = [&uf](const Partition& r) {
        std::map<int, int> first;
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto [it, fresh] = first.try_emplace(r[i], static_cast<int>(i));
            if (!fresh) uf.unite(it->second, static_cast<int>(i));
        }
    };
    merge_by(p);
    merge_by(q);
    return uf.partition();
}

inline Partition congruence_meet(const Partition& p, const Partition& q) {
    Partition r(p.size());
    std::map<std::pair<int, int>, int> ids;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto [it, fresh] = ids.try_emplace({p[i], q[i]}, static_cast<int>(ids.size()));
        r[i] = it->second;
    }
    normalize_partition(r);
    return r;
}

/// All congruences by exhaustive partition enumeration (restricted growth
/// strings); intended for carriers up to ~8.
inline std::vector<Partition> congruences_bruteforce(const FiniteAlgebra& alg) {
    const int n = alg.carrier;
    std::vector<Partition> out;
    Partition p(static_cast<std::size_t>(n), 0);
    // enumerate restricted growth strings
    std::vector<int> maxv(static_cast<std::size_t>(n), 0);
    while (true) {
        if (is_congruence(alg, p)) out.push_back(p);
        // advance
        int i = n - 1;
        for (; i > 0; --i) {
            if (p[static_cast<std::size_t>(i)] <= maxv[static_cast<std::size_t>(i - 1)]) {
                ++p[static_cast<std::size_t>(i)];
                break;
            }
        }
        if (i == 0) break;
        maxv[static_cast<std::size_t>(i)] =
            std::max(maxv[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            p[static_cast<std::size_t>(j)] = 0;
            maxv[static_cast<std::size_t>(j)] = maxv[static_cast<std::size_t>(i)];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All congruences as joins of principal congruences.
inline std::vector<Partition> congruences_principal(const FiniteAlgebra& alg) {
    const int n = alg.carrier;
    std::set<Partition> all;
    all.insert(identity_partition(n));
    std::vector<Partition> gens;
    for (Symbol a = 0; a < n; ++a)
        for (Symbol b = a + 1; b < n; ++b) {
            Partition c = principal_congruence(alg, a, b);
            if (all.insert(c).second) gens.push_back(c);
        }
    std::vector<Partition> frontier(all.begin(), all.end());
    while (!frontier.empty()) {
        std::vector<Partition> next;
        for (const Partition& p : frontier)
            for (const Partition& g : gens) {
                Partition j = congruence_join(p, g);
                if (all.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    return {all.begin(), all.end()};
}

constexpr int kBruteForcePartitionThreshold = 8;

inline std::vector<Partition> congruences(const FiniteAlgebra& alg) {
    if (alg.carrier <= kBruteForcePartitionThreshold) return congruences_bruteforce(alg);
    return congruences_principal(alg);
}

// ---------------------------------------------------------------------------
// Quotients, products, isomorphism.
// ---------------------------------------------------------------------------

inline FiniteAlgebra quotient(const FiniteAlgebra& alg, const Partition& theta) {
    FiniteAlgebra q;
    q.name = alg.name + "/~";
    q.carrier = block_count(theta);
    q.sig = alg.sig;
    auto blocks = partition_blocks(theta);
    for (std::size_t op = 0; op < alg.sig.size(); ++op) {
        const int k = alg.sig.arity(op);
        std::size_t sz = 1;
        for (int i = 0; i < k; ++i) sz *= static_cast<std::size_t>(q.carrier);
        std::vector<Symbol> table(sz);
        Word args(static_cast<std::size_t>(k), 0);
        std::size_t idx = 0;
        if (k == 0) {
            table[0] = theta[static_cast<std::size_t>(alg.tables[op][0])];
        } else {
            do {
                Word reps(args.size());
                for (std::size_t i = 0; i < args.size(); ++i)
                    reps[i] = blocks[static_cast<std::size_t>(args[i])].front();
                table[idx++] = theta[static_cast<std::size_t>(alg.apply(op, reps))];
            } while (next_tuple(args, q.carrier));
        }
        q.tables.push_back(std::move(table));
    }
    return q;
}

/// Direct product; element index = mixed-radix tuple with the first factor
/// most significant.
inline FiniteAlgebra direct_product(const std::vector<FiniteAlgebra>& factors) {
    if (factors.empty()) throw type_error("direct_product: empty factor list");
    FiniteAlgebra p;
    p.sig = factors[0].sig;
    p.name = "product";
    std::size_t n = 1;
    for (const auto& f : factors) {
        if (!(f.sig == p.sig)) throw type_error("direct_product: signature mismatch");
        n *= static_cast<std::size_t>(f.carrier);
    }
    p.carrier = static_cast<int>(n);
    auto decode = [&factors](Symbol s) {
        Word t(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            t[i] = s % factors[i].carrier;
            s /= factors[i].carrier;
        }
        return t;
    };
    for (std::size_t op = 0; op < p.sig.size(); ++op) {
        const int k = p.sig.arity(op);
        std::size_t sz = 1;
        for (int i = 0; i < k; ++i) sz *= n;
        std::vector<Symbol> table(sz);
        Word args(static_cast<std::size_t>(k), 0);
        std::size_t idx = 0;
        do {
            std::vector<Word> parts;
            parts.reserve(args.size());
            for (Symbol a : args) parts.push_back(decode(a));
            Symbol res = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                Word sub(args.size());
                for (std::size_t j = 0; j < args.size(); ++j) sub[j] = parts[j][i];
                res = res * factors[i].carrier + factors[i].apply(op, sub);
            }
            table[idx++] = res;
            if (k == 0) break;
        } while (k > 0 && next_tuple(args, p.carrier));
        p.tables.push_back(std::move(table));
    }
    return p;
}

inline Word product_decode(const std::vector<FiniteAlgebra>& factors, Symbol s) {
    Word t(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        t[i] = s % factors[i].carrier;
        s /= factors[i].carrier;
    }
    return t;
}

inline Symbol product_encode(const std::vector<FiniteAlgebra>& factors, const Word& t) {
    Symbol s = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) s = s * factors[i].carrier + t[i];
    return s;
}

/// Brute-force isomorphism test for small carriers.
inline bool is_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.carrier != b.carrier || !(a.sig == b.sig)) return false;
    Word perm(static_cast<std::size_t>(a.carrier));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t op = 0; op < a.sig.size() && ok; ++op) {
            const int k = a.sig.arity(op);
            Word args(static_cast<std::size_t>(k), 0);
            do {
                Word mapped(args.size());
                for (std::size_t i = 0; i < args.size(); ++i)
                    mapped[i] = perm[static_cast<std::size_t>(args[i])];
                if (perm[static_cast<std::size_t>(a.apply(op, args))] != b.apply(op, mapped)) {
                    ok = false;
                    break;
                }
            } while (k > 0 && next_tuple(args, a.carrier));
            if (k == 0 && perm[static_cast<std::size_t>(a.tables[op][0])] != b.tables[op][0]) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Direct decomposition.
// ---------------------------------------------------------------------------

struct Decomposition {
    std::vector<FiniteAlgebra> factors;
    // iso[element] = tuple of factor elements, same order as `factors`
    std::vector<Word> iso;
};

namespace detail {

inline bool complementary_pair(const FiniteAlgebra& alg, const Partition& t1, const Partition& t2) {
    const int n = alg.carrier;
    if (block_count(t1) <= 1 || block_count(t2) <= 1) return false;
    if (block_count(t1) >= n || block_count(t2) >= n) return false;
    Partition meet = congruence_meet(t1, t2);
    if (block_count(meet) != n) return false;
    if (static_cast<long long>(block_count(t1)) * block_count(t2) != n) return false;
    // injective by the meet condition; counting gives surjectivity onto the
    // full product of quotients
    return true;
}

inline void decompose_rec(const FiniteAlgebra& alg, Decomposition& out) {
    const auto cons = congruences(alg);
    for (std::size_t i = 0; i < cons.size(); ++i)
        for (std::size_t j = 0; j < cons.size(); ++j) {
            if (i == j) continue;
            if (!complementary_pair(alg, cons[i], cons[j])) continue;
            FiniteAlgebra q1 = quotient(alg, cons[i]);
            FiniteAlgebra q2 = quotient(alg, cons[j]);
            Decomposition d1, d2;
            decompose_rec(q1, d1);
            decompose_rec(q2, d2);
            const std::size_t before = out.factors.size();
            for (auto& f : d1.factors) out.factors.push_back(std::move(f));
            for (auto& f : d2.factors) out.factors.push_back(std::move(f));
            out.iso.resize(static_cast<std::size_t>(alg.carrier));
            for (Symbol s = 0; s < alg.carrier; ++s) {
                Word t;
                const Word& u = d1.iso[static_cast<std::size_t>(cons[i][static_cast<std::size_t>(s)])];
                const Word& v = d2.iso[static_cast<std::size_t>(cons[j][static_cast<std::size_t>(s)])];
                t.insert(t.end(), u.begin(), u.end());
                t.insert(t.end(), v.begin(), v.end());
                out.iso[static_cast<std::size_t>(s)] = std::move(t);
            }
            (void)before;
            return;
        }
    // directly indecomposable
    out.factors.push_back(alg);
    out.iso.assign(static_cast<std::size_t>(alg.carrier), Word{});
    for (Symbol s = 0; s < alg.carrier; ++s) out.iso[static_cast<std::size_t>(s)] = {s};
}

} // namespace detail

inline Decomposition direct_decomposition(const FiniteAlgebra& alg) {
    if (alg.carrier <= 0) throw precondition_error("direct_decomposition: empty carrier");
    Decomposition d;
    detail::decompose_rec(alg, d);
    return d;
}

// ---------------------------------------------------------------------------
// Congruence-product property (instance check).
// ---------------------------------------------------------------------------

struct CongruenceProductVerdict {
    bool holds = true;
    Partition counterexample;   // a congruence of the product not a product of
                                // factor congruences (when !holds)
    std::size_t product_congruence_count = 0;
};

/// Checks Con(prod S_i) = prod Con(S_i) on a concrete factor list.  For small
/// products both congruence sets are built and compared outright; for larger
/// ones it suffices to test that every principal congruence of the product is
/// a product of factor congruences (joins of product congruences are again
/// products, componentwise).
inline CongruenceProductVerdict congruence_product_check(const std::vector<FiniteAlgebra>& factors,
                                                         int max_carrier = 64) {
    if (factors.empty()) throw precondition_error("congruence_product_check: empty factor list");
    long long n = 1;
    for (const auto& f : factors) n *= f.carrier;
    if (n > max_carrier)
        throw resource_error("congruence_product_check: product carrier " + std::to_string(n) +
                             " exceeds limit " + std::to_string(max_carrier));
    FiniteAlgebra prod = direct_product(factors);
    CongruenceProductVerdict v;

    std::vector<std::vector<Partition>> factor_cons;
    for (const auto& f : factors) factor_cons.push_back(congruences(f));

    auto product_partition = [&](const std::vector<const Partition*>& parts) {
        Partition p(static_cast<std::size_t>(prod.carrier));
        std::map<Word, int> ids;
        for (Symbol s = 0; s < prod.carrier; ++s) {
            Word t = product_decode(factors, s);
            Word key(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                key[i] = (*parts[i])[static_cast<std::size_t>(t[i])];
            auto [it, fresh] = ids.try_emplace(key, static_cast<int>(ids.size()));
            p[static_cast<std::size_t>(s)] = it->second;
        }
        normalize_partition(p);
        return p;
    };

    // all products of factor congruences
    std::set<Partition> products;
    std::vector<std::size_t> pick(factors.size(), 0);
    while (true) {
        std::vector<const Partition*> parts;
        for (std::size_t i = 0; i < factors.size(); ++i) parts.push_back(&factor_cons[i][pick[i]]);
        products.insert(product_partition(parts));
        std::size_t i = factors.size();
        while (i-- > 0) {
            if (++pick[i] < factor_cons[i].size()) break;
            pick[i] = 0;
            if (i == 0) { i = SIZE_MAX; break; }
        }
        if (i == SIZE_MAX) break;
    }
    v.product_congruence_count = products.size();

    if (prod.carrier <= kBruteForcePartitionThreshold) {
        for (const Partition& c : congruences_bruteforce(prod)) {
            if (!products.count(c)) {
                v.holds = false;
                v.counterexample = c;
                return v;
            }
        }
        return v;
    }
    for (Symbol a = 0; a < prod.carrier; ++a)
        for (Symbol b = a + 1; b < prod.carrier; ++b) {
            Partition c = principal_congruence(prod, a, b);
            if (!products.count(c)) {
                v.holds = false;
                v.counterexample = c;
                return v;
            }
        }
    return v;
}

} // namespace algsh

#endif
