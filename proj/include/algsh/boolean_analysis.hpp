#ifndef ALGSH_BOOLEAN_ANALYSIS_HPP
#define ALGSH_BOOLEAN_ANALYSIS_HPP

#include <random>
#include <string>
#include <vector>

#include "algsh/errors.hpp"
#include "algsh/lattice_analysis.hpp"
#include "algsh/subshift.hpp"
#include "algsh/varieties.hpp"

namespace algsh {

// ---------------------------------------------------------------------------
// Power-set form of a finite Boolean algebra: atoms and element bitmasks.
// Signature convention: meet, join, compl, one, zero.
// ---------------------------------------------------------------------------

struct BooleanStructure {
    int natoms = 0;
    std::vector<Symbol> atom_elems;     // carrier element of each atom (singleton)
    std::vector<int> elem_mask;         // carrier element -> atom bitmask
    std::vector<Symbol> mask_elem;      // inverse
};

inline BooleanStructure powerset_structure(const FiniteAlgebra& alg) {
    auto verdict = check_identities(alg, find_variety("boolean-algebra"));
    if (!verdict.pass) throw type_error("powerset_structure: not a Boolean algebra");
    LatticeOrder ord(alg);
    const Symbol bot = ord.bottom();
    BooleanStructure st;
    for (Symbol s = 0; s < alg.carrier; ++s) {
        if (s == bot) continue;
        bool minimal = true;
        for (Symbol t = 0; t < alg.carrier; ++t)
            if (t != bot && t != s && ord.leq(t, s)) {
                minimal = false;
                break;
            }
        if (minimal) st.atom_elems.push_back(s);
    }
    st.natoms = static_cast<int>(st.atom_elems.size());
    if (alg.carrier != (1 << st.natoms))
        throw type_error("powerset_structure: carrier size is not 2^atoms");
    st.elem_mask.assign(static_cast<std::size_t>(alg.carrier), 0);
    st.mask_elem.assign(static_cast<std::size_t>(alg.carrier), -1);
    for (Symbol s = 0; s < alg.carrier; ++s) {
        int mask = 0;
        for (int t = 0; t < st.natoms; ++t)
            if (ord.leq(st.atom_elems[static_cast<std::size_t>(t)], s)) mask |= 1 << t;
        st.elem_mask[static_cast<std::size_t>(s)] = mask;
        if (st.mask_elem[static_cast<std::size_t>(mask)] != -1)
            throw type_error("powerset_structure: element masks not distinct");
        st.mask_elem[static_cast<std::size_t>(mask)] = s;
    }
    // op tables must agree with set operations
    for (Symbol a = 0; a < alg.carrier; ++a)
        for (Symbol b = 0; b < alg.carrier; ++b) {
            const int ma = st.elem_mask[static_cast<std::size_t>(a)];
            const int mb = st.elem_mask[static_cast<std::size_t>(b)];
            if (alg.apply(0, {a, b}) != st.mask_elem[static_cast<std::size_t>(ma & mb)] ||
                alg.apply(1, {a, b}) != st.mask_elem[static_cast<std::size_t>(ma | mb)])
                throw type_error("powerset_structure: lattice ops disagree with set ops");
        }
    return st;
}

inline BlockMap atom_projection(const FiniteAlgebra& alg, const BooleanStructure& st, int t) {
    if (t < 0 || t >= st.natoms) throw type_error("atom_projection: bad atom");
    std::vector<int> masks = st.elem_mask;
    return BlockMap::cellwise(alg.carrier, 2, [masks, t](Symbol s) {
        return (masks[static_cast<std::size_t>(s)] >> t) & 1;
    });
}

/// Tuple projection onto a subset of atoms; output alphabet 2^|R|, bit i of
/// the output = atom R[i].
inline BlockMap subset_projection(const FiniteAlgebra& alg, const BooleanStructure& st,
                                  const std::vector<int>& R) {
    std::vector<int> masks = st.elem_mask;
    return BlockMap::cellwise(alg.carrier, 1 << R.size(), [masks, R](Symbol s) {
        Symbol out = 0;
        for (std::size_t i = 0; i < R.size(); ++i)
            out |= ((masks[static_cast<std::size_t>(s)] >> R[i]) & 1) << i;
        return out;
    });
}

// ---------------------------------------------------------------------------
// Simplicity: per-atom images are full or periodic, atoms are linked to
// representatives by shifts, and representatives are independent.
// ---------------------------------------------------------------------------

struct AtomLink {
    int rep = -1;   // representative atom
    int k = 0;      // pi_t = sigma^k o pi_rep
};

struct SimplicityCertificate {
    bool ok = true;
    std::string failure;            // which condition failed, with detail
    std::vector<int> reps;          // R
    std::vector<BinaryClass> rep_class;     // class of pi_r(X) per rep
    std::vector<AtomLink> linkage;          // per atom
    std::vector<Subshift> rep_images;       // pi_r(X) per rep
};

namespace detail {

/// sigma^k composed with a radius-0 symbol map, as one block map.
inline BlockMap shifted_cellwise(int domain_alphabet, int codomain_alphabet, int k,
                                 const std::function<Symbol(Symbol)>& f) {
    const int r = std::abs(k);
    return {r, 1, domain_alphabet, codomain_alphabet,
            [r, k, f](const Word& w) { return f(w[static_cast<std::size_t>(r + k)]); }};
}

/// Decides whether first(x_0) == last(x_k) for every x in X and the given
/// k >= 0, by walking the factor DFA while tracking the first symbol's bit.
inline bool ends_agree(const Dfa& d, int alphabet, int k,
                       const std::function<int(Symbol)>& first,
                       const std::function<int(Symbol)>& last) {
    std::set<std::pair<int, int>> frontier;   // (state, bit of symbol k steps back)
    for (Symbol s = 0; s < alphabet; ++s) {
        const int q = d.step(d.start, s);
        if (q < 0) continue;
        if (k == 0) {
            if (first(s) != last(s)) return false;
        } else {
            frontier.insert({q, first(s)});
        }
    }
    for (int step = 1; step <= k; ++step) {
        std::set<std::pair<int, int>> nxt;
        for (const auto& [q, bit] : frontier)
            for (Symbol s = 0; s < alphabet; ++s) {
                const int q2 = d.step(q, s);
                if (q2 < 0) continue;
                if (step == k) {
                    if (last(s) != bit) return false;
                } else {
                    nxt.insert({q2, bit});
                }
            }
        frontier = std::move(nxt);
    }
    return true;
}

/// pi_t = sigma^k o pi_r on X, i.e. bit_t(x_0) = bit_r(x_k) for all x.
inline bool linked_by_shift(const Dfa& d, int alphabet, const std::vector<int>& masks,
                            int t, int r, int k) {
    auto bit = [&masks](int atom) {
        return std::function<int(Symbol)>([&masks, atom](Symbol s) {
            return (masks[static_cast<std::size_t>(s)] >> atom) & 1;
        });
    };
    if (k >= 0) return ends_agree(d, alphabet, k, bit(t), bit(r));
    return ends_agree(d, alphabet, -k, bit(r), bit(t));
}

} // namespace detail

inline SimplicityCertificate simplicity_check(const Subshift& x, const FiniteAlgebra& alg) {
    BooleanStructure st = powerset_structure(alg);
    if (x.alphabet != alg.carrier) throw type_error("simplicity_check: alphabet mismatch");
    const auto b1 = language(x, 1);
    if (static_cast<int>(b1.size()) != alg.carrier)
        throw precondition_error("simplicity_check: not every symbol occurs");
    SimplicityCertificate cert;
    const int T = st.natoms;
    // condition 1: per-atom images are full or periodic binary shifts
    std::vector<Subshift> images;
    std::vector<BinaryClass> classes;
    for (int t = 0; t < T; ++t) {
        Subshift img = apply_blockmap_image(atom_projection(alg, st, t), {x});
        BinaryClass c = classify_binary(img);
        if (c.tag != BinaryClass::full && c.tag != BinaryClass::periodic) {
            cert.ok = false;
            cert.failure = "condition 1: atom " + std::to_string(t) +
                           " image is a cone, not full or periodic";
            return cert;
        }
        if (!closed_under_complement(img)) {
            cert.ok = false;
            cert.failure = "condition 1: atom " + std::to_string(t) +
                           " image not complement-closed";
            return cert;
        }
        images.push_back(std::move(img));
        classes.push_back(c);
    }
    // condition 2: group atoms by existence of a shift linking them
    cert.linkage.assign(static_cast<std::size_t>(T), AtomLink{});
    const auto& masks = st.elem_mask;
    Dfa dx = x.dfa();
    for (int t = 0; t < T; ++t) {
        bool linked = false;
        for (int r : cert.reps) {
            // the image presentations bound the periodic part of the offset;
            // the absolute offset is remembered only by X's own automaton
            const int bound =
                images[static_cast<std::size_t>(t)].graph.vertices *
                    images[static_cast<std::size_t>(r)].graph.vertices +
                static_cast<int>(dx.states());
            // smallest |k| first: for periodic atoms the relation repeats mod
            // the period, and we want the tightest radius
            for (int a = 0; a <= 2 * bound && !linked; ++a) {
                const int k = (a % 2 == 0) ? a / 2 : -(a + 1) / 2;
                if (detail::linked_by_shift(dx, x.alphabet, masks, t, r, k)) {
                    cert.linkage[static_cast<std::size_t>(t)] = {r, k};
                    linked = true;
                }
            }
            if (linked) break;
        }
        if (!linked) {
            cert.reps.push_back(t);
            cert.rep_class.push_back(classes[static_cast<std::size_t>(t)]);
            cert.rep_images.push_back(images[static_cast<std::size_t>(t)]);
            cert.linkage[static_cast<std::size_t>(t)] = {t, 0};
        }
    }
    // condition 3: image of pi_R is the product of the per-rep images
    Subshift joint = apply_blockmap_image(subset_projection(alg, st, cert.reps), {x});
    Subshift prod = cert.reps.size() == 1 ? cert.rep_images[0] : [&] {
        // product_shift encodes the first component as most significant;
        // subset_projection puts R[i] at bit i, so feed components reversed
        std::vector<Subshift> parts(cert.rep_images.rbegin(), cert.rep_images.rend());
        return product_shift(parts);
    }();
    if (!sofic_equal(joint, prod)) {
        cert.ok = false;
        cert.failure = "condition 3: representatives are not independent";
        return cert;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Normal form: X is algebraically conjugate, via the representative
// projection, to a product of full shifts and periodic (finite) shifts.
// ---------------------------------------------------------------------------

struct BooleanNormalForm {
    std::vector<int> full_reps;         // atoms whose component is a full shift
    std::vector<int> periodic_reps;
    std::vector<int> periods;           // per periodic rep
    BlockMap phi;                       // X -> Y, radius 0
    BlockMap phi_inv;                   // Y -> X
    Subshift Y;
};

inline BooleanNormalForm boolean_normal_form(const SimplicityCertificate& cert,
                                             const Subshift& x, const FiniteAlgebra& alg) {
    if (!cert.ok) throw precondition_error("boolean_normal_form: invalid certificate");
    BooleanStructure st = powerset_structure(alg);
    BooleanNormalForm nf;
    for (std::size_t i = 0; i < cert.reps.size(); ++i) {
        if (cert.rep_class[i].tag == BinaryClass::full)
            nf.full_reps.push_back(cert.reps[i]);
        else {
            nf.periodic_reps.push_back(cert.reps[i]);
            nf.periods.push_back(cert.rep_class[i].n);
        }
    }
    nf.phi = subset_projection(alg, st, cert.reps);
    // inverse: atom t's bit sits in the rep's stream, k_t cells to the right
    int K = 0;
    for (const auto& l : cert.linkage) K = std::max(K, std::abs(l.k));
    const int T = st.natoms;
    std::vector<int> rep_bit(static_cast<std::size_t>(T), -1);
    for (std::size_t i = 0; i < cert.reps.size(); ++i)
        rep_bit[static_cast<std::size_t>(cert.reps[i])] = static_cast<int>(i);
    auto mask_elem = st.mask_elem;
    auto linkage = cert.linkage;
    nf.phi_inv = {K, 1, nf.phi.codomain_alphabet, alg.carrier,
                  [K, T, rep_bit, mask_elem, linkage](const Word& w) {
                      int mask = 0;
                      for (int t = 0; t < T; ++t) {
                          const auto& l = linkage[static_cast<std::size_t>(t)];
                          const Symbol y = w[static_cast<std::size_t>(K + l.k)];
                          mask |= ((y >> rep_bit[static_cast<std::size_t>(l.rep)]) & 1) << t;
                      }
                      return mask_elem[static_cast<std::size_t>(mask)];
                  }};
    nf.Y = apply_blockmap_image(nf.phi, {x});
    // sanity: phi_inv o phi is the identity on X
    auto round_trip = BlockMap{K, 1, alg.carrier, alg.carrier, [&](const Word&) { return 0; }};
    round_trip.rule = [phi = nf.phi, phi_inv = nf.phi_inv, K](const Word& w) {
        Word mid;
        for (Symbol s : w) mid.push_back(phi.rule({s}));
        return phi_inv.rule(mid);
    };
    if (!blockmap_equal_on(round_trip, BlockMap::identity(alg.carrier), {x}).equal)
        throw internal_error("boolean_normal_form: conjugacy does not invert");
    return nf;
}

// ---------------------------------------------------------------------------
// Random simple Boolean subshift fixtures: atoms split into classes, each
// class a full or periodic binary component read at per-atom offsets.
// ---------------------------------------------------------------------------

struct BooleanFixture {
    FiniteAlgebra alg;          // power-set Boolean algebra 2^T
    Subshift x;
    std::vector<int> atom_class;        // class index per atom
    std::vector<int> atom_offset;
    std::vector<int> class_period;      // 0 = full shift component
};

inline BooleanFixture random_simple_boolean(std::mt19937& rng, int natoms) {
    if (natoms < 1 || natoms > 3) throw precondition_error("random_simple_boolean: 1..3 atoms");
    BooleanFixture fx;
    fx.alg = powerset_boolean(natoms);
    // partition atoms into classes
    fx.atom_class.resize(static_cast<std::size_t>(natoms));
    int nclasses = 0;
    for (int t = 0; t < natoms; ++t) {
        const int c = static_cast<int>(rng() % static_cast<unsigned>(nclasses + 1));
        fx.atom_class[static_cast<std::size_t>(t)] = c;
        if (c == nclasses) ++nclasses;
    }
    std::vector<int> class_size(static_cast<std::size_t>(nclasses), 0);
    for (int c : fx.atom_class) ++class_size[static_cast<std::size_t>(c)];
    // class types: full (period 0) or periodic(n), n at least the class size
    // so distinct offsets mod n exist
    for (int c = 0; c < nclasses; ++c) {
        const int sz = class_size[static_cast<std::size_t>(c)];
        if (rng() % 2 == 0)
            fx.class_period.push_back(0);
        else
            fx.class_period.push_back(sz + static_cast<int>(rng() % static_cast<unsigned>(4 - sz)));
    }
    // offsets: pairwise distinct within a class, distinct mod n for periodic
    fx.atom_offset.assign(static_cast<std::size_t>(natoms), 0);
    for (int c = 0; c < nclasses; ++c) {
        std::vector<int> members;
        for (int t = 0; t < natoms; ++t)
            if (fx.atom_class[static_cast<std::size_t>(t)] == c) members.push_back(t);
        const int n = fx.class_period[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (;;) {
                const int k = static_cast<int>(rng() % 5) - 2;
                bool clash = false;
                for (std::size_t j = 0; j < i; ++j) {
                    const int kj = fx.atom_offset[static_cast<std::size_t>(members[j])];
                    if (kj == k || (n > 0 && ((kj - k) % n + n) % n == 0)) clash = true;
                }
                if (!clash) {
                    fx.atom_offset[static_cast<std::size_t>(members[i])] = k;
                    break;
                }
            }
        }
    }
    // build X as the image of the product of class components
    std::vector<Subshift> comps;
    for (int c = 0; c < nclasses; ++c) {
        const int n = fx.class_period[static_cast<std::size_t>(c)];
        comps.push_back(n == 0 ? Subshift::full_shift(2)
                               : subshift_from_class({BinaryClass::periodic, n, {}}));
    }
    int K = 0;
    for (int k : fx.atom_offset) K = std::max(K, std::abs(k));
    BooleanStructure st = powerset_structure(fx.alg);
    auto mask_elem = st.mask_elem;
    auto atom_class = fx.atom_class;
    auto atom_offset = fx.atom_offset;
    BlockMap f{K, nclasses, 2, fx.alg.carrier,
               [K, natoms, mask_elem, atom_class, atom_offset](const Word& w) {
                   const int width = 2 * K + 1;
                   int mask = 0;
                   for (int t = 0; t < natoms; ++t) {
                       const int c = atom_class[static_cast<std::size_t>(t)];
                       const int pos = K + atom_offset[static_cast<std::size_t>(t)];
                       mask |= w[static_cast<std::size_t>(c * width + pos)] << t;
                   }
                   return mask_elem[static_cast<std::size_t>(mask)];
               }};
    fx.x = apply_blockmap_image(f, comps);
    return fx;
}

} // namespace algsh

#endif
