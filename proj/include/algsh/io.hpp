#ifndef ALGSH_IO_HPP
#define ALGSH_IO_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "algsh/algebra.hpp"
#include "algsh/errors.hpp"
#include "algsh/subshift.hpp"

namespace algsh {

// ---------------------------------------------------------------------------
// Line-oriented text formats for algebras, subshifts and block maps.  Blank
// lines and "#" comments are skipped everywhere; tokens are whitespace
// separated.  Symbols in input may be given as indices or declared labels.
// ---------------------------------------------------------------------------

struct NamedSubshift {
    std::string name = "subshift";
    Subshift x;
    std::vector<std::string> labels;    // optional, per symbol

    std::string label(Symbol s) const {
        if (s >= 0 && static_cast<std::size_t>(s) < labels.size() && !labels[s].empty())
            return labels[s];
        return std::to_string(s);
    }
};

struct ParsedBlockMap {
    std::string name = "blockmap";
    int radius = 0;
    int arity = 1;
    std::map<Word, Symbol> table;   // flattened slot-major windows -> symbol
};

namespace detail {

inline std::vector<std::vector<std::string>> tokenized_lines(std::istream& in,
                                                             const std::string& what) {
    if (!in) throw type_error(what + ": cannot read input");
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

inline bool is_index(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline Symbol resolve_symbol(const std::string& tok, int n,
                             const std::vector<std::string>& labels, const std::string& ctx) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!labels[i].empty() && labels[i] == tok) return static_cast<Symbol>(i);
    if (is_index(tok)) {
        const int v = std::stoi(tok);
        if (v < 0 || v >= n)
            throw type_error(ctx + ": symbol index " + tok + " out of range 0.." +
                             std::to_string(n - 1));
        return v;
    }
    throw type_error(ctx + ": unknown symbol '" + tok + "'");
}

inline int parse_count(const std::string& tok, const std::string& ctx) {
    if (!is_index(tok)) throw type_error(ctx + ": expected a number, got '" + tok + "'");
    return std::stoi(tok);
}

} // namespace detail

// Format:
//   algebra <name>
//   carrier <n>
//   elem <index> <label>                  (optional, any position)
//   op <name> <arity>
//   <n^arity result symbols, one per line, lexicographic argument order>
inline FiniteAlgebra parse_algebra(std::istream& in) {
    auto lines = detail::tokenized_lines(in, "algebra");
    FiniteAlgebra a;
    struct RawOp {
        std::string name;
        int arity;
        std::vector<std::string> results;
    };
    std::vector<RawOp> raw;
    std::size_t i = 0;
    if (i >= lines.size() || lines[i][0] != "algebra" || lines[i].size() != 2)
        throw type_error("algebra: expected header 'algebra <name>'");
    a.name = lines[i++][1];
    if (i >= lines.size() || lines[i][0] != "carrier" || lines[i].size() != 2)
        throw type_error("algebra: expected 'carrier <n>'");
    a.carrier = detail::parse_count(lines[i++][1], "algebra carrier");
    if (a.carrier <= 0) throw type_error("algebra: carrier must be positive");
    a.labels.assign(static_cast<std::size_t>(a.carrier), "");
    while (i < lines.size()) {
        const auto& l = lines[i];
        if (l[0] == "elem") {
            if (l.size() != 3) throw type_error("algebra: expected 'elem <index> <label>'");
            const int idx = detail::parse_count(l[1], "algebra elem");
            if (idx < 0 || idx >= a.carrier) throw type_error("algebra: elem index out of range");
            a.labels[static_cast<std::size_t>(idx)] = l[2];
            ++i;
        } else if (l[0] == "op") {
            if (l.size() != 3) throw type_error("algebra: expected 'op <name> <arity>'");
            RawOp op;
            op.name = l[1];
            op.arity = detail::parse_count(l[2], "algebra op arity");
            std::size_t want = 1;
            for (int k = 0; k < op.arity; ++k) want *= static_cast<std::size_t>(a.carrier);
            ++i;
            while (op.results.size() < want) {
                if (i >= lines.size())
                    throw type_error("algebra: operation " + op.name + " needs " +
                                     std::to_string(want) + " result lines");
                if (lines[i][0] == "op" || lines[i][0] == "elem")
                    throw type_error("algebra: operation " + op.name + " has too few results");
                for (const auto& t : lines[i]) op.results.push_back(t);
                ++i;
            }
            if (op.results.size() != want)
                throw type_error("algebra: operation " + op.name + " has too many results");
            raw.push_back(std::move(op));
        } else {
            throw type_error("algebra: unexpected directive '" + l[0] + "'");
        }
    }
    for (const auto& op : raw) {
        a.sig.symbols.push_back({op.name, op.arity});
        std::vector<Symbol> table;
        for (const auto& t : op.results)
            table.push_back(detail::resolve_symbol(t, a.carrier, a.labels, "algebra op " + op.name));
        a.tables.push_back(std::move(table));
    }
    a.validate();
    return a;
}

// Format:
//   subshift <name>
//   alphabet <n>
//   sym <index> <label>                   (optional)
// then either
//   forbidden
//   <one word per line, cells space separated>
// or
//   graph
//   edge <from> <to> <label>              (vertex names are free-form tokens)
inline NamedSubshift parse_subshift(std::istream& in) {
    auto lines = detail::tokenized_lines(in, "subshift");
    NamedSubshift s;
    std::size_t i = 0;
    if (i >= lines.size() || lines[i][0] != "subshift" || lines[i].size() != 2)
        throw type_error("subshift: expected header 'subshift <name>'");
    s.name = lines[i++][1];
    if (i >= lines.size() || lines[i][0] != "alphabet" || lines[i].size() != 2)
        throw type_error("subshift: expected 'alphabet <n>'");
    const int n = detail::parse_count(lines[i++][1], "subshift alphabet");
    if (n <= 0) throw type_error("subshift: alphabet must be positive");
    s.labels.assign(static_cast<std::size_t>(n), "");
    while (i < lines.size() && lines[i][0] == "sym") {
        if (lines[i].size() != 3) throw type_error("subshift: expected 'sym <index> <label>'");
        const int idx = detail::parse_count(lines[i][1], "subshift sym");
        if (idx < 0 || idx >= n) throw type_error("subshift: sym index out of range");
        s.labels[static_cast<std::size_t>(idx)] = lines[i][2];
        ++i;
    }
    if (i >= lines.size())
        throw type_error("subshift: expected a 'forbidden' or 'graph' section");
    if (lines[i][0] == "forbidden") {
        ++i;
        std::vector<Word> forb;
        for (; i < lines.size(); ++i) {
            Word w;
            for (const auto& t : lines[i])
                w.push_back(detail::resolve_symbol(t, n, s.labels, "subshift forbidden word"));
            forb.push_back(std::move(w));
        }
        s.x = Subshift::from_forbidden(n, forb);
    } else if (lines[i][0] == "graph") {
        ++i;
        std::map<std::string, int> vid;
        LabeledGraph g;
        for (; i < lines.size(); ++i) {
            const auto& l = lines[i];
            if (l.size() != 4 || l[0] != "edge")
                throw type_error("subshift: expected 'edge <from> <to> <label>'");
            auto vertex = [&](const std::string& v) {
                auto [it, fresh] = vid.try_emplace(v, g.vertices);
                if (fresh) ++g.vertices;
                return it->second;
            };
            const int from = vertex(l[1]);
            const int to = vertex(l[2]);
            g.edges.push_back(
                {from, to, detail::resolve_symbol(l[3], n, s.labels, "subshift edge label")});
        }
        s.x = Subshift::from_graph(n, g);
    } else {
        throw type_error("subshift: unexpected directive '" + lines[i][0] + "'");
    }
    return s;
}

// Format:
//   blockmap <name> <radius>
//   <cells of the window, space separated> -> <symbol>
// For arity k the window has k*(2r+1) cells, slot major.
inline ParsedBlockMap parse_blockmap(std::istream& in,
                                     const std::function<Symbol(const std::string&)>& cell,
                                     const std::function<Symbol(const std::string&)>& out) {
    auto lines = detail::tokenized_lines(in, "blockmap");
    ParsedBlockMap f;
    std::size_t i = 0;
    if (i >= lines.size() || lines[i][0] != "blockmap" || lines[i].size() != 3)
        throw type_error("blockmap: expected header 'blockmap <name> <radius>'");
    f.name = lines[i][1];
    f.radius = detail::parse_count(lines[i][2], "blockmap radius");
    ++i;
    const int width = 2 * f.radius + 1;
    f.arity = 0;
    for (; i < lines.size(); ++i) {
        const auto& l = lines[i];
        auto arrow = std::find(l.begin(), l.end(), "->");
        if (arrow == l.end() || arrow + 2 != l.end())
            throw type_error("blockmap " + f.name + ": expected '<window> -> <symbol>'");
        const int cells = static_cast<int>(arrow - l.begin());
        if (cells % width != 0)
            throw type_error("blockmap " + f.name + ": window has " + std::to_string(cells) +
                             " cells, not a multiple of " + std::to_string(width));
        const int arity = cells / width;
        if (f.arity == 0) f.arity = arity;
        if (arity != f.arity || arity == 0)
            throw type_error("blockmap " + f.name + ": inconsistent window length");
        Word w;
        for (auto it = l.begin(); it != arrow; ++it) w.push_back(cell(*it));
        auto [tit, fresh] = f.table.try_emplace(w, out(*(arrow + 1)));
        if (!fresh) throw type_error("blockmap " + f.name + ": duplicate window");
    }
    if (f.arity == 0) throw type_error("blockmap " + f.name + ": no table lines");
    return f;
}

/// A block map evaluating the parsed table; windows outside the table violate
/// the totality precondition.
inline BlockMap table_blockmap(const ParsedBlockMap& p, int domain_alphabet,
                               int codomain_alphabet) {
    auto table = p.table;
    auto name = p.name;
    return {p.radius, p.arity, domain_alphabet, codomain_alphabet,
            [table, name](const Word& w) {
                auto it = table.find(w);
                if (it == table.end())
                    throw precondition_error("blockmap " + name +
                                             ": table not total on the domain language");
                return it->second;
            }};
}

inline FiniteAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw type_error("cannot open algebra file " + path);
    return parse_algebra(in);
}

inline NamedSubshift load_subshift(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw type_error("cannot open subshift file " + path);
    return parse_subshift(in);
}

inline ParsedBlockMap load_blockmap(const std::string& path,
                                    const std::function<Symbol(const std::string&)>& cell,
                                    const std::function<Symbol(const std::string&)>& out) {
    std::ifstream in(path);
    if (!in) throw type_error("cannot open blockmap file " + path);
    return parse_blockmap(in, cell, out);
}

/// Graph-form emission; edges sorted for deterministic output.  Reparsing
/// yields a presentation of the same subshift.
inline std::string emit_subshift(const NamedSubshift& s) {
    std::ostringstream out;
    out << "subshift " << s.name << "\n";
    out << "alphabet " << s.x.alphabet << "\n";
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (!s.labels[i].empty()) out << "sym " << i << " " << s.labels[i] << "\n";
    out << "graph\n";
    auto edges = s.x.graph.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.from, a.to, a.label) < std::tie(b.from, b.to, b.label);
    });
    for (const auto& e : edges)
        out << "edge " << e.from << " " << e.to << " " << s.label(e.label) << "\n";
    return out.str();
}

} // namespace algsh

#endif
