#ifndef ALGSH_EVP_HPP
#define ALGSH_EVP_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "algsh/errors.hpp"

namespace algsh {

using Symbol = int;
using Word = std::vector<Symbol>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Symbol s : w) {
            h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// A bi-infinite sequence that is periodic far enough to the left and to the
/// right:  ^inf(left_period) left_tail . right_tail (right_period)^inf,
/// with position 0 at the first cell of right_tail.  Kept in canonical form:
/// periods primitive, tails minimal, so equal sequences compare equal
/// fieldwise.
struct Epp {
    Word left_period;   // repeated towards -inf, nonempty
    Word left_tail;     // occupies positions [-|left_tail|, -1]
    Word right_tail;    // occupies positions [0, |right_tail|-1]
    Word right_period;  // repeated towards +inf, nonempty

    Symbol at(long long i) const {
        if (i >= 0) {
            const long long rt = static_cast<long long>(right_tail.size());
            if (i < rt) return right_tail[static_cast<std::size_t>(i)];
            return right_period[static_cast<std::size_t>((i - rt) % static_cast<long long>(right_period.size()))];
        }
        const long long j = -1 - i; // distance from the right end of the left part
        const long long lt = static_cast<long long>(left_tail.size());
        if (j < lt) return left_tail[left_tail.size() - 1 - static_cast<std::size_t>(j)];
        const long long lp = static_cast<long long>(left_period.size());
        return left_period[left_period.size() - 1 - static_cast<std::size_t>((j - lt) % lp)];
    }

    Word window(long long lo, long long hi) const { // symbols at positions [lo, hi]
        Word w;
        w.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (long long i = lo; i <= hi; ++i) w.push_back(at(i));
        return w;
    }

    static Epp uniform(Symbol s) {
        Epp p;
        p.left_period = {s};
        p.right_period = {s};
        return p;
    }

    /// Builds a point from a sampling function, given bounds after which the
    /// sequence is promised periodic: periodic with period rp at positions
    /// >= right_pre, and with period lp at positions <= -left_pre - 1.
    static Epp from_fn(const std::function<Symbol(long long)>& f,
                       long long left_pre, long long left_per,
                       long long right_pre, long long right_per) {
        if (left_per <= 0 || right_per <= 0) throw internal_error("Epp::from_fn: empty period");
        Epp p;
        for (long long i = -left_pre - left_per; i <= -left_pre - 1; ++i) p.left_period.push_back(f(i));
        for (long long i = -left_pre; i <= -1; ++i) p.left_tail.push_back(f(i));
        for (long long i = 0; i < right_pre; ++i) p.right_tail.push_back(f(i));
        for (long long i = right_pre; i < right_pre + right_per; ++i) p.right_period.push_back(f(i));
        p.canonicalize();
        return p;
    }

    Epp shifted(long long k) const { // y_i = x_{i+k}
        const Epp& x = *this;
        long long lpre = static_cast<long long>(left_tail.size()) + std::llabs(k);
        long long rpre = static_cast<long long>(right_tail.size()) + std::llabs(k);
        return from_fn([&x, k](long long i) { return x.at(i + k); },
                       lpre, static_cast<long long>(left_period.size()),
                       rpre, static_cast<long long>(right_period.size()));
    }

    void canonicalize() {
        if (left_period.empty() || right_period.empty())
            throw internal_error("Epp: empty period");
        reduce_primitive(right_period);
        reduce_primitive(left_period);
        // Absorb tail symbols that already follow the periodic pattern.
        while (!right_tail.empty() && right_tail.back() == right_period.back()) {
            right_period.insert(right_period.begin(), right_period.back());
            right_period.pop_back();
            right_tail.pop_back();
        }
        while (!left_tail.empty() && left_tail.front() == left_period.front()) {
            left_period.push_back(left_period.front());
            left_period.erase(left_period.begin());
            left_tail.erase(left_tail.begin());
        }
    }

    bool operator==(const Epp& o) const = default;

    std::string str(const std::function<std::string(Symbol)>& name) const {
        auto emit = [&](const Word& w) {
            std::string s;
            for (Symbol c : w) s += name(c);
            return s;
        };
        std::string s = "^inf(" + emit(left_period) + ")" + emit(left_tail) + "." +
                        emit(right_tail) + "(" + emit(right_period) + ")^inf";
        return s;
    }

private:
    static void reduce_primitive(Word& p) {
        const std::size_t n = p.size();
        for (std::size_t d = 1; d <= n / 2; ++d) {
            if (n % d != 0) continue;
            bool ok = true;
            for (std::size_t i = d; i < n && ok; ++i) ok = (p[i] == p[i % d]);
            if (ok) {
                p.resize(d);
                return;
            }
        }
    }
};

/// Applies a cellwise-with-radius local rule to k aligned points.  `rule`
/// receives, for each relative position in [-radius, radius], the tuple of
/// argument symbols (flattened: args[a * (2*radius+1) + pos]).
inline Epp apply_local_rule(const std::vector<Epp>& args, int radius,
                            const std::function<Symbol(const Word&)>& rule) {
    if (args.empty()) throw internal_error("apply_local_rule: no arguments");
    long long lper = 1, rper = 1, lpre = 0, rpre = 0;
    for (const Epp& a : args) {
        lper = std::lcm(lper, static_cast<long long>(a.left_period.size()));
        rper = std::lcm(rper, static_cast<long long>(a.right_period.size()));
        lpre = std::max(lpre, static_cast<long long>(a.left_tail.size()));
        rpre = std::max(rpre, static_cast<long long>(a.right_tail.size()));
    }
    lpre += radius;
    rpre += radius;
    const int w = 2 * radius + 1;
    auto f = [&args, radius, w, &rule](long long i) {
        Word t(args.size() * static_cast<std::size_t>(w));
        for (std::size_t a = 0; a < args.size(); ++a)
            for (int d = -radius; d <= radius; ++d)
                t[a * static_cast<std::size_t>(w) + static_cast<std::size_t>(d + radius)] =
                    args[a].at(i + d);
        return rule(t);
    };
    return Epp::from_fn(f, lpre, lper, rpre, rper);
}

} // namespace algsh

#endif
