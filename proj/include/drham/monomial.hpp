#ifndef DRHAM_MONOMIAL_HPP
#define DRHAM_MONOMIAL_HPP

#include <compare>
#include <cstdint>
#include <vector>

namespace drham {

/// Identifier of a jet variable: component alpha (0-based) and jet order.
/// Ordering is (alpha, jet) lexicographic.
inline uint32_t jet_id(int alpha, int jet) { return (uint32_t(alpha) << 16) | uint32_t(jet); }
inline int id_alpha(uint32_t id) { return int(id >> 16); }
inline int id_jet(uint32_t id) { return int(id & 0xffffu); }

/// One monomial of the extended ring: commuting jet variables u^alpha_i with
/// exponents, anticommuting theta_{alpha,k} factors (each at most once, kept
/// sorted; the sign of the sorting permutation is absorbed into the
/// coefficient), generator powers, and an epsilon exponent.
struct Mono {
    int eps = 0;
    std::vector<std::pair<uint32_t, int>> u;   // (jet_id, exp), sorted by id, exp > 0
    std::vector<uint32_t> th;                  // theta jet_ids, sorted, distinct
    std::vector<std::pair<uint16_t, int>> gen; // (generator index, exp), sorted, exp > 0

    bool is_constant() const { return u.empty() && th.empty() && gen.empty(); }

    int theta_degree() const { return int(th.size()); }

    /// Standard gradation: sum of jet orders, theta orders, minus eps power.
    long standard_degree() const {
        long d = -long(eps);
        for (auto &[id, e] : u) d += long(id_jet(id)) * e;
        for (auto id : th) d += id_jet(id);
        return d;
    }

    /// Total polynomial degree in the u-variables (all jets).
    long u_degree() const {
        long d = 0;
        for (auto &[id, e] : u) d += e;
        return d;
    }

    /// Highest jet order among u- and theta-variables, or -1 if none.
    int top_jet() const {
        int m = -1;
        for (auto &[id, e] : u)
            if (id_jet(id) > m) m = id_jet(id);
        for (auto id : th)
            if (id_jet(id) > m) m = id_jet(id);
        return m;
    }

    int u_exponent(uint32_t id) const {
        for (auto &[vid, e] : u)
            if (vid == id) return e;
        return 0;
    }

    friend auto operator<=>(const Mono &a, const Mono &b) {
        if (auto c = a.eps <=> b.eps; c != 0) return c;
        if (auto c = a.u <=> b.u; c != 0) return c;
        if (auto c = a.th <=> b.th; c != 0) return c;
        return a.gen <=> b.gen;
    }
    friend bool operator==(const Mono &a, const Mono &b) = default;
};

/// Merges two sorted theta lists. Returns false on a repeated factor (the
/// product is zero); otherwise stores the merged list in `out` and the Koszul
/// sign (+1/-1) of the interleaving permutation in `sign`.
inline bool merge_thetas(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b,
                         std::vector<uint32_t> &out, int &sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    sign = 1;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a-elements
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return true;
}

/// Product of the commuting parts of two monomials (theta handled separately).
inline void merge_exponents(const std::vector<std::pair<uint32_t, int>> &a,
                            const std::vector<std::pair<uint32_t, int>> &b,
                            std::vector<std::pair<uint32_t, int>> &out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
}

template <typename P>
inline void merge_exponents(const std::vector<std::pair<uint16_t, int>> &a,
                            const std::vector<std::pair<uint16_t, int>> &b, P &out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
}

} // namespace drham

#endif
