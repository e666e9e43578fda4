#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polyadic/core.hpp"
#include "polyadic/element_map.hpp"

namespace polyadic {

enum class Side { left, right };

/**
 * A finite group given by its full Cayley table. Construction goes through
 * validate_group(), which checks the Latin-square property, the existence of
 * a two-sided identity and associativity, in that order, and caches identity
 * and inverses. Instances are immutable afterwards.
 */
class FiniteGroup {
public:
    std::uint32_t order() const { return order_; }
    Elem identity() const { return identity_; }

    Elem product(Elem x, Elem y) const {
        check_index(x);
        check_index(y);
        return table_[x * order_ + y];
    }

    Elem inverse_of(Elem x) const {
        check_index(x);
        return inverses_[x];
    }

    const std::string& name_of(Elem x) const {
        check_index(x);
        return names_[x];
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Elem>& table() const { return table_; }

    ElementMap translation(Side s, Elem a) const {
        check_index(a);
        std::vector<Elem> im(order_);
        for (Elem x = 0; x < order_; ++x) im[x] = s == Side::left ? product(a, x) : product(x, a);
        return ElementMap(order_, order_, std::move(im));
    }

    // I_a(x) = a^-1 * x * a
    ElementMap inner_automorphism(Elem a) const {
        check_index(a);
        Elem ai = inverse_of(a);
        std::vector<Elem> im(order_);
        for (Elem x = 0; x < order_; ++x) im[x] = product(product(ai, x), a);
        return ElementMap(order_, order_, std::move(im));
    }

    Elem power(Elem x, std::uint32_t k) const {
        Elem acc = identity_;
        for (std::uint32_t i = 0; i < k; ++i) acc = product(acc, x);
        return acc;
    }

    std::vector<Elem> centralizer(const std::vector<Elem>& subset) const {
        for (Elem s : subset) check_index(s);
        std::vector<Elem> out;
        for (Elem x = 0; x < order_; ++x) {
            bool commutes = true;
            for (Elem s : subset)
                if (product(x, s) != product(s, x)) {
                    commutes = false;
                    break;
                }
            if (commutes) out.push_back(x);
        }
        return out;
    }

    std::vector<Elem> center() const {
        std::vector<Elem> all(order_);
        std::iota(all.begin(), all.end(), 0);
        return centralizer(all);
    }

    bool is_abelian() const {
        for (Elem x = 0; x < order_; ++x)
            for (Elem y = x + 1; y < order_; ++y)
                if (product(x, y) != product(y, x)) return false;
        return true;
    }

    // Sorted index sets; closed under product and inverse, containing identity.
    bool is_subgroup(const std::vector<Elem>& subset) const {
        if (subset.empty()) return false;
        std::vector<bool> in(order_, false);
        for (Elem s : subset) {
            check_index(s);
            in[s] = true;
        }
        if (!in[identity_]) return false;
        for (Elem x : subset) {
            if (!in[inverse_of(x)]) return false;
            for (Elem y : subset)
                if (!in[product(x, y)]) return false;
        }
        return true;
    }

    std::vector<Elem> subgroup_closure(const std::vector<Elem>& gens) const {
        std::vector<bool> in(order_, false);
        std::vector<Elem> queue{identity_};
        in[identity_] = true;
        for (Elem g : gens) {
            check_index(g);
            if (!in[g]) {
                in[g] = true;
                queue.push_back(g);
            }
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Elem x = queue[head];
            for (Elem g : gens) {
                Elem y = product(x, g);
                if (!in[y]) {
                    in[y] = true;
                    queue.push_back(y);
                }
                Elem z = product(g, x);
                if (!in[z]) {
                    in[z] = true;
                    queue.push_back(z);
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        return queue;
    }

    // Greedy smallest-first generating set.
    std::vector<Elem> generating_set() const {
        std::vector<Elem> gens;
        std::vector<Elem> closed{identity_};
        while (closed.size() < order_) {
            Elem next = 0;
            for (Elem x = 0; x < order_; ++x)
                if (!std::binary_search(closed.begin(), closed.end(), x)) {
                    next = x;
                    break;
                }
            gens.push_back(next);
            closed = subgroup_closure(gens);
        }
        return gens;
    }

    bool is_homomorphism_image(const ElementMap& phi, const FiniteGroup& target) const {
        if (phi.domain_order != order_ || phi.codomain_order != target.order()) return false;
        for (Elem x = 0; x < order_; ++x)
            for (Elem y = 0; y < order_; ++y)
                if (phi.images[product(x, y)] != target.product(phi.images[x], phi.images[y])) return false;
        return true;
    }

    bool is_automorphism(const ElementMap& phi) const {
        return phi.bijective() && is_homomorphism_image(phi, *this);
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.table_ == b.table_;
    }

    friend FiniteGroup validate_group(const std::vector<std::vector<Elem>>& table,
                                      const std::vector<std::string>& names);

private:
    FiniteGroup() = default;

    void check_index(Elem x) const {
        if (x >= order_)
            fail(Errc::index_out_of_range,
                 "element " + std::to_string(x) + " in a group of order " + std::to_string(order_));
    }

    std::uint32_t order_ = 0;
    Elem identity_ = 0;
    std::vector<Elem> table_; // row-major, table_[x*order+y] = x*y
    std::vector<Elem> inverses_;
    std::vector<std::string> names_;
};

inline FiniteGroup validate_group(const std::vector<std::vector<Elem>>& table,
                                  const std::vector<std::string>& names = {}) {
    const std::size_t order = table.size();
    if (order == 0) fail(Errc::no_identity, "empty table");
    for (std::size_t r = 0; r < order; ++r) {
        if (table[r].size() != order)
            fail(Errc::index_out_of_range, "row " + std::to_string(r) + " has length " +
                                               std::to_string(table[r].size()) + ", expected " + std::to_string(order));
        for (std::size_t c = 0; c < order; ++c)
            if (table[r][c] >= order)
                fail(Errc::index_out_of_range, "entry " + std::to_string(table[r][c]) + " at cell (" +
                                                   std::to_string(r) + "," + std::to_string(c) + ")");
    }
    if (!names.empty() && names.size() != order)
        fail(Errc::index_out_of_range, "name list length does not match order");

    // Latin square: duplicates name the first offending cell.
    for (std::size_t r = 0; r < order; ++r) {
        std::vector<bool> seen(order, false);
        for (std::size_t c = 0; c < order; ++c) {
            if (seen[table[r][c]])
                fail(Errc::not_latin_square,
                     "row " + std::to_string(r) + " repeats value " + std::to_string(table[r][c]) +
                         " at column " + std::to_string(c));
            seen[table[r][c]] = true;
        }
    }
    for (std::size_t c = 0; c < order; ++c) {
        std::vector<bool> seen(order, false);
        for (std::size_t r = 0; r < order; ++r) {
            if (seen[table[r][c]])
                fail(Errc::not_latin_square,
                     "column " + std::to_string(c) + " repeats value " + std::to_string(table[r][c]) +
                         " at row " + std::to_string(r));
            seen[table[r][c]] = true;
        }
    }

    std::optional<Elem> identity;
    for (std::size_t e = 0; e < order && !identity; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < order && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
        if (ok) identity = static_cast<Elem>(e);
    }
    if (!identity) fail(Errc::no_identity, "no two-sided identity element");

    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
            for (std::size_t z = 0; z < order; ++z)
                if (table[table[x][y]][z] != table[x][table[y][z]])
                    fail(Errc::not_associative, "triple (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                                    std::to_string(z) + ")");

    FiniteGroup g;
    g.order_ = static_cast<std::uint32_t>(order);
    g.identity_ = *identity;
    g.table_.resize(order * order);
    for (std::size_t r = 0; r < order; ++r)
        for (std::size_t c = 0; c < order; ++c) g.table_[r * order + c] = table[r][c];
    g.inverses_.resize(order);
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
            if (table[x][y] == *identity) {
                if (table[y][x] != *identity)
                    fail(Errc::internal_inconsistency, "one-sided inverse at " + std::to_string(x));
                g.inverses_[x] = static_cast<Elem>(y);
            }
    if (names.empty()) {
        g.names_.resize(order);
        for (std::size_t i = 0; i < order; ++i) g.names_[i] = std::to_string(i);
    } else {
        g.names_ = names;
    }
    return g;
}

inline ElementMap commutator_of_autos(const FiniteGroup& g, const ElementMap& theta, const ElementMap& phi) {
    if (!g.is_automorphism(theta)) fail(Errc::not_automorphism, "first map is not an automorphism");
    if (!g.is_automorphism(phi)) fail(Errc::not_automorphism, "second map is not an automorphism");
    return compose(compose(theta, phi), compose(inverse_map(theta), inverse_map(phi)));
}

namespace detail {

// Enumerate candidate homomorphisms g -> h by assigning images to a greedy
// generating set of g, extending through BFS words and verifying fully.
template <typename Visit>
void for_each_homomorphism(const FiniteGroup& g, const FiniteGroup& h, Visit&& visit) {
    const std::uint32_t n = g.order(), m = h.order();
    const std::vector<Elem> gens = g.generating_set();

    // BFS word expression: each element is parent * generator.
    std::vector<Elem> parent(n, 0), via(n, 0);
    std::vector<Elem> discovered{g.identity()};
    std::vector<bool> seen(n, false);
    seen[g.identity()] = true;
    for (std::size_t head = 0; head < discovered.size(); ++head) {
        Elem x = discovered[head];
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            Elem y = g.product(x, gens[gi]);
            if (!seen[y]) {
                seen[y] = true;
                parent[y] = x;
                via[y] = static_cast<Elem>(gi);
                discovered.push_back(y);
            }
        }
    }

    std::vector<Elem> assign(gens.size(), 0);
    std::vector<Elem> image(n, 0);
    const std::uint64_t total = checked_pow(m, static_cast<std::uint32_t>(gens.size()), UINT64_MAX / 2);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        std::uint64_t r = rank;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            assign[i] = static_cast<Elem>(r % m);
            r /= m;
        }
        image[g.identity()] = h.identity();
        for (std::size_t head = 1; head < discovered.size(); ++head) {
            Elem x = discovered[head];
            image[x] = h.product(image[parent[x]], assign[via[x]]);
        }
        bool ok = true;
        for (std::size_t i = 0; i < gens.size() && ok; ++i) ok = image[gens[i]] == assign[i];
        for (Elem x = 0; x < n && ok; ++x)
            for (Elem y = 0; y < n && ok; ++y)
                ok = image[g.product(x, y)] == h.product(image[x], image[y]);
        if (ok) visit(image);
    }
}

} // namespace detail

inline std::vector<ElementMap> enumerate_binary_homomorphisms(const FiniteGroup& g, const FiniteGroup& h,
                                                              const Budget& budget = {}) {
    if (g.order() > budget.max_brute_order || h.order() > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));
    std::vector<ElementMap> out;
    detail::for_each_homomorphism(g, h, [&](const std::vector<Elem>& image) {
        out.emplace_back(g.order(), h.order(), image);
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<ElementMap> enumerate_automorphisms(const FiniteGroup& g, const Budget& budget = {}) {
    if (g.order() > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));
    std::vector<ElementMap> out;
    detail::for_each_homomorphism(g, g, [&](const std::vector<Elem>& image) {
        ElementMap phi(g.order(), g.order(), image);
        if (phi.bijective()) out.push_back(std::move(phi));
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<ElementMap> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                                  const Budget& budget = {}) {
    if (g.order() > budget.max_brute_order || h.order() > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));
    if (g.order() != h.order()) return std::nullopt;
    std::optional<ElementMap> found;
    detail::for_each_homomorphism(g, h, [&](const std::vector<Elem>& image) {
        if (found) return;
        ElementMap phi(g.order(), h.order(), image);
        if (phi.bijective()) found = std::move(phi);
    });
    return found;
}

} // namespace polyadic
