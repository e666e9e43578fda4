#pragma once

#include <algorithm>
#include <compare>
#include <vector>

#include "polyadic/core.hpp"

namespace polyadic {

/**
 * A total map between two index carriers, stored as its image vector.
 * Maps apply in prefix style and compose as (f o g)(x) = f(g(x)).
 */
struct ElementMap {
    std::uint32_t domain_order = 0;
    std::uint32_t codomain_order = 0;
    std::vector<Elem> images;

    ElementMap() = default;

    ElementMap(std::uint32_t dom, std::uint32_t cod, std::vector<Elem> imgs)
        : domain_order(dom), codomain_order(cod), images(std::move(imgs)) {
        if (images.size() != domain_order)
            fail(Errc::index_out_of_range, "image vector length " + std::to_string(images.size()) +
                                               " does not match domain order " + std::to_string(domain_order));
        for (Elem y : images)
            if (y >= codomain_order)
                fail(Errc::index_out_of_range,
                     "image " + std::to_string(y) + " outside codomain of order " + std::to_string(codomain_order));
    }

    Elem operator()(Elem x) const {
        if (x >= domain_order) fail(Errc::index_out_of_range, "argument " + std::to_string(x));
        return images[x];
    }

    bool bijective() const {
        if (domain_order != codomain_order) return false;
        std::vector<bool> seen(codomain_order, false);
        for (Elem y : images) {
            if (seen[y]) return false;
            seen[y] = true;
        }
        return true;
    }

    friend bool operator==(const ElementMap& a, const ElementMap& b) = default;
    friend auto operator<=>(const ElementMap& a, const ElementMap& b) {
        if (auto c = a.domain_order <=> b.domain_order; c != 0) return c;
        if (auto c = a.codomain_order <=> b.codomain_order; c != 0) return c;
        return std::compare_three_way{}(a.images, b.images);
    }
};

inline ElementMap identity_map(std::uint32_t order) {
    std::vector<Elem> im(order);
    for (std::uint32_t i = 0; i < order; ++i) im[i] = i;
    return ElementMap(order, order, std::move(im));
}

inline ElementMap compose(const ElementMap& f, const ElementMap& g) {
    if (g.codomain_order != f.domain_order)
        fail(Errc::incompatible, "compose: inner codomain " + std::to_string(g.codomain_order) +
                                     " != outer domain " + std::to_string(f.domain_order));
    std::vector<Elem> im(g.domain_order);
    for (std::uint32_t x = 0; x < g.domain_order; ++x) im[x] = f.images[g.images[x]];
    return ElementMap(g.domain_order, f.codomain_order, std::move(im));
}

inline ElementMap inverse_map(const ElementMap& f) {
    if (!f.bijective()) fail(Errc::not_automorphism, "inverse of a non-bijective map");
    std::vector<Elem> im(f.domain_order);
    for (std::uint32_t x = 0; x < f.domain_order; ++x) im[f.images[x]] = x;
    return ElementMap(f.codomain_order, f.domain_order, std::move(im));
}

inline ElementMap map_power(const ElementMap& f, std::uint32_t k) {
    ElementMap acc = identity_map(f.domain_order);
    for (std::uint32_t i = 0; i < k; ++i) acc = compose(f, acc);
    return acc;
}

} // namespace polyadic
