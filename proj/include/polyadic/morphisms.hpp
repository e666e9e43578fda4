#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "polyadic/core.hpp"
#include "polyadic/element_map.hpp"
#include "polyadic/finite_group.hpp"
#include "polyadic/parallel.hpp"
#include "polyadic/polyadic_group.hpp"

namespace polyadic {

/**
 * An (n+1)-tuple of maps T = (a_1,...,a_{n+1}) intertwining two n-ary
 * operations:  a_{n+1}(f(x_1..x_n)) = h(a_1(x_1),...,a_n(x_n)).
 * Isotopy when every component is bijective; autotopy when source and
 * target coincide.
 */
struct Homotopy {
    PolyadicGroup source;
    PolyadicGroup target;
    std::vector<ElementMap> maps;
    bool isotopy = false;
};

struct HomotopyCheck {
    bool holds = false;
    bool isotopy = false;
    std::vector<Elem> witness; // first offending argument tuple; empty when holds
};

inline HomotopyCheck check_homotopy(const std::vector<ElementMap>& maps, const PolyadicGroup& src,
                                    const PolyadicGroup& tgt) {
    const std::uint32_t n = src.arity();
    if (tgt.arity() != n)
        fail(Errc::arity_mismatch, "source arity " + std::to_string(n) + " vs target arity " +
                                       std::to_string(tgt.arity()));
    if (maps.size() != static_cast<std::size_t>(n) + 1)
        fail(Errc::arity_mismatch, "expected " + std::to_string(n + 1) + " maps, got " +
                                       std::to_string(maps.size()));
    for (const ElementMap& m : maps)
        if (m.domain_order != src.order() || m.codomain_order != tgt.order())
            fail(Errc::incompatible, "component maps the wrong carriers");

    HomotopyCheck res;
    res.isotopy = std::all_of(maps.begin(), maps.end(), [](const ElementMap& m) { return m.bijective(); });
    std::vector<Elem> t(n, 0), mapped(n);
    do {
        for (std::uint32_t i = 0; i < n; ++i) mapped[i] = maps[i].images[t[i]];
        if (maps[n].images[src.eval_unchecked(t.data())] != tgt.eval_unchecked(mapped.data())) {
            res.witness = t;
            return res;
        }
    } while (src.next_tuple(t));
    res.holds = true;
    return res;
}

inline bool is_homotopy(const std::vector<ElementMap>& maps, const PolyadicGroup& src, const PolyadicGroup& tgt) {
    return check_homotopy(maps, src, tgt).holds;
}

inline Homotopy make_homotopy(std::vector<ElementMap> maps, const PolyadicGroup& src, const PolyadicGroup& tgt) {
    HomotopyCheck c = check_homotopy(maps, src, tgt);
    if (!c.holds) {
        std::string w = "defining identity fails at (";
        for (std::size_t i = 0; i < c.witness.size(); ++i) w += (i ? "," : "") + std::to_string(c.witness[i]);
        fail(Errc::not_homotopy, w + ")");
    }
    return Homotopy{src, tgt, std::move(maps), c.isotopy};
}

inline Homotopy identity_homotopy(const PolyadicGroup& pg) {
    std::vector<ElementMap> maps(pg.arity() + 1, identity_map(pg.order()));
    return Homotopy{pg, pg, std::move(maps), true};
}

// Flattened image vectors of all components; the canonical sort/equality key.
inline std::vector<Elem> homotopy_key(const Homotopy& t) {
    std::vector<Elem> key;
    for (const ElementMap& m : t.maps) key.insert(key.end(), m.images.begin(), m.images.end());
    return key;
}

// compose_homotopies(T, S) = T after S: S maps (K,g) into T's source and the
// composite runs (K,g) -> T's target, component i being T_i o S_i.
inline Homotopy compose_homotopies(const Homotopy& T, const Homotopy& S) {
    if (T.maps.size() != S.maps.size()) fail(Errc::incompatible, "component counts differ");
    if (!S.target.same_operation(T.source))
        fail(Errc::incompatible, "inner target operation differs from outer source");
    std::vector<ElementMap> comps;
    comps.reserve(T.maps.size());
    for (std::size_t i = 0; i < T.maps.size(); ++i) comps.push_back(compose(T.maps[i], S.maps[i]));
    Homotopy out{S.source, T.target, std::move(comps), false};
    out.isotopy = std::all_of(out.maps.begin(), out.maps.end(), [](const ElementMap& m) { return m.bijective(); });
    assert(check_homotopy(out.maps, out.source, out.target).holds);
    return out;
}

inline Homotopy inverse_homotopy(const Homotopy& T) {
    if (!T.isotopy) fail(Errc::not_isotopy, "only isotopies invert componentwise");
    std::vector<ElementMap> maps;
    maps.reserve(T.maps.size());
    for (const ElementMap& m : T.maps) maps.push_back(inverse_map(m));
    Homotopy out{T.target, T.source, std::move(maps), true};
    assert(check_homotopy(out.maps, out.source, out.target).holds);
    return out;
}

/**
 * The autotopy group of an n-ary group, enumerated by choosing the first n
 * components freely and solving the last one from the defining identity.
 * Carrier is canonically sorted; immutable once built.
 */
class AutotopyGroup {
public:
    AutotopyGroup(PolyadicGroup pg, std::vector<Homotopy> carrier)
        : pg_(std::move(pg)), carrier_(std::move(carrier)) {}

    const PolyadicGroup& group() const { return pg_; }
    const std::vector<Homotopy>& carrier() const { return carrier_; }
    std::size_t size() const { return carrier_.size(); }

    std::optional<std::size_t> index_of_key(const std::vector<Elem>& key) const {
        auto it = std::lower_bound(carrier_.begin(), carrier_.end(), key,
                                   [](const Homotopy& t, const std::vector<Elem>& k) { return homotopy_key(t) < k; });
        if (it == carrier_.end() || homotopy_key(*it) != key) return std::nullopt;
        return static_cast<std::size_t>(it - carrier_.begin());
    }

    std::vector<std::vector<std::uint32_t>> build_composition_table() const {
        std::vector<std::vector<std::uint32_t>> table(size(), std::vector<std::uint32_t>(size()));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                Homotopy c = compose_homotopies(carrier_[i], carrier_[j]);
                auto idx = index_of_key(homotopy_key(c));
                if (!idx) fail(Errc::internal_inconsistency, "autotopy set not closed under composition");
                table[i][j] = static_cast<std::uint32_t>(*idx);
            }
        return table;
    }

    struct Axioms {
        bool closed = false;
        bool has_identity = false;
        bool has_inverses = false;
    };

    Axioms verify_group_axioms() const {
        Axioms ax;
        auto table = build_composition_table(); // throws if not closed
        ax.closed = true;
        auto id_idx = index_of_key(homotopy_key(identity_homotopy(pg_)));
        ax.has_identity = id_idx.has_value();
        if (ax.has_identity) {
            ax.has_inverses = true;
            for (std::size_t i = 0; i < size() && ax.has_inverses; ++i) {
                bool found = false;
                for (std::size_t j = 0; j < size() && !found; ++j)
                    found = table[i][j] == *id_idx && table[j][i] == *id_idx;
                ax.has_inverses = found;
            }
        }
        return ax;
    }

private:
    PolyadicGroup pg_;
    std::vector<Homotopy> carrier_;
};

inline AutotopyGroup enumerate_autotopies(const PolyadicGroup& pg, const Budget& budget = {}) {
    const std::uint32_t m = pg.order(), n = pg.arity();
    if (m > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));
    const std::uint64_t fact = factorial(m);
    const std::uint64_t total = checked_pow(fact, n, budget.exhaustive_cap);
    if (total > budget.exhaustive_cap)
        fail(Errc::budget_exceeded, "(order!)^n candidate prefixes exceed the budget");

    // Solving the last component: with x_2..x_n pinned at 0 the section
    // x_1 -> f(x_1,0,...,0) is a bijection, which defines a_{n+1} totally.
    std::vector<Elem> section(m);
    {
        std::vector<Elem> args(n, 0);
        for (Elem x = 0; x < m; ++x) {
            args[0] = x;
            section[x] = pg.eval_unchecked(args.data());
        }
    }

    auto found = partitioned_collect<std::vector<ElementMap>>(
        total, budget.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::vector<ElementMap>> local;
            std::vector<std::vector<Elem>> comp(n);
            std::vector<Elem> last(m), t(n), mapped(n), head(n), pool;
            for (std::uint64_t rank = lo; rank < hi; ++rank) {
                std::uint64_t r = rank;
                for (std::uint32_t i = n; i-- > 0;) {
                    unrank_permutation_into(r % fact, m, pool, comp[i]);
                    r /= fact;
                }
                for (std::uint32_t i = 0; i < n; ++i) head[i] = comp[i][0];
                for (Elem x = 0; x < m; ++x) {
                    head[0] = comp[0][x];
                    last[section[x]] = pg.eval_unchecked(head.data());
                }
                std::fill(t.begin(), t.end(), 0);
                bool ok = true;
                do {
                    for (std::uint32_t i = 0; i < n; ++i) mapped[i] = comp[i][t[i]];
                    if (last[pg.eval_unchecked(t.data())] != pg.eval_unchecked(mapped.data())) {
                        ok = false;
                        break;
                    }
                } while (pg.next_tuple(t));
                if (ok) {
                    std::vector<ElementMap> maps;
                    maps.reserve(n + 1);
                    for (std::uint32_t i = 0; i < n; ++i) maps.emplace_back(m, m, comp[i]);
                    maps.emplace_back(m, m, last);
                    local.push_back(std::move(maps));
                }
            }
            return local;
        });

    std::vector<Homotopy> carrier;
    carrier.reserve(found.size());
    for (auto& maps : found) carrier.push_back(Homotopy{pg, pg, std::move(maps), true});
    std::sort(carrier.begin(), carrier.end(),
              [](const Homotopy& a, const Homotopy& b) { return homotopy_key(a) < homotopy_key(b); });
    return AutotopyGroup(pg, std::move(carrier));
}

inline bool is_der_n_form(const PolyadicGroup& pg) {
    if (!pg.has_derived_spec()) return false;
    const DerivedSpec& s = pg.spec();
    return s.theta == identity_map(s.base.order()) && s.b == s.base.identity();
}

// Houses the (a, phi) pair of the automorphism/homomorphism decompositions:
// the represented map is psi(x) = phi(x) * a.
struct AutDecomposition {
    Elem a = 0;
    ElementMap phi;
};

inline ElementMap reconstruct_translation_pair(const FiniteGroup& base, const AutDecomposition& dec) {
    std::vector<Elem> im(base.order());
    for (Elem x = 0; x < base.order(); ++x) im[x] = base.product(dec.phi.images[x], dec.a);
    return ElementMap(base.order(), base.order(), std::move(im));
}

struct AutotopyDecomposition {
    std::vector<Elem> a_list;
    ElementMap phi;
};

namespace detail {

inline std::vector<Elem> prefix_products(const FiniteGroup& g, const std::vector<Elem>& a_list) {
    std::vector<Elem> p(a_list.size() + 1);
    p[0] = g.identity();
    for (std::size_t i = 0; i < a_list.size(); ++i) p[i + 1] = g.product(p[i], a_list[i]);
    return p;
}

} // namespace detail

// Component i of the reconstructed tuple is L_{a_i} o I_{a_1...a_i} o phi and
// the last one is R_{a_1...a_n} o phi; equivalently component i sends x to
// (a_1...a_{i-1})^-1 * phi(x) * (a_1...a_i).
inline Homotopy reconstruct_autotopy(const PolyadicGroup& pg, const AutotopyDecomposition& dec) {
    if (!is_der_n_form(pg)) fail(Errc::not_der_n_form, "reconstruction targets the plain product derivation");
    const FiniteGroup& g = pg.spec().base;
    const std::uint32_t n = pg.arity(), m = pg.order();
    if (dec.a_list.size() != n) fail(Errc::arity_mismatch, "need n translation elements");
    const std::vector<Elem> p = detail::prefix_products(g, dec.a_list);
    std::vector<ElementMap> maps;
    maps.reserve(n + 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Elem left = g.inverse_of(p[i]);
        std::vector<Elem> im(m);
        for (Elem x = 0; x < m; ++x) im[x] = g.product(g.product(left, dec.phi.images[x]), p[i + 1]);
        maps.emplace_back(m, m, std::move(im));
    }
    {
        std::vector<Elem> im(m);
        for (Elem x = 0; x < m; ++x) im[x] = g.product(dec.phi.images[x], p[n]);
        maps.emplace_back(m, m, std::move(im));
    }
    return make_homotopy(std::move(maps), pg, pg);
}

inline AutotopyDecomposition autotopy_decompose(const PolyadicGroup& pg, const Homotopy& T) {
    if (!is_der_n_form(pg))
        fail(Errc::not_der_n_form, "decomposition needs theta = identity and b = identity");
    HomotopyCheck c = check_homotopy(T.maps, pg, pg);
    if (!c.holds || !c.isotopy) fail(Errc::not_autotopy, "tuple is not an autotopy of this group");

    const FiniteGroup& g = pg.spec().base;
    const std::uint32_t n = pg.arity(), m = pg.order();
    const Elem e = g.identity();

    AutotopyDecomposition dec;
    dec.a_list.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) dec.a_list[i] = T.maps[i].images[e];
    const std::vector<Elem> p = detail::prefix_products(g, dec.a_list);
    const Elem dinv = g.inverse_of(p[n]);
    std::vector<Elem> phi_im(m);
    for (Elem x = 0; x < m; ++x) phi_im[x] = g.product(T.maps[n].images[x], dinv);
    dec.phi = ElementMap(m, m, std::move(phi_im));
    if (!g.is_automorphism(dec.phi))
        fail(Errc::internal_inconsistency, "translated last component is not a base automorphism");

    Homotopy rebuilt = reconstruct_autotopy(pg, dec);
    for (std::uint32_t i = 0; i <= n; ++i)
        if (rebuilt.maps[i] != T.maps[i])
            fail(Errc::internal_inconsistency, "reconstruction differs in component " + std::to_string(i));
    return dec;
}

struct ConjugationReport {
    bool equal = false;
    std::size_t source_count = 0;
    std::size_t target_count = 0;
};

// T^-1 o S o T for S running over the target's autotopies must reproduce the
// source's autotopy group exactly.
inline ConjugationReport conjugation_check(const Homotopy& T, const Budget& budget = {}) {
    if (!T.isotopy || !check_homotopy(T.maps, T.source, T.target).holds)
        fail(Errc::not_isotopy, "conjugation requires a valid isotopy");
    AutotopyGroup src_group = enumerate_autotopies(T.source, budget);
    AutotopyGroup tgt_group = enumerate_autotopies(T.target, budget);
    const Homotopy tinv = inverse_homotopy(T);

    std::vector<std::vector<Elem>> conjugated;
    conjugated.reserve(tgt_group.size());
    for (const Homotopy& s : tgt_group.carrier())
        conjugated.push_back(homotopy_key(compose_homotopies(tinv, compose_homotopies(s, T))));
    std::sort(conjugated.begin(), conjugated.end());

    std::vector<std::vector<Elem>> source_keys;
    source_keys.reserve(src_group.size());
    for (const Homotopy& s : src_group.carrier()) source_keys.push_back(homotopy_key(s));

    ConjugationReport rep;
    rep.source_count = src_group.size();
    rep.target_count = tgt_group.size();
    rep.equal = conjugated == source_keys;
    return rep;
}

// The isotopy (id, theta, theta^2, ..., theta^(n-1), R_{b^-1}) from a derived
// group to the plain-product derivation over the same base. Constructed and
// then verified, never trusted.
inline Homotopy canonical_isotopy_to_dern(const PolyadicGroup& pg, const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const std::uint32_t n = s.n, m = s.base.order();
    PolyadicGroup target = derive(s.base, n, identity_map(m), s.base.identity(), budget);
    std::vector<ElementMap> maps;
    maps.reserve(n + 1);
    maps.push_back(identity_map(m));
    for (std::uint32_t i = 1; i < n; ++i) maps.push_back(s.theta_powers[i]);
    maps.push_back(s.base.translation(Side::right, s.base.inverse_of(s.b)));
    HomotopyCheck c = check_homotopy(maps, pg, target);
    if (!c.holds || !c.isotopy)
        fail(Errc::internal_inconsistency, "canonical tuple failed the homotopy gate");
    return Homotopy{pg, target, std::move(maps), true};
}

// The reverse direction: (id, eta^-1, ..., eta^-(n-1), R_c) from the plain
// product derivation into der_{eta,c}.
inline Homotopy canonical_isotopy_from_dern(const PolyadicGroup& pg, const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const std::uint32_t n = s.n, m = s.base.order();
    PolyadicGroup source = derive(s.base, n, identity_map(m), s.base.identity(), budget);
    const ElementMap eta_inv = inverse_map(s.theta);
    std::vector<ElementMap> maps;
    maps.reserve(n + 1);
    maps.push_back(identity_map(m));
    ElementMap acc = identity_map(m);
    for (std::uint32_t i = 1; i < n; ++i) {
        acc = compose(eta_inv, acc);
        maps.push_back(acc);
    }
    maps.push_back(s.base.translation(Side::right, s.b));
    HomotopyCheck c = check_homotopy(maps, source, pg);
    if (!c.holds || !c.isotopy)
        fail(Errc::internal_inconsistency, "canonical tuple failed the homotopy gate");
    return Homotopy{source, pg, std::move(maps), true};
}

inline std::vector<ElementMap> enumerate_automorphisms_brute(const PolyadicGroup& pg, const Budget& budget = {}) {
    const std::uint32_t m = pg.order(), n = pg.arity();
    if (m > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));
    const std::uint64_t total = factorial(m);
    auto found = partitioned_collect<std::vector<Elem>>(
        total, budget.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::vector<Elem>> local;
            std::vector<Elem> t(n), mapped(n), pool, perm;
            for (std::uint64_t rank = lo; rank < hi; ++rank) {
                unrank_permutation_into(rank, m, pool, perm);
                std::fill(t.begin(), t.end(), 0);
                bool ok = true;
                do {
                    for (std::uint32_t i = 0; i < n; ++i) mapped[i] = perm[t[i]];
                    if (perm[pg.eval_unchecked(t.data())] != pg.eval_unchecked(mapped.data())) {
                        ok = false;
                        break;
                    }
                } while (pg.next_tuple(t));
                if (ok) local.push_back(std::move(perm));
            }
            return local;
        });
    std::vector<ElementMap> out;
    out.reserve(found.size());
    for (auto& im : found) out.emplace_back(m, m, std::move(im));
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Structure-theorem enumeration: the automorphisms of der_{theta,b}(G,.) are
 * exactly the maps R_a o phi where phi is a base automorphism,
 * f(a,...,a) = phi(b)*a, and the commutator theta phi theta^-1 phi^-1 equals
 * the inner automorphism I_a.
 */
inline std::vector<AutDecomposition> enumerate_automorphisms_structural(const PolyadicGroup& pg,
                                                                        const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const FiniteGroup& g = s.base;
    const std::uint32_t m = g.order(), n = s.n;

    const std::vector<ElementMap> base_autos = enumerate_automorphisms(g, budget);
    const ElementMap theta_inv = inverse_map(s.theta);

    std::vector<AutDecomposition> out;
    std::vector<Elem> diag(n);
    for (Elem a = 0; a < m; ++a) {
        std::fill(diag.begin(), diag.end(), a);
        const Elem f_diag = pg.eval_unchecked(diag.data());
        const ElementMap inner_a = g.inner_automorphism(a);
        for (const ElementMap& phi : base_autos) {
            if (f_diag != g.product(phi.images[s.b], a)) continue;
            const ElementMap comm = compose(compose(s.theta, phi), compose(theta_inv, inverse_map(phi)));
            if (comm == inner_a) out.push_back(AutDecomposition{a, phi});
        }
    }
    std::sort(out.begin(), out.end(), [&](const AutDecomposition& x, const AutDecomposition& y) {
        return reconstruct_translation_pair(g, x).images < reconstruct_translation_pair(g, y).images;
    });
    return out;
}

struct AutStructureReport {
    std::size_t aut_order = 0;
    bool pairs_distinct = false;            // distinct (a, phi) pairs induce distinct maps
    std::vector<Elem> kernel;                // a's whose pair carries phi = identity
    bool kernel_equals_z_star = false;
    bool multiplication_rule_ok = false;     // (R_a phi)(R_a' phi') = R_{phi(a') a} phi phi', closed
    bool all_idempotents_central = false;
    std::size_t z_star_order = 0;
    std::size_t c_aut_theta_order = 0;
    bool action_well_defined = false;        // phi in C_Aut(theta), a in Z* => phi(a) in Z*
    bool centralizer_formula_ok = false;     // |Aut(G,f)| = |C_Aut(theta)| * |Z*|
    bool abelian_theta_identity = false;     // base abelian and theta = id
    std::size_t z_bar_order = 0;             // |{a : a^(n-1) = e}|
    bool abelian_formula_ok = false;         // |Aut(G,f)| = |Aut(G,.)| * |Z_bar|
};

inline AutStructureReport aut_group_structure(const PolyadicGroup& pg, const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const FiniteGroup& g = s.base;
    if (s.b != g.identity())
        fail(Errc::requires_derived_form, "structure report is defined for b = identity");
    const std::uint32_t m = g.order(), n = s.n;

    const std::vector<AutDecomposition> pairs = enumerate_automorphisms_structural(pg, budget);
    std::vector<std::vector<Elem>> maps;
    maps.reserve(pairs.size());
    for (const auto& p : pairs) maps.push_back(reconstruct_translation_pair(g, p).images);
    std::sort(maps.begin(), maps.end());

    AutStructureReport rep;
    rep.aut_order = maps.size();
    rep.pairs_distinct = std::adjacent_find(maps.begin(), maps.end()) == maps.end();

    const ElementMap id = identity_map(m);
    for (const auto& p : pairs)
        if (p.phi == id) rep.kernel.push_back(p.a);
    std::sort(rep.kernel.begin(), rep.kernel.end());
    const std::vector<Elem> zs = z_star(pg);
    rep.z_star_order = zs.size();
    rep.kernel_equals_z_star = rep.kernel == zs;

    auto find_pair = [&](Elem a, const ElementMap& phi) {
        for (const auto& p : pairs)
            if (p.a == a && p.phi == phi) return true;
        return false;
    };
    rep.multiplication_rule_ok = true;
    for (const auto& p : pairs)
        for (const auto& q : pairs) {
            const ElementMap lhs = compose(reconstruct_translation_pair(g, p), reconstruct_translation_pair(g, q));
            const Elem a_new = g.product(p.phi.images[q.a], p.a);
            const ElementMap phi_new = compose(p.phi, q.phi);
            if (lhs != reconstruct_translation_pair(g, AutDecomposition{a_new, phi_new}) ||
                !find_pair(a_new, phi_new)) {
                rep.multiplication_rule_ok = false;
                break;
            }
        }

    const std::vector<Elem> idem = idempotents(pg);
    const std::vector<Elem> cen = g.center();
    rep.all_idempotents_central =
        std::includes(cen.begin(), cen.end(), idem.begin(), idem.end());

    const std::vector<ElementMap> base_autos = enumerate_automorphisms(g, budget);
    std::vector<ElementMap> commuting;
    for (const ElementMap& phi : base_autos)
        if (compose(phi, s.theta) == compose(s.theta, phi)) commuting.push_back(phi);
    rep.c_aut_theta_order = commuting.size();

    rep.action_well_defined = true;
    for (const ElementMap& phi : commuting)
        for (Elem a : zs)
            if (!std::binary_search(zs.begin(), zs.end(), phi.images[a])) {
                rep.action_well_defined = false;
                break;
            }

    if (rep.all_idempotents_central)
        rep.centralizer_formula_ok = rep.aut_order == rep.c_aut_theta_order * zs.size();

    rep.abelian_theta_identity = g.is_abelian() && s.theta == id;
    std::size_t z_bar = 0;
    for (Elem a = 0; a < m; ++a)
        if (g.power(a, n - 1) == g.identity()) ++z_bar;
    rep.z_bar_order = z_bar;
    if (rep.abelian_theta_identity) rep.abelian_formula_ok = rep.aut_order == base_autos.size() * z_bar;
    return rep;
}

// Right translation by a central idempotent u is an isomorphism from the
// b = identity derivation onto pg; returned as the (n+1)-fold tuple of R_u.
inline Homotopy central_idempotent_shift(const PolyadicGroup& pg, Elem u, const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const FiniteGroup& g = s.base;
    if (u >= g.order()) fail(Errc::index_out_of_range, "u = " + std::to_string(u));
    std::vector<Elem> diag(s.n, u);
    if (pg.eval_unchecked(diag.data()) != u)
        fail(Errc::not_central_idempotent, std::to_string(u) + " is not idempotent");
    const std::vector<Elem> cen = g.center();
    if (!std::binary_search(cen.begin(), cen.end(), u))
        fail(Errc::not_central_idempotent, std::to_string(u) + " is not central in the base");

    PolyadicGroup source = [&] {
        try {
            return derive(g, s.n, s.theta, g.identity(), budget);
        } catch (const Error& e) {
            fail(Errc::internal_inconsistency,
                 std::string("b = identity derivation should exist for a central idempotent: ") + e.what());
        }
    }();
    std::vector<ElementMap> maps(s.n + 1, g.translation(Side::right, u));
    HomotopyCheck c = check_homotopy(maps, source, pg);
    if (!c.holds || !c.isotopy) fail(Errc::internal_inconsistency, "central idempotent shift is not an isomorphism");
    return Homotopy{std::move(source), pg, std::move(maps), true};
}

namespace detail {

inline bool diagonal_hom_holds(const std::vector<Elem>& image, const PolyadicGroup& src, const PolyadicGroup& tgt) {
    const std::uint32_t n = src.arity();
    std::vector<Elem> t(n, 0), mapped(n);
    do {
        for (std::uint32_t i = 0; i < n; ++i) mapped[i] = image[t[i]];
        if (image[src.eval_unchecked(t.data())] != tgt.eval_unchecked(mapped.data())) return false;
    } while (src.next_tuple(t));
    return true;
}

inline void require_hom(const ElementMap& psi, const PolyadicGroup& src, const PolyadicGroup& tgt) {
    if (src.arity() != tgt.arity()) fail(Errc::arity_mismatch, "arities differ");
    if (psi.domain_order != src.order() || psi.codomain_order != tgt.order())
        fail(Errc::not_homomorphism, "map carriers do not match the groups");
    if (!diagonal_hom_holds(psi.images, src, tgt))
        fail(Errc::not_homomorphism, "defining identity fails");
}

} // namespace detail

/**
 * All maps psi with psi(f(x_1..x_n)) = h(psi(x_1)..psi(x_n)), bijective or
 * not. Raw |H|^|G| exhaustion at tiny source orders; otherwise a DFS that
 * assigns a generating set of the source retract first and propagates the
 * defining identity to force or refute further values.
 */
inline std::vector<ElementMap> enumerate_homomorphisms(const PolyadicGroup& src, const PolyadicGroup& tgt,
                                                       const Budget& budget = {}) {
    const std::uint32_t gn = src.order(), hn = tgt.order(), n = src.arity();
    if (src.arity() != tgt.arity()) fail(Errc::arity_mismatch, "arities differ");
    if (gn > budget.max_brute_order || hn > budget.max_brute_order)
        fail(Errc::order_too_large, "order exceeds brute-force cap " + std::to_string(budget.max_brute_order));

    std::vector<ElementMap> out;

    if (gn <= budget.hom_raw_order_cap) {
        const std::uint64_t total = checked_pow(hn, gn, UINT64_MAX / 2);
        std::vector<Elem> image(gn);
        for (std::uint64_t rank = 0; rank < total; ++rank) {
            std::uint64_t r = rank;
            for (std::uint32_t i = 0; i < gn; ++i) {
                image[i] = static_cast<Elem>(r % hn);
                r /= hn;
            }
            if (detail::diagonal_hom_holds(image, src, tgt)) out.emplace_back(gn, hn, image);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const FiniteGroup ret = retract(src, 0);
    std::vector<Elem> order_list = ret.generating_set();
    {
        std::vector<bool> used(gn, false);
        for (Elem x : order_list) used[x] = true;
        for (Elem x = 0; x < gn; ++x)
            if (!used[x]) order_list.push_back(x);
    }

    constexpr Elem unset = static_cast<Elem>(-1);
    std::vector<Elem> image(gn, unset);
    std::vector<Elem> trail;
    std::vector<Elem> t(n), mapped(n);

    auto propagate = [&]() -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            std::fill(t.begin(), t.end(), 0);
            do {
                bool all = true;
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (image[t[i]] == unset) {
                        all = false;
                        break;
                    }
                    mapped[i] = image[t[i]];
                }
                if (!all) continue;
                const Elem w = src.eval_unchecked(t.data());
                const Elem v = tgt.eval_unchecked(mapped.data());
                if (image[w] == unset) {
                    image[w] = v;
                    trail.push_back(w);
                    changed = true;
                } else if (image[w] != v) {
                    return false;
                }
            } while (src.next_tuple(t));
        }
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t k) -> void {
        while (k < order_list.size() && image[order_list[k]] != unset) ++k;
        if (k == order_list.size()) {
            out.emplace_back(gn, hn, image);
            return;
        }
        const Elem x = order_list[k];
        for (Elem v = 0; v < hn; ++v) {
            const std::size_t mark = trail.size();
            image[x] = v;
            trail.push_back(x);
            if (propagate()) self(self, k + 1);
            while (trail.size() > mark) {
                image[trail.back()] = unset;
                trail.pop_back();
            }
        }
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline AutDecomposition decompose_hom_dern(const ElementMap& psi, const PolyadicGroup& src,
                                           const PolyadicGroup& tgt) {
    if (!is_der_n_form(src) || !is_der_n_form(tgt))
        fail(Errc::not_der_n_form, "both sides must be plain product derivations");
    detail::require_hom(psi, src, tgt);
    const FiniteGroup& g = src.spec().base;
    const FiniteGroup& h = tgt.spec().base;
    const std::uint32_t n = src.arity();

    AutDecomposition dec;
    dec.a = psi.images[g.identity()];
    const Elem ainv = h.inverse_of(dec.a);
    std::vector<Elem> phi_im(g.order());
    for (Elem x = 0; x < g.order(); ++x) phi_im[x] = h.product(psi.images[x], ainv);
    dec.phi = ElementMap(g.order(), h.order(), std::move(phi_im));

    if (!g.is_homomorphism_image(dec.phi, h))
        fail(Errc::internal_inconsistency, "translated map is not an ordinary homomorphism");
    for (Elem x = 0; x < g.order(); ++x)
        if (h.product(dec.a, dec.phi.images[x]) != h.product(dec.phi.images[x], dec.a))
            fail(Errc::internal_inconsistency, "translation element is not central over the image");
    if (h.power(dec.a, n - 1) != h.identity())
        fail(Errc::internal_inconsistency, "translation element fails a^(n-1) = identity");
    return dec;
}

struct HomotopyDernDecomposition {
    std::vector<Elem> a_list;
    Elem a = 0;
    ElementMap phi;
};

// Three-factor form of a homotopy between plain product derivations:
// component i equals (a_1...a_{i-1})^-1 * psi(x) * (a_1...a_i) with
// psi = R_a o phi, and the last component is psi followed by R_{a_1...a_n}.
inline HomotopyDernDecomposition decompose_homotopy_dern(const Homotopy& T) {
    if (!is_der_n_form(T.source) || !is_der_n_form(T.target))
        fail(Errc::not_der_n_form, "both sides must be plain product derivations");
    HomotopyCheck c = check_homotopy(T.maps, T.source, T.target);
    if (!c.holds) fail(Errc::not_homotopy, "tuple fails the defining identity");

    const FiniteGroup& g = T.source.spec().base;
    const FiniteGroup& h = T.target.spec().base;
    const std::uint32_t n = T.source.arity();
    const Elem e = g.identity();

    HomotopyDernDecomposition dec;
    dec.a_list.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) dec.a_list[i] = T.maps[i].images[e];
    const std::vector<Elem> p = detail::prefix_products(h, dec.a_list);
    if (T.maps[n].images[e] != p[n])
        fail(Errc::internal_inconsistency, "last component disagrees with the product of the a_i");

    const Elem dinv = h.inverse_of(p[n]);
    std::vector<Elem> psi_im(g.order());
    for (Elem x = 0; x < g.order(); ++x) psi_im[x] = h.product(T.maps[n].images[x], dinv);
    ElementMap psi(g.order(), h.order(), std::move(psi_im));
    if (!detail::diagonal_hom_holds(psi.images, T.source, T.target))
        fail(Errc::internal_inconsistency, "translated last component is not a homomorphism");

    AutDecomposition core = decompose_hom_dern(psi, T.source, T.target);
    dec.a = core.a;
    dec.phi = core.phi;

    for (std::uint32_t i = 0; i < n; ++i) {
        const Elem left = h.inverse_of(p[i]);
        for (Elem x = 0; x < g.order(); ++x)
            if (T.maps[i].images[x] != h.product(h.product(left, psi.images[x]), p[i + 1]))
                fail(Errc::internal_inconsistency, "reconstruction differs in component " + std::to_string(i));
    }
    for (Elem x = 0; x < g.order(); ++x)
        if (T.maps[n].images[x] != h.product(psi.images[x], p[n]))
            fail(Errc::internal_inconsistency, "reconstruction differs in the last component");
    return dec;
}

struct GeneralHomDecomposition {
    Elem a = 0;
    ElementMap phi;
    bool target_der_n = false;
    bool target_abelian = false;
    bool power_condition = false;            // a^(n-1) = phi(b)
    bool conjugation_condition = false;      // phi o theta = I_{a^-1} o phi
    bool abelian_power_condition = false;    // h(a,...,a) = a * phi(b)
    bool abelian_commuting_condition = false; // phi o theta = eta o phi
};

namespace detail {

struct TranslatedHom {
    Elem a;
    ElementMap phi;
};

inline TranslatedHom split_by_identity(const ElementMap& psi, const FiniteGroup& g, const FiniteGroup& h) {
    TranslatedHom out{psi.images[g.identity()], {}};
    const Elem ainv = h.inverse_of(out.a);
    std::vector<Elem> im(g.order());
    for (Elem x = 0; x < g.order(); ++x) im[x] = h.product(psi.images[x], ainv);
    out.phi = ElementMap(g.order(), h.order(), std::move(im));
    return out;
}

} // namespace detail

/**
 * Splits any polyadic homomorphism between derived groups as psi = R_a o phi
 * with phi an ordinary homomorphism of the bases. a is forced: a = psi(e).
 * No side conditions are asserted in general; the result records which of
 * the special-case conditions happen to hold.
 */
inline GeneralHomDecomposition decompose_hom_general(const ElementMap& psi, const PolyadicGroup& src,
                                                     const PolyadicGroup& tgt) {
    if (!src.has_derived_spec() || !tgt.has_derived_spec())
        fail(Errc::requires_derived_form, "both sides need attached derivations");
    detail::require_hom(psi, src, tgt);
    const DerivedSpec& ss = src.spec();
    const DerivedSpec& ts = tgt.spec();
    const FiniteGroup& g = ss.base;
    const FiniteGroup& h = ts.base;
    const std::uint32_t n = src.arity();

    detail::TranslatedHom split = detail::split_by_identity(psi, g, h);
    if (!g.is_homomorphism_image(split.phi, h))
        fail(Errc::internal_inconsistency, "translated map is not an ordinary homomorphism");

    GeneralHomDecomposition dec;
    dec.a = split.a;
    dec.phi = split.phi;
    dec.target_der_n = is_der_n_form(tgt);
    dec.target_abelian = h.is_abelian();

    const Elem phib = dec.phi.images[ss.b];
    dec.power_condition = h.power(dec.a, n - 1) == phib;

    const Elem ainv = h.inverse_of(dec.a);
    dec.conjugation_condition = true;
    dec.abelian_commuting_condition = true;
    for (Elem x = 0; x < g.order(); ++x) {
        const Elem lhs = dec.phi.images[ss.theta.images[x]];
        if (lhs != h.product(h.product(dec.a, dec.phi.images[x]), ainv)) dec.conjugation_condition = false;
        if (lhs != ts.theta.images[dec.phi.images[x]]) dec.abelian_commuting_condition = false;
    }

    std::vector<Elem> diag(n, dec.a);
    dec.abelian_power_condition = tgt.eval_unchecked(diag.data()) == h.product(dec.a, phib);
    return dec;
}

inline AutDecomposition decompose_hom_to_dern(const ElementMap& psi, const PolyadicGroup& src,
                                              const PolyadicGroup& tgt) {
    if (!src.has_derived_spec()) fail(Errc::requires_derived_form, "source needs an attached derivation");
    if (!is_der_n_form(tgt)) fail(Errc::not_der_n_form, "target must be a plain product derivation");
    GeneralHomDecomposition dec = decompose_hom_general(psi, src, tgt);
    if (!dec.power_condition)
        fail(Errc::internal_inconsistency, "a^(n-1) = phi(b) fails for a valid homomorphism");
    if (!dec.conjugation_condition)
        fail(Errc::internal_inconsistency, "phi theta = I_{a^-1} phi fails for a valid homomorphism");
    return AutDecomposition{dec.a, dec.phi};
}

inline ElementMap build_hom_to_dern(Elem a, const ElementMap& phi, const PolyadicGroup& src,
                                    const PolyadicGroup& tgt) {
    if (!src.has_derived_spec()) fail(Errc::requires_derived_form, "source needs an attached derivation");
    if (!is_der_n_form(tgt)) fail(Errc::not_der_n_form, "target must be a plain product derivation");
    const DerivedSpec& ss = src.spec();
    const FiniteGroup& g = ss.base;
    const FiniteGroup& h = tgt.spec().base;
    const std::uint32_t n = src.arity();
    if (a >= h.order()) fail(Errc::index_out_of_range, "a = " + std::to_string(a));
    if (!g.is_homomorphism_image(phi, h)) fail(Errc::not_homomorphism, "phi is not an ordinary homomorphism");

    if (h.power(a, n - 1) != phi.images[ss.b])
        fail(Errc::conditions_fail, "a^(n-1) != phi(b)");
    const Elem ainv = h.inverse_of(a);
    for (Elem x = 0; x < g.order(); ++x)
        if (phi.images[ss.theta.images[x]] != h.product(h.product(a, phi.images[x]), ainv))
            fail(Errc::conditions_fail, "phi theta != I_{a^-1} phi at x = " + std::to_string(x));

    std::vector<Elem> im(g.order());
    for (Elem x = 0; x < g.order(); ++x) im[x] = h.product(phi.images[x], a);
    ElementMap psi(g.order(), h.order(), std::move(im));
    if (!detail::diagonal_hom_holds(psi.images, src, tgt))
        fail(Errc::internal_inconsistency, "built map fails the defining identity despite valid conditions");
    return psi;
}

inline AutDecomposition decompose_hom_abelian(const ElementMap& psi, const PolyadicGroup& src,
                                              const PolyadicGroup& tgt) {
    if (!src.has_derived_spec() || !tgt.has_derived_spec())
        fail(Errc::requires_derived_form, "both sides need attached derivations");
    if (!tgt.spec().base.is_abelian()) fail(Errc::target_not_abelian, "target base is not abelian");
    GeneralHomDecomposition dec = decompose_hom_general(psi, src, tgt);
    if (!dec.abelian_power_condition)
        fail(Errc::internal_inconsistency, "h(a,...,a) = a * phi(b) fails for a valid homomorphism");
    if (!dec.abelian_commuting_condition)
        fail(Errc::internal_inconsistency, "phi theta = eta phi fails for a valid homomorphism");
    return AutDecomposition{dec.a, dec.phi};
}

inline ElementMap build_hom_abelian(Elem a, const ElementMap& phi, const PolyadicGroup& src,
                                    const PolyadicGroup& tgt) {
    if (!src.has_derived_spec() || !tgt.has_derived_spec())
        fail(Errc::requires_derived_form, "both sides need attached derivations");
    const DerivedSpec& ss = src.spec();
    const DerivedSpec& ts = tgt.spec();
    const FiniteGroup& g = ss.base;
    const FiniteGroup& h = ts.base;
    if (!h.is_abelian()) fail(Errc::target_not_abelian, "target base is not abelian");
    const std::uint32_t n = src.arity();
    if (a >= h.order()) fail(Errc::index_out_of_range, "a = " + std::to_string(a));
    if (!g.is_homomorphism_image(phi, h)) fail(Errc::not_homomorphism, "phi is not an ordinary homomorphism");

    std::vector<Elem> diag(n, a);
    if (tgt.eval_unchecked(diag.data()) != h.product(a, phi.images[ss.b]))
        fail(Errc::conditions_fail, "h(a,...,a) != a * phi(b)");
    for (Elem x = 0; x < g.order(); ++x)
        if (phi.images[ss.theta.images[x]] != ts.theta.images[phi.images[x]])
            fail(Errc::conditions_fail, "phi theta != eta phi at x = " + std::to_string(x));

    std::vector<Elem> im(g.order());
    for (Elem x = 0; x < g.order(); ++x) im[x] = h.product(phi.images[x], a);
    ElementMap psi(g.order(), h.order(), std::move(im));
    if (!detail::diagonal_hom_holds(psi.images, src, tgt))
        fail(Errc::internal_inconsistency, "built map fails the defining identity despite valid conditions");
    return psi;
}

} // namespace polyadic
