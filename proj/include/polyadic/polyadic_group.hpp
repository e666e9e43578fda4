#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "polyadic/core.hpp"
#include "polyadic/element_map.hpp"
#include "polyadic/finite_group.hpp"
#include "polyadic/parallel.hpp"

namespace polyadic {

/**
 * Recipe for an n-ary operation on top of a binary group:
 *
 *   f(x_1,...,x_n) = x_1 * theta(x_2) * theta^2(x_3) * ... * theta^(n-1)(x_n) * b
 *
 * Valid only when theta is an automorphism of the base, theta fixes b, and
 * theta^(n-1) equals conjugation x -> b*x*b^-1. Every finite n-ary group
 * arises this way from any of its retracts, which is what hg_decompose
 * recovers.
 */
struct DerivedSpec {
    FiniteGroup base;
    std::uint32_t n = 0;
    ElementMap theta;
    Elem b = 0;
    std::vector<ElementMap> theta_powers; // theta_powers[i] = theta^i, i in [0, n-1]
};

inline DerivedSpec make_derived_spec(const FiniteGroup& base, std::uint32_t n, const ElementMap& theta, Elem b) {
    if (n < 2) fail(Errc::arity_mismatch, "arity must be at least 2, got " + std::to_string(n));
    if (b >= base.order()) fail(Errc::index_out_of_range, "b = " + std::to_string(b));
    if (theta.domain_order != base.order() || theta.codomain_order != base.order() || !base.is_automorphism(theta))
        fail(Errc::theta_not_automorphism, "theta is not an automorphism of the base group");
    if (theta(b) != b)
        fail(Errc::theta_does_not_fix_b,
             "theta(" + std::to_string(b) + ") = " + std::to_string(theta(b)));

    DerivedSpec spec{base, n, theta, b, {}};
    spec.theta_powers.reserve(n);
    spec.theta_powers.push_back(identity_map(base.order()));
    for (std::uint32_t i = 1; i < n; ++i) spec.theta_powers.push_back(compose(theta, spec.theta_powers.back()));

    const ElementMap& last = spec.theta_powers[n - 1];
    const Elem binv = base.inverse_of(b);
    for (Elem x = 0; x < base.order(); ++x)
        if (last(x) != base.product(base.product(b, x), binv))
            fail(Errc::power_condition_fails, "theta^" + std::to_string(n - 1) + "(" + std::to_string(x) +
                                                  ") = " + std::to_string(last(x)) + ", conjugate is " +
                                                  std::to_string(base.product(base.product(b, x), binv)));
    return spec;
}

enum class ValidationMode { exhaustive, via_derivation };

class PolyadicGroup {
public:
    std::uint32_t order() const { return order_; }
    std::uint32_t arity() const { return n_; }
    bool has_derived_spec() const { return spec_.has_value(); }
    const DerivedSpec& spec() const {
        if (!spec_) fail(Errc::requires_derived_form, "no derivation attached to this group");
        return *spec_;
    }
    ValidationMode validation_mode() const { return mode_; }
    const std::vector<std::string>& names() const { return names_; }
    bool has_dense_table() const { return !table_.empty(); }
    const std::vector<Elem>& dense_table() const { return table_; }

    Elem evaluate(std::span<const Elem> args) const {
        if (args.size() != n_)
            fail(Errc::arity_mismatch,
                 std::to_string(args.size()) + " arguments for arity " + std::to_string(n_));
        for (Elem a : args)
            if (a >= order_) fail(Errc::index_out_of_range, "argument " + std::to_string(a));
        return eval_unchecked(args.data());
    }

    Elem evaluate(std::initializer_list<Elem> args) const {
        return evaluate(std::span<const Elem>(args.begin(), args.size()));
    }

    // Hot-loop entry point: callers guarantee arity and range.
    Elem eval_unchecked(const Elem* args) const {
        if (!table_.empty()) {
            std::size_t idx = args[0];
            for (std::uint32_t i = 1; i < n_; ++i) idx = idx * order_ + args[i];
            return table_[idx];
        }
        const DerivedSpec& s = *spec_;
        Elem acc = args[0];
        for (std::uint32_t i = 1; i < n_; ++i) acc = s.base.product(acc, s.theta_powers[i].images[args[i]]);
        return s.base.product(acc, s.b);
    }

    bool same_operation(const PolyadicGroup& other) const {
        if (order_ != other.order_ || n_ != other.n_) return false;
        std::vector<Elem> t(n_, 0);
        do {
            if (eval_unchecked(t.data()) != other.eval_unchecked(t.data())) return false;
        } while (next_tuple(t));
        return true;
    }

    bool next_tuple(std::vector<Elem>& t) const {
        for (std::size_t i = t.size(); i-- > 0;) {
            if (++t[i] < order_) return true;
            t[i] = 0;
        }
        return false;
    }

    friend PolyadicGroup derive(const DerivedSpec& spec, const Budget& budget);
    friend PolyadicGroup validate_polyadic_group(std::uint32_t order, std::uint32_t n,
                                                 const std::vector<Elem>& flat_table,
                                                 const std::vector<std::string>& names, const Budget& budget);

private:
    PolyadicGroup() = default;

    std::uint32_t order_ = 0;
    std::uint32_t n_ = 0;
    std::optional<DerivedSpec> spec_;
    std::vector<Elem> table_; // row-major, x_1 slowest; empty when evaluated via spec
    std::vector<std::string> names_;
    ValidationMode mode_ = ValidationMode::exhaustive;
};

// A solvable-but-not-necessarily-associative n-ary table. Validation only;
// none of the group-theoretic operations apply.
struct PolyadicQuasigroup {
    std::uint32_t order = 0;
    std::uint32_t n = 0;
    std::vector<Elem> table;
    std::vector<std::string> names;

    Elem evaluate(std::span<const Elem> args) const {
        if (args.size() != n) fail(Errc::arity_mismatch, "argument count");
        std::size_t idx = 0;
        for (Elem a : args) {
            if (a >= order) fail(Errc::index_out_of_range, "argument " + std::to_string(a));
            idx = idx * order + a;
        }
        return table[idx];
    }
};

namespace detail {

// Solvability: fixing all but one position, the section must be a bijection.
inline void check_sections(std::uint32_t order, std::uint32_t n,
                           const std::vector<Elem>& flat, bool associative_claim) {
    (void)associative_claim;
    std::vector<Elem> args(n, 0);
    std::vector<bool> seen(order);
    for (std::uint32_t pos = 0; pos < n; ++pos) {
        std::vector<Elem> rest(n - 1, 0);
        bool more = true;
        while (more) {
            std::fill(seen.begin(), seen.end(), false);
            for (Elem v = 0; v < order; ++v) {
                std::size_t k = 0;
                for (std::uint32_t i = 0; i < n; ++i) args[i] = i == pos ? v : rest[k++];
                std::size_t idx = args[0];
                for (std::uint32_t i = 1; i < n; ++i) idx = idx * order + args[i];
                const Elem out = flat[idx];
                if (seen[out]) {
                    std::string w = "position " + std::to_string(pos) + ", fixed (";
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        w += (i ? "," : "") + std::to_string(rest[i]);
                    fail(Errc::not_solvable, w + "): value " + std::to_string(out) + " repeats");
                }
                seen[out] = true;
            }
            more = false;
            for (std::size_t i = rest.size(); i-- > 0;) {
                if (++rest[i] < order) {
                    more = true;
                    break;
                }
                rest[i] = 0;
            }
            if (rest.empty()) break;
        }
    }
}

} // namespace detail

inline PolyadicGroup derive(const DerivedSpec& spec, const Budget& budget = {}) {
    PolyadicGroup pg;
    pg.order_ = spec.base.order();
    pg.n_ = spec.n;
    pg.spec_ = spec;
    pg.names_ = spec.base.names();
    pg.mode_ = ValidationMode::via_derivation;

    const std::uint64_t entries = checked_pow(pg.order_, pg.n_, budget.dense_table_cap);
    if (entries <= budget.dense_table_cap) {
        pg.table_.resize(entries);
        std::vector<Elem> t(pg.n_, 0);
        std::size_t idx = 0;
        do {
            Elem acc = t[0];
            for (std::uint32_t i = 1; i < pg.n_; ++i)
                acc = spec.base.product(acc, spec.theta_powers[i].images[t[i]]);
            pg.table_[idx++] = spec.base.product(acc, spec.b);
        } while (pg.next_tuple(t));
    }
    return pg;
}

inline PolyadicGroup derive(const FiniteGroup& base, std::uint32_t n, const ElementMap& theta, Elem b,
                            const Budget& budget = {}) {
    return derive(make_derived_spec(base, n, theta, b), budget);
}

inline PolyadicGroup validate_polyadic_group(std::uint32_t order, std::uint32_t n,
                                             const std::vector<Elem>& flat_table,
                                             const std::vector<std::string>& names = {},
                                             const Budget& budget = {}) {
    if (n < 2) fail(Errc::arity_mismatch, "arity must be at least 2, got " + std::to_string(n));
    if (order == 0) fail(Errc::index_out_of_range, "empty carrier");
    const std::uint64_t entries = checked_pow(order, n, budget.dense_table_cap);
    if (entries > budget.dense_table_cap)
        fail(Errc::table_too_large, "order^n = " + std::to_string(order) + "^" + std::to_string(n) +
                                        " exceeds the dense-table cap");
    if (flat_table.size() != entries)
        fail(Errc::index_out_of_range, "table has " + std::to_string(flat_table.size()) + " entries, expected " +
                                           std::to_string(entries));
    for (Elem v : flat_table)
        if (v >= order) fail(Errc::index_out_of_range, "table entry " + std::to_string(v));

    detail::check_sections(order, n, flat_table, true);

    const std::uint64_t assoc_tuples = checked_pow(order, 2 * n - 1, budget.assoc_check_cap);
    if (assoc_tuples > budget.assoc_check_cap)
        fail(Errc::budget_exceeded,
             "associativity over order^(2n-1) tuples exceeds the budget; build via derive() instead");

    PolyadicGroup pg;
    pg.order_ = order;
    pg.n_ = n;
    pg.table_ = flat_table;
    pg.names_ = names;
    if (pg.names_.empty()) {
        pg.names_.resize(order);
        for (std::uint32_t i = 0; i < order; ++i) pg.names_[i] = std::to_string(i);
    }
    pg.mode_ = ValidationMode::exhaustive;

    // f(f(x_1..x_n), x_{n+1}..x_{2n-1}) must agree with the inner block
    // placed at every other offset.
    std::vector<Elem> t(2 * n - 1, 0);
    std::vector<Elem> inner(n), outer(n);
    do {
        Elem ref = 0;
        for (std::uint32_t off = 0; off < n; ++off) {
            for (std::uint32_t i = 0; i < n; ++i) inner[i] = t[off + i];
            const Elem mid = pg.eval_unchecked(inner.data());
            std::size_t k = 0;
            for (std::uint32_t i = 0; i < off; ++i) outer[k++] = t[i];
            outer[k++] = mid;
            for (std::uint32_t i = off + n; i < 2 * n - 1; ++i) outer[k++] = t[i];
            const Elem val = pg.eval_unchecked(outer.data());
            if (off == 0)
                ref = val;
            else if (val != ref) {
                std::string w = "placements 0 and " + std::to_string(off) + " differ on (";
                for (std::size_t i = 0; i < t.size(); ++i) w += (i ? "," : "") + std::to_string(t[i]);
                fail(Errc::not_associative, w + ")");
            }
        }
    } while (pg.next_tuple(t));

    return pg;
}

inline PolyadicQuasigroup derive_linear_quasigroup(const FiniteGroup& base, const std::vector<ElementMap>& autos,
                                                   Elem b, const Budget& budget = {}) {
    const std::uint32_t n = static_cast<std::uint32_t>(autos.size());
    if (n < 2) fail(Errc::arity_mismatch, "need at least 2 maps, got " + std::to_string(n));
    if (b >= base.order()) fail(Errc::index_out_of_range, "b = " + std::to_string(b));
    for (std::size_t i = 0; i < autos.size(); ++i)
        if (!base.is_automorphism(autos[i]))
            fail(Errc::theta_not_automorphism, "map " + std::to_string(i) + " is not an automorphism of the base");

    const std::uint64_t entries = checked_pow(base.order(), n, budget.dense_table_cap);
    if (entries > budget.dense_table_cap) fail(Errc::table_too_large, "order^n exceeds the dense-table cap");

    PolyadicQuasigroup q;
    q.order = base.order();
    q.n = n;
    q.names = base.names();
    q.table.resize(entries);
    std::vector<Elem> t(n, 0);
    std::size_t idx = 0;
    for (;;) {
        Elem acc = autos[0].images[t[0]];
        for (std::uint32_t i = 1; i < n; ++i) acc = base.product(acc, autos[i].images[t[i]]);
        q.table[idx++] = base.product(acc, b);
        bool more = false;
        for (std::size_t i = t.size(); i-- > 0;) {
            if (++t[i] < q.order) {
                more = true;
                break;
            }
            t[i] = 0;
        }
        if (!more) break;
    }
    detail::check_sections(q.order, n, q.table, false);
    return q;
}

// Unique y with f(x,...,x,y) = x.
inline Elem skew(const PolyadicGroup& pg, Elem x) {
    if (x >= pg.order()) fail(Errc::index_out_of_range, "element " + std::to_string(x));
    std::vector<Elem> args(pg.arity(), x);
    std::optional<Elem> found;
    for (Elem y = 0; y < pg.order(); ++y) {
        args[pg.arity() - 1] = y;
        if (pg.eval_unchecked(args.data()) == x) {
            if (found) fail(Errc::internal_inconsistency, "skew of " + std::to_string(x) + " is not unique");
            found = y;
        }
    }
    if (!found) fail(Errc::internal_inconsistency, "no skew element for " + std::to_string(x));
    return *found;
}

struct DornteReport {
    bool pass = false;
    std::uint64_t identities_checked = 0;
    std::string witness; // empty when pass
};

// The telescoping identities every n-ary group satisfies: inserting the skew
// element of x into a block of x's acts as a two-sided identity, and the
// x-block with one skew inserted reproduces x.
inline DornteReport check_dornte(const PolyadicGroup& pg) {
    const std::uint32_t n = pg.arity();
    DornteReport rep;
    std::vector<Elem> args(n);
    for (Elem x = 0; x < pg.order(); ++x) {
        const Elem xs = skew(pg, x);
        for (std::uint32_t k = 1; k <= n; ++k) {
            std::fill(args.begin(), args.end(), x);
            args[k - 1] = xs;
            ++rep.identities_checked;
            if (pg.eval_unchecked(args.data()) != x) {
                rep.witness = "block identity fails at x=" + std::to_string(x) + ", k=" + std::to_string(k);
                return rep;
            }
        }
        for (Elem y = 0; y < pg.order(); ++y) {
            for (std::uint32_t i = 2; i <= n; ++i) {
                std::fill(args.begin(), args.end(), x);
                args[i - 2] = xs;
                args[n - 1] = y;
                ++rep.identities_checked;
                if (pg.eval_unchecked(args.data()) != y) {
                    rep.witness = "left identity fails at x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                                  ", i=" + std::to_string(i);
                    return rep;
                }
            }
            for (std::uint32_t j = 2; j <= n; ++j) {
                std::fill(args.begin(), args.end(), x);
                args[0] = y;
                args[n - j + 1] = xs; // 1-based position n-j+2: after y and n-j copies of x
                ++rep.identities_checked;
                if (pg.eval_unchecked(args.data()) != y) {
                    rep.witness = "right identity fails at x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                                  ", j=" + std::to_string(j);
                    return rep;
                }
            }
        }
    }
    rep.pass = true;
    return rep;
}

// Binary group on the same carrier: x*y = f(x, a,...,a, y) with n-2 copies
// of a. Its identity is skew(a); the inverse is checked against the
// closed-form expression when n >= 3.
inline FiniteGroup retract(const PolyadicGroup& pg, Elem a) {
    if (a >= pg.order()) fail(Errc::index_out_of_range, "base point " + std::to_string(a));
    const std::uint32_t n = pg.arity(), m = pg.order();
    std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
    std::vector<Elem> args(n, a);
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y) {
            args[0] = x;
            args[n - 1] = y;
            t[x][y] = pg.eval_unchecked(args.data());
        }
    FiniteGroup g = [&] {
        try {
            return validate_group(t, pg.names());
        } catch (const Error& e) {
            fail(Errc::internal_inconsistency, std::string("retract is not a group: ") + e.what());
        }
    }();

    const Elem abar = skew(pg, a);
    if (g.identity() != abar)
        fail(Errc::internal_inconsistency, "retract identity " + std::to_string(g.identity()) +
                                               " differs from the skew element " + std::to_string(abar));
    if (n >= 3) {
        std::vector<Elem> inv_args(n);
        for (Elem x = 0; x < m; ++x) {
            inv_args[0] = abar;
            for (std::uint32_t i = 1; i + 2 < n; ++i) inv_args[i] = x;
            inv_args[n - 2] = skew(pg, x);
            inv_args[n - 1] = abar;
            if (pg.eval_unchecked(inv_args.data()) != g.inverse_of(x))
                fail(Errc::internal_inconsistency, "closed-form inverse of " + std::to_string(x) + " is wrong");
        }
    }
    return g;
}

/**
 * Recovers a DerivedSpec over the retract at base point a:
 *   theta(x) = f(skew(a), x, a,...,a)   (n-2 copies of a)
 *   b        = f(skew(a),...,skew(a))   (n copies)
 * and verifies the spec's side conditions plus an exact round trip
 * derive(spec) == pg.
 */
inline DerivedSpec hg_decompose(const PolyadicGroup& pg, Elem a = 0, const Budget& budget = {}) {
    const std::uint32_t n = pg.arity(), m = pg.order();
    FiniteGroup base = retract(pg, a);
    const Elem abar = skew(pg, a);

    std::vector<Elem> args(n, a);
    args[0] = abar;
    std::vector<Elem> theta_im(m);
    for (Elem x = 0; x < m; ++x) {
        args[1] = x;
        theta_im[x] = pg.eval_unchecked(args.data());
    }
    ElementMap theta(m, m, std::move(theta_im));

    std::fill(args.begin(), args.end(), abar);
    const Elem b = pg.eval_unchecked(args.data());

    DerivedSpec spec = [&] {
        try {
            return make_derived_spec(base, n, theta, b);
        } catch (const Error& e) {
            fail(Errc::internal_inconsistency, std::string("recovered derivation is invalid: ") + e.what());
        }
    }();

    PolyadicGroup rebuilt = derive(spec, budget);
    if (!rebuilt.same_operation(pg))
        fail(Errc::internal_inconsistency, "derived operation does not reproduce the input at base point " +
                                               std::to_string(a));
    return spec;
}

// a is idempotent iff f(a,...,a) = a iff skew(a) = a; both characterizations
// are computed and cross-checked.
inline std::vector<Elem> idempotents(const PolyadicGroup& pg) {
    std::vector<Elem> by_eval, by_skew;
    std::vector<Elem> args(pg.arity());
    for (Elem a = 0; a < pg.order(); ++a) {
        std::fill(args.begin(), args.end(), a);
        if (pg.eval_unchecked(args.data()) == a) by_eval.push_back(a);
        if (skew(pg, a) == a) by_skew.push_back(a);
    }
    if (by_eval != by_skew) fail(Errc::internal_inconsistency, "idempotent characterizations disagree");
    return by_eval;
}

// Central idempotents, i.e. idempotents lying in the center of the base
// group. Only defined for derivations with b = identity.
inline std::vector<Elem> z_star(const PolyadicGroup& pg) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "z_star needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    if (s.b != s.base.identity())
        fail(Errc::requires_derived_form, "z_star is defined for derivations with b = identity, got b = " +
                                              std::to_string(s.b));
    const std::vector<Elem> idem = idempotents(pg);
    const std::vector<Elem> cen = s.base.center();
    std::vector<Elem> out;
    std::set_intersection(idem.begin(), idem.end(), cen.begin(), cen.end(), std::back_inserter(out));
    return out;
}

struct SemiabelianReport {
    bool semiabelian = false;
    std::optional<Elem> witness_a;          // some a with f(x, a.., y) symmetric in x,y
    std::uint64_t identity_checks = 0;      // end-swap identity instances verified when semiabelian
};

// Semiabelian: some retract is abelian; equivalently f is invariant under
// swapping its first and last arguments. The equivalence is re-verified
// whenever the search succeeds.
inline SemiabelianReport check_semiabelian(const PolyadicGroup& pg) {
    const std::uint32_t n = pg.arity(), m = pg.order();
    SemiabelianReport rep;
    std::vector<Elem> args(n);
    for (Elem a = 0; a < m && !rep.witness_a; ++a) {
        bool ok = true;
        for (Elem x = 0; x < m && ok; ++x)
            for (Elem y = 0; y < m && ok; ++y) {
                std::fill(args.begin(), args.end(), a);
                args[0] = x;
                args[n - 1] = y;
                const Elem xy = pg.eval_unchecked(args.data());
                args[0] = y;
                args[n - 1] = x;
                ok = xy == pg.eval_unchecked(args.data());
            }
        if (ok) rep.witness_a = a;
    }
    rep.semiabelian = rep.witness_a.has_value();
    if (rep.semiabelian) {
        std::vector<Elem> t(n, 0), swapped(n);
        do {
            swapped.assign(t.begin(), t.end());
            std::swap(swapped[0], swapped[n - 1]);
            ++rep.identity_checks;
            if (pg.eval_unchecked(t.data()) != pg.eval_unchecked(swapped.data()))
                fail(Errc::internal_inconsistency, "end-swap identity fails although a symmetric retract exists");
        } while (pg.next_tuple(t));
    }
    return rep;
}

inline bool is_semiabelian(const PolyadicGroup& pg) { return check_semiabelian(pg).semiabelian; }

struct SampledCheckReport {
    bool holds = false;
    bool exhaustive = false;
    std::uint64_t cases_checked = 0;
    std::uint64_t seed = 0;
    std::vector<Elem> witness; // flattened offending arguments; empty when holds
};

namespace detail {

inline void unrank_tuple(std::uint64_t rank, std::uint32_t order, std::vector<Elem>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Elem>(rank % order);
        rank /= order;
    }
}

} // namespace detail

/**
 * Mediality: for every n x n argument matrix, applying f to the rows and
 * then to the row results agrees with applying it to the columns first.
 * Exhaustive while order^(n*n) fits the budget, otherwise seeded sampling.
 */
inline SampledCheckReport medial_check(const PolyadicGroup& pg, const Budget& budget = {}) {
    const std::uint32_t n = pg.arity(), m = pg.order();
    const std::uint64_t total = checked_pow(m, n * n, budget.exhaustive_cap);
    SampledCheckReport rep;
    rep.seed = budget.seed;

    std::vector<Elem> cell(static_cast<std::size_t>(n) * n);
    auto matrix_fails = [&](const std::vector<Elem>& mat) -> bool {
        std::vector<Elem> rows(n), cols(n), line(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) line[j] = mat[i * n + j];
            rows[i] = pg.eval_unchecked(line.data());
        }
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t i = 0; i < n; ++i) line[i] = mat[i * n + j];
            cols[j] = pg.eval_unchecked(line.data());
        }
        return pg.eval_unchecked(rows.data()) != pg.eval_unchecked(cols.data());
    };

    if (total <= budget.exhaustive_cap) {
        rep.exhaustive = true;
        rep.cases_checked = total;
        struct Hit { std::uint64_t rank; std::vector<Elem> mat; };
        auto hits = partitioned_collect<Hit>(total, budget.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<Hit> local;
            std::vector<Elem> mat(static_cast<std::size_t>(n) * n);
            for (std::uint64_t r = lo; r < hi && local.empty(); ++r) {
                detail::unrank_tuple(r, m, mat);
                if (matrix_fails(mat)) local.push_back({r, mat});
            }
            return local;
        });
        if (hits.empty()) {
            rep.holds = true;
        } else {
            auto best = std::min_element(hits.begin(), hits.end(),
                                         [](const Hit& a, const Hit& b) { return a.rank < b.rank; });
            rep.witness = best->mat;
        }
        return rep;
    }

    // Sampling stays sequential so the outcome is identical for any --workers.
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, m - 1);
    rep.cases_checked = budget.sample_count;
    for (std::uint64_t s = 0; s < budget.sample_count; ++s) {
        for (auto& c : cell) c = dist(rng);
        if (matrix_fails(cell)) {
            rep.witness = cell;
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

inline bool is_medial(const PolyadicGroup& pg, const Budget& budget = {}) {
    return medial_check(pg, budget).holds;
}

// skew(f(x_1..x_n)) = f(skew(x_1)..skew(x_n)); meaningful for medial groups.
inline SampledCheckReport check_skew_distribution(const PolyadicGroup& pg, const Budget& budget = {}) {
    const std::uint32_t n = pg.arity(), m = pg.order();
    std::vector<Elem> skew_of(m);
    for (Elem x = 0; x < m; ++x) skew_of[x] = skew(pg, x);

    const std::uint64_t total = checked_pow(m, n, budget.exhaustive_cap);
    SampledCheckReport rep;
    rep.seed = budget.seed;

    auto tuple_fails = [&](const std::vector<Elem>& t) {
        std::vector<Elem> mapped(n);
        for (std::uint32_t i = 0; i < n; ++i) mapped[i] = skew_of[t[i]];
        return skew_of[pg.eval_unchecked(t.data())] != pg.eval_unchecked(mapped.data());
    };

    if (total <= budget.exhaustive_cap) {
        rep.exhaustive = true;
        rep.cases_checked = total;
        struct Hit { std::uint64_t rank; std::vector<Elem> t; };
        auto hits = partitioned_collect<Hit>(total, budget.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<Hit> local;
            std::vector<Elem> t(n);
            for (std::uint64_t r = lo; r < hi && local.empty(); ++r) {
                detail::unrank_tuple(r, m, t);
                if (tuple_fails(t)) local.push_back({r, t});
            }
            return local;
        });
        if (hits.empty()) {
            rep.holds = true;
        } else {
            auto best = std::min_element(hits.begin(), hits.end(),
                                         [](const Hit& a, const Hit& b) { return a.rank < b.rank; });
            rep.witness = best->t;
        }
        return rep;
    }

    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, m - 1);
    std::vector<Elem> t(n);
    rep.cases_checked = budget.sample_count;
    for (std::uint64_t s = 0; s < budget.sample_count; ++s) {
        for (auto& c : t) c = dist(rng);
        if (tuple_fails(t)) {
            rep.witness = t;
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

// All (theta, b) pairs that derive an n-ary group from the given base.
inline std::vector<DerivedSpec> enumerate_derived_specs(const FiniteGroup& base, std::uint32_t n,
                                                        const Budget& budget = {}) {
    std::vector<DerivedSpec> out;
    for (const ElementMap& theta : enumerate_automorphisms(base, budget)) {
        ElementMap power = map_power(theta, n - 1);
        for (Elem b = 0; b < base.order(); ++b) {
            if (theta(b) != b) continue;
            const Elem binv = base.inverse_of(b);
            bool ok = true;
            for (Elem x = 0; x < base.order() && ok; ++x)
                ok = power(x) == base.product(base.product(b, x), binv);
            if (ok) out.push_back(make_derived_spec(base, n, theta, b));
        }
    }
    return out;
}

} // namespace polyadic
