#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "polyadic/core.hpp"
#include "polyadic/field_matrix.hpp"
#include "polyadic/finite_group.hpp"
#include "polyadic/parallel.hpp"
#include "polyadic/polyadic_group.hpp"

namespace polyadic {

/// Matrix-valued map on the carrier with Lambda(f(x_1..x_n)) = product of
/// the images; one invertible matrix per element.
struct Representation {
    FieldSpec field;
    std::uint32_t degree = 0;
    std::vector<FpMatrix> images;
};

inline std::vector<std::uint32_t> representation_key(const Representation& rep) {
    std::vector<std::uint32_t> key;
    for (const FpMatrix& m : rep.images) key.insert(key.end(), m.entries.begin(), m.entries.end());
    return key;
}

/**
 * The two readings of the matrix power condition. The corrected form
 * A^{n-1} = Gamma(b) is what the splitting of a genuine representation
 * forces; the literal form A^{n-1} = Gamma(b)*A is kept as a comparison
 * switch and is demonstrably too strict.
 */
enum class PowerCondition {
    gamma_b,
    lambda_b,
};

inline bool is_representation(const std::vector<FpMatrix>& images, const PolyadicGroup& pg,
                              const FieldSpec& field) {
    if (images.size() != pg.order())
        fail(Errc::incompatible, "need one image per carrier element");
    if (images.empty() || images[0].dim == 0) fail(Errc::incompatible, "empty representation");
    const std::uint32_t degree = images[0].dim;
    for (std::size_t x = 0; x < images.size(); ++x) {
        if (images[x].dim != degree) fail(Errc::incompatible, "mixed matrix dimensions");
        if (!try_inverse(images[x], field))
            fail(Errc::singular_image, "image of element " + std::to_string(x) + " is singular");
    }
    const std::uint32_t n = pg.arity();
    std::vector<Elem> t(n, 0);
    do {
        FpMatrix prod = images[t[0]];
        for (std::uint32_t i = 1; i < n; ++i) prod = mat_mul(prod, images[t[i]], field);
        if (images[pg.eval_unchecked(t.data())] != prod) return false;
    } while (pg.next_tuple(t));
    return true;
}

inline bool is_binary_representation(const std::vector<FpMatrix>& gamma, const FiniteGroup& g,
                                     const FieldSpec& field) {
    if (gamma.size() != g.order() || gamma.empty() || gamma[0].dim == 0) return false;
    const std::uint32_t degree = gamma[0].dim;
    for (const FpMatrix& m : gamma)
        if (m.dim != degree || !try_inverse(m, field)) return false;
    if (gamma[g.identity()] != identity_matrix(degree, field)) return false;
    for (Elem x = 0; x < g.order(); ++x)
        for (Elem y = 0; y < g.order(); ++y)
            if (gamma[g.product(x, y)] != mat_mul(gamma[x], gamma[y], field)) return false;
    return true;
}

/**
 * Theorem-style construction Lambda = Gamma * A from an ordinary matrix
 * representation of the base and an intertwining matrix A with
 * Gamma(theta(x)) = A Gamma(x) A^-1 and the selected power condition.
 * The result is re-validated; under the literal power condition that final
 * gate can reject, which is exactly the documented discrepancy.
 */
inline Representation build_representation(const std::vector<FpMatrix>& gamma, const FpMatrix& A,
                                           const PolyadicGroup& pg, const FieldSpec& field,
                                           PowerCondition cond = PowerCondition::gamma_b) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const DerivedSpec& s = pg.spec();
    const FiniteGroup& g = s.base;
    if (!is_binary_representation(gamma, g, field))
        fail(Errc::not_binary_representation, "gamma is not a matrix homomorphism of the base");
    const std::uint32_t degree = gamma[0].dim;
    if (A.dim != degree) fail(Errc::incompatible, "A dimension differs from gamma degree");
    auto a_inv = try_inverse(A, field);
    if (!a_inv) fail(Errc::singular_image, "A is singular");

    for (Elem x = 0; x < g.order(); ++x)
        if (gamma[s.theta.images[x]] != mat_mul(mat_mul(A, gamma[x], field), *a_inv, field))
            fail(Errc::conditions_fail,
                 "conjugation condition gamma(theta(x)) = A gamma(x) A^-1 fails at x = " + std::to_string(x));

    const FpMatrix a_pow = mat_pow(A, s.n - 1, field);
    if (cond == PowerCondition::gamma_b) {
        if (a_pow != gamma[s.b]) fail(Errc::conditions_fail, "power condition A^(n-1) = gamma(b) fails");
    } else {
        if (a_pow != mat_mul(gamma[s.b], A, field))
            fail(Errc::conditions_fail, "literal power condition A^(n-1) = gamma(b) A fails");
    }

    Representation rep;
    rep.field = field;
    rep.degree = degree;
    rep.images.reserve(g.order());
    for (Elem x = 0; x < g.order(); ++x) rep.images.push_back(mat_mul(gamma[x], A, field));
    if (!is_representation(rep.images, pg, field))
        fail(Errc::not_representation,
             "conditions passed but the built map fails the defining identity (literal-condition artifact)");
    return rep;
}

struct RepresentationSplit {
    std::vector<FpMatrix> gamma;
    FpMatrix A;
};

// A = Lambda(identity of base), Gamma = Lambda * A^-1; both parts are
// forced, and for a valid representation the corrected conditions must hold.
inline RepresentationSplit decompose_representation(const Representation& rep, const PolyadicGroup& pg) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    if (!is_representation(rep.images, pg, rep.field))
        fail(Errc::not_representation, "input fails the defining identity");
    const DerivedSpec& s = pg.spec();
    const FiniteGroup& g = s.base;

    RepresentationSplit out;
    out.A = rep.images[g.identity()];
    const FpMatrix a_inv = mat_inverse(out.A, rep.field);
    out.gamma.reserve(g.order());
    for (Elem x = 0; x < g.order(); ++x) out.gamma.push_back(mat_mul(rep.images[x], a_inv, rep.field));

    if (!is_binary_representation(out.gamma, g, rep.field))
        fail(Errc::internal_inconsistency, "translated images are not a base representation");
    if (mat_pow(out.A, s.n - 1, rep.field) != out.gamma[s.b])
        fail(Errc::internal_inconsistency, "A^(n-1) = gamma(b) fails for a valid representation");
    for (Elem x = 0; x < g.order(); ++x)
        if (out.gamma[s.theta.images[x]] !=
            mat_mul(mat_mul(out.A, out.gamma[x], rep.field), a_inv, rep.field))
            fail(Errc::internal_inconsistency, "conjugation condition fails for a valid representation");
    for (Elem x = 0; x < g.order(); ++x)
        if (mat_mul(out.gamma[x], out.A, rep.field) != rep.images[x])
            fail(Errc::internal_inconsistency, "reconstruction differs at x = " + std::to_string(x));
    return out;
}

inline std::vector<std::uint32_t> character(const Representation& rep) {
    std::vector<std::uint32_t> chi;
    chi.reserve(rep.images.size());
    for (const FpMatrix& m : rep.images) chi.push_back(mat_trace(m, rep.field));
    return chi;
}

inline Representation direct_sum_reps(const Representation& r1, const Representation& r2) {
    if (r1.field != r2.field) fail(Errc::incompatible, "different scalar fields");
    if (r1.images.size() != r2.images.size()) fail(Errc::incompatible, "different carriers");
    Representation out;
    out.field = r1.field;
    out.degree = r1.degree + r2.degree;
    out.images.reserve(r1.images.size());
    for (std::size_t x = 0; x < r1.images.size(); ++x)
        out.images.push_back(direct_sum(r1.images[x], r2.images[x]));
    return out;
}

/// Brute-force oracle: every assignment of nonzero scalars to the carrier
/// that satisfies the defining identity, canonically sorted.
inline std::vector<Representation> enumerate_degree1_reps(const PolyadicGroup& pg, const FieldSpec& field,
                                                          const Budget& budget = {}) {
    const std::uint32_t m = pg.order(), n = pg.arity();
    const std::uint32_t units = field.p - 1;
    const std::uint64_t total = checked_pow(units, m, budget.exhaustive_cap);
    if (total > budget.exhaustive_cap)
        fail(Errc::budget_exceeded, "(p-1)^order scalar assignments exceed the budget");

    auto found = partitioned_collect<std::vector<std::uint32_t>>(
        total, budget.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::vector<std::uint32_t>> local;
            std::vector<std::uint32_t> val(m);
            std::vector<Elem> t(n);
            for (std::uint64_t rank = lo; rank < hi; ++rank) {
                std::uint64_t r = rank;
                for (std::uint32_t i = 0; i < m; ++i) {
                    val[i] = static_cast<std::uint32_t>(r % units) + 1;
                    r /= units;
                }
                std::fill(t.begin(), t.end(), 0);
                bool ok = true;
                do {
                    std::uint32_t prod = val[t[0]];
                    for (std::uint32_t i = 1; i < n; ++i) prod = fp_mul(prod, val[t[i]], field);
                    if (val[pg.eval_unchecked(t.data())] != prod) {
                        ok = false;
                        break;
                    }
                } while (pg.next_tuple(t));
                if (ok) local.push_back(val);
            }
            return local;
        });

    std::sort(found.begin(), found.end());
    std::vector<Representation> out;
    out.reserve(found.size());
    for (const auto& val : found) {
        Representation rep;
        rep.field = field;
        rep.degree = 1;
        rep.images.reserve(m);
        for (std::uint32_t x = 0; x < m; ++x) rep.images.push_back(FpMatrix(1, {val[x]}));
        out.push_back(std::move(rep));
    }
    return out;
}

/// All homomorphisms of the base into the multiplicative group of the field,
/// as scalar-value vectors (degree-1 binary representations).
inline std::vector<std::vector<std::uint32_t>> enumerate_binary_degree1_reps(const FiniteGroup& g,
                                                                             const FieldSpec& field,
                                                                             const Budget& budget = {}) {
    const std::uint32_t m = g.order();
    const std::uint32_t units = field.p - 1;
    const std::uint64_t total = checked_pow(units, m, budget.exhaustive_cap);
    if (total > budget.exhaustive_cap)
        fail(Errc::budget_exceeded, "(p-1)^order scalar assignments exceed the budget");

    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> val(m);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        std::uint64_t r = rank;
        for (std::uint32_t i = 0; i < m; ++i) {
            val[i] = static_cast<std::uint32_t>(r % units) + 1;
            r /= units;
        }
        if (val[g.identity()] != 1 % field.p) continue;
        bool ok = true;
        for (Elem x = 0; x < m && ok; ++x)
            for (Elem y = 0; y < m; ++y)
                if (val[g.product(x, y)] != fp_mul(val[x], val[y], field)) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(val);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Degree1Survey {
    PowerCondition condition = PowerCondition::gamma_b;
    std::size_t gamma_count = 0;
    std::size_t pairs_tested = 0;
    std::size_t pairs_passing = 0;   // conjugation and power condition both hold
    std::size_t built_valid = 0;     // and the built map is a genuine representation
    std::size_t built_invalid = 0;   // condition-passing pairs the final gate rejected
    std::size_t oracle_count = 0;
    bool matches_oracle = false;
};

/**
 * Degree-1 completeness sweep: runs every (gamma, A) pair through the
 * builder under the chosen power condition and compares the resulting set
 * of representations with the brute-force oracle.
 */
inline Degree1Survey degree1_survey(const PolyadicGroup& pg, const FieldSpec& field,
                                    PowerCondition cond = PowerCondition::gamma_b,
                                    const Budget& budget = {}) {
    if (!pg.has_derived_spec()) fail(Errc::requires_derived_form, "needs an attached derivation");
    const FiniteGroup& g = pg.spec().base;

    Degree1Survey survey;
    survey.condition = cond;
    const auto gammas = enumerate_binary_degree1_reps(g, field, budget);
    survey.gamma_count = gammas.size();

    std::vector<std::vector<std::uint32_t>> built;
    for (const auto& gv : gammas) {
        std::vector<FpMatrix> gamma;
        gamma.reserve(gv.size());
        for (std::uint32_t v : gv) gamma.push_back(FpMatrix(1, {v}));
        for (std::uint32_t a = 1; a < field.p; ++a) {
            ++survey.pairs_tested;
            try {
                Representation rep = build_representation(gamma, FpMatrix(1, {a}), pg, field, cond);
                ++survey.pairs_passing;
                ++survey.built_valid;
                built.push_back(representation_key(rep));
            } catch (const Error& e) {
                if (e.code() == Errc::conditions_fail) continue;
                if (e.code() == Errc::not_representation) {
                    ++survey.pairs_passing;
                    ++survey.built_invalid;
                    continue;
                }
                throw;
            }
        }
    }
    std::sort(built.begin(), built.end());
    built.erase(std::unique(built.begin(), built.end()), built.end());

    const auto oracle = enumerate_degree1_reps(pg, field, budget);
    survey.oracle_count = oracle.size();
    std::vector<std::vector<std::uint32_t>> oracle_keys;
    oracle_keys.reserve(oracle.size());
    for (const auto& rep : oracle) oracle_keys.push_back(representation_key(rep));
    survey.matches_oracle = built == oracle_keys;
    return survey;
}

} // namespace polyadic
