#include <polyadic/polyadic.hpp>

#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace polyadic;

namespace {

Elem elem_pow(const FiniteGroup& g, Elem a, std::uint32_t k) {
    Elem acc = g.identity();
    for (std::uint32_t i = 0; i < k; ++i) acc = g.product(acc, a);
    return acc;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) out *= base;
    return out;
}

struct TableKey {
    std::uint32_t order = 0;
    std::uint32_t n = 0;
    std::vector<Elem> table;
    bool operator<(const TableKey& o) const {
        if (order != o.order) return order < o.order;
        if (n != o.n) return n < o.n;
        return table < o.table;
    }
};

std::map<TableKey, std::vector<std::vector<Elem>>> autotopy_key_cache;

const std::vector<std::vector<Elem>>& cached_autotopy_keys(const PolyadicGroup& pg) {
    TableKey k{pg.order(), pg.arity(), pg.dense_table()};
    auto it = autotopy_key_cache.find(k);
    if (it != autotopy_key_cache.end()) return it->second;
    AutotopyGroup at = enumerate_autotopies(pg);
    std::vector<std::vector<Elem>> keys;
    keys.reserve(at.size());
    for (const Homotopy& t : at.carrier()) keys.push_back(homotopy_key(t));
    std::sort(keys.begin(), keys.end());
    return autotopy_key_cache.emplace(std::move(k), std::move(keys)).first->second;
}

Homotopy homotopy_from_key(const PolyadicGroup& pg, const std::vector<Elem>& key) {
    const std::uint32_t m = pg.order(), n = pg.arity();
    std::vector<ElementMap> maps;
    maps.reserve(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i)
        maps.emplace_back(m, m, std::vector<Elem>(key.begin() + i * m, key.begin() + (i + 1) * m));
    return make_homotopy(std::move(maps), pg, pg);
}

bool is_identity_theta(const DerivedSpec& s) {
    return s.theta == identity_map(s.base.order());
}

struct Criterion {
    int id = 0;
    double budget_seconds = 0; // 0 = no time bound
    std::string description;
    std::function<bool(std::string&)> run;
};

bool crit_hg_all_base_points(std::string& detail) {
    std::size_t points = 0;
    for (const suite::Member& m : suite::members()) {
        for (Elem a = 0; a < m.pg.order(); ++a) {
            try {
                hg_decompose(m.pg, a);
            } catch (const Error& e) {
                detail = m.name + " at base point " + std::to_string(a) + ": " + e.what();
                return false;
            }
            ++points;
        }
    }
    if (points < 102) {
        detail = "only " + std::to_string(points) + " base points swept";
        return false;
    }
    return true;
}

bool crit_dornte(std::string& detail) {
    for (const suite::Member& m : suite::members()) {
        DornteReport dr = check_dornte(m.pg);
        const std::uint64_t order = m.pg.order(), n = m.pg.arity();
        const std::uint64_t expected = order * (n + 2 * order * (n - 1));
        if (!dr.pass) {
            detail = m.name + ": " + dr.witness;
            return false;
        }
        if (dr.identities_checked != expected) {
            detail = m.name + ": checked " + std::to_string(dr.identities_checked) + ", expected " +
                     std::to_string(expected);
            return false;
        }
    }
    return true;
}

bool crit_aut_structural_equals_brute(std::string& detail) {
    for (const suite::Member& m : suite::members()) {
        std::vector<ElementMap> brute = enumerate_automorphisms_brute(m.pg);
        std::vector<AutDecomposition> pairs = enumerate_automorphisms_structural(m.pg);
        std::vector<ElementMap> rebuilt;
        rebuilt.reserve(pairs.size());
        for (const AutDecomposition& p : pairs)
            rebuilt.push_back(reconstruct_translation_pair(m.spec.base, p));
        std::sort(rebuilt.begin(), rebuilt.end());
        if (rebuilt != brute) {
            detail = m.name + ": structural " + std::to_string(pairs.size()) + " vs brute " +
                     std::to_string(brute.size());
            return false;
        }
    }
    const std::size_t plain_z4 = enumerate_automorphisms_brute(suite::der3_z4()).size();
    if (plain_z4 != 4) {
        detail = "plain cubic derivation over Z4 has " + std::to_string(plain_z4) + " automorphisms, expected 4";
        return false;
    }
    const std::size_t twisted_z4 = enumerate_automorphisms_brute(suite::der_3x_z4()).size();
    if (twisted_z4 != 8) {
        detail = "x->3x cubic derivation over Z4 has " + std::to_string(twisted_z4) +
                 " automorphisms, expected 8";
        return false;
    }
    return true;
}

bool crit_abelian_aut_formula(std::string& detail) {
    std::size_t covered = 0;
    for (const suite::Member& m : suite::members()) {
        const DerivedSpec& s = m.spec;
        if (!s.base.is_abelian() || !is_identity_theta(s) || s.b != s.base.identity()) continue;
        AutStructureReport rep = aut_group_structure(m.pg);
        if (!rep.abelian_theta_identity || !rep.abelian_formula_ok || !rep.pairs_distinct ||
            !rep.multiplication_rule_ok || !rep.kernel_equals_z_star) {
            detail = m.name + ": structure report flags failed";
            return false;
        }
        std::size_t z_bar = 0;
        for (Elem a = 0; a < s.base.order(); ++a)
            if (elem_pow(s.base, a, m.pg.arity() - 1) == s.base.identity()) ++z_bar;
        const std::size_t base_aut = enumerate_automorphisms(s.base).size();
        if (rep.aut_order != base_aut * z_bar) {
            detail = m.name + ": |Aut| = " + std::to_string(rep.aut_order) + " but |Aut(base)| x |Z-bar| = " +
                     std::to_string(base_aut) + " x " + std::to_string(z_bar);
            return false;
        }
        ++covered;
    }
    if (covered < 18) {
        detail = "only " + std::to_string(covered) + " abelian plain members covered";
        return false;
    }
    return true;
}

bool crit_autotopy_formula_and_decomposition(std::string& detail) {
    const std::map<std::string, std::size_t> pinned = {
        {"Z2:3", 8},
        {"Z3:3", 54},
        {"Z2:4", 16},
    };
    std::size_t covered = 0;
    for (const suite::Member& m : suite::members()) {
        if (m.pg.order() > 4 || !is_der_n_form(m.pg)) continue;
        const auto& keys = cached_autotopy_keys(m.pg);
        const std::size_t base_aut = enumerate_automorphisms(m.spec.base).size();
        const std::uint64_t expected = pow_u64(m.pg.order(), m.pg.arity()) * base_aut;
        if (keys.size() != expected) {
            detail = m.name + ": " + std::to_string(keys.size()) + " autotopies, formula gives " +
                     std::to_string(expected);
            return false;
        }
        auto pin = pinned.find(m.base_name + ":" + std::to_string(m.pg.arity()));
        if (pin != pinned.end() && keys.size() != pin->second) {
            detail = m.name + ": pinned count " + std::to_string(pin->second) + " missed";
            return false;
        }

        std::vector<std::vector<Elem>> dec_keys;
        dec_keys.reserve(keys.size());
        for (const auto& key : keys) {
            Homotopy t = homotopy_from_key(m.pg, key);
            AutotopyDecomposition dec;
            try {
                dec = autotopy_decompose(m.pg, t);
            } catch (const Error& e) {
                detail = m.name + ": an autotopy failed to split: " + std::string(e.what());
                return false;
            }
            std::vector<Elem> dk = dec.a_list;
            dk.insert(dk.end(), dec.phi.images.begin(), dec.phi.images.end());
            dec_keys.push_back(std::move(dk));
        }
        std::sort(dec_keys.begin(), dec_keys.end());
        if (std::adjacent_find(dec_keys.begin(), dec_keys.end()) != dec_keys.end()) {
            detail = m.name + ": two autotopies produced the same (translations, automorphism) split";
            return false;
        }
        ++covered;
    }
    if (covered < 15) {
        detail = "only " + std::to_string(covered) + " plain-product members covered";
        return false;
    }
    return true;
}

bool crit_hom_decomposition_sweep(std::string& detail) {
    std::vector<const suite::Member*> small;
    for (const suite::Member& m : suite::members())
        if (m.pg.order() <= 4) small.push_back(&m);

    std::size_t pairs = 0, homs_total = 0, plain_z2_self = 0;
    for (const suite::Member* src : small) {
        for (const suite::Member* tgt : small) {
            if (src->pg.arity() != tgt->pg.arity()) continue;
            ++pairs;
            std::vector<ElementMap> homs = enumerate_homomorphisms(src->pg, tgt->pg);
            homs_total += homs.size();
            for (const ElementMap& psi : homs) {
                GeneralHomDecomposition dec;
                try {
                    dec = decompose_hom_general(psi, src->pg, tgt->pg);
                } catch (const Error& e) {
                    detail = src->name + " -> " + tgt->name + ": " + e.what();
                    return false;
                }
                if (dec.target_abelian &&
                    (!dec.abelian_power_condition || !dec.abelian_commuting_condition)) {
                    detail = src->name + " -> " + tgt->name + ": abelian side conditions failed";
                    return false;
                }
                if (dec.target_der_n && (!dec.power_condition || !dec.conjugation_condition)) {
                    detail = src->name + " -> " + tgt->name + ": plain-product side conditions failed";
                    return false;
                }
            }
            if (src == tgt && src->base_name == "Z2" && src->pg.arity() == 3 &&
                is_der_n_form(src->pg) && homs.size() == 4)
                plain_z2_self = homs.size();
        }
    }
    if (plain_z2_self != 4) {
        detail = "cubic plain derivation over Z2 should have exactly 4 self-homomorphisms";
        return false;
    }
    if (pairs < 1000 || homs_total == 0) {
        detail = "sweep too small: " + std::to_string(pairs) + " pairs, " + std::to_string(homs_total) +
                 " homomorphisms";
        return false;
    }
    return true;
}

bool crit_conjugation_transport(std::string& detail) {
    std::size_t covered = 0;
    for (const suite::Member& m : suite::members()) {
        if (m.pg.order() > 4) continue;
        Homotopy T = canonical_isotopy_to_dern(m.pg);
        if (!T.isotopy || !check_homotopy(T.maps, T.source, T.target).holds) {
            detail = m.name + ": canonical tuple is not an isotopy";
            return false;
        }
        const auto& src_keys = cached_autotopy_keys(m.pg);
        const auto& tgt_keys = cached_autotopy_keys(T.target);
        if (src_keys.size() != tgt_keys.size()) {
            detail = m.name + ": autotopy group sizes differ under isotopy";
            return false;
        }
        std::vector<ElementMap> tinv;
        tinv.reserve(T.maps.size());
        for (const ElementMap& f : T.maps) tinv.push_back(inverse_map(f));

        const std::uint32_t mm = m.pg.order(), n = m.pg.arity();
        std::vector<std::vector<Elem>> conj;
        conj.reserve(tgt_keys.size());
        for (const auto& s : tgt_keys) {
            std::vector<Elem> out(static_cast<std::size_t>(n + 1) * mm);
            for (std::uint32_t i = 0; i <= n; ++i)
                for (Elem x = 0; x < mm; ++x)
                    out[i * mm + x] = tinv[i].images[s[i * mm + T.maps[i].images[x]]];
            conj.push_back(std::move(out));
        }
        std::sort(conj.begin(), conj.end());
        if (conj != src_keys) {
            detail = m.name + ": conjugated plain-product autotopies differ from the member's own";
            return false;
        }
        ++covered;
    }
    if (covered < 62) {
        detail = "only " + std::to_string(covered) + " members covered";
        return false;
    }
    return true;
}

bool crit_representation_surveys(std::string& detail) {
    FieldSpec f7 = make_field_spec(7);

    Degree1Survey s1 = degree1_survey(suite::der3_z3(), f7, PowerCondition::gamma_b);
    if (!s1.matches_oracle || s1.built_valid != 6 || s1.oracle_count != 6) {
        detail = "cubic Z3 over F7: built " + std::to_string(s1.built_valid) + " vs oracle " +
                 std::to_string(s1.oracle_count);
        return false;
    }

    Degree1Survey s2 = degree1_survey(suite::der4_z2(), f7, PowerCondition::gamma_b);
    if (!s2.matches_oracle || s2.built_valid != 6 || s2.oracle_count != 6) {
        detail = "quartic Z2 over F7: built " + std::to_string(s2.built_valid) + " vs oracle " +
                 std::to_string(s2.oracle_count);
        return false;
    }

    Degree1Survey s3 = degree1_survey(suite::der4_z2(), f7, PowerCondition::lambda_b);
    if (s3.matches_oracle || s3.pairs_passing != 4 || s3.built_valid != 2 || s3.built_invalid != 2 ||
        s3.oracle_count != 6) {
        detail = "literal condition on quartic Z2 over F7: passes " + std::to_string(s3.pairs_passing) +
                 " pairs, builds " + std::to_string(s3.built_valid) + " valid and " +
                 std::to_string(s3.built_invalid) + " rejected, oracle " + std::to_string(s3.oracle_count);
        return false;
    }

    Degree1Survey s4 = degree1_survey(suite::der3_z3(), make_field_spec(2), PowerCondition::gamma_b);
    if (!s4.matches_oracle || s4.oracle_count != 1) {
        detail = "over F2 only the trivial degree-1 representation should survive";
        return false;
    }
    return true;
}

bool crit_retracts_isomorphic(std::string& detail) {
    for (const suite::Member& m : suite::members()) {
        FiniteGroup r0 = retract(m.pg, 0);
        for (Elem a = 1; a < m.pg.order(); ++a) {
            if (!find_isomorphism(r0, retract(m.pg, a)).has_value()) {
                detail = m.name + ": retracts at 0 and " + std::to_string(a) + " are not isomorphic";
                return false;
            }
        }
    }
    return true;
}

bool crit_semiabelian_medial_chain(std::string& detail) {
    for (const suite::Member& m : suite::members()) {
        SemiabelianReport sr = check_semiabelian(m.pg);
        if (sr.semiabelian != m.spec.base.is_abelian()) {
            detail = m.name + ": semiabelian should coincide with base commutativity here";
            return false;
        }
        SampledCheckReport mr = medial_check(m.pg);
        SampledCheckReport kr = check_skew_distribution(m.pg);
        if (sr.semiabelian && !mr.holds) {
            detail = m.name + ": semiabelian member failed mediality at " + format_tuple(mr.witness);
            return false;
        }
        if (mr.holds && !kr.holds) {
            detail = m.name + ": medial member failed skew distributivity at " + format_tuple(kr.witness);
            return false;
        }
    }
    if (is_semiabelian(suite::der_s3_it_e())) {
        detail = "the conjugation-twisted cubic derivation over S3 must not be semiabelian";
        return false;
    }
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;
    criteria.push_back({1, 10.0,
                        "every member rebuilds as a twisted-product derivation from the retract at "
                        "every base point",
                        crit_hg_all_base_points});
    criteria.push_back({2, 10.0, "the skew-element insertion identities hold across the whole suite",
                        crit_dornte});
    criteria.push_back({3, 30.0,
                        "structural automorphism enumeration matches brute force on every member",
                        crit_aut_structural_equals_brute});
    criteria.push_back({4, 0.0,
                        "abelian plain-product members factor their automorphism count as |Aut(base)| "
                        "x |{a : a^(n-1) = e}|",
                        crit_abelian_aut_formula});
    criteria.push_back({5, 60.0,
                        "autotopy groups have order^n x |Aut(base)| elements and split uniquely into "
                        "translations plus a base automorphism",
                        crit_autotopy_formula_and_decomposition});
    criteria.push_back({6, 30.0,
                        "every homomorphism between small members splits as a right translation after "
                        "a base homomorphism with the expected side conditions",
                        crit_hom_decomposition_sweep});
    criteria.push_back({7, 0.0,
                        "conjugating the plain-product autotopy group by the canonical isotopy "
                        "reproduces each member's autotopy group",
                        crit_conjugation_transport});
    criteria.push_back({8, 10.0,
                        "degree-1 representation surveys match the brute-force oracle and expose the "
                        "stricter literal power condition",
                        crit_representation_surveys});
    criteria.push_back({9, 30.0, "retracts at all base points are pairwise isomorphic for every member",
                        crit_retracts_isomorphic});
    criteria.push_back({10, 0.0,
                        "semiabelian members are medial and medial members distribute the skew map",
                        crit_semiabelian_medial_chain});

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.budget_seconds > 0 && secs >= c.budget_seconds) {
            ok = false;
            detail = "time budget exceeded";
        }
        char timing[64];
        if (c.budget_seconds > 0)
            std::snprintf(timing, sizeof(timing), "%.2fs < %.0fs", secs, c.budget_seconds);
        else
            std::snprintf(timing, sizeof(timing), "%.2fs", secs);
        std::printf("criterion %2d %s (%s) %s%s%s\n", c.id, ok ? "PASS" : "FAIL", timing,
                    c.description.c_str(), detail.empty() ? "" : ": ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d of %zu acceptance criteria pass\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
