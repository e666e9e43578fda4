#include <catch2/catch_amalgamated.hpp>

#include "suite.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

using namespace polyadic;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::internal_inconsistency;
}

} // namespace

TEST_CASE("cyclic group basics") {
    FiniteGroup z6 = cyclic_group(6);
    REQUIRE(z6.order() == 6);
    REQUIRE(z6.identity() == 0);
    REQUIRE(z6.product(4, 5) == 3);
    REQUIRE(z6.inverse_of(2) == 4);
    REQUIRE(z6.power(2, 3) == 0);
    REQUIRE(z6.is_abelian());
    REQUIRE(z6.center().size() == 6);
    REQUIRE(z6.name_of(3) == "3");
}

TEST_CASE("symmetric group on three points") {
    FiniteGroup s3 = symmetric_group_3();
    REQUIRE(s3.order() == 6);
    REQUIRE_FALSE(s3.is_abelian());
    REQUIRE(s3.center() == std::vector<Elem>{0});
    // (01) then (02) maps 0->1->1, 1->0->2, 2->2->0, i.e. the 3-cycle (012).
    REQUIRE(s3.product(1, 2) == 4);
    REQUIRE(s3.product(4, 4) == 5);
    REQUIRE(s3.inverse_of(4) == 5);
    REQUIRE(s3.centralizer({4}) == std::vector<Elem>{0, 4, 5});
    REQUIRE(s3.is_subgroup({0, 4, 5}));
    REQUIRE(s3.is_subgroup({0, 1}));
    REQUIRE_FALSE(s3.is_subgroup({0, 4}));
    REQUIRE(s3.subgroup_closure({4}) == std::vector<Elem>{0, 4, 5});

    std::vector<Elem> gens = s3.generating_set();
    REQUIRE(s3.subgroup_closure(gens).size() == 6);
    REQUIRE(gens.size() == 2);
}

TEST_CASE("validate_group rejects defective tables") {
    REQUIRE(code_of([] { validate_group({{0, 0}, {1, 1}}); }) == Errc::not_latin_square);
    REQUIRE(code_of([] { validate_group({{0, 1, 2}, {2, 0, 1}}); }) == Errc::index_out_of_range);
    REQUIRE(code_of([] { validate_group({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}); }) == Errc::no_identity);
    // Smallest loop that is not a group: latin, two-sided identity, broken
    // associativity at (1*1)*2 vs 1*(1*2).
    REQUIRE(code_of([] {
                validate_group({{0, 1, 2, 3, 4},
                                {1, 0, 3, 4, 2},
                                {2, 3, 4, 0, 1},
                                {3, 4, 1, 2, 0},
                                {4, 2, 0, 1, 3}});
            }) == Errc::not_associative);
    REQUIRE(code_of([] { validate_group({{0, 1}, {1, 2}}); }) == Errc::index_out_of_range);
}

TEST_CASE("translations compose contravariantly") {
    FiniteGroup s3 = symmetric_group_3();
    for (Elem a = 0; a < 6; ++a) {
        REQUIRE(s3.translation(Side::right, a).bijective());
        for (Elem b = 0; b < 6; ++b) {
            auto rr = compose(s3.translation(Side::right, a), s3.translation(Side::right, b));
            REQUIRE(rr == s3.translation(Side::right, s3.product(b, a)));
            auto ll = compose(s3.translation(Side::left, a), s3.translation(Side::left, b));
            REQUIRE(ll == s3.translation(Side::left, s3.product(a, b)));
        }
    }
}

TEST_CASE("inner automorphisms compose contravariantly") {
    FiniteGroup s3 = symmetric_group_3();
    for (Elem a = 0; a < 6; ++a) {
        REQUIRE(s3.is_automorphism(s3.inner_automorphism(a)));
        for (Elem b = 0; b < 6; ++b)
            REQUIRE(compose(s3.inner_automorphism(a), s3.inner_automorphism(b)) ==
                    s3.inner_automorphism(s3.product(b, a)));
    }
}

TEST_CASE("commutator of equal automorphisms is the identity") {
    FiniteGroup s3 = symmetric_group_3();
    ElementMap t = s3.inner_automorphism(4);
    REQUIRE(commutator_of_autos(s3, t, t) == identity_map(6));
    ElementMap u = s3.inner_automorphism(1);
    ElementMap c = commutator_of_autos(s3, t, u);
    REQUIRE(s3.is_automorphism(c));
    REQUIRE(c == compose(compose(t, u), compose(inverse_map(t), inverse_map(u))));
}

TEST_CASE("automorphism group orders of the small bases") {
    REQUIRE(enumerate_automorphisms(trivial_group()).size() == 1);
    REQUIRE(enumerate_automorphisms(cyclic_group(2)).size() == 1);
    REQUIRE(enumerate_automorphisms(cyclic_group(3)).size() == 2);
    REQUIRE(enumerate_automorphisms(cyclic_group(4)).size() == 2);
    REQUIRE(enumerate_automorphisms(klein_four_group()).size() == 6);
    REQUIRE(enumerate_automorphisms(cyclic_group(6)).size() == 2);
    REQUIRE(enumerate_automorphisms(symmetric_group_3()).size() == 6);
    for (const auto& phi : enumerate_automorphisms(symmetric_group_3()))
        REQUIRE(symmetric_group_3().is_automorphism(phi));
}

TEST_CASE("binary homomorphism enumeration matches hand counts") {
    FiniteGroup z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4), z6 = cyclic_group(6);
    FiniteGroup s3 = symmetric_group_3();
    REQUIRE(enumerate_binary_homomorphisms(z4, z2).size() == 2);
    REQUIRE(enumerate_binary_homomorphisms(z2, z4).size() == 2);
    REQUIRE(enumerate_binary_homomorphisms(z3, z4).size() == 1);
    REQUIRE(enumerate_binary_homomorphisms(s3, z6).size() == 2);
    for (const auto& h : enumerate_binary_homomorphisms(s3, z6))
        REQUIRE(s3.is_homomorphism_image(h, z6));
}

TEST_CASE("isomorphism search separates the order-four and order-six groups") {
    FiniteGroup z4 = cyclic_group(4), v4 = klein_four_group(), z6 = cyclic_group(6);
    FiniteGroup s3 = symmetric_group_3();
    auto iso = find_isomorphism(z4, z4);
    REQUIRE(iso.has_value());
    REQUIRE(z4.is_automorphism(*iso));
    REQUIRE_FALSE(find_isomorphism(z4, v4).has_value());
    REQUIRE_FALSE(find_isomorphism(z6, s3).has_value());
    REQUIRE_FALSE(find_isomorphism(cyclic_group(2), cyclic_group(3)).has_value());
}

TEST_CASE("brute-force caps guard the enumerators") {
    Budget b;
    b.max_brute_order = 8;
    REQUIRE(code_of([&] { enumerate_automorphisms(cyclic_group(9), b); }) == Errc::order_too_large);
    REQUIRE(code_of([&] { find_isomorphism(cyclic_group(9), cyclic_group(9), b); }) == Errc::order_too_large);
}

TEST_CASE("element maps validate and compose") {
    ElementMap f(3, 3, {1, 2, 0});
    REQUIRE(f.bijective());
    REQUIRE(compose(f, inverse_map(f)) == identity_map(3));
    REQUIRE(map_power(f, 3) == identity_map(3));
    REQUIRE(code_of([] { ElementMap(2, 2, {0, 5}); }) == Errc::index_out_of_range);
    REQUIRE(code_of([] { ElementMap(2, 2, {0}); }) == Errc::index_out_of_range);
    ElementMap g(3, 2, {0, 1, 1});
    REQUIRE_FALSE(g.bijective());
    REQUIRE(code_of([&] { inverse_map(g); }) == Errc::not_automorphism);
}
