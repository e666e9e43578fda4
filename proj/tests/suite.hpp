#pragma once

#include <polyadic/polyadic.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Shared corpus for the tests: every derived polyadic group over a fixed set
// of small bases, for arities 3 through 5, plus a few named members that
// individual tests reference directly.
namespace suite {

using namespace polyadic;

struct NamedBase {
    std::string name;
    FiniteGroup group;
};

inline const std::vector<NamedBase>& bases() {
    static const std::vector<NamedBase> all = [] {
        std::vector<NamedBase> v;
        v.push_back({"Z1", trivial_group()});
        v.push_back({"Z2", cyclic_group(2)});
        v.push_back({"Z3", cyclic_group(3)});
        v.push_back({"Z4", cyclic_group(4)});
        v.push_back({"V4", klein_four_group()});
        v.push_back({"Z6", cyclic_group(6)});
        v.push_back({"S3", symmetric_group_3()});
        return v;
    }();
    return all;
}

inline std::string image_list(const ElementMap& f) {
    std::string s = "[";
    for (std::uint32_t x = 0; x < f.domain_order; ++x) {
        if (x) s += ",";
        s += std::to_string(f.images[x]);
    }
    return s + "]";
}

struct Member {
    std::string name;
    std::string base_name;
    DerivedSpec spec;
    PolyadicGroup pg;
};

inline const std::vector<Member>& members() {
    static const std::vector<Member> all = [] {
        std::vector<Member> v;
        for (const auto& nb : bases()) {
            for (std::uint32_t n = 3; n <= 5; ++n) {
                for (const auto& spec : enumerate_derived_specs(nb.group, n)) {
                    std::string name = "der" + std::to_string(n) + "(" + nb.name +
                                       "; theta=" + image_list(spec.theta) +
                                       ", b=" + std::to_string(spec.b) + ")";
                    v.push_back({std::move(name), nb.name, spec, derive(spec)});
                }
            }
        }
        return v;
    }();
    return all;
}

inline ElementMap scale_map(std::uint32_t m, std::uint32_t c) {
    std::vector<Elem> im(m);
    for (std::uint32_t x = 0; x < m; ++x) im[x] = static_cast<Elem>((static_cast<std::uint64_t>(c) * x) % m);
    return ElementMap(m, m, std::move(im));
}

inline PolyadicGroup der3_z2() { return derive(cyclic_group(2), 3, identity_map(2), 0); }
inline PolyadicGroup der3_z3() { return derive(cyclic_group(3), 3, identity_map(3), 0); }
inline PolyadicGroup der3_z4() { return derive(cyclic_group(4), 3, identity_map(4), 0); }
inline PolyadicGroup der4_z2() { return derive(cyclic_group(2), 4, identity_map(2), 0); }
inline PolyadicGroup der_3x_z4() { return derive(cyclic_group(4), 3, scale_map(4, 3), 0); }
inline PolyadicGroup der_z4_id_b2() { return derive(cyclic_group(4), 3, identity_map(4), 2); }
inline PolyadicGroup der3_z2_b1() { return derive(cyclic_group(2), 3, identity_map(2), 1); }

// Ternary group over S3 with theta the inner automorphism by the
// transposition (01); its retracts are all nonabelian.
inline PolyadicGroup der_s3_it_e() {
    FiniteGroup s3 = symmetric_group_3();
    return derive(s3, 3, s3.inner_automorphism(1), 0);
}

} // namespace suite
