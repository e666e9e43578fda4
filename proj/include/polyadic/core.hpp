#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyadic {

// Elements of every carrier are dense indices 0..order-1. Display names are
// carried separately and never participate in the algebra.
using Elem = std::uint32_t;

enum class Errc {
    not_latin_square,
    not_associative,
    no_identity,
    index_out_of_range,
    order_too_large,
    not_automorphism,
    theta_not_automorphism,
    theta_does_not_fix_b,
    power_condition_fails,
    not_solvable,
    table_too_large,
    arity_mismatch,
    internal_inconsistency,
    requires_derived_form,
    not_der_n_form,
    not_homotopy,
    not_isotopy,
    not_autotopy,
    incompatible,
    not_homomorphism,
    not_central_idempotent,
    conditions_fail,
    target_not_abelian,
    invalid_field,
    singular_image,
    not_binary_representation,
    not_representation,
    budget_exceeded,
    parse_error,
    validation_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::not_latin_square: return "NotLatinSquare";
        case Errc::not_associative: return "NotAssociative";
        case Errc::no_identity: return "NoIdentity";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::order_too_large: return "OrderTooLarge";
        case Errc::not_automorphism: return "NotAutomorphism";
        case Errc::theta_not_automorphism: return "ThetaNotAutomorphism";
        case Errc::theta_does_not_fix_b: return "ThetaDoesNotFixB";
        case Errc::power_condition_fails: return "PowerConditionFails";
        case Errc::not_solvable: return "NotSolvable";
        case Errc::table_too_large: return "TableTooLarge";
        case Errc::arity_mismatch: return "ArityMismatch";
        case Errc::internal_inconsistency: return "InternalInconsistency";
        case Errc::requires_derived_form: return "RequiresDerivedForm";
        case Errc::not_der_n_form: return "NotDerNForm";
        case Errc::not_homotopy: return "NotHomotopy";
        case Errc::not_isotopy: return "NotIsotopy";
        case Errc::not_autotopy: return "NotAutotopy";
        case Errc::incompatible: return "Incompatible";
        case Errc::not_homomorphism: return "NotHomomorphism";
        case Errc::not_central_idempotent: return "NotCentralIdempotent";
        case Errc::conditions_fail: return "ConditionsFail";
        case Errc::target_not_abelian: return "TargetNotAbelian";
        case Errc::invalid_field: return "InvalidField";
        case Errc::singular_image: return "SingularImage";
        case Errc::not_binary_representation: return "NotBinaryRepresentation";
        case Errc::not_representation: return "NotRepresentation";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_error: return "ValidationError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Search/enumeration budgets shared across modules. Defaults are the pinned
// desk-scale values; the CLI exposes them as flags.
struct Budget {
    std::uint32_t max_brute_order = 8;           // bijection enumeration cap
    std::uint64_t dense_table_cap = 10'000'000;  // entries in a materialized n-ary table
    std::uint64_t assoc_check_cap = 100'000'000; // order^(2n-1) tuples for exhaustive associativity
    std::uint64_t exhaustive_cap = 10'000'000;   // medial / skew-distribution exhaustive switch
    std::uint64_t sample_count = 100'000;        // randomized fallback sample size
    std::uint64_t seed = 0;
    std::uint32_t hom_raw_order_cap = 4;         // raw |H|^|G| homomorphism exhaustion cutoff
    int workers = 1;

    bool operator==(const Budget&) const = default;
};

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

} // namespace polyadic
