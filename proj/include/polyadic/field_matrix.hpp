#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polyadic/core.hpp"

namespace polyadic {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/**
 * An exact prime field F_p, optionally promising that the multiplicative
 * group contains an element of order required_roots (i.e. p = 1 mod k), so
 * every k-th root of unity needed downstream exists.
 */
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t required_roots = 1;

    bool operator==(const FieldSpec&) const = default;
};

inline FieldSpec make_field_spec(std::uint32_t p, std::uint32_t required_roots = 1) {
    if (!is_prime(p)) fail(Errc::invalid_field, std::to_string(p) + " is not prime");
    if (required_roots == 0 || (p - 1) % required_roots != 0)
        fail(Errc::invalid_field, "F_" + std::to_string(p) + " has no element of multiplicative order " +
                                      std::to_string(required_roots));
    return FieldSpec{p, required_roots};
}

inline std::uint32_t fp_add(std::uint32_t a, std::uint32_t b, const FieldSpec& f) {
    return (a + b) % f.p;
}

inline std::uint32_t fp_sub(std::uint32_t a, std::uint32_t b, const FieldSpec& f) {
    return (a + f.p - b % f.p) % f.p;
}

inline std::uint32_t fp_mul(std::uint32_t a, std::uint32_t b, const FieldSpec& f) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % f.p);
}

inline std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, const FieldSpec& f) {
    std::uint32_t r = 1 % f.p, base = a % f.p;
    while (e) {
        if (e & 1) r = fp_mul(r, base, f);
        base = fp_mul(base, base, f);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t fp_inv(std::uint32_t a, const FieldSpec& f) {
    if (a % f.p == 0) fail(Errc::singular_image, "zero has no inverse in F_" + std::to_string(f.p));
    return fp_pow(a, f.p - 2, f);
}

/// Dense square matrix over F_p; entries row-major, always reduced mod p.
struct FpMatrix {
    std::uint32_t dim = 0;
    std::vector<std::uint32_t> entries;

    FpMatrix() = default;
    explicit FpMatrix(std::uint32_t d) : dim(d), entries(static_cast<std::size_t>(d) * d, 0) {}
    FpMatrix(std::uint32_t d, std::vector<std::uint32_t> e) : dim(d), entries(std::move(e)) {
        if (entries.size() != static_cast<std::size_t>(d) * d)
            fail(Errc::internal_inconsistency, "matrix entry count does not match its dimension");
    }

    std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
    std::uint32_t at(std::uint32_t i, std::uint32_t j) const {
        return entries[static_cast<std::size_t>(i) * dim + j];
    }

    bool operator==(const FpMatrix&) const = default;
    auto operator<=>(const FpMatrix& o) const {
        if (auto c = dim <=> o.dim; c != 0) return c;
        return entries <=> o.entries;
    }
};

inline FpMatrix identity_matrix(std::uint32_t dim, const FieldSpec& f) {
    FpMatrix m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = 1 % f.p;
    return m;
}

inline FpMatrix scalar_matrix(std::uint32_t dim, std::uint32_t c, const FieldSpec& f) {
    FpMatrix m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = c % f.p;
    return m;
}

inline FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b, const FieldSpec& f) {
    if (a.dim != b.dim) fail(Errc::incompatible, "matrix dimensions differ");
    FpMatrix out(a.dim);
    for (std::uint32_t i = 0; i < a.dim; ++i)
        for (std::uint32_t k = 0; k < a.dim; ++k) {
            const std::uint64_t aik = a.at(i, k);
            if (!aik) continue;
            for (std::uint32_t j = 0; j < a.dim; ++j)
                out.at(i, j) = static_cast<std::uint32_t>((out.at(i, j) + aik * b.at(k, j)) % f.p);
        }
    return out;
}

inline std::uint32_t mat_trace(const FpMatrix& m, const FieldSpec& f) {
    std::uint32_t t = 0;
    for (std::uint32_t i = 0; i < m.dim; ++i) t = fp_add(t, m.at(i, i), f);
    return t;
}

// Gauss-Jordan over F_p; returns the inverse or nullopt when singular, and
// the determinant through det_out when requested.
inline std::optional<FpMatrix> try_inverse(const FpMatrix& m, const FieldSpec& f,
                                           std::uint32_t* det_out = nullptr) {
    const std::uint32_t d = m.dim;
    FpMatrix work = m, inv = identity_matrix(d, f);
    std::uint32_t det = 1 % f.p;
    for (std::uint32_t col = 0; col < d; ++col) {
        std::uint32_t pivot = col;
        while (pivot < d && work.at(pivot, col) == 0) ++pivot;
        if (pivot == d) {
            if (det_out) *det_out = 0;
            return std::nullopt;
        }
        if (pivot != col) {
            for (std::uint32_t j = 0; j < d; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
            det = fp_sub(0, det, f);
        }
        const std::uint32_t pv = work.at(col, col);
        det = fp_mul(det, pv, f);
        const std::uint32_t pinv = fp_inv(pv, f);
        for (std::uint32_t j = 0; j < d; ++j) {
            work.at(col, j) = fp_mul(work.at(col, j), pinv, f);
            inv.at(col, j) = fp_mul(inv.at(col, j), pinv, f);
        }
        for (std::uint32_t row = 0; row < d; ++row) {
            if (row == col) continue;
            const std::uint32_t factor = work.at(row, col);
            if (!factor) continue;
            for (std::uint32_t j = 0; j < d; ++j) {
                work.at(row, j) = fp_sub(work.at(row, j), fp_mul(factor, work.at(col, j), f), f);
                inv.at(row, j) = fp_sub(inv.at(row, j), fp_mul(factor, inv.at(col, j), f), f);
            }
        }
    }
    if (det_out) *det_out = det;
    return inv;
}

inline std::uint32_t mat_det(const FpMatrix& m, const FieldSpec& f) {
    std::uint32_t det = 0;
    try_inverse(m, f, &det);
    return det;
}

inline FpMatrix mat_inverse(const FpMatrix& m, const FieldSpec& f) {
    auto inv = try_inverse(m, f);
    if (!inv) fail(Errc::singular_image, "matrix is singular over F_" + std::to_string(f.p));
    return *inv;
}

inline FpMatrix mat_pow(const FpMatrix& m, std::uint64_t e, const FieldSpec& f) {
    FpMatrix r = identity_matrix(m.dim, f), base = m;
    while (e) {
        if (e & 1) r = mat_mul(r, base, f);
        base = mat_mul(base, base, f);
        e >>= 1;
    }
    return r;
}

inline FpMatrix direct_sum(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix out(a.dim + b.dim);
    for (std::uint32_t i = 0; i < a.dim; ++i)
        for (std::uint32_t j = 0; j < a.dim; ++j) out.at(i, j) = a.at(i, j);
    for (std::uint32_t i = 0; i < b.dim; ++i)
        for (std::uint32_t j = 0; j < b.dim; ++j) out.at(a.dim + i, a.dim + j) = b.at(i, j);
    return out;
}

} // namespace polyadic
