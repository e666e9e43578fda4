#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polyadic/core.hpp"
#include "polyadic/element_map.hpp"
#include "polyadic/field_matrix.hpp"
#include "polyadic/finite_group.hpp"
#include "polyadic/polyadic_group.hpp"
#include "polyadic/representations.hpp"

namespace polyadic {

using ordered_json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

/**
 * On-disk group description. Four kinds:
 *   binary            order + optional names + square table
 *   derived           embedded binary base + n + theta images + b
 *   nary              order + n + flat table (first argument slowest)
 *   quasigroup-linear embedded binary base + n automorphism image lists + b
 */
struct GroupDocument {
    enum class Kind { binary, derived, nary, quasigroup_linear };
    Kind kind = Kind::binary;

    std::vector<std::vector<Elem>> table; // binary kinds: own or embedded base table
    std::vector<std::string> names;

    std::uint32_t n = 0;
    std::vector<Elem> theta;              // derived
    std::vector<std::vector<Elem>> maps;  // quasigroup-linear
    Elem b = 0;

    std::uint32_t order = 0;              // nary
    std::vector<Elem> flat_table;         // nary
};

inline std::string kind_name(GroupDocument::Kind k) {
    switch (k) {
        case GroupDocument::Kind::binary: return "binary";
        case GroupDocument::Kind::derived: return "derived";
        case GroupDocument::Kind::nary: return "nary";
        case GroupDocument::Kind::quasigroup_linear: return "quasigroup-linear";
    }
    return "?";
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& what) {
    fail(Errc::parse_error, field + ": " + what);
}

inline const ordered_json& need(const ordered_json& j, const char* key, const std::string& path) {
    if (!j.is_object()) parse_fail(path.empty() ? "document" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path + key, "missing field");
    return *it;
}

inline std::uint64_t need_uint(const ordered_json& j, const char* key, const std::string& path) {
    const ordered_json& v = need(j, key, path);
    if (!v.is_number_unsigned()) parse_fail(path + key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::vector<Elem> elem_list(const ordered_json& v, const std::string& path) {
    if (!v.is_array()) parse_fail(path, "expected an array");
    std::vector<Elem> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_unsigned()) parse_fail(path + "[" + std::to_string(i) + "]", "expected a non-negative integer");
        out.push_back(v[i].get<Elem>());
    }
    return out;
}

inline void parse_binary_payload(const ordered_json& j, GroupDocument& doc, const std::string& path) {
    const std::uint64_t order = need_uint(j, "order", path);
    const ordered_json& t = need(j, "table", path);
    if (!t.is_array() || t.size() != order) parse_fail(path + "table", "expected " + std::to_string(order) + " rows");
    doc.table.clear();
    for (std::size_t r = 0; r < t.size(); ++r) {
        auto row = elem_list(t[r], path + "table[" + std::to_string(r) + "]");
        if (row.size() != order)
            parse_fail(path + "table[" + std::to_string(r) + "]", "expected " + std::to_string(order) + " entries");
        doc.table.push_back(std::move(row));
    }
    doc.names.clear();
    if (auto it = j.find("names"); it != j.end()) {
        if (!it->is_array() || it->size() != order) parse_fail(path + "names", "expected one name per element");
        for (const auto& s : *it) {
            if (!s.is_string()) parse_fail(path + "names", "expected strings");
            doc.names.push_back(s.get<std::string>());
        }
    }
}

} // namespace detail

inline GroupDocument parse_group_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_error, e.what());
    }
    if (!j.is_object()) detail::parse_fail("document", "expected an object");
    if (auto it = j.find("format_version"); it != j.end()) {
        if (!it->is_number_unsigned() || it->get<std::uint64_t>() != format_version)
            detail::parse_fail("format_version", "unsupported version");
    }
    const ordered_json& kind = detail::need(j, "kind", "");
    if (!kind.is_string()) detail::parse_fail("kind", "expected a string");
    const std::string k = kind.get<std::string>();

    GroupDocument doc;
    if (k == "binary") {
        doc.kind = GroupDocument::Kind::binary;
        detail::parse_binary_payload(j, doc, "");
    } else if (k == "derived") {
        doc.kind = GroupDocument::Kind::derived;
        detail::parse_binary_payload(detail::need(j, "base", ""), doc, "base.");
        doc.n = static_cast<std::uint32_t>(detail::need_uint(j, "n", ""));
        doc.theta = detail::elem_list(detail::need(j, "theta", ""), "theta");
        doc.b = static_cast<Elem>(detail::need_uint(j, "b", ""));
    } else if (k == "nary") {
        doc.kind = GroupDocument::Kind::nary;
        doc.order = static_cast<std::uint32_t>(detail::need_uint(j, "order", ""));
        doc.n = static_cast<std::uint32_t>(detail::need_uint(j, "n", ""));
        doc.flat_table = detail::elem_list(detail::need(j, "table", ""), "table");
        const std::uint64_t expect = checked_pow(doc.order, doc.n, UINT64_MAX / 2);
        if (doc.flat_table.size() != expect)
            detail::parse_fail("table", "flat table length " + std::to_string(doc.flat_table.size()) +
                                            " does not equal order^n = " + std::to_string(expect));
        if (auto it = j.find("names"); it != j.end()) {
            if (!it->is_array() || it->size() != doc.order) detail::parse_fail("names", "expected one name per element");
            for (const auto& s : *it) {
                if (!s.is_string()) detail::parse_fail("names", "expected strings");
                doc.names.push_back(s.get<std::string>());
            }
        }
    } else if (k == "quasigroup-linear") {
        doc.kind = GroupDocument::Kind::quasigroup_linear;
        detail::parse_binary_payload(detail::need(j, "base", ""), doc, "base.");
        doc.n = static_cast<std::uint32_t>(detail::need_uint(j, "n", ""));
        const ordered_json& maps = detail::need(j, "maps", "");
        if (!maps.is_array()) detail::parse_fail("maps", "expected an array of image lists");
        for (std::size_t i = 0; i < maps.size(); ++i)
            doc.maps.push_back(detail::elem_list(maps[i], "maps[" + std::to_string(i) + "]"));
        doc.b = static_cast<Elem>(detail::need_uint(j, "b", ""));
    } else {
        detail::parse_fail("kind", "unknown kind '" + k + "'");
    }
    return doc;
}

inline ordered_json document_to_json(const GroupDocument& doc) {
    ordered_json j;
    j["format_version"] = format_version;
    j["kind"] = kind_name(doc.kind);
    auto binary_payload = [&](ordered_json& out) {
        out["order"] = doc.table.size();
        if (!doc.names.empty()) out["names"] = doc.names;
        out["table"] = doc.table;
    };
    switch (doc.kind) {
        case GroupDocument::Kind::binary: binary_payload(j); break;
        case GroupDocument::Kind::derived: {
            ordered_json base;
            binary_payload(base);
            j["base"] = std::move(base);
            j["n"] = doc.n;
            j["theta"] = doc.theta;
            j["b"] = doc.b;
            break;
        }
        case GroupDocument::Kind::nary:
            j["order"] = doc.order;
            j["n"] = doc.n;
            if (!doc.names.empty()) j["names"] = doc.names;
            j["table"] = doc.flat_table;
            break;
        case GroupDocument::Kind::quasigroup_linear: {
            ordered_json base;
            binary_payload(base);
            j["base"] = std::move(base);
            j["n"] = doc.n;
            j["maps"] = doc.maps;
            j["b"] = doc.b;
            break;
        }
    }
    return j;
}

inline std::vector<std::vector<Elem>> nested_table(const FiniteGroup& g) {
    std::vector<std::vector<Elem>> t(g.order(), std::vector<Elem>(g.order()));
    for (Elem x = 0; x < g.order(); ++x)
        for (Elem y = 0; y < g.order(); ++y) t[x][y] = g.product(x, y);
    return t;
}

inline GroupDocument make_binary_document(const FiniteGroup& g) {
    GroupDocument doc;
    doc.kind = GroupDocument::Kind::binary;
    doc.table = nested_table(g);
    doc.names = g.names();
    return doc;
}

inline GroupDocument make_derived_document(const DerivedSpec& spec) {
    GroupDocument doc;
    doc.kind = GroupDocument::Kind::derived;
    doc.table = nested_table(spec.base);
    doc.names = spec.base.names();
    doc.n = spec.n;
    doc.theta = spec.theta.images;
    doc.b = spec.b;
    return doc;
}

inline GroupDocument make_nary_document(const PolyadicGroup& pg) {
    if (!pg.has_dense_table())
        fail(Errc::table_too_large, "group has no materialized table to serialize");
    GroupDocument doc;
    doc.kind = GroupDocument::Kind::nary;
    doc.order = pg.order();
    doc.n = pg.arity();
    doc.names = pg.names();
    doc.flat_table = pg.dense_table();
    return doc;
}

/// The validated in-memory forms of a parsed document.
struct LoadedGroup {
    GroupDocument doc;
    std::optional<FiniteGroup> binary;
    std::optional<PolyadicGroup> pg;
    std::optional<PolyadicQuasigroup> quasigroup;
};

inline LoadedGroup load_group(GroupDocument doc, const Budget& budget = {}) {
    LoadedGroup out;
    try {
        switch (doc.kind) {
            case GroupDocument::Kind::binary:
                out.binary = validate_group(doc.table, doc.names);
                break;
            case GroupDocument::Kind::derived: {
                FiniteGroup base = validate_group(doc.table, doc.names);
                ElementMap theta(base.order(), base.order(), doc.theta);
                out.pg = derive(base, doc.n, theta, doc.b, budget);
                break;
            }
            case GroupDocument::Kind::nary:
                out.pg = validate_polyadic_group(doc.order, doc.n, doc.flat_table, doc.names, budget);
                break;
            case GroupDocument::Kind::quasigroup_linear: {
                FiniteGroup base = validate_group(doc.table, doc.names);
                std::vector<ElementMap> maps;
                maps.reserve(doc.maps.size());
                for (const auto& im : doc.maps) maps.emplace_back(base.order(), base.order(), im);
                out.quasigroup = derive_linear_quasigroup(base, maps, doc.b, budget);
                break;
            }
        }
    } catch (const Error& e) {
        fail(Errc::validation_error, e.what());
    }
    out.doc = std::move(doc);
    return out;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_hex(std::string_view s) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

struct Finding {
    std::string claim;
    bool pass = false;
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    std::vector<std::string> witnesses;
    std::string detail;

    bool operator==(const Finding&) const = default;
};

struct Report {
    std::string command;
    std::string inputs_digest;
    std::uint64_t seed = 0;
    Budget budget;
    std::vector<Finding> findings;

    bool all_pass() const {
        for (const Finding& f : findings)
            if (!f.pass) return false;
        return true;
    }
    bool operator==(const Report&) const = default;
};

inline Report make_report(std::string command, std::string inputs_digest, const Budget& budget) {
    Report r;
    r.command = std::move(command);
    r.inputs_digest = std::move(inputs_digest);
    r.seed = budget.seed;
    r.budget = budget;
    return r;
}

inline std::string format_tuple(const std::vector<Elem>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
    return out + ")";
}

inline ordered_json report_to_json(const Report& r) {
    ordered_json j;
    j["format_version"] = format_version;
    j["command"] = r.command;
    j["inputs_digest"] = r.inputs_digest;
    j["seed"] = r.seed;
    ordered_json b;
    b["max_brute_order"] = r.budget.max_brute_order;
    b["dense_table_cap"] = r.budget.dense_table_cap;
    b["assoc_check_cap"] = r.budget.assoc_check_cap;
    b["exhaustive_cap"] = r.budget.exhaustive_cap;
    b["sample_count"] = r.budget.sample_count;
    b["seed"] = r.budget.seed;
    b["hom_raw_order_cap"] = r.budget.hom_raw_order_cap;
    b["workers"] = r.budget.workers;
    j["budget"] = std::move(b);
    ordered_json fs = ordered_json::array();
    for (const Finding& f : r.findings) {
        ordered_json fj;
        fj["claim"] = f.claim;
        fj["pass"] = f.pass;
        ordered_json counts;
        for (const auto& [k, v] : f.counts) counts[k] = v;
        fj["counts"] = std::move(counts);
        fj["witnesses"] = f.witnesses;
        fj["detail"] = f.detail;
        fs.push_back(std::move(fj));
    }
    j["findings"] = std::move(fs);
    return j;
}

inline Report parse_report(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_error, e.what());
    }
    Report r;
    try {
        if (j.at("format_version").get<int>() != format_version)
            detail::parse_fail("format_version", "unsupported version");
        r.command = j.at("command").get<std::string>();
        r.inputs_digest = j.at("inputs_digest").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        const auto& b = j.at("budget");
        r.budget.max_brute_order = b.at("max_brute_order").get<std::uint32_t>();
        r.budget.dense_table_cap = b.at("dense_table_cap").get<std::uint64_t>();
        r.budget.assoc_check_cap = b.at("assoc_check_cap").get<std::uint64_t>();
        r.budget.exhaustive_cap = b.at("exhaustive_cap").get<std::uint64_t>();
        r.budget.sample_count = b.at("sample_count").get<std::uint64_t>();
        r.budget.seed = b.at("seed").get<std::uint64_t>();
        r.budget.hom_raw_order_cap = b.at("hom_raw_order_cap").get<std::uint32_t>();
        r.budget.workers = b.at("workers").get<std::uint32_t>();
        for (const auto& fj : j.at("findings")) {
            Finding f;
            f.claim = fj.at("claim").get<std::string>();
            f.pass = fj.at("pass").get<bool>();
            for (auto it = fj.at("counts").begin(); it != fj.at("counts").end(); ++it)
                f.counts.emplace_back(it.key(), it.value().get<std::uint64_t>());
            for (const auto& w : fj.at("witnesses")) f.witnesses.push_back(w.get<std::string>());
            f.detail = fj.at("detail").get<std::string>();
            r.findings.push_back(std::move(f));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, e.what());
    }
    return r;
}

inline std::string emit_report_structured(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

inline std::string emit_report_human(const Report& r) {
    std::string out;
    out += "command: " + r.command + "\n";
    out += "inputs:  " + r.inputs_digest + "   seed: " + std::to_string(r.seed) +
           "   workers: " + std::to_string(r.budget.workers) + "\n";
    std::size_t width = 5;
    for (const Finding& f : r.findings) width = std::max(width, f.claim.size());
    for (const Finding& f : r.findings) {
        out += f.pass ? "PASS  " : "FAIL  ";
        out += f.claim;
        out.append(width - f.claim.size() + 2, ' ');
        std::string extras;
        for (const auto& [k, v] : f.counts) extras += (extras.empty() ? "" : "  ") + k + "=" + std::to_string(v);
        if (!f.detail.empty()) extras += (extras.empty() ? "" : "  ") + f.detail;
        out += extras + "\n";
        for (const std::string& w : f.witnesses) out += "      witness: " + w + "\n";
    }
    out += r.all_pass() ? "all findings pass\n" : "FAILURES present\n";
    return out;
}

inline ordered_json representation_to_json(const Representation& rep) {
    ordered_json j;
    j["format_version"] = format_version;
    j["field"] = ordered_json{{"p", rep.field.p}, {"required_roots", rep.field.required_roots}};
    j["degree"] = rep.degree;
    ordered_json images = ordered_json::array();
    for (const FpMatrix& m : rep.images) images.push_back(m.entries);
    j["images"] = std::move(images);
    return j;
}

inline Representation parse_representation(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_error, e.what());
    }
    Representation rep;
    try {
        rep.field = make_field_spec(j.at("field").at("p").get<std::uint32_t>(),
                                    j.at("field").at("required_roots").get<std::uint32_t>());
        rep.degree = j.at("degree").get<std::uint32_t>();
        for (const auto& entries : j.at("images"))
            rep.images.push_back(FpMatrix(rep.degree, entries.get<std::vector<std::uint32_t>>()));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, e.what());
    }
    return rep;
}

} // namespace polyadic
