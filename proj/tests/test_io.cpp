#include <catch2/catch_amalgamated.hpp>

#include <polyadic/polyadic.hpp>

#include "suite.hpp"

#include <functional>
#include <string>
#include <vector>

using namespace polyadic;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::internal_inconsistency;
}

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an Error");
    return {};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("binary document text parses and validates") {
    const std::string text = R"({
        "format_version": 1,
        "kind": "binary",
        "order": 4,
        "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]
    })";
    GroupDocument doc = parse_group_document(text);
    REQUIRE(doc.kind == GroupDocument::Kind::binary);
    LoadedGroup lg = load_group(doc);
    REQUIRE(lg.binary.has_value());
    REQUIRE_FALSE(lg.pg.has_value());
    REQUIRE_FALSE(lg.quasigroup.has_value());
    REQUIRE(lg.binary->order() == 4);
    REQUIRE(*lg.binary == cyclic_group(4));
}

TEST_CASE("derived document loads to the same operation as local derivation") {
    DerivedSpec spec = suite::der_3x_z4().spec();
    GroupDocument doc = make_derived_document(spec);
    const std::string text = document_to_json(doc).dump();
    GroupDocument back = parse_group_document(text);
    REQUIRE(back.kind == GroupDocument::Kind::derived);
    REQUIRE(back.n == 3);
    REQUIRE(back.theta == std::vector<Elem>{0, 3, 2, 1});
    REQUIRE(back.b == 0);
    LoadedGroup lg = load_group(back);
    REQUIRE(lg.pg.has_value());
    REQUIRE(lg.pg->same_operation(suite::der_3x_z4()));
}

TEST_CASE("nary and quasigroup documents round trip") {
    SECTION("nary") {
        GroupDocument doc = make_nary_document(suite::der3_z2());
        ordered_json j = document_to_json(doc);
        REQUIRE(j.at("format_version").get<int>() == 1);
        REQUIRE(j.at("kind").get<std::string>() == "nary");
        GroupDocument back = parse_group_document(j.dump());
        REQUIRE(back.order == 2);
        REQUIRE(back.n == 3);
        REQUIRE(back.flat_table == doc.flat_table);
        LoadedGroup lg = load_group(back);
        REQUIRE(lg.pg.has_value());
        REQUIRE(lg.pg->same_operation(suite::der3_z2()));
    }
    SECTION("binary with names") {
        GroupDocument doc = make_binary_document(symmetric_group_3());
        GroupDocument back = parse_group_document(document_to_json(doc).dump());
        REQUIRE(back.names == doc.names);
        LoadedGroup lg = load_group(back);
        REQUIRE(*lg.binary == symmetric_group_3());
        REQUIRE(lg.binary->names() == symmetric_group_3().names());
    }
    SECTION("quasigroup-linear") {
        FiniteGroup z4 = cyclic_group(4);
        GroupDocument doc;
        doc.kind = GroupDocument::Kind::quasigroup_linear;
        doc.table = nested_table(z4);
        doc.n = 3;
        doc.maps = {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 3, 2, 1}};
        doc.b = 0;
        GroupDocument back = parse_group_document(document_to_json(doc).dump());
        REQUIRE(back.kind == GroupDocument::Kind::quasigroup_linear);
        REQUIRE(back.maps == doc.maps);
        LoadedGroup lg = load_group(back);
        REQUIRE(lg.quasigroup.has_value());
        REQUIRE_FALSE(lg.pg.has_value());
        REQUIRE(lg.quasigroup->order == 4);
        REQUIRE(lg.quasigroup->n == 3);
        // f(x,y,z) = x + y + 3z on Z4
        std::vector<Elem> args{1, 2, 3};
        REQUIRE(lg.quasigroup->evaluate(args) == 0);
        args = {0, 0, 1};
        REQUIRE(lg.quasigroup->evaluate(args) == 3);
    }
}

TEST_CASE("parse errors name the offending field") {
    auto parse = [](std::string text) { return [text] { parse_group_document(text); }; };

    SECTION("malformed JSON") {
        REQUIRE(code_of(parse("{")) == Errc::parse_error);
        REQUIRE(code_of(parse("")) == Errc::parse_error);
    }
    SECTION("not an object") {
        REQUIRE(contains(message_of(parse("[1,2]")), "document"));
    }
    SECTION("unknown kind") {
        const std::string msg = message_of(parse(R"({"kind":"ring","order":1,"table":[[0]]})"));
        REQUIRE(contains(msg, "unknown kind 'ring'"));
    }
    SECTION("unsupported format_version") {
        const std::string msg =
            message_of(parse(R"({"format_version":2,"kind":"binary","order":1,"table":[[0]]})"));
        REQUIRE(contains(msg, "format_version"));
    }
    SECTION("missing field in a derived document") {
        const std::string text =
            R"({"kind":"derived","base":{"order":2,"table":[[0,1],[1,0]]},"n":3,"theta":[0,1]})";
        const std::string msg = message_of(parse(text));
        REQUIRE(contains(msg, "b: missing field"));
    }
    SECTION("missing nested base table") {
        const std::string text = R"({"kind":"derived","base":{"order":2},"n":3,"theta":[0,1],"b":0})";
        REQUIRE(contains(message_of(parse(text)), "base.table"));
    }
    SECTION("non-integer theta entry") {
        const std::string text =
            R"({"kind":"derived","base":{"order":2,"table":[[0,1],[1,0]]},"n":3,"theta":[-1,0],"b":0})";
        REQUIRE(contains(message_of(parse(text)), "theta[0]"));
    }
    SECTION("nary flat table length must equal order^n") {
        const std::string text = R"({"kind":"nary","order":2,"n":3,"table":[0,1,1,0,1,0,0]})";
        const std::string msg = message_of(parse(text));
        REQUIRE(code_of(parse(text)) == Errc::parse_error);
        REQUIRE(contains(msg, "does not equal order^n"));
    }
    SECTION("ragged binary rows") {
        const std::string text = R"({"kind":"binary","order":2,"table":[[0,1],[1]]})";
        REQUIRE(contains(message_of(parse(text)), "table[1]"));
    }
}

TEST_CASE("well-formed documents that fail validation report the inner cause") {
    SECTION("solvable but non-associative nary table") {
        // f(x,y,z) = x + 2y + 3z on Z5: every section is a bijection, but
        // f(f(0,0,1),0,0) = 3 while f(0,f(0,1,0),0) = 4.
        GroupDocument doc;
        doc.kind = GroupDocument::Kind::nary;
        doc.order = 5;
        doc.n = 3;
        doc.flat_table.resize(125);
        for (Elem x = 0; x < 5; ++x)
            for (Elem y = 0; y < 5; ++y)
                for (Elem z = 0; z < 5; ++z)
                    doc.flat_table[(x * 5u + y) * 5u + z] = (x + 2u * y + 3u * z) % 5u;
        auto attempt = [&] { load_group(doc); };
        REQUIRE(code_of(attempt) == Errc::validation_error);
        REQUIRE(contains(message_of(attempt), "NotAssociative"));
    }
    SECTION("derived document whose theta is not an automorphism") {
        const std::string text =
            R"({"kind":"derived","base":{"order":4,"table":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},"n":3,"theta":[0,1,2,2],"b":0})";
        GroupDocument doc = parse_group_document(text);
        auto attempt = [&] { load_group(doc); };
        REQUIRE(code_of(attempt) == Errc::validation_error);
        REQUIRE(contains(message_of(attempt), "NotAutomorphism"));
    }
    SECTION("binary table that is not a group") {
        const std::string text = R"({"kind":"binary","order":2,"table":[[0,0],[1,1]]})";
        GroupDocument doc = parse_group_document(text);
        REQUIRE(code_of([&] { load_group(doc); }) == Errc::validation_error);
    }
}

TEST_CASE("serializing a formula-backed group requires a dense table") {
    Budget tiny;
    tiny.dense_table_cap = 10;
    PolyadicGroup pg = derive(cyclic_group(4), 3, identity_map(4), 0, tiny);
    REQUIRE_FALSE(pg.has_dense_table());
    REQUIRE(code_of([&] { make_nary_document(pg); }) == Errc::table_too_large);
}

TEST_CASE("input digests are stable and content-sensitive") {
    REQUIRE(digest_hex("") == "cbf29ce484222325");
    REQUIRE(digest_hex("a") == "af63dc4c8601ec8c");
    REQUIRE(digest_hex("table") != digest_hex("tables"));
    REQUIRE(digest_hex("table") == digest_hex("table"));
    REQUIRE(digest_hex("x").size() == 16);
}

TEST_CASE("reports round trip through structured output") {
    Budget budget;
    budget.max_brute_order = 6;
    budget.exhaustive_cap = 123456;
    budget.seed = 42;
    budget.workers = 3;
    Report r = make_report("check-all", digest_hex("input"), budget);
    REQUIRE(r.seed == 42);

    Finding good;
    good.claim = "skew-idempotence";
    good.pass = true;
    good.counts = {{"elements", 4}, {"checks", 64}};
    r.findings.push_back(good);

    Finding bad;
    bad.claim = "mediality";
    bad.pass = false;
    bad.witnesses = {format_tuple({0, 1, 2}), format_tuple({2, 0, 1})};
    bad.detail = "exhaustive scan found a violating matrix";
    r.findings.push_back(bad);

    REQUIRE_FALSE(r.all_pass());

    const std::string text = emit_report_structured(r);
    Report back = parse_report(text);
    REQUIRE(back == r);

    r.findings.pop_back();
    REQUIRE(r.all_pass());
    REQUIRE(parse_report(emit_report_structured(r)) == r);

    REQUIRE(code_of([] { parse_report("[1,2"); }) == Errc::parse_error);
    REQUIRE(code_of([] { parse_report(R"({"format_version":9})"); }) == Errc::parse_error);
    REQUIRE(code_of([] { parse_report(R"({"format_version":1,"command":"x"})"); }) == Errc::parse_error);
}

TEST_CASE("human-readable report layout") {
    Budget budget;
    budget.workers = 2;
    Report r = make_report("aut", digest_hex("doc"), budget);
    Finding good;
    good.claim = "brute-equals-structural";
    good.pass = true;
    good.counts = {{"pairs", 4}};
    r.findings.push_back(good);
    Finding bad;
    bad.claim = "unique-decomposition";
    bad.pass = false;
    bad.witnesses = {"(0,1)"};
    r.findings.push_back(bad);

    const std::string text = emit_report_human(r);
    REQUIRE(contains(text, "command: aut\n"));
    REQUIRE(contains(text, "inputs:  " + digest_hex("doc") + "   seed: 0   workers: 2\n"));
    REQUIRE(contains(text, "PASS  brute-equals-structural"));
    REQUIRE(contains(text, "pairs=4"));
    REQUIRE(contains(text, "FAIL  unique-decomposition"));
    REQUIRE(contains(text, "      witness: (0,1)\n"));
    REQUIRE(contains(text, "FAILURES present\n"));

    r.findings.pop_back();
    REQUIRE(contains(emit_report_human(r), "all findings pass\n"));
}

TEST_CASE("representations round trip through JSON") {
    PolyadicGroup pg = suite::der3_z3();
    FieldSpec f7 = make_field_spec(7);
    std::vector<Representation> reps = enumerate_degree1_reps(pg, f7);
    REQUIRE(reps.size() == 6);

    for (const Representation& rep : reps) {
        Representation back = parse_representation(representation_to_json(rep).dump());
        REQUIRE(back.field == rep.field);
        REQUIRE(back.degree == rep.degree);
        REQUIRE(back.images == rep.images);
    }

    Representation sum = direct_sum_reps(reps[1], reps[2]);
    REQUIRE(sum.degree == 2);
    Representation back = parse_representation(representation_to_json(sum).dump(2));
    REQUIRE(back.degree == 2);
    REQUIRE(back.images == sum.images);

    REQUIRE(code_of([] { parse_representation("nope"); }) == Errc::parse_error);
    REQUIRE(code_of([] { parse_representation(R"({"field":{"p":7,"required_roots":1}})"); }) ==
            Errc::parse_error);
}
