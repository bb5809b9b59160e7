#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hmskit/hmsdb.hpp"
#include "json.hpp"
#include "test_support.hpp"

#include <fstream>
#include <sstream>

using namespace hmskit;
using nlohmann::json;

namespace {

std::string db_text() {
    std::ifstream is(HMSKIT_DB_PATH);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const Database &db() {
    static Database d = load_database(HMSKIT_DB_PATH);
    return d;
}

json &record(json &j, long D) {
    for (auto &r : j["records"])
        if (r["D"] == D) return r;
    throw std::out_of_range("D");
}

// Parse a mutated copy and return the error text, or "" if it parsed.
template <class F> std::string parse_error(F mutate) {
    json j = json::parse(db_text());
    mutate(j);
    try {
        parse_database(j.dump());
    } catch (const ParseError &e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("the shipped database loads with all thirty discriminants") {
    REQUIRE(db().records.size() == 30);
    for (long D : kDiscriminants) CHECK(db().at(D).D == D);
    CHECK_THROWS_AS(db().at(20), std::out_of_range);
    CHECK(db().at(5).ic_map.has_value());
    CHECK(db().at(5).twist_candidates.has_value());
    CHECK(db().at(8).points.size() == 16);
}

TEST_CASE("serialization round trips") {
    std::string once = serialize_database(db());
    Database again = parse_database(once);
    CHECK(serialize_database(again) == once);
    CHECK(serialize_record(again.at(21)) == serialize_record(db().at(21)));
}

TEST_CASE("malformed fields are reported with their path") {
    std::string e = parse_error([](json &j) { record(j, 5)["points"][0]["sextic"].erase(0); });
    CHECK(contains(e, "points[0].sextic"));
    e = parse_error([](json &j) { record(j, 8)["points"][2]["coords"][1] = "1/0"; });
    CHECK(contains(e, "points[2].coords"));
    e = parse_error([](json &j) { record(j, 5)["branch_components"][0]["meaning"] = "mystery"; });
    CHECK(contains(e, "branch_components[0].meaning"));
    e = parse_error([](json &j) { record(j, 5).erase("cover"); });
    CHECK(contains(e, "missing field 'cover'"));
    e = parse_error([](json &j) { j["schema_version"] = 99; });
    CHECK(contains(e, "schema_version"));
    e = parse_error([](json &j) { j["records"].erase(j["records"].begin()); });
    CHECK(contains(e, "database.records"));
    e = parse_error([](json &j) { j["records"][1]["D"] = j["records"][0]["D"]; });
    CHECK(contains(e, "duplicate D"));
    e = parse_error([](json &j) { record(j, 5)["cover"]["terms"][0][2] = "0"; });
    CHECK(contains(e, "zero coefficient"));
    CHECK_THROWS_AS(parse_database("{not json"), ParseError);
    CHECK(parse_error([](json &) {}).empty());
}

TEST_CASE("branch parametrizations annihilate their factors") {
    for (long D : {5L, 8L, 21L}) {
        for (const auto &b : verify_branch(db().at(D))) CHECK(b.ok);
    }
    const auto &comp = db().at(5).branch_components.at(0);
    Parametrization par = comp.parametrizations.at(0);
    CHECK(parametrization_annihilates(comp.factor, par));
    par.r_num = par.r_num + BiPoly::constant(1);
    CHECK_FALSE(parametrization_annihilates(comp.factor, par));
}

TEST_CASE("point rows verify for D = 5 and D = 8") {
    VerifyOptions opt;
    opt.threads = 2;
    auto reports = verify_database(db(), {5, 8}, opt);
    REQUIRE(reports.size() == 2);
    for (const auto &r : reports) {
        CHECK(r.rows_passed() == r.rows.size());
        CHECK(r.ok());
        for (const auto &row : r.rows) CHECK(row.ic_checked);
    }
    json j = json::parse(report_json(reports));
    CHECK(j["summary"].is_object());
    // A perturbed sextic no longer matches the invariants at its (r, s).
    HMSRecord bad = db().at(5);
    bad.points[0].sextic[0] += 1;
    RowReport rr = verify_point_row(bad, 0);
    CHECK(rr.square_ok);
    CHECK_FALSE(rr.ic_ok);
    CHECK_FALSE(rr.ok());
}

TEST_CASE("RM spot checks at good primes") {
    const HMSRecord &rec = db().at(5);
    int certified = 0;
    for (uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u}) {
        RMCheck c = rm_spot_check(rec, rec.points.at(0), p);
        if (!c.good) continue;
        CHECK(c.verdict.kind != RMVerdict::Kind::NoRM_evidence);
        certified += c.verdict.kind == RMVerdict::Kind::RM_over_Fp;
    }
    CHECK(certified > 0);
}

TEST_CASE("twist constants") {
    CHECK(twist_constants(5) == std::vector<long>{-10, -5, -2, -1, 1, 2, 5, 10});
    CHECK(twist_constants(8) == std::vector<long>{-2, -1, 1, 2});
    CHECK(twist_constants(21).size() == 16);
}

TEST_CASE("twist search for D = 5") {
    const HMSRecord &rec = db().at(5);
    std::map<uint32_t, InvariantTable> tables{{11, testing::cached_table(11)}, {13, testing::cached_table(13)}};
    TwistResult res = twist_search(rec, {11, 13}, tables);
    CHECK(res.candidates == 248);
    CHECK(res.certified_points > 0);
    TwistCandidate want{2, {4}};
    CHECK(std::find(res.survivors.begin(), res.survivors.end(), want) != res.survivors.end());
    CHECK(res.incomplete_separation == (res.survivors.size() > 1));
    TwistResult swapped = twist_search(rec, {13, 11}, tables);
    CHECK(swapped.survivors == res.survivors);
    CHECK(swapped.certified_points == res.certified_points);

    // A single small prime cannot separate the candidates.
    std::map<uint32_t, InvariantTable> t3{{3, build_invariant_table(3)}};
    TwistResult weak = twist_search(rec, {3}, t3);
    CHECK(weak.survivors.size() > 1);
    CHECK(weak.incomplete_separation);

    CHECK_THROWS_AS(twist_search(rec, {7}, tables), std::invalid_argument);
    CHECK_THROWS_AS(twist_search(rec, {5}, tables), std::invalid_argument);
    CHECK_THROWS_AS(twist_search(db().at(8), {11}, tables), std::invalid_argument);
    TwistOptions opt;
    opt.factor_indices = std::vector<int>{9};
    CHECK_THROWS_AS(twist_search(rec, {11}, tables, opt), std::invalid_argument);
}

TEST_CASE("default database path honours the environment") {
    setenv("HMSKIT_DB", "/tmp/elsewhere.json", 1);
    CHECK(default_database_path() == "/tmp/elsewhere.json");
    unsetenv("HMSKIT_DB");
    CHECK(default_database_path() == HMSKIT_DB_PATH);
}
