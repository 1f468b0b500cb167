#include "doctest.h"
#include "k3fib/report.hpp"

#include <algorithm>
#include <random>

using namespace k3fib;

TEST_CASE("canonical numbers") {
    CHECK(json_int(Int(42)).is_number_integer());
    CHECK(json_int(Int("9223372036854775807")).is_number_integer());
    Json big = json_int(Int("9223372036854775808"));
    REQUIRE(big.is_string());
    CHECK(big.get<std::string>() == "9223372036854775808");
    CHECK(json_int(Int("-9223372036854775809")).get<std::string>() == "-9223372036854775809");
    CHECK(json_rat(Rat(4, 6)).get<std::string>() == "2/3");
    CHECK(json_rat(Rat(-4, 3)).get<std::string>() == "-4/3");
    CHECK(json_rat(Rat(6, 3)).get<std::string>() == "2");
}

TEST_CASE("canonical dump sorts keys and ends with a newline") {
    Json j;
    j["zeta"] = 1;
    j["alpha"] = Json{{"b", 2}, {"a", 1}};
    std::string s = canonical_dump(j);
    CHECK(s.find("\"alpha\"") < s.find("\"zeta\""));
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(s.back() == '\n');
    CHECK(canonical_dump(Json::parse(s)) == s);
}

TEST_CASE("report status") {
    Report r;
    r.command = "x";
    CHECK(r.to_json().at("status") == "ok");
    r.note("something");
    CHECK(r.to_json().at("status") == "finding");
    r.status = Status::Error;
    r.note("more");
    CHECK(r.to_json().at("status") == "error");
    CHECK(r.to_json().at("diagnostics").size() == 2);
}

TEST_CASE("lattice JSON form") {
    Json j = Json::parse(R"({"sum":[{"sym":"U","rep":1},{"sym":"U","scale":3},{"sym":"A","n":2,"rep":3}]})");
    CHECK(lattice_spec_from_json(j) == "U+U(3)+A2^3");
    CHECK(lattice_spec_from_json(Json::parse(R"({"sum":[{"sym":"A","n":2,"scale":-1,"rep":1}]})")) == "A2(-1)");
    CHECK_THROWS_AS(lattice_spec_from_json(Json::parse("{}")), Error);
    Json d = disc_payload(parse_lattice_spec("U+U(3)"));
    CHECK(d.at("group") == Json::parse("[3,3]"));
    CHECK(d.at("q") == Json::parse(R"(["2/3","4/3"])"));
}

TEST_CASE("golden diff matches rows by id") {
    Json a = Json::parse(R"({"rows":[{"row_id":"1.1","ade":"E6"},{"row_id":"1.2","ade":"A2"}],"k":1})");
    CHECK(golden_diff(a, a).empty());
    // order of keyed rows does not matter
    Json b = Json::parse(R"({"rows":[{"row_id":"1.2","ade":"A2"},{"row_id":"1.1","ade":"E6"}],"k":1})");
    CHECK(golden_diff(a, b).empty());
    Json c = Json::parse(R"({"rows":[{"row_id":"1.1","ade":"E7"},{"row_id":"1.3","ade":"A2"}],"k":2})");
    auto d = golden_diff(a, c);
    REQUIRE(d.size() == 4);
    CHECK(d[0] == "/k: expected 1, got 2");
    CHECK(d[1] == "row 1.1/ade: expected \"E6\", got \"E7\"");
    CHECK(d[2] == "row 1.2: missing");
    CHECK(d[3] == "row 1.3: unexpected");
    // unkeyed arrays compare positionally
    CHECK(golden_diff(Json::parse("[1,2]"), Json::parse("[2,1]")).size() == 2);
    CHECK_THROWS_AS(read_json_file("/nonexistent/golden.json"), Error);
}

TEST_CASE("reports are deterministic") {
    CHECK(canonical_dump(kns_report(10).to_json()) == canonical_dump(kns_report(10).to_json()));
    CHECK(canonical_dump(x3_report().to_json()) == canonical_dump(x3_report().to_json()));
}

TEST_CASE("block 10 report") {
    Report r = kns_report(10);
    CHECK(r.status == Status::Ok);
    CHECK(r.payload.at("rows").size() == 6);
    std::string md = kns_markdown(r);
    CHECK(md.find("| 10.6 | E6+D7+A11 | E6<E6 | D7+A11 | D7+A11 | Z/4 |") != std::string::npos);
    CHECK(md.find("| 10.3 | E7^2+D10 | E6<E7 | (-6)+E7+D10 | E7+D10 | Z+Z/2 |") != std::string::npos);
}

TEST_CASE("blocks with published discrepancies are findings") {
    Report one = kns_report(1);
    CHECK(one.status == Status::Finding);
    CHECK(one.diagnostics.size() == 2);
    Report eight = kns_report(8);
    REQUIRE(eight.diagnostics.size() == 1);
    CHECK(eight.diagnostics[0] == "row 8.7 MW torsion: computed Z/2, published 0");
}

TEST_CASE("tabulated complement audit") {
    std::size_t tabulated = 0, findings = 0;
    for (const auto& row : tabulated_complements()) {
        CAPTURE(row.id());
        ComplementAudit a = audit_complement(row);
        CHECK(a.match());
        if (a.printed_det) {
            ++tabulated;
            // every tabulated Gram is either isometric or breaks the index identity
            CHECK(a.printed_isometric != !a.printed_identity);
        }
        if (a.finding()) ++findings;
    }
    CHECK(tabulated == 14);
    CHECK(findings == 3);
    ComplementAudit d7 = audit_complement(tabulated_complements()[11]);
    CHECK(d7.row.id() == "D7:A2^2");
    CHECK(d7.det == 36);
    CHECK(*d7.printed_det == 44);
}

TEST_CASE("isometry search recovers a random change of basis") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 5), coef(-2, 2);
    IMat g = parse_lattice_spec("A2+D4").gram;
    for (int trial = 0; trial < 20; ++trial) {
        IMat u = identity(6);
        for (int s = 0; s < 12; ++s) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            int c = coef(rng);
            for (int k = 0; k < 6; ++k) u[i][k] += c * u[j][k];
        }
        IMat h = gram_of(u, g);
        auto iso = find_isometry(g, h);
        REQUIRE(iso.has_value());
        CHECK(gram_of(*iso, g) == h);
        Int d = det(*iso);
        CHECK((d == 1 || d == -1));
    }
    CHECK_FALSE(find_isometry(parse_lattice_spec("A2+D4").gram, parse_lattice_spec("A5+A1").gram).has_value());
}

TEST_CASE("complement table golden with the tabulated D7 Gram differs only in that row") {
    Json golden = read_json_file(std::string(K3FIB_DATA_DIR) + "/tests/golden/complement_table.json");
    Json actual = complement_table_report().to_json();
    CHECK(golden_diff(golden, actual).empty());
    for (auto& row : golden.at("payload").at("rows"))
        if (row.at("row_id") == "D7:A2^2") {
            row["gram"] = row.at("tabulated_gram").at("gram");
            row["det"] = row.at("tabulated_gram").at("det");
        }
    auto d = golden_diff(golden, actual);
    REQUIRE(d.size() >= 2);
    CHECK(std::find(d.begin(), d.end(), "row D7:A2^2/det: expected 44, got 36") != d.end());
    for (const auto& line : d) CHECK(line.rfind("row D7:A2^2/", 0) == 0);
}
