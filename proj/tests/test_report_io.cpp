#include "ggm/error.hpp"
#include "ggm/report_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace ggm;

TEST_SUITE("report_io") {

TEST_CASE("CSV parsing") {
    std::istringstream in("\xEF\xBB\xBF" "a,\"b c\",d\r\n1,2.5,-3e-2\r\n\n4,5,6\n");
    const Dataset d = read_csv(in);
    CHECK(d.names == std::vector<std::string>{"a", "b c", "d"});
    CHECK(d.n() == 2);
    CHECK(d.values(0, 2) == -0.03);
    CHECK(d.values(1, 0) == 4.0);
}

TEST_CASE("CSV errors name the line") {
    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_WITH_AS(read_csv(ragged), doctest::Contains("line 3"), Error);
    std::istringstream bad("a,b\n1,x\n");
    CHECK_THROWS_WITH_AS(read_csv(bad), doctest::Contains("line 2, column 2"), Error);
    std::istringstream nan("a,b\n1,nan\n");
    CHECK_THROWS_AS(read_csv(nan), Error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), Error);
    CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), Error);
}

TEST_CASE("CSV round trip is exact") {
    Rng rng(1);
    PrecisionModel m = identity_graph(3);
    Dataset d = sample_mvn(m, 20, rng);
    d.names[1] = "odd,name";
    std::ostringstream out;
    write_csv(out, d);
    std::istringstream in(out.str());
    const Dataset back = read_csv(in);
    CHECK(back.names == d.names);
    CHECK(back.values == d.values);
}

TEST_CASE("edge lists") {
    const std::vector<std::string> names{"X1", "X2", "gene", "X4"};
    const EdgeSet e = parse_edges("p:1, p:2;gene:X1\n 2:3", names);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == Edge{3, 0});
    CHECK(e[1] == Edge{3, 1});
    CHECK(e[2] == Edge{2, 0});
    CHECK(e[3] == Edge{2, 1});
    CHECK_THROWS_WITH_AS(parse_edges("1:1", names), doctest::Contains("self-loop not a valid edge"), Error);
    CHECK_THROWS_WITH_AS(parse_edges("X1:foo", names), doctest::Contains("'foo'"), Error);
    CHECK_THROWS_AS(parse_edges("1:9", names), Error);
    CHECK_THROWS_AS(parse_edges("1-2", names), Error);
    CHECK_THROWS_AS(parse_edges(" , ", names), Error);
}

TEST_CASE("report JSON echoes the configuration") {
    Rng rng(2);
    const Dataset d = sample_mvn(identity_graph(5), 80, rng);
    InferenceConfig cfg;
    cfg.bootstrap_B = 100;
    const TestReport r = test_edges(d, {Edge::of(4, 0), Edge::of(4, 1)}, cfg, {RegionSpec::two_sided()}, Rng(9));
    const nlohmann::json j = to_json(r, d.names);
    CHECK(j["schema"] == 1);
    CHECK(j["d"] == 2);
    CHECK(j["seed"] == 9);
    CHECK(j["config"]["bootstrap_B"] == 100);
    CHECK(j["config"]["d_total"] == 2);
    CHECK(j["edges"][0]["j"] == 5);
    CHECK(j["edges"][0]["name_k"] == "X1");
    CHECK(j["reject"] == r.reject());
    CHECK(j["regions"][0]["kind"] == "two_sided_sup");
}

TEST_CASE("simulation CSV layout") {
    SimConfig cfg;
    cfg.design = Design::independent;
    cfg.p = 5;
    cfg.n = 60;
    cfg.replications = 3;
    cfg.bootstrap_B = 50;
    cfg.solvers = {Solver::lasso};
    cfg.regions = {1};
    const SimResult r = acceptance_table(cfg);
    std::ostringstream out;
    write_sim_csv_header(out);
    write_sim_csv_rows(out, r);
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "design,p,d,solver,region,S,exp,K,rate,se,l");
    CHECK(row.rfind("independent,5,10,lasso,I,1,1,1,", 0) == 0);
    CHECK(to_json(r)["cells"].size() == 1);
}

}
