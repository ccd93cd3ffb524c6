#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "confining/serialize.hpp"

using namespace confining;

TEST_SUITE("serialize") {

TEST_CASE("seventeen digits round-trip doubles exactly") {
    for (double v : {std::numbers::pi, 1.0 / 3.0, 1e-300, -2.5e17, 0.1 + 0.2}) {
        std::string s = fmt17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(fmt17(0.25) == "0.25");
    CHECK(fmt17(2.0) == "2");
}

TEST_CASE("csv table renders a fixed layout") {
    CsvTable t;
    t.header = {"a", "b"};
    t.row({"1", "x"});
    t.row({"2", "y"});
    CHECK(t.str() == "a,b\n1,x\n2,y\n");
    CHECK_THROWS_AS(t.row({"only-one"}), std::logic_error);
}

TEST_CASE("domain reports serialize with their parameters") {
    nlohmann::json j = to_json(Domain::annulus(1.0, 3.0));
    CHECK(j.at("shape") == "annulus");
    CHECK(j.at("params").at("r") == 1.0);
    CHECK(j.at("params").at("R") == 3.0);
    nlohmann::json e = to_json(Domain::ellipse(2.0, 1.0));
    CHECK(e.at("shape") == "ellipse");
    CHECK(e.at("params").at("a") == 2.0);
}

TEST_CASE("tail exponents serialize numerically") {
    TailExponent t;
    t.valid = true;
    t.sigma = -0.5;
    t.gamma = {-1.0, 0.0};
    t.rms = 1e-9;
    nlohmann::json j = to_json(t);
    CHECK(j.at("sigma") == -0.5);
    CHECK(j.at("gamma").size() == 2);
    CHECK(j.at("gamma")[0] == -1.0);
}

TEST_CASE("write_text hits the requested path") {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                       "/confining_serialize_test.txt";
    write_text("line one\n", path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "line one\n");
    std::remove(path.c_str());
}

}  // TEST_SUITE
