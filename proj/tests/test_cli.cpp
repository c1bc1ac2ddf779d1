#include "doctest.h"

#include "bufshuf/cli.hpp"
#include "bufshuf/core.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using bufshuf::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bufshuf_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("simulate CSV has a fixed header and one row per round") {
  const Result r = invoke({"simulate", "--n", "256", "--k", "16", "--honest", "16", "--fake", "0", "--rounds", "6",
                           "--trials", "2000", "--seed", "7", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == "round,mean_phi,stderr,predicted_phi,z_score");
  for (std::size_t t = 1; t < rows.size(); ++t) CHECK(rows[t].rfind(std::to_string(t - 1) + ",", 0) == 0);
}

TEST_CASE("simulate with one server reaches zero after one round") {
  const Result r = invoke({"simulate", "--n", "16", "--k", "16", "--honest", "1", "--rounds", "1", "--trials", "10",
                           "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("rows").at(1).at("mean_phi").get<double>() == 0.0);
  CHECK(doc.at("verdict").at("pass").get<bool>());
  CHECK(doc.at("config").at("m").get<int>() == 1);
}

TEST_CASE("simulate JSON carries the binomial comparison value") {
  const Result r = invoke({"simulate", "--n", "16", "--k", "4", "--assignment", "binomial", "--rounds", "2",
                           "--trials", "50", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("rate_name") == "rate_binomial_corrected");
  CHECK(doc.at("verdict").contains("rate_binomial_as_printed"));
  CHECK(doc.at("config").at("assignment") == "binomial");
}

TEST_CASE("configuration errors exit 2 with a diagnostic") {
  const Result div = invoke({"simulate", "--n", "4", "--k", "5"});
  CHECK(div.code == bufshuf::cli::kExitConfig);
  CHECK(div.err.find("does not divide") != std::string::npos);
  CHECK(div.err.find("k=5") != std::string::npos);

  CHECK(invoke({"simulate", "--n", "4", "--k", "2", "--fake", "3"}).code == 2);
  CHECK(invoke({"simulate", "--n", "4", "--k", "2", "--format", "xml"}).code == 2);
  CHECK(invoke({"simulate", "--n", "four", "--k", "2"}).code == 2);
  CHECK(invoke({"simulate", "--k", "2"}).code == 2);
  CHECK(invoke({"simulate", "--n", "4", "--k", "2", "--bogus"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("strict mode passes a sound run through") {
  const Result r = invoke({"simulate", "--n", "8", "--k", "2", "--rounds", "4", "--trials", "2000", "--strict"});
  CHECK(r.code == 0);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args{"simulate", "--n", "64", "--k", "8", "--honest", "5", "--fake", "2",
                                      "--rounds", "5", "--trials", "300", "--seed", "11", "--format", "json"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto threaded = args;
  threaded.insert(threaded.end(), {"--workers", "4"});
  CHECK(invoke(threaded).out == a.out);

  const auto p1 = scratch("det1.csv"), p2 = scratch("det2.csv");
  auto to_file = [&](const std::filesystem::path& p) {
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", p.string()});
    return invoke(with_out).code;
  };
  REQUIRE(to_file(p1) == 0);
  REQUIRE(to_file(p2) == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1) == a.out);
}

TEST_CASE("config file values are overridden by flags") {
  const auto path = scratch("experiment.cfg");
  {
    std::ofstream cfg(path);
    cfg << "# small run\nn = 16\nk = 4\ns = 2\nrounds = 3\ntrials = 20\nseed = 5\n";
  }
  const Result from_file = invoke({"simulate", "--config", path.string(), "--format", "json"});
  REQUIRE(from_file.code == 0);
  const json a = json::parse(from_file.out);
  CHECK(a.at("config").at("s") == 2);
  CHECK(a.at("config").at("rounds") == 3);
  CHECK(a.at("rows").size() == 4);

  const Result overridden = invoke({"simulate", "--config", path.string(), "--rounds", "5", "--honest", "4",
                                    "--format", "json"});
  REQUIRE(overridden.code == 0);
  const json b = json::parse(overridden.out);
  CHECK(b.at("config").at("s") == 4);
  CHECK(b.at("config").at("rounds") == 5);
  CHECK(b.at("config").at("seed") == 5);

  CHECK(invoke({"simulate", "--config", scratch("missing.cfg").string()}).code == 2);
}

TEST_CASE("config document grammar") {
  const auto values = bufshuf::cli::parse_config_document("n=8\n  k = 2  # pairs\n\n# nothing\nassignment=binomial\n");
  CHECK(values.at("n") == "8");
  CHECK(values.at("k") == "2");
  CHECK(values.at("assignment") == "binomial");
  CHECK_THROWS_AS(bufshuf::cli::parse_config_document("colour = red\n"), bufshuf::ConfigError);
  CHECK_THROWS_AS(bufshuf::cli::parse_config_document("n = 4\nn = 6\n"), bufshuf::ConfigError);
  CHECK_THROWS_AS(bufshuf::cli::parse_config_document("just words\n"), bufshuf::ConfigError);
  CHECK(bufshuf::cli::split_list("") == std::vector<std::string>{});
  CHECK(bufshuf::cli::split_list(" 4, 6 ,8") == std::vector<std::string>{"4", "6", "8"});
}

TEST_CASE("verify-rates: empty grid") {
  const Result r = invoke({"verify-rates", "--n", ""});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);
}

TEST_CASE("verify-rates: f = 0 grid verifies every printed formula") {
  const Result r = invoke({"verify-rates", "--n", "4,6,8", "--k", "2,half", "--honest", "all", "--fake", "0",
                           "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  std::size_t checked = 0;
  for (const auto& row : doc.at("rows")) {
    if (!row.at("applicable").get<bool>()) continue;
    CAPTURE(row.dump());
    CHECK(row.at("verified").get<bool>());
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("verify-rates: one marked card among four") {
  const Result r = invoke({"verify-rates", "--n", "4", "--k", "2", "--honest", "2", "--fake", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  bool saw_printed = false, saw_derived = false;
  for (const auto& row : doc.at("rows")) {
    CHECK(row.at("oracle_value") == "1/2");
    if (row.at("name") == "rate_fake_paper") {
      saw_printed = true;
      CHECK(row.at("value_exact") == "1/4");
      CHECK_FALSE(row.at("verified").get<bool>());
    }
    if (row.at("name") == "rate_fake_derived") {
      saw_derived = true;
      CHECK(row.at("value_exact") == "1/2");
      CHECK(row.at("verified").get<bool>());
      CHECK(row.at("value_float").get<double>() == 0.5);
    }
  }
  CHECK(saw_printed);
  CHECK(saw_derived);
}

TEST_CASE("verify-rates: bad grids are configuration errors") {
  CHECK(invoke({"verify-rates", "--n", "4,x"}).code == 2);
  CHECK(invoke({"verify-rates", "--k", "third"}).code == 2);
}

TEST_CASE("sweep examples") {
  const Result base = invoke({"sweep", "--n", "256", "--k", "16", "--honest", "M", "--fake", "0", "--b", "1"});
  REQUIRE(base.code == 0);
  auto rows = lines(base.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "n,k,m,s,f,b,rate_name,rate,rounds_for_target,markov_rounds");
  CHECK(rows[1].rfind("256,16,16,16,0,1,rate_corrupt_servers,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 4) == ",2,4");

  const Result b2 = invoke({"sweep", "--n", "256", "--k", "sqrt", "--b", "2", "--format", "json"});
  REQUIRE(b2.code == 0);
  const json doc = json::parse(b2.out);
  CHECK(doc.at("rows").at(0).at("markov_rounds") == 8);

  // Nine honest servers of sixteen give a rate just above one half.
  const Result half = invoke({"sweep", "--n", "256", "--k", "16", "--honest", "9", "--format", "json"});
  REQUIRE(half.code == 0);
  const json h = json::parse(half.out);
  CHECK(h.at("rows").at(0).at("rate").get<double>() >= 0.5);
  CHECK(h.at("rows").at(0).at("rounds_for_target") == 8);

  const Result frozen = invoke({"sweep", "--n", "16", "--k", "4", "--honest", "0"});
  CHECK(lines(frozen.out).at(1).substr(lines(frozen.out).at(1).size() - 8) == ",inf,inf");

  CHECK(invoke({"sweep", "--n", "256", "--b", "0.5"}).code == 2);
  CHECK(invoke({"sweep", "--n", "a..b"}).code == 2);
  CHECK(invoke({"sweep", "--honest", "most"}).code == 2);
}

TEST_CASE("trace emits every metric per round") {
  const Result csv = invoke({"trace", "--n", "16", "--k", "4", "--rounds", "3", "--seed", "2"});
  REQUIRE(csv.code == 0);
  const auto rows = lines(csv.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "round,phi,alpha,beta,anon_prime,anon,rel_entropy_bits,k_support");
  CHECK(rows[1].rfind("0,0.9375,0.9375,0.9375,1,1,4,1", 0) == 0);

  const Result js = invoke({"trace", "--n", "16", "--k", "4", "--rounds", "3", "--seed", "2", "--format", "json"});
  const json doc = json::parse(js.out);
  CHECK(doc.at("rows").size() == 4);
  CHECK(doc.at("rows").at(0).at("k_support") == 1);
}
