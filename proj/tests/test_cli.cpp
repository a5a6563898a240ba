#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = apsq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count command") {
  auto r = cli({"count", "--n", "4", "--k", "2", "--p", "7", "--stable"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["command"] == "count");
  CHECK(j["result"]["count"] == 16);
  CHECK(j["result"]["method"] == "fiber-formula");
  CHECK(!j.contains("elapsed_ms"));

  auto r2 = cli({"count", "--n", "4", "--k", "2", "--p", "7"});
  CHECK(json::parse(r2.out).contains("elapsed_ms"));
}

TEST_CASE("deterministic output") {
  std::vector<std::string> args{"gonality", "--n", "5", "--stable"};
  auto a = cli(args);
  auto b = cli(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"lower_bound\": 4") != std::string::npos);

  // --threads never changes result fields.
  auto t1 = cli({"count", "--n", "4", "--p", "11", "--stable", "--threads", "1"});
  auto t4 = cli({"count", "--n", "4", "--p", "11", "--stable", "--threads", "4"});
  CHECK(json::parse(t1.out)["result"] == json::parse(t4.out)["result"]);
}

TEST_CASE("conic command") {
  auto r = cli({"conic", "1", "1", "-3", "--stable"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["result"]["solvable"] == false);

  auto s = cli({"conic", "1", "-2", "1", "--stable"});
  auto js = json::parse(s.out);
  CHECK(js["result"]["solvable"] == true);
  CHECK(js["result"]["witness"].is_array());
}

TEST_CASE("five-square-fields emits D = 409") {
  auto r = cli({"five-square-fields", "--bound", "10", "--stable"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  bool found = false;
  for (const auto& row : j["result"]["rows"]) {
    if (row["m"] == 2 && row["n"] == 3) {
      found = true;
      CHECK(row["D"] == 409);
      CHECK(row["spec"]["a"] == 49);
      CHECK(row["spec"]["r"] == 120);
    }
  }
  CHECK(found);
  bool has409 = false;
  for (const auto& d : j["result"]["fields"])
    if (d == 409) has409 = true;
  CHECK(has409);
}

TEST_CASE("count-sweep CSV") {
  auto r = cli({"count-sweep", "--n", "2", "3", "--k", "2", "--p", "5", "7", "--stable"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,p,m,count,genus,hw_ok\n", 0) == 0);
  CHECK(r.out.find("3,2,5,1,8,1,1") != std::string::npos);
}

TEST_CASE("ec over the rationals and quadratic fields") {
  auto add = cli({"ec", "--op", "add", "--P=-1:1:1:1", "--Q=1:-1:1:1", "--stable"});
  auto ja = json::parse(add.out);
  // [-1:1:-1:1] with the positive-lead canonical representative.
  CHECK(ja["result"]["point"] == "[1:-1:1:-1]");

  auto neg = cli({"ec", "--op", "neg", "--D", "73", "--P", "1:5:7:sqrt(73)", "--stable"});
  CHECK(json::parse(neg.out)["result"]["point"] == "[sqrt(73):7:5:1]");

  auto gal = cli({"ec", "--op", "galois", "--D", "73", "--P", "1:5:7:sqrt(73)", "--stable"});
  auto jg = json::parse(gal.out);
  CHECK(jg["result"]["case"] == "Case2");
  CHECK(jg["result"]["phi"][0] == 1);
  CHECK(jg["result"]["phi"][1] == 24);

  auto ord = cli({"ec", "--op", "order", "--P", "1:-1:-1:1", "--stable"});
  CHECK(json::parse(ord.out)["result"]["order"] == 2);

  auto fp = cli({"ec", "--op", "mul", "--p", "11", "--scalar", "2", "--P=-1:1:1:1",
                 "--stable"});
  CHECK(json::parse(fp.out)["result"]["point"].get<std::string>().size() > 0);
}

TEST_CASE("big integers serialize as decimal strings") {
  auto bad = cli({"qf-is-square", "--D", "5", "--u", "12x34", "--stable"});
  CHECK(bad.code != 0);  // malformed number is rejected, not misparsed

  // (2^53 + 1)^2 still squares exactly.
  auto big = cli({"qf-is-square", "--D", "5", "--u", "81129638414606699710187514626049",
                  "--stable"});
  auto j = json::parse(big.out);
  CHECK(j["result"]["square"] == true);
  CHECK(j["result"]["root"] == "9007199254740993");

  // Integer fields switch to decimal strings at |v| >= 2^53: genus(60)
  // = 57 * 2^58 + 1 is far past the threshold, genus(10) is not.
  auto g60 = cli({"genus", "--n", "60", "--stable"});
  auto jg = json::parse(g60.out);
  CHECK(jg["result"]["genus"].is_string());
  CHECK(jg["result"]["genus"] == "16429131440647569409");
  auto g10 = cli({"genus", "--n", "10", "--stable"});
  CHECK(json::parse(g10.out)["result"]["genus"] == 1793);
}

TEST_CASE("exit codes") {
  CHECK(cli({"definitely-not-a-command"}).code == 2);
  CHECK(cli({"count", "--n", "3"}).code == 2);           // missing --p
  CHECK(cli({"count", "--n", "3", "--p", "4"}).code == 2);  // composite p
  auto rl = cli({"count", "--n", "3", "--k", "2", "--p", "67108879"});
  CHECK(rl.code == 4);  // q > 2^26
  CHECK(rl.err.find("resource-limit") != std::string::npos);
}

TEST_CASE("weierstrass and torsion commands") {
  auto j = cli({"weierstrass", "--roots", "0,1,-3", "--op", "j", "--stable"});
  CHECK(json::parse(j.out)["result"]["j"] == "35152/9");

  auto t = cli({"torsion", "--roots", "0,1,-3", "--stable"});
  auto jt = json::parse(t.out);
  CHECK(jt["result"]["order"] == 8);
  CHECK(jt["result"]["structure"][0] == 2);
  CHECK(jt["result"]["structure"][1] == 4);

  auto d = cli({"descent", "--roots", "0,-2,-6", "--stable"});
  auto jd = json::parse(d.out);
  CHECK(jd["result"]["rank_upper_bound"] == 1);
  CHECK(jd["result"]["selmer_pairs"].size() == 8);
}

TEST_CASE("search-run and classify") {
  auto s = cli({"search-run", "--A", "600", "--R", "200", "--D", "409", "--stable"});
  auto js = json::parse(s.out);
  CHECK(js["result"]["best"] == 5);

  auto c = cli({"classify", "--a", "49", "--r", "120", "--D", "409", "--length", "6",
                "--stable"});
  auto jc = json::parse(c.out);
  CHECK(jc["result"]["run_length"] == 5);
  CHECK(jc["result"]["tags"][3] == "D-times-square");
  CHECK(jc["result"]["tags"][5] == "non-square");
}
