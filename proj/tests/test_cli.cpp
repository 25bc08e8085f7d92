#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kbg/cli/acceptance.hpp"
#include "kbg/cli/config.hpp"
#include "kbg/cli/driver.hpp"
#include "kbg/errors.hpp"

using nlohmann::json;
using namespace kbg;
using namespace kbg::cli;

namespace {

struct Run {
  int status = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  args.insert(args.begin(), "kbg");
  std::ostringstream out, err;
  Run r;
  r.status = dispatch(args, out, err, [&env](const char* k) -> const char* {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("kbg_test_" + name)).string(); }

std::string data(const std::string& name) { return std::string(KBG_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("bsigma prints 1 and writes a certificate") {
  auto path = tmp_path("bsigma5.json");
  auto r = run({"flags", "bsigma", "--n", "5", "--certificate", path});
  CHECK(r.status == 0);
  CHECK(r.out == "1\ncertificate: " + path + "\n");
  auto v = run({"flags", "validate", "--certificate", path, "--json"});
  CHECK(v.status == 0);
  CHECK(json::parse(v.out)["valid"] == true);
  CHECK(json::parse(v.out)["value"] == "1");
}

TEST_CASE("verify-sympow on a point") {
  auto r = run({"count", "verify-sympow", "--expr", "pt", "--n", "3", "--q", "5"});
  CHECK(r.status == 0);
  CHECK(r.out.find("lhs = 125\nrhs = 125") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
  auto j = json::parse(run({"count", "verify-sympow", "--expr", "pt", "--n", "3", "--q", "5", "--json"}).out);
  CHECK(j["identity_holds"] == true);
  CHECK(j["scaling_holds"] == true);
}

TEST_CASE("symmetric power counts") {
  auto j = json::parse(run({"count", "sym", "--expr", "A1+pt", "--q", "3", "--N", "3", "--json"}).out);
  // sigma^k(A^1 + pt) = sum_{i <= k} A^i
  CHECK(j["counts"] == json::array({4, 13, 40}));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"nosuch"}).status == 2);
  CHECK(run({"flags"}).status == 2);
  CHECK(run({"flags", "bsigma"}).status == 2);
  CHECK(run({"flags", "enumerate", "--n", "x"}).status == 2);
  CHECK(run({"count", "verify-sympow"}).status == 2);
  CHECK(run({"--format", "xml", "config"}).status == 2);
  CHECK(run({"--set", "nokey=1", "config"}).status == 2);
  CHECK(run({"config"}, {{"KBG_MAX_GROUP_ORDER", "0"}}).status == 2);
  auto r = run({"flags"});
  CHECK(json::parse(r.err.substr(0, r.err.find('\n')))["error"] == "UsageError");
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("computation failures exit 1 with a structured diagnostic") {
  auto r = run({"count", "sym", "--expr", "pt", "--q", "6"});
  CHECK(r.status == 1);
  auto d = json::parse(r.err);
  CHECK(d["error"] == "InvalidQ");
  CHECK(d["message"].get<std::string>().find("6") != std::string::npos);
  CHECK(json::parse(run({"kring", "witt-inverse", "--f", "L+2"}).err)["error"] == "NotInS");
  CHECK(json::parse(run({"kring", "show", "--expr", "L+("}).err)["error"] == "ParseError");
  CHECK(json::parse(run({"cyclo", "hminus", "--m", "500"}).err)["error"] == "SizeLimit");
  CHECK(json::parse(run({"cyclo", "units", "--n", "5", "--unit", "1+x"}).err)["error"] == "NotAUnit");
  CHECK(json::parse(run({"b0", "--group", "nonsense"}).err)["error"] == "InvalidArgument");
  // a failed check is also status 1, but without a diagnostic
  auto s = run({"reps", "swan", "--n", "4", "--basis", "[[1,-1],[2,2]]"});
  CHECK(s.status == 1);
  CHECK(s.err.empty());
}

TEST_CASE("limits from config file, environment and --set") {
  auto cfg_path = tmp_path("limits.conf");
  std::ofstream(cfg_path) << "# limits\nflags_max_n = 4\nmax_series_order=6\n";
  CHECK(run({"--config", cfg_path, "flags", "enumerate", "--n", "5"}).status == 1);
  CHECK(run({"--config", cfg_path, "flags", "enumerate", "--n", "4"}).status == 0);
  CHECK(run({"--config", cfg_path, "kring", "witt-inverse", "--f", "L", "--order", "7"}).status == 1);
  // environment overrides the file, --set overrides the environment
  CHECK(run({"--config", cfg_path, "flags", "enumerate", "--n", "5"}, {{"KBG_FLAGS_MAX_N", "5"}}).status == 0);
  CHECK(run({"--config", cfg_path, "--set", "flags_max_n=3", "flags", "enumerate", "--n", "4"}, {{"KBG_FLAGS_MAX_N", "5"}}).status == 1);
  auto j = json::parse(run({"--json", "config"}, {{"KBG_MAX_GROUP_ORDER", "32"}}).out);
  CHECK(j["max_group_order"] == 32);
  CHECK(json::parse(run({"b0", "--group", "S4"}, {{"KBG_MAX_GROUP_ORDER", "12"}}).err)["error"] == "SizeLimit");

  RunConfig c;
  CHECK_THROWS_AS(c.set("threads", "-1"), InvalidArgument);
  CHECK_THROWS_AS(c.set("seed", "12x"), InvalidArgument);
  CHECK_THROWS_AS(c.load_file("/nonexistent/kbg.conf"), InvalidArgument);
  auto bad = tmp_path("bad.conf");
  std::ofstream(bad) << "flags_max_n\n";
  CHECK_THROWS_AS(c.load_file(bad), ParseError);
}

TEST_CASE("b0 on named groups and files") {
  auto j = json::parse(run({"b0", "--group", "C2xC2", "--json"}).out);
  CHECK(j["h2"] == json::array({2}));
  CHECK(j["b0"] == json::array());
  CHECK(!j.contains("witness"));
  auto both = json::parse(run({"b0", "--group", "Q8", "--method", "both", "--json"}).out);
  CHECK(both["methods_agree"] == true);
  CHECK(both["h2"] == json::array());
  auto w = run({"b0", "--group", data("b0_order64.json")});
  CHECK(w.status == 1);
  CHECK(json::parse(w.err)["error"] == "SizeLimit");
  auto slow = json::parse(run({"b0", "--group", data("b0_order64.json"), "--slow-64", "--method", "both", "--json"}).out);
  CHECK(slow["b0"] == json::array({2}));
  CHECK(slow["hopf"]["b0"] == json::array({2}));
  CHECK(slow["witness"].size() == 64 * 64);
}

TEST_CASE("cyclotomic commands") {
  auto j = json::parse(run({"cyclo", "hminus", "--m", "23", "--json"}).out);
  CHECK(j["h_minus"] == "3");
  CHECK(run({"cyclo", "hminus", "--m", "47"}).out == "h-(Q(zeta_47)) = 695\n");
  auto u = json::parse(run({"cyclo", "units", "--n", "5", "--json"}).out);
  CHECK(u["cokernel"] == json::array({3}));
  auto v = json::parse(run({"cyclo", "units", "--n", "5", "--unit", "x^3+x^2-1", "--json"}).out);
  CHECK(v["surjective"] == true);
  CHECK(v["inverses"] == json::array({"x^4+x-1"}));
}

TEST_CASE("kring, reps and toric commands") {
  CHECK(run({"kring", "show", "--expr", "(L^3-1)/(L-1)", "--q", "2"}).out == "L^2+L+1\nat L = 2: 7\n");
  auto w = json::parse(run({"kring", "witt-inverse", "--f", "L-1", "--order", "4", "--json"}).out);
  CHECK(w["check"] == true);
  CHECK(w["inverse"].size() == 5);
  auto s = json::parse(run({"reps", "snf", "--matrix", "[[2,4],[6,8]]", "--json"}).out);
  CHECK(s["diagonal"] == json::array({2, 4}));
  // top exterior power of the permutation character is the sign
  CHECK(run({"reps", "lambda", "--group", "S3", "--i", "3"}).out == "chi = (3, 1, 0)\nlambda^3 chi = (1, -1, 1)\n");
  CHECK(run({"reps", "swan", "--n", "4", "--basis", "[[1,1],[2,-2]]"}).status == 0);
  CHECK(run({"toric", "ns-check", "--fan", "twisted4"}).status == 0);
  CHECK(run({"toric", "validate", "--fan", "broken-P2"}).status == 1);
  CHECK(run({"toric", "babelian", "--module", "z4-inversion", "--gens", "1;3"}).status == 0);
  auto fan_path = tmp_path("p1.json");
  std::ofstream(fan_path) << R"({"rank": 1, "rays": [[1], [-1]], "cones": [[0], [1]], "generators": []})";
  CHECK(run({"toric", "validate", "--fan", fan_path}).status == 0);
  CHECK(json::parse(run({"toric", "list", "--json"}).out).size() == 29);
}

TEST_CASE("identical inputs and seeds give identical reports") {
  std::vector<std::vector<std::string>> cmds{{"--json", "count", "verify-sympow", "--random", "6", "--seed", "11"},
                                             {"--json", "b0", "--group", "D8"},
                                             {"--json", "flags", "enumerate", "--n", "4"},
                                             {"--json", "cyclo", "hminus", "--m", "39"},
                                             {"--json", "toric", "chow", "--fan", "P2:symmetric"}};
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
  auto s11 = run({"--json", "count", "verify-sympow", "--random", "6", "--seed", "11"}).out;
  auto s12 = run({"--json", "count", "verify-sympow", "--random", "6", "--seed", "12"}).out;
  CHECK(s11 != s12);
  CHECK(json::parse(s11)["seed"] == 11);
  // JSON reports round-trip
  CHECK(json::parse(s11).dump(2) + "\n" == s11);
}

TEST_CASE("verify-all reports every criterion") {
  auto r = run({"--json", "verify-all"});
  auto j = json::parse(r.out);
  REQUIRE(j["criteria"].size() == acceptance::kCriteria);
  bool all = true;
  for (const auto& c : j["criteria"]) {
    all = all && c["status"] == "PASS";
    CHECK(!c.contains("seconds"));
  }
  CHECK(j["all_pass"] == all);
  CHECK(r.status == (all ? 0 : 1));
  CHECK(run({"--json", "verify-all"}).out == r.out);
}

TEST_CASE("installed binary") {
  const char* bin = std::getenv("KBG_CLI");
  if (!bin) {
    MESSAGE("KBG_CLI not set; skipping subprocess checks");
    return;
  }
  auto sh = [&](const std::string& args, int& status) {
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    int raw = pclose(p);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
  };
  int st = -1;
  CHECK(sh("count verify-sympow --expr pt --n 3 --q 5", st).find("PASS") != std::string::npos);
  CHECK(st == 0);
  sh("flags", st);
  CHECK(st == 2);
  sh("count sym --expr pt --q 6", st);
  CHECK(st == 1);
  auto cert = tmp_path("bsigma3.json");
  CHECK(sh("flags bsigma --n 3 --certificate " + cert, st) == "1\ncertificate: " + cert + "\n");
  CHECK(st == 0);
}
