#include "sysk/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

using namespace sysk;
using sysk::io::json;

namespace {

json config(const std::string& name) { return io::read_json_file(std::string(SYSK_CONFIG_DIR) + "/" + name); }

}  // namespace

TEST_CASE("every shipped config passes") {
  for (const auto& entry : std::filesystem::directory_iterator(SYSK_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().filename().string());
    auto out = cli::run(io::read_json_file(entry.path().string()));
    CHECK(out.exit_code == 0);
    CHECK(out.report.at("passed").get<bool>());
  }
}

TEST_CASE("counterexample report") {
  auto out = cli::run(config("counterexamples.json"));
  REQUIRE(out.exit_code == 0);
  const json& d = out.report.at("data");
  CHECK(d.at("L") == "Z/2");
  CHECK(d.at("tau_L") == "0");
  CHECK(d.at("rho_surjective") == false);
  CHECK(d.at("bijective_over_K") == true);
  CHECK_FALSE(d.at("witness").get<std::string>().empty());
}

TEST_CASE("kzero-window report") {
  auto out = cli::run(config("kzero_window_f2t.json"));
  REQUIRE(out.exit_code == 0);
  CHECK(out.report.at("data").at("group").at("rank") == 3);
  CHECK(out.report.at("data").at("oracle").at("classes").get<std::size_t>() > 0);

  auto empty = cli::run(config("kzero_window_empty.json"));
  CHECK(empty.exit_code == 0);
  CHECK(empty.report.at("data").at("group").at("rank") == 0);
}

TEST_CASE("reports are deterministic up to timings") {
  for (const char* name : {"kzero_window_f2t.json", "verify_identities_z4t.json", "split_demo_f2t.json"}) {
    json c = config(name);
    auto a = cli::run(c, 99);
    auto b = cli::run(c, 99);
    CHECK(cli::without_timings(a.report).dump() == cli::without_timings(b.report).dump());
    CHECK(a.report.at("seed") == 99);
  }
}

TEST_CASE("config errors exit with 2") {
  CHECK(cli::run(json::array()).exit_code == 2);
  CHECK(cli::run(json{{"command", "nope"}}).exit_code == 2);

  json c = config("kzero_window_f2t.json");
  c.erase("window");
  CHECK(cli::run(c).exit_code == 2);

  json d = config("kzero_window_f2t.json");
  d["ring"]["kind"] = "mystery";
  auto out = cli::run(d);
  CHECK(out.exit_code == 2);
  CHECK(out.report.at("error") == "config");

  json e = config("kzero_window_f2t.json");
  e["ring"]["rule"] = "sideways";
  CHECK(cli::run(e).exit_code == 2);
}

TEST_CASE("failed expectations and algebra errors exit with 1") {
  json c = config("kzero_window_f2t.json");
  c["expect"]["rank"] = 4;
  auto out = cli::run(c);
  CHECK(out.exit_code == 1);
  CHECK(out.report.at("passed") == false);
  CHECK(out.report.at("counts").at("failed") == 1);

  // a Laurent ring has homs against the slot order
  json d = config("kzero_window_f2t.json");
  d["ring"].erase("support_cone");
  d.erase("oracle");
  auto err = cli::run(d);
  CHECK(err.exit_code == 1);
  CHECK(err.report.at("error").at("kind") == "SupportViolation");
}

TEST_CASE("human summary") {
  auto out = cli::run(config("counterexamples.json"));
  std::string text = cli::human(out.report);
  CHECK(text.find("PASS") != std::string::npos);
  auto bad = cli::run(json{{"command", "nope"}});
  CHECK(cli::human(bad.report).find("config error") == 0);
}
