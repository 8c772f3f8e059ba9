#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "liq/config.hpp"
#include "liq/market_model.hpp"

namespace {

// Writes `text` to a unique temp file and removes it on scope exit.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path = std::string("liq_test_cfg_") + std::to_string(counter++) + ".tmp";
    std::ofstream out(path, std::ios::binary);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("empty config leaves every parameter at its default") {
  TempFile f("");
  liq::ImpactParams p;
  liq::apply_config_file(p, f.path);
  liq::ImpactParams d;
  CHECK(p.eta == d.eta);
  CHECK(p.nu == d.nu);
  CHECK(p.gamma == d.gamma);
  CHECK(p.sigma == d.sigma);
  CHECK(p.phi == d.phi);
  CHECK(p.T == d.T);
  CHECK(p.Q == d.Q);
  CHECK(p.s0 == d.s0);
}

TEST_CASE("config assignments, comments and whitespace") {
  TempFile f(
      "# liquidation run\n"
      "\n"
      "  phi = 0.25   # terminal penalty\n"
      "Q=50\n"
      "\tsigma\t=\t0.4\n");
  auto kv = liq::parse_key_value_file(f.path);
  CHECK(kv.size() == 3);
  CHECK(kv.at("phi") == 0.25);
  CHECK(kv.at("Q") == 50.0);
  CHECK(kv.at("sigma") == 0.4);

  liq::ImpactParams p;
  liq::apply_config_file(p, f.path);
  CHECK(p.phi == 0.25);
  CHECK(p.Q == 50.0);
  CHECK(p.sigma == 0.4);
  CHECK(p.eta == liq::ImpactParams{}.eta);
}

TEST_CASE("config errors name the offending token") {
  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(liq::parse_key_value_file("no_such_file.cfg"),
                         doctest::Contains("no_such_file.cfg"),
                         std::invalid_argument);
  }
  SUBCASE("unknown key") {
    TempFile f("bogus = 1\n");
    liq::ImpactParams p;
    CHECK_THROWS_WITH_AS(liq::apply_config_file(p, f.path),
                         doctest::Contains("bogus"), std::invalid_argument);
  }
  SUBCASE("unparsable number carries the line") {
    TempFile f("phi = 0.1\nsigma = abc\n");
    CHECK_THROWS_WITH_AS(liq::parse_key_value_file(f.path),
                         doctest::Contains("line 2"), std::invalid_argument);
  }
  SUBCASE("missing equals sign") {
    TempFile f("phi 0.1\n");
    CHECK_THROWS_AS(liq::parse_key_value_file(f.path), std::invalid_argument);
  }
  SUBCASE("trailing junk after the number") {
    TempFile f("phi = 0.1x\n");
    CHECK_THROWS_AS(liq::parse_key_value_file(f.path), std::invalid_argument);
  }
}

TEST_CASE("impact key recognition") {
  for (const char* k : {"eta", "nu", "gamma", "sigma", "phi", "T", "Q", "s0"}) {
    CHECK(liq::is_impact_key(k));
  }
  CHECK_FALSE(liq::is_impact_key("lambda"));
  CHECK_FALSE(liq::is_impact_key("ETA"));
  liq::ImpactParams p;
  CHECK_THROWS_AS(liq::apply_impact_key(p, "lambda", 1.0),
                  std::invalid_argument);
}

TEST_CASE("hazard table loading") {
  SUBCASE("with header and comments") {
    TempFile f("t,l\n# ramp\n0,1\n1,2\n");
    auto hz = liq::load_hazard_table(f.path);
    CHECK_FALSE(hz.is_constant());
    CHECK(hz.rate(0.5) == doctest::Approx(1.5));
    CHECK(hz.cumulative(0.5) == doctest::Approx(0.625).epsilon(1e-14));
  }
  SUBCASE("without header") {
    TempFile f("0,1\n2,1\n");
    auto hz = liq::load_hazard_table(f.path);
    CHECK(hz.rate(1.0) == doctest::Approx(1.0));
  }
  SUBCASE("non-increasing time names the row") {
    TempFile f("0,1\n0,2\n");
    CHECK_THROWS_WITH_AS(liq::load_hazard_table(f.path),
                         doctest::Contains("row 2"), std::invalid_argument);
  }
  SUBCASE("negative rate rejected") {
    TempFile f("0,1\n1,-2\n");
    CHECK_THROWS_AS(liq::load_hazard_table(f.path), std::invalid_argument);
  }
  SUBCASE("missing comma rejected") {
    TempFile f("0 1\n");
    CHECK_THROWS_AS(liq::load_hazard_table(f.path), std::invalid_argument);
  }
  SUBCASE("empty table rejected") {
    TempFile f("# nothing\n");
    CHECK_THROWS_AS(liq::load_hazard_table(f.path), std::invalid_argument);
  }
}

TEST_CASE("csv number formatting uses 12 significant digits") {
  CHECK(liq::format_sig(0.1) == "0.1");
  CHECK(liq::format_sig(1.0 / 3.0) == "0.333333333333");
  CHECK(liq::format_sig(123456.789) == "123456.789");
  CHECK(liq::format_sig(0.0) == "0");
}
