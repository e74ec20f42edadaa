#include <cstdlib>

#include <gtest/gtest.h>

#include "cliquelist/config.hpp"
#include "cliquelist/generators.hpp"
#include "cliquelist/pipeline.hpp"
#include "cliquelist/report.hpp"

using namespace cliquelist;

TEST(Config, SetGetAndUnknownKeys) {
  Config cfg;
  cfg.set("light_factor", 100);
  EXPECT_DOUBLE_EQ(cfg.get("light_factor"), 100.0);
  cfg.set("message_words", 4);
  EXPECT_DOUBLE_EQ(cfg.get("message_words"), 4.0);
  EXPECT_THROW(cfg.set("nope", 1), ConfigError);
  EXPECT_THROW(cfg.set("heavy_factor", 0), ConfigError);
}

TEST(Config, JsonRoundTripAndValidation) {
  Config a;
  a.set("fake_edge_factor", 3.5);
  Config b;
  b.apply_json(a.to_json());
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_THROW(b.apply_json(nlohmann::json::array()), ConfigError);
  EXPECT_THROW(b.apply_json({{"heavy_factor", "x"}}), ConfigError);
  EXPECT_NO_THROW(Config{}.validate());
}

TEST(Config, EnvOverridesFile) {
  Config cfg;
  cfg.apply_json({{"broadcast_cap", 2.0}});
  ::setenv("CLIQUELIST_BROADCAST_CAP", "9", 1);
  cfg.apply_env();
  ::unsetenv("CLIQUELIST_BROADCAST_CAP");
  EXPECT_DOUBLE_EQ(cfg.broadcast_cap, 9.0);
}

TEST(Config, DerivedDefaults) {
  Config cfg;
  EXPECT_DOUBLE_EQ(cfg.routing_factor(256), 64.0);
  EXPECT_DOUBLE_EQ(cfg.phi_min_for(256), 1.0 / 32.0);
  EXPECT_EQ(ceil_log2(1), 1u);
  EXPECT_EQ(ceil_log2(9), 4u);
  EXPECT_DOUBLE_EQ(log2n(1), 1.0);
}

TEST(Report, CliquesJson) {
  CliqueSet s{Clique({3, 1, 2}), Clique({0, 1, 2})};
  normalize(s);
  auto back = cliques_from_json(cliques_to_json(s));
  EXPECT_EQ(back, s);
  auto messy = cliques_from_json(nlohmann::json::parse("[[2,1,0],[0,1,2],[5,4,3]]"));
  EXPECT_EQ(messy.size(), 2u);
}

TEST(Report, RunReportSchema) {
  Config cfg;
  auto r = congest_list_kp(complete_graph(12), 4, 1, cfg);
  auto j = r.to_json(cfg);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["clique_count"], 495);
  EXPECT_EQ(j["config"], cfg.to_json());
  EXPECT_EQ(j["rounds_total"], r.accounting.total_rounds());
  EXPECT_FALSE(r.to_json(cfg, false).contains("cliques"));
  auto csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "phase,outer,inner,rounds,messages,max_load,budget");
}

TEST(Report, CcReport) {
  Config cfg;
  auto r = cc_list_kp(complete_graph(8), 3, 1, cfg);
  auto j = cc_report(r, 8, 1, cfg);
  EXPECT_EQ(j["mode"], "cc");
  EXPECT_EQ(j["clique_count"], 56);
  EXPECT_EQ(j["cliques"].size(), 56u);
}
