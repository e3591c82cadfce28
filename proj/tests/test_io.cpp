#include <sstream>

#include <gtest/gtest.h>

#include "rwrs/io.hpp"

using namespace rwrs;

TEST(Io, HeaderIsVersioned) {
  const auto h = csv_header({"batch", 7, nlohmann::json{{"n", 4}}});
  EXPECT_EQ(h, "# rwrs-lab csv v1 kind=batch seed=7 config={\"n\":4}\n");
}

TEST(Io, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Io, ProfileAndAlphaCsv) {
  WalkPath p;
  p.positions = {0, 1, 0, 1};
  const auto profile = local_time(p);
  std::ostringstream a;
  write_profile_csv(a, profile, {"profile", 1, {}});
  EXPECT_EQ(a.str().substr(a.str().find('\n') + 1), "site,count\n0,2\n1,2\n");
  std::ostringstream b;
  write_alpha_csv(b, self_intersection_table(profile), {"alpha", 1, {}});
  EXPECT_EQ(b.str().substr(b.str().find('\n') + 1), "lag,alpha\n-1,4\n0,8\n1,4\n");
}

TEST(Io, BatchCsvAndSummary) {
  RwrsConfig c;
  c.n = 64;
  c.times = {0.5, 1.0};
  c.replicates = 5;
  const auto batch = simulate_rwrs(c);
  std::ostringstream out;
  write_batch_csv(out, batch, {"batch", c.seed, {}});
  std::istringstream in(out.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2u + 10u);
  const auto s = batch_summary(batch);
  EXPECT_EQ(s["per_t"].size(), 2u);
  EXPECT_TRUE(s["per_t"][0]["quantiles"].contains("q50"));
}
