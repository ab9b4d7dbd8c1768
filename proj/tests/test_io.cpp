#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "seedbank/config.hpp"
#include "seedbank/io.hpp"

using namespace seedbank;

TEST_CASE("seventeen-digit formatting round-trips every double") {
  for (double v : {0.1, 1.0 / 3.0, 1e300, 5e-324, -0.0, 2.5, -17.25,
                   std::numeric_limits<double>::max()}) {
    const std::string s = io::fmt_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(io::fmt_g17(0.5) == "0.5");
  CHECK(io::fmt_g17(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::fmt_g17(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("hash implementation matches the published vectors") {
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  CHECK(io::sha256_hex(std::string(1000000, 'a')) ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("timestamps are compact UTC") {
  const std::string ts = io::iso8601_utc_now();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}

TEST_CASE("field snapshot table renders exactly") {
  SpdeTrajectory traj;
  traj.grid = Grid1D::make(-1.0, 1.0, 0.5);
  traj.dt = 0.5;
  traj.times = {0.0};
  traj.u = {{1.0, 1.0, 1.0, 0.5, 0.0}};
  traj.v = {{1.0, 1.0, 1.0, 0.25, 0.0}};
  CHECK(io::trajectory_csv(traj) ==
        "t,x,u,v\n"
        "0,-1,1,1\n"
        "0,-0.5,1,1\n"
        "0,0,1,1\n"
        "0,0.5,0.5,0.25\n"
        "0,1,0,0\n");
}

TEST_CASE("edge series table renders exactly") {
  EdgeSeries es;
  es.times = {0.0, 0.5};
  es.left_u = {0.25, -0.5};
  es.right_u = {0.0, 0.75};
  es.left_v = {0.25, 0.25};
  es.right_v = {0.0, 0.0};
  CHECK(io::edges_csv(es) ==
        "t,L_u,R_u,L_v,R_v\n"
        "0,0.25,0,0.25,0\n"
        "0.5,-0.5,0.75,0.25,0\n");
  EdgeSeries inf_es;
  inf_es.times = {0.0};
  inf_es.left_u = {kPlusInf};
  inf_es.right_u = {kMinusInf};
  inf_es.left_v = {0.0};
  inf_es.right_v = {0.0};
  CHECK(io::edges_csv(inf_es) == "t,L_u,R_u,L_v,R_v\n0,inf,-inf,0,0\n");
}

TEST_CASE("tail and symmetry tables render exactly") {
  TailCurve tc;
  tc.levels = {0.5, 1.0};
  tc.p_hat = {0.75, 0.25};
  tc.ci_lo = {0.5, 0.125};
  tc.ci_hi = {1.0, 0.5};
  tc.reps = 16;
  CHECK(io::tail_csv(tc) ==
        "b,p_hat,ci_lo,ci_hi\n"
        "0.5,0.75,0.5,1\n"
        "1,0.25,0.125,0.5\n");

  SymmetryReport rep;
  rep.t = 1.0;
  SymmetryPoint pt;
  pt.x = 0.5;
  pt.y = McEstimate{-0.125, 0.25, 100};
  pt.z = -0.5;
  rep.points = {pt};
  CHECK(io::symmetry_csv(rep) == "x,mean,se,z\n0.5,-0.125,0.25,-0.5\n");
}

TEST_CASE("comparison table quotes the moment label") {
  DualityReport r;
  r.spec.points = {WalkerStart{0.0, Marker::active}, WalkerStart{0.5, Marker::dormant}};
  r.t = 0.25;
  r.spde = McEstimate{0.5, 0.125, 10};
  r.dual = McEstimate{0.5, 0.25, 10};
  r.gap = 0.0;
  r.se = 0.279508497187474;
  r.z = 0.0;
  CHECK(io::duality_csv({r}) ==
        "spec,t,spde_mean,spde_se,dual_mean,dual_se,z\n"
        "\"0:a,0.5:d\",0.25,0.5,0.125,0.5,0.25,0\n");
}

TEST_CASE("text files and directory listings round-trip") {
  namespace fs = std::filesystem;
  const std::string root = "io_test_tmp";
  fs::remove_all(root);
  io::ensure_dir(root + "/a/c");
  const std::string payload = "line one\nline two\n\xc3\xa9\n";
  io::write_text_file(root + "/top.txt", payload);
  io::write_text_file(root + "/a/b.txt", "b");
  io::write_text_file(root + "/a/c/d.txt", "d");
  CHECK(io::read_text_file(root + "/top.txt") == payload);
  const std::vector<std::string> expect{"a/b.txt", "a/c/d.txt", "top.txt"};
  CHECK(io::list_files_recursive(root) == expect);
  CHECK_THROWS(io::read_text_file(root + "/missing.txt"));
  fs::remove_all(root);
}

TEST_CASE("the run manifest inventories every result file except itself") {
  namespace fs = std::filesystem;
  const std::string dir = "io_manifest_tmp";
  fs::remove_all(dir);
  io::ensure_dir(dir);
  io::write_text_file(dir + "/data.csv", "x\n1\n");

  io::RunManifest m;
  m.config_text = save_config_text(AppConfig{});
  m.base_seed = 7;
  m.replicates = 3;
  m.replicate_seeds = {7, 8, 9};
  m.started_utc = io::iso8601_utc_now();
  m.finished_utc = m.started_utc;
  m.wall_seconds = 0.25;
  m.dt = 0.004;
  m.dx = 0.1;
  m.stability_ok = true;
  io::write_manifest(dir, m);

  auto j = nlohmann::json::parse(io::read_text_file(dir + "/manifest.json"));
  CHECK(j["tool"] == std::string("seedbank ") + io::kToolVersion);
  CHECK(j["config"] == m.config_text);
  CHECK(j["config_sha256"] == io::sha256_hex(m.config_text));
  CHECK(j["base_seed"] == 7);
  CHECK(j["replicates"] == 3);
  CHECK(j["seed_rule"] == "replicate_seed = base_seed + replicate_index");
  CHECK(j["replicate_seeds"] == nlohmann::json({7, 8, 9}));
  CHECK(j["stability_ok"] == true);
  REQUIRE(j["files"].contains("data.csv"));
  CHECK(j["files"]["data.csv"]["bytes"] == 4);
  CHECK(j["files"]["data.csv"]["sha256"] == io::sha256_hex("x\n1\n"));
  CHECK_FALSE(j["files"].contains("manifest.json"));

  // A rewrite after more files appear re-inventories them and still skips itself.
  io::write_text_file(dir + "/extra.csv", "y\n");
  io::write_manifest(dir, m);
  j = nlohmann::json::parse(io::read_text_file(dir + "/manifest.json"));
  CHECK(j["files"].contains("data.csv"));
  CHECK(j["files"].contains("extra.csv"));
  CHECK_FALSE(j["files"].contains("manifest.json"));

  // The embedded config text parses back to the configuration it came from.
  const ConfigLoad echo = parse_config_text(j["config"].get<std::string>());
  CHECK(echo.ok());
  CHECK(echo.config == AppConfig{});
  fs::remove_all(dir);
}
