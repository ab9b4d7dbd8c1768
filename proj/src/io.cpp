#include "seedbank/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;

namespace seedbank::io {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const std::string& path) { fs::create_directories(path); }

std::vector<std::string> list_files_recursive(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out.push_back(fs::relative(entry.path(), dir).generic_string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// FIPS 180-4 SHA-256, block-at-a-time.
struct Sha256 {
  std::uint32_t h[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                        0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  unsigned char block[64];
  std::size_t block_len = 0;
  std::uint64_t total_bits = 0;

  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void process(const unsigned char* p) {
    static constexpr std::uint32_t k[64] = {
        0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u,
        0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u,
        0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u,
        0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau,
        0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
        0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu, 0x53380d13u,
        0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
        0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u,
        0x19a4c116u, 0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au,
        0x5b9cca4fu, 0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
        0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    }
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
    std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const unsigned char* data, std::size_t len) {
    total_bits += std::uint64_t(len) * 8;
    while (len > 0) {
      const std::size_t take = std::min(len, std::size_t(64) - block_len);
      std::memcpy(block + block_len, data, take);
      block_len += take;
      data += take;
      len -= take;
      if (block_len == 64) {
        process(block);
        block_len = 0;
      }
    }
  }

  std::string finish() {
    const std::uint64_t bits = total_bits;
    unsigned char pad = 0x80;
    update(&pad, 1);
    unsigned char zero = 0;
    while (block_len != 56) update(&zero, 1);
    unsigned char lenb[8];
    for (int i = 0; i < 8; ++i) lenb[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
    update(lenb, 8);
    char hex[65];
    for (int i = 0; i < 8; ++i) std::snprintf(hex + 8 * i, 9, "%08x", h[i]);
    return std::string(hex, 64);
  }
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 s;
  s.update(reinterpret_cast<const unsigned char*>(data.data()), data.size());
  return s.finish();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

std::string trajectory_csv(const SpdeTrajectory& traj) {
  std::string out = "t,x,u,v\n";
  const Grid1D& g = traj.grid;
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    for (int i = 0; i < g.n; ++i) {
      out += fmt_g17(traj.times[r]);
      out += ',';
      out += fmt_g17(g.point(i));
      out += ',';
      out += fmt_g17(traj.u[r][static_cast<std::size_t>(i)]);
      out += ',';
      out += fmt_g17(traj.v[r][static_cast<std::size_t>(i)]);
      out += '\n';
    }
  }
  return out;
}

std::string edges_csv(const EdgeSeries& es) {
  std::string out = "t,L_u,R_u,L_v,R_v\n";
  for (std::size_t r = 0; r < es.times.size(); ++r) {
    out += fmt_g17(es.times[r]);
    out += ',';
    out += fmt_g17(es.left_u[r]);
    out += ',';
    out += fmt_g17(es.right_u[r]);
    out += ',';
    out += fmt_g17(es.left_v[r]);
    out += ',';
    out += fmt_g17(es.right_v[r]);
    out += '\n';
  }
  return out;
}

std::string tail_csv(const TailCurve& tc) {
  std::string out = "b,p_hat,ci_lo,ci_hi\n";
  for (std::size_t i = 0; i < tc.levels.size(); ++i) {
    out += fmt_g17(tc.levels[i]);
    out += ',';
    out += fmt_g17(tc.p_hat[i]);
    out += ',';
    out += fmt_g17(tc.ci_lo[i]);
    out += ',';
    out += fmt_g17(tc.ci_hi[i]);
    out += '\n';
  }
  return out;
}

std::string duality_csv(const std::vector<DualityReport>& rows) {
  std::string out = "spec,t,spde_mean,spde_se,dual_mean,dual_se,z\n";
  for (const auto& r : rows) {
    out += '"';
    out += r.spec.label();
    out += "\",";
    out += fmt_g17(r.t);
    out += ',';
    out += fmt_g17(r.spde.mean);
    out += ',';
    out += fmt_g17(r.spde.se);
    out += ',';
    out += fmt_g17(r.dual.mean);
    out += ',';
    out += fmt_g17(r.dual.se);
    out += ',';
    out += fmt_g17(r.z);
    out += '\n';
  }
  return out;
}

std::string symmetry_csv(const SymmetryReport& rep) {
  std::string out = "x,mean,se,z\n";
  for (const auto& p : rep.points) {
    out += fmt_g17(p.x);
    out += ',';
    out += fmt_g17(p.y.mean);
    out += ',';
    out += fmt_g17(p.y.se);
    out += ',';
    out += fmt_g17(p.z);
    out += '\n';
  }
  return out;
}

void write_manifest(const std::string& dir, const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = m.tool.empty() ? std::string("seedbank ") + kToolVersion : m.tool;
  j["config"] = m.config_text;
  j["config_sha256"] = sha256_hex(m.config_text);
  j["base_seed"] = m.base_seed;
  j["replicates"] = m.replicates;
  j["seed_rule"] = m.seed_rule;
  j["replicate_seeds"] = m.replicate_seeds;
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["wall_seconds"] = m.wall_seconds;
  j["dt"] = m.dt;
  j["dx"] = m.dx;
  j["stability_ok"] = m.stability_ok;

  nlohmann::json files = nlohmann::json::object();
  for (const auto& rel : list_files_recursive(dir)) {
    if (rel == "manifest.json") continue;
    const std::string bytes = read_text_file((fs::path(dir) / rel).string());
    files[rel] = {{"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}};
  }
  j["files"] = files;
  write_text_file((fs::path(dir) / "manifest.json").string(), j.dump(2) + "\n");
}

}  // namespace seedbank::io
