#include "seedbank/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seedbank {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtod(p, &end);
  return end != p && *end == '\0' && std::isfinite(out);
}

bool parse_int(const std::string& s, long long& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtoll(p, &end, 10);
  return end != p && *end == '\0';
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtoull(p, &end, 10);
  return end != p && *end == '\0';
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "on" || s == "1") {
    out = true;
    return true;
  }
  if (s == "false" || s == "off" || s == "0") {
    out = false;
    return true;
  }
  return false;
}

bool near_integer_ratio(double num, double den, long long& out) {
  const double r = num / den;
  out = std::llround(r);
  return std::fabs(r - static_cast<double>(out)) <= 1e-9 * std::max(1.0, std::fabs(r));
}

void check_time_grid(const std::string& prefix, double dt, double t_max, double dx,
                     std::vector<std::string>& errs) {
  if (!(dt > 0.0)) errs.push_back(prefix + "dt must be positive (got " + fmt_double(dt) + ")");
  if (!(t_max > 0.0)) errs.push_back(prefix + "t_max must be positive (got " + fmt_double(t_max) + ")");
  const double limit = 0.5 * dx * dx;
  if (dt > 0.0 && dt > limit * (1.0 + 1e-12)) {
    errs.push_back(prefix + "dt=" + fmt_double(dt) + " violates the stability bound dt <= dx^2/2 = " +
                   fmt_double(limit));
  }
  if (dt > 0.0 && t_max > 0.0) {
    long long k = 0;
    if (!near_integer_ratio(t_max, dt, k) || k < 1) {
      errs.push_back(prefix + "t_max/dt = " + fmt_double(t_max / dt) +
                     " must be a positive integer (within 1e-9)");
    }
  }
}

void check_grid(const std::string& prefix, const Grid1D& g, int min_points,
                std::vector<std::string>& errs) {
  if (!(g.dx > 0.0)) errs.push_back(prefix + "dx must be positive");
  if (!(g.x_min < g.x_max)) errs.push_back(prefix + "x_min must be below x_max");
  if (g.n < min_points) {
    errs.push_back(prefix + "grid needs at least " + std::to_string(min_points) + " points (got " +
                   std::to_string(g.n) + ")");
  }
  if (g.dx > 0.0 && g.x_min < g.x_max) {
    long long cells = 0;
    if (!near_integer_ratio(g.x_max - g.x_min, g.dx, cells) || cells + 1 != g.n) {
      errs.push_back(prefix + "grid n is inconsistent with (x_max - x_min)/dx");
    }
  }
}

}  // namespace

int SimConfig::steps() const { return static_cast<int>(std::llround(t_max / dt)); }
int PfdeConfig::steps() const { return static_cast<int>(std::llround(t_max / dt)); }

std::vector<std::string> SimConfig::validate() const {
  std::vector<std::string> errs;
  if (!(c >= 0.0)) errs.push_back("c must be nonnegative (got " + fmt_double(c) + ")");
  if (!(c_prime >= 0.0)) errs.push_back("c_prime must be nonnegative (got " + fmt_double(c_prime) + ")");
  check_grid("", grid, 5, errs);
  check_time_grid("", dt, t_max, grid.dx, errs);
  if (reps < 2) errs.push_back("reps must be at least 2 (got " + std::to_string(reps) + ")");
  if (jobs < 0) errs.push_back("jobs must be nonnegative (got " + std::to_string(jobs) + ")");
  if (snapshot_stride < 1) errs.push_back("snapshot_stride must be at least 1");
  return errs;
}

std::vector<std::string> PfdeConfig::validate() const {
  std::vector<std::string> errs;
  if (!(lambda >= 0.0)) errs.push_back("lambda must be nonnegative (got " + fmt_double(lambda) + ")");
  if (!(c >= 0.0)) errs.push_back("c must be nonnegative (got " + fmt_double(c) + ")");
  check_grid("pfde: ", grid, 3, errs);
  check_time_grid("pfde: ", dt, t_max, grid.dx, errs);
  // The forcing profile must sit well inside the domain so the reflecting
  // ends do not touch the region the verifiers inspect.
  if (!(b >= grid.x_min + 2.0 && b <= grid.x_max - 2.0)) {
    errs.push_back("pfde: b=" + fmt_double(b) + " must lie in [x_min+2, x_max-2]");
  }
  if (psi_shape != "poly_exp") errs.push_back("pfde: unknown psi_shape '" + psi_shape + "'");
  return errs;
}

std::vector<std::string> FkConfig::validate() const {
  std::vector<std::string> errs;
  if (!(dt_path > 0.0)) errs.push_back("fk: dt_path must be positive");
  return errs;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errs;
  if (!(allowance >= 0.0)) errs.push_back("experiment: allowance must be nonnegative");
  if (!(margin >= 0.0)) errs.push_back("experiment: margin must be nonnegative");
  if (!(edge_tol > 0.0 && edge_tol < 0.5)) errs.push_back("experiment: edge_tol must be in (0, 0.5)");
  return errs;
}

std::vector<std::string> AppConfig::validate() const {
  std::vector<std::string> errs = sim.validate();
  for (auto& e : pfde.validate()) errs.push_back(e);
  for (auto& e : fk.validate()) errs.push_back(e);
  for (auto& e : exp.validate()) errs.push_back(e);
  return errs;
}

ConfigLoad parse_config_text(const std::string& text) {
  ConfigLoad out;
  AppConfig& cfg = out.config;
  double x_min = cfg.sim.grid.x_min, x_max = cfg.sim.grid.x_max, dx = cfg.sim.grid.dx;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        out.errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "physics" && section != "grid" && section != "time" && section != "mc" &&
          section != "spde" && section != "pfde" && section != "fk" && section != "experiment") {
        out.errors.push_back("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const std::string qual = section.empty() ? key : section + "." + key;

    auto bad_value = [&](const char* type) {
      out.errors.push_back("line " + std::to_string(line_no) + ": expected " + std::string(type) +
                           " for " + qual + ", got '" + val + "'");
    };
    auto want_double = [&](double& slot) {
      double v;
      if (parse_double(val, v)) slot = v;
      else bad_value("number");
    };
    auto want_int = [&](int& slot) {
      long long v;
      if (parse_int(val, v)) slot = static_cast<int>(v);
      else bad_value("integer");
    };
    auto want_bool = [&](bool& slot) {
      bool v;
      if (parse_bool(val, v)) slot = v;
      else bad_value("boolean");
    };

    if (qual == "physics.c") want_double(cfg.sim.c);
    else if (qual == "physics.c_prime") want_double(cfg.sim.c_prime);
    else if (qual == "grid.x_min") want_double(x_min);
    else if (qual == "grid.x_max") want_double(x_max);
    else if (qual == "grid.dx") want_double(dx);
    else if (qual == "time.dt") want_double(cfg.sim.dt);
    else if (qual == "time.t_max") want_double(cfg.sim.t_max);
    else if (qual == "mc.reps") want_int(cfg.sim.reps);
    else if (qual == "mc.jobs") want_int(cfg.sim.jobs);
    else if (qual == "mc.seed") {
      std::uint64_t v;
      if (parse_u64(val, v)) cfg.sim.seed = v;
      else bad_value("unsigned integer");
    } else if (qual == "spde.noise_on") want_bool(cfg.sim.noise_on);
    else if (qual == "spde.snapshot_stride") want_int(cfg.sim.snapshot_stride);
    else if (qual == "pfde.lambda") want_double(cfg.pfde.lambda);
    else if (qual == "pfde.b") want_double(cfg.pfde.b);
    else if (qual == "pfde.psi_shape") cfg.pfde.psi_shape = val;
    else if (qual == "fk.dt_path") want_double(cfg.fk.dt_path);
    else if (qual == "experiment.allowance") want_double(cfg.exp.allowance);
    else if (qual == "experiment.margin") want_double(cfg.exp.margin);
    else if (qual == "experiment.edge_tol") want_double(cfg.exp.edge_tol);
    else out.errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + qual + "'");
  }

  try {
    cfg.sim.grid = Grid1D::make(x_min, x_max, dx);
  } catch (const std::invalid_argument& e) {
    out.errors.push_back(std::string(e.what()));
    cfg.sim.grid.x_min = x_min;
    cfg.sim.grid.x_max = x_max;
    cfg.sim.grid.dx = dx;
  }
  // The comparison system shares grid, clock, and exchange rate with the
  // stochastic simulation; only lambda, b, psi_shape are its own.
  cfg.pfde.grid = cfg.sim.grid;
  cfg.pfde.dt = cfg.sim.dt;
  cfg.pfde.t_max = cfg.sim.t_max;
  cfg.pfde.c = cfg.sim.c;

  for (auto& e : cfg.validate()) out.errors.push_back(e);
  return out;
}

ConfigLoad load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigLoad out;
    out.errors.push_back("cannot open config file: " + path);
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string save_config_text(const AppConfig& cfg) {
  std::ostringstream o;
  o << "[physics]\n";
  o << "c = " << fmt_double(cfg.sim.c) << "\n";
  o << "c_prime = " << fmt_double(cfg.sim.c_prime) << "\n\n";
  o << "[grid]\n";
  o << "x_min = " << fmt_double(cfg.sim.grid.x_min) << "\n";
  o << "x_max = " << fmt_double(cfg.sim.grid.x_max) << "\n";
  o << "dx = " << fmt_double(cfg.sim.grid.dx) << "\n\n";
  o << "[time]\n";
  o << "dt = " << fmt_double(cfg.sim.dt) << "\n";
  o << "t_max = " << fmt_double(cfg.sim.t_max) << "\n\n";
  o << "[mc]\n";
  o << "reps = " << cfg.sim.reps << "\n";
  o << "seed = " << cfg.sim.seed << "\n";
  o << "jobs = " << cfg.sim.jobs << "\n\n";
  o << "[spde]\n";
  o << "noise_on = " << (cfg.sim.noise_on ? "true" : "false") << "\n";
  o << "snapshot_stride = " << cfg.sim.snapshot_stride << "\n\n";
  o << "[pfde]\n";
  o << "lambda = " << fmt_double(cfg.pfde.lambda) << "\n";
  o << "b = " << fmt_double(cfg.pfde.b) << "\n";
  o << "psi_shape = " << cfg.pfde.psi_shape << "\n\n";
  o << "[fk]\n";
  o << "dt_path = " << fmt_double(cfg.fk.dt_path) << "\n\n";
  o << "[experiment]\n";
  o << "allowance = " << fmt_double(cfg.exp.allowance) << "\n";
  o << "margin = " << fmt_double(cfg.exp.margin) << "\n";
  o << "edge_tol = " << fmt_double(cfg.exp.edge_tol) << "\n";
  return o.str();
}

}  // namespace seedbank
