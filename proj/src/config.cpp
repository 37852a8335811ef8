#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "errors.hpp"

namespace volkit {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

IniFile IniFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

IniFile IniFile::parse_text(const std::string& text, std::string origin) {
  IniFile ini;
  ini.origin_ = std::move(origin);
  std::istringstream in(text);
  std::string line;
  std::string section;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = ini.origin_ + ":" + std::to_string(line_no);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto& sec = ini.values_[section];
    if (sec.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    sec[key] = {value, false};
  }
  return ini;
}

std::optional<std::string> IniFile::take(const std::string& section,
                                         const std::string& key) {
  auto sec = values_.find(section);
  if (sec == values_.end()) return std::nullopt;
  auto it = sec->second.find(key);
  if (it == sec->second.end()) return std::nullopt;
  it->second.second = true;
  return it->second.first;
}

std::vector<std::string> IniFile::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [section, keys] : values_)
    for (const auto& [key, value] : keys)
      if (!value.second)
        out.push_back(section.empty() ? key : section + "." + key);
  return out;
}

namespace {

class Reader {
 public:
  Reader(IniFile& ini, std::string section) : ini_(ini), section_(std::move(section)) {}

  void string(const std::string& key, std::string& out) {
    if (auto v = ini_.take(section_, key)) out = *v;
  }

  void number(const std::string& key, double& out) {
    if (auto v = ini_.take(section_, key)) {
      if (!csv::parse_double(*v, out)) bad(key, *v);
    }
  }

  void count(const std::string& key, size_t& out) {
    if (auto v = ini_.take(section_, key)) {
      unsigned long long parsed = 0;
      if (!parse_ull(*v, parsed)) bad(key, *v);
      out = static_cast<size_t>(parsed);
    }
  }

  void integer(const std::string& key, int& out) {
    if (auto v = ini_.take(section_, key)) {
      double d = 0;
      if (!csv::parse_double(*v, d) || d != static_cast<int>(d)) bad(key, *v);
      out = static_cast<int>(d);
    }
  }

  void u64(const std::string& key, uint64_t& out) {
    if (auto v = ini_.take(section_, key)) {
      unsigned long long parsed = 0;
      if (!parse_ull(*v, parsed)) bad(key, *v);
      out = parsed;
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (auto v = ini_.take(section_, key)) {
      if (*v == "true" || *v == "1")
        out = true;
      else if (*v == "false" || *v == "0")
        out = false;
      else
        bad(key, *v);
    }
  }

  void number_list(const std::string& key, std::vector<double>& out) {
    if (auto v = ini_.take(section_, key)) {
      out.clear();
      for (const auto& part : csv::split(*v, ',')) {
        double d = 0;
        if (!csv::parse_double(part, d)) bad(key, *v);
        out.push_back(d);
      }
    }
  }

  void count_list(const std::string& key, std::vector<size_t>& out) {
    if (auto v = ini_.take(section_, key)) {
      out.clear();
      for (const auto& part : csv::split(*v, ',')) {
        unsigned long long parsed = 0;
        if (!parse_ull(trim_copy(part), parsed)) bad(key, *v);
        out.push_back(static_cast<size_t>(parsed));
      }
    }
  }

  void string_list(const std::string& key, std::vector<std::string>& out) {
    if (auto v = ini_.take(section_, key)) {
      out.clear();
      for (const auto& part : csv::split(*v, ',')) out.push_back(trim_copy(part));
    }
  }

  std::optional<std::string> raw(const std::string& key) { return ini_.take(section_, key); }

 private:
  static std::string trim_copy(std::string_view s) { return trim(s); }

  static bool parse_ull(std::string_view s, unsigned long long& out) {
    const std::string t = trim(s);
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc() && res.ptr == t.data() + t.size();
  }

  [[noreturn]] void bad(const std::string& key, const std::string& value) {
    throw ConfigError(ini_.origin() + ": bad value for " +
                      (section_.empty() ? key : section_ + "." + key) + ": '" + value +
                      "'");
  }

  IniFile& ini_;
  std::string section_;
};

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
  return from_ini(IniFile::load(path));
}

RunConfig RunConfig::from_ini(IniFile ini) {
  RunConfig cfg;

  Reader top(ini, "");
  top.u64("seed", cfg.seed);
  top.string("out_dir", cfg.out_dir);

  Reader data(ini, "data");
  data.string("daily_csv", cfg.data.daily_csv);
  data.string("intraday_csv", cfg.data.intraday_csv);
  data.string("label", cfg.data.label);
  if (auto v = data.raw("sessions")) cfg.data.sessions = SessionCalendar::parse(*v);

  Reader synth(ini, "synth");
  synth.string("kind", cfg.synth.kind);
  synth.count("n_days", cfg.synth.n_days);
  if (auto v = synth.raw("start_date")) {
    auto d = Date::parse(*v);
    if (!d) throw ConfigError(ini.origin() + ": bad synth.start_date '" + *v + "'");
    cfg.synth.start = *d;
  }
  synth.number("mu", cfg.synth.sv.mu);
  synth.number("phi", cfg.synth.sv.phi);
  synth.number("sigma_eta_sq", cfg.synth.sv.sigma_eta_sq);
  synth.number("omega", cfg.synth.garch.omega);
  synth.number("alpha", cfg.synth.garch.alpha);
  synth.number("beta", cfg.synth.garch.beta);
  synth.boolean("with_intraday", cfg.synth.with_intraday);
  synth.integer("tick_interval_sec", cfg.synth.tick_interval_sec);
  synth.number("noise_std", cfg.synth.noise_std);
  synth.number("overnight_share", cfg.synth.overnight_share);
  synth.number("day_variance", cfg.synth.day_variance);

  Reader sv(ini, "sv");
  sv.count("n_burn", cfg.sv.n_burn);
  sv.count("n_keep", cfg.sv.n_keep);
  sv.number("prior_sigma_shape", cfg.sv.priors.sigma_shape);
  sv.number("prior_sigma_scale", cfg.sv.priors.sigma_scale);
  sv.count_list("h_trace_days", cfg.sv.h_trace_days);

  Reader hmc(ini, "hmc");
  hmc.number("step_size", cfg.hmc.step_size);
  hmc.integer("n_steps", cfg.hmc.n_steps);
  hmc.number("target_accept", cfg.hmc.target_accept);
  hmc.boolean("tune", cfg.hmc.tune);
  hmc.number("trajectory_length", cfg.hmc.trajectory_length);
  if (auto v = hmc.raw("seed")) {
    unsigned long long parsed = 0;
    auto res = std::from_chars(v->data(), v->data() + v->size(), parsed);
    if (res.ec != std::errc() || res.ptr != v->data() + v->size())
      throw ConfigError(ini.origin() + ": bad value for hmc.seed: '" + *v + "'");
    cfg.hmc_seed = parsed;
  }

  Reader garch(ini, "garch");
  garch.count("n_burn", cfg.garch.n_burn);
  garch.count("n_keep", cfg.garch.n_keep);

  Reader rv(ini, "rv");
  rv.number_list("deltas", cfg.rv.deltas_min);

  Reader eval(ini, "eval");
  eval.number_list("deltas", cfg.eval.deltas_min);
  eval.string_list("models", cfg.eval.models);

  const auto leftovers = ini.unconsumed();
  if (!leftovers.empty()) {
    std::string msg = ini.origin() + ": unknown config keys:";
    for (const auto& k : leftovers) msg += " " + k;
    throw ConfigError(msg);
  }

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");

  if (synth.kind != "sv" && synth.kind != "garch" && synth.kind != "diffusion")
    throw ConfigError("synth.kind must be sv, garch or diffusion");
  if (synth.n_days < 2) throw ConfigError("synth.n_days must be >= 2");
  if (synth.kind == "sv") {
    if (!(std::abs(synth.sv.phi) < 1.0) || synth.sv.sigma_eta_sq < 0.0)
      throw ConfigError("synth: need |phi| < 1 and sigma_eta_sq >= 0");
  }
  if (synth.kind == "garch" && !synth.garch.valid())
    throw ConfigError("synth: invalid GARCH parameter block");
  if (synth.kind == "diffusion" && !(synth.day_variance > 0.0))
    throw ConfigError("synth: diffusion kind needs day_variance > 0");
  if (synth.with_intraday || synth.kind == "diffusion") {
    if (synth.tick_interval_sec < 1)
      throw ConfigError("synth.tick_interval_sec must be >= 1");
    if (!(synth.overnight_share >= 0.0 && synth.overnight_share < 1.0))
      throw ConfigError("synth.overnight_share must lie in [0, 1)");
    if (synth.noise_std < 0.0) throw ConfigError("synth.noise_std must be >= 0");
  }

  if (sv.n_burn < 1 || sv.n_keep < 1)
    throw ConfigError("sv.n_burn and sv.n_keep must be >= 1");
  if (!(sv.priors.sigma_shape > 0.0) || !(sv.priors.sigma_scale > 0.0))
    throw ConfigError("sv prior hyperparameters must be > 0");
  for (size_t day : sv.h_trace_days)
    if (day < 1) throw ConfigError("sv.h_trace_days entries are 1-based day numbers");

  try {
    hmc.validate();
  } catch (const ContractError& e) {
    throw ConfigError(std::string("[hmc] ") + e.what());
  }

  if (garch.n_burn < 1 || garch.n_keep < 1)
    throw ConfigError("garch.n_burn and garch.n_keep must be >= 1");

  if (rv.deltas_min.empty()) throw ConfigError("rv.deltas must not be empty");
  for (double d : rv.deltas_min)
    if (!(d > 0.0)) throw ConfigError("rv.deltas entries must be > 0");
  for (double d : eval.deltas_min)
    if (!(d > 0.0)) throw ConfigError("eval.deltas entries must be > 0");
  for (const auto& m : eval.models)
    if (m != "sv" && m != "garch")
      throw ConfigError("eval.models entries must be sv or garch");
  if (eval.models.empty()) throw ConfigError("eval.models must not be empty");

  if (!data.sessions.sessions.empty()) data.sessions.validate();
}

std::filesystem::path RunConfig::daily_path() const {
  if (!data.daily_csv.empty()) return data.daily_csv;
  return std::filesystem::path(out_dir) / "daily.csv";
}

std::filesystem::path RunConfig::intraday_path() const {
  if (!data.intraday_csv.empty()) return data.intraday_csv;
  return std::filesystem::path(out_dir) / "intraday.csv";
}

}  // namespace volkit
