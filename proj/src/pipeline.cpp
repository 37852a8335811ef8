#include "pipeline.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "realized.hpp"

namespace volkit {

namespace {

std::string delta_label(double delta_min) { return csv::format_double(delta_min); }

void require_file(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p))
    throw DataError(what + " not found: " + p.string() + " (run the producing stage first)");
}

SessionCalendar calendar_of(const RunConfig& cfg) {
  return cfg.data.sessions.sessions.empty() ? default_calendar() : cfg.data.sessions;
}

void write_truth(const std::filesystem::path& path, const std::vector<Date>& dates,
                 const std::vector<double>& variance, const std::vector<double>* h) {
  csv::AtomicWriter w(path);
  w << (h ? "date,h_true,var_true\n" : "date,var_true\n");
  for (size_t i = 0; i < dates.size(); ++i) {
    w << dates[i].str() << ',';
    if (h) w << csv::format_double((*h)[i]) << ',';
    w << csv::format_double(variance[i]) << '\n';
  }
  w.commit();
}

void write_vol_csv(const std::filesystem::path& path, const std::string& model,
                   const std::vector<Date>& dates,
                   const std::vector<RunningMoments>& vol) {
  csv::AtomicWriter w(path);
  w << "date," << model << "_vol_mean," << model << "_vol_sd\n";
  for (size_t i = 0; i < dates.size(); ++i)
    w << dates[i].str() << ',' << csv::format_double(vol[i].mean) << ','
      << csv::format_double(vol[i].sd()) << '\n';
  w.commit();
}

void write_diagnostics_row(std::ostream& out, const std::string& name,
                           const TraceSummary& s) {
  out << name << ',' << csv::format_double(s.mean) << ',' << csv::format_double(s.sd)
      << ',' << csv::format_double(s.se) << ',' << csv::format_double(s.tau.tau) << ','
      << csv::format_double(s.tau.err) << '\n';
}

void write_chain_header(std::ostream& out, const std::string& model,
                        const std::string& label, uint64_t seed, size_t n_burn,
                        size_t n_kept, const std::vector<std::string>& warnings) {
  out << "# volkit chain v1\n";
  out << "# model: " << model << '\n';
  out << "# label: " << label << '\n';
  out << "# seed: " << seed << '\n';
  out << "# n_burn: " << n_burn << '\n';
  out << "# n_kept: " << n_kept << '\n';
  for (const auto& wmsg : warnings) out << "# warning: " << wmsg << '\n';
}

}  // namespace

std::filesystem::path truth_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "truth.csv";
}
std::filesystem::path chain_path(const RunConfig& cfg, const std::string& model) {
  return std::filesystem::path(cfg.out_dir) / (model + "_chain.txt");
}
std::filesystem::path vol_path(const RunConfig& cfg, const std::string& model) {
  return std::filesystem::path(cfg.out_dir) / (model + "_vol.csv");
}
std::filesystem::path diagnostics_path(const RunConfig& cfg, const std::string& model) {
  return std::filesystem::path(cfg.out_dir) / (model + "_diagnostics.csv");
}
std::filesystem::path rv_path(const RunConfig& cfg, double delta_min) {
  return std::filesystem::path(cfg.out_dir) / ("rv_" + delta_label(delta_min) + "min.csv");
}
std::filesystem::path signature_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "rv_signature.csv";
}
std::filesystem::path scores_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "scores.csv";
}
std::filesystem::path manifest_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "manifest.txt";
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);
  Rng rng = Rng(cfg.seed).substream("synth");
  const std::string label = cfg.data.label.empty() ? "synth" : cfg.data.label;

  if (cfg.synth.kind == "garch" && cfg.synth.with_intraday)
    throw ConfigError("synth: intraday generation supports the sv and diffusion kinds");

  IntradaySpec ispec;
  ispec.calendar = calendar_of(cfg);
  ispec.tick_interval_sec = cfg.synth.tick_interval_sec;
  ispec.noise_std = cfg.synth.noise_std;
  ispec.overnight_share = cfg.synth.overnight_share;

  if (cfg.synth.kind == "sv") {
    SvGenSpec spec{cfg.synth.sv, cfg.synth.n_days, cfg.synth.start, label};
    auto [daily, truth] = gen_sv(spec, rng);
    std::vector<double> variance(truth.h.size());
    for (size_t i = 0; i < truth.h.size(); ++i) variance[i] = std::exp(truth.h[i]);
    if (cfg.synth.with_intraday) {
      Rng intraday_rng = rng.substream("intraday");
      auto result = gen_intraday(ispec, daily.dates, variance, intraday_rng);
      result.implied_daily.label = label;
      write_daily_returns(cfg.daily_path(), result.implied_daily);
      write_intraday(cfg.intraday_path(), result.panel);
    } else {
      write_daily_returns(cfg.daily_path(), daily);
    }
    write_truth(truth_path(cfg), daily.dates, variance, &truth.h);
  } else if (cfg.synth.kind == "garch") {
    GarchGenSpec spec{cfg.synth.garch, cfg.synth.n_days, cfg.synth.start, label};
    auto daily = gen_garch(spec, rng);
    const auto variance = garch_filter(daily.values, cfg.synth.garch);
    write_daily_returns(cfg.daily_path(), daily);
    write_truth(truth_path(cfg), daily.dates, variance, nullptr);
  } else {  // diffusion
    const auto dates = trading_dates(cfg.synth.start, cfg.synth.n_days);
    std::vector<double> variance(dates.size(), cfg.synth.day_variance);
    Rng intraday_rng = rng.substream("intraday");
    auto result = gen_intraday(ispec, dates, variance, intraday_rng);
    result.implied_daily.label = label;
    write_daily_returns(cfg.daily_path(), result.implied_daily);
    write_intraday(cfg.intraday_path(), result.panel);
    write_truth(truth_path(cfg), dates, variance, nullptr);
  }
  return {};
}

CommandResult cmd_fit(const RunConfig& cfg, const std::string& model) {
  cfg.validate();
  if (model != "sv" && model != "garch")
    throw ConfigError("fit: model must be sv or garch");
  require_file(cfg.daily_path(), "daily returns file");
  const ReturnSeries y = load_daily_returns(cfg.daily_path(), cfg.data.label);
  std::filesystem::create_directories(cfg.out_dir);

  CommandResult result;
  if (model == "sv") {
    std::vector<size_t> trace_idx;
    for (size_t day : cfg.sv.h_trace_days) {
      if (day > y.size())
        throw DataError("sv.h_trace_days day " + std::to_string(day) +
                        " beyond series length " + std::to_string(y.size()));
      trace_idx.push_back(day - 1);
    }
    Rng rng = cfg.hmc_seed ? Rng(*cfg.hmc_seed) : Rng(cfg.seed).substream("sv");
    const SvChain chain =
        run_sv_fit(y, cfg.sv.priors, cfg.hmc, cfg.sv.n_burn, cfg.sv.n_keep, rng, trace_idx);
    result.warnings = chain.warnings;

    {
      csv::AtomicWriter w(chain_path(cfg, model));
      write_chain_header(w.stream(), "sv", y.label, chain.seed, chain.n_burn,
                         chain.n_kept, chain.warnings);
      w << "# hmc_step_size: " << csv::format_double(chain.final_step_size) << '\n';
      w << "# hmc_n_steps: " << chain.final_n_steps << '\n';
      w << "# hmc_accept_rate: " << csv::format_double(chain.hmc_accept_rate) << '\n';
      w << "# phi_accept_rate: " << csv::format_double(chain.phi_accept_rate) << '\n';
      w << "# divergences: " << chain.divergences << '\n';
      w << "draw,mu,phi,sigma_eta_sq\n";
      for (size_t i = 0; i < chain.n_kept; ++i)
        w << i << ',' << csv::format_double(chain.mu[i]) << ','
          << csv::format_double(chain.phi[i]) << ','
          << csv::format_double(chain.sigma_eta_sq[i]) << '\n';
      w.commit();
    }
    write_vol_csv(vol_path(cfg, model), "sv", y.dates, chain.exp_h);
    {
      csv::AtomicWriter w(diagnostics_path(cfg, model));
      w << "parameter,mean,sd,se,tau_int,tau_int_err\n";
      write_diagnostics_row(w.stream(), "phi", summarize(chain.phi));
      write_diagnostics_row(w.stream(), "mu", summarize(chain.mu));
      write_diagnostics_row(w.stream(), "sigma_eta_sq", summarize(chain.sigma_eta_sq));
      for (size_t k = 0; k < chain.h_trace_indices.size(); ++k)
        write_diagnostics_row(w.stream(),
                              "h_" + std::to_string(chain.h_trace_indices[k] + 1),
                              summarize(chain.h_traces[k]));
      w.commit();
    }
  } else {
    Rng rng = Rng(cfg.seed).substream("garch");
    const GarchChain chain =
        run_garch_fit(y, GarchPriors{}, cfg.garch.n_burn, cfg.garch.n_keep, rng);
    result.warnings = chain.warnings;

    {
      csv::AtomicWriter w(chain_path(cfg, model));
      write_chain_header(w.stream(), "garch", y.label, chain.seed, chain.n_burn,
                         chain.n_kept, chain.warnings);
      w << "# accept_rate: " << csv::format_double(chain.accept_rate) << '\n';
      w << "# proposal_scale: " << csv::format_double(chain.final_scale) << '\n';
      w << "draw,omega,alpha,beta\n";
      for (size_t i = 0; i < chain.n_kept; ++i)
        w << i << ',' << csv::format_double(chain.omega[i]) << ','
          << csv::format_double(chain.alpha[i]) << ','
          << csv::format_double(chain.beta[i]) << '\n';
      w.commit();
    }
    write_vol_csv(vol_path(cfg, model), "garch", y.dates, chain.vol);
    {
      csv::AtomicWriter w(diagnostics_path(cfg, model));
      w << "parameter,mean,sd,se,tau_int,tau_int_err\n";
      write_diagnostics_row(w.stream(), "omega", summarize(chain.omega));
      write_diagnostics_row(w.stream(), "alpha", summarize(chain.alpha));
      write_diagnostics_row(w.stream(), "beta", summarize(chain.beta));
      w.commit();
    }
  }
  return result;
}

CommandResult cmd_rv(const RunConfig& cfg) {
  cfg.validate();
  require_file(cfg.intraday_path(), "intraday file");
  require_file(cfg.daily_path(), "daily returns file");
  const IntradayPanel panel = load_intraday(cfg.intraday_path(), calendar_of(cfg));
  const ReturnSeries daily = load_daily_returns(cfg.daily_path(), cfg.data.label);
  std::filesystem::create_directories(cfg.out_dir);

  CommandResult result;
  result.warnings = panel.warnings;

  for (double delta : cfg.rv.deltas_min) {
    RvSeries rv = realized_volatility(panel, delta);
    for (const auto& wmsg : rv.warnings) result.warnings.push_back(wmsg);
    if (rv.rv.empty())
      throw DataError("rv: no usable days at delta " + delta_label(delta) + "min");
    hl_factor(daily, rv);
    csv::AtomicWriter w(rv_path(cfg, delta));
    w << "date,rv,c_rv\n";
    for (size_t i = 0; i < rv.dates.size(); ++i)
      w << rv.dates[i].str() << ',' << csv::format_double(rv.rv[i]) << ','
        << csv::format_double(rv.adjusted[i]) << '\n';
    w.commit();
  }

  const auto sweep = signature_sweep(panel, daily, cfg.rv.deltas_min);
  csv::AtomicWriter w(signature_path(cfg));
  w << "delta_min,mean_rv,hl_factor\n";
  for (const auto& row : sweep)
    w << csv::format_double(row.delta_min) << ',' << csv::format_double(row.mean_rv)
      << ',' << csv::format_double(row.hl_factor) << '\n';
  w.commit();
  return result;
}

VolPath load_vol_csv(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.size() < 2 || rows.front().fields.size() != 3)
    throw DataError("bad volatility file: " + path.string());
  VolPath vol;
  const std::string& mean_col = rows.front().fields[1];
  vol.model = mean_col.substr(0, mean_col.find('_'));
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = path.string() + ":" + std::to_string(r.line_no);
    if (r.fields.size() != 3) throw DataError(where + ": expected 3 fields");
    auto date = Date::parse(r.fields[0]);
    double mean = 0;
    if (!date || !csv::parse_double(r.fields[1], mean))
      throw DataError(where + ": bad record");
    vol.dates.push_back(*date);
    vol.var.push_back(mean);
  }
  return vol;
}

RvSeries load_rv_csv(const std::filesystem::path& path, double delta_min) {
  const auto rows = csv::read_file(path);
  if (rows.size() < 2 || rows.front().fields.size() != 3)
    throw DataError("bad rv file: " + path.string());
  RvSeries rv;
  rv.delta_min = delta_min;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = path.string() + ":" + std::to_string(r.line_no);
    if (r.fields.size() != 3) throw DataError(where + ": expected 3 fields");
    auto date = Date::parse(r.fields[0]);
    double raw = 0, adj = 0;
    if (!date || !csv::parse_double(r.fields[1], raw) || !csv::parse_double(r.fields[2], adj))
      throw DataError(where + ": bad record");
    rv.dates.push_back(*date);
    rv.rv.push_back(raw);
    rv.adjusted.push_back(adj);
  }
  if (!rv.rv.empty() && rv.rv.front() > 0.0) rv.hl_factor = rv.adjusted.front() / rv.rv.front();
  return rv;
}

CommandResult cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<VolPath> models;
  for (const auto& name : cfg.eval.models) {
    require_file(vol_path(cfg, name), name + " volatility file");
    models.push_back(load_vol_csv(vol_path(cfg, name)));
    models.back().model = name;
  }
  const auto& deltas = cfg.eval.deltas_min.empty() ? cfg.rv.deltas_min : cfg.eval.deltas_min;
  std::vector<RvSeries> rv_series;
  for (double delta : deltas) {
    require_file(rv_path(cfg, delta), "rv file");
    rv_series.push_back(load_rv_csv(rv_path(cfg, delta), delta));
  }

  const ScoreTable table = compare(models, rv_series);
  std::filesystem::create_directories(cfg.out_dir);
  csv::AtomicWriter w(scores_path(cfg));
  w << "model,delta_min,rmspe,n_days\n";
  for (const auto& row : table.rows)
    w << row.model << ',' << csv::format_double(row.delta_min) << ','
      << csv::format_double(row.rmspe) << ',' << row.n_days << '\n';
  w.commit();

  for (const auto& [delta, winner] : table.winners)
    out << "delta " << delta_label(delta) << "min: lowest rmspe from " << winner << '\n';
  return {};
}

CommandResult cmd_report(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<std::filesystem::path> files = {cfg.daily_path(), cfg.intraday_path(),
                                              truth_path(cfg)};
  for (const auto& model : {"sv", "garch"}) {
    files.push_back(chain_path(cfg, model));
    files.push_back(vol_path(cfg, model));
    files.push_back(diagnostics_path(cfg, model));
  }
  for (double delta : cfg.rv.deltas_min) files.push_back(rv_path(cfg, delta));
  files.push_back(signature_path(cfg));
  files.push_back(scores_path(cfg));

  std::filesystem::create_directories(cfg.out_dir);
  csv::AtomicWriter w(manifest_path(cfg));
  w << "volkit run manifest\n";
  w << "seed: " << cfg.seed << "\n\n";
  // Small tables go in whole; bulky per-day files are summarized.
  constexpr size_t kInlineLimit = 64;
  size_t present = 0;
  for (const auto& file : files) {
    if (!std::filesystem::exists(file)) continue;
    ++present;
    std::ifstream in(file);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    w << "== " << file.filename().string() << " (" << lines.size() << " lines)\n";
    if (lines.size() <= kInlineLimit) {
      for (const auto& l : lines) w << l << '\n';
    } else {
      for (size_t i = 0; i < 3; ++i) w << lines[i] << '\n';
      w << "... (" << (lines.size() - 3) << " more lines)\n";
    }
    w << '\n';
  }
  w.commit();
  if (present == 0) throw DataError("report: no pipeline outputs found in " + cfg.out_dir);
  out << "manifest written: " << manifest_path(cfg).string() << " (" << present
      << " artifacts)\n";
  return {};
}

}  // namespace volkit
