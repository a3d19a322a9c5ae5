// Command-line front end: wires the fading models, measurement files, and
// measure-conversion operations into reproducible runs emitting plot-ready
// CSV tables with the full configuration embedded in the header.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apm/channels.hpp"
#include "apm/cli_config.hpp"
#include "apm/empirical.hpp"
#include "apm/measures.hpp"
#include "apm/relationships.hpp"
#include "apm/selftest.hpp"

namespace {

using namespace apm;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// output path lives outside RunConfig so the embedded header stays
// location-independent
std::string g_out_path;

FadingModel build_model(const RunConfig& cfg) {
  if (cfg.model == "rayleigh") return FadingModel::rayleigh();
  if (cfg.model == "nakagami") return FadingModel::nakagami(cfg.m);
  if (cfg.model == "gnm") return FadingModel::generalized_nakagami(cfg.m, cfg.xi);
  if (cfg.model == "cascaded") {
    std::vector<GnmHop> hops;
    std::istringstream ss(cfg.hops);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::domain_error("--hops: expected m:xi pairs, got '" + tok + "'");
      hops.push_back({std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
    }
    return FadingModel::cascaded_gnm(std::move(hops));
  }
  throw std::domain_error("unknown model '" + cfg.model + "'");
}

InstantMeasure build_measure(const RunConfig& cfg) {
  if (cfg.measure == "capacity") return InstantMeasure::capacity();
  if (cfg.measure == "wojnar-ber") return InstantMeasure::wojnar_ber(cfg.a, cfg.b);
  if (cfg.measure == "reliability") return InstantMeasure::reliability(cfg.a, cfg.b);
  throw std::domain_error("unknown measure '" + cfg.measure + "'");
}

std::vector<double> build_db_grid(const RunConfig& cfg) {
  std::vector<double> grid;
  if (!cfg.snr_db.empty()) {
    std::istringstream ss(cfg.snr_db);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    return grid;
  }
  if (cfg.grid_n >= 2 && cfg.grid_db > 0.0) return make_grid(cfg.grid_n, cfg.grid_db);
  throw std::domain_error("need --snr-db or --grid-n/--grid-db");
}

// The capacity-based conversions need the curve's analytic continuation;
// only models with one in closed form are accepted here.
ApmCurve build_acc_curve(const RunConfig& cfg) {
  if (cfg.model == "rayleigh") return make_acc_curve_rayleigh();
  if (cfg.model == "nakagami") return make_acc_curve_nakagami(cfg.m);
  throw CapabilityError("no analytic capacity continuation for model '" + cfg.model +
                        "'; use rayleigh or nakagami");
}

double units_scale(const RunConfig& cfg) {
  if (cfg.units == "nats") return 1.0;
  if (cfg.units == "bits") return 1.0 / std::log(2.0);
  throw std::domain_error("unknown units '" + cfg.units + "'");
}

std::ofstream open_out(const RunConfig&) {
  if (g_out_path.empty()) throw std::domain_error("--out is required");
  std::ofstream out(g_out_path, std::ios::binary);
  if (!out) throw std::domain_error("cannot open output file " + g_out_path);
  return out;
}

int run_simulate_aber(const RunConfig& cfg) {
  const auto grid = build_db_grid(cfg);
  const ModulationParams p(cfg.a, cfg.b);
  MeasurementSet set =
      measure_aber_campaign(build_model(cfg), grid, p, cfg.bits, cfg.seed);
  if (g_out_path.empty()) throw std::domain_error("--out is required");
  write_set(set, g_out_path);
  return 0;
}

int run_aber2acc(const RunConfig& cfg) {
  const auto grid = build_db_grid(cfg);
  const double scale = units_scale(cfg);
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "snr_db,value\n";
  if (!cfg.in_path.empty()) {
    const MeasurementSet set = read_set(cfg.in_path);
    for (double db : grid)
      out << fmt17(db) << ","
          << fmt17(scale * ibp_acc(set, AverageSnr::from_db(db), cfg.tol)) << "\n";
  } else {
    if (cfg.model != "rayleigh")
      throw CapabilityError("closed-form BER is available for rayleigh only; "
                            "use --in for measured sets");
    const ModulationParams p(cfg.a, cfg.b);
    ApmCurve aber;
    aber.real_eval = [&p](double g) {
      return aber_closed_rayleigh_wojnar(AverageSnr(g), p.a, p.b);
    };
    for (double db : grid)
      out << fmt17(db) << ","
          << fmt17(scale * acc_from_aber(aber, p, AverageSnr::from_db(db), cfg.tol))
          << "\n";
  }
  return 0;
}

int run_acc2op(const RunConfig& cfg) {
  const ApmCurve acc = build_acc_curve(cfg);
  if (cfg.snr_db.empty() || cfg.snr_db.find(',') != std::string::npos)
    throw std::domain_error("acc2op: --snr-db must be a single average SNR");
  const AverageSnr gbar = AverageSnr::from_db(std::stod(cfg.snr_db));
  if (cfg.grid_n < 2 || !(cfg.grid_db > 0.0))
    throw std::domain_error("acc2op: needs --grid-n/--grid-db for the threshold grid");
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "gamma_th_db,value\n";
  for (double db : make_grid(cfg.grid_n, cfg.grid_db)) {
    const double gth = std::pow(10.0, db / 10.0);
    out << fmt17(db) << "," << fmt17(op_from_acc(acc, gbar, gth, cfg.eps)) << "\n";
  }
  return 0;
}

int run_acc2oc(const RunConfig& cfg) {
  const ApmCurve acc = build_acc_curve(cfg);
  if (cfg.snr_db.empty() || cfg.snr_db.find(',') != std::string::npos)
    throw std::domain_error("acc2oc: --snr-db must be a single average SNR");
  const AverageSnr gbar = AverageSnr::from_db(std::stod(cfg.snr_db));
  if (cfg.grid_n < 2 || !(cfg.grid_db > 0.0))
    throw std::domain_error("acc2oc: needs --grid-n/--grid-db for the threshold grid");
  const double scale = units_scale(cfg);
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "c_th,value\n";
  for (double db : make_grid(cfg.grid_n, cfg.grid_db)) {
    // capacity thresholds matched to the SNR-threshold grid
    const double cth = std::log1p(std::pow(10.0, db / 10.0));
    out << fmt17(scale * cth) << "," << fmt17(oc_from_acc(acc, gbar, cth, cfg.eps))
        << "\n";
  }
  return 0;
}

int run_acc2pdf(const RunConfig& cfg) {
  const ApmCurve acc = build_acc_curve(cfg);
  if (cfg.snr_db.empty() || cfg.snr_db.find(',') != std::string::npos)
    throw std::domain_error("acc2pdf: --snr-db must be a single average SNR");
  const AverageSnr gbar = AverageSnr::from_db(std::stod(cfg.snr_db));
  if (cfg.grid_n < 2 || !(cfg.grid_db > 0.0))
    throw std::domain_error("acc2pdf: needs --grid-n/--grid-db for the r grid");
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "r_db,value\n";
  for (double db : make_grid(cfg.grid_n, cfg.grid_db)) {
    const double r = std::pow(10.0, db / 10.0);
    out << fmt17(db) << "," << fmt17(pdf_from_acc(acc, gbar, r)) << "\n";
  }
  return 0;
}

int run_acc2apm(const RunConfig& cfg) {
  const ApmCurve acc = build_acc_curve(cfg);
  const InstantMeasure measure = build_measure(cfg);
  const double scale =
      measure.kind == InstantMeasure::Kind::Capacity ? units_scale(cfg) : 1.0;
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "snr_db,value\n";
  for (double db : build_db_grid(cfg))
    out << fmt17(db) << ","
        << fmt17(scale * apm_from_acc(acc, measure, AverageSnr::from_db(db), cfg.tol))
        << "\n";
  return 0;
}

int run_oracle(const RunConfig& cfg) {
  const FadingModel model = build_model(cfg);
  const InstantMeasure measure = build_measure(cfg);
  const double scale =
      measure.kind == InstantMeasure::Kind::Capacity ? units_scale(cfg) : 1.0;
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  const bool has_pdf = model.kind != FadingModel::Kind::CascadedGnm;
  out << (has_pdf ? "snr_db,value,stderr,value_quadrature\n"
                  : "snr_db,value,stderr\n");
  for (double db : build_db_grid(cfg)) {
    const AverageSnr gbar = AverageSnr::from_db(db);
    const auto mc = apm_monte_carlo(model, gbar, measure, cfg.samples, cfg.seed);
    out << fmt17(db) << "," << fmt17(scale * mc.mean) << ","
        << fmt17(scale * mc.stderr_);
    if (has_pdf)
      out << "," << fmt17(scale * apm_quadrature(model, gbar, measure, cfg.tol));
    out << "\n";
  }
  return 0;
}

int run_gcq_table(const RunConfig& cfg) {
  if (cfg.grid_n < 1) throw std::domain_error("gcq-table: needs --n >= 1");
  const QuadratureRule rule = gcq_rule(cfg.grid_n);
  auto out = open_out(cfg);
  write_config_header(out, cfg);
  out << "node,weight\n";
  for (int i = 0; i < rule.order; ++i)
    out << fmt17(rule.nodes[i]) << "," << fmt17(rule.weights[i]) << "\n";
  return 0;
}

int run_selftest_cmd() {
  int fails = 0;
  for (const auto& r : run_selftests()) {
    std::printf("%-36s %s  (%s)\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.detail.c_str());
    if (!r.passed) ++fails;
  }
  return fails == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversions between average performance measures of fading links"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--model", cfg.model)
        ->check(CLI::IsMember({"rayleigh", "nakagami", "gnm", "cascaded"}));
    sub->add_option("--m", cfg.m);
    sub->add_option("--xi", cfg.xi);
    sub->add_option("--hops", cfg.hops);
    sub->add_option("--a", cfg.a);
    sub->add_option("--b", cfg.b);
    sub->add_option("--grid-n,--n", cfg.grid_n);
    sub->add_option("--grid-db", cfg.grid_db);
    sub->add_option("--snr-db", cfg.snr_db);
    sub->add_option("--bits", cfg.bits);
    sub->add_option("--samples", cfg.samples);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--eps", cfg.eps);
    sub->add_option("--units", cfg.units)->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--measure", cfg.measure)
        ->check(CLI::IsMember({"capacity", "wojnar-ber", "reliability"}));
    sub->add_option("--in", cfg.in_path);
    sub->add_option("--out", g_out_path);
  };

  const std::vector<std::string> names = {"simulate-aber", "aber2acc", "acc2op",
                                          "acc2oc",        "acc2pdf",  "acc2apm",
                                          "oracle",        "gcq-table", "selftest"};
  for (const auto& n : names) add_common(app.add_subcommand(n));

  CLI11_PARSE(app, argc, argv);
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "simulate-aber") return run_simulate_aber(cfg);
    if (cfg.subcommand == "aber2acc") return run_aber2acc(cfg);
    if (cfg.subcommand == "acc2op") return run_acc2op(cfg);
    if (cfg.subcommand == "acc2oc") return run_acc2oc(cfg);
    if (cfg.subcommand == "acc2pdf") return run_acc2pdf(cfg);
    if (cfg.subcommand == "acc2apm") return run_acc2apm(cfg);
    if (cfg.subcommand == "oracle") return run_oracle(cfg);
    if (cfg.subcommand == "gcq-table") return run_gcq_table(cfg);
    if (cfg.subcommand == "selftest") return run_selftest_cmd();
    std::cerr << "error: unknown subcommand\n";
    return 1;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (best estimate " << e.best_estimate << ", bound " << e.error_bound
              << ")\n";
    return 2;
  } catch (const std::range_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
