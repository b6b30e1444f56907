#include "tda/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "tda/errors.hpp"
#include "tda/generator.hpp"
#include "tda/reports.hpp"
#include "tda/scenario_io.hpp"

namespace tda {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string preset = "table2-row1";
  std::string mode = "both";
  std::string out;
  std::string format = "json";
  std::string hops = "4,5,7,10,15";
  int runs = 1;
  bool eor = false;
};

std::string text(const ordered_json& j) { return j.dump(2) + "\n"; }

void emit(const Options& o, const std::string& body, std::ostream& out) {
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ScenarioError("out: cannot write " + o.out);
  f << body;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ScenarioError("out: cannot write " + p.string());
  f << body;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  throw UsageError("--format " + o.format + " is not available for this subcommand");
}

Scenario generated(const Options& o) {
  if (!o.seed_given) throw UsageError("--seed is required to generate a scenario");
  auto p = preset(o.preset, o.seed);
  if (!p) throw UsageError("--preset: unknown preset " + o.preset);
  return generate(*p);
}

Scenario scenario_input(const Options& o) {
  if (!o.scenario.empty()) return load_scenario(o.scenario);
  return generated(o);
}

std::vector<int> parse_hops(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int h = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(h);
    } catch (const std::exception&) {
      throw UsageError("--hops: expected a comma-separated list of integers, got " + list);
    }
  }
  if (out.empty()) throw UsageError("--hops: empty list");
  return out;
}

ordered_json detect_json(const Scenario& s, const Twig& g, const PacketTrace& trace, const std::string& mode) {
  ordered_json global;
  if (mode != "local") {
    if (trace.delivered) {
      global = global_report_to_json(s, g, detect_global(g, trace, s.t_tr));
    } else {
      global["mode"] = "global";
      global["flagged"] = ordered_json::array();
      global["inconclusive"] = true;
      global["reason"] = "message not delivered";
    }
  }
  ordered_json local;
  if (mode != "global") local = local_run_to_json(s, run_local_pipeline(s, g, trace));
  if (mode == "global") return global;
  if (mode == "local") return local;
  ordered_json both;
  both["global"] = global;
  both["local"] = local;
  return both;
}

struct RunScores {
  std::size_t hops = 0;
  bool delivered = false;
  Score global;
  Score local;
};

RunScores score_run(const Scenario& s, const Twig& g, const PacketTrace& trace) {
  RunScores r;
  r.hops = trace.hops.size() - 1;
  r.delivered = trace.delivered;
  const auto truth = ground_truth(s.attack);
  r.global = trace.delivered ? score(detect_global(g, trace, s.t_tr).flagged, truth) : Score{1, truth.empty() ? 1.0 : 0.0};
  r.local = score(run_local_pipeline(s, g, trace).flagged(), truth);
  return r;
}

ordered_json scenario_metrics(const Scenario& s, const Twig& g, const PacketTrace& trace) {
  const RunScores r = score_run(s, g, trace);
  ordered_json doc;
  const int h = static_cast<int>(std::max<std::size_t>(r.hops, 1));
  const int one[] = {h};
  doc["eor"] = eor_to_json(eor_table(OverheadModel{}, one));
  ordered_json sc;
  sc["global"] = score_to_json(r.global);
  sc["local"] = score_to_json(r.local);
  doc["score"] = sc;
  doc["runtime"] = times_to_json(time_phases(s));
  return doc;
}

ordered_json batch_metrics(const Options& o) {
  if (!o.seed_given) throw UsageError("--seed is required with --runs");
  if (!preset(o.preset, o.seed)) throw UsageError("--preset: unknown preset " + o.preset);
  const int k = o.runs;
  std::vector<RunScores> results(static_cast<std::size_t>(k));
  std::vector<std::string> errors(static_cast<std::size_t>(k));
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(k)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < k; i += static_cast<int>(workers)) {
        try {
          const Scenario s = generate(*preset(o.preset, o.seed + static_cast<std::uint64_t>(i)));
          const Twig g = Twig::build(s.windows, s.t_tr);
          results[static_cast<std::size_t>(i)] = score_run(s, g, simulate(s, g));
        } catch (const std::exception& e) {
          errors[static_cast<std::size_t>(i)] = e.what();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < k; ++i) {
    if (!errors[static_cast<std::size_t>(i)].empty()) {
      throw GenerationError("run " + std::to_string(i) + ": " + errors[static_cast<std::size_t>(i)]);
    }
  }

  ordered_json doc;
  doc["preset"] = o.preset;
  doc["seed"] = o.seed;
  ordered_json runs = ordered_json::array();
  Score gsum{0, 0}, lsum{0, 0};
  std::size_t delivered = 0;
  for (int i = 0; i < k; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    ordered_json j;
    j["seed"] = o.seed + static_cast<std::uint64_t>(i);
    j["delivered"] = r.delivered;
    j["hops"] = r.hops;
    j["global"] = score_to_json(r.global);
    j["local"] = score_to_json(r.local);
    runs.push_back(j);
    gsum.precision += r.global.precision;
    gsum.recall += r.global.recall;
    lsum.precision += r.local.precision;
    lsum.recall += r.local.recall;
    delivered += r.delivered ? 1 : 0;
  }
  ordered_json mean;
  mean["delivered"] = static_cast<double>(delivered) / k;
  mean["global"] = score_to_json({gsum.precision / k, gsum.recall / k});
  mean["local"] = score_to_json({lsum.precision / k, lsum.recall / k});
  doc["mean"] = mean;
  doc["runs"] = runs;
  return doc;
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
  if (o.mode != "global" && o.mode != "local" && o.mode != "both") throw UsageError("--mode must be global, local or both");

  if (cmd == "generate") {
    require_format(o, {"json"});
    emit(o, dump_scenario(generated(o)), out);
  } else if (cmd == "graph") {
    require_format(o, {"json", "dot"});
    const Scenario s = scenario_input(o);
    const Twig g = Twig::build(s.windows, s.t_tr);
    emit(o, o.format == "dot" ? twig_to_dot(s, g) : text(twig_to_json(s, g)), out);
  } else if (cmd == "simulate") {
    require_format(o, {"json"});
    const Scenario s = scenario_input(o);
    const Twig g = Twig::build(s.windows, s.t_tr);
    emit(o, text(trace_to_json(s, simulate_detailed(s, g))), out);
  } else if (cmd == "detect") {
    require_format(o, {"json"});
    const Scenario s = scenario_input(o);
    const Twig g = Twig::build(s.windows, s.t_tr);
    emit(o, text(detect_json(s, g, simulate(s, g), o.mode)), out);
  } else if (cmd == "metrics") {
    if (o.eor) {
      require_format(o, {"json", "csv"});
      const auto hops = parse_hops(o.hops);
      const auto table = eor_table(OverheadModel{}, hops);
      emit(o, o.format == "csv" ? eor_to_csv(table) : text(eor_to_json(table)), out);
    } else if (o.runs > 1) {
      require_format(o, {"json"});
      emit(o, text(batch_metrics(o)), out);
    } else {
      require_format(o, {"json"});
      const Scenario s = scenario_input(o);
      const Twig g = Twig::build(s.windows, s.t_tr);
      emit(o, text(scenario_metrics(s, g, simulate(s, g))), out);
    }
  } else if (cmd == "all") {
    require_format(o, {"json"});
    if (o.out.empty()) throw UsageError("all: --out DIR is required");
    const std::filesystem::path dir(o.out);
    std::filesystem::create_directories(dir);
    const Scenario s = scenario_input(o);
    write_file(dir / "scenario.json", dump_scenario(s));
    const Twig g = Twig::build(s.windows, s.t_tr);
    write_file(dir / "twig.json", text(twig_to_json(s, g)));
    const Simulation sim = simulate_detailed(s, g);
    write_file(dir / "trace.json", text(trace_to_json(s, sim)));
    write_file(dir / "detect.json", text(detect_json(s, g, sim.trace, o.mode)));
    write_file(dir / "metrics.json", text(scenario_metrics(s, g, sim.trace)));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time delay attack simulator and detectors", "tdasim"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "Scenario JSON file");
    sub->add_option("--seed", o.seed, "Generator seed")->each([&](const std::string&) { o.seed_given = true; });
    sub->add_option("--preset", o.preset, "Generator preset table2-row1 .. table2-row5");
    sub->add_option("--mode", o.mode, "global, local or both");
    sub->add_option("--out", o.out, "Output file (directory for all)");
    sub->add_option("--format", o.format, "json, csv or dot");
    sub->add_option("--hops", o.hops, "Comma-separated hop counts for --eor");
    sub->add_option("--runs", o.runs, "Number of seeded runs")->check(CLI::PositiveNumber);
    sub->add_flag("--eor", o.eor, "Print the overhead table");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"generate", "Write a seeded random scenario"},
      {"graph", "Build the time-window graph"},
      {"simulate", "Replay the message and print its trace"},
      {"detect", "Simulate, then run the global and/or local detector"},
      {"metrics", "Overhead table, detection scores and timings"},
      {"all", "Run every stage and write one file per stage into --out"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cmd, o, out);
  } catch (const UsageError& e) {
    err << cmd << ": usage: " << e.what() << "\n";
    return 1;
  } catch (const ScenarioError& e) {
    err << cmd << ": load: " << e.what() << "\n";
  } catch (const GenerationError& e) {
    err << cmd << ": generate: " << e.what() << "\n";
  } catch (const EmbeddingError& e) {
    err << cmd << ": embed: " << e.what() << "\n";
  } catch (const InconsistencyError& e) {
    err << cmd << ": detect: " << e.what() << "\n";
  } catch (const MetricsError& e) {
    err << cmd << ": metrics: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << cmd << ": out: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace tda
