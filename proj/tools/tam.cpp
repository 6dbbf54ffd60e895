// tam: command-line front end for simulating, verifying and minimizing
// temperature-2 tile assembly systems.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tam/http.hpp"
#include "tam/tam.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kBudget = 3, kInternal = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tam::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tam::Error("cannot write '" + path.string() + "'");
  out << content;
}

tam::TileSystem load_system(const std::string& path) {
  auto parsed = tam::parse_system(read_file(path));
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(parsed.system);
}

tam::Shape load_shape(const std::string& path) { return tam::parse_shape(read_file(path)); }

void emit(const tam::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate, verify and minimize temperature-2 tile assembly systems"};
  app.require_subcommand(1);

  // sim
  auto* sim = app.add_subcommand("sim", "Sample one assembly sequence");
  std::string sim_system, sim_policy = "uniform", sim_svg_dir;
  std::size_t sim_steps = 100;
  std::uint64_t sim_seed = 0;
  sim->add_option("--system", sim_system, "System document (JSON)")->required();
  sim->add_option("--steps", sim_steps, "Maximum number of steps");
  sim->add_option("--rng-seed", sim_seed, "Random generator seed");
  sim->add_option("--policy", sim_policy, "uniform | fair")
      ->check(CLI::IsMember({"uniform", "fair"}));
  sim->add_option("--svg-out", sim_svg_dir, "Write one SVG per step into this directory");

  // verify
  auto* verify = app.add_subcommand("verify", "Directedness or strict self-assembly verdict");
  verify->require_subcommand(1);
  auto* vdir = verify->add_subcommand("directed", "Is the system directed within a bound?");
  std::string vd_system, vd_bound;
  std::size_t vd_budget = 1'000'000;
  vdir->add_option("--system", vd_system)->required();
  vdir->add_option("--bound", vd_bound, "WxH+X+Y")->required();
  vdir->add_option("--budget", vd_budget, "Maximum distinct assemblies");
  auto* vstrict = verify->add_subcommand("strict", "Does the system strictly self-assemble a shape?");
  std::string vs_system, vs_shape;
  std::size_t vs_budget = 1'000'000;
  vstrict->add_option("--system", vs_system)->required();
  vstrict->add_option("--shape", vs_shape)->required();
  vstrict->add_option("--budget", vs_budget, "Maximum distinct assemblies");

  // explore
  auto* exp = app.add_subcommand("explore", "Enumerate producible assemblies within a bound");
  std::string ex_system, ex_bound, ex_out;
  std::size_t ex_budget = 1'000'000;
  unsigned ex_threads = 1;
  exp->add_option("--system", ex_system)->required();
  exp->add_option("--bound", ex_bound, "WxH+X+Y")->required();
  exp->add_option("--budget", ex_budget, "Maximum distinct assemblies");
  exp->add_option("--out", ex_out, "Report path (default: stdout)");
  exp->add_option("--threads", ex_threads, "Worker threads");

  // minimize / gap share search options
  std::string mn_shape, mn_mode = "general", mn_cert;
  std::size_t mn_kmax = 4;
  std::uint64_t mn_budget = 0;
  double mn_time = 0;
  unsigned mn_threads = 1;
  auto* mini = app.add_subcommand("minimize", "Minimum tile set for a shape");
  mini->add_option("--shape", mn_shape)->required();
  mini->add_option("--mode", mn_mode, "general | directed")
      ->check(CLI::IsMember({"general", "directed"}));
  mini->add_option("--kmax", mn_kmax, "Largest tile count to search");
  mini->add_option("--budget", mn_budget, "Maximum candidate systems (0 = unlimited)");
  mini->add_option("--time-limit", mn_time, "Wall-clock limit in seconds");
  mini->add_option("--certificate-out", mn_cert, "Write the certificate system here");
  mini->add_option("--threads", mn_threads, "Worker threads");
  auto* gap = app.add_subcommand("gap", "General and directed minima for a shape");
  gap->add_option("--shape", mn_shape)->required();
  gap->add_option("--kmax", mn_kmax, "Largest tile count to search");
  gap->add_option("--budget", mn_budget, "Maximum candidate systems (0 = unlimited)");
  gap->add_option("--time-limit", mn_time, "Wall-clock limit in seconds");
  gap->add_option("--threads", mn_threads, "Worker threads");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the interactive session API");
  int sv_port = 8080;
  std::string sv_static, sv_host = "127.0.0.1";
  serve->add_option("--port", sv_port);
  serve->add_option("--host", sv_host);
  serve->add_option("--static", sv_static, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) {
      const auto sys = load_system(sim_system);
      const auto policy =
          sim_policy == "fair" ? tam::SequencePolicy::FairFifo : tam::SequencePolicy::Uniform;
      const auto seq = tam::sample_sequence(sys, sim_seed, policy, sim_steps);
      for (std::size_t i = 0; i < seq.steps.size(); ++i)
        std::cerr << "step " << i + 1 << ": " << sys.tile(seq.steps[i].tile).name << " at "
                  << tam::to_string(seq.steps[i].point) << " (strength " << seq.steps[i].strength
                  << ")\n";
      std::cerr << (seq.terminal ? "terminal" : "stopped at step limit") << "\n";
      if (!sim_svg_dir.empty()) {
        fs::create_directories(sim_svg_dir);
        tam::Assembly a = tam::Assembly::seed_of(sys);
        auto write_step = [&](std::size_t i) {
          char name[32];
          std::snprintf(name, sizeof name, "step_%04zu.svg", i);
          write_file(fs::path(sim_svg_dir) / name, tam::render_svg(a, sys, {.show_frontier = true}));
        };
        write_step(0);
        for (std::size_t i = 0; i < seq.steps.size(); ++i) {
          a = tam::attach(a, seq.steps[i].point, seq.steps[i].tile, sys);
          write_step(i + 1);
        }
      }
      emit(tam::to_json(seq, sys));
      return kOk;
    }

    if (*vdir) {
      const auto sys = load_system(vd_system);
      tam::ExploreOptions opts;
      opts.budget = vd_budget;
      const auto v = tam::is_directed(sys, tam::parse_bound(vd_bound), opts);
      emit(tam::to_json(v, sys));
      return v.status == tam::ExplorationStatus::BudgetExceeded && v.answer == tam::Answer::Inconclusive
                 ? kBudget
                 : kOk;
    }

    if (*vstrict) {
      const auto sys = load_system(vs_system);
      const auto shape = load_shape(vs_shape);
      tam::ExploreOptions opts;
      opts.budget = vs_budget;
      const auto v = tam::strictly_self_assembles(sys, shape, opts);
      emit(tam::to_json(v, sys));
      return v.answer == tam::Answer::Inconclusive ? kBudget : kOk;
    }

    if (*exp) {
      const auto sys = load_system(ex_system);
      tam::ExploreOptions opts;
      opts.budget = ex_budget;
      opts.threads = ex_threads;
      const auto report = tam::explore(sys, tam::parse_bound(ex_bound), opts);
      const std::string text = tam::to_json(report, sys).dump(2) + "\n";
      if (ex_out.empty())
        std::cout << text;
      else
        write_file(ex_out, text);
      return report.status == tam::ExplorationStatus::BudgetExceeded ? kBudget : kOk;
    }

    if (*mini || *gap) {
      const auto shape = load_shape(mn_shape);
      if (shape.size() > 3 && mn_time <= 0) {
        std::cerr << "error: --time-limit is required for shapes with more than 3 cells\n";
        return kUsage;
      }
      tam::SearchBudget budget;
      if (mn_budget > 0) budget.max_systems = mn_budget;
      if (mn_time > 0) budget.time_limit = std::chrono::duration<double>(mn_time);
      budget.threads = mn_threads;
      if (*mini) {
        const auto mode = mn_mode == "directed" ? tam::SearchMode::Directed : tam::SearchMode::General;
        const auto r = tam::min_tile_set(shape, mode, mn_kmax, budget);
        if (!mn_cert.empty() && r.certificate) write_file(mn_cert, tam::serialize_system(*r.certificate));
        emit(tam::to_json(r));
        return r.status == tam::MinStatus::BudgetExceeded ? kBudget : kOk;
      }
      const auto g = tam::complexity_gap(shape, mn_kmax, budget);
      emit(tam::to_json(g));
      return g.general.status == tam::MinStatus::BudgetExceeded ||
                     g.directed.status == tam::MinStatus::BudgetExceeded
                 ? kBudget
                 : kOk;
    }

    if (*serve) {
      tam::SessionStore store;
      httplib::Server server;
      tam::register_routes(server, store);
      if (!sv_static.empty() && !server.set_mount_point("/", sv_static))
        std::cerr << "warning: static directory '" << sv_static << "' not found\n";
      std::cerr << "listening on http://" << sv_host << ":" << sv_port << "\n";
      if (!server.listen(sv_host, sv_port)) {
        std::cerr << "error: cannot listen on " << sv_host << ":" << sv_port << "\n";
        return kInternal;
      }
      return kOk;
    }
  } catch (const tam::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const tam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
