// pdsearch: local search for regular partial difference sets in finite groups.
//
//   pdsearch gen-group cyclic:13 -o z13.txt
//   pdsearch search --group z13.txt --params 13,6,2,3 --max-trials 1000
//   pdsearch verify --group z13.txt --params 13,6,2,3 --set "[2,4,5,10,11,13]"
//   pdsearch enumerate 16

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pds/cli.hpp"

namespace fs = std::filesystem;
using namespace pds;

namespace {

unsigned default_workers() {
  if (const char* env = std::getenv(cli::kWorkersEnv)) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

GroupTable load_group(const std::string& file, const std::string& spec) {
  if (!file.empty() && !spec.empty()) throw std::invalid_argument("give --group or --group-spec, not both");
  if (!file.empty()) return load_table(file);
  if (!spec.empty()) return cli::parse_group_spec(spec);
  throw std::invalid_argument("a group is required (--group FILE or --group-spec SPEC)");
}

struct SearchArgs {
  std::string group_file, group_spec, group_dir, params, out;
  std::uint64_t alpha = 0, max_trials = 1000, seed = 1;
  unsigned workers = default_workers();
  std::string stop = "first", proposal = "random";
  bool preset = false, srg_unknown = false, skip_feasibility = false, timing = false;
};

int run_search_command(const SearchArgs& a) {
  const Params params = parse_params(a.params);
  if (!a.skip_feasibility) {
    auto verdict = check_feasible(params);
    if (auto* r = std::get_if<Rejection>(&verdict)) {
      std::cerr << "infeasible parameters " << params.to_string() << ": " << r->reason
                << " (use --skip-feasibility to search anyway)\n";
      return cli::kExitError;
    }
  }

  cli::SearchRequest request;
  request.config.alpha = a.alpha;
  request.config.max_trials = a.max_trials;
  request.config.base_seed = a.seed;
  request.config.worker_count = a.workers;
  request.config.stop_mode = a.stop == "all" ? StopMode::CollectAll : StopMode::FirstHit;
  request.config.proposal_mode = a.proposal == "sweep" ? ProposalMode::Sweep : ProposalMode::Random;
  if (a.preset) {
    auto passes = schedule_preset(params.n(), params.k(), !a.srg_unknown);
    if (!passes) {
      std::cerr << "no preset schedule for n = " << params.n()
                << "; using --max-trials " << a.max_trials << "\n";
    } else {
      request.passes = *passes;
    }
  }

  std::vector<GroupTable> groups;
  if (!a.group_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.group_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) groups.push_back(load_table(f.string()));
  } else {
    groups.push_back(load_group(a.group_file, a.group_spec));
  }

  bool any_hit = false;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const GroupTable& group : groups) {
    if (static_cast<std::int64_t>(group.order()) != params.n()) {
      std::cerr << "skipping " << group.label() << ": order " << group.order()
                << " != n = " << params.n() << "\n";
      continue;
    }
    const cli::RunRecord record = cli::execute_search(group, params, request);
    std::cerr << group.label() << ": " << record.hits.size() << " hit(s) in " << record.trials_used
              << " trial(s), best error " << record.best_error << "\n";
    any_hit = any_hit || !record.hits.empty();
    runs.push_back(cli::run_record_json(record, a.timing));
  }
  const auto document =
      a.group_dir.empty() && runs.size() == 1 ? runs.front() : nlohmann::ordered_json{{"runs", runs}};
  write_output(a.out, document.dump(2) + "\n");
  return any_hit ? cli::kExitHit : cli::kExitNoHit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local search for regular partial difference sets"};
  app.require_subcommand(1);

  // gen-group
  std::string gen_spec, gen_out;
  auto* gen = app.add_subcommand("gen-group", "Write the multiplication table of a built-in group");
  gen->add_option("spec", gen_spec, "cyclic:m | dihedral:m | ea2:d | product:<spec>x<spec>")->required();
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // search
  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Run hill-climbing trials and certify hits");
  search->add_option("--group", sa.group_file, "Group table file");
  search->add_option("--group-spec", sa.group_spec, "Built-in group spec");
  search->add_option("--group-dir", sa.group_dir, "Directory of table files (per-group budget)");
  search->add_option("--params", sa.params, "n,k,lambda,mu")->required();
  search->add_option("--alpha", sa.alpha, "Convergence threshold (default (n-1)k)");
  search->add_option("--max-trials", sa.max_trials, "Trial budget")->capture_default_str();
  search->add_option("--seed", sa.seed, "Base seed; trial t uses seed + t")->capture_default_str();
  search->add_option("--workers", sa.workers, "Worker threads (default $PDS_WORKERS or 1)");
  search->add_option("--stop", sa.stop, "first | all")->capture_default_str()->check(CLI::IsMember({"first", "all"}));
  search->add_option("--proposal", sa.proposal, "random | sweep")->capture_default_str()
      ->check(CLI::IsMember({"random", "sweep"}));
  search->add_flag("--preset-schedule", sa.preset, "Use the preset trial schedule for (n, k)");
  search->add_flag("--srg-unknown", sa.srg_unknown, "Treat the SRG as open when choosing a preset");
  search->add_flag("--skip-feasibility", sa.skip_feasibility, "Search even if the screen rejects");
  search->add_flag("--timing", sa.timing, "Include worker count and wall time in the record");
  search->add_option("-o,--out", sa.out, "Output JSON file (default stdout)");

  // verify
  std::string v_group, v_spec, v_params, v_set, v_set_file;
  bool v_zero = false;
  auto* verify = app.add_subcommand("verify", "Certify a set as a regular PDS and its Cayley graph as an SRG");
  verify->add_option("--group", v_group, "Group table file");
  verify->add_option("--group-spec", v_spec, "Built-in group spec");
  verify->add_option("--params", v_params, "n,k,lambda,mu")->required();
  verify->add_option("--set", v_set, "Inline element list, e.g. \"[2, 3, 5]\"");
  verify->add_option("--set-file", v_set_file, "File holding the element list");
  verify->add_flag("--zero-indexed", v_zero, "Elements are 0-indexed (default 1-indexed)");

  // enumerate
  std::int64_t e_n = 0;
  bool e_json = false, e_half = false;
  auto* enumerate = app.add_subcommand("enumerate", "List feasible SRG parameters for order n");
  enumerate->add_option("n", e_n, "Group order")->required();
  enumerate->add_flag("--json", e_json, "JSON output");
  enumerate->add_flag("--half", e_half, "Only k <= (n-1)/2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  try {
    if (*gen) {
      write_output(gen_out, serialize_table(cli::parse_group_spec(gen_spec)));
      return 0;
    }
    if (*search) return run_search_command(sa);
    if (*verify) {
      const GroupTable group = load_group(v_group, v_spec);
      const Params params = parse_params(v_params);
      if (v_set.empty() == v_set_file.empty()) throw std::invalid_argument("give exactly one of --set, --set-file");
      const std::string text = v_set.empty() ? read_file(v_set_file) : v_set;
      const auto set = cli::parse_element_list(text, group.order(), !v_zero);
      const Certificate cert = certify(group, params, set);
      std::cout << cli::certificate_json(cert).dump(2) << "\n";
      return cert.passed() ? cli::kExitHit : cli::kExitNoHit;
    }
    if (*enumerate) {
      const auto list = enumerate_feasible(e_n, {e_half});
      if (e_json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& f : list) arr.push_back(cli::feasible_json(f));
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const auto& f : list) {
          std::cout << f.params.to_string() << "  m+=" << f.multiplicity_plus
                    << " m-=" << f.multiplicity_minus << (f.conference ? "  conference" : "") << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }
  return cli::kExitError;
}
