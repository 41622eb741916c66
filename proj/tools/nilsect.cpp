// Command-line front end: run checks on curve specs, generate random corpora,
// write the bundled example specs.

#include "nilsect/corpus.hpp"
#include "nilsect/presets.hpp"
#include "nilsect/report.hpp"
#include "nilsect/spec_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace nilsect;

namespace {

int write_specs(const std::vector<std::pair<std::string, CurveSpec>>& specs, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [file, spec] : specs) {
    const fs::path dst = fs::path(dir) / (file + ".json");
    std::ofstream out(dst);
    if (!out) {
      std::cerr << "error: cannot write " << dst.string() << "\n";
      return 2;
    }
    out << emit_curve_spec(spec);
  }
  std::cerr << "wrote " << specs.size() << " specs to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant 2-nilpotent section obstruction for real curve models"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> check_names;
  std::string format = "json";
  auto* run_cmd = app.add_subcommand("run", "Run checks on spec files or directories of spec files");
  run_cmd->add_option("inputs", config.inputs, "Spec files or directories")->required();
  run_cmd->add_option("--checks", check_names, "adjunction, delta2, theorem, alb, lemma-injectivity (default: all)")
      ->delimiter(',');
  run_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  run_cmd->add_option("--seed", config.seed, "Seed for randomized checks");
  run_cmd->add_option("--out", config.out, "Write the report to this file instead of stdout");
  run_cmd->add_option("--plot-data", config.plot_dir, "Directory for Alb plot data");
  run_cmd->add_flag("-v,--verbose", config.verbosity, "More detail in the report");

  std::uint64_t gen_seed = 0;
  Index gen_size = 50;
  std::string gen_dir = "corpus";
  CorpusOptions gen_options;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random corpus of valid specs");
  gen_cmd->add_option("--seed", gen_seed, "Corpus seed");
  gen_cmd->add_option("--size", gen_size, "Number of specs")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out-dir", gen_dir, "Destination directory");
  gen_cmd->add_option("--max-rank", gen_options.max_rank, "Largest abelianization rank")->check(CLI::Range(1, 12));

  std::string preset_dir = "specs";
  auto* presets_cmd = app.add_subcommand("presets", "Write the bundled example specs");
  presets_cmd->add_option("--out-dir", preset_dir, "Destination directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      config.format = format == "text" ? Format::text : Format::json;
      if (run_cmd->count("--checks") > 0) {
        config.checks.clear();
        for (const auto& name : check_names) {
          if (name.empty()) continue;
          auto c = parse_check(name);
          if (!c) {
            std::cerr << "error: unknown check '" << name << "'\n";
            return 2;
          }
          config.checks.push_back(*c);
        }
      }
      RunResult res = run(config);
      if (config.out.empty()) std::cout << res.rendered;
      for (const auto& e : res.report["errors"]) std::cerr << "error: " << e["error"].get<std::string>() << "\n";
      return static_cast<int>(res.exit_code);
    }
    if (*gen_cmd) {
      std::vector<std::pair<std::string, CurveSpec>> specs;
      for (auto& spec : corpus_generate(gen_seed, gen_size, gen_options)) specs.emplace_back(spec.name, std::move(spec));
      return write_specs(specs, gen_dir);
    }
    if (*presets_cmd) return write_specs(presets::bundled_specs(), preset_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
