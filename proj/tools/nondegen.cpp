#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nondegen/cli/job.hpp"

int main(int argc, char** argv) {
  using namespace nondegen::cli;
  CLI::App app{"nondegen: certified constructions for entire maps, dense disks, avoidance maps and generic position"};
  app.require_subcommand(1);

  RunRequest request;
  std::uint64_t seed = 0;
  for (const auto& name : known_commands()) {
    auto* sub = app.add_subcommand(name, "run a " + name + " job");
    sub->add_option("--job", request.job_file, "job file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", request.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override the job seed");
    sub->add_option("--threads", request.threads, "worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  for (auto* sub : app.get_subcommands()) {
    request.command = sub->get_name();
    if (sub->count("--seed") > 0) request.seed = seed;
  }
  return run(request, std::cerr);
}
