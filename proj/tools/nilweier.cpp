#include <iostream>

#include "CLI11.hpp"
#include "nilweier/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Minimal surfaces in Nil3 from loop-group potentials"};
  app.require_subcommand(1);
  std::string config, out = ".";
  for (const char* name : {"analyze", "generate", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "job file")->required();
    sub->add_option("--out", out, "output directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nilweier::kExitConfig;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "analyze") return nilweier::cmd_analyze(config, out, std::cout, std::cerr);
  if (cmd == "generate") return nilweier::cmd_generate(config, out, std::cout, std::cerr);
  return nilweier::cmd_verify(config, out, std::cout, std::cerr);
}
