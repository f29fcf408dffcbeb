#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nullkan/report.hpp"

int main(int argc, char** argv) {
  using namespace nullkan;
  CLI::App app{"Nullity structures via Kan extensions over finite categories"};
  app.require_subcommand(1);

  std::string spec_file, model, out_file;
  RunOptions opt;
  bool as_json = false, as_text = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_file, "spec file");
    sub->add_option("--model", model, "builtin model name");
    sub->add_option("--seed", opt.seed, "seed for randomized instances");
    sub->add_option("--budget", opt.budget, "search step budget");
    auto* j = sub->add_flag("--json", as_json, "JSON report (default)");
    sub->add_flag("--text", as_text, "plain-text report")->excludes(j);
    sub->add_option("--out", out_file, "write the report here instead of stdout");
  };
  for (const char* name : {"validate", "construct", "oracle-compare", "materialize"})
    common(app.add_subcommand(name));
  auto* check = app.add_subcommand("check", "run a verifier");
  check->add_option("target", opt.target, "thm1 | thm3 | ext | lemmas")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm3", "ext", "lemmas"}));
  common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::input_error);
  }
  opt.command = app.get_subcommands().front()->get_name();

  std::string text;
  if (!spec_file.empty() == !model.empty()) {
    std::cerr << "nullkan: give exactly one of --spec or --model\n";
    return static_cast<int>(ExitCode::input_error);
  }
  if (!model.empty()) {
    text = spec_text_for_model(model);
  } else {
    std::ifstream in(spec_file, std::ios::binary);
    if (!in) {
      std::cerr << "nullkan: cannot read " << spec_file << "\n";
      return static_cast<int>(ExitCode::input_error);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  auto outcome = run_command(opt, text);
  auto rendered = as_text ? render_text(outcome.report) : canonical_dump(outcome.report);
  if (out_file.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_file, std::ios::binary);
    if (!(out << rendered)) {
      std::cerr << "nullkan: cannot write " << out_file << "\n";
      return static_cast<int>(ExitCode::input_error);
    }
  }
  return static_cast<int>(outcome.code);
}
