#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ftplane/cli.hpp"

int main(int argc, char **argv) {
  using ftplane::cli::Command;
  using ftplane::cli::Verb;

  CLI::App app{"Fermat-Torricelli solution sets in polygonal-norm planes"};
  app.require_subcommand(1);
  Command cmd;
  double tol = 0.0;

  auto common = [&](CLI::App *sub, bool points) {
    sub->add_option("--norm", cmd.norm, "norm document or preset (diamond, square, hexagon, octagon, lambda:K, random)");
    sub->add_option("--lambda", cmd.lambda, "use the lambda-plane with this lambda");
    sub->add_option("--tol", tol, "comparison tolerance (default 1e-9)");
    sub->add_option("--seed", cmd.seed, "seed for random presets");
    sub->add_flag("--json", cmd.json, "structured output");
    if (points) sub->add_option("--points", cmd.points, "points document or preset (triangle, random, random:N)");
  };

  auto *solve = app.add_subcommand("solve", "solve for the full Fermat-Torricelli set");
  common(solve, true);
  solve->add_option("--svg", cmd.svg, "also write a figure");

  auto *uniq = app.add_subcommand("uniqueness", "decide uniqueness for all three-point sets");
  common(uniq, false);

  auto *lam = app.add_subcommand("lambda", "classify lambda-planes");
  lam->add_option("--max", cmd.max, "classify lambda = 2..max");
  lam->add_option("--lambda", cmd.lambda, "classify a single lambda (or the start of the range)");
  lam->add_option("--tol", tol, "comparison tolerance (default 1e-9)");
  lam->add_flag("--json", cmd.json, "JSON rows instead of a table");

  auto *wit = app.add_subcommand("witness", "build and solve a non-uniqueness witness");
  common(wit, false);
  wit->add_option("--svg", cmd.svg, "also write a figure");

  auto *render = app.add_subcommand("render", "write an SVG figure");
  common(render, true);
  render->add_option("--svg", cmd.svg, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (*solve) cmd.verb = Verb::Solve;
  if (*uniq) cmd.verb = Verb::Uniqueness;
  if (*lam) cmd.verb = Verb::Lambda;
  if (*wit) cmd.verb = Verb::Witness;
  if (*render) cmd.verb = Verb::Render;
  if (tol != 0.0) cmd.tol = tol;

  return ftplane::cli::run(cmd, std::cout, std::cerr);
}
