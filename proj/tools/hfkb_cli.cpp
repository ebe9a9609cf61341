#include "hfkb/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { ok = 0, internal = 1, validation = 2, falsified = 3, parse = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot Floer homology of two-bridge and grid diagrams and of their branched double covers"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "compute the base and (for genus-0 bases) the lifted complex");
  std::vector<int> bridge;
  std::string grid, diagram, report = "text";
  bool lift = false, no_lift = false, timing = false, checks = false;
  int max_coeff = 0;
  auto* src_b = compute->add_option("--two-bridge", bridge, "two-bridge knot b(p, q)")->expected(2);
  auto* src_g = compute->add_option("--grid", grid, "grid diagram file");
  auto* src_d = compute->add_option("--diagram", diagram, "multipointed diagram file");
  src_b->excludes(src_g)->excludes(src_d);
  src_g->excludes(src_d);
  auto* f_lift = compute->add_flag("--lift", lift, "require the branched double cover");
  compute->add_flag("--no-lift", no_lift, "base complex only")->excludes(f_lift);
  compute->add_option("--report", report, "output format")->check(CLI::IsMember({"json", "text"}));
  compute->add_option("--max-domain-coeff", max_coeff, "bound on periodic translates in the domain search")
      ->check(CLI::NonNegativeNumber);
  compute->add_flag("--timing", timing, "include wall-clock timings in the report");
  compute->add_flag("--checks", checks, "also run the identity suite");

  auto* chk = app.add_subcommand("checks", "finite algebraic identity checks");
  hfkb::ChecksOptions copts;
  std::string chk_report = "text";
  chk->add_option("--max-n", copts.max_n, "largest k or n to check")->check(CLI::Range(1, 8));
  chk->add_option("--fixture", copts.fixture, "JSON file of expected values");
  chk->add_option("--report", chk_report, "output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Exit::ok : Exit::parse;
  }

  try {
    if (*chk) {
      const auto c = hfkb::run_checks(copts);
      if (chk_report == "json") {
        std::cout << c.dump(2) << "\n";
      } else {
        std::cout << hfkb::render_checks_text(c);
      }
      return c["passed"].get<bool>() ? Exit::ok : Exit::falsified;
    }

    hfkb::Input in;
    if (!bridge.empty()) {
      in = hfkb::two_bridge_input(bridge[0], bridge[1]);
    } else if (!grid.empty()) {
      in = hfkb::grid_input(grid);
    } else if (!diagram.empty()) {
      in = hfkb::diagram_input(diagram);
    } else {
      std::cerr << "error: one of --two-bridge, --grid, --diagram is required\n";
      return Exit::parse;
    }
    hfkb::ComputeOptions opts;
    opts.lift = lift ? hfkb::LiftMode::on : no_lift ? hfkb::LiftMode::off : hfkb::LiftMode::automatic;
    opts.max_domain_coeff = max_coeff;
    opts.timing = timing;
    opts.checks = checks;
    const auto r = hfkb::compute_report(in, opts);
    if (report == "json") {
      std::cout << r.dump(2) << "\n";
    } else {
      std::cout << hfkb::render_text(r);
    }
    return hfkb::all_verdicts_hold(r) ? Exit::ok : Exit::falsified;
  } catch (const hfkb::ValidationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::validation;
  } catch (const hfkb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return Exit::parse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Exit::internal;
  }
}
