#include "hfkb/equivariant.hpp"
#include "hfkb/identities.hpp"
#include "hfkb/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace hfkb;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int run(const char* id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(s < limit_s, "runtime " + std::to_string(s) + " s over limit");
  std::printf("%s %s %s (%.3f s, limit %.0f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", name, s, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  return o.pass ? 0 : 1;
}

bool verdict(const json& r, const std::string& name) {
  for (const auto& v : r["verdicts"])
    if (v["name"] == name) return v["holds"].get<bool>();
  return false;
}

std::vector<std::pair<long long, long long>> hat_profile(const json& r) {
  std::vector<std::pair<long long, long long>> out;
  for (const auto& e : r["base"]["hat_by_alexander"]) out.emplace_back(e["alexander"].get<long long>(), e["rank"].get<long long>());
  return out;
}

std::string show(const std::vector<std::pair<long long, long long>>& p) {
  std::ostringstream os;
  for (const auto& [a, r] : p) os << "(" << a << ":" << r << ")";
  return os.str();
}

std::string data(const std::string& f) { return std::string(HFKB_DATA_DIR) + "/" + f; }

std::vector<long long> plus(std::vector<long long> a, const std::vector<long long>& b, long long k) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

// Gradings from every periodic translate of every sampled connecting domain agree.
bool gradings_well_defined(const Diagram& d, std::size_t stride) {
  const auto basis = periodic_domain_basis(d, false);
  const auto gens = enumerate_generators(d);
  for (std::size_t i = 0; i < gens.size(); i += stride) {
    for (std::size_t j = 0; j < gens.size(); j += stride) {
      const auto dom = domain_between(d, gens[i], gens[j]);
      if (!dom) continue;
      auto grade = [&](const std::vector<long long>& a) {
        const auto b = basepoint_counts(d, a);
        return std::make_pair(maslov_index(d, {gens[i], gens[j], a}) - 2 * b.w, b.z - b.w);
      };
      const auto g0 = grade(dom->multiplicity);
      for (const auto& p : basis)
        for (long long k : {-2, 1, 3})
          if (grade(plus(dom->multiplicity, p, k)) != g0) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  int failures = 0;

  failures += run("A1", "unknot end-to-end", 1.0, [](Outcome& o) {
    const json r = compute_report(two_bridge_input(1, 1), {});
    o.require(r["base"]["tilde_total"] == 2, "base tilde rank " + r["base"]["tilde_total"].dump());
    o.require(r["cover"]["e1_total"] == 2, "E1 rank " + r["cover"]["e1_total"].dump());
    o.require(r["cover"]["localized_total"] == 2, "localized rank " + r["cover"]["localized_total"].dump());
    o.require(all_verdicts_hold(r), "verdict falsified");
  });

  failures += run("A2", "trefoil", 10.0, [](Outcome& o) {
    const json r = compute_report(two_bridge_input(3, 1), {});
    const std::vector<std::pair<long long, long long>> want{{1, 1}, {0, 1}, {-1, 1}};
    o.require(hat_profile(r) == want, "hat ranks " + show(hat_profile(r)));
    o.require(r["base"]["determinant"] == 3, "determinant " + r["base"]["determinant"].dump());
    o.require(r["cover"]["spinc_classes"] == 3, "spin^c classes " + r["cover"]["spinc_classes"].dump());
    o.require(r["cover"]["localized_total"] == 6 && r["base"]["tilde_total"] == 6, "localized vs tilde");
    o.require(r["cover"]["canonical_hat_total"].get<long long>() >= 3, "canonical hat rank below 3");
    o.require(verdict(r, "canonical_rank_inequality"), "canonical rank inequality");
    o.require(verdict(r, "alexander_rank_inequality") && verdict(r, "top_grading_inequality"),
              "per-Alexander inequalities");
    o.require(all_verdicts_hold(r), "verdict falsified");
    // Invariant generators share one class.
    const Diagram d = two_bridge({3, 1});
    const auto c = lift_diagram(d);
    const auto fc = build_complex(c.cover);
    const auto tau = tau_sharp(c, fc);
    std::set<int> classes;
    for (std::size_t i = 0; i < tau.size(); ++i)
      if (tau[i] == static_cast<int>(i)) classes.insert(fc.spinc[i]);
    o.require(classes.size() == 1, "invariant generators in " + std::to_string(classes.size()) + " classes");
  });

  failures += run("A3", "figure-eight", 60.0, [](Outcome& o) {
    const json r = compute_report(two_bridge_input(5, 3), {});
    o.require(r["base"]["determinant"] == 5, "determinant");
    o.require(r["cover"]["spinc_classes"] == 5, "spin^c classes");
    o.require(r["cover"]["localized_total"] == 10 && r["base"]["tilde_total"] == 10,
              "localized " + r["cover"]["localized_total"].dump() + " vs tilde " + r["base"]["tilde_total"].dump());
    o.require(all_verdicts_hold(r), "verdict falsified");
  });

  failures += run("A4", "grid and two-bridge hat ranks agree", 120.0, [](Outcome& o) {
    const struct {
      const char* grid;
      int p, q;
      long long total;
    } cases[] = {{"trefoil5.grid", 3, 1, 3}, {"figure_eight6.grid", 5, 3, 5}};
    for (const auto& c : cases) {
      const json g = compute_report(grid_input(data(c.grid)), {});
      ComputeOptions off;
      off.lift = LiftMode::off;
      const json b = compute_report(two_bridge_input(c.p, c.q), off);
      o.require(hat_profile(g) == hat_profile(b), std::string(c.grid) + ": " + show(hat_profile(g)) + " vs " + show(hat_profile(b)));
      o.require(g["base"]["hat_total"] == c.total && b["base"]["hat_total"] == c.total, std::string(c.grid) + ": totals");
    }
  });

  failures += run("A5", "property suite", 60.0, [](Outcome& o) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 3}, {7, 3}}) {
      const std::string tag = "b(" + std::to_string(p) + "," + std::to_string(q) + ")";
      const Diagram d = two_bridge({p, q});
      const auto base = build_complex(d);
      o.require((base.differential * base.differential).is_zero(), tag + ": base d^2");
      const Monodromy m = solve_monodromy(d);
      const auto cd = lift_diagram(d, m);
      o.require(!is_nice(d).nice || is_nice(cd.cover).nice, tag + ": nice base, non-nice cover");
      o.require(cd.cover.euler_characteristic() ==
                    2 * d.euler_characteristic() - 2 * d.num_basepoint_pairs(), tag + ": Euler characteristic");
      const auto fc = build_complex(cd.cover);
      o.require((fc.differential * fc.differential).is_zero(), tag + ": cover d^2");
      const auto tau = tau_sharp(cd, fc);
      F2Matrix t(tau.size(), tau.size());
      for (std::size_t i = 0; i < tau.size(); ++i) t.set(static_cast<std::size_t>(tau[i]), i, true);
      o.require(t * fc.differential == fc.differential * t, tag + ": tau d != d tau");
      o.require(gradings_well_defined(cd.cover, fc.generators.size() > 20 ? 3 : 1), tag + ": cover gradings");
      // Alexander averaging over decompositions.
      for (std::size_t i = 0; i < fc.generators.size(); ++i) {
        for (std::size_t j = 0; j < fc.generators.size(); ++j) {
          if (fc.spinc[i] != fc.spinc[j]) continue;
          const auto a = *decompose_generator(cd, fc.generators[i]);
          const auto b = *decompose_generator(cd, fc.generators[j]);
          auto A = [&](const Generator& g) { return base.alexander[static_cast<std::size_t>(base.index_of(g))]; };
          if (2 * (fc.alexander[i] - fc.alexander[j]) != A(a.first) + A(a.second) - A(b.first) - A(b.second)) {
            o.require(false, tag + ": averaging lemma");
            i = fc.generators.size();
            break;
          }
        }
      }
      const auto report = localized_ranks(build_equivariant(cd, fc), 2);
      for (const auto& orb : report.orbits) {
        o.require(orb.conjugate_ranks_equal, tag + ": conjugate ranks");
        if (!orb.canonical) o.require(orb.localized_total == 0, tag + ": non-canonical localized rank");
      }
      // Gauge invariance.
      const auto g = gauge_shift(d, gauge_shift(d, m, 0), d.num_points() - 1);
      const auto cg = lift_diagram(d, g);
      const auto fg = build_complex(cg.cover);
      const auto rg = localized_ranks(build_equivariant(cg, fg), 2);
      o.require(rg.e1_total == report.e1_total && rg.localized_total == report.localized_total &&
                    rg.hat_total == report.hat_total && rg.canonical_hat == report.canonical_hat,
                tag + ": gauge invariance");
    }
    for (const char* grid : {"trefoil5.grid", "figure_eight6.grid"}) {
      const Diagram d = from_grid(parse_grid([&] {
        std::ifstream in(data(grid));
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
      }()));
      const auto c = build_complex(d);
      o.require((c.differential * c.differential).is_zero(), std::string(grid) + ": d^2");
      o.require(gradings_well_defined(d, c.generators.size() / 12 + 1), std::string(grid) + ": gradings");
    }
  });

  failures += run("A6", "identities", 5.0, [](Outcome& o) {
    for (int k = 1; k <= 5; ++k) o.require(check_sigma_doubling(k), "sigma doubling k=" + std::to_string(k));
    for (int n = 1; n <= 4; ++n) {
      const int m = 2 * n - 1, r = n - 1;
      const auto b = sym_wedge_betti(m, r);
      long long binom = 1;
      for (int k = 0; k <= r; ++k) {
        if (k > 0) binom = binom * (m - k + 1) / k;
        o.require(b[static_cast<std::size_t>(k)] == binom, "betti m=" + std::to_string(m) + " k=" + std::to_string(k));
      }
    }
    for (int n = 2; n <= 5; ++n) o.require(check_i1_surjectivity(n), "surjectivity n=" + std::to_string(n));
  });

  std::printf("%s\n", failures == 0 ? "all acceptance criteria pass" : "acceptance FAILED");
  return failures == 0 ? 0 : 1;
}
