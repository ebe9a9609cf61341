#include "hfkb/pipeline.hpp"

#include "hfkb/cover.hpp"
#include "hfkb/equivariant.hpp"
#include "hfkb/floer.hpp"
#include "hfkb/identities.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hfkb {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

long long small(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min())) {
    throw FloerError("value exceeds 64 bits in report");
  }
  return static_cast<long long>(v);
}

json bigraded_json(const Bigraded& r) {
  json out = json::array();
  for (const auto& [key, v] : r) {
    if (v != 0) out.push_back({{"alexander", key.first}, {"maslov", key.second}, {"rank", v}});
  }
  return out;
}

json by_alexander_json(const ByAlexander& r) {
  json out = json::array();
  for (auto it = r.rbegin(); it != r.rend(); ++it) {
    if (it->second != 0) out.push_back({{"alexander", it->first}, {"rank", it->second}});
  }
  return out;
}

long long total(const Bigraded& r) {
  long long s = 0;
  for (const auto& [k, v] : r) s += v;
  return s;
}

json diagram_stats(const Diagram& d, const ValidationReport& v) {
  const auto adm = is_weakly_admissible(d);
  return {{"points", d.num_points()},
          {"edges", d.num_edges()},
          {"regions", d.num_regions()},
          {"alpha_curves", d.alpha_curves().size()},
          {"beta_curves", d.beta_curves().size()},
          {"euler_characteristic", v.euler_characteristic},
          {"genus", v.genus},
          {"basepoint_pairs", v.basepoint_pairs},
          {"nice", is_nice(d).nice},
          {"weakly_admissible", adm.weakly_admissible},
          {"pointed_periodic_rank", adm.lattice_rank}};
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ValidationReport require_valid(const Diagram& d, const std::string& what) {
  auto v = validate(d);
  if (!v.ok) throw ValidationFailed(what + " is invalid: " + v.summary());
  const auto nice = is_nice(d);
  if (!nice.nice) {
    std::string msg = what + " is not nice; offending regions:";
    for (int r : nice.offending_regions) msg += " " + std::to_string(r);
    throw ValidationFailed(msg);
  }
  const auto adm = is_weakly_admissible(d);
  if (!adm.weakly_admissible) throw ValidationFailed(what + " is not weakly admissible");
  return v;
}

Bigraded collect(const GradedRanks& r, int cls) {
  Bigraded out;
  for (const auto& [key, v] : r) {
    if (cls < 0 || std::get<0>(key) == cls) out[{std::get<1>(key), std::get<2>(key)}] += static_cast<long long>(v);
  }
  return out;
}

}  // namespace

Input two_bridge_input(int p, int q) {
  try {
    return {"two-bridge " + std::to_string(p) + " " + std::to_string(q), two_bridge({p, q})};
  } catch (const DiagramError& e) {
    throw ValidationFailed(e.what());
  }
}

Input grid_input(const std::string& path) {
  const GridSpec g = parse_grid(read_file(path));
  try {
    return {"grid size " + std::to_string(g.size), from_grid(g)};
  } catch (const DiagramError& e) {
    throw ValidationFailed(e.what());
  }
}

Input diagram_input(const std::string& path) {
  Diagram d = parse_diagram(read_file(path));
  const auto slash = path.find_last_of('/');
  return {"diagram " + (slash == std::string::npos ? path : path.substr(slash + 1)), std::move(d)};
}

json compute_report(const Input& in, const ComputeOptions& opts) {
  json report;
  report["schema"] = 1;
  report["input"] = in.description;
  json timing;
  auto t0 = Clock::now();

  const Diagram& d = in.diagram;
  const auto v = require_valid(d, "diagram");
  const int n = v.basepoint_pairs;
  bool lift = false;
  if (opts.lift == LiftMode::on) {
    if (v.genus != 0) throw ValidationFailed("cover requires genus-0 base");
    lift = true;
  } else if (opts.lift == LiftMode::automatic) {
    lift = v.genus == 0;
  }

  ComplexOptions copts;
  copts.max_domain_coeff = opts.max_domain_coeff;

  // Base.
  const FloerComplex base = build_complex(d, copts);
  const GradedRanks base_ranks = homology_ranks(base);
  Bigraded tilde = collect(base_ranks, -1);
  json bj;
  bj["diagram"] = diagram_stats(d, v);
  bj["generators"] = base.generators.size();
  bj["spinc_classes"] = base.num_classes();
  bj["differential"] = {{"bigons", base.bigons}, {"rectangles", base.rectangles}};
  if (base.num_classes() == 1) {
    const auto shift = symmetric_shift(collapse_maslov(tilde), n);
    if (!shift) throw FloerError("base tilde ranks admit no symmetric Alexander normalization");
    tilde = shift_alexander(tilde, *shift);
    const Bigraded hat = divide_by_v(tilde, n);
    const AlexanderData alex = alexander_polynomial(tilde, n);
    bj["alexander_shift"] = *shift;
    bj["tilde"] = bigraded_json(tilde);
    bj["tilde_total"] = total(tilde);
    bj["tilde_by_alexander"] = by_alexander_json(collapse_maslov(tilde));
    bj["hat"] = bigraded_json(hat);
    bj["hat_total"] = total(hat);
    bj["hat_by_alexander"] = by_alexander_json(collapse_maslov(hat));
    json terms = json::array();
    for (auto it = alex.polynomial.rbegin(); it != alex.polynomial.rend(); ++it) {
      terms.push_back({{"exponent", it->first}, {"coefficient", small(it->second)}});
    }
    bj["alexander_polynomial"] = {{"terms", terms}, {"text", to_string(alex.polynomial)}};
    bj["determinant"] = small(alex.determinant);
  } else {
    json classes = json::array();
    for (std::size_t s = 0; s < base.num_classes(); ++s) {
      const Bigraded r = collect(base_ranks, static_cast<int>(s));
      classes.push_back({{"class", s}, {"tilde", bigraded_json(r)}, {"tilde_total", total(r)}});
    }
    bj["classes"] = classes;
    bj["tilde_total"] = total(tilde);
  }
  report["base"] = bj;
  if (opts.timing) timing["base_ms"] = ms_since(t0);

  json verdicts = json::array();
  if (lift) {
    if (base.num_classes() != 1) throw ValidationFailed("cover requires a base with a single spin^c class");
    t0 = Clock::now();
    CoveredDiagram cd;
    try {
      cd = lift_diagram(d);
    } catch (const CoverError& e) {
      throw ValidationFailed(e.what());
    }
    const auto cv = require_valid(cd.cover, "lifted diagram");
    const FloerComplex cover = build_complex(cd.cover, copts);
    const EquivariantComplex eq = build_equivariant(cd, cover);
    const BorelReport borel = localized_ranks(eq, cv.basepoint_pairs);

    json cj;
    cj["diagram"] = diagram_stats(cd.cover, cv);
    long long weight = 0;
    for (auto b : cd.monodromy) weight += b;
    cj["monodromy_weight"] = weight;
    cj["generators"] = cover.generators.size();
    long long fixed = 0;
    for (std::size_t i = 0; i < eq.tau.size(); ++i) fixed += eq.tau[i] == static_cast<int>(i) ? 1 : 0;
    cj["invariant_generators"] = fixed;
    cj["spinc_classes"] = cover.num_classes();
    json torsion = json::array();
    for (const auto& t : cover.torsion) torsion.push_back(small(t));
    cj["torsion"] = torsion;
    cj["differential"] = {{"bigons", cover.bigons}, {"rectangles", cover.rectangles}};
    json classes = json::array();
    for (std::size_t s = 0; s < cover.num_classes(); ++s) {
      std::vector<int> subset;
      for (std::size_t i = 0; i < cover.generators.size(); ++i)
        if (cover.spinc[i] == static_cast<int>(s)) subset.push_back(static_cast<int>(i));
      const int orbit = eq.class_orbit[s];
      const auto& shift = borel.orbits.at(static_cast<std::size_t>(orbit)).shift;
      Bigraded r;
      for (const auto& [key, v] : graded_homology(cover.differential, subset, eq.alexander, eq.maslov)) {
        r[{key.first + shift.value_or(0), key.second}] += static_cast<long long>(v);
      }
      classes.push_back({{"class", s},
                         {"orbit", orbit},
                         {"conjugate", eq.conjugate_class[s]},
                         {"generators", subset.size()},
                         {"alexander_normalized", shift.has_value()},
                         {"tilde", bigraded_json(r)},
                         {"tilde_total", total(r)}});
    }
    cj["classes"] = classes;
    json orbits = json::array();
    for (const auto& o : borel.orbits) {
      json oj;
      oj["classes"] = o.classes;
      oj["canonical"] = o.canonical;
      oj["alexander_shift"] = o.shift ? json(*o.shift) : json(nullptr);
      oj["alignment"] = o.canonical ? "symmetric" : (o.shift ? "symmetric, conjugate pair (ambiguous)" : "relative only");
      oj["e1"] = bigraded_json(o.e1);
      oj["e1_total"] = o.e1_total;
      oj["hat_total"] = o.hat_total;
      oj["localized_total"] = o.localized_total;
      orbits.push_back(oj);
    }
    cj["orbits"] = orbits;
    json blocks = json::array();
    for (const auto& b : borel.blocks) {
      blocks.push_back({{"orbit", b.orbit}, {"alexander", b.alexander}, {"dim", b.dim}, {"e1", b.e1}, {"localized", b.localized}});
    }
    cj["blocks"] = blocks;
    cj["e1_total"] = borel.e1_total;
    cj["hat_total"] = borel.hat_total;
    cj["localized_total"] = borel.localized_total;
    cj["canonical_hat"] = bigraded_json(borel.canonical_hat);
    cj["canonical_hat_total"] = borel.orbits.at(0).hat_total;
    report["cover"] = cj;

    for (const auto& vd : rank_verdicts(tilde, n, borel)) {
      verdicts.push_back({{"name", vd.name}, {"holds", vd.holds}, {"lhs", vd.lhs}, {"rhs", vd.rhs}, {"detail", vd.detail}});
    }
    const long long det = bj.value("determinant", 0LL);
    verdicts.push_back({{"name", "spinc_classes_match_determinant"},
                        {"holds", static_cast<long long>(cover.num_classes()) == det},
                        {"lhs", cover.num_classes()},
                        {"rhs", det},
                        {"detail", "number of cover spin^c classes equals |Delta(-1)|"}});
    verdicts.push_back({{"name", "invariant_generators_match_base"},
                        {"holds", fixed == static_cast<long long>(base.generators.size())},
                        {"lhs", fixed},
                        {"rhs", base.generators.size()},
                        {"detail", "tau-invariant cover generators correspond to base generators"}});
    if (opts.timing) timing["cover_ms"] = ms_since(t0);
  }
  report["verdicts"] = verdicts;
  bool ok = true;
  for (const auto& vd : verdicts) ok = ok && vd["holds"].get<bool>();
  report["all_verdicts_hold"] = ok;
  if (opts.checks) {
    const json checks = run_checks({});
    report["checks"] = checks;
    report["all_verdicts_hold"] = ok && checks["passed"].get<bool>();
  }
  if (opts.timing) report["timing"] = timing;
  return report;
}

bool all_verdicts_hold(const json& report) { return report.value("all_verdicts_hold", false); }

namespace {

std::string ranks_line(const json& arr) {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : arr) {
    if (!first) os << ", ";
    first = false;
    os << "A=" << e["alexander"].get<long long>() << ":" << e["rank"].get<long long>();
  }
  return os.str();
}

}  // namespace

std::string render_text(const json& r) {
  std::ostringstream os;
  os << "input: " << r["input"].get<std::string>() << "\n";
  const json& b = r["base"];
  const json& bd = b["diagram"];
  os << "base: genus " << bd["genus"] << ", n = " << bd["basepoint_pairs"] << ", " << bd["points"] << " points, "
     << bd["regions"] << " regions, " << b["generators"] << " generators\n";
  os << "  tilde rank " << b["tilde_total"];
  if (b.contains("hat_total")) {
    os << ", hat rank " << b["hat_total"] << "\n";
    os << "  hat by Alexander: " << ranks_line(b["hat_by_alexander"]) << "\n";
    os << "  Alexander polynomial: " << b["alexander_polynomial"]["text"].get<std::string>() << ", determinant "
       << b["determinant"] << "\n";
  } else {
    os << " over " << b["spinc_classes"] << " spin^c classes\n";
  }
  if (r.contains("cover")) {
    const json& c = r["cover"];
    const json& cd = c["diagram"];
    os << "cover: genus " << cd["genus"] << ", " << cd["points"] << " points, " << cd["regions"] << " regions, "
       << c["generators"] << " generators (" << c["invariant_generators"] << " invariant)\n";
    os << "  spin^c classes " << c["spinc_classes"] << ", E1 rank " << c["e1_total"] << ", hat rank "
       << c["hat_total"] << ", localized rank " << c["localized_total"] << "\n";
    for (const auto& o : c["orbits"]) {
      os << "  orbit {";
      bool first = true;
      for (const auto& s : o["classes"]) {
        os << (first ? "" : ", ") << s.get<int>();
        first = false;
      }
      os << "}" << (o["canonical"].get<bool>() ? " canonical" : "") << ": E1 " << o["e1_total"] << ", localized "
         << o["localized_total"] << "\n";
    }
  }
  if (!r["verdicts"].empty()) {
    os << "verdicts:\n";
    for (const auto& v : r["verdicts"]) {
      os << "  [" << (v["holds"].get<bool>() ? "ok" : "FAIL") << "] " << v["name"].get<std::string>() << ": "
         << v["lhs"] << " vs " << v["rhs"] << "\n";
    }
  }
  if (r.contains("checks")) os << render_checks_text(r["checks"]);
  if (r.contains("timing")) {
    os << std::fixed << std::setprecision(1) << "timing:";
    for (const auto& [k, v] : r["timing"].items()) os << " " << k << "=" << v.get<double>();
    os << "\n";
  }
  os << (all_verdicts_hold(r) ? "all verdicts hold\n" : "VERDICT FALSIFIED\n");
  return os.str();
}

// ---------------------------------------------------------------------------
// Identity suite

namespace {

long long binomial(int m, int k) {
  if (k < 0 || k > m) return 0;
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
  return b;
}

}  // namespace

json run_checks(const ChecksOptions& opts) {
  json out;
  out["max_n"] = opts.max_n;
  bool ok = true;

  json sig = json::array();
  for (int k = 1; k <= opts.max_n; ++k) {
    const bool pass = check_sigma_doubling(k);
    ok = ok && pass;
    sig.push_back({{"k", k}, {"passed", pass}});
  }
  out["sigma_doubling"] = sig;

  json betti = json::array();
  for (int n = 2; n <= opts.max_n; ++n) {
    const int m = 2 * n - 1, r = n - 1;
    const auto got = sym_wedge_betti(m, r);
    std::vector<long long> want;
    for (int k = 0; k <= r; ++k) want.push_back(binomial(m, k));
    const bool pass = got == want;
    ok = ok && pass;
    betti.push_back({{"m", m}, {"r", r}, {"betti", got}, {"passed", pass}});
  }
  out["sym_wedge_betti"] = betti;

  json surj = json::array();
  for (int n = 2; n <= opts.max_n; ++n) {
    const bool pass = check_i1_surjectivity(n);
    ok = ok && pass;
    surj.push_back({{"n", n}, {"passed", pass}});
  }
  out["i1_surjectivity"] = surj;

  if (opts.fixture) {
    json fx;
    try {
      fx = json::parse(read_file(*opts.fixture));
    } catch (const json::exception& e) {
      throw ParseError(0, std::string("fixture: ") + e.what());
    }
    json mismatches = json::array();
    for (const auto& e : fx.value("sigma_doubling", json::array())) {
      const int k = e.at("k").get<int>();
      const int j = e.at("j").get<int>();
      const auto s = sigma_doubling(k);
      const std::string got = j >= 1 && j <= 2 * k ? s[static_cast<std::size_t>(j - 1)].to_string() : "out of range";
      if (got != e.at("value").get<std::string>()) {
        mismatches.push_back({{"check", "sigma_doubling"}, {"k", k}, {"j", j}, {"got", got}, {"expected", e.at("value")}});
      }
    }
    for (const auto& e : fx.value("sym_wedge_betti", json::array())) {
      const int m = e.at("m").get<int>();
      const int r = e.at("r").get<int>();
      const auto got = sym_wedge_betti(m, r);
      if (json(got) != e.at("betti")) {
        mismatches.push_back({{"check", "sym_wedge_betti"}, {"m", m}, {"r", r}, {"got", got}, {"expected", e.at("betti")}});
      }
    }
    for (const auto& e : fx.value("i1_surjectivity", json::array())) {
      const int n = e.at("n").get<int>();
      const bool got = check_i1_surjectivity(n);
      if (got != e.at("value").get<bool>()) {
        mismatches.push_back({{"check", "i1_surjectivity"}, {"n", n}, {"got", got}, {"expected", e.at("value")}});
      }
    }
    ok = ok && mismatches.empty();
    out["fixture"] = {{"mismatches", mismatches}, {"passed", mismatches.empty()}};
  }
  out["passed"] = ok;
  return out;
}

std::string render_checks_text(const json& c) {
  std::ostringstream os;
  auto line = [&](const char* name, const json& arr, const char* key) {
    long long pass = 0;
    for (const auto& e : arr) pass += e["passed"].get<bool>() ? 1 : 0;
    os << "  " << name << ": " << pass << "/" << arr.size() << " passed (" << key << " <= " << c["max_n"] << ")\n";
  };
  os << "checks:\n";
  line("sigma_doubling", c["sigma_doubling"], "k");
  line("sym_wedge_betti", c["sym_wedge_betti"], "n");
  line("i1_surjectivity", c["i1_surjectivity"], "n");
  if (c.contains("fixture")) {
    os << "  fixture: " << (c["fixture"]["passed"].get<bool>() ? "matches" : "MISMATCH") << "\n";
    for (const auto& m : c["fixture"]["mismatches"]) os << "    " << m.dump() << "\n";
  }
  os << (c["passed"].get<bool>() ? "all checks pass\n" : "CHECKS FAILED\n");
  return os.str();
}

}  // namespace hfkb
