#include "hfkb/equivariant.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hfkb {

std::vector<int> tau_sharp(const CoveredDiagram& c, const FloerComplex& complex) {
  const Diagram& d = c.cover;
  std::vector<int> perm(complex.generators.size(), -1);
  for (std::size_t i = 0; i < complex.generators.size(); ++i) {
    const auto& x = complex.generators[i];
    Generator image{std::vector<int>(x.points.size(), -1)};
    for (int p : x.points) {
      const int q = c.tau_point[static_cast<std::size_t>(p)];
      const int a = d.points()[static_cast<std::size_t>(q)].alpha_curve;
      image.points[static_cast<std::size_t>(d.curve_rank(a))] = q;
    }
    perm[i] = complex.index_of(image);
    if (perm[i] < 0) throw EquivariantError("tau image of generator " + std::to_string(i) + " is not a generator");
  }
  return perm;
}

std::optional<std::pair<Generator, Generator>> decompose_generator(const CoveredDiagram& c, const Generator& x) {
  const Diagram& base = c.base;
  const Diagram& cover = c.cover;
  const std::size_t k = base.alpha_curves().size();
  if (x.points.size() != 2 * k) return std::nullopt;
  // Cover alpha curve 2i + s lies over base curve i; pair the two lifts.
  std::vector<std::array<int, 2>> over(k, {-1, -1});
  for (int p : x.points) {
    const int ca = cover.points()[static_cast<std::size_t>(p)].alpha_curve;
    const int ba = c.curve_base[static_cast<std::size_t>(ca)];
    const auto bi = static_cast<std::size_t>(base.curve_rank(ba));
    const int slot = over[bi][0] < 0 ? 0 : 1;
    over[bi][static_cast<std::size_t>(slot)] = c.point_base[static_cast<std::size_t>(p)];
  }
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Generator a{std::vector<int>(k)}, b{std::vector<int>(k)};
    std::set<int> beta_a, beta_b;
    for (std::size_t i = 0; i < k; ++i) {
      const int pick = (mask >> i) & 1u;
      a.points[i] = over[i][static_cast<std::size_t>(pick)];
      b.points[i] = over[i][static_cast<std::size_t>(1 - pick)];
      beta_a.insert(base.points()[static_cast<std::size_t>(a.points[i])].beta_curve);
      beta_b.insert(base.points()[static_cast<std::size_t>(b.points[i])].beta_curve);
    }
    if (beta_a.size() == k && beta_b.size() == k) {
      if (b < a) std::swap(a, b);
      return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

EquivariantComplex build_equivariant(const CoveredDiagram& c, const FloerComplex& complex) {
  EquivariantComplex e;
  e.complex = &complex;
  e.tau = tau_sharp(c, complex);
  const std::size_t ng = complex.generators.size();
  for (std::size_t i = 0; i < ng; ++i) {
    if (e.tau[static_cast<std::size_t>(e.tau[i])] != static_cast<int>(i)) {
      throw EquivariantError("tau is not an involution at generator " + std::to_string(i));
    }
  }
  const F2Matrix& d = complex.differential;
  for (std::size_t y = 0; y < ng; ++y) {
    for (std::size_t x = 0; x < ng; ++x) {
      if (d.get(y, x) != d.get(static_cast<std::size_t>(e.tau[y]), static_cast<std::size_t>(e.tau[x]))) {
        throw EquivariantError("tau is not a chain map: coefficient of generator " + std::to_string(y) +
                               " in d(" + std::to_string(x) + ") differs from its tau image");
      }
    }
  }

  // Classes and their conjugates.
  const std::size_t nc = complex.num_classes();
  e.conjugate_class.assign(nc, -1);
  for (std::size_t i = 0; i < ng; ++i) {
    const int s = complex.spinc[i];
    const int t = complex.spinc[static_cast<std::size_t>(e.tau[i])];
    int& slot = e.conjugate_class[static_cast<std::size_t>(s)];
    if (slot >= 0 && slot != t) throw EquivariantError("tau does not permute spin^c classes");
    slot = t;
    if (e.tau[i] == static_cast<int>(i)) {
      if (e.canonical_class >= 0 && e.canonical_class != s) {
        throw EquivariantError("invariant generators lie in more than one spin^c class");
      }
      e.canonical_class = s;
    }
  }
  if (e.canonical_class < 0) throw EquivariantError("no tau-invariant generators");
  if (e.conjugate_class[static_cast<std::size_t>(e.canonical_class)] != e.canonical_class) {
    throw EquivariantError("canonical class is not tau-invariant");
  }
  e.class_orbit.assign(nc, -1);
  e.orbit_classes.push_back({e.canonical_class});
  e.class_orbit[static_cast<std::size_t>(e.canonical_class)] = 0;
  for (std::size_t s = 0; s < nc; ++s) {
    if (e.class_orbit[s] >= 0) continue;
    const int t = e.conjugate_class[s];
    const int id = static_cast<int>(e.orbit_classes.size());
    e.class_orbit[s] = id;
    std::vector<int> members{static_cast<int>(s)};
    if (t != static_cast<int>(s)) {
      e.class_orbit[static_cast<std::size_t>(t)] = id;
      members.push_back(t);
    }
    e.orbit_classes.push_back(std::move(members));
  }

  // Transport gradings to each conjugate class.
  e.alexander = complex.alexander;
  e.maslov = complex.maslov;
  std::map<int, std::pair<long long, long long>> offset;
  for (std::size_t i = 0; i < ng; ++i) {
    const int s = complex.spinc[i];
    const int t = complex.spinc[static_cast<std::size_t>(e.tau[i])];
    const auto j = static_cast<std::size_t>(e.tau[i]);
    if (s == t) {
      if (complex.alexander[j] != complex.alexander[i] || complex.maslov[j] != complex.maslov[i]) {
        throw EquivariantError("tau changes the gradings within the tau-invariant class " + std::to_string(s));
      }
      continue;
    }
    if (s < t) continue;
    // s is the higher-numbered member: take gradings from tau(x) in t.
    e.alexander[i] = complex.alexander[j];
    e.maslov[i] = complex.maslov[j];
    const std::pair<long long, long long> delta{complex.alexander[i] - e.alexander[i], complex.maslov[i] - e.maslov[i]};
    const auto [it, inserted] = offset.emplace(s, delta);
    if (!inserted && it->second != delta) {
      throw EquivariantError("relative gradings of class " + std::to_string(s) + " disagree with its conjugate");
    }
  }

  // Blocks by (orbit, Alexander).
  std::map<std::pair<int, long long>, std::vector<int>> groups;
  for (std::size_t i = 0; i < ng; ++i) {
    groups[{e.class_orbit[static_cast<std::size_t>(complex.spinc[i])], e.alexander[i]}].push_back(static_cast<int>(i));
  }
  for (auto& [key, gens] : groups) {
    EquivariantBlock b;
    b.orbit = key.first;
    b.alexander = key.second;
    b.generators = gens;
    const std::size_t k = gens.size();
    std::map<int, std::size_t> local;
    for (std::size_t a = 0; a < k; ++a) local[gens[a]] = a;
    b.total = PolyMatrix(k, k);
    const F2Poly one = F2Poly::constant(true);
    const F2Poly q = F2Poly::monomial(1);
    for (std::size_t col = 0; col < k; ++col) {
      const auto x = static_cast<std::size_t>(gens[col]);
      for (std::size_t row = 0; row < k; ++row) {
        if (d.get(static_cast<std::size_t>(gens[row]), x)) b.total(row, col) += one;
      }
      const int tx = e.tau[x];
      if (tx != static_cast<int>(x)) {
        const auto it = local.find(tx);
        if (it == local.end()) throw EquivariantError("tau leaves the block of generator " + std::to_string(x));
        b.total(col, col) += q;
        b.total(it->second, col) += q;
      }
    }
    // d must not leave the block either.
    for (std::size_t col = 0; col < k; ++col) {
      for (std::size_t y = 0; y < ng; ++y) {
        if (d.get(y, static_cast<std::size_t>(gens[col])) && !local.contains(static_cast<int>(y))) {
          throw EquivariantError("differential leaves the block of generator " + std::to_string(gens[col]));
        }
      }
    }
    if (!(b.total * b.total).is_zero()) {
      throw EquivariantError("total differential does not square to zero on block (" + std::to_string(b.orbit) +
                             ", " + std::to_string(b.alexander) + ")");
    }
    e.blocks.push_back(std::move(b));
  }
  return e;
}

BorelReport localized_ranks(const EquivariantComplex& e, int n) {
  const FloerComplex& c = *e.complex;
  BorelReport rep;
  rep.n = n;
  rep.orbits.resize(e.orbit_classes.size());

  std::vector<std::vector<int>> by_class(c.num_classes());
  for (std::size_t i = 0; i < c.generators.size(); ++i) by_class[static_cast<std::size_t>(c.spinc[i])].push_back(static_cast<int>(i));

  for (std::size_t o = 0; o < e.orbit_classes.size(); ++o) {
    OrbitReport& orb = rep.orbits[o];
    orb.classes = e.orbit_classes[o];
    orb.canonical = o == 0;
    std::vector<Bigraded> per_class;
    for (int s : orb.classes) {
      Bigraded r;
      for (const auto& [key, v] : graded_homology(c.differential, by_class[static_cast<std::size_t>(s)], e.alexander, e.maslov)) {
        r[key] += static_cast<long long>(v);
      }
      per_class.push_back(r);
      for (const auto& [key, v] : r) orb.e1[key] += v;
      for (const auto& [key, v] : divide_by_v(r, n)) orb.hat_total += v;
    }
    if (per_class.size() == 2) orb.conjugate_ranks_equal = per_class[0] == per_class[1];
    orb.shift = symmetric_shift(collapse_maslov(orb.e1), n);
    if (orb.shift) orb.e1 = shift_alexander(orb.e1, *orb.shift);
    for (const auto& [key, v] : orb.e1) orb.e1_total += v;
    if (orb.canonical) rep.canonical_hat = divide_by_v(orb.e1, n);
  }

  for (const auto& b : e.blocks) {
    BlockReport br;
    br.orbit = b.orbit;
    const auto& orb = rep.orbits[static_cast<std::size_t>(b.orbit)];
    br.alexander = b.alexander + orb.shift.value_or(0);
    br.dim = b.generators.size();
    for (const auto& [key, v] : orb.e1) {
      if (key.first == br.alexander) br.e1 += static_cast<std::size_t>(v);
    }
    br.localized = br.dim - 2 * fq_matrix_rank(b.total);
    rep.orbits[static_cast<std::size_t>(b.orbit)].localized_total += static_cast<long long>(br.localized);
    rep.blocks.push_back(br);
  }
  for (const auto& orb : rep.orbits) {
    rep.e1_total += orb.e1_total;
    rep.hat_total += orb.hat_total;
    rep.localized_total += orb.localized_total;
  }
  return rep;
}

std::vector<Verdict> rank_verdicts(const Bigraded& base_tilde, int base_n, const BorelReport& cover) {
  if (base_n != cover.n) {
    throw EquivariantError("basepoint counts differ: base n = " + std::to_string(base_n) + ", cover n = " +
                           std::to_string(cover.n));
  }
  const int n = base_n;
  const ByAlexander base_a = collapse_maslov(base_tilde);
  const Bigraded base_hat = divide_by_v(base_tilde, n);
  long long base_total = 0, base_hat_total = 0;
  for (const auto& [a, v] : base_a) base_total += v;
  for (const auto& [k, v] : base_hat) base_hat_total += v;

  const OrbitReport& s0 = cover.orbits.at(0);
  ByAlexander s0_e1 = collapse_maslov(s0.e1);
  ByAlexander s0_loc;
  for (const auto& b : cover.blocks) {
    if (b.orbit == 0) s0_loc[b.alexander] += static_cast<long long>(b.localized);
  }
  std::set<long long> grades;
  for (const auto& [a, v] : base_a) grades.insert(a);
  for (const auto& [a, v] : s0_e1) grades.insert(a);
  for (const auto& [a, v] : s0_loc) grades.insert(a);
  auto at = [](const ByAlexander& m, long long a) {
    const auto it = m.find(a);
    return it == m.end() ? 0LL : it->second;
  };

  std::vector<Verdict> out;
  out.push_back({"localization_equality", cover.localized_total == base_total, cover.localized_total, base_total,
                 "total localized rank equals base tilde rank"});
  {
    Verdict v{"localization_by_alexander", s0.shift.has_value(), 0, 0, "canonical-orbit localized rank per Alexander grading equals base tilde rank"};
    for (long long a : grades) {
      if (at(s0_loc, a) != at(base_a, a)) {
        v.holds = false;
        v.detail += "; differs at A = " + std::to_string(a);
      }
      v.lhs += at(s0_loc, a);
      v.rhs += at(base_a, a);
    }
    out.push_back(v);
  }
  {
    long long off = 0;
    for (std::size_t o = 1; o < cover.orbits.size(); ++o) off += cover.orbits[o].localized_total;
    out.push_back({"noncanonical_localized_zero", off == 0, off, 0, "localized rank of non-canonical orbits"});
  }
  {
    bool ok = true;
    long long l = 0, r = 0;
    for (const auto& b : cover.blocks) {
      if (b.localized > b.e1 || (b.dim - b.localized) % 2 != 0) ok = false;
      l += static_cast<long long>(b.localized);
      r += static_cast<long long>(b.e1);
    }
    out.push_back({"localized_bounded_by_e1", ok, l, r, "per block, localized rank <= E1 rank"});
  }
  {
    bool ok = true;
    for (const auto& orb : cover.orbits) ok = ok && orb.conjugate_ranks_equal;
    out.push_back({"conjugate_rank_equality", ok, 0, 0, "classes s and tau(s) have equal graded ranks"});
  }
  out.push_back({"total_rank_inequality", cover.hat_total >= base_hat_total, cover.hat_total, base_hat_total,
                 "cover hat rank >= base hat rank"});
  out.push_back({"canonical_rank_inequality", s0.hat_total >= base_hat_total, s0.hat_total, base_hat_total,
                 "canonical class hat rank >= base hat rank"});
  {
    Verdict v{"alexander_rank_inequality", s0.shift.has_value(), 0, 0, "canonical class tilde rank >= base tilde rank at every Alexander grading"};
    for (long long a : grades) {
      if (at(s0_e1, a) < at(base_a, a)) {
        v.holds = false;
        v.detail += "; fails at A = " + std::to_string(a);
      }
      v.lhs += at(s0_e1, a);
      v.rhs += at(base_a, a);
    }
    out.push_back(v);
  }
  {
    long long top = 0;
    bool any = false;
    for (const auto& [a, v] : s0_e1) {
      if (v != 0) top = a, any = true;
    }
    const ByAlexander cover_hat = collapse_maslov(cover.canonical_hat);
    const ByAlexander bh = collapse_maslov(base_hat);
    const long long l = at(cover_hat, top);
    const long long r = at(bh, top);
    out.push_back({"top_grading_inequality", any && s0.shift.has_value() && l >= r, l, r,
                   "canonical class hat rank >= base hat rank at the top grading A = " + std::to_string(top)});
  }
  return out;
}

}  // namespace hfkb
