#include "hfkb/floer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace hfkb {

NotNiceError::NotNiceError(std::vector<int> regions)
    : FloerError([&] {
        std::string msg = "diagram is not nice; offending regions:";
        for (int r : regions) msg += " " + std::to_string(r);
        return msg;
      }()),
      regions_(std::move(regions)) {}

namespace {

long long to_ll(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min())) {
    throw FloerError("domain multiplicity exceeds 64 bits");
  }
  return static_cast<long long>(v);
}

BigInt mod_nonneg(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

std::vector<Generator> enumerate_generators(const Diagram& d) {
  const auto& alphas = d.alpha_curves();
  const std::size_t k = alphas.size();
  std::vector<std::vector<int>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    choices[i] = d.curves()[static_cast<std::size_t>(alphas[i])].points;
    std::sort(choices[i].begin(), choices[i].end());
  }
  std::vector<Generator> out;
  std::vector<bool> used(d.curves().size(), false);
  Generator cur{std::vector<int>(k, -1)};
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int p : choices[i]) {
      const int b = d.points()[static_cast<std::size_t>(p)].beta_curve;
      if (used[static_cast<std::size_t>(b)]) continue;
      used[static_cast<std::size_t>(b)] = true;
      cur.points[i] = p;
      self(self, i + 1);
      used[static_cast<std::size_t>(b)] = false;
    }
  };
  if (k > 0 && alphas.size() == d.beta_curves().size()) rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Domain solver

DomainSolver::DomainSolver(const Diagram& d, bool pointed) : d_(&d), pointed_(pointed) {
  region_col_.assign(static_cast<std::size_t>(d.num_regions()), -1);
  for (int r = 0; r < d.num_regions(); ++r) {
    if (pointed && d.has_basepoint(r)) continue;
    region_col_[static_cast<std::size_t>(r)] = static_cast<int>(col_region_.size());
    col_region_.push_back(r);
  }
  const std::size_t nr = col_region_.size();
  const std::size_t ne = static_cast<std::size_t>(d.num_edges());
  const auto sides = edge_sides(d);
  ZMatrix b(ne, nr + d.curves().size());
  for (std::size_t e = 0; e < ne; ++e) {
    const int l = sides.left[e];
    const int r = sides.right[e];
    if (l < 0 || r < 0) throw FloerError("edge " + std::to_string(e) + " is missing a side");
    if (region_col_[static_cast<std::size_t>(l)] >= 0) b(e, static_cast<std::size_t>(region_col_[static_cast<std::size_t>(l)])) += 1;
    if (region_col_[static_cast<std::size_t>(r)] >= 0) b(e, static_cast<std::size_t>(region_col_[static_cast<std::size_t>(r)])) -= 1;
    b(e, nr + static_cast<std::size_t>(d.edge(static_cast<int>(e)).curve)) -= 1;
  }
  snf_ = smith_form(b);
  scale_ = 1;
  for (std::size_t i = 0; i < snf_.rank; ++i) scale_ = boost::multiprecision::lcm(scale_, snf_.factors[i]);
  for (std::size_t j = snf_.rank; j < b.cols(); ++j) {
    std::vector<long long> v(static_cast<std::size_t>(d.num_regions()), 0);
    for (std::size_t i = 0; i < nr; ++i) v[static_cast<std::size_t>(col_region_[i])] = to_ll(snf_.right(i, j));
    periodic_.push_back(std::move(v));
  }
}

std::vector<BigInt> DomainSolver::torsion() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    if (snf_.factors[i] > 1) out.push_back(snf_.factors[i]);
  }
  return out;
}

std::size_t DomainSolver::free_rank() const { return snf_.left.rows() - snf_.rank; }

std::vector<BigInt> DomainSolver::transform(const std::vector<long long>& chain) const {
  std::vector<BigInt> v(chain.begin(), chain.end());
  return snf_.left.apply(v);
}

std::vector<BigInt> DomainSolver::chain_class(const std::vector<long long>& chain) const {
  const auto g = transform(chain);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    if (snf_.factors[i] > 1) out.push_back(mod_nonneg(g[i], snf_.factors[i]));
  }
  for (std::size_t i = snf_.rank; i < g.size(); ++i) out.push_back(g[i]);
  return out;
}

std::optional<std::vector<long long>> DomainSolver::solve_chain(const std::vector<long long>& chain) const {
  const auto g = transform(chain);
  std::vector<BigInt> w(snf_.right.rows(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i < snf_.rank) {
      if (g[i] % snf_.factors[i] != 0) return std::nullopt;
      w[i] = g[i] / snf_.factors[i];
    } else if (g[i] != 0) {
      return std::nullopt;
    }
  }
  const auto z = snf_.right.apply(w);
  std::vector<long long> out(static_cast<std::size_t>(d_->num_regions()), 0);
  for (std::size_t i = 0; i < col_region_.size(); ++i) out[static_cast<std::size_t>(col_region_[i])] = to_ll(z[i]);
  return out;
}

std::vector<long long> DomainSolver::generator_chain(const Generator& x) const {
  const Diagram& d = *d_;
  std::vector<long long> chain(static_cast<std::size_t>(d.num_edges()), 0);
  for (int p : x.points) {
    const auto& pt = d.points()[static_cast<std::size_t>(p)];
    for (int k = 0; k < pt.alpha_pos; ++k) chain[static_cast<std::size_t>(d.edge_id(pt.alpha_curve, k))] += 1;
    for (int k = 0; k < pt.beta_pos; ++k) chain[static_cast<std::size_t>(d.edge_id(pt.beta_curve, k))] -= 1;
  }
  return chain;
}

std::vector<BigInt> DomainSolver::label(const Generator& x) const { return chain_class(generator_chain(x)); }

std::vector<BigInt> DomainSolver::potential(const Generator& x) const {
  const auto g = transform(generator_chain(x));
  std::vector<BigInt> w(snf_.right.rows(), 0);
  for (std::size_t i = 0; i < snf_.rank; ++i) w[i] = g[i] * (scale_ / snf_.factors[i]);
  const auto z = snf_.right.apply(w);
  std::vector<BigInt> out(static_cast<std::size_t>(d_->num_regions()), 0);
  for (std::size_t i = 0; i < col_region_.size(); ++i) out[static_cast<std::size_t>(col_region_[i])] = z[i];
  return out;
}

std::vector<long long> DomainSolver::domain_from_potentials(const std::vector<BigInt>& px,
                                                            const std::vector<BigInt>& py) const {
  std::vector<long long> out(px.size(), 0);
  for (std::size_t i = 0; i < px.size(); ++i) {
    const BigInt diff = py[i] - px[i];
    if (diff % scale_ != 0) throw FloerError("generators are not joined by a domain");
    out[i] = to_ll(diff / scale_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domains and gradings

std::vector<long long> connecting_chain(const Diagram& d, const Generator& x, const Generator& y) {
  std::vector<long long> chain(static_cast<std::size_t>(d.num_edges()), 0);
  auto add_arc = [&](int curve, int from_pos, int to_pos) {
    const int len = static_cast<int>(d.curves()[static_cast<std::size_t>(curve)].points.size());
    const int fwd = ((to_pos - from_pos) % len + len) % len;
    if (fwd == 0) return;
    if (fwd <= len - fwd) {
      for (int k = 0; k < fwd; ++k) chain[static_cast<std::size_t>(d.edge_id(curve, (from_pos + k) % len))] += 1;
    } else {
      for (int k = 0; k < len - fwd; ++k) chain[static_cast<std::size_t>(d.edge_id(curve, (to_pos + k) % len))] -= 1;
    }
  };
  const auto& pts = d.points();
  for (std::size_t i = 0; i < x.points.size(); ++i) {
    const auto& px = pts[static_cast<std::size_t>(x.points[i])];
    const auto& py = pts[static_cast<std::size_t>(y.points[i])];
    add_arc(px.alpha_curve, px.alpha_pos, py.alpha_pos);
  }
  std::map<int, int> x_on_beta, y_on_beta;
  for (int p : x.points) x_on_beta[pts[static_cast<std::size_t>(p)].beta_curve] = pts[static_cast<std::size_t>(p)].beta_pos;
  for (int p : y.points) y_on_beta[pts[static_cast<std::size_t>(p)].beta_curve] = pts[static_cast<std::size_t>(p)].beta_pos;
  for (const auto& [curve, ypos] : y_on_beta) add_arc(curve, ypos, x_on_beta.at(curve));
  return chain;
}

std::vector<BigInt> epsilon(const Diagram& d, const Generator& x, const Generator& y) {
  return DomainSolver(d, false).chain_class(connecting_chain(d, x, y));
}

std::optional<Domain> domain_between(const Diagram& d, const Generator& x, const Generator& y) {
  auto m = DomainSolver(d, false).solve_chain(connecting_chain(d, x, y));
  if (!m) return std::nullopt;
  return Domain{x, y, std::move(*m)};
}

namespace {

long long corner_sum(const std::vector<std::array<int, 4>>& corners, const std::vector<long long>& m, int p) {
  long long s = 0;
  for (int r : corners[static_cast<std::size_t>(p)]) s += m[static_cast<std::size_t>(r)];
  return s;
}

long long maslov4(const Diagram& d, const std::vector<std::array<int, 4>>& corners, const Generator& x,
                  const Generator& y, const std::vector<long long>& m) {
  long long s = 0;
  for (int r = 0; r < d.num_regions(); ++r) {
    const long long c = static_cast<long long>(d.regions()[static_cast<std::size_t>(r)].corners.size());
    s += m[static_cast<std::size_t>(r)] * (4 - c);
  }
  for (int p : x.points) s += corner_sum(corners, m, p);
  for (int p : y.points) s += corner_sum(corners, m, p);
  return s;
}

}  // namespace

long long maslov_index_times4(const Diagram& d, const Domain& dom) {
  return maslov4(d, corner_regions(d), dom.from, dom.to, dom.multiplicity);
}

long long maslov_index(const Diagram& d, const Domain& dom) {
  const long long m4 = maslov_index_times4(d, dom);
  if (m4 % 4 != 0) throw FloerError("Maslov index " + std::to_string(m4) + "/4 is not an integer");
  return m4 / 4;
}

BasepointCounts basepoint_counts(const Diagram& d, const std::vector<long long>& multiplicity) {
  BasepointCounts c;
  for (const auto& [r, b] : d.basepoints()) (b.is_z ? c.z : c.w) += multiplicity[static_cast<std::size_t>(r)];
  return c;
}

std::optional<std::pair<long long, long long>> relative_gradings(const Diagram& d, const Generator& x,
                                                                 const Generator& y) {
  const auto dom = domain_between(d, x, y);
  if (!dom) return std::nullopt;
  const auto bc = basepoint_counts(d, dom->multiplicity);
  return std::make_pair(maslov_index(d, *dom) - 2 * bc.w, bc.z - bc.w);
}

// ---------------------------------------------------------------------------
// The complex

int FloerComplex::index_of(const Generator& g) const {
  const auto it = std::lower_bound(generators.begin(), generators.end(), g);
  if (it == generators.end() || *it != g) return -1;
  return static_cast<int>(it - generators.begin());
}

namespace {

// All translates of base by the lattice with every entry in {0, 1}.
void zero_one_translates(const std::vector<long long>& base, const std::vector<std::vector<long long>>& basis,
                         int bound, std::vector<std::vector<long long>>& out) {
  const std::size_t k = basis.size();
  const std::size_t len = base.size();
  if (k == 0) {
    if (std::all_of(base.begin(), base.end(), [](long long v) { return v == 0 || v == 1; })) out.push_back(base);
    return;
  }
  std::vector<int> last(len, -1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < len; ++i) {
      if (basis[j][i] != 0) last[i] = static_cast<int>(j);
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (last[i] < 0 && base[i] != 0 && base[i] != 1) return;
  }
  std::vector<long long> acc = base;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == k) {
      out.push_back(acc);
      return;
    }
    for (long long c = -bound; c <= bound; ++c) {
      for (std::size_t i = 0; i < len; ++i) acc[i] += c * basis[j][i];
      bool ok = true;
      for (std::size_t i = 0; i < len && ok; ++i) {
        if (last[i] == static_cast<int>(j) && acc[i] != 0 && acc[i] != 1) ok = false;
      }
      if (ok) self(self, j + 1);
      for (std::size_t i = 0; i < len; ++i) acc[i] -= c * basis[j][i];
    }
  };
  rec(rec, 0);
}

// Empty embedded bigon or rectangle test for a 0/1 domain from x to y.
bool counts_in_differential(const Diagram& d, const std::vector<std::array<int, 4>>& corners, const Generator& x,
                            const Generator& y, const std::vector<long long>& m) {
  const auto bc = basepoint_counts(d, m);
  if (bc.w != 0 || bc.z != 0) return false;
  if (maslov4(d, corners, x, y, m) != 4) return false;
  std::vector<int> xs = x.points, ys = y.points;
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<int> fixed, moving;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(fixed));
  std::set_symmetric_difference(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(moving));
  for (int p : fixed) {
    for (int r : corners[static_cast<std::size_t>(p)]) {
      if (m[static_cast<std::size_t>(r)] != 0) return false;
    }
  }
  for (int p : moving) {
    int ones = 0;
    for (int r : corners[static_cast<std::size_t>(p)]) ones += m[static_cast<std::size_t>(r)] != 0 ? 1 : 0;
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace

FloerComplex build_complex(const Diagram& d, const ComplexOptions& opts) {
  const auto nice = is_nice(d);
  if (!nice.nice) throw NotNiceError(nice.offending_regions);

  FloerComplex c;
  c.generators = enumerate_generators(d);
  const std::size_t ng = c.generators.size();
  const auto corners = corner_regions(d);

  // Spin^c classes and gradings from the unpointed system.
  const DomainSolver full(d, false);
  c.torsion = full.torsion();
  c.free_rank = full.free_rank();
  std::map<std::vector<BigInt>, int> class_id;
  std::vector<std::vector<BigInt>> pot(ng);
  std::vector<int> anchor;
  c.spinc.resize(ng);
  c.maslov.resize(ng);
  c.alexander.resize(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    auto lab = full.label(c.generators[i]);
    auto [it, inserted] = class_id.emplace(lab, static_cast<int>(c.class_labels.size()));
    if (inserted) {
      c.class_labels.push_back(std::move(lab));
      anchor.push_back(static_cast<int>(i));
    }
    c.spinc[i] = it->second;
    pot[i] = full.potential(c.generators[i]);
    const int a = anchor[static_cast<std::size_t>(c.spinc[i])];
    const auto m = full.domain_from_potentials(pot[static_cast<std::size_t>(a)], pot[i]);
    const long long mu4 = maslov4(d, corners, c.generators[static_cast<std::size_t>(a)], c.generators[i], m);
    if (mu4 % 4 != 0) throw FloerError("non-integral Maslov index between generators of one class");
    const auto bc = basepoint_counts(d, m);
    c.maslov[i] = -(mu4 / 4 - 2 * bc.w);
    c.alexander[i] = -(bc.z - bc.w);
  }

  // Differential from the pointed system.
  const DomainSolver pointed(d, true);
  std::vector<std::vector<BigInt>> plab(ng), ppot(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    plab[i] = pointed.label(c.generators[i]);
    ppot[i] = pointed.potential(c.generators[i]);
  }
  std::map<std::tuple<int, long long, long long>, std::vector<int>> bucket;
  for (std::size_t i = 0; i < ng; ++i) bucket[{c.spinc[i], c.alexander[i], c.maslov[i]}].push_back(static_cast<int>(i));
  const int bound = opts.max_domain_coeff > 0 ? opts.max_domain_coeff : d.num_regions();
  c.differential = F2Matrix(ng, ng);
  std::vector<std::vector<long long>> translates;
  for (std::size_t xi = 0; xi < ng; ++xi) {
    const auto it = bucket.find({c.spinc[xi], c.alexander[xi], c.maslov[xi] - 1});
    if (it == bucket.end()) continue;
    const Generator& x = c.generators[xi];
    for (int yi : it->second) {
      const Generator& y = c.generators[static_cast<std::size_t>(yi)];
      std::size_t moved = 0;
      for (std::size_t k = 0; k < x.points.size(); ++k) moved += x.points[k] != y.points[k] ? 1 : 0;
      if (moved == 0 || moved > 2) continue;
      if (plab[xi] != plab[static_cast<std::size_t>(yi)]) continue;
      const auto base = pointed.domain_from_potentials(ppot[xi], ppot[static_cast<std::size_t>(yi)]);
      translates.clear();
      zero_one_translates(base, pointed.periodic_basis(), bound, translates);
      std::size_t count = 0;
      for (const auto& m : translates) {
        if (counts_in_differential(d, corners, x, y, m)) ++count;
      }
      if (count % 2 == 1) {
        c.differential.set(static_cast<std::size_t>(yi), xi, true);
        ++(moved == 1 ? c.bigons : c.rectangles);
      }
    }
  }
  if (!(c.differential * c.differential).is_zero()) throw FloerError("differential does not square to zero");
  return c;
}

std::map<std::pair<long long, long long>, std::size_t> graded_homology(
    const F2Matrix& differential, const std::vector<int>& subset,
    const std::vector<long long>& alexander, const std::vector<long long>& maslov) {
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> groups;
  for (int g : subset) {
    groups[{alexander[static_cast<std::size_t>(g)], maslov[static_cast<std::size_t>(g)]}].push_back(static_cast<std::size_t>(g));
  }
  std::map<std::pair<long long, long long>, std::size_t> out_rank;
  for (const auto& [key, cols] : groups) {
    const auto below = groups.find({key.first, key.second - 1});
    out_rank[key] = below == groups.end() ? 0 : differential.submatrix(below->second, cols).rank();
  }
  std::map<std::pair<long long, long long>, std::size_t> out;
  for (const auto& [key, cols] : groups) {
    const auto above = out_rank.find({key.first, key.second + 1});
    const std::size_t in = above == out_rank.end() ? 0 : above->second;
    const std::size_t h = cols.size() - out_rank[key] - in;
    if (h > 0) out[key] = h;
  }
  return out;
}

GradedRanks homology_ranks(const FloerComplex& c) {
  std::vector<std::vector<int>> by_class(c.num_classes());
  for (std::size_t i = 0; i < c.generators.size(); ++i) by_class[static_cast<std::size_t>(c.spinc[i])].push_back(static_cast<int>(i));
  GradedRanks out;
  for (std::size_t s = 0; s < by_class.size(); ++s) {
    for (const auto& [key, r] : graded_homology(c.differential, by_class[s], c.alexander, c.maslov)) {
      out[{static_cast<int>(s), key.first, key.second}] = r;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded rank bookkeeping

ByAlexander collapse_maslov(const Bigraded& r) {
  ByAlexander out;
  for (const auto& [key, v] : r) {
    if (v != 0) out[key.first] += v;
  }
  return out;
}

std::optional<long long> symmetric_shift(const ByAlexander& r, int n) {
  long long lo = std::numeric_limits<long long>::max();
  long long hi = std::numeric_limits<long long>::min();
  for (const auto& [a, v] : r) {
    if (v == 0) continue;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (lo > hi) return 0;
  const long long twice = -(n - 1) - lo - hi;
  if (twice % 2 != 0) return std::nullopt;
  const long long s = twice / 2;
  for (const auto& [a, v] : r) {
    const long long mirror = -(n - 1) - (a + s) - s;
    const auto it = r.find(mirror);
    if ((it == r.end() ? 0 : it->second) != v) return std::nullopt;
  }
  return s;
}

Bigraded shift_alexander(const Bigraded& r, long long s) {
  Bigraded out;
  for (const auto& [key, v] : r) out[{key.first + s, key.second}] = v;
  return out;
}

Bigraded divide_by_v(const Bigraded& tilde, int n) {
  Bigraded cur;
  for (const auto& [k, v] : tilde) {
    if (v != 0) cur[k] = v;
  }
  for (int step = 0; step < n - 1; ++step) {
    // Along each diagonal M - A = const, P(a) = Q(a) + Q(a + 1).
    std::map<long long, std::map<long long, long long>> diag;
    for (const auto& [k, v] : cur) diag[k.second - k.first][k.first] = v;
    Bigraded next;
    for (const auto& [delta, poly] : diag) {
      const long long lo = poly.begin()->first;
      const long long hi = poly.rbegin()->first;
      long long above = 0;
      for (long long a = hi; a >= lo; --a) {
        const auto it = poly.find(a);
        const long long q = (it == poly.end() ? 0 : it->second) - above;
        if (a == lo) {
          if (q != 0) throw FloerError("graded ranks are not divisible by V");
          break;
        }
        if (q < 0) throw FloerError("graded ranks are not divisible by V");
        if (q != 0) next[{a, a + delta}] = q;
        above = q;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

AlexanderData alexander_polynomial(const Bigraded& tilde, int n) {
  Laurent chi;
  for (const auto& [k, v] : tilde) {
    if (v == 0) continue;
    chi[k.first] += (k.second % 2 == 0 ? 1 : -1) * BigInt(v);
  }
  for (int step = 0; step < n - 1; ++step) {
    // chi(a) = Q(a) - Q(a + 1).
    Laurent next;
    if (!chi.empty()) {
      const long long lo = chi.begin()->first;
      const long long hi = chi.rbegin()->first;
      BigInt above = 0;
      for (long long a = hi; a >= lo; --a) {
        const auto it = chi.find(a);
        const BigInt q = (it == chi.end() ? BigInt(0) : it->second) + above;
        if (a == lo) {
          if (q != 0) throw FloerError("Euler characteristic is not divisible by (1 - t^-1)");
          break;
        }
        if (q != 0) next[a] = q;
        above = q;
      }
    }
    chi = std::move(next);
  }
  std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
  if (chi.empty()) throw FloerError("graded Euler characteristic vanishes");
  BigInt at_one = 0;
  for (const auto& [a, v] : chi) at_one += v;
  if (at_one != 1 && at_one != -1) throw FloerError("graded Euler characteristic does not evaluate to +-1 at t = 1");
  const long long span = chi.begin()->first + chi.rbegin()->first;
  if (span % 2 != 0) throw FloerError("graded Euler characteristic cannot be made symmetric");
  AlexanderData out;
  for (const auto& [a, v] : chi) out.polynomial[a - span / 2] = at_one * v;
  BigInt at_minus_one = 0;
  for (const auto& [a, v] : out.polynomial) at_minus_one += (a % 2 == 0 ? 1 : -1) * v;
  out.determinant = at_minus_one < 0 ? BigInt(-at_minus_one) : at_minus_one;
  for (const auto& [a, v] : out.polynomial) {
    const auto it = out.polynomial.find(-a);
    if (it == out.polynomial.end() || it->second != v) throw FloerError("Alexander polynomial is not symmetric");
  }
  return out;
}

std::string to_string(const Laurent& p) {
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [a, v] = *it;
    if (v == 0) continue;
    BigInt mag = v < 0 ? BigInt(-v) : v;
    if (first) {
      if (v < 0) os << '-';
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (a == 0 || mag != 1) os << mag;
    if (a != 0) os << 't';
    if (a != 0 && a != 1) os << '^' << a;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace hfkb
