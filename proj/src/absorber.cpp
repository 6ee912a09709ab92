#include "latdec/absorber.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace latdec {

namespace {

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

std::optional<std::string> CorrectionInstance::check() const {
  const auto m = static_cast<std::size_t>(num_indices);
  if (num_indices < 0 || num_vertices < 0) return "negative sizes";
  if (R.size() != m || T.size() != m || Rp.size() != m) return "R, T and R' need one set per index";
  std::vector<int> balance(num_vertices, 0);
  for (int i = 0; i < num_indices; ++i) {
    for (const auto* set : {&R[i], &T[i], &Rp[i]}) {
      if (!std::is_sorted(set->begin(), set->end())) return "sets must be sorted";
      if (std::adjacent_find(set->begin(), set->end()) != set->end())
        return "index " + std::to_string(i + 1) + " lists a vertex twice";
      for (int u : *set)
        if (u < 0 || u >= num_vertices) return "vertex " + std::to_string(u + 1) + " outside U";
    }
    for (int u : T[i])
      if (contains(R[i], u)) return "R and T meet at index " + std::to_string(i + 1);
    for (int u : Rp[i])
      if (!contains(R[i], u)) return "R' not inside R at index " + std::to_string(i + 1);
    if (Rp[i].size() != T[i].size()) return "|R'| != |T| at index " + std::to_string(i + 1);
    for (int u : T[i]) ++balance[u];
    for (int u : Rp[i]) --balance[u];
  }
  for (int u = 0; u < num_vertices; ++u)
    if (balance[u] != 0) return "R' and T differ as multisets at vertex " + std::to_string(u + 1);
  return std::nullopt;
}

void CorrectionInstance::normalize() {
  for (auto* family : {&R, &T, &Rp})
    for (auto& s : *family) std::sort(s.begin(), s.end());
  if (auto err = check()) throw InvalidInput("bad correction instance: " + *err);
}

bool CorrectionInstance::in_R(int i, int u) const { return contains(R[i], u); }
bool CorrectionInstance::in_T(int i, int u) const { return contains(T[i], u); }
bool CorrectionInstance::in_Rp(int i, int u) const { return contains(Rp[i], u); }

int DirectedColoredMultigraph::net_degree(int i, int u) const {
  int d = 0;
  for (const auto& a : arcs) {
    if (a.color != i) continue;
    if (a.tail == u) ++d;
    if (a.head == u) --d;
  }
  return d;
}

const char* to_string(CorrectionStage s) {
  switch (s) {
    case CorrectionStage::Matchings: return "initial matchings";
    case CorrectionStage::Cycles: return "cycle decomposition";
    case CorrectionStage::RainbowRepair: return "rainbow repair";
    case CorrectionStage::Triangulation: return "triangulation";
    case CorrectionStage::Gadgets: return "triangle gadgets";
    case CorrectionStage::Pairs: return "pair extraction";
  }
  return "?";
}

std::optional<std::string> check_net_degrees(const CorrectionInstance& inst,
                                             const DirectedColoredMultigraph& d) {
  const int m = inst.num_indices, N = inst.num_vertices;
  std::vector<int> net(static_cast<std::size_t>(m) * N, 0);
  for (const auto& a : d.arcs) {
    if (a.color < 0 || a.color >= m || a.tail < 0 || a.tail >= N || a.head < 0 || a.head >= N)
      return "arc out of range";
    ++net[static_cast<std::size_t>(a.color) * N + a.tail];
    --net[static_cast<std::size_t>(a.color) * N + a.head];
  }
  for (int i = 0; i < m; ++i) {
    for (int u = 0; u < N; ++u) {
      const int want = inst.in_T(i, u) ? 1 : inst.in_Rp(i, u) ? -1 : 0;
      const int got = net[static_cast<std::size_t>(i) * N + u];
      if (got != want)
        return "net degree " + std::to_string(got) + " (want " + std::to_string(want) + ") at colour " +
               std::to_string(i + 1) + ", vertex " + std::to_string(u + 1);
    }
  }
  return std::nullopt;
}

namespace {

using Cycle = std::vector<ColoredArc>;  // arcs[k].head == arcs[k+1].tail, cyclically

struct StageFailure {
  CorrectionStage stage;
  std::string what;
};

struct Triangle {
  ColoredArc xy, yz, zx;  // colours a, b, c
};

class Attempt {
 public:
  Attempt(const CorrectionInstance& inst, const CorrectionOptions& opts, SeededRng* rng)
      : inst_(inst), opts_(opts), rng_(rng), m_(inst.num_indices), N_(inst.num_vertices) {
    forbidden_.assign(static_cast<std::size_t>(m_) * N_, 0);
    active_.assign(static_cast<std::size_t>(m_) * N_, 0);
    for (int i = 0; i < m_; ++i) {
      for (int u : inst.R[i]) forbidden_[slot(i, u)] = 1;
      for (int u : inst.T[i]) forbidden_[slot(i, u)] = 1;
    }
    cap_ = opts.chord_usage_cap;
    if (cap_ <= 0) {
      std::size_t max_t = 0;
      for (const auto& t : inst.T) max_t = std::max(max_t, t.size());
      cap_ = std::max(8, 2 * static_cast<int>(max_t));
    }
    chord_usage_.assign(m_, 0);
  }

  CorrectionSet run() {
    std::vector<ColoredArc> arcs = initial_matchings();
    notify(CorrectionStage::Matchings, arcs);
    for (const auto& a : arcs) active_[slot(a.color, a.tail)] = active_[slot(a.color, a.head)] = 1;

    std::vector<Cycle> cycles = cycle_decomposition(arcs);
    notify(CorrectionStage::Cycles, flatten(cycles));

    cycles = rainbow_repair(std::move(cycles));
    notify(CorrectionStage::RainbowRepair, flatten(cycles));

    std::vector<Cycle> two_cycles;
    std::vector<Triangle> triangles;
    for (const Cycle& c : cycles) {
      if (c.size() == 2) two_cycles.push_back(c);
      else triangulate(c, triangles);
    }
    {
      std::vector<ColoredArc> d = flatten(two_cycles);
      for (const auto& t : triangles) d.insert(d.end(), {t.xy, t.yz, t.zx});
      notify(CorrectionStage::Triangulation, d);
    }

    for (const Triangle& t : triangles) gadget(t, two_cycles);
    const std::vector<ColoredArc> final_arcs = flatten(two_cycles);
    notify(CorrectionStage::Gadgets, final_arcs);

    CorrectionSet out;
    for (const Cycle& c : two_cycles)
      out.pairs.push_back(SwitchPair{{c[0].color, c[0].tail}, {c[1].color, c[1].tail}}.normalized());
    std::sort(out.pairs.begin(), out.pairs.end());
    notify(CorrectionStage::Pairs, final_arcs);
    return out;
  }

 private:
  std::size_t slot(int i, int u) const { return static_cast<std::size_t>(i) * N_ + u; }

  template <class T>
  void maybe_shuffle(std::vector<T>& v) {
    if (rng_) std::shuffle(v.begin(), v.end(), rng_->engine());
  }

  void notify(CorrectionStage s, const std::vector<ColoredArc>& arcs) const {
    if (opts_.observer) opts_.observer(s, DirectedColoredMultigraph{N_, arcs});
  }

  static std::vector<ColoredArc> flatten(const std::vector<Cycle>& cycles) {
    std::vector<ColoredArc> out;
    for (const auto& c : cycles) out.insert(out.end(), c.begin(), c.end());
    return out;
  }

  std::vector<ColoredArc> initial_matchings() {
    std::vector<ColoredArc> arcs;
    for (int i = 0; i < m_; ++i) {
      std::vector<int> targets = inst_.Rp[i];
      maybe_shuffle(targets);
      for (std::size_t k = 0; k < targets.size(); ++k) arcs.push_back({inst_.T[i][k], targets[k], i});
    }
    return arcs;
  }

  // Vertex-simple directed cycles; out-arcs taken in (colour, head) order.
  std::vector<Cycle> cycle_decomposition(std::vector<ColoredArc> arcs) const {
    std::vector<std::vector<ColoredArc>> out(N_);
    std::sort(arcs.begin(), arcs.end(), [](const ColoredArc& a, const ColoredArc& b) {
      return std::tie(a.tail, a.color, a.head) > std::tie(b.tail, b.color, b.head);
    });
    for (const auto& a : arcs) out[a.tail].push_back(a);  // back() is the smallest
    std::vector<Cycle> cycles;
    std::vector<int> pos(N_, -1);  // index in the current walk
    for (int s = 0; s < N_; ++s) {
      while (!out[s].empty()) {
        std::vector<int> walk{s};
        std::vector<ColoredArc> walk_arcs;
        pos[s] = 0;
        while (!walk.empty()) {
          const int cur = walk.back();
          if (out[cur].empty()) throw StageFailure{CorrectionStage::Cycles, "unbalanced vertex"};
          const ColoredArc a = out[cur].back();
          out[cur].pop_back();
          walk_arcs.push_back(a);
          if (pos[a.head] >= 0) {
            const std::size_t p = pos[a.head];
            cycles.emplace_back(walk_arcs.begin() + p, walk_arcs.end());
            walk_arcs.resize(p);
            for (std::size_t q = p + 1; q < walk.size(); ++q) pos[walk[q]] = -1;
            walk.resize(p + 1);
            if (p == 0 && out[s].empty()) {
              pos[s] = -1;
              walk.clear();
            }
          } else {
            pos[a.head] = static_cast<int>(walk.size());
            walk.push_back(a.head);
          }
        }
      }
    }
    return cycles;
  }

  // Splits every cycle carrying a colour twice, via u1->u2, u3->u4 => u1->u4, u3->u2.
  static std::vector<Cycle> rainbow_repair(std::vector<Cycle> work) {
    std::vector<Cycle> done;
    while (!work.empty()) {
      Cycle c = std::move(work.back());
      work.pop_back();
      std::size_t p = 0, q = 0;
      bool found = false;
      for (std::size_t a = 0; a < c.size() && !found; ++a)
        for (std::size_t b = a + 1; b < c.size() && !found; ++b)
          if (c[a].color == c[b].color) p = a, q = b, found = true;
      if (!found) {
        done.push_back(std::move(c));
        continue;
      }
      const ColoredArc e1 = c[p], e2 = c[q];
      Cycle first{{e1.tail, e2.head, e1.color}};
      first.insert(first.end(), c.begin() + q + 1, c.end());
      first.insert(first.end(), c.begin(), c.begin() + p);
      Cycle second{{e2.tail, e1.head, e1.color}};
      second.insert(second.end(), c.begin() + p + 1, c.begin() + q);
      work.push_back(std::move(first));
      work.push_back(std::move(second));
    }
    std::sort(done.begin(), done.end());
    return done;
  }

  std::vector<int> colour_order() {
    std::vector<int> order(m_);
    std::iota(order.begin(), order.end(), 0);
    maybe_shuffle(order);
    return order;
  }

  int chord_colour(int x, int y) {
    for (int i : colour_order()) {
      if (forbidden_[slot(i, x)] || forbidden_[slot(i, y)]) continue;
      if (active_[slot(i, x)] || active_[slot(i, y)]) continue;
      if (chord_usage_[i] + 2 > cap_) continue;
      chord_usage_[i] += 2;
      active_[slot(i, x)] = active_[slot(i, y)] = 1;
      return i;
    }
    throw StageFailure{CorrectionStage::Triangulation,
                       "no colour for chord " + std::to_string(x + 1) + "-" + std::to_string(y + 1)};
  }

  // Zigzag triangulation: chords v1v3, v3vL, vLv4, v4v(L-1), ... keep every
  // vertex at degree <= 4. Triangles p<q<r (cycle positions) run p->q->r->p.
  void triangulate(const Cycle& c, std::vector<Triangle>& out) {
    const int L = static_cast<int>(c.size());
    auto vert = [&](int k) { return c[k % L].tail; };
    std::map<std::pair<int, int>, int> chord;  // position pair -> colour
    std::vector<std::array<int, 3>> tris;
    if (L == 3) {
      tris.push_back({0, 1, 2});
    } else {
      auto add_chord = [&](int p, int q) {
        chord[std::minmax(p % L, q % L)] = chord_colour(vert(p), vert(q));
      };
      add_chord(0, 2);
      tris.push_back({0, 1, 2});
      int lo = 2, hi = L;  // polygon lo..hi (hi == L means position 0), base chord lo-hi
      bool right = true;
      while (hi - lo > 2) {
        if (right) {
          add_chord(lo, hi - 1);
          tris.push_back({lo, hi - 1, hi % L});
          --hi;
        } else {
          add_chord(lo + 1, hi);
          tris.push_back({lo, lo + 1, hi % L});
          ++lo;
        }
        right = !right;
      }
      tris.push_back({lo, lo + 1, hi % L});
    }
    auto arc = [&](int p, int q) {
      int colour;
      if (q == (p + 1) % L) colour = c[p].color;
      else colour = chord.at(std::minmax(p, q));
      return ColoredArc{vert(p), vert(q), colour};
    };
    for (auto t : tris) {
      std::sort(t.begin(), t.end());
      out.push_back({arc(t[0], t[1]), arc(t[1], t[2]), arc(t[2], t[0])});
    }
  }

  void gadget(const Triangle& t, std::vector<Cycle>& two_cycles) {
    const int x = t.xy.tail, y = t.yz.tail, z = t.zx.tail;
    const int a = t.xy.color, b = t.yz.color, c = t.zx.color;
    if (m_ < 4) throw InfeasibleError(CorrectionStage::Gadgets, "insufficient colour space");
    std::vector<int> verts(N_);
    std::iota(verts.begin(), verts.end(), 0);
    maybe_shuffle(verts);
    for (int i : colour_order()) {
      if (i == a || i == b || i == c) continue;
      const std::array<int, 4> cols{a, b, c, i};
      std::vector<int> fresh;
      for (int v : verts) {
        if (v == x || v == y || v == z) continue;
        const bool clean = std::none_of(cols.begin(), cols.end(), [&](int k) {
          return forbidden_[slot(k, v)] || active_[slot(k, v)];
        });
        if (clean) fresh.push_back(v);
        if (fresh.size() == 3) break;
      }
      if (fresh.size() < 3) continue;
      const int xp = fresh[0], yp = fresh[1], zp = fresh[2];
      for (int v : fresh)
        for (int k : cols) active_[slot(k, v)] = 1;
      auto two = [&](int u, int ci, int v, int cj) {
        two_cycles.push_back({{u, v, ci}, {v, u, cj}});
      };
      two(x, a, xp, c);
      two(y, b, yp, a);
      two(z, c, zp, b);
      two(xp, a, yp, i);
      two(yp, b, zp, i);
      two(zp, c, xp, i);
      return;
    }
    throw StageFailure{CorrectionStage::Gadgets, "no fresh vertices for triangle " + std::to_string(x + 1) +
                                                     "," + std::to_string(y + 1) + "," +
                                                     std::to_string(z + 1)};
  }

  const CorrectionInstance& inst_;
  const CorrectionOptions& opts_;
  SeededRng* rng_;
  int m_, N_;
  int cap_ = 0;
  std::vector<char> forbidden_;  // u in R_i ∪ T_i
  std::vector<char> active_;     // u already touches colour i
  std::vector<int> chord_usage_;
};

}  // namespace

CorrectionSet decompose_corrections(const CorrectionInstance& inst, SeededRng& rng,
                                    const CorrectionOptions& opts) {
  if (auto err = inst.check()) throw InvalidInput("bad correction instance: " + *err);
  if (opts.feasibility_factor > 0 && inst.num_indices > 0) {
    std::size_t total = 0;
    for (const auto& t : inst.T) total += t.size();
    const double need = opts.feasibility_factor * static_cast<double>(total) / inst.num_indices;
    for (int i = 0; i < inst.num_indices; ++i) {
      const double free = inst.num_vertices - static_cast<double>(inst.R[i].size() + inst.T[i].size());
      if (free < need)
        throw InvalidInput("feasibility margin fails at index " + std::to_string(i + 1));
    }
  }
  StageFailure last{CorrectionStage::Matchings, ""};
  for (int attempt = 0; attempt <= std::max(0, opts.retries); ++attempt) {
    std::optional<SeededRng> stream;
    if (attempt > 0) stream = rng.derive(static_cast<std::uint64_t>(attempt));
    try {
      return Attempt(inst, opts, stream ? &*stream : nullptr).run();
    } catch (const StageFailure& f) {
      last = f;
    }
  }
  throw InfeasibleError(last.stage, last.what + " after " + std::to_string(opts.retries) + " retries");
}

CorrectionReport verify_corrections(const CorrectionInstance& inst, const CorrectionSet& c) {
  CorrectionReport rep;
  auto flag = [&](const char* rule, int i, int u) {
    rep.ok = false;
    rep.violations.push_back({rule, i, u});
  };
  const int m = inst.num_indices, N = inst.num_vertices;
  std::vector<int> out(static_cast<std::size_t>(m) * N, 0), in(out);
  auto slot = [&](int i, int u) { return static_cast<std::size_t>(i) * N + u; };
  for (const SwitchPair& p : c.pairs) {
    const auto [i, u] = p.first;
    const auto [j, v] = p.second;
    if (i < 0 || i >= m || j < 0 || j >= m || u < 0 || u >= N || v < 0 || v >= N) {
      flag("membership", i, u);
      continue;
    }
    if (i == j || u == v || inst.in_R(i, u) || inst.in_T(j, u) || inst.in_T(i, v) || inst.in_R(j, v))
      flag("membership", i, u);
    ++out[slot(i, u)];
    ++in[slot(i, v)];
    ++out[slot(j, v)];
    ++in[slot(j, u)];
  }
  for (int i = 0; i < m; ++i) {
    for (int u = 0; u < N; ++u) {
      const int o = out[slot(i, u)], n_in = in[slot(i, u)];
      if (inst.in_T(i, u)) {
        if (o != 1) flag("A1-1", i, u);
      } else if (inst.in_Rp(i, u)) {
        if (n_in != 1) flag("A1-2", i, u);
      } else if (inst.in_R(i, u)) {
        if (n_in != 0) flag("A1-3", i, u);
      } else if (!((o == 0 && n_in == 0) || (o == 1 && n_in == 1))) {
        flag("A1-4", i, u);
      }
    }
  }
  return rep;
}

CorrectionInstance random_correction_instance(int num_indices, int num_vertices, int max_t,
                                              SeededRng& rng) {
  if (num_indices < 0 || num_vertices < 0 || max_t < 0) throw InvalidInput("negative instance parameters");
  for (int tries = 0; tries < 1000; ++tries) {
    CorrectionInstance inst;
    inst.num_indices = num_indices;
    inst.num_vertices = num_vertices;
    inst.R.assign(num_indices, {});
    inst.T.assign(num_indices, {});
    inst.Rp.assign(num_indices, {});
    std::vector<int> all(num_vertices);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> pool;
    std::vector<int> capacity(num_indices);
    for (int i = 0; i < num_indices; ++i) {
      const int t = num_indices > 1 ? std::min(rng.below(max_t + 1), num_vertices) : 0;
      std::shuffle(all.begin(), all.end(), rng.engine());
      inst.T[i].assign(all.begin(), all.begin() + t);
      std::sort(inst.T[i].begin(), inst.T[i].end());
      pool.insert(pool.end(), inst.T[i].begin(), inst.T[i].end());
      capacity[i] = t;
    }
    std::shuffle(pool.begin(), pool.end(), rng.engine());
    bool ok = true;
    for (int u : pool) {
      std::vector<int> options;
      for (int i = 0; i < num_indices; ++i)
        if (capacity[i] > 0 && !inst.in_T(i, u) &&
            std::find(inst.Rp[i].begin(), inst.Rp[i].end(), u) == inst.Rp[i].end())
          options.push_back(i);
      if (options.empty()) {
        ok = false;
        break;
      }
      const int i = options[rng.below(static_cast<int>(options.size()))];
      inst.Rp[i].push_back(u);
      --capacity[i];
    }
    if (!ok) continue;
    for (int i = 0; i < num_indices; ++i) {
      std::sort(inst.Rp[i].begin(), inst.Rp[i].end());
      std::set<int> r(inst.Rp[i].begin(), inst.Rp[i].end());
      const int extra = rng.below(max_t + 1);
      for (int k = 0; k < extra && num_vertices > 0; ++k) {
        const int u = rng.below(num_vertices);
        if (!inst.in_T(i, u)) r.insert(u);
      }
      inst.R[i].assign(r.begin(), r.end());
    }
    inst.normalize();
    return inst;
  }
  throw std::runtime_error("could not generate a correction instance");
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json sets_to_json(const std::vector<std::vector<int>>& sets) {
  auto out = nlohmann::json::array();
  for (const auto& s : sets) {
    auto row = nlohmann::json::array();
    for (int u : s) row.push_back(u + 1);
    out.push_back(row);
  }
  return out;
}

std::vector<std::vector<int>> sets_from_json(const nlohmann::json& j) {
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    auto& s = out.emplace_back();
    for (const auto& u : row) s.push_back(u.get<int>() - 1);
  }
  return out;
}

}  // namespace

nlohmann::json instance_to_json(const CorrectionInstance& inst) {
  return {{"indices", inst.num_indices},
          {"vertices", inst.num_vertices},
          {"R", sets_to_json(inst.R)},
          {"T", sets_to_json(inst.T)},
          {"R_prime", sets_to_json(inst.Rp)}};
}

CorrectionInstance instance_from_json(const nlohmann::json& j) {
  try {
    CorrectionInstance inst;
    inst.num_indices = j.at("indices").get<int>();
    inst.num_vertices = j.at("vertices").get<int>();
    inst.R = sets_from_json(j.at("R"));
    inst.T = sets_from_json(j.at("T"));
    inst.Rp = sets_from_json(j.at("R_prime"));
    inst.normalize();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed correction instance JSON: ") + e.what());
  }
}

nlohmann::json corrections_to_json(const CorrectionSet& c) {
  auto pairs = nlohmann::json::array();
  for (const auto& p : c.pairs)
    pairs.push_back({{p.first.index + 1, p.first.vertex + 1}, {p.second.index + 1, p.second.vertex + 1}});
  return {{"pairs", pairs}};
}

CorrectionSet corrections_from_json(const nlohmann::json& j) {
  try {
    CorrectionSet c;
    for (const auto& p : j.at("pairs"))
      c.pairs.push_back({{p.at(0).at(0).get<int>() - 1, p.at(0).at(1).get<int>() - 1},
                         {p.at(1).at(0).get<int>() - 1, p.at(1).at(1).get<int>() - 1}});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed correction set JSON: ") + e.what());
  }
}

}  // namespace latdec
