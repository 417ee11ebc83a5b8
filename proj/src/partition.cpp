#include "hqc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace hqc {

std::vector<std::size_t> PartitionAssignment::part_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(num_parts, 0)), 0);
  for (int p : part_of) ++sizes.at(static_cast<std::size_t>(p));
  return sizes;
}

std::size_t max_part_size(std::size_t num_nodes, int k, double alpha) {
  if (k <= 0) throw PartitionError("part count must be positive");
  const double bound = (1.0 + alpha) * static_cast<double>(num_nodes) / static_cast<double>(k);
  return static_cast<std::size_t>(std::ceil(bound - 1e-9));
}

bool is_balanced(const PartitionAssignment& a, double alpha) {
  const auto sizes = a.part_sizes();
  const std::size_t bound = max_part_size(a.part_of.size(), a.num_parts, alpha);
  return std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s > 0 && s <= bound; });
}

double cut_weight(const WeightedGraph& g, const PartitionAssignment& a) {
  double total = 0.0;
  for (const auto& e : g.edges) {
    if (a.part_of[static_cast<std::size_t>(e.u)] != a.part_of[static_cast<std::size_t>(e.v)]) total += e.weight;
  }
  return total;
}

namespace {

using Weight = long long;

struct Csr {
  std::vector<int> xadj{0};
  std::vector<int> adj;
  std::vector<Weight> ew;
  std::vector<Weight> vw;

  int n() const { return static_cast<int>(vw.size()); }
  Weight total_vw() const { return std::accumulate(vw.begin(), vw.end(), Weight{0}); }
  Weight max_vw() const { return vw.empty() ? 0 : *std::max_element(vw.begin(), vw.end()); }
};

Csr to_csr(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes;
  std::vector<std::vector<std::pair<int, Weight>>> nbrs(n);
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    const Weight w = std::llround(e.weight);
    if (w <= 0) continue;
    nbrs[static_cast<std::size_t>(e.u)].push_back({e.v, w});
    nbrs[static_cast<std::size_t>(e.v)].push_back({e.u, w});
  }
  Csr c;
  c.vw.assign(n, 1);
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end());
    for (const auto& [v, w] : list) {
      c.adj.push_back(v);
      c.ew.push_back(w);
    }
    c.xadj.push_back(static_cast<int>(c.adj.size()));
  }
  return c;
}

// mt19937_64 draws reduced by hand for cross-library reproducibility.
void shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

struct Coarsened {
  Csr graph;
  std::vector<int> cmap;  // fine node -> coarse node
};

Coarsened coarsen_once(const Csr& g, std::mt19937_64& rng, Weight max_vw) {
  const int n = g.n();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<int> match(static_cast<std::size_t>(n), -1);
  for (int v : order) {
    if (match[static_cast<std::size_t>(v)] != -1) continue;
    int best = -1;
    Weight best_w = -1;
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const int u = g.adj[static_cast<std::size_t>(i)];
      if (match[static_cast<std::size_t>(u)] != -1) continue;
      if (g.vw[static_cast<std::size_t>(v)] + g.vw[static_cast<std::size_t>(u)] > max_vw) continue;
      const Weight w = g.ew[static_cast<std::size_t>(i)];
      if (w > best_w || (w == best_w && u < best)) {
        best = u;
        best_w = w;
      }
    }
    if (best == -1) {
      match[static_cast<std::size_t>(v)] = v;
    } else {
      match[static_cast<std::size_t>(v)] = best;
      match[static_cast<std::size_t>(best)] = v;
    }
  }

  Coarsened out;
  out.cmap.assign(static_cast<std::size_t>(n), -1);
  int cn = 0;
  for (int v = 0; v < n; ++v) {
    if (out.cmap[static_cast<std::size_t>(v)] != -1) continue;
    out.cmap[static_cast<std::size_t>(v)] = cn;
    out.cmap[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])] = cn;
    ++cn;
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(cn));
  for (int v = 0; v < n; ++v) members[static_cast<std::size_t>(out.cmap[static_cast<std::size_t>(v)])].push_back(v);

  Csr& c = out.graph;
  c.vw.assign(static_cast<std::size_t>(cn), 0);
  std::vector<Weight> acc(static_cast<std::size_t>(cn), 0);
  std::vector<int> touched;
  for (int cv = 0; cv < cn; ++cv) {
    touched.clear();
    for (int v : members[static_cast<std::size_t>(cv)]) {
      c.vw[static_cast<std::size_t>(cv)] += g.vw[static_cast<std::size_t>(v)];
      for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
        const int cu = out.cmap[static_cast<std::size_t>(g.adj[static_cast<std::size_t>(i)])];
        if (cu == cv) continue;
        if (acc[static_cast<std::size_t>(cu)] == 0) touched.push_back(cu);
        acc[static_cast<std::size_t>(cu)] += g.ew[static_cast<std::size_t>(i)];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int cu : touched) {
      c.adj.push_back(cu);
      c.ew.push_back(acc[static_cast<std::size_t>(cu)]);
      acc[static_cast<std::size_t>(cu)] = 0;
    }
    c.xadj.push_back(static_cast<int>(c.adj.size()));
  }
  return out;
}

Weight cut_of(const Csr& g, const std::vector<int>& part) {
  Weight cut = 0;
  for (int v = 0; v < g.n(); ++v) {
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const int u = g.adj[static_cast<std::size_t>(i)];
      if (u > v && part[static_cast<std::size_t>(u)] != part[static_cast<std::size_t>(v)]) {
        cut += g.ew[static_cast<std::size_t>(i)];
      }
    }
  }
  return cut;
}

Csr induced(const Csr& g, const std::vector<int>& nodes, std::vector<int>& local_of) {
  local_of.assign(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local_of[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
  Csr s;
  for (int v : nodes) {
    s.vw.push_back(g.vw[static_cast<std::size_t>(v)]);
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const int lu = local_of[static_cast<std::size_t>(g.adj[static_cast<std::size_t>(i)])];
      if (lu < 0) continue;
      s.adj.push_back(lu);
      s.ew.push_back(g.ew[static_cast<std::size_t>(i)]);
    }
    s.xadj.push_back(static_cast<int>(s.adj.size()));
  }
  return s;
}

// Two-way split of g: side 0 aims for weight target0. Greedy graph growing
// from `start`, then FM passes with rollback to the best prefix.
struct Bisection {
  std::vector<int> side;
  Weight cut = 0;
  bool balanced = false;
};

Bisection grow_and_refine(const Csr& g, int start, Weight target0, Weight max0, Weight max1,
                          std::mt19937_64& rng) {
  const int n = g.n();
  const Weight total = g.total_vw();
  std::vector<int> side(static_cast<std::size_t>(n), 1);
  Weight w0 = 0;

  // gain of moving v into side 0 = weight to side 0 - weight to side 1
  auto gain_into0 = [&](int v) {
    Weight gsum = 0;
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const Weight w = g.ew[static_cast<std::size_t>(i)];
      gsum += side[static_cast<std::size_t>(g.adj[static_cast<std::size_t>(i)])] == 0 ? w : -w;
    }
    return gsum;
  };

  std::vector<char> frontier(static_cast<std::size_t>(n), 0);
  auto add0 = [&](int v) {
    side[static_cast<std::size_t>(v)] = 0;
    w0 += g.vw[static_cast<std::size_t>(v)];
    frontier[static_cast<std::size_t>(v)] = 0;
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const int u = g.adj[static_cast<std::size_t>(i)];
      if (side[static_cast<std::size_t>(u)] == 1) frontier[static_cast<std::size_t>(u)] = 1;
    }
  };

  if (n > 0 && target0 > 0) add0(start);
  while (w0 < target0) {
    int best = -1;
    Weight best_gain = std::numeric_limits<Weight>::min();
    std::uint64_t ties = 0;
    for (int v = 0; v < n; ++v) {
      if (!frontier[static_cast<std::size_t>(v)]) continue;
      if (w0 + g.vw[static_cast<std::size_t>(v)] > max0) continue;
      const Weight gv = gain_into0(v);
      if (gv > best_gain) {
        best_gain = gv;
        best = v;
        ties = 1;
      } else if (gv == best_gain && rng() % ++ties == 0) {
        best = v;
      }
    }
    if (best == -1) {
      // disconnected remainder or frontier too heavy: restart from a random free node that fits
      std::uint64_t seen = 0;
      for (int v = 0; v < n; ++v) {
        if (side[static_cast<std::size_t>(v)] == 1 && w0 + g.vw[static_cast<std::size_t>(v)] <= max0 &&
            rng() % ++seen == 0) {
          best = v;
        }
      }
    }
    if (best == -1) break;
    add0(best);
  }

  // FM refinement. Intermediate states may overshoot the bounds by `kOvershoot`
  // so that a gate's nodes can cross one at a time; only in-bound states are
  // kept as the best prefix.
  constexpr Weight kOvershoot = 2;
  auto within = [&](Weight a0) { return a0 <= max0 && (total - a0) <= max1 && a0 > 0 && total - a0 > 0; };
  auto near = [&](Weight a0) {
    return a0 <= max0 + kOvershoot && (total - a0) <= max1 + kOvershoot && a0 > 0 && total - a0 > 0;
  };
  Weight cut = cut_of(g, side);
  for (int pass = 0; pass < 10; ++pass) {
    std::vector<char> locked(static_cast<std::size_t>(n), 0);
    std::vector<int> moved;
    Weight cur = cut;
    Weight best_cut = cut;
    Weight cur_w0 = w0;
    bool best_ok = within(w0);
    std::size_t best_len = 0;
    const int limit = std::min(n, 100);
    int since_best = 0;
    for (int step = 0; step < n; ++step) {
      int pick = -1;
      Weight pick_gain = std::numeric_limits<Weight>::min();
      for (int v = 0; v < n; ++v) {
        if (locked[static_cast<std::size_t>(v)]) continue;
        const Weight vw = g.vw[static_cast<std::size_t>(v)];
        const Weight nw0 = side[static_cast<std::size_t>(v)] == 0 ? cur_w0 - vw : cur_w0 + vw;
        if (!near(nw0) && near(cur_w0)) continue;
        const Weight gi = gain_into0(v);
        const Weight gv = side[static_cast<std::size_t>(v)] == 0 ? -gi : gi;
        if (gv > pick_gain) {
          pick_gain = gv;
          pick = v;
        }
      }
      if (pick == -1) break;
      const Weight vw = g.vw[static_cast<std::size_t>(pick)];
      if (side[static_cast<std::size_t>(pick)] == 0) {
        side[static_cast<std::size_t>(pick)] = 1;
        cur_w0 -= vw;
      } else {
        side[static_cast<std::size_t>(pick)] = 0;
        cur_w0 += vw;
      }
      locked[static_cast<std::size_t>(pick)] = 1;
      cur -= pick_gain;
      moved.push_back(pick);
      const bool ok = within(cur_w0);
      if ((ok && !best_ok) || (ok == best_ok && cur < best_cut)) {
        best_cut = cur;
        best_ok = ok;
        best_len = moved.size();
        since_best = 0;
      } else if (++since_best > limit) {
        break;
      }
    }
    for (std::size_t i = moved.size(); i > best_len; --i) {
      const int v = moved[i - 1];
      side[static_cast<std::size_t>(v)] ^= 1;
    }
    w0 = 0;
    for (int v = 0; v < n; ++v) {
      if (side[static_cast<std::size_t>(v)] == 0) w0 += g.vw[static_cast<std::size_t>(v)];
    }
    if (best_len == 0) break;
    cut = best_cut;
  }

  Bisection b;
  b.cut = cut_of(g, side);
  b.balanced = within(w0);
  b.side = std::move(side);
  return b;
}

Weight bound_for(Weight total, int parts_here, int parts_total_k, double alpha, Weight slack) {
  const double ideal = static_cast<double>(total) * parts_here / parts_total_k;
  return static_cast<Weight>(std::ceil((1.0 + alpha) * ideal - 1e-9)) + slack;
}

void recursive_bisect(const Csr& g, const std::vector<int>& nodes, int first_part, int k, double alpha,
                      int trials, std::mt19937_64& rng, std::vector<int>& part) {
  if (k == 1 || nodes.size() <= 1) {
    for (int v : nodes) part[static_cast<std::size_t>(v)] = first_part;
    return;
  }
  std::vector<int> local_of;
  const Csr s = induced(g, nodes, local_of);
  const int k0 = k / 2;
  const Weight total = s.total_vw();
  const Weight target0 = static_cast<Weight>(std::llround(static_cast<double>(total) * k0 / k));
  const Weight slack = std::max<Weight>(0, s.max_vw() - 1);
  const Weight max0 = bound_for(total, k0, k, alpha, slack);
  const Weight max1 = bound_for(total, k - k0, k, alpha, slack);

  std::vector<int> starts(static_cast<std::size_t>(s.n()));
  std::iota(starts.begin(), starts.end(), 0);
  if (trials > 0 && static_cast<int>(starts.size()) > trials) {
    shuffle(starts, rng);
    starts.resize(static_cast<std::size_t>(trials));
    std::sort(starts.begin(), starts.end());
  }

  // grow towards the ideal split and towards both admissible extremes
  std::vector<Weight> targets{target0};
  for (Weight t : {max0 - slack, total - (max1 - slack)}) {
    if (t > 0 && t < total && std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
  }

  Bisection best;
  bool have = false;
  for (int st : starts) {
    for (Weight t : targets) {
      Bisection b = grow_and_refine(s, st, t, max0, max1, rng);
      if (!have || (b.balanced && !best.balanced) || (b.balanced == best.balanced && b.cut < best.cut)) {
        best = std::move(b);
        have = true;
      }
    }
  }

  std::vector<int> left;
  std::vector<int> right;
  for (std::size_t i = 0; i < nodes.size(); ++i) (best.side[i] == 0 ? left : right).push_back(nodes[i]);
  // both halves must be able to host their parts
  while (static_cast<int>(left.size()) < k0 && right.size() > 1) {
    left.push_back(right.back());
    right.pop_back();
  }
  while (static_cast<int>(right.size()) < k - k0 && left.size() > 1) {
    right.push_back(left.back());
    left.pop_back();
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  recursive_bisect(g, left, first_part, k0, alpha, trials, rng, part);
  recursive_bisect(g, right, first_part + k0, k - k0, alpha, trials, rng, part);
}

struct KwayState {
  const Csr& g;
  std::vector<int>& part;
  std::vector<Weight> pw;

  KwayState(const Csr& graph, std::vector<int>& p, int k) : g(graph), part(p), pw(static_cast<std::size_t>(k), 0) {
    for (int v = 0; v < g.n(); ++v) pw[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])] += g.vw[static_cast<std::size_t>(v)];
  }

  // connectivity of v to every part, written into conn (size k, zeroed on exit by caller)
  void connectivity(int v, std::vector<Weight>& conn, std::vector<int>& touched) const {
    touched.clear();
    for (int i = g.xadj[static_cast<std::size_t>(v)]; i < g.xadj[static_cast<std::size_t>(v) + 1]; ++i) {
      const int p = part[static_cast<std::size_t>(g.adj[static_cast<std::size_t>(i)])];
      if (conn[static_cast<std::size_t>(p)] == 0) touched.push_back(p);
      conn[static_cast<std::size_t>(p)] += g.ew[static_cast<std::size_t>(i)];
    }
  }

  void move(int v, int to) {
    const int from = part[static_cast<std::size_t>(v)];
    pw[static_cast<std::size_t>(from)] -= g.vw[static_cast<std::size_t>(v)];
    pw[static_cast<std::size_t>(to)] += g.vw[static_cast<std::size_t>(v)];
    part[static_cast<std::size_t>(v)] = to;
  }
};

// Greedy boundary refinement: positive-gain moves that respect the bound, and
// zero-gain moves that strictly even out the two parts involved.
void refine_kway(const Csr& g, std::vector<int>& part, int k, Weight bound) {
  KwayState st(g, part, k);
  std::vector<Weight> conn(static_cast<std::size_t>(k), 0);
  std::vector<int> touched;
  for (int pass = 0; pass < 16; ++pass) {
    int moves = 0;
    for (int v = 0; v < g.n(); ++v) {
      const int from = part[static_cast<std::size_t>(v)];
      const Weight vw = g.vw[static_cast<std::size_t>(v)];
      st.connectivity(v, conn, touched);
      const Weight internal = conn[static_cast<std::size_t>(from)];
      int best = -1;
      Weight best_gain = 0;
      std::sort(touched.begin(), touched.end());
      if (st.pw[static_cast<std::size_t>(from)] - vw >= 1) {
        for (int p : touched) {
          if (p == from) continue;
          if (st.pw[static_cast<std::size_t>(p)] + vw > bound) continue;
          const Weight gain = conn[static_cast<std::size_t>(p)] - internal;
          const bool evens = st.pw[static_cast<std::size_t>(p)] + vw < st.pw[static_cast<std::size_t>(from)];
          if (gain > best_gain || (gain == 0 && best == -1 && best_gain == 0 && evens)) {
            best = p;
            best_gain = gain;
          }
        }
      }
      for (int p : touched) conn[static_cast<std::size_t>(p)] = 0;
      if (best != -1) {
        st.move(v, best);
        ++moves;
      }
    }
    if (moves == 0) break;
  }
}

// Restores nonempty parts and the size bound with the cheapest moves available.
void rebalance(const Csr& g, std::vector<int>& part, int k, Weight bound) {
  KwayState st(g, part, k);
  std::vector<Weight> conn(static_cast<std::size_t>(k), 0);
  std::vector<int> touched;
  const long guard = static_cast<long>(g.n()) * k + 16;
  for (long iter = 0; iter < guard; ++iter) {
    int empty = -1;
    for (int p = 0; p < k; ++p) {
      if (st.pw[static_cast<std::size_t>(p)] == 0) {
        empty = p;
        break;
      }
    }
    int src = -1;
    if (empty == -1) {
      for (int p = 0; p < k; ++p) {
        if (st.pw[static_cast<std::size_t>(p)] > bound &&
            (src == -1 || st.pw[static_cast<std::size_t>(p)] > st.pw[static_cast<std::size_t>(src)])) {
          src = p;
        }
      }
      if (src == -1) return;
    }

    int best_v = -1;
    int best_p = -1;
    Weight best_gain = std::numeric_limits<Weight>::min();
    for (int v = 0; v < g.n(); ++v) {
      const int from = part[static_cast<std::size_t>(v)];
      const Weight vw = g.vw[static_cast<std::size_t>(v)];
      if (empty != -1) {
        if (st.pw[static_cast<std::size_t>(from)] - vw < 1) continue;
      } else if (from != src) {
        continue;
      }
      st.connectivity(v, conn, touched);
      const Weight internal = conn[static_cast<std::size_t>(from)];
      auto consider = [&](int p) {
        if (p == from) return;
        if (empty == -1 && st.pw[static_cast<std::size_t>(p)] + vw > bound) return;
        const Weight gain = conn[static_cast<std::size_t>(p)] - internal;
        if (gain > best_gain) {
          best_gain = gain;
          best_v = v;
          best_p = p;
        }
      };
      if (empty != -1) {
        consider(empty);
      } else {
        for (int p = 0; p < k; ++p) consider(p);
      }
      for (int p : touched) conn[static_cast<std::size_t>(p)] = 0;
    }
    if (best_v == -1) return;
    st.move(best_v, best_p);
  }
}

}  // namespace

namespace {

// Initial partition on the coarsest level, then project and refine level by level.
std::vector<int> solve_levels(const std::vector<Csr>& levels, const std::vector<std::vector<int>>& cmaps, int k,
                              const PartitionOptions& options, std::mt19937_64& rng) {
  const Csr& coarsest = levels.back();
  std::vector<int> part(static_cast<std::size_t>(coarsest.n()), 0);
  std::vector<int> all(static_cast<std::size_t>(coarsest.n()));
  std::iota(all.begin(), all.end(), 0);
  const int trials = options.initial_trials > 0 ? options.initial_trials : (coarsest.n() <= 64 ? 0 : 16);
  recursive_bisect(coarsest, all, 0, k, options.alpha, trials, rng, part);

  const Weight total = levels.front().total_vw();
  const Weight strict = bound_for(total, 1, k, options.alpha, 0);
  for (std::size_t level = levels.size(); level-- > 0;) {
    const Csr& g = levels[level];
    const Weight slack = level == 0 ? 0 : std::max<Weight>(0, g.max_vw() - 1);
    refine_kway(g, part, k, strict + slack);
    if (level == 0) break;
    const auto& cmap = cmaps[level - 1];
    std::vector<int> finer(cmap.size());
    for (std::size_t v = 0; v < cmap.size(); ++v) finer[v] = part[static_cast<std::size_t>(cmap[v])];
    part = std::move(finer);
  }
  rebalance(levels.front(), part, k, strict);
  refine_kway(levels.front(), part, k, strict);
  return part;
}

bool fits(const Csr& g, const std::vector<int>& part, int k, Weight bound) {
  std::vector<Weight> pw(static_cast<std::size_t>(k), 0);
  for (int v = 0; v < g.n(); ++v) pw[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])] += g.vw[static_cast<std::size_t>(v)];
  return std::all_of(pw.begin(), pw.end(), [&](Weight w) { return w > 0 && w <= bound; });
}

}  // namespace

PartitionAssignment partition_k(const WeightedGraph& graph, int k, std::uint64_t seed,
                                const PartitionOptions& options) {
  if (k < 2) throw PartitionError("K must be at least 2");
  if (static_cast<std::size_t>(k) > graph.num_nodes) throw PartitionError("K exceeds the node count");

  std::mt19937_64 rng(seed);
  std::vector<Csr> levels;
  std::vector<std::vector<int>> cmaps;
  levels.push_back(to_csr(graph));

  const int coarsen_to = std::max(30, 4 * k);
  while (levels.back().n() > coarsen_to) {
    const Csr& fine = levels.back();
    const Weight max_vw = std::max<Weight>(
        2, static_cast<Weight>(std::ceil(1.5 * static_cast<double>(fine.total_vw()) / coarsen_to)));
    Coarsened c = coarsen_once(fine, rng, max_vw);
    if (c.graph.n() > fine.n() * 95 / 100) break;
    cmaps.push_back(std::move(c.cmap));
    levels.push_back(std::move(c.graph));
  }

  std::vector<int> part = solve_levels(levels, cmaps, k, options, rng);

  // A graph too small to coarsen is also tried with matched pairs contracted,
  // so that heavily tied node pairs can change sides together.
  if (levels.size() == 1 && levels.front().n() >= 2 * k) {
    const Csr& fine = levels.front();
    Coarsened c = coarsen_once(fine, rng, 2);
    if (c.graph.n() < fine.n() && c.graph.n() >= k) {
      std::vector<Csr> alt_levels{fine, std::move(c.graph)};
      std::vector<std::vector<int>> alt_cmaps{std::move(c.cmap)};
      std::vector<int> alt = solve_levels(alt_levels, alt_cmaps, k, options, rng);
      const Weight strict = bound_for(fine.total_vw(), 1, k, options.alpha, 0);
      const bool ok = fits(fine, part, k, strict);
      const bool alt_ok = fits(fine, alt, k, strict);
      if ((alt_ok && !ok) || (alt_ok == ok && cut_of(fine, alt) < cut_of(fine, part))) part = std::move(alt);
    }
  }

  PartitionAssignment a;
  a.part_of = std::move(part);
  a.num_parts = k;
  return a;
}

std::size_t count_gate_violations(const TemporalHypergraph& hg, const PartitionAssignment& a) {
  std::size_t violations = 0;
  for (const auto& e : hg.hyperedges()) {
    if (e.kind != HyperedgeKind::Gate) continue;
    const int p0 = a.part_of[static_cast<std::size_t>(e.nodes.front())];
    for (int v : e.nodes) {
      if (a.part_of[static_cast<std::size_t>(v)] != p0) {
        ++violations;
        break;
      }
    }
  }
  return violations;
}

PartitionAssignment repair_gate_colocation(const TemporalHypergraph& hg, PartitionAssignment a) {
  const std::size_t guard = hg.hyperedges().size() + 2;
  for (std::size_t round = 0; round < guard; ++round) {
    bool changed = false;
    for (const auto& e : hg.hyperedges()) {
      if (e.kind != HyperedgeKind::Gate) continue;
      std::map<int, int> votes;
      for (int v : e.nodes) ++votes[a.part_of[static_cast<std::size_t>(v)]];
      if (votes.size() <= 1) continue;
      int winner = votes.begin()->first;
      int most = 0;
      for (const auto& [p, cnt] : votes) {
        if (cnt > most) {
          most = cnt;
          winner = p;
        }
      }
      for (int v : e.nodes) a.part_of[static_cast<std::size_t>(v)] = winner;
      changed = true;
    }
    if (!changed) return a;
  }
  throw PartitionError("gate colocation repair did not converge");
}

std::size_t count_cut_points(const TemporalHypergraph& hg, const PartitionAssignment& a) {
  if (count_gate_violations(hg, a) != 0) throw PartitionError("assignment splits a gate hyperedge");
  std::size_t cuts = 0;
  for (const auto& e : hg.hyperedges()) {
    if (e.kind == HyperedgeKind::Temporal &&
        a.part_of[static_cast<std::size_t>(e.nodes[0])] != a.part_of[static_cast<std::size_t>(e.nodes[1])]) {
      ++cuts;
    }
  }
  return cuts;
}

std::optional<std::uint64_t> sampling_overhead(std::size_t cuts, std::uint64_t bases) {
  constexpr std::uint64_t kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < cuts; ++i) {
    if (bases != 0 && value > kMax / bases) return std::nullopt;
    value *= bases;
  }
  return value;
}

}  // namespace hqc
