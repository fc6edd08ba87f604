#include "core/relabeling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace zestlab {
namespace {

constexpr double kEqualTol = 1e-7;
constexpr double kAmbiguousTol = 1e-5;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("relabeling: " + msg);
}

// Strict pairwise comparison. In float mode, distances inside the gray band
// (kEqualTol, kAmbiguousTol] are refused: resolving them either way could
// silently change the verdict, and callers with exact data should use it.
bool values_equal(bool exact, const CompValue& a, const CompValue& b) {
  if (exact) return a.ev == b.ev;
  double d = std::abs(a.fv - b.fv);
  if (d <= kEqualTol) return true;
  if (d <= kAmbiguousTol) {
    fail("ambiguous float comparison (distance in (1e-7, 1e-5]); recompute with the exact backend");
  }
  return false;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Assigns integer ids to values so that equal values always share an id.
// Exact mode partitions by field equality (ids are sound and complete).
// Float mode clusters conservatively: any two values within kAmbiguousTol
// are merged, so distinct ids certify inequality but shared ids do not
// certify equality; strict pair tests back up every id match.
class Interner {
 public:
  explicit Interner(bool exact) : exact_(exact) {}

  int add(const CompValue& v) {
    vals_.push_back(v);
    return static_cast<int>(vals_.size()) - 1;
  }

  void finalize() {
    const int n = static_cast<int>(vals_.size());
    ids_.assign(n, -1);
    if (exact_) {
      // Key by the canonical basis representation at one shared conductor;
      // falls back to pairwise equality when the lcm is impractically large.
      long long common = 1;
      bool keyed = true;
      for (const auto& v : vals_) {
        common = std::lcm(common, v.ev.conductor());
        if (common > 10'000'000) {
          keyed = false;
          break;
        }
      }
      if (keyed) {
        std::map<std::string, int> by_key;
        for (int i = 0; i < n; ++i) {
          auto it = by_key.emplace(vals_[i].ev.canonical_string_at(common),
                                   static_cast<int>(by_key.size()));
          ids_[i] = it.first->second;
        }
        return;
      }
      std::vector<int> reps;
      for (int i = 0; i < n; ++i) {
        for (int r : reps) {
          if (vals_[i].ev == vals_[r].ev) {
            ids_[i] = ids_[r];
            break;
          }
        }
        if (ids_[i] < 0) {
          ids_[i] = static_cast<int>(reps.size());
          reps.push_back(i);
        }
      }
      return;
    }
    std::vector<int> by_re(n);
    std::iota(by_re.begin(), by_re.end(), 0);
    std::sort(by_re.begin(), by_re.end(), [&](int a, int b) {
      return vals_[a].fv.real() < vals_[b].fv.real();
    });
    UnionFind uf(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int i = by_re[a], j = by_re[b];
        if (vals_[j].fv.real() - vals_[i].fv.real() > kAmbiguousTol) break;
        if (std::abs(vals_[j].fv - vals_[i].fv) <= kAmbiguousTol) uf.unite(i, j);
      }
    }
    std::map<int, int> remap;
    for (int i = 0; i < n; ++i) {
      int root = uf.find(i);
      auto it = remap.find(root);
      if (it == remap.end()) it = remap.emplace(root, static_cast<int>(remap.size())).first;
      ids_[i] = it->second;
    }
  }

  int id(int slot) const { return ids_[slot]; }

 private:
  bool exact_;
  std::vector<CompValue> vals_;
  std::vector<int> ids_;
};

struct SideIds {
  std::vector<int> T;
  std::vector<std::vector<int>> S, W;
  std::vector<int> five2;
  std::vector<std::vector<int>> ratio;  // per label, per invertible (unsorted)
};

void check_square(const std::vector<std::vector<CompValue>>& m, int rank, const char* what) {
  if (static_cast<int>(m.size()) != rank) fail(std::string(what) + " has wrong row count");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != rank) fail(std::string(what) + " is not square");
  }
}

class Searcher {
 public:
  explicit Searcher(const RelabelProblem& pb) : pb_(pb) { build(); }

  RelabelResult run(int limit) {
    RelabelResult res;
    res.nodes = res.prunes = res.b_evals = 0;
    if (limit < 1) fail("witness limit must be positive");
    if (infeasible_) {
      res.exhausted = true;
      return res;
    }
    sigma_.assign(rank_, -1);
    used_.assign(rank_, 0);
    res_ = &res;
    limit_ = limit;
    bool stopped_at_limit = dfs(0);
    res.found = !res.witnesses.empty();
    if (res.found) res.mapping = res.witnesses.front();
    res.exhausted = !stopped_at_limit;
    return res;
  }

  // Full strict validation of a complete mapping against every constraint.
  bool validate(const std::vector<int>& sigma, long long* b_evals) {
    const auto& L = pb_.left;
    const auto& R = pb_.right;
    if (static_cast<int>(sigma.size()) != rank_ || sigma[0] != 0) return false;
    std::vector<char> seen(rank_, 0);
    for (int j : sigma) {
      if (j < 0 || j >= rank_ || seen[j]) return false;
      seen[j] = 1;
    }
    for (int i = 0; i < rank_; ++i) {
      if (L.labels[i].qdim != R.labels[sigma[i]].qdim) return false;
      if (!values_equal(pb_.exact, L.T[i], R.T[sigma[i]])) return false;
      if (use_five2_ && !values_equal(pb_.exact, L.five2[i], R.five2[sigma[i]])) return false;
      for (int j = 0; j < rank_; ++j) {
        if (use_S_ && !values_equal(pb_.exact, L.S[i][j], R.S[sigma[i]][sigma[j]])) return false;
        if (use_W_ && !values_equal(pb_.exact, L.W[i][j], R.W[sigma[i]][sigma[j]])) return false;
      }
    }
    if (pb_.triple) {
      for (const auto& t : pb_.triple->triples) {
        CompValue lv = b_left(t, b_evals);
        CompValue rv = b_right({sigma[t[0]], sigma[t[1]], sigma[t[2]]}, b_evals);
        if (!values_equal(pb_.exact, lv, rv)) return false;
      }
    }
    return true;
  }

 private:
  void build() {
    rank_ = static_cast<int>(pb_.left.labels.size());
    const auto& L = pb_.left;
    const auto& R = pb_.right;
    if (rank_ == 0) fail("empty label list");
    if (static_cast<int>(R.labels.size()) != rank_) fail("rank mismatch between sides");
    if (static_cast<int>(L.T.size()) != rank_ || static_cast<int>(R.T.size()) != rank_) {
      fail("T table has wrong size");
    }
    use_S_ = !L.S.empty() || !R.S.empty();
    use_W_ = !L.W.empty() || !R.W.empty();
    use_five2_ = !L.five2.empty() || !R.five2.empty();
    if (use_S_) {
      check_square(L.S, rank_, "left S");
      check_square(R.S, rank_, "right S");
    }
    if (use_W_) {
      check_square(L.W, rank_, "left W");
      check_square(R.W, rank_, "right W");
    }
    if (use_five2_ &&
        (static_cast<int>(L.five2.size()) != rank_ || static_cast<int>(R.five2.size()) != rank_)) {
      fail("five2 table has wrong size");
    }
    if (pb_.triple) {
      if (!pb_.triple->left || !pb_.triple->right) fail("triple constraint lacks providers");
      for (const auto& t : pb_.triple->triples) {
        for (int c : t) {
          if (c < 0 || c >= rank_) fail("triple coordinate out of range");
        }
      }
    }

    intern_tables();
    build_fingerprints();
    build_candidates();
    if (infeasible_) return;
    build_order();
    schedule_triples();
  }

  void intern_tables() {
    Interner in(pb_.exact);
    auto add_vec = [&](const std::vector<CompValue>& v) {
      std::vector<int> slots;
      slots.reserve(v.size());
      for (const auto& x : v) slots.push_back(in.add(x));
      return slots;
    };
    auto add_mat = [&](const std::vector<std::vector<CompValue>>& m) {
      std::vector<std::vector<int>> slots;
      slots.reserve(m.size());
      for (const auto& row : m) slots.push_back(add_vec(row));
      return slots;
    };

    SideIds lt, rt;
    lt.T = add_vec(pb_.left.T);
    rt.T = add_vec(pb_.right.T);
    if (use_S_) {
      lt.S = add_mat(pb_.left.S);
      rt.S = add_mat(pb_.right.S);
    }
    if (use_W_) {
      lt.W = add_mat(pb_.left.W);
      rt.W = add_mat(pb_.right.W);
    }
    if (use_five2_) {
      lt.five2 = add_vec(pb_.left.five2);
      rt.five2 = add_vec(pb_.right.five2);
    }

    // Monodromy-style ratios against the invertibles' S rows sharpen the
    // per-label fingerprint when S participates. They are sound because a
    // valid bijection fixes the unit and permutes invertibles among
    // themselves. Skipped when any reference entry vanishes.
    use_ratio_ = false;
    if (use_S_) {
      auto invertibles = [&](const RelabelSide& side) {
        std::vector<int> inv;
        for (int i = 0; i < rank_; ++i) {
          if (side.labels[i].qdim == 1) inv.push_back(i);
        }
        return inv;
      };
      std::vector<int> invL = invertibles(pb_.left);
      std::vector<int> invR = invertibles(pb_.right);
      bool ok = !invL.empty() && invL.size() == invR.size();
      auto nonzero_row0 = [&](const RelabelSide& side) {
        for (int x = 0; x < rank_; ++x) {
          if (pb_.exact ? side.S[0][x].ev.is_zero() : std::abs(side.S[0][x].fv) < 1e-9) {
            return false;
          }
        }
        return true;
      };
      if (ok && nonzero_row0(pb_.left) && nonzero_row0(pb_.right)) {
        use_ratio_ = true;
        auto add_ratios = [&](const RelabelSide& side, const std::vector<int>& inv, SideIds& ids) {
          ids.ratio.assign(rank_, {});
          for (int x = 0; x < rank_; ++x) {
            for (int g : inv) {
              CompValue r;
              if (pb_.exact) {
                r.ev = side.S[g][x].ev / side.S[0][x].ev;
                r.fv = r.ev.to_complex();
              } else {
                r.fv = side.S[g][x].fv / side.S[0][x].fv;
              }
              ids.ratio[x].push_back(in.add(r));
            }
          }
        };
        add_ratios(pb_.left, invL, lt);
        add_ratios(pb_.right, invR, rt);
      }
    }

    in.finalize();
    auto map_vec = [&](std::vector<int>& v) {
      for (int& s : v) s = in.id(s);
    };
    auto map_ids = [&](SideIds& ids) {
      map_vec(ids.T);
      for (auto& row : ids.S) map_vec(row);
      for (auto& row : ids.W) map_vec(row);
      map_vec(ids.five2);
      for (auto& row : ids.ratio) map_vec(row);
    };
    map_ids(lt);
    map_ids(rt);
    idsL_ = std::move(lt);
    idsR_ = std::move(rt);
  }

  std::vector<long long> fingerprint(const RelabelSide& side, const SideIds& ids, int x) const {
    std::vector<long long> fp;
    fp.push_back(side.labels[x].qdim);
    fp.push_back(ids.T[x]);
    if (use_five2_) fp.push_back(ids.five2[x]);
    auto push_sorted = [&fp](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      fp.insert(fp.end(), v.begin(), v.end());
    };
    if (use_S_) {
      fp.push_back(ids.S[x][x]);
      push_sorted(ids.S[x]);
      std::vector<int> col(rank_);
      for (int i = 0; i < rank_; ++i) col[i] = ids.S[i][x];
      push_sorted(col);
    }
    if (use_ratio_) push_sorted(ids.ratio[x]);
    if (use_W_) {
      fp.push_back(ids.W[x][x]);
      push_sorted(ids.W[x]);
      std::vector<int> col(rank_);
      for (int i = 0; i < rank_; ++i) col[i] = ids.W[i][x];
      push_sorted(col);
    }
    return fp;
  }

  void build_fingerprints() {
    fpL_.reserve(rank_);
    fpR_.reserve(rank_);
    for (int x = 0; x < rank_; ++x) {
      fpL_.push_back(fingerprint(pb_.left, idsL_, x));
      fpR_.push_back(fingerprint(pb_.right, idsR_, x));
    }
  }

  void build_candidates() {
    std::map<std::vector<long long>, std::vector<int>> by_fp;
    for (int j = 0; j < rank_; ++j) by_fp[fpR_[j]].push_back(j);
    cand_.assign(rank_, {});
    for (int i = 0; i < rank_; ++i) {
      auto it = by_fp.find(fpL_[i]);
      if (it != by_fp.end()) cand_[i] = it->second;
      if (i == 0) {
        // The unit is pinned: index 0 on both sides.
        bool unit_ok = std::find(cand_[0].begin(), cand_[0].end(), 0) != cand_[0].end();
        cand_[0] = unit_ok ? std::vector<int>{0} : std::vector<int>{};
      }
      if (cand_[i].empty()) infeasible_ = true;
    }
  }

  // Deterministic static order: most-constrained label first, with a greedy
  // preference for closing sampled triples early so the lazy three-point
  // constraint can prune near the top of the tree.
  void build_order() {
    std::vector<char> placed(rank_, 0);
    order_.clear();
    order_.reserve(rank_);
    const auto* triples = pb_.triple ? &pb_.triple->triples : nullptr;
    for (int step = 0; step < rank_; ++step) {
      int best = -1;
      long long best_cand = 0, best_closed = 0;
      for (int i = 0; i < rank_; ++i) {
        if (placed[i]) continue;
        long long closed = 0;
        if (triples) {
          for (const auto& t : *triples) {
            bool uses_i = false, rest_placed = true;
            for (int c : t) {
              if (c == i) {
                uses_i = true;
              } else if (!placed[c]) {
                rest_placed = false;
              }
            }
            if (uses_i && rest_placed) ++closed;
          }
        }
        long long nc = static_cast<long long>(cand_[i].size());
        if (best < 0 || nc < best_cand || (nc == best_cand && closed > best_closed)) {
          best = i;
          best_cand = nc;
          best_closed = closed;
        }
      }
      placed[best] = 1;
      order_.push_back(best);
    }
    pos_of_.assign(rank_, -1);
    for (int t = 0; t < rank_; ++t) pos_of_[order_[t]] = t;
  }

  void schedule_triples() {
    ready_.assign(rank_, {});
    if (!pb_.triple) return;
    for (const auto& t : pb_.triple->triples) {
      int at = 0;
      for (int c : t) at = std::max(at, pos_of_[c]);
      ready_[at].push_back(&t);
    }
  }

  CompValue b_left(const std::array<int, 3>& t, long long* evals) {
    auto it = bcache_left_.find(t);
    if (it != bcache_left_.end()) return it->second;
    if (evals) ++*evals;
    CompValue v = pb_.triple->left(t[0], t[1], t[2]);
    bcache_left_.emplace(t, v);
    return v;
  }

  CompValue b_right(const std::array<int, 3>& t, long long* evals) {
    auto it = bcache_right_.find(t);
    if (it != bcache_right_.end()) return it->second;
    if (evals) ++*evals;
    CompValue v = pb_.triple->right(t[0], t[1], t[2]);
    bcache_right_.emplace(t, v);
    return v;
  }

  bool pair_ok(int i, int j) {
    const auto& L = pb_.left;
    const auto& R = pb_.right;
    auto entry_ok = [&](int idl, int idr, const CompValue& a, const CompValue& b) {
      if (idl != idr) return false;
      // Conservative float ids require a strict confirmation.
      return pb_.exact || values_equal(false, a, b);
    };
    if (use_S_ && !entry_ok(idsL_.S[i][i], idsR_.S[j][j], L.S[i][i], R.S[j][j])) return false;
    if (use_W_ && !entry_ok(idsL_.W[i][i], idsR_.W[j][j], L.W[i][i], R.W[j][j])) return false;
    for (int i2 : order_) {
      if (i2 == i) break;
      if (sigma_[i2] < 0) continue;
      int j2 = sigma_[i2];
      if (use_S_) {
        if (!entry_ok(idsL_.S[i][i2], idsR_.S[j][j2], L.S[i][i2], R.S[j][j2])) return false;
        if (!entry_ok(idsL_.S[i2][i], idsR_.S[j2][j], L.S[i2][i], R.S[j2][j])) return false;
      }
      if (use_W_) {
        if (!entry_ok(idsL_.W[i][i2], idsR_.W[j][j2], L.W[i][i2], R.W[j][j2])) return false;
        if (!entry_ok(idsL_.W[i2][i], idsR_.W[j2][j], L.W[i2][i], R.W[j2][j])) return false;
      }
    }
    return true;
  }

  bool triples_ok(int pos) {
    for (const auto* t : ready_[pos]) {
      CompValue lv = b_left(*t, &res_->b_evals);
      CompValue rv =
          b_right({sigma_[(*t)[0]], sigma_[(*t)[1]], sigma_[(*t)[2]]}, &res_->b_evals);
      if (!values_equal(pb_.exact, lv, rv)) return false;
    }
    return true;
  }

  // Returns true when the witness limit was reached (stops the traversal);
  // a false return at the root therefore certifies exhaustion.
  bool dfs(int pos) {
    if (pos == rank_) {
      // Strict full re-verification: in float mode the id-based pruning is
      // conservative, and this also guards the incremental bookkeeping.
      if (validate(sigma_, &res_->b_evals)) {
        res_->witnesses.push_back(sigma_);
        return static_cast<int>(res_->witnesses.size()) >= limit_;
      }
      return false;
    }
    int i = order_[pos];
    for (int j : cand_[i]) {
      if (used_[j]) continue;
      ++res_->nodes;
      sigma_[i] = j;
      used_[j] = 1;
      bool ok = pair_ok(i, j) && triples_ok(pos);
      if (ok && dfs(pos + 1)) return true;
      if (!ok) ++res_->prunes;
      sigma_[i] = -1;
      used_[j] = 0;
    }
    return false;
  }

  const RelabelProblem& pb_;
  int rank_ = 0;
  bool use_S_ = false, use_W_ = false, use_five2_ = false, use_ratio_ = false;
  bool infeasible_ = false;
  SideIds idsL_, idsR_;
  std::vector<std::vector<long long>> fpL_, fpR_;
  std::vector<std::vector<int>> cand_;
  std::vector<int> order_, pos_of_;
  std::vector<std::vector<const std::array<int, 3>*>> ready_;
  std::vector<int> sigma_;
  std::vector<char> used_;
  int limit_ = 1;
  std::map<std::array<int, 3>, CompValue> bcache_left_, bcache_right_;
  RelabelResult* res_ = nullptr;
};

}  // namespace

CompValue comp_value(const CycNum& v) {
  CompValue c;
  c.ev = v;
  c.fv = v.to_complex();
  return c;
}

CompValue comp_value(std::complex<double> v) {
  CompValue c;
  c.fv = v;
  return c;
}

RelabelResult find_relabeling(const RelabelProblem& problem, int limit) {
  Searcher s(problem);
  return s.run(limit);
}

EscalatedResult find_relabeling_escalated(const RelabelProblem& problem, int max_rounds,
                                          long long hunt_budget) {
  EscalatedResult out;
  if (!problem.triple) {
    out.result = find_relabeling(problem);
    return out;
  }

  // Memoize both providers across rounds: restarted searches and hunts
  // revisit the same entries.
  RelabelProblem pb = problem;
  auto cache_left = std::make_shared<std::map<std::array<int, 3>, CompValue>>();
  auto cache_right = std::make_shared<std::map<std::array<int, 3>, CompValue>>();
  auto memoize = [](std::function<CompValue(int, int, int)> fn,
                    std::shared_ptr<std::map<std::array<int, 3>, CompValue>> cache) {
    return [fn = std::move(fn), cache = std::move(cache)](int x, int y, int z) {
      std::array<int, 3> key{x, y, z};
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
      CompValue v = fn(x, y, z);
      cache->emplace(key, v);
      return v;
    };
  };
  pb.triple->left = memoize(pb.triple->left, cache_left);
  pb.triple->right = memoize(pb.triple->right, cache_right);

  const int rank = static_cast<int>(pb.left.labels.size());
  while (true) {
    RelabelResult res = find_relabeling(pb);
    if (!res.found) {
      out.result = res;
      return out;
    }
    if (out.rounds >= max_rounds) {
      out.result = res;
      out.rounds_capped = true;
      return out;
    }

    const auto& sigma = res.mapping;
    std::vector<int> moved, fixed;
    for (int i = 0; i < rank; ++i) (sigma[i] != i ? moved : fixed).push_back(i);
    std::set<std::array<int, 3>> known(pb.triple->triples.begin(), pb.triple->triples.end());

    std::optional<std::array<int, 3>> refuter;
    auto check = [&](int x, int y, int z) {
      if (refuter || out.targeted_checks >= hunt_budget) return true;
      std::array<int, 3> t{x, y, z};
      if (known.count(t)) return false;
      ++out.targeted_checks;
      CompValue lv = pb.triple->left(t[0], t[1], t[2]);
      CompValue rv = pb.triple->right(sigma[t[0]], sigma[t[1]], sigma[t[2]]);
      if (!values_equal(pb.exact, lv, rv)) {
        refuter = t;
        return true;
      }
      return false;
    };
    auto done = [&] { return refuter.has_value() || out.targeted_checks >= hunt_budget; };

    // Rings by number of moved coordinates, fewest first: for these
    // comparisons the refuting entries concentrate where a moved label meets
    // otherwise-fixed ones. The all-fixed ring closes the sweep so that a
    // surviving candidate is checked against the entire table.
    for (int x : moved) {
      for (int y : fixed) {
        for (int z : fixed) {
          if (check(x, y, z) || check(y, x, z) || check(y, z, x)) break;
        }
        if (done()) break;
      }
      if (done()) break;
    }
    for (int x : moved) {
      for (int y : moved) {
        for (int z : fixed) {
          if (check(x, y, z) || check(x, z, y) || check(z, x, y)) break;
        }
        if (done()) break;
      }
      if (done()) break;
    }
    for (int x : moved) {
      for (int y : moved) {
        for (int z : moved) {
          if (check(x, y, z)) break;
        }
        if (done()) break;
      }
      if (done()) break;
    }
    for (int x : fixed) {
      for (int y : fixed) {
        for (int z : fixed) {
          if (check(x, y, z)) break;
        }
        if (done()) break;
      }
      if (done()) break;
    }

    if (!refuter) {
      out.result = res;
      out.hunt_capped = out.targeted_checks >= hunt_budget;
      return out;
    }
    pb.triple->triples.push_back(*refuter);
    ++out.rounds;
  }
}

std::vector<std::vector<int>> all_relabelings_brute_force(const RelabelProblem& problem,
                                                          int max_rank) {
  const int rank = static_cast<int>(problem.left.labels.size());
  if (rank > max_rank) fail("brute force refused: rank exceeds limit");
  Searcher s(problem);
  std::vector<int> tail(std::max(0, rank - 1));
  std::iota(tail.begin(), tail.end(), 1);
  std::vector<std::vector<int>> out;
  std::vector<int> sigma(rank);
  sigma[0] = 0;
  long long ignored = 0;
  do {
    for (int i = 1; i < rank; ++i) sigma[i] = tail[i - 1];
    if (s.validate(sigma, &ignored)) out.push_back(sigma);
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

}  // namespace zestlab
