#include "rectangles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace clo {

namespace {

constexpr double z99 = 2.5758293035489004;

SetExpr leaf(SetExprKind kind) {
  SetExpr e;
  e.kind = kind;
  return e;
}

SetExpr pair_expr(SetExprKind kind, std::size_t i, std::size_t j) {
  if (i == j) fail(ErrorKind::invalid_argument, "pair expression needs distinct endpoints");
  if (i > j) std::swap(i, j);
  SetExpr e;
  e.kind = kind;
  e.a = i;
  e.b = j;
  return e;
}

SetExpr vert_expr(SetExprKind kind, std::vector<std::size_t> verts) {
  if (verts.empty()) fail(ErrorKind::invalid_argument, "vertex-set expression needs vertices");
  std::sort(verts.begin(), verts.end());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    if (verts[i] == verts[i + 1])
      fail(ErrorKind::invalid_argument, "vertex-set expression repeats a vertex");
  SetExpr e;
  e.kind = kind;
  e.verts = std::move(verts);
  return e;
}

}  // namespace

SetExpr SetExpr::all() { return leaf(SetExprKind::all); }
SetExpr SetExpr::none() { return leaf(SetExprKind::none); }

SetExpr SetExpr::explicit_set(std::vector<std::string> members) {
  SetExpr e;
  e.kind = SetExprKind::explicit_members;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  e.members = std::move(members);
  return e;
}

SetExpr SetExpr::smallest_pair(std::size_t i, std::size_t j) {
  return pair_expr(SetExprKind::smallest_pair, i, j);
}
SetExpr SetExpr::split_pair(std::size_t i, std::size_t j) {
  return pair_expr(SetExprKind::split_pair, i, j);
}
SetExpr SetExpr::not_edge_u(std::size_t i, std::size_t j) {
  return pair_expr(SetExprKind::not_edge_u, i, j);
}
SetExpr SetExpr::not_edge_v(std::size_t i, std::size_t j) {
  return pair_expr(SetExprKind::not_edge_v, i, j);
}
SetExpr SetExpr::lex_first(std::vector<std::size_t> verts) {
  return vert_expr(SetExprKind::lex_first, std::move(verts));
}
SetExpr SetExpr::contains_clique(std::vector<std::size_t> verts) {
  return vert_expr(SetExprKind::contains_clique, std::move(verts));
}

SetExpr SetExpr::union_of(std::vector<SetExpr> args) {
  SetExpr e;
  e.kind = SetExprKind::union_;
  e.args = std::move(args);
  return e;
}

SetExpr SetExpr::intersection_of(std::vector<SetExpr> args) {
  SetExpr e;
  e.kind = SetExprKind::intersection_;
  e.args = std::move(args);
  return e;
}

SetExpr SetExpr::complement_of(SetExpr arg) {
  SetExpr e;
  e.kind = SetExprKind::complement_;
  e.args.push_back(std::move(arg));
  return e;
}

std::optional<Side> required_side(const SetExpr& expr) {
  switch (expr.kind) {
    case SetExprKind::all:
    case SetExprKind::none:
    case SetExprKind::explicit_members:
      return std::nullopt;
    case SetExprKind::smallest_pair:
    case SetExprKind::lex_first:
    case SetExprKind::not_edge_u:
      return Side::u_side;
    case SetExprKind::split_pair:
    case SetExprKind::contains_clique:
    case SetExprKind::not_edge_v:
      return Side::v_side;
    case SetExprKind::union_:
    case SetExprKind::intersection_:
    case SetExprKind::complement_: {
      std::optional<Side> side;
      for (const auto& arg : expr.args) {
        auto s = required_side(arg);
        if (!s) continue;
        if (side && *side != *s)
          fail(ErrorKind::invalid_argument, "expression mixes clique-side and partition-side sets");
        side = s;
      }
      return side;
    }
  }
  fail(ErrorKind::internal, "unknown set expression kind");
}

namespace {

bool member_listed(const SetExpr& e, const std::string& encoding) {
  return std::binary_search(e.members.begin(), e.members.end(), encoding);
}

}  // namespace

bool eval_u_expr(const SetExpr& e, const std::vector<std::size_t>& verts,
                 const std::string& encoding) {
  switch (e.kind) {
    case SetExprKind::all:
      return true;
    case SetExprKind::none:
      return false;
    case SetExprKind::explicit_members:
      return member_listed(e, encoding);
    case SetExprKind::smallest_pair:
      return verts.size() >= 2 && verts[0] == e.a && verts[1] == e.b;
    case SetExprKind::lex_first:
      if (verts.size() < e.verts.size()) return false;
      return std::equal(e.verts.begin(), e.verts.end(), verts.begin());
    case SetExprKind::not_edge_u:
      return !(std::binary_search(verts.begin(), verts.end(), e.a) &&
               std::binary_search(verts.begin(), verts.end(), e.b));
    case SetExprKind::union_:
      for (const auto& arg : e.args)
        if (eval_u_expr(arg, verts, encoding)) return true;
      return false;
    case SetExprKind::intersection_:
      for (const auto& arg : e.args)
        if (!eval_u_expr(arg, verts, encoding)) return false;
      return true;
    case SetExprKind::complement_:
      return !eval_u_expr(e.args[0], verts, encoding);
    default:
      fail(ErrorKind::invalid_argument, "partition-side expression evaluated on a clique");
  }
}

bool eval_v_expr(const SetExpr& e, const std::vector<std::size_t>& part_of,
                 const std::string& encoding) {
  switch (e.kind) {
    case SetExprKind::all:
      return true;
    case SetExprKind::none:
      return false;
    case SetExprKind::explicit_members:
      return member_listed(e, encoding);
    case SetExprKind::split_pair:
      return part_of[e.a] != part_of[e.b];
    case SetExprKind::contains_clique:
      for (std::size_t i = 0; i < e.verts.size(); ++i)
        for (std::size_t j = i + 1; j < e.verts.size(); ++j)
          if (part_of[e.verts[i]] == part_of[e.verts[j]]) return false;
      return true;
    case SetExprKind::not_edge_v:
      return part_of[e.a] == part_of[e.b];
    case SetExprKind::union_:
      for (const auto& arg : e.args)
        if (eval_v_expr(arg, part_of, encoding)) return true;
      return false;
    case SetExprKind::intersection_:
      for (const auto& arg : e.args)
        if (!eval_v_expr(arg, part_of, encoding)) return false;
      return true;
    case SetExprKind::complement_:
      return !eval_v_expr(e.args[0], part_of, encoding);
    default:
      fail(ErrorKind::invalid_argument, "clique-side expression evaluated on a partition");
  }
}

bool eval_on_clique(const SetExpr& expr, const CliqueGraph& member) {
  return eval_u_expr(expr, member.vertices, member.encoding);
}

bool eval_on_partition(const SetExpr& expr, const Partition& member) {
  return eval_v_expr(expr, member.part_of, member.encoding);
}

RectPair rect_or(const RectPair& p, const RectPair& q) {
  return {SetExpr::union_of({p.u_set, q.u_set}), SetExpr::intersection_of({p.v_set, q.v_set})};
}

RectPair rect_and(const RectPair& p, const RectPair& q) {
  return {SetExpr::intersection_of({p.u_set, q.u_set}), SetExpr::union_of({p.v_set, q.v_set})};
}

bool pair_extremal_value(const RectPair& pair, MemberRef ref, const TestSuite& suite) {
  if (ref.side == Side::u_side) return eval_on_clique(pair.u_set, suite.u_members()[ref.index]);
  return !eval_on_partition(pair.v_set, suite.v_members()[ref.index]);
}

FamilyTables FamilyTables::build(const RectFamily& fam, const TestSuite& suite) {
  if (fam.n != suite.n() || fam.k != suite.k())
    fail(ErrorKind::invalid_argument, "rectangle family and test suite disagree on (n, k)");
  FamilyTables t;
  t.u_in.reserve(fam.rects.size());
  t.v_in.reserve(fam.rects.size());
  for (const auto& rect : fam.rects) {
    DynBitset us(suite.u_members().size());
    for (std::size_t i = 0; i < suite.u_members().size(); ++i)
      if (eval_on_clique(rect.u_set, suite.u_members()[i])) us.set(i);
    DynBitset vs(suite.v_members().size());
    for (std::size_t i = 0; i < suite.v_members().size(); ++i)
      if (eval_on_partition(rect.v_set, suite.v_members()[i])) vs.set(i);
    t.u_in.push_back(std::move(us));
    t.v_in.push_back(std::move(vs));
  }
  return t;
}

Rational locality_exact(const FamilyTables& tables, const TestSuite& suite) {
  std::size_t u_count = suite.u_members().size();
  BigInt acc = 0;
  DynBitset slice(u_count);
  for (std::size_t v = 0; v < suite.v_members().size(); ++v) {
    slice.clear();
    for (std::size_t r = 0; r < tables.v_in.size(); ++r)
      if (tables.v_in[r].test(v)) slice |= tables.u_in[r];
    std::size_t hits = slice.count();
    if (hits) acc += suite.dv_weight_at(v) * BigInt(hits);
  }
  return make_rational(acc, suite.dv_weight_total() * binomial(suite.n(), suite.k()));
}

Rational locality_exact(const RectFamily& fam, const TestSuite& suite) {
  return locality_exact(FamilyTables::build(fam, suite), suite);
}

std::size_t max_overlap(const FamilyTables& tables, std::size_t u_count) {
  std::vector<std::size_t> hits(u_count, 0);
  for (const auto& us : tables.u_in)
    for (std::size_t i = 0; i < u_count; ++i)
      if (us.test(i)) ++hits[i];
  std::size_t best = 0;
  for (std::size_t h : hits) best = std::max(best, h);
  return best;
}

std::size_t max_overlap(const RectFamily& fam, const TestSuite& suite) {
  return max_overlap(FamilyTables::build(fam, suite), suite.u_members().size());
}

namespace {

std::uint64_t mc_worker(const RectFamily& fam, std::uint64_t samples, std::uint64_t worker_seed) {
  std::mt19937_64 rng(worker_seed);
  std::size_t n = fam.n, k = fam.k;
  std::vector<std::size_t> deck(n), verts(k), values(n), part_of(n), slot(k - 1);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) deck[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + bounded_draw(rng, n - i);
      std::swap(deck[i], deck[j]);
      verts[i] = deck[i];
    }
    std::sort(verts.begin(), verts.end());
    std::string u_enc = encode_clique(verts);

    bool trivial = true;
    while (trivial) {
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = bounded_draw(rng, k - 1);
        if (values[i] != values[0]) trivial = false;
      }
    }
    std::size_t parts_used = 0;
    std::fill(slot.begin(), slot.end(), k - 1);
    std::vector<std::vector<std::size_t>> parts;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t c = values[v];
      if (slot[c] == k - 1) {
        slot[c] = parts_used++;
        parts.emplace_back();
      }
      part_of[v] = slot[c];
      parts[slot[c]].push_back(v);
    }
    std::string v_enc = encode_partition(parts);

    for (const auto& rect : fam.rects) {
      if (eval_u_expr(rect.u_set, verts, u_enc) && eval_v_expr(rect.v_set, part_of, v_enc)) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace

McLocality locality_mc(const RectFamily& fam, std::uint64_t samples, std::uint64_t seed,
                       unsigned workers) {
  if (samples == 0) fail(ErrorKind::invalid_argument, "need at least one sample");
  if (workers == 0) workers = 1;
  if (fam.k < 3 || fam.k > fam.n)
    fail(ErrorKind::invalid_argument, "sampling needs 3 <= k <= n");
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::thread> pool;
  std::uint64_t base = samples / workers, extra = samples % workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t quota = base + (w < extra ? 1 : 0);
    std::uint64_t wseed = mix64({seed, w, 0x6d63});
    pool.emplace_back([&fam, &counts, w, quota, wseed] { counts[w] = mc_worker(fam, quota, wseed); });
  }
  for (auto& t : pool) t.join();
  McLocality out;
  out.samples = samples;
  out.seed = seed;
  out.workers = workers;
  for (std::uint64_t c : counts) out.hits += c;
  out.estimate = double(out.hits) / double(samples);
  out.ci99_half_width = z99 * std::sqrt(out.estimate * (1.0 - out.estimate) / double(samples));
  return out;
}

}  // namespace clo
