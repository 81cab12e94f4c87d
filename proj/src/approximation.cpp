#include "approximation.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <map>

namespace clo {

bool indicator_less(const Indicator& a, const Indicator& b) {
  std::size_t ma = a.verts.empty() ? 0 : a.verts.back() + 1;
  std::size_t mb = b.verts.empty() ? 0 : b.verts.back() + 1;
  if (ma != mb) return ma < mb;
  return a.verts < b.verts;
}

Approximator Approximator::constant_one(std::size_t ell) {
  Approximator a(ell);
  a.indicators_.push_back({});
  return a;
}

Approximator Approximator::from_sets(std::size_t ell,
                                     std::vector<std::vector<std::size_t>> sets) {
  Approximator a(ell);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() > ell)
      fail(ErrorKind::invalid_argument, "indicator larger than the vertex budget");
    if (s.size() <= 1) return constant_one(ell);
    a.indicators_.push_back({std::move(s)});
  }
  std::sort(a.indicators_.begin(), a.indicators_.end(), indicator_less);
  a.indicators_.erase(std::unique(a.indicators_.begin(), a.indicators_.end()),
                      a.indicators_.end());
  return a;
}

bool Approximator::accepts(const Graph& g) const {
  for (const auto& ind : indicators_) {
    bool hit = true;
    for (std::size_t i = 0; i < ind.verts.size() && hit; ++i)
      for (std::size_t j = i + 1; j < ind.verts.size(); ++j)
        if (!g.edge(ind.verts[i], ind.verts[j])) {
          hit = false;
          break;
        }
    if (hit) return true;
  }
  return false;
}

ApproxParams default_params(std::size_t n, std::size_t k) {
  if (n < 2 || k < 2) fail(ErrorKind::invalid_argument, "parameters need n, k >= 2");
  std::size_t root = static_cast<std::size_t>(std::sqrt(double(k)));
  while (root * root > k) --root;
  while ((root + 1) * (root + 1) <= k) ++root;
  ApproxParams params;
  params.ell = root;
  bool square = root * root == k;
  bool pow2 = (n & (n - 1)) == 0;
  if (square && pow2) {
    std::size_t log2n = 0;
    for (std::size_t v = n; v > 1; v >>= 1) ++log2n;
    params.p = 10 * root * log2n;
  } else {
    using Big = boost::multiprecision::cpp_bin_float_100;
    Big value = 10 * sqrt(Big(k)) * log(Big(n)) / log(Big(2));
    Big fl = floor(value);
    if (value - fl < Big("1e-50") || fl + 1 - value < Big("1e-50"))
      fail(ErrorKind::internal, "parameter p lands too close to an integer to round safely");
    params.p = fl.convert_to<std::size_t>() + 1;
  }
  params.m = integer_pow(BigInt(params.p) - 1, params.ell) * falling_factorial(params.ell,
                                                                               params.ell);
  return params;
}

namespace {

// Distinct view of a family: canonical-order indices of first occurrences.
std::vector<std::size_t> distinct_order(const std::vector<Indicator>& family) {
  std::vector<std::size_t> idx(family.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (family[a].verts != family[b].verts) return indicator_less(family[a], family[b]);
    return a < b;
  });
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (i == 0 || family[idx[i]].verts != family[idx[i - 1]].verts) keep.push_back(idx[i]);
  return keep;
}

}  // namespace

std::optional<Sunflower> find_sunflower(const std::vector<Indicator>& family, std::size_t p) {
  if (p < 2) fail(ErrorKind::invalid_argument, "sunflowers need at least two petals");
  auto order = distinct_order(family);
  if (order.size() < p) return std::nullopt;

  // Greedy pairwise-disjoint subfamily in canonical order.
  std::vector<std::size_t> taken;
  std::map<std::size_t, std::size_t> used;  // vertex -> hits across distinct sets
  {
    std::vector<char> seen;  // grows as needed
    auto marked = [&](std::size_t v) { return v < seen.size() && seen[v]; };
    for (std::size_t i : order) {
      bool clash = false;
      for (std::size_t v : family[i].verts)
        if (marked(v)) {
          clash = true;
          break;
        }
      if (clash) continue;
      taken.push_back(i);
      for (std::size_t v : family[i].verts) {
        if (v >= seen.size()) seen.resize(v + 1, 0);
        seen[v] = 1;
      }
      if (taken.size() == p) {
        Sunflower s;
        s.members = taken;
        return s;
      }
    }
  }

  for (std::size_t i : order)
    for (std::size_t v : family[i].verts) ++used[v];
  if (used.empty()) return std::nullopt;
  std::size_t best = used.begin()->first;
  for (const auto& [v, cnt] : used)
    if (cnt > used[best]) best = v;

  std::vector<Indicator> link;
  std::vector<std::size_t> link_src;
  for (std::size_t i : order) {
    const auto& verts = family[i].verts;
    if (!std::binary_search(verts.begin(), verts.end(), best)) continue;
    Indicator trimmed;
    for (std::size_t v : verts)
      if (v != best) trimmed.verts.push_back(v);
    link.push_back(std::move(trimmed));
    link_src.push_back(i);
  }
  auto inner = find_sunflower(link, p);
  if (!inner) return std::nullopt;
  Sunflower s;
  s.core = inner->core;
  s.core.insert(std::lower_bound(s.core.begin(), s.core.end(), best), best);
  for (std::size_t idx : inner->members) s.members.push_back(link_src[idx]);
  return s;
}

Approximator pluck(Approximator a, const ApproxParams& params, ApproxTrace* trace) {
  while (BigInt(a.indicators().size()) > params.m) {
    auto s = find_sunflower(a.indicators(), params.p);
    if (!s) break;
    if (trace) {
      ++trace->plucks;
      trace->cores.push_back(s->core);
    }
    if (s->core.size() <= 1) return Approximator::constant_one(a.ell());
    std::vector<char> drop(a.indicators().size(), 0);
    for (std::size_t i : s->members) drop[i] = 1;
    std::vector<std::vector<std::size_t>> sets;
    sets.push_back(s->core);
    for (std::size_t i = 0; i < a.indicators().size(); ++i)
      if (!drop[i]) sets.push_back(a.indicators()[i].verts);
    a = Approximator::from_sets(a.ell(), std::move(sets));
  }
  return a;
}

Approximator approx_or(const Approximator& a, const Approximator& b, const ApproxParams& params,
                       ApproxTrace* trace) {
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& ind : a.indicators()) sets.push_back(ind.verts);
  for (const auto& ind : b.indicators()) sets.push_back(ind.verts);
  return pluck(Approximator::from_sets(params.ell, std::move(sets)), params, trace);
}

Approximator approx_and(const Approximator& a, const Approximator& b, const ApproxParams& params,
                        ApproxTrace* trace) {
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& left : a.indicators())
    for (const auto& right : b.indicators()) {
      std::vector<std::size_t> join;
      std::set_union(left.verts.begin(), left.verts.end(), right.verts.begin(),
                     right.verts.end(), std::back_inserter(join));
      if (join.size() > params.ell) {
        if (trace) ++trace->dropped;
        continue;
      }
      sets.push_back(std::move(join));
    }
  return pluck(Approximator::from_sets(params.ell, std::move(sets)), params, trace);
}

Approximator approximate_circuit(const Circuit& c, const ApproxParams& params,
                                 ApproxTrace* trace) {
  if (!c.oracle_free())
    fail(ErrorKind::invalid_argument, "approximation needs an oracle-free circuit");
  if (c.fanin_mode != FaninMode::binary)
    fail(ErrorKind::invalid_argument, "approximation needs fan-in two; rebuild the circuit");
  if (params.ell < 2)
    fail(ErrorKind::invalid_argument, "vertex budget below an edge; needs ell >= 2");
  std::vector<Approximator> memo(c.nodes.size(), Approximator(params.ell));
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& nd = c.nodes[i];
    switch (nd.op) {
      case NodeOp::x_leaf: {
        auto [u, v] = edge_endpoints(nd.index);
        memo[i] = Approximator::from_sets(params.ell, {{u, v}});
        break;
      }
      case NodeOp::const_zero:
        memo[i] = Approximator(params.ell);
        break;
      case NodeOp::const_one:
        memo[i] = Approximator::constant_one(params.ell);
        break;
      case NodeOp::and_gate:
        memo[i] = approx_and(memo[nd.args[0]], memo[nd.args[1]], params, trace);
        break;
      case NodeOp::or_gate:
        memo[i] = approx_or(memo[nd.args[0]], memo[nd.args[1]], params, trace);
        break;
      case NodeOp::y_leaf:
        fail(ErrorKind::internal, "oracle leaf after the oracle-free check");
    }
  }
  return memo[c.output];
}

ErrorCounts count_errors(const Circuit& c, const Approximator& a, const TestSuite& suite) {
  if (!c.oracle_free())
    fail(ErrorKind::invalid_argument, "error counting needs an oracle-free circuit");
  if (c.n != suite.n() || c.k != suite.k())
    fail(ErrorKind::invalid_argument, "circuit and test suite disagree on (n, k)");
  ErrorCounts out{0, 0};
  for (const auto& member : suite.u_members()) {
    if (eval_x_only(c, member.graph) && !a.accepts(member.graph)) ++out.e_plus;
  }
  for (std::size_t i = 0; i < suite.v_members().size(); ++i) {
    const Graph& g = suite.v_members()[i].graph;
    if (a.accepts(g) && !eval_x_only(c, g)) out.e_minus += suite.dv_weight_at(i);
  }
  Graph empty(suite.n());
  if (a.accepts(empty) && !eval_x_only(c, empty)) out.e_minus += BigInt(suite.k() - 1);
  return out;
}

BigInt positive_error_bound(std::size_t s, const ApproxParams& params, std::size_t n,
                            std::size_t k) {
  if (k < params.ell + 1 || n < params.ell + 1) return 0;
  return BigInt(s) * params.m * params.m * binomial(n - params.ell - 1, k - params.ell - 1);
}

BigInt negative_error_bound(std::size_t s, const ApproxParams& params, std::size_t n,
                            std::size_t k) {
  BigInt pairs = binomial(params.ell, 2);
  BigInt numer = BigInt(s) * params.m * params.m * integer_pow(pairs, params.p) *
                 integer_pow(BigInt(k - 1), n);
  return numer / integer_pow(BigInt(k - 1), params.p);
}

CloApproxReport approximate_clo(const Circuit& c, const RectFamily& fam, std::size_t d,
                                const ApproxParams& params, const TestSuite& suite) {
  if (c.oracle_ceiling() > fam.rects.size())
    fail(ErrorKind::invalid_argument, "circuit references oracle ids outside the family");
  auto tables = FamilyTables::build(fam, suite);
  std::size_t dstar = max_overlap(tables, suite.u_members().size());
  if (dstar > d)
    fail(ErrorKind::invalid_argument, "family overlap " + std::to_string(dstar) +
                                          " exceeds the requested bound " + std::to_string(d));
  std::size_t e = fam.rects.size();
  std::size_t depth = std::min(d, e);
  BigInt total = 0;
  for (std::size_t t = 0; t <= depth; ++t) total += binomial(e, t);
  if (total > BigInt(1) << 20) fail(ErrorKind::scale, "too many oracle subsets to materialize");

  auto val = OracleValuation::extremal(tables, suite);
  CloApproxReport rep;
  rep.d = d;
  rep.params = params;
  rep.separation_pass = verify_separation(c, suite, val).pass;
  rep.v_disagreement_weight = 0;
  rep.e_plus_total = 0;
  rep.e_minus_total = 0;

  auto add_entry = [&](const std::vector<std::size_t>& j_set) {
    Circuit flat = binarize(substitute(c, j_set));
    Approximator approx = approximate_circuit(flat, params);
    ErrorCounts errors = count_errors(flat, approx, suite);
    CloApproxEntry entry{j_set,
                         flat.size(),
                         std::move(approx),
                         std::move(errors),
                         positive_error_bound(flat.size(), params, suite.n(), suite.k()),
                         negative_error_bound(flat.size(), params, suite.n(), suite.k())};
    rep.e_plus_total += entry.errors.e_plus;
    rep.e_minus_total += entry.errors.e_minus;
    rep.entries.push_back(std::move(entry));
  };

  add_entry({});
  for (std::size_t t = 1; t <= depth; ++t) {
    std::vector<std::size_t> j_set(t);
    for (std::size_t i = 0; i < t; ++i) j_set[i] = i;
    for (;;) {
      add_entry(j_set);
      std::size_t i = t;
      while (i > 0 && j_set[i - 1] == e - t + (i - 1)) --i;
      if (i == 0) break;
      ++j_set[i - 1];
      for (std::size_t j = i; j < t; ++j) j_set[j] = j_set[j - 1] + 1;
    }
  }

  auto fires = [&](const std::vector<std::size_t>& j_set, MemberRef ref) {
    if (ref.side == Side::u_side) {
      for (std::size_t j : j_set)
        if (!tables.u_in[j].test(ref.index)) return false;
      return true;
    }
    for (std::size_t j : j_set)
      if (tables.v_in[j].test(ref.index)) return false;
    return true;
  };
  auto approx_value = [&](MemberRef ref) {
    const Graph& g = suite.graph_of(ref);
    for (const auto& entry : rep.entries)
      if (fires(entry.oracles, ref) && entry.approx.accepts(g)) return true;
    return false;
  };

  std::size_t u_hits = 0;
  for (std::size_t i = 0; i < suite.u_members().size(); ++i) {
    MemberRef ref{Side::u_side, i};
    bool approx = approx_value(ref);
    if (approx) ++u_hits;
    if (approx != eval_member(c, suite, ref, val)) ++rep.u_disagreements;
  }
  BigInt v_miss = 0;
  for (std::size_t i = 0; i < suite.v_members().size(); ++i) {
    MemberRef ref{Side::v_side, i};
    bool approx = approx_value(ref);
    if (!approx) v_miss += suite.dv_weight_at(i);
    if (approx != eval_member(c, suite, ref, val))
      rep.v_disagreement_weight += suite.dv_weight_at(i);
  }
  rep.u_accepted_measure = make_rational(u_hits, binomial(suite.n(), suite.k()));
  rep.v_rejected_measure = make_rational(v_miss, suite.dv_weight_total());
  rep.agrees_everywhere = rep.u_disagreements == 0 && rep.v_disagreement_weight == 0;
  rep.union_bound_ok = BigInt(rep.u_disagreements) <= rep.e_plus_total &&
                       rep.v_disagreement_weight <= rep.e_minus_total;
  return rep;
}

}  // namespace clo
