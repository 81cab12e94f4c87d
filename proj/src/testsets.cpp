#include "testsets.hpp"

#include <functional>

namespace clo {

std::vector<CliqueGraph> enumerate_u(std::size_t n, std::size_t k) {
  if (k < 2 || k > n) fail(ErrorKind::invalid_argument, "clique size must satisfy 2 <= k <= n");
  std::vector<CliqueGraph> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    out.push_back(clique_graph(pick, n));
    // next combination in lex order
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<Partition> enumerate_v(std::size_t n, std::size_t k) {
  if (k < 3 || k > n) fail(ErrorKind::invalid_argument, "need 3 <= k <= n for the rejected side");
  std::size_t max_parts = k - 1;
  std::vector<Partition> out;
  std::vector<std::size_t> rgs(n, 0);
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= max(prefix) + 1, values < max_parts.
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t pos, std::size_t used) {
    if (pos == n) {
      if (used < 2) return;
      std::vector<std::vector<std::size_t>> parts(used);
      for (std::size_t v = 0; v < n; ++v) parts[rgs[v]].push_back(v);
      out.push_back(make_partition(n, std::move(parts)));
      return;
    }
    std::size_t limit = used < max_parts ? used + 1 : max_parts;
    for (std::size_t c = 0; c < limit; ++c) {
      rgs[pos] = c;
      walk(pos + 1, c == used ? used + 1 : used);
    }
  };
  rgs[0] = 0;
  walk(1, 1);
  return out;
}

BigInt dv_weight(std::size_t zeta, std::size_t k) { return falling_factorial(k - 1, zeta); }

BigInt dv_weight_total(std::size_t n, std::size_t k) {
  return integer_pow(BigInt(k - 1), n) - BigInt(k - 1);
}

Rational dv_mass(const Partition& p, std::size_t n, std::size_t k) {
  return make_rational(dv_weight(p.zeta(), k), dv_weight_total(n, k));
}

TestSuite TestSuite::build(std::size_t n, std::size_t k) {
  if (k < 3 || k >= n) fail(ErrorKind::invalid_argument, "test suite needs 3 <= k < n");
  if (binomial(n, k) > 1000000)
    fail(ErrorKind::scale, "too many cliques to enumerate; use sampling instead");
  if (partition_count(n, 2, k - 1) > 10000000)
    fail(ErrorKind::scale, "too many partitions to enumerate; use sampling instead");
  TestSuite s;
  s.n_ = n;
  s.k_ = k;
  s.u_ = enumerate_u(n, k);
  s.v_ = enumerate_v(n, k);
  s.du_ = make_rational(1, binomial(n, k));
  s.v_weight_total_ = clo::dv_weight_total(n, k);
  s.v_weights_.reserve(s.v_.size());
  for (const auto& p : s.v_) s.v_weights_.push_back(clo::dv_weight(p.zeta(), k));
  for (std::size_t i = 0; i < s.u_.size(); ++i) s.u_lookup_[s.u_[i].encoding] = i;
  for (std::size_t i = 0; i < s.v_.size(); ++i) s.v_lookup_[s.v_[i].encoding] = i;
  return s;
}

Rational TestSuite::dv_mass_at(std::size_t i) const {
  return make_rational(v_weights_[i], v_weight_total_);
}

const Graph& TestSuite::graph_of(MemberRef ref) const {
  return ref.side == Side::u_side ? u_[ref.index].graph : v_[ref.index].graph;
}

const std::string& TestSuite::encoding_of(MemberRef ref) const {
  return ref.side == Side::u_side ? u_[ref.index].encoding : v_[ref.index].encoding;
}

std::optional<std::size_t> TestSuite::find_u(const std::string& encoding) const {
  auto it = u_lookup_.find(encoding);
  if (it == u_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TestSuite::find_v(const std::string& encoding) const {
  auto it = v_lookup_.find(encoding);
  if (it == v_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::size_t, std::size_t>> check_antichain(
    const std::vector<Graph>& graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      if (i == j || graphs[i] == graphs[j]) continue;
      if (graphs[i].subgraph_of(graphs[j])) return std::make_pair(i, j);
    }
  return std::nullopt;
}

std::optional<std::pair<MemberRef, MemberRef>> check_antichain(const TestSuite& suite) {
  std::vector<Graph> all;
  std::vector<MemberRef> refs;
  for (std::size_t i = 0; i < suite.u_members().size(); ++i) {
    all.push_back(suite.u_members()[i].graph);
    refs.push_back({Side::u_side, i});
  }
  for (std::size_t i = 0; i < suite.v_members().size(); ++i) {
    all.push_back(suite.v_members()[i].graph);
    refs.push_back({Side::v_side, i});
  }
  auto hit = check_antichain(all);
  if (!hit) return std::nullopt;
  return std::make_pair(refs[hit->first], refs[hit->second]);
}

}  // namespace clo
