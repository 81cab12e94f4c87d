#include "circuits.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace clo {

namespace {

bool is_leaf(NodeOp op) { return op != NodeOp::and_gate && op != NodeOp::or_gate; }

}  // namespace

std::vector<char> Circuit::reachable() const {
  std::vector<char> seen(nodes.size(), 0);
  std::vector<std::size_t> stack{output};
  seen[output] = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t a : nodes[i].args)
      if (!seen[a]) {
        seen[a] = 1;
        stack.push_back(a);
      }
  }
  return seen;
}

std::size_t Circuit::size() const {
  auto seen = reachable();
  std::size_t gates = 0;
  std::set<std::pair<int, std::size_t>> leaves;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!seen[i]) continue;
    if (is_leaf(nodes[i].op))
      leaves.insert({int(nodes[i].op), nodes[i].index});
    else
      ++gates;
  }
  return gates + leaves.size();
}

bool Circuit::oracle_free() const {
  for (const auto& nd : nodes)
    if (nd.op == NodeOp::y_leaf) return false;
  return true;
}

std::size_t Circuit::oracle_ceiling() const {
  std::size_t top = 0;
  for (const auto& nd : nodes)
    if (nd.op == NodeOp::y_leaf) top = std::max(top, nd.index + 1);
  return top;
}

Circuit make_circuit(std::size_t n, std::size_t k, FaninMode mode, std::vector<CircuitNode> nodes,
                     std::size_t output) {
  if (n < 2 || k < 2 || k > n) fail(ErrorKind::invalid_argument, "circuit needs 2 <= k <= n");
  if (nodes.empty()) fail(ErrorKind::invalid_argument, "circuit has no nodes");
  if (output >= nodes.size()) fail(ErrorKind::invalid_argument, "output is not a node id");
  std::size_t count = nodes.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t a : nodes[i].args)
      if (a >= count)
        fail(ErrorKind::invalid_argument,
             "node " + std::to_string(i) + " references missing node " + std::to_string(a));

  // Stable topological order: among ready nodes, lowest original id first.
  // Already-ordered input comes back unchanged.
  std::vector<std::size_t> indegree(count, 0);
  std::vector<std::vector<std::size_t>> fanout(count);
  for (std::size_t i = 0; i < count; ++i) {
    indegree[i] = nodes[i].args.size();
    for (std::size_t a : nodes[i].args) fanout[a].push_back(i);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < count; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  order.reserve(count);
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t f : fanout[i])
      if (--indegree[f] == 0) ready.push(f);
  }
  if (order.size() != count) {
    std::string stuck;
    for (std::size_t i = 0; i < count; ++i)
      if (indegree[i] > 0) {
        stuck = std::to_string(i);
        break;
      }
    fail(ErrorKind::invalid_argument, "circuit has a cycle through node " + stuck);
  }
  std::vector<std::size_t> new_id(count);
  for (std::size_t pos = 0; pos < count; ++pos) new_id[order[pos]] = pos;

  Circuit c;
  c.n = n;
  c.k = k;
  c.fanin_mode = mode;
  c.output = new_id[output];
  c.nodes.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    CircuitNode nd = std::move(nodes[i]);
    for (std::size_t& a : nd.args) a = new_id[a];
    c.nodes[new_id[i]] = std::move(nd);
  }

  std::size_t slots = edge_slots(n);
  for (std::size_t i = 0; i < count; ++i) {
    const CircuitNode& nd = c.nodes[i];
    std::string at = "node " + std::to_string(i);
    switch (nd.op) {
      case NodeOp::x_leaf:
        if (!nd.args.empty()) fail(ErrorKind::invalid_argument, at + ": leaves take no inputs");
        if (nd.index >= slots) fail(ErrorKind::invalid_argument, at + ": edge index out of range");
        break;
      case NodeOp::y_leaf:
      case NodeOp::const_zero:
      case NodeOp::const_one:
        if (!nd.args.empty()) fail(ErrorKind::invalid_argument, at + ": leaves take no inputs");
        break;
      case NodeOp::and_gate:
      case NodeOp::or_gate:
        if (mode == FaninMode::binary && nd.args.size() != 2)
          fail(ErrorKind::invalid_argument, at + ": gates take exactly two inputs in binary mode");
        if (nd.args.empty()) fail(ErrorKind::invalid_argument, at + ": gate has no inputs");
        break;
    }
  }
  return c;
}

std::size_t CircuitBuilder::x_at(std::size_t edge) {
  if (edge >= edge_slots(n_)) fail(ErrorKind::invalid_argument, "edge index out of range");
  for (const auto& [key, id] : x_ids_)
    if (key == edge) return id;
  nodes_.push_back({NodeOp::x_leaf, edge, {}});
  x_ids_.emplace_back(edge, nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t CircuitBuilder::y(std::size_t oracle) {
  for (const auto& [key, id] : y_ids_)
    if (key == oracle) return id;
  nodes_.push_back({NodeOp::y_leaf, oracle, {}});
  y_ids_.emplace_back(oracle, nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t CircuitBuilder::constant(bool value) {
  auto& slot = const_ids_[value ? 1 : 0];
  if (slot) return *slot;
  nodes_.push_back({value ? NodeOp::const_one : NodeOp::const_zero, 0, {}});
  slot = nodes_.size() - 1;
  return *slot;
}

std::size_t CircuitBuilder::gate(NodeOp op, std::vector<std::size_t> args) {
  if (op != NodeOp::and_gate && op != NodeOp::or_gate)
    fail(ErrorKind::invalid_argument, "gate must combine inputs");
  if (args.empty()) fail(ErrorKind::invalid_argument, "gate has no inputs");
  if (mode_ == FaninMode::binary && args.size() != 2)
    fail(ErrorKind::invalid_argument, "gates take exactly two inputs in binary mode");
  for (std::size_t a : args)
    if (a >= nodes_.size()) fail(ErrorKind::invalid_argument, "gate input is not a node id");
  nodes_.push_back({op, 0, std::move(args)});
  return nodes_.size() - 1;
}

std::size_t CircuitBuilder::fold(NodeOp op, bool identity, const std::vector<std::size_t>& args) {
  if (args.empty()) return constant(identity);
  if (args.size() == 1) return args[0];
  if (mode_ == FaninMode::unbounded) return gate(op, args);
  std::size_t acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = gate(op, {acc, args[i]});
  return acc;
}

std::size_t CircuitBuilder::and_of(const std::vector<std::size_t>& args) {
  return fold(NodeOp::and_gate, true, args);
}

std::size_t CircuitBuilder::or_of(const std::vector<std::size_t>& args) {
  return fold(NodeOp::or_gate, false, args);
}

Circuit CircuitBuilder::finish(std::size_t output) {
  return make_circuit(n_, k_, mode_, std::move(nodes_), output);
}

bool eval_x_only(const Circuit& c, const Graph& g) {
  return eval_on_graph(c, g, [](std::size_t) -> bool {
    fail(ErrorKind::invalid_argument, "circuit still contains oracle leaves");
  });
}

OracleValuation OracleValuation::extremal(const FamilyTables& tables, const TestSuite& suite) {
  OracleValuation val;
  val.u_bits_ = tables.u_in;
  std::size_t v_count = suite.v_members().size();
  val.v_bits_.reserve(tables.v_in.size());
  for (const auto& v_in : tables.v_in) {
    DynBitset off(v_count);
    for (std::size_t i = 0; i < v_count; ++i)
      if (!v_in.test(i)) off.set(i);
    val.v_bits_.push_back(std::move(off));
  }
  return val;
}

OracleValuation OracleValuation::extremal(const RectFamily& fam, const TestSuite& suite) {
  return extremal(FamilyTables::build(fam, suite), suite);
}

OracleValuation OracleValuation::seeded(const FamilyTables& tables, const TestSuite& suite,
                                        std::uint64_t seed) {
  OracleValuation val;
  std::size_t u_count = suite.u_members().size(), v_count = suite.v_members().size();
  for (std::size_t r = 0; r < tables.u_in.size(); ++r) {
    DynBitset u_bits(u_count), v_bits(v_count);
    for (std::size_t i = 0; i < u_count; ++i) {
      if (tables.u_in[r].test(i))
        u_bits.set(i);
      else if (mix64({seed, r, 0x75, i}) & 1)
        u_bits.set(i);
    }
    for (std::size_t i = 0; i < v_count; ++i) {
      if (tables.v_in[r].test(i)) continue;
      if (mix64({seed, r, 0x76, i}) & 1) v_bits.set(i);
    }
    val.u_bits_.push_back(std::move(u_bits));
    val.v_bits_.push_back(std::move(v_bits));
  }
  return val;
}

OracleValuation OracleValuation::seeded(const RectFamily& fam, const TestSuite& suite,
                                        std::uint64_t seed) {
  return seeded(FamilyTables::build(fam, suite), suite, seed);
}

OracleValuation OracleValuation::from_bits(std::vector<DynBitset> u_bits,
                                           std::vector<DynBitset> v_bits) {
  if (u_bits.size() != v_bits.size())
    fail(ErrorKind::invalid_argument, "valuation tables must pair up");
  OracleValuation val;
  val.u_bits_ = std::move(u_bits);
  val.v_bits_ = std::move(v_bits);
  return val;
}

bool OracleValuation::value(std::size_t oracle, MemberRef ref) const {
  if (oracle >= u_bits_.size())
    fail(ErrorKind::invalid_argument,
         "oracle id " + std::to_string(oracle) + " not covered by the valuation");
  return ref.side == Side::u_side ? u_bits_[oracle].test(ref.index)
                                  : v_bits_[oracle].test(ref.index);
}

bool OracleValuation::separates(const FamilyTables& tables) const {
  if (tables.u_in.size() != u_bits_.size()) return false;
  for (std::size_t r = 0; r < u_bits_.size(); ++r) {
    if (!tables.u_in[r].subset_of(u_bits_[r])) return false;
    if (v_bits_[r].intersects(tables.v_in[r])) return false;
  }
  return true;
}

bool eval_member(const Circuit& c, const TestSuite& suite, MemberRef ref,
                 const OracleValuation& val) {
  const Graph& g = suite.graph_of(ref);
  return eval_on_graph(c, g, [&](std::size_t id) { return val.value(id, ref); });
}

SeparationReport verify_separation(const Circuit& c, const TestSuite& suite,
                                   const OracleValuation& val) {
  if (c.n != suite.n() || c.k != suite.k())
    fail(ErrorKind::invalid_argument, "circuit and test suite disagree on (n, k)");
  if (c.oracle_ceiling() > val.oracle_count())
    fail(ErrorKind::invalid_argument, "circuit references oracle ids the valuation lacks");
  SeparationReport rep;
  rep.u_total = suite.u_members().size();
  rep.v_total = suite.v_members().size();
  for (std::size_t i = 0; i < rep.u_total; ++i) {
    MemberRef ref{Side::u_side, i};
    if (eval_member(c, suite, ref, val))
      ++rep.u_accepted;
    else if (!rep.witness)
      rep.witness = ref;
  }
  for (std::size_t i = 0; i < rep.v_total; ++i) {
    MemberRef ref{Side::v_side, i};
    if (!eval_member(c, suite, ref, val))
      ++rep.v_rejected;
    else if (!rep.witness)
      rep.witness = ref;
  }
  rep.pass = rep.u_accepted == rep.u_total && rep.v_rejected == rep.v_total;
  return rep;
}

SeparationReport verify_separation(const Circuit& c, const RectFamily& fam,
                                   const TestSuite& suite) {
  if (c.oracle_ceiling() > fam.rects.size())
    fail(ErrorKind::invalid_argument, "circuit references oracle ids outside the family");
  return verify_separation(c, suite, OracleValuation::extremal(fam, suite));
}

Circuit substitute(const Circuit& c, const std::vector<std::size_t>& ones) {
  std::set<std::size_t> on(ones.begin(), ones.end());
  CircuitBuilder b(c.n, c.k, c.fanin_mode);
  struct Slot {
    bool folded;
    bool value;
    std::size_t id;
  };
  std::vector<Slot> slots(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& nd = c.nodes[i];
    switch (nd.op) {
      case NodeOp::x_leaf:
        slots[i] = {false, false, b.x_at(nd.index)};
        break;
      case NodeOp::y_leaf:
        slots[i] = {true, on.count(nd.index) > 0, 0};
        break;
      case NodeOp::const_zero:
        slots[i] = {true, false, 0};
        break;
      case NodeOp::const_one:
        slots[i] = {true, true, 0};
        break;
      case NodeOp::and_gate:
      case NodeOp::or_gate: {
        bool conjunction = nd.op == NodeOp::and_gate;
        bool killed = false;
        std::vector<std::size_t> live;
        for (std::size_t a : nd.args) {
          if (slots[a].folded) {
            if (slots[a].value != conjunction) killed = true;
          } else {
            live.push_back(slots[a].id);
          }
        }
        if (killed)
          slots[i] = {true, !conjunction, 0};
        else if (live.empty())
          slots[i] = {true, conjunction, 0};
        else if (live.size() == 1)
          slots[i] = {false, false, live[0]};
        else
          slots[i] = {false, false, conjunction ? b.and_of(live) : b.or_of(live)};
        break;
      }
    }
  }
  const Slot& out = slots[c.output];
  return b.finish(out.folded ? b.constant(out.value) : out.id);
}

Circuit binarize(const Circuit& c) {
  CircuitBuilder b(c.n, c.k, FaninMode::binary);
  std::vector<std::size_t> map(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& nd = c.nodes[i];
    switch (nd.op) {
      case NodeOp::x_leaf:
        map[i] = b.x_at(nd.index);
        break;
      case NodeOp::y_leaf:
        map[i] = b.y(nd.index);
        break;
      case NodeOp::const_zero:
        map[i] = b.constant(false);
        break;
      case NodeOp::const_one:
        map[i] = b.constant(true);
        break;
      case NodeOp::and_gate:
      case NodeOp::or_gate: {
        std::vector<std::size_t> args;
        args.reserve(nd.args.size());
        for (std::size_t a : nd.args) args.push_back(map[a]);
        map[i] = nd.op == NodeOp::and_gate ? b.and_of(args) : b.or_of(args);
        break;
      }
    }
  }
  return b.finish(map[c.output]);
}

namespace {

NormalFormEntry make_entry(const Circuit& c, const RectFamily& fam,
                           const std::vector<std::size_t>& j_set) {
  NormalFormEntry entry;
  entry.oracles = j_set;
  entry.circuit = substitute(c, j_set);
  if (j_set.empty()) {
    entry.pair = {SetExpr::all(), SetExpr::none()};
  } else if (j_set.size() == 1) {
    entry.pair = fam.rects[j_set[0]];
  } else {
    std::vector<SetExpr> us, vs;
    for (std::size_t j : j_set) {
      us.push_back(fam.rects[j].u_set);
      vs.push_back(fam.rects[j].v_set);
    }
    entry.pair = {SetExpr::intersection_of(std::move(us)), SetExpr::union_of(std::move(vs))};
  }
  return entry;
}

}  // namespace

NormalForm normal_form(const Circuit& c, const RectFamily& fam, std::size_t d,
                       const TestSuite& suite) {
  if (c.oracle_ceiling() > fam.rects.size())
    fail(ErrorKind::invalid_argument, "circuit references oracle ids outside the family");
  auto tables = FamilyTables::build(fam, suite);
  std::size_t dstar = max_overlap(tables, suite.u_members().size());
  if (dstar > d)
    fail(ErrorKind::invalid_argument, "family overlap " + std::to_string(dstar) +
                                          " exceeds the requested bound " + std::to_string(d));
  auto val = OracleValuation::extremal(tables, suite);
  auto rep = verify_separation(c, suite, val);
  if (!rep.pass)
    fail(ErrorKind::verify, "pair fails separation; the rewriting is only defined for "
                            "verified circuits");

  std::size_t e = fam.rects.size();
  std::size_t depth = std::min(d, e);
  BigInt total = 0;
  for (std::size_t t = 0; t <= depth; ++t) total += binomial(e, t);
  if (total > BigInt(1) << 20)
    fail(ErrorKind::scale, "too many oracle subsets to materialize");

  NormalForm nf;
  nf.d = d;
  nf.entries.push_back(make_entry(c, fam, {}));
  for (std::size_t t = 1; t <= depth; ++t) {
    std::vector<std::size_t> j_set(t);
    for (std::size_t i = 0; i < t; ++i) j_set[i] = i;
    for (;;) {
      nf.entries.push_back(make_entry(c, fam, j_set));
      std::size_t i = t;
      while (i > 0 && j_set[i - 1] == e - t + (i - 1)) --i;
      if (i == 0) break;
      ++j_set[i - 1];
      for (std::size_t j = i; j < t; ++j) j_set[j] = j_set[j - 1] + 1;
    }
  }

  auto check = [&](MemberRef ref) {
    bool lhs = eval_member(c, suite, ref, val);
    bool rhs = false;
    for (const auto& entry : nf.entries) {
      if (!pair_extremal_value(entry.pair, ref, suite)) continue;
      if (eval_x_only(entry.circuit, suite.graph_of(ref))) {
        rhs = true;
        break;
      }
    }
    if (lhs != rhs)
      fail(ErrorKind::internal,
           "oracle-subset rewriting disagrees with the circuit at " + suite.encoding_of(ref));
  };
  for (std::size_t i = 0; i < suite.u_members().size(); ++i) check({Side::u_side, i});
  for (std::size_t i = 0; i < suite.v_members().size(); ++i) check({Side::v_side, i});
  return nf;
}

}  // namespace clo
