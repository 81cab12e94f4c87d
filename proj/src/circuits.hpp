#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rectangles.hpp"

namespace clo {

enum class NodeOp { x_leaf, y_leaf, const_zero, const_one, and_gate, or_gate };
enum class FaninMode { binary, unbounded };

struct CircuitNode {
  NodeOp op = NodeOp::const_zero;
  std::size_t index = 0;          // edge index for x_leaf, oracle id for y_leaf
  std::vector<std::size_t> args;  // gate inputs
};

// Monotone DAG over edge variables and oracle leaves. Build through
// make_circuit or CircuitBuilder; nodes are stored so that every argument
// precedes its gate.
struct Circuit {
  std::size_t n = 0, k = 0;
  FaninMode fanin_mode = FaninMode::binary;
  std::vector<CircuitNode> nodes;
  std::size_t output = 0;

  // Reachable gate count plus each distinct reachable leaf once.
  std::size_t size() const;
  bool oracle_free() const;
  // One past the largest oracle id anywhere in the node list; 0 if none.
  std::size_t oracle_ceiling() const;
  std::vector<char> reachable() const;
};

// Validates ranges and arities, topologically orders the nodes (stable), and
// rejects cycles and dangling references.
Circuit make_circuit(std::size_t n, std::size_t k, FaninMode mode, std::vector<CircuitNode> nodes,
                     std::size_t output);

class CircuitBuilder {
public:
  CircuitBuilder(std::size_t n, std::size_t k, FaninMode mode = FaninMode::binary)
      : n_(n), k_(k), mode_(mode) {}

  std::size_t x(std::size_t u, std::size_t v) { return x_at(edge_index(u, v)); }
  std::size_t x_at(std::size_t edge);
  std::size_t y(std::size_t oracle);
  std::size_t constant(bool value);
  std::size_t gate(NodeOp op, std::vector<std::size_t> args);
  // Fold helpers: empty input gives the identity constant, one input passes
  // through, more are combined per the fan-in mode.
  std::size_t and_of(const std::vector<std::size_t>& args);
  std::size_t or_of(const std::vector<std::size_t>& args);

  Circuit finish(std::size_t output);

private:
  std::size_t fold(NodeOp op, bool identity, const std::vector<std::size_t>& args);
  std::size_t n_, k_;
  FaninMode mode_;
  std::vector<CircuitNode> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> x_ids_, y_ids_;  // key -> node id
  std::optional<std::size_t> const_ids_[2];
};

template <typename XF, typename YF>
bool eval_circuit(const Circuit& c, XF&& x_of, YF&& y_of) {
  std::vector<char> val(c.nodes.size(), 0);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& nd = c.nodes[i];
    switch (nd.op) {
      case NodeOp::x_leaf:
        val[i] = x_of(nd.index) ? 1 : 0;
        break;
      case NodeOp::y_leaf:
        val[i] = y_of(nd.index) ? 1 : 0;
        break;
      case NodeOp::const_zero:
        val[i] = 0;
        break;
      case NodeOp::const_one:
        val[i] = 1;
        break;
      case NodeOp::and_gate: {
        char v = 1;
        for (std::size_t a : nd.args) v = char(v & val[a]);
        val[i] = v;
        break;
      }
      case NodeOp::or_gate: {
        char v = 0;
        for (std::size_t a : nd.args) v = char(v | val[a]);
        val[i] = v;
        break;
      }
    }
  }
  return val[c.output] != 0;
}

template <typename YF>
bool eval_on_graph(const Circuit& c, const Graph& g, YF&& y_of) {
  return eval_circuit(c, [&](std::size_t e) { return g.edge_at(e); }, y_of);
}

// Evaluation of an oracle-free circuit on a graph.
bool eval_x_only(const Circuit& c, const Graph& g);

// Per-oracle boolean functions over the suite members. Every represented
// function separates its pair: 1 on all of U_i, 0 on all of V_i.
class OracleValuation {
public:
  // The pessimal sequence: oracle i is 1 exactly on U_i and off V_i.
  static OracleValuation extremal(const FamilyTables& tables, const TestSuite& suite);
  static OracleValuation extremal(const RectFamily& fam, const TestSuite& suite);
  // Separating valuation with hash-determined free entries.
  static OracleValuation seeded(const FamilyTables& tables, const TestSuite& suite,
                                std::uint64_t seed);
  static OracleValuation seeded(const RectFamily& fam, const TestSuite& suite, std::uint64_t seed);
  static OracleValuation from_bits(std::vector<DynBitset> u_bits, std::vector<DynBitset> v_bits);

  std::size_t oracle_count() const { return u_bits_.size(); }
  bool value(std::size_t oracle, MemberRef ref) const;
  bool separates(const FamilyTables& tables) const;

private:
  std::vector<DynBitset> u_bits_, v_bits_;
};

bool eval_member(const Circuit& c, const TestSuite& suite, MemberRef ref,
                 const OracleValuation& val);

struct SeparationReport {
  bool pass = false;
  std::size_t u_total = 0, v_total = 0;
  std::size_t u_accepted = 0, v_rejected = 0;
  std::optional<MemberRef> witness;  // first member with the wrong output
};

SeparationReport verify_separation(const Circuit& c, const TestSuite& suite,
                                   const OracleValuation& val);
// Under the pessimal valuation; a pass certifies every separating valuation.
SeparationReport verify_separation(const Circuit& c, const RectFamily& fam,
                                   const TestSuite& suite);

// Oracle-free circuit with y_j := 1 for j in ones and 0 otherwise, fully
// constant-folded; never larger than the input.
Circuit substitute(const Circuit& c, const std::vector<std::size_t>& ones);

// Same function as c with every gate fan-in 2.
Circuit binarize(const Circuit& c);

struct NormalFormEntry {
  std::vector<std::size_t> oracles;  // J, ascending
  Circuit circuit;                   // substitution at J
  RectPair pair;                     // (intersection of U_j, union of V_j)
};

struct NormalForm {
  std::size_t d = 0;
  std::vector<NormalFormEntry> entries;  // all J with |J| <= d, by size then lex
};

// Rewrites a verified circuit-family pair as an OR over oracle subsets of
// size at most d; requires max_overlap <= d and a passing verification, and
// checks the pointwise equivalence before returning.
NormalForm normal_form(const Circuit& c, const RectFamily& fam, std::size_t d,
                       const TestSuite& suite);

}  // namespace clo
