#pragma once

#include <optional>

#include "circuits.hpp"

namespace clo {

// Vertex set standing for the conjunction of all edges inside it; one or
// fewer vertices means the constant 1.
struct Indicator {
  std::vector<std::size_t> verts;  // sorted
  bool operator==(const Indicator&) const = default;
};

// Order by largest vertex, then lexicographically; the empty set first.
bool indicator_less(const Indicator& a, const Indicator& b);

// Disjunction of indicators, kept canonical: sorted, deduplicated, and
// collapsed to the single empty indicator whenever any member has at most
// one vertex. No indicators means the constant 0.
class Approximator {
public:
  explicit Approximator(std::size_t ell) : ell_(ell) {}
  static Approximator constant_one(std::size_t ell);
  static Approximator from_sets(std::size_t ell, std::vector<std::vector<std::size_t>> sets);

  std::size_t ell() const { return ell_; }
  const std::vector<Indicator>& indicators() const { return indicators_; }
  bool is_constant_zero() const { return indicators_.empty(); }
  bool is_constant_one() const {
    return indicators_.size() == 1 && indicators_[0].verts.empty();
  }
  bool accepts(const Graph& g) const;

private:
  std::size_t ell_;
  std::vector<Indicator> indicators_;
};

struct ApproxParams {
  std::size_t ell = 0;
  std::size_t p = 0;
  BigInt m;
};

// ell = floor(sqrt(k)), p = ceil(10 sqrt(k) log2 n), m = (p-1)^ell * ell!.
ApproxParams default_params(std::size_t n, std::size_t k);

struct Sunflower {
  std::vector<std::size_t> core;     // sorted
  std::vector<std::size_t> members;  // indices into the searched family
};

// Deterministic search: greedy disjoint subfamily in canonical order; if too
// small, recurse on the most frequent vertex's link. The returned members
// pairwise intersect in exactly the core.
std::optional<Sunflower> find_sunflower(const std::vector<Indicator>& family, std::size_t p);

struct ApproxTrace {
  std::size_t dropped = 0;                       // unions discarded for size
  std::size_t plucks = 0;                        // sunflowers collapsed
  std::vector<std::vector<std::size_t>> cores;   // cores in collapse order
};

// Collapses sunflowers until at most m indicators remain or none is found; a
// core with at most one vertex absorbs everything into the constant 1.
Approximator pluck(Approximator a, const ApproxParams& params, ApproxTrace* trace = nullptr);

// Disjunction: concatenate, dedupe, pluck. Never loses accepted graphs.
Approximator approx_or(const Approximator& a, const Approximator& b, const ApproxParams& params,
                       ApproxTrace* trace = nullptr);
// Conjunction: pairwise unions, discarding any above ell vertices, then
// dedupe and pluck.
Approximator approx_and(const Approximator& a, const Approximator& b, const ApproxParams& params,
                        ApproxTrace* trace = nullptr);

// Bottom-up approximation of an oracle-free fan-in-2 circuit.
Approximator approximate_circuit(const Circuit& c, const ApproxParams& params,
                                 ApproxTrace* trace = nullptr);

struct ErrorCounts {
  BigInt e_plus;   // cliques the circuit accepts but the approximator misses
  BigInt e_minus;  // colorings (weighted, trivial included) accepted only by
                   // the approximator
};

ErrorCounts count_errors(const Circuit& c, const Approximator& a, const TestSuite& suite);

// s * m^2 * C(n-ell-1, k-ell-1)
BigInt positive_error_bound(std::size_t s, const ApproxParams& params, std::size_t n,
                            std::size_t k);
// floor(s * m^2 * C(ell,2)^p * (k-1)^n / (k-1)^p)
BigInt negative_error_bound(std::size_t s, const ApproxParams& params, std::size_t n,
                            std::size_t k);

struct CloApproxEntry {
  std::vector<std::size_t> oracles;
  std::size_t circuit_size = 0;  // of the substituted, fan-in-2 circuit
  Approximator approx;
  ErrorCounts errors;
  BigInt bound_plus, bound_minus;
};

struct CloApproxReport {
  std::size_t d = 0;
  ApproxParams params;
  bool separation_pass = false;
  std::vector<CloApproxEntry> entries;
  Rational u_accepted_measure;      // of the assembled approximation
  Rational v_rejected_measure;
  std::size_t u_disagreements = 0;  // members where it differs from the circuit
  BigInt v_disagreement_weight;
  BigInt e_plus_total, e_minus_total;
  bool agrees_everywhere = false;
  bool union_bound_ok = false;
};

// Assembles the approximation of a circuit-family pair: OR over oracle
// subsets J (|J| <= d) of the approximated substitution gated by the
// subset's combined rectangle, compared pointwise against the circuit under
// the pessimal valuation.
CloApproxReport approximate_clo(const Circuit& c, const RectFamily& fam, std::size_t d,
                                const ApproxParams& params, const TestSuite& suite);

}  // namespace clo
