#include "constructions.hpp"

#include <algorithm>

namespace clo {

namespace {

void require_nk(std::size_t n, std::size_t k) {
  if (k < 3 || k >= n) fail(ErrorKind::invalid_argument, "construction needs 3 <= k < n");
}

}  // namespace

Bundle single_oracle(std::size_t n, std::size_t k) {
  require_nk(n, k);
  CircuitBuilder b(n, k);
  Bundle out;
  out.circuit = b.finish(b.y(0));
  out.family = {n, k, {{SetExpr::all(), SetExpr::all()}}};
  return out;
}

Bundle triangle_clo(std::size_t n) {
  if (n < 4) fail(ErrorKind::invalid_argument, "construction needs n >= 4");
  CircuitBuilder b(n, 3, FaninMode::unbounded);
  RectFamily fam{n, 3, {}};
  std::vector<std::size_t> terms;
  for (std::size_t e = 0; e < edge_slots(n); ++e) {
    auto [i, j] = edge_endpoints(e);
    terms.push_back(b.gate(NodeOp::and_gate, {b.x_at(e), b.y(e)}));
    fam.rects.push_back({SetExpr::smallest_pair(i, j), SetExpr::split_pair(i, j)});
  }
  Bundle out;
  out.circuit = b.finish(b.or_of(terms));
  out.family = std::move(fam);
  return out;
}

Bundle trivial_dnf(std::size_t n, std::size_t k) {
  require_nk(n, k);
  if (binomial(n, k) > 1000000)
    fail(ErrorKind::scale, "too many cliques to enumerate; use sampling instead");
  CircuitBuilder b(n, k, FaninMode::unbounded);
  std::vector<std::size_t> terms;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::size_t> edges;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t c = a + 1; c < k; ++c) edges.push_back(b.x(pick[a], pick[c]));
    terms.push_back(b.gate(NodeOp::and_gate, std::move(edges)));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  Bundle out;
  out.circuit = b.finish(b.or_of(terms));
  out.family = {n, k, {}};
  return out;
}

std::vector<std::size_t> lex_first(const std::vector<std::size_t>& verts, std::size_t ell) {
  if (ell > verts.size()) fail(ErrorKind::invalid_argument, "fewer vertices than requested");
  std::vector<std::size_t> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  sorted.resize(ell);
  return sorted;
}

Bundle lex_clo(std::size_t n, std::size_t k, std::size_t ell) {
  require_nk(n, k);
  if (ell < 2 || ell >= k) fail(ErrorKind::invalid_argument, "construction needs 2 <= ell < k");
  if (binomial(n, ell) > 1000000)
    fail(ErrorKind::scale, "too many vertex subsets to enumerate");
  CircuitBuilder b(n, k, FaninMode::unbounded);
  RectFamily fam{n, k, {}};
  std::vector<std::size_t> terms;
  std::vector<std::size_t> pick(ell);
  for (std::size_t i = 0; i < ell; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::size_t> args;
    for (std::size_t a = 0; a < ell; ++a)
      for (std::size_t c = a + 1; c < ell; ++c) args.push_back(b.x(pick[a], pick[c]));
    args.push_back(b.y(fam.rects.size()));
    terms.push_back(b.gate(NodeOp::and_gate, std::move(args)));
    fam.rects.push_back({SetExpr::lex_first(pick), SetExpr::contains_clique(pick)});
    std::size_t i = ell;
    while (i > 0 && pick[i - 1] == n - ell + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < ell; ++j) pick[j] = pick[j - 1] + 1;
  }
  Bundle out;
  out.circuit = b.finish(b.or_of(terms));
  out.family = std::move(fam);
  return out;
}

Rational lex_clo_locality(std::size_t n, std::size_t k, std::size_t ell) {
  require_nk(n, k);
  if (ell < 2 || ell >= k) fail(ErrorKind::invalid_argument, "needs 2 <= ell < k");
  // Chance that a fixed ell-set stays rainbow under a uniform nontrivial
  // (k-1)-coloring.
  BigInt base = k - 1;
  return make_rational(falling_factorial(k - 1, ell) * integer_pow(base, n - 1 - ell),
                       integer_pow(base, n - 1) - 1);
}

Rational triangle_locality_closed_form(std::size_t n) {
  if (n < 4) fail(ErrorKind::invalid_argument, "needs n >= 4");
  return make_rational(integer_pow(2, n - 1), integer_pow(2, n) - 2);
}

std::size_t smallest_ell_for_locality(std::size_t n, std::size_t k, const Rational& eps) {
  require_nk(n, k);
  for (std::size_t ell = 2; ell < k; ++ell)
    if (lex_clo_locality(n, k, ell) <= eps) return ell;
  fail(ErrorKind::invalid_argument, "no admissible ell reaches the requested locality");
}

RectPair negation_oracle(std::size_t a, std::size_t b, std::size_t n, std::size_t k) {
  if (k < 3 || k > n) fail(ErrorKind::invalid_argument, "needs 3 <= k <= n");
  if (a == b || a >= n || b >= n) fail(ErrorKind::invalid_argument, "edge endpoints out of range");
  return {SetExpr::not_edge_u(a, b), SetExpr::split_pair(a, b)};
}

}  // namespace clo
