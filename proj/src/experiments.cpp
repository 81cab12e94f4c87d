#include "experiments.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace clo {

namespace {

void collect_or_terms(const Circuit& c, std::size_t node, std::vector<std::size_t>& terms) {
  if (c.nodes[node].op == NodeOp::or_gate) {
    for (std::size_t a : c.nodes[node].args) collect_or_terms(c, a, terms);
  } else {
    terms.push_back(node);
  }
}

struct TermParts {
  std::set<std::size_t> edges;
  std::vector<std::size_t> oracles;
  bool constant_zero = false;
};

void collect_and_parts(const Circuit& c, std::size_t node, TermParts& parts) {
  const CircuitNode& nd = c.nodes[node];
  switch (nd.op) {
    case NodeOp::and_gate:
      for (std::size_t a : nd.args) collect_and_parts(c, a, parts);
      break;
    case NodeOp::x_leaf:
      parts.edges.insert(nd.index);
      break;
    case NodeOp::y_leaf:
      parts.oracles.push_back(nd.index);
      break;
    case NodeOp::const_one:
      break;
    case NodeOp::const_zero:
      parts.constant_zero = true;
      break;
    case NodeOp::or_gate:
      fail(ErrorKind::invalid_argument,
           "not a flat circuit: disjunction nested inside a conjunction");
  }
}

}  // namespace

std::vector<FlatClause> flatten_clauses(const Bundle& bundle) {
  const Circuit& c = bundle.circuit;
  if (c.oracle_ceiling() > bundle.family.rects.size())
    fail(ErrorKind::invalid_argument, "circuit references oracle ids outside the family");
  std::vector<std::size_t> terms;
  collect_or_terms(c, c.output, terms);
  std::vector<FlatClause> clauses;
  for (std::size_t term : terms) {
    TermParts parts;
    collect_and_parts(c, term, parts);
    if (parts.constant_zero) continue;
    if (parts.oracles.size() > 1)
      fail(ErrorKind::invalid_argument, "not a flat circuit: a term holds several oracles");
    FlatClause clause;
    std::set<std::size_t> touched;
    for (std::size_t e : parts.edges) {
      auto [u, v] = edge_endpoints(e);
      touched.insert(u);
      touched.insert(v);
    }
    clause.verts.assign(touched.begin(), touched.end());
    std::size_t t = clause.verts.size();
    if (parts.edges.size() != t * (t - 1) / 2)
      fail(ErrorKind::invalid_argument,
           "not a flat circuit: a term's edges do not close a clique");
    if (parts.oracles.empty())
      clause.rect = {SetExpr::all(), SetExpr::none()};
    else
      clause.rect = bundle.family.rects[parts.oracles[0]];
    clauses.push_back(std::move(clause));
  }
  return clauses;
}

namespace {

bool indicator_hits(const std::vector<std::size_t>& verts, const Graph& g) {
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!g.edge(verts[i], verts[j])) return false;
  return true;
}

}  // namespace

DichotomyReport dichotomy_measure(const std::vector<FlatClause>& clauses, const TestSuite& suite,
                                  const Rational& mu_threshold) {
  if (suite.k() < 5)
    fail(ErrorKind::invalid_argument, "the dichotomy measurement needs k >= 5");
  std::size_t root = 2;
  while ((root + 1) * (root + 1) <= suite.k()) ++root;
  for (const auto& clause : clauses)
    if (clause.verts.size() > root)
      fail(ErrorKind::invalid_argument, "a clause touches more vertices than sqrt(k) allows");

  RectFamily fam{suite.n(), suite.k(), {}};
  for (const auto& clause : clauses) fam.rects.push_back(clause.rect);

  auto value = [&](MemberRef ref) {
    const Graph& g = suite.graph_of(ref);
    for (const auto& clause : clauses)
      if (indicator_hits(clause.verts, g) && pair_extremal_value(clause.rect, ref, suite))
        return true;
    return false;
  };

  DichotomyReport rep;
  rep.clause_count = clauses.size();
  rep.threshold = mu_threshold;
  rep.locality = locality_exact(fam, suite);
  std::size_t u_missed = 0;
  for (std::size_t i = 0; i < suite.u_members().size(); ++i)
    if (!value({Side::u_side, i})) ++u_missed;
  BigInt v_hit = 0;
  for (std::size_t i = 0; i < suite.v_members().size(); ++i)
    if (value({Side::v_side, i})) v_hit += suite.dv_weight_at(i);
  rep.rejected_u_measure = make_rational(u_missed, binomial(suite.n(), suite.k()));
  rep.accepted_v_measure = make_rational(v_hit, suite.dv_weight_total());
  rep.hypothesis_holds = rep.locality <= rep.threshold;
  rep.dichotomy_holds = std::max(rep.accepted_v_measure, rep.rejected_u_measure) >=
                        Rational(1) / 10;
  rep.flagged_contradiction = rep.hypothesis_holds && !rep.dichotomy_holds;
  return rep;
}

std::vector<PhaseRow> phase_report(std::size_t n, const Rational& eps) {
  if (n < 4) fail(ErrorKind::invalid_argument, "the phase table needs n >= 4");
  auto suite = TestSuite::build(n, 3);
  Rational half(1, 2);
  auto row = [&](const char* name, const Bundle& bundle, const char* regime) {
    PhaseRow r;
    r.construction = name;
    r.n = n;
    r.k = 3;
    r.size = bundle.circuit.size();
    r.locality = locality_exact(bundle.family, suite);
    r.regime = regime;
    r.separates = verify_separation(bundle.circuit, bundle.family, suite).pass;
    return r;
  };
  std::vector<PhaseRow> rows;
  rows.push_back(row("single-oracle", single_oracle(n, 3), "mu=1"));
  rows.back().regime_ok = rows.back().locality == 1;
  rows.push_back(row("triangle", triangle_clo(n), "middle"));
  rows.back().regime_ok = rows.back().locality <= half + eps;
  rows.push_back(row("trivial-dnf", trivial_dnf(n, 3), "low"));
  rows.back().regime_ok = rows.back().locality <= half - eps;
  return rows;
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream os;
  os << "construction,n,k,size,locality,regime,separation\n";
  for (const auto& r : rows)
    os << r.construction << ',' << r.n << ',' << r.k << ',' << r.size << ','
       << fraction_string(r.locality) << ',' << r.regime << ','
       << (r.separates ? "pass" : "fail") << '\n';
  os << "# size lower bounds for the middle and low regimes not checked - out of scope\n";
  return os.str();
}

}  // namespace clo
