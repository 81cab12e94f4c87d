#pragma once

#include <string>

#include "constructions.hpp"

namespace clo {

// One term of a flat depth-2 circuit: a clique indicator conjoined with the
// oracle of a single rectangle.
struct FlatClause {
  std::vector<std::size_t> verts;  // sorted; at most one vertex means constant 1
  RectPair rect;
};

// Decomposes an OR of (indicator AND oracle) terms; bare indicators get the
// rectangle (All, None), whose pessimal oracle is constant 1.
std::vector<FlatClause> flatten_clauses(const Bundle& bundle);

struct DichotomyReport {
  Rational accepted_v_measure;   // wrongly accepted on the partition side
  Rational rejected_u_measure;   // wrongly rejected on the clique side
  Rational locality;             // of the clause rectangles
  Rational threshold;
  bool hypothesis_holds = false;       // locality <= threshold
  bool dichotomy_holds = false;        // max of the two error measures >= 1/10
  bool flagged_contradiction = false;  // hypothesis without the dichotomy
  std::size_t clause_count = 0;
};

// Exact error measures of a flat circuit under the pessimal valuation. The
// expected dichotomy (low locality forces large error) is reported as data,
// never asserted: it is an asymptotic statement.
DichotomyReport dichotomy_measure(const std::vector<FlatClause>& clauses, const TestSuite& suite,
                                  const Rational& mu_threshold = Rational(1) / 16);

struct PhaseRow {
  std::string construction;
  std::size_t n = 0, k = 0;
  std::size_t size = 0;
  Rational locality;
  std::string regime;  // "mu=1", "middle", "low"
  bool regime_ok = false;
  bool separates = false;
};

// The three k=3 reference constructions with exact sizes and localities,
// labeled by locality regime at the given margin.
std::vector<PhaseRow> phase_report(std::size_t n, const Rational& eps);

std::string phase_csv(const std::vector<PhaseRow>& rows);

}  // namespace clo
