#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "approximation.hpp"
#include "constructions.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace clo;
using clo::testing::random_edge_circuit;
using clo::testing::thrown_kind;

TEST_CASE("indicator ordering and canonical form") {
  Indicator empty{{}}, a{{0, 1}}, b{{0, 2}}, c{{1, 2}}, d{{0, 1, 3}};
  CHECK(indicator_less(empty, a));
  CHECK(indicator_less(a, b));
  CHECK(indicator_less(b, c));
  CHECK(indicator_less(c, d));
  CHECK(!indicator_less(a, a));

  Approximator zero(3);
  CHECK(zero.is_constant_zero());
  CHECK(!zero.accepts(Graph(5)));

  Approximator one = Approximator::constant_one(3);
  CHECK(one.is_constant_one());
  CHECK(one.accepts(Graph(5)));

  Approximator dup = Approximator::from_sets(3, {{2, 0, 1}, {0, 1, 2}, {0, 3}});
  REQUIRE(dup.indicators().size() == 2);
  // canonical order puts the smaller top vertex first
  CHECK(dup.indicators()[0].verts == std::vector<std::size_t>{0, 1, 2});
  CHECK(dup.indicators()[1].verts == std::vector<std::size_t>{0, 3});

  // Any singleton or empty member collapses the whole disjunction.
  Approximator wide = Approximator::from_sets(3, {{0, 1}, {4}});
  CHECK(wide.is_constant_one());

  CHECK(thrown_kind([] { Approximator::from_sets(2, {{0, 1, 2}}); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("indicator acceptance") {
  Approximator a = Approximator::from_sets(3, {{0, 1, 2}, {1, 3}});
  Graph tri(5);
  tri.set_edge(0, 1);
  tri.set_edge(0, 2);
  tri.set_edge(1, 2);
  CHECK(a.accepts(tri));
  Graph partial(5);
  partial.set_edge(0, 1);
  partial.set_edge(0, 2);
  CHECK(!a.accepts(partial));
  partial.set_edge(1, 3);
  CHECK(a.accepts(partial));
}

TEST_CASE("default parameter shapes") {
  ApproxParams p63 = default_params(6, 3);
  CHECK(p63.ell == 1);
  CHECK(p63.p == 45);
  CHECK(p63.m == 44);

  ApproxParams p164 = default_params(16, 4);
  CHECK(p164.ell == 2);
  CHECK(p164.p == 80);
  CHECK(p164.m == 79 * 79 * 2);

  ApproxParams big = default_params(1024, 5);
  CHECK(big.ell == 2);
  CHECK(big.p == 224);
  CHECK(big.m == 223 * 223 * 2);
}

TEST_CASE("sunflower search") {
  auto fam = [](std::vector<std::vector<std::size_t>> sets) {
    std::vector<Indicator> out;
    for (auto& s : sets) {
      std::sort(s.begin(), s.end());
      out.push_back(Indicator{std::move(s)});
    }
    return out;
  };

  // Three pairwise disjoint sets make a core-free arrangement.
  auto disjoint = find_sunflower(fam({{0, 1}, {2, 3}, {4, 5}}), 3);
  REQUIRE(disjoint.has_value());
  CHECK(disjoint->core.empty());
  CHECK(disjoint->members.size() == 3);

  // Shared element forces recursion into its link.
  auto shared = find_sunflower(fam({{0, 1}, {0, 2}, {0, 3}}), 3);
  REQUIRE(shared.has_value());
  CHECK(shared->core == std::vector<std::size_t>{0});
  CHECK(shared->members.size() == 3);

  // Not enough petals anywhere.
  CHECK(!find_sunflower(fam({{0, 1}, {0, 2}}), 3).has_value());
  CHECK(!find_sunflower(fam({{0, 1}, {1, 2}, {0, 2}}), 3).has_value());

  // Petal structure: members meet exactly in the core.
  auto mixed = find_sunflower(fam({{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {8, 9}}), 3);
  REQUIRE(mixed.has_value());
  std::vector<std::vector<std::size_t>> sets = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {8, 9}};
  for (std::size_t i : mixed->members)
    for (std::size_t j : mixed->members) {
      if (i == j) continue;
      std::vector<std::size_t> meet;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::back_inserter(meet));
      CHECK(meet == mixed->core);
    }
}

TEST_CASE("pluck collapses sunflowers to their cores") {
  ApproxParams params{3, 3, 2};

  Approximator many = Approximator::from_sets(3, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  ApproxTrace trace;
  Approximator plucked = pluck(many, params, &trace);
  CHECK(trace.plucks == 1);
  REQUIRE(plucked.indicators().size() == 1);
  CHECK(plucked.indicators()[0].verts == std::vector<std::size_t>{0, 1});
  REQUIRE(trace.cores.size() == 1);
  CHECK(trace.cores[0] == std::vector<std::size_t>{0, 1});

  // A sunflower with a tiny core turns the whole thing into the constant 1.
  Approximator tiny = Approximator::from_sets(3, {{0, 1}, {0, 2}, {0, 3}, {5, 6}});
  Approximator one = pluck(tiny, params, nullptr);
  CHECK(one.is_constant_one());

  // Already small enough: untouched.
  Approximator small = Approximator::from_sets(3, {{0, 1}, {2, 3}});
  Approximator same = pluck(small, params, nullptr);
  CHECK(same.indicators() == small.indicators());

  // No sunflower available: stops above the target.
  Approximator stuck = Approximator::from_sets(3, {{0, 1}, {1, 2}, {0, 2}});
  ApproxParams strict{3, 3, 1};
  Approximator still = pluck(stuck, strict, nullptr);
  CHECK(still.indicators().size() == 3);
}

TEST_CASE("approximate gates") {
  ApproxParams params{2, 3, 50};
  Approximator left = Approximator::from_sets(2, {{0, 1}, {2, 3}});
  Approximator right = Approximator::from_sets(2, {{0, 1}, {4, 5}});

  Approximator both = approx_or(left, right, params, nullptr);
  CHECK(both.indicators().size() == 3);

  ApproxTrace trace;
  Approximator meet = approx_and(left, right, params, &trace);
  // {0,1}+{0,1} stays, {0,1}+{4,5} and {2,3}+... all exceed two vertices.
  CHECK(trace.dropped == 3);
  REQUIRE(meet.indicators().size() == 1);
  CHECK(meet.indicators()[0].verts == std::vector<std::size_t>{0, 1});

  Approximator zero(2);
  CHECK(approx_and(left, zero, params, nullptr).is_constant_zero());
  CHECK(approx_or(left, zero, params, nullptr).indicators() == left.indicators());
  Approximator one = Approximator::constant_one(2);
  CHECK(approx_and(left, one, params, nullptr).indicators() == left.indicators());
  CHECK(approx_or(left, one, params, nullptr).is_constant_one());
}

TEST_CASE("circuit approximation on the plain disjunction") {
  Bundle b = trivial_dnf(5, 3);
  Circuit bin = binarize(b.circuit);
  ApproxParams params{2, 2, 2};
  ApproxTrace trace;
  Approximator a = approximate_circuit(bin, params, &trace);
  auto s = TestSuite::build(5, 3);

  // Every triangle conjunction overflows the two-vertex cap, so the
  // approximation collapses to the constant 0 and misses every clique.
  CHECK(a.is_constant_zero());
  ErrorCounts errs = count_errors(bin, a, s);
  CHECK(errs.e_plus == 10);
  CHECK(errs.e_minus == 0);

  CHECK(positive_error_bound(bin.size(), params, 5, 3) == BigInt(bin.size()) * 4);
  CHECK(errs.e_plus <= positive_error_bound(bin.size(), params, 5, 3));
  CHECK(errs.e_minus <= negative_error_bound(bin.size(), params, 5, 3));

  CHECK(thrown_kind([&] { approximate_circuit(b.circuit, params, nullptr); }) ==
        ErrorKind::invalid_argument);

  CircuitBuilder yb(5, 3);
  Circuit with_oracle = yb.finish(yb.y(0));
  CHECK(thrown_kind([&] { approximate_circuit(with_oracle, params, nullptr); }) ==
        ErrorKind::invalid_argument);

  ApproxParams small_ell{1, 2, 2};
  CHECK(thrown_kind([&] { approximate_circuit(bin, small_ell, nullptr); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("error counts match direct enumeration") {
  auto s = TestSuite::build(5, 3);
  std::mt19937_64 rng(2024);
  ApproxParams params{2, 3, 4};
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = random_edge_circuit(5, 3, 30, rng);
    Approximator a = approximate_circuit(c, params, nullptr);

    BigInt plus = 0, minus = 0;
    for (std::size_t i = 0; i < s.u_members().size(); ++i) {
      const Graph& g = s.u_members()[i].graph;
      if (eval_x_only(c, g) && !a.accepts(g)) plus += 1;
    }
    for (std::size_t i = 0; i < s.v_members().size(); ++i) {
      const Graph& g = s.v_members()[i].graph;
      if (!eval_x_only(c, g) && a.accepts(g)) minus += s.dv_weight_at(i);
    }
    // Trivial colorings map to the empty graph.
    if (!eval_x_only(c, Graph(5)) && a.accepts(Graph(5))) minus += 2;

    ErrorCounts errs = count_errors(c, a, s);
    CHECK(errs.e_plus == plus);
    CHECK(errs.e_minus == minus);
  }
}

TEST_CASE("bound arithmetic") {
  ApproxParams params{2, 3, 7};
  CHECK(positive_error_bound(4, params, 8, 4) == BigInt(4) * 49 * binomial(5, 1));
  // Two-vertex budget leaves a single inner pair, so the p-th power is 1.
  CHECK(negative_error_bound(2, params, 8, 4) ==
        BigInt(2) * 49 * integer_pow(3, 8) / integer_pow(3, 3));
  ApproxParams p2{3, 2, 5};
  CHECK(negative_error_bound(1, p2, 6, 4) ==
        BigInt(1) * 25 * 9 * integer_pow(3, 6) / integer_pow(3, 2));
  CHECK(positive_error_bound(0, params, 8, 4) == 0);
  // Vertex budget at or above k: no room for a missed clique.
  ApproxParams wide{4, 3, 7};
  CHECK(positive_error_bound(9, wide, 8, 4) == 0);
}

TEST_CASE("assembled approximation of a verified pair") {
  auto s = TestSuite::build(6, 3);
  Bundle b = lex_clo(6, 3, 2);
  std::size_t d = max_overlap(b.family, s);
  CHECK(d == 1);

  ApproxParams exactish{2, 3, 1000};
  CloApproxReport rep = approximate_clo(b.circuit, b.family, d, exactish, s);
  CHECK(rep.separation_pass);
  CHECK(rep.d == 1);
  CHECK(rep.entries.size() == 1 + b.family.rects.size());
  CHECK(rep.agrees_everywhere);
  CHECK(rep.u_disagreements == 0);
  CHECK(rep.v_disagreement_weight == 0);
  CHECK(rep.union_bound_ok);
  CHECK(rep.u_accepted_measure == 1);
  CHECK(rep.v_rejected_measure == 1);

  // A vertex budget too small for the substituted conjunctions degrades the
  // entries, yet the error totals still cover every disagreement.
  auto s64 = TestSuite::build(6, 4);
  Bundle deep = lex_clo(6, 4, 3);
  ApproxParams rough{2, 2, 1};
  CloApproxReport worse = approximate_clo(deep.circuit, deep.family, 1, rough, s64);
  CHECK(worse.separation_pass);
  CHECK(!worse.agrees_everywhere);
  CHECK(worse.u_disagreements == 15);
  CHECK(worse.union_bound_ok);
  BigInt plus = 0, minus = 0;
  for (const auto& entry : worse.entries) {
    CHECK(entry.errors.e_plus <= entry.bound_plus);
    CHECK(entry.errors.e_minus <= entry.bound_minus);
    plus += entry.errors.e_plus;
    minus += entry.errors.e_minus;
  }
  CHECK(plus == worse.e_plus_total);
  CHECK(minus == worse.e_minus_total);
  CHECK(BigInt(worse.u_disagreements) <= worse.e_plus_total);
  CHECK(worse.v_disagreement_weight <= worse.e_minus_total);
  CHECK(worse.u_accepted_measure == 0);
  CHECK(worse.v_rejected_measure == 1);

  CHECK(thrown_kind([&] {
          approximate_clo(b.circuit, b.family, 0, exactish, s);
        }) == ErrorKind::invalid_argument);
}
