#include "doctest.h"

#include <cmath>
#include <random>

#include "rectangles.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace clo;
using clo::testing::oracle_locality;
using clo::testing::random_explicit_family;
using clo::testing::thrown_kind;

namespace {

std::size_t count_u(const SetExpr& e, const TestSuite& s) {
  std::size_t hits = 0;
  for (const auto& c : s.u_members()) hits += eval_on_clique(e, c);
  return hits;
}

std::size_t count_v(const SetExpr& e, const TestSuite& s) {
  std::size_t hits = 0;
  for (const auto& p : s.v_members()) hits += eval_on_partition(e, p);
  return hits;
}

}  // namespace

TEST_CASE("clique side predicates") {
  auto s = TestSuite::build(6, 3);

  SetExpr sp = SetExpr::smallest_pair(0, 1);
  CHECK(count_u(sp, s) == 4);
  for (const auto& c : s.u_members()) {
    bool want = c.vertices[0] == 0 && c.vertices[1] == 1;
    CHECK(eval_on_clique(sp, c) == want);
  }

  SetExpr lf = SetExpr::lex_first({0, 1});
  for (const auto& c : s.u_members())
    CHECK(eval_on_clique(lf, c) == eval_on_clique(sp, c));
  CHECK(count_u(SetExpr::lex_first({2}), s) == binomial(3, 2).convert_to<std::size_t>());

  SetExpr ne = SetExpr::not_edge_u(0, 1);
  CHECK(count_u(ne, s) == 16);
  for (const auto& c : s.u_members())
    CHECK(eval_on_clique(ne, c) != c.graph.edge(0, 1));

  CHECK(count_u(SetExpr::all(), s) == 20);
  CHECK(count_u(SetExpr::none(), s) == 0);
}

TEST_CASE("partition side predicates") {
  auto s = TestSuite::build(6, 4);

  SetExpr sp = SetExpr::split_pair(1, 4);
  for (const auto& p : s.v_members())
    CHECK(eval_on_partition(sp, p) == (p.part_of[1] != p.part_of[4]));

  SetExpr ne = SetExpr::not_edge_v(1, 4);
  for (const auto& p : s.v_members())
    CHECK(eval_on_partition(ne, p) == (p.part_of[1] == p.part_of[4]));
  CHECK(count_v(sp, s) + count_v(ne, s) == s.v_members().size());

  SetExpr cc = SetExpr::contains_clique({0, 2, 5});
  for (const auto& p : s.v_members()) {
    bool want = p.part_of[0] != p.part_of[2] && p.part_of[0] != p.part_of[5] &&
                p.part_of[2] != p.part_of[5];
    CHECK(eval_on_partition(cc, p) == want);
  }
}

TEST_CASE("explicit sets and boolean combinations") {
  auto s = TestSuite::build(5, 3);

  SetExpr ex = SetExpr::explicit_set({"0,1,2", "2,3,4"});
  CHECK(count_u(ex, s) == 2);
  CHECK(eval_on_clique(ex, s.u_members()[*s.find_u("0,1,2")]));
  CHECK(!eval_on_clique(ex, s.u_members()[*s.find_u("0,1,3")]));

  SetExpr a = SetExpr::smallest_pair(0, 1);
  SetExpr b = SetExpr::smallest_pair(0, 2);
  SetExpr u = SetExpr::union_of({a, b});
  SetExpr i = SetExpr::intersection_of({a, b});
  SetExpr c = SetExpr::complement_of(a);
  for (const auto& cl : s.u_members()) {
    bool va = eval_on_clique(a, cl);
    bool vb = eval_on_clique(b, cl);
    CHECK(eval_on_clique(u, cl) == (va || vb));
    CHECK(eval_on_clique(i, cl) == (va && vb));
    CHECK(eval_on_clique(c, cl) == !va);
  }
  CHECK(count_u(SetExpr::union_of({}), s) == 0);
  CHECK(count_u(SetExpr::intersection_of({}), s) == 10);
}

TEST_CASE("side inference") {
  CHECK(!required_side(SetExpr::all()).has_value());
  CHECK(!required_side(SetExpr::explicit_set({})).has_value());
  CHECK(required_side(SetExpr::smallest_pair(0, 1)) == Side::u_side);
  CHECK(required_side(SetExpr::not_edge_v(0, 1)) == Side::v_side);
  CHECK(required_side(SetExpr::complement_of(SetExpr::lex_first({0}))) == Side::u_side);
  CHECK(required_side(SetExpr::union_of({SetExpr::all(), SetExpr::split_pair(1, 2)})) ==
        Side::v_side);
  CHECK(thrown_kind([] {
          required_side(SetExpr::union_of(
              {SetExpr::smallest_pair(0, 1), SetExpr::split_pair(0, 1)}));
        }) == ErrorKind::invalid_argument);
}

TEST_CASE("rectangle algebra") {
  auto s = TestSuite::build(5, 3);
  RectPair p{SetExpr::smallest_pair(0, 1), SetExpr::split_pair(0, 1)};
  RectPair q{SetExpr::smallest_pair(0, 2), SetExpr::split_pair(2, 3)};
  RectPair dis = rect_or(p, q);
  RectPair con = rect_and(p, q);

  for (std::size_t i = 0; i < s.u_members().size(); ++i) {
    MemberRef ref{Side::u_side, i};
    bool vp = pair_extremal_value(p, ref, s);
    bool vq = pair_extremal_value(q, ref, s);
    CHECK(pair_extremal_value(dis, ref, s) == (vp || vq));
    CHECK(pair_extremal_value(con, ref, s) == (vp && vq));
  }
  // The rejected sides combine dually, so the identities hold there too.
  for (std::size_t i = 0; i < s.v_members().size(); ++i) {
    MemberRef ref{Side::v_side, i};
    bool vp = pair_extremal_value(p, ref, s);
    bool vq = pair_extremal_value(q, ref, s);
    CHECK(pair_extremal_value(dis, ref, s) == (vp || vq));
    CHECK(pair_extremal_value(con, ref, s) == (vp && vq));
  }
}

TEST_CASE("family tables match direct evaluation") {
  auto s = TestSuite::build(5, 3);
  std::mt19937_64 rng(404);
  RectFamily fam = random_explicit_family(s, 3, rng);
  auto tables = FamilyTables::build(fam, s);
  REQUIRE(tables.u_in.size() == 3);
  REQUIRE(tables.v_in.size() == 3);
  for (std::size_t r = 0; r < fam.rects.size(); ++r) {
    for (std::size_t i = 0; i < s.u_members().size(); ++i)
      CHECK(tables.u_in[r].test(i) == eval_on_clique(fam.rects[r].u_set, s.u_members()[i]));
    for (std::size_t i = 0; i < s.v_members().size(); ++i)
      CHECK(tables.v_in[r].test(i) ==
            eval_on_partition(fam.rects[r].v_set, s.v_members()[i]));
  }
}

TEST_CASE("exact locality agrees with the brute-force reference") {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{5, 3}, {6, 3}, {5, 4}}) {
    auto s = TestSuite::build(n, k);
    std::mt19937_64 rng(1000 * n + k);
    for (int trial = 0; trial < 4; ++trial) {
      RectFamily fam = random_explicit_family(s, 1 + trial % 3, rng);
      CHECK(locality_exact(fam, s) == oracle_locality(fam, n, k));
    }
  }
}

TEST_CASE("locality of degenerate families") {
  auto s = TestSuite::build(5, 3);
  RectFamily none{5, 3, {}};
  CHECK(locality_exact(none, s) == 0);
  RectFamily everything{5, 3, {RectPair{SetExpr::all(), SetExpr::all()}}};
  CHECK(locality_exact(everything, s) == 1);
}

TEST_CASE("overlap counts rectangles seen by one clique") {
  auto s = TestSuite::build(6, 3);
  RectFamily fam{6, 3, {}};
  CHECK(max_overlap(fam, s) == 0);

  fam.rects.push_back({SetExpr::smallest_pair(0, 1), SetExpr::all()});
  fam.rects.push_back({SetExpr::smallest_pair(0, 2), SetExpr::all()});
  CHECK(max_overlap(fam, s) == 1);

  fam.rects.push_back({SetExpr::lex_first({0}), SetExpr::none()});
  CHECK(max_overlap(fam, s) == 2);

  fam.rects.push_back({SetExpr::all(), SetExpr::none()});
  CHECK(max_overlap(fam, s) == 3);
}

TEST_CASE("sampled locality is deterministic and close to exact") {
  RectFamily fam{6, 3, {RectPair{SetExpr::smallest_pair(0, 1), SetExpr::split_pair(0, 1)}}};
  auto s = TestSuite::build(6, 3);
  Rational exact = locality_exact(fam, s);

  McLocality one = locality_mc(fam, 200000, 7, 1);
  McLocality again = locality_mc(fam, 200000, 7, 1);
  CHECK(one.hits == again.hits);
  CHECK(one.estimate == again.estimate);
  CHECK(one.samples == 200000);
  CHECK(one.workers == 1);

  McLocality wide = locality_mc(fam, 200000, 7, 3);
  McLocality wide2 = locality_mc(fam, 200000, 7, 3);
  CHECK(wide.hits == wide2.hits);

  double target = exact.convert_to<double>();
  CHECK(std::abs(one.estimate - target) < 0.02);
  CHECK(std::abs(wide.estimate - target) < 0.02);
  CHECK(one.ci99_half_width > 0.0);
  CHECK(one.ci99_half_width < 0.01);

  CHECK(thrown_kind([&] { locality_mc(fam, 0, 7, 1); }) == ErrorKind::invalid_argument);
}
