#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "testsets.hpp"

namespace clo {

enum class SetExprKind {
  all,
  none,
  explicit_members,
  smallest_pair,    // clique side: {i,j} are the two smallest vertices
  split_pair,       // partition side: i and j lie in different parts
  lex_first,        // clique side: the |D| smallest vertices equal D
  contains_clique,  // partition side: D hits pairwise-distinct parts
  not_edge_u,       // clique side: not both endpoints present
  not_edge_v,       // partition side: endpoints share a part
  union_,
  intersection_,
  complement_,
};

struct SetExpr {
  SetExprKind kind = SetExprKind::none;
  std::size_t a = 0, b = 0;            // endpoints for the pair kinds
  std::vector<std::size_t> verts;      // lex_first / contains_clique
  std::vector<std::string> members;    // explicit_members, sorted
  std::vector<SetExpr> args;

  static SetExpr all();
  static SetExpr none();
  static SetExpr explicit_set(std::vector<std::string> members);
  static SetExpr smallest_pair(std::size_t i, std::size_t j);
  static SetExpr split_pair(std::size_t i, std::size_t j);
  static SetExpr lex_first(std::vector<std::size_t> verts);
  static SetExpr contains_clique(std::vector<std::size_t> verts);
  static SetExpr not_edge_u(std::size_t i, std::size_t j);
  static SetExpr not_edge_v(std::size_t i, std::size_t j);
  static SetExpr union_of(std::vector<SetExpr> args);
  static SetExpr intersection_of(std::vector<SetExpr> args);
  static SetExpr complement_of(SetExpr arg);
};

// Side the expression commits to, if any; mixed sides raise invalid_argument.
std::optional<Side> required_side(const SetExpr& expr);

bool eval_on_clique(const SetExpr& expr, const CliqueGraph& member);
bool eval_on_partition(const SetExpr& expr, const Partition& member);

// Raw-component variants used by the samplers.
bool eval_u_expr(const SetExpr& expr, const std::vector<std::size_t>& verts,
                 const std::string& encoding);
bool eval_v_expr(const SetExpr& expr, const std::vector<std::size_t>& part_of,
                 const std::string& encoding);

struct RectPair {
  SetExpr u_set;
  SetExpr v_set;
};

struct RectFamily {
  std::size_t n = 0, k = 0;
  std::vector<RectPair> rects;
};

RectPair rect_or(const RectPair& p, const RectPair& q);
RectPair rect_and(const RectPair& p, const RectPair& q);

// Value of the pair's pessimal oracle on a member: true on the pair's
// accepted-side set and outside its rejected-side set.
bool pair_extremal_value(const RectPair& pair, MemberRef ref, const TestSuite& suite);

// Membership bitsets of every rectangle over the suite, U and V sides.
struct FamilyTables {
  std::vector<DynBitset> u_in;  // rect -> bitset over U indices
  std::vector<DynBitset> v_in;  // rect -> bitset over V indices
  static FamilyTables build(const RectFamily& fam, const TestSuite& suite);
};

Rational locality_exact(const RectFamily& fam, const TestSuite& suite);
Rational locality_exact(const FamilyTables& tables, const TestSuite& suite);

std::size_t max_overlap(const RectFamily& fam, const TestSuite& suite);
std::size_t max_overlap(const FamilyTables& tables, std::size_t u_count);

struct McLocality {
  double estimate = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double ci99_half_width = 0.0;
};

McLocality locality_mc(const RectFamily& fam, std::uint64_t samples, std::uint64_t seed,
                       unsigned workers);

}  // namespace clo
