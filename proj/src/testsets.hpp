#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphs.hpp"

namespace clo {

enum class Side { u_side, v_side };

struct MemberRef {
  Side side;
  std::size_t index;
  bool operator==(const MemberRef&) const = default;
};

// All k-cliques on [n], one per k-subset, in lexicographic vertex order.
std::vector<CliqueGraph> enumerate_u(std::size_t n, std::size_t k);

// All complete multipartite graphs on [n] with between 2 and k-1 parts, as
// canonical partitions, in lexicographic order of their restricted growth
// strings.
std::vector<Partition> enumerate_v(std::size_t n, std::size_t k);

// Weight of a single partition with the given part count: the number of
// colorings with palette [k-1] inducing it.
BigInt dv_weight(std::size_t zeta, std::size_t k);

// Total weight over all nontrivial colorings: (k-1)^n - (k-1).
BigInt dv_weight_total(std::size_t n, std::size_t k);

Rational dv_mass(const Partition& p, std::size_t n, std::size_t k);

class TestSuite {
public:
  static TestSuite build(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const std::vector<CliqueGraph>& u_members() const { return u_; }
  const std::vector<Partition>& v_members() const { return v_; }

  Rational du_mass() const { return du_; }
  const BigInt& dv_weight_at(std::size_t i) const { return v_weights_[i]; }
  const BigInt& dv_weight_total() const { return v_weight_total_; }
  Rational dv_mass_at(std::size_t i) const;

  const Graph& graph_of(MemberRef ref) const;
  const std::string& encoding_of(MemberRef ref) const;
  // Desired circuit output on this member: true on cliques, false otherwise.
  bool target(MemberRef ref) const { return ref.side == Side::u_side; }

  std::optional<std::size_t> find_u(const std::string& encoding) const;
  std::optional<std::size_t> find_v(const std::string& encoding) const;

private:
  std::size_t n_ = 0, k_ = 0;
  std::vector<CliqueGraph> u_;
  std::vector<Partition> v_;
  std::vector<BigInt> v_weights_;
  BigInt v_weight_total_;
  Rational du_;
  std::unordered_map<std::string, std::size_t> u_lookup_, v_lookup_;
};

// First pair of distinct members whose graphs are subset-comparable, if any.
std::optional<std::pair<std::size_t, std::size_t>> check_antichain(
    const std::vector<Graph>& graphs);
std::optional<std::pair<MemberRef, MemberRef>> check_antichain(const TestSuite& suite);

}  // namespace clo
