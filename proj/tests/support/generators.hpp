#pragma once

#include "constructions.hpp"

#include <random>

namespace clo::testing {

// Rectangles with uniformly random explicit member sets.
RectFamily random_explicit_family(const TestSuite& suite, std::size_t count,
                                  std::mt19937_64& rng);

// Correct-by-construction oracle circuit: for each oracle an (edge AND
// oracle) term whose rectangle is exactly the edge's cliques and splitting
// partitions, occasional redundant clique-level terms reusing an oracle, and
// indicator patches covering the cliques no term reaches.  Verification
// passes under the pessimal valuation for every draw.
Bundle random_correct_clo(const TestSuite& suite, std::size_t max_oracles,
                          std::mt19937_64& rng);

// Monotone fan-in-2 DAG over random edge leaves (plus rare constants).
Circuit random_edge_circuit(std::size_t n, std::size_t k, std::size_t max_size,
                            std::mt19937_64& rng);

}  // namespace clo::testing
