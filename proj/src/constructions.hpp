#pragma once

#include "circuits.hpp"

namespace clo {

struct Bundle {
  Circuit circuit;
  RectFamily family;
};

// One oracle leaf paired with (All, All): size 1, locality 1.
Bundle single_oracle(std::size_t n, std::size_t k);

// OR over edges {i,j} of x_{ij} AND y_{ij}; the oracle for {i,j} accepts the
// triangles whose two smallest vertices are i,j and the partitions splitting
// i from j. k = 3.
Bundle triangle_clo(std::size_t n);

// Plain OR of all k-clique indicators; no oracles, locality 0.
Bundle trivial_dnf(std::size_t n, std::size_t k);

// The ell smallest elements of the set.
std::vector<std::size_t> lex_first(const std::vector<std::size_t>& verts, std::size_t ell);

// OR over ell-subsets D of (clique indicator of D) AND y_D; the oracle for D
// accepts cliques whose ell smallest vertices equal D and partitions keeping
// D rainbow. Oracle ids follow the lexicographic rank of D.
Bundle lex_clo(std::size_t n, std::size_t k, std::size_t ell);

// Closed form for the locality of lex_clo; equals locality_exact wherever
// enumeration is feasible.
Rational lex_clo_locality(std::size_t n, std::size_t k, std::size_t ell);

// Closed form 2^(n-1)/(2^n - 2) for the locality of triangle_clo.
Rational triangle_locality_closed_form(std::size_t n);

// Least ell in [2, k) whose lex_clo locality is at most eps.
std::size_t smallest_ell_for_locality(std::size_t n, std::size_t k, const Rational& eps);

// Rectangle whose pessimal oracle computes the negation of one edge variable:
// accepts cliques missing the edge, rejects partitions carrying it.
RectPair negation_oracle(std::size_t a, std::size_t b, std::size_t n, std::size_t k);

}  // namespace clo
