#pragma once

#include "constructions.hpp"
#include "approximation.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace clo {

using json = nlohmann::json;

// Set expressions.  "kind" selects the variant; the other keys depend on it:
//   all / none                  no extra keys
//   explicit                    "members": array of encoded cliques (U slot)
//                               or encoded partitions (V slot)
//   smallest_pair / split_pair  "i", "j" with i < j
//   lex_first / contains_clique "set": sorted vertex array
//   not_edge_u / not_edge_v     "edge": [a, b] with a < b
//   union / intersection        "args": array of set expressions
//   complement                  "arg": one set expression
json set_expr_to_json(const SetExpr& e);

// side says which slot the expression sits in; explicit members and leaf
// predicates are validated against it.  path feeds error messages.
SetExpr set_expr_from_json(const json& j, Side side, std::size_t n, std::size_t k,
                           const std::string& path);

// {"n": .., "k": .., "rects": [{"U": .., "V": ..}, ..]}
json family_to_json(const RectFamily& fam);
RectFamily family_from_json(const json& j, const std::string& path = "$");

// Circuit with its rectangle family bundled under "rects".  Node ids in the
// file are positions in the "nodes" array; each node carries its own "id"
// field so files stay readable after hand edits, and the ids must match the
// positions.
//   {"n", "k", "fanin": "binary"|"unbounded",
//    "nodes": [{"id", "op": "x", "edge": [a, b]} |
//              {"id", "op": "y", "oracle": i}    |
//              {"id", "op": "const", "value": 0 or 1} |
//              {"id", "op": "and"|"or", "args": [..]}],
//    "output": id, "rects": [..]}
json bundle_to_json(const Bundle& b);

// family: resolves an absent "rects" key (circuit stored separately from its
// rectangles).  A bundle with neither gets an empty family.
Bundle bundle_from_json(const json& j, const std::optional<json>& family,
                        const std::string& path = "$");

// Parses text, reporting malformed JSON as a schema error.
json parse_json_text(const std::string& text, const std::string& what);
Bundle parse_bundle_text(const std::string& text,
                         const std::optional<std::string>& family_text);

// {"ell": .., "indicators": [[..], ..]}
json approximator_to_json(const Approximator& a);

json rational_to_json(const Rational& r);   // "num/den" string
json bigint_to_json(const BigInt& v);       // number if it fits in int64

// dump(2) with a trailing newline; keys come out sorted.
std::string emit_json(const json& j);

}
