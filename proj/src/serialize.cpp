#include "serialize.hpp"

#include "errors.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace clo {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(ErrorKind::schema, path + ": " + msg);
}

const json& want_object(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  return j;
}

const json& want_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

const json& want_key(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing key \"") + key + "\"");
  return *it;
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        known = true;
        break;
      }
    if (!known) bad(path, "unknown key \"" + it.key() + "\"");
  }
}

std::uint64_t want_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return std::uint64_t(j.get<std::int64_t>());
  bad(path, "expected a nonnegative integer");
}

std::string want_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::size_t> want_vertex_set(const json& j, std::size_t n, const std::string& path) {
  want_array(j, path);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string ip = path + "[" + std::to_string(i) + "]";
    std::uint64_t v = want_uint(j[i], ip);
    if (v >= n) bad(ip, "vertex out of range");
    out.push_back(std::size_t(v));
  }
  std::vector<std::size_t> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    bad(path, "repeated vertex");
  return out;
}

std::pair<std::size_t, std::size_t> want_edge(const json& j, std::size_t n,
                                              const std::string& path) {
  want_array(j, path);
  if (j.size() != 2) bad(path, "expected [a, b]");
  std::uint64_t a = want_uint(j[0], path + "[0]");
  std::uint64_t b = want_uint(j[1], path + "[1]");
  if (a >= n || b >= n) bad(path, "endpoint out of range");
  if (a == b) bad(path, "endpoints must differ");
  if (a > b) std::swap(a, b);
  return {std::size_t(a), std::size_t(b)};
}

SetExpr parse_expr(const json& j, Side side, std::size_t n, std::size_t k,
                   const std::string& path) {
  want_object(j, path);
  std::string kind = want_string(want_key(j, "kind", path), path + ".kind");
  auto need_side = [&](Side want) {
    if (side != want)
      bad(path, "\"" + kind + "\" belongs on the " +
                    (want == Side::u_side ? "clique" : "partition") + " side");
  };

  if (kind == "all") {
    only_keys(j, path, {"kind"});
    return SetExpr::all();
  }
  if (kind == "none") {
    only_keys(j, path, {"kind"});
    return SetExpr::none();
  }
  if (kind == "explicit") {
    only_keys(j, path, {"kind", "members"});
    const json& jm = want_array(want_key(j, "members", path), path + ".members");
    std::vector<std::string> members;
    for (std::size_t i = 0; i < jm.size(); ++i) {
      std::string mp = path + ".members[" + std::to_string(i) + "]";
      std::string s = want_string(jm[i], mp);
      if (side == Side::u_side) {
        std::vector<std::size_t> verts;
        try {
          verts = parse_clique(s);
        } catch (const Error& err) {
          bad(mp, err.what());
        }
        if (verts.size() != k) bad(mp, "expected " + std::to_string(k) + " vertices");
        if (verts.back() >= n) bad(mp, "vertex out of range");
      } else {
        std::vector<std::vector<std::size_t>> parts;
        try {
          parts = parse_partition(s);
        } catch (const Error& err) {
          bad(mp, err.what());
        }
        Partition part;
        try {
          part = make_partition(n, std::move(parts));
        } catch (const Error& err) {
          bad(mp, err.what());
        }
        if (part.zeta() < 2 || part.zeta() + 1 > k)
          bad(mp, "partition must have between 2 and " + std::to_string(k - 1) + " parts");
        if (part.encoding != s)
          bad(mp, "not in canonical form, expected \"" + part.encoding + "\"");
      }
      members.push_back(std::move(s));
    }
    return SetExpr::explicit_set(std::move(members));
  }
  if (kind == "smallest_pair" || kind == "split_pair") {
    only_keys(j, path, {"kind", "i", "j"});
    std::uint64_t a = want_uint(want_key(j, "i", path), path + ".i");
    std::uint64_t b = want_uint(want_key(j, "j", path), path + ".j");
    if (a >= n || b >= n) bad(path, "vertex out of range");
    if (a >= b) bad(path, "need i < j");
    if (kind == "smallest_pair") {
      need_side(Side::u_side);
      return SetExpr::smallest_pair(std::size_t(a), std::size_t(b));
    }
    need_side(Side::v_side);
    return SetExpr::split_pair(std::size_t(a), std::size_t(b));
  }
  if (kind == "lex_first" || kind == "contains_clique") {
    only_keys(j, path, {"kind", "set"});
    std::vector<std::size_t> verts = want_vertex_set(want_key(j, "set", path), n, path + ".set");
    if (kind == "lex_first") {
      need_side(Side::u_side);
      return SetExpr::lex_first(std::move(verts));
    }
    need_side(Side::v_side);
    return SetExpr::contains_clique(std::move(verts));
  }
  if (kind == "not_edge_u" || kind == "not_edge_v") {
    only_keys(j, path, {"kind", "edge"});
    auto [a, b] = want_edge(want_key(j, "edge", path), n, path + ".edge");
    if (kind == "not_edge_u") {
      need_side(Side::u_side);
      return SetExpr::not_edge_u(a, b);
    }
    need_side(Side::v_side);
    return SetExpr::not_edge_v(a, b);
  }
  if (kind == "union" || kind == "intersection") {
    only_keys(j, path, {"kind", "args"});
    const json& ja = want_array(want_key(j, "args", path), path + ".args");
    std::vector<SetExpr> args;
    for (std::size_t i = 0; i < ja.size(); ++i)
      args.push_back(parse_expr(ja[i], side, n, k, path + ".args[" + std::to_string(i) + "]"));
    if (kind == "union") return SetExpr::union_of(std::move(args));
    return SetExpr::intersection_of(std::move(args));
  }
  if (kind == "complement") {
    only_keys(j, path, {"kind", "arg"});
    return SetExpr::complement_of(parse_expr(want_key(j, "arg", path), side, n, k, path + ".arg"));
  }
  bad(path + ".kind", "unknown set kind \"" + kind + "\"");
}

std::vector<RectPair> rects_from_json(const json& arr, std::size_t n, std::size_t k,
                                      const std::string& path) {
  std::vector<RectPair> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string rp = path + "[" + std::to_string(i) + "]";
    const json& jr = arr[i];
    want_object(jr, rp);
    only_keys(jr, rp, {"U", "V"});
    RectPair pair;
    pair.u_set = parse_expr(want_key(jr, "U", rp), Side::u_side, n, k, rp + ".U");
    pair.v_set = parse_expr(want_key(jr, "V", rp), Side::v_side, n, k, rp + ".V");
    out.push_back(std::move(pair));
  }
  return out;
}

void check_nk(std::uint64_t n, std::uint64_t k, const std::string& path) {
  if (n < 2 || k < 2 || k > n) bad(path, "need 2 <= k <= n");
  if (n > 1000000) bad(path + ".n", "n too large");
}

}  // namespace

json set_expr_to_json(const SetExpr& e) {
  switch (e.kind) {
    case SetExprKind::all:
      return json{{"kind", "all"}};
    case SetExprKind::none:
      return json{{"kind", "none"}};
    case SetExprKind::explicit_members:
      return json{{"kind", "explicit"}, {"members", e.members}};
    case SetExprKind::smallest_pair:
      return json{{"kind", "smallest_pair"}, {"i", e.a}, {"j", e.b}};
    case SetExprKind::split_pair:
      return json{{"kind", "split_pair"}, {"i", e.a}, {"j", e.b}};
    case SetExprKind::lex_first:
      return json{{"kind", "lex_first"}, {"set", e.verts}};
    case SetExprKind::contains_clique:
      return json{{"kind", "contains_clique"}, {"set", e.verts}};
    case SetExprKind::not_edge_u:
      return json{{"kind", "not_edge_u"}, {"edge", json::array({e.a, e.b})}};
    case SetExprKind::not_edge_v:
      return json{{"kind", "not_edge_v"}, {"edge", json::array({e.a, e.b})}};
    case SetExprKind::union_:
    case SetExprKind::intersection_: {
      json args = json::array();
      for (const SetExpr& s : e.args) args.push_back(set_expr_to_json(s));
      return json{{"kind", e.kind == SetExprKind::union_ ? "union" : "intersection"},
                  {"args", std::move(args)}};
    }
    case SetExprKind::complement_:
      return json{{"kind", "complement"}, {"arg", set_expr_to_json(e.args.at(0))}};
  }
  fail(ErrorKind::internal, "unhandled set expression kind");
}

SetExpr set_expr_from_json(const json& j, Side side, std::size_t n, std::size_t k,
                           const std::string& path) {
  return parse_expr(j, side, n, k, path);
}

json family_to_json(const RectFamily& fam) {
  json rects = json::array();
  for (const RectPair& r : fam.rects)
    rects.push_back(json{{"U", set_expr_to_json(r.u_set)}, {"V", set_expr_to_json(r.v_set)}});
  return json{{"n", fam.n}, {"k", fam.k}, {"rects", std::move(rects)}};
}

RectFamily family_from_json(const json& j, const std::string& path) {
  want_object(j, path);
  only_keys(j, path, {"n", "k", "rects"});
  std::uint64_t n = want_uint(want_key(j, "n", path), path + ".n");
  std::uint64_t k = want_uint(want_key(j, "k", path), path + ".k");
  check_nk(n, k, path);
  RectFamily fam;
  fam.n = std::size_t(n);
  fam.k = std::size_t(k);
  fam.rects =
      rects_from_json(want_array(want_key(j, "rects", path), path + ".rects"), fam.n, fam.k,
                      path + ".rects");
  return fam;
}

json bundle_to_json(const Bundle& b) {
  const Circuit& c = b.circuit;
  json nodes = json::array();
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& nd = c.nodes[i];
    json jn{{"id", i}};
    switch (nd.op) {
      case NodeOp::x_leaf: {
        auto ends = edge_endpoints(nd.index);
        jn["op"] = "x";
        jn["edge"] = json::array({ends.first, ends.second});
        break;
      }
      case NodeOp::y_leaf:
        jn["op"] = "y";
        jn["oracle"] = nd.index;
        break;
      case NodeOp::const_zero:
        jn["op"] = "const";
        jn["value"] = 0;
        break;
      case NodeOp::const_one:
        jn["op"] = "const";
        jn["value"] = 1;
        break;
      case NodeOp::and_gate:
        jn["op"] = "and";
        jn["args"] = nd.args;
        break;
      case NodeOp::or_gate:
        jn["op"] = "or";
        jn["args"] = nd.args;
        break;
    }
    nodes.push_back(std::move(jn));
  }
  json rects = json::array();
  for (const RectPair& r : b.family.rects)
    rects.push_back(json{{"U", set_expr_to_json(r.u_set)}, {"V", set_expr_to_json(r.v_set)}});
  return json{{"n", c.n},
              {"k", c.k},
              {"fanin", c.fanin_mode == FaninMode::binary ? "binary" : "unbounded"},
              {"nodes", std::move(nodes)},
              {"output", c.output},
              {"rects", std::move(rects)}};
}

Bundle bundle_from_json(const json& j, const std::optional<json>& family,
                        const std::string& path) {
  want_object(j, path);
  only_keys(j, path, {"n", "k", "fanin", "nodes", "output", "rects"});
  std::uint64_t n = want_uint(want_key(j, "n", path), path + ".n");
  std::uint64_t k = want_uint(want_key(j, "k", path), path + ".k");
  check_nk(n, k, path);

  std::string fanin = want_string(want_key(j, "fanin", path), path + ".fanin");
  FaninMode mode = FaninMode::binary;
  if (fanin == "unbounded")
    mode = FaninMode::unbounded;
  else if (fanin != "binary")
    bad(path + ".fanin", "expected \"binary\" or \"unbounded\"");

  const json& jnodes = want_array(want_key(j, "nodes", path), path + ".nodes");
  std::vector<CircuitNode> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    std::string np = path + ".nodes[" + std::to_string(i) + "]";
    const json& jn = jnodes[i];
    want_object(jn, np);
    std::uint64_t id = want_uint(want_key(jn, "id", np), np + ".id");
    if (id != i) bad(np + ".id", "must equal the node's position " + std::to_string(i));
    std::string op = want_string(want_key(jn, "op", np), np + ".op");
    CircuitNode nd;
    if (op == "x") {
      only_keys(jn, np, {"id", "op", "edge"});
      auto [a, b] = want_edge(want_key(jn, "edge", np), n, np + ".edge");
      nd.op = NodeOp::x_leaf;
      nd.index = edge_index(a, b);
    } else if (op == "y") {
      only_keys(jn, np, {"id", "op", "oracle"});
      nd.op = NodeOp::y_leaf;
      nd.index = std::size_t(want_uint(want_key(jn, "oracle", np), np + ".oracle"));
    } else if (op == "const") {
      only_keys(jn, np, {"id", "op", "value"});
      std::uint64_t v = want_uint(want_key(jn, "value", np), np + ".value");
      if (v > 1) bad(np + ".value", "expected 0 or 1");
      nd.op = v ? NodeOp::const_one : NodeOp::const_zero;
    } else if (op == "and" || op == "or") {
      only_keys(jn, np, {"id", "op", "args"});
      const json& ja = want_array(want_key(jn, "args", np), np + ".args");
      for (std::size_t t = 0; t < ja.size(); ++t) {
        std::uint64_t a = want_uint(ja[t], np + ".args[" + std::to_string(t) + "]");
        if (a >= jnodes.size())
          bad(np + ".args[" + std::to_string(t) + "]", "no node with that id");
        nd.args.push_back(std::size_t(a));
      }
      nd.op = op == "and" ? NodeOp::and_gate : NodeOp::or_gate;
    } else {
      bad(np + ".op", "unknown op \"" + op + "\"");
    }
    nodes.push_back(std::move(nd));
  }

  std::uint64_t output = want_uint(want_key(j, "output", path), path + ".output");
  if (output >= nodes.size()) bad(path + ".output", "no node with that id");

  Bundle out;
  try {
    out.circuit =
        make_circuit(std::size_t(n), std::size_t(k), mode, std::move(nodes), std::size_t(output));
  } catch (const Error& err) {
    bad(path, err.what());
  }

  bool embedded = j.contains("rects");
  if (embedded && family)
    fail(ErrorKind::invalid_argument,
         "the bundle embeds its rectangles; drop the separate rectangle file");
  RectFamily fam;
  fam.n = std::size_t(n);
  fam.k = std::size_t(k);
  if (embedded) {
    fam.rects = rects_from_json(want_array(j["rects"], path + ".rects"), fam.n, fam.k,
                                path + ".rects");
  } else if (family) {
    fam = family_from_json(*family, "rects:$");
    if (fam.n != n || fam.k != k)
      fail(ErrorKind::schema, "rects:$: family (n, k) does not match the circuit");
  }
  if (out.circuit.oracle_ceiling() > fam.rects.size())
    bad(path, "circuit references oracle " + std::to_string(out.circuit.oracle_ceiling() - 1) +
                  " but only " + std::to_string(fam.rects.size()) + " rectangles are given");
  out.family = std::move(fam);
  return out;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    fail(ErrorKind::schema, what + ": " + err.what());
  }
}

Bundle parse_bundle_text(const std::string& text,
                         const std::optional<std::string>& family_text) {
  json j = parse_json_text(text, "bundle");
  std::optional<json> fj;
  if (family_text) fj = parse_json_text(*family_text, "rectangle file");
  return bundle_from_json(j, fj, "$");
}

json approximator_to_json(const Approximator& a) {
  json sets = json::array();
  for (const Indicator& ind : a.indicators()) sets.push_back(ind.verts);
  return json{{"ell", a.ell()}, {"indicators", std::move(sets)}};
}

json rational_to_json(const Rational& r) { return json(fraction_string(r)); }

json bigint_to_json(const BigInt& v) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

std::string emit_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace clo
