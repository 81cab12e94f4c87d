#include "clo/clo.h"

#include "errors.hpp"
#include "experiments.hpp"
#include "serialize.hpp"
#include "version.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

struct clo_bundle {
  clo::Bundle value;
};

namespace {

using clo::json;

thread_local std::string g_last_error;

clo_status status_of(clo::ErrorKind kind) {
  switch (kind) {
    case clo::ErrorKind::invalid_argument:
      return CLO_E_INVALID;
    case clo::ErrorKind::schema:
      return CLO_E_SCHEMA;
    case clo::ErrorKind::scale:
      return CLO_E_SCALE;
    case clo::ErrorKind::verify:
      return CLO_E_VERIFY_FAIL;
    case clo::ErrorKind::internal:
      return CLO_E_INTERNAL;
  }
  return CLO_E_INTERNAL;
}

template <typename F>
clo_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const clo::Error& err) {
    g_last_error = err.what();
    return status_of(err.kind());
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return CLO_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CLO_E_INTERNAL;
  }
}

clo_status null_arg() {
  g_last_error = "null argument";
  return CLO_E_NULL;
}

clo_status write_text(const std::string& text, char** out) {
  char* s = static_cast<char*>(std::malloc(text.size() + 1));
  if (!s) {
    g_last_error = "out of memory";
    return CLO_E_INTERNAL;
  }
  std::memcpy(s, text.c_str(), text.size() + 1);
  *out = s;
  return CLO_OK;
}

clo_status write_report(const json& j, char** out) { return write_text(clo::emit_json(j), out); }

json base_report(const clo::Bundle& b) {
  return json{{"version", clo::version_string}, {"n", b.circuit.n}, {"k", b.circuit.k}};
}

json params_json(const clo::ApproxParams& params) {
  return json{{"ell", params.ell}, {"p", params.p}, {"m", clo::bigint_to_json(params.m)}};
}

clo::BigInt parse_m(const char* text) {
  std::string t(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    clo::fail(clo::ErrorKind::invalid_argument, "m must be a decimal integer");
  while (t.size() > 1 && t[0] == '0') t.erase(t.begin());  // BigInt reads 0... as octal
  clo::BigInt v(t);
  if (v < 1) clo::fail(clo::ErrorKind::invalid_argument, "m must be positive");
  return v;
}

clo::ApproxParams resolve_params(std::size_t n, std::size_t k, std::uint64_t ell, std::uint64_t p,
                                 const char* m) {
  clo::ApproxParams out = clo::default_params(n, k);
  if (ell) out.ell = std::size_t(ell);
  if (p) out.p = std::size_t(p);
  if (m)
    out.m = parse_m(m);
  else
    out.m = clo::integer_pow(clo::BigInt(out.p) - 1, out.ell) *
            clo::falling_factorial(out.ell, out.ell);
  return out;
}

json witness_json(const clo::SeparationReport& rep, const clo::TestSuite& suite) {
  if (!rep.witness) return nullptr;
  return json{{"side", rep.witness->side == clo::Side::u_side ? "U" : "V"},
              {"index", rep.witness->index},
              {"member", suite.encoding_of(*rep.witness)}};
}

}  // namespace

extern "C" {

const char* clo_version(void) { return clo::version_string; }

const char* clo_last_error(void) { return g_last_error.c_str(); }

void clo_string_free(char* s) { std::free(s); }

clo_status clo_bundle_parse(const char* bundle_json, const char* family_json, clo_bundle** out) {
  if (!bundle_json || !out) return null_arg();
  return guarded([&]() -> clo_status {
    std::optional<std::string> family;
    if (family_json) family = std::string(family_json);
    *out = new clo_bundle{clo::parse_bundle_text(bundle_json, family)};
    return CLO_OK;
  });
}

clo_status clo_bundle_construct(const char* name, uint64_t n, uint64_t k, uint64_t ell,
                                clo_bundle** out) {
  if (!name || !out) return null_arg();
  return guarded([&]() -> clo_status {
    std::string which(name);
    clo::Bundle b;
    if (which == "single") {
      b = clo::single_oracle(n, k);
    } else if (which == "triangle") {
      if (k && k != 3)
        clo::fail(clo::ErrorKind::invalid_argument, "the triangle construction has k = 3");
      b = clo::triangle_clo(n);
    } else if (which == "trivial-dnf") {
      b = clo::trivial_dnf(n, k);
    } else if (which == "lex") {
      if (!ell)
        clo::fail(clo::ErrorKind::invalid_argument, "the lex construction needs ell");
      b = clo::lex_clo(n, k, ell);
    } else {
      clo::fail(clo::ErrorKind::invalid_argument,
                "unknown construction \"" + which +
                    "\"; expected single, triangle, trivial-dnf or lex");
    }
    *out = new clo_bundle{std::move(b)};
    return CLO_OK;
  });
}

clo_status clo_lex_ell_for_locality(uint64_t n, uint64_t k, const char* eps, uint64_t* out_ell) {
  if (!eps || !out_ell) return null_arg();
  return guarded([&]() -> clo_status {
    *out_ell = clo::smallest_ell_for_locality(n, k, clo::parse_fraction(eps));
    return CLO_OK;
  });
}

void clo_bundle_free(clo_bundle* b) { delete b; }

clo_status clo_bundle_emit(const clo_bundle* b, char** out_json) {
  if (!b || !out_json) return null_arg();
  return guarded([&]() -> clo_status {
    return write_text(clo::emit_json(clo::bundle_to_json(b->value)), out_json);
  });
}

clo_status clo_verify(const clo_bundle* b, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Circuit& c = b->value.circuit;
    clo::TestSuite suite = clo::TestSuite::build(c.n, c.k);
    clo::SeparationReport rep = clo::verify_separation(c, b->value.family, suite);
    json j = base_report(b->value);
    j["pass"] = rep.pass;
    j["u_total"] = rep.u_total;
    j["v_total"] = rep.v_total;
    j["u_accepted"] = rep.u_accepted;
    j["v_rejected"] = rep.v_rejected;
    j["witness"] = witness_json(rep, suite);
    clo_status st = write_report(j, out_report);
    if (st != CLO_OK) return st;
    if (!rep.pass) {
      g_last_error = "separation fails at " + suite.encoding_of(*rep.witness);
      return CLO_E_VERIFY_FAIL;
    }
    return CLO_OK;
  });
}

clo_status clo_locality_exact(const clo_bundle* b, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Bundle& v = b->value;
    clo::TestSuite suite = clo::TestSuite::build(v.family.n, v.family.k);
    clo::Rational loc = clo::locality_exact(v.family, suite);
    json j = base_report(v);
    j["mode"] = "exact";
    j["rects"] = v.family.rects.size();
    j["locality"] = clo::rational_to_json(loc);
    j["locality_decimal"] = loc.convert_to<double>();
    return write_report(j, out_report);
  });
}

clo_status clo_locality_mc(const clo_bundle* b, uint64_t samples, uint64_t seed, uint32_t workers,
                           char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    if (samples == 0)
      clo::fail(clo::ErrorKind::invalid_argument, "samples must be positive");
    unsigned w = workers ? workers : 1;
    clo::McLocality mc = clo::locality_mc(b->value.family, samples, seed, w);
    json j = base_report(b->value);
    j["mode"] = "mc";
    j["rects"] = b->value.family.rects.size();
    j["estimate"] = mc.estimate;
    j["hits"] = mc.hits;
    j["samples"] = mc.samples;
    j["seed"] = mc.seed;
    j["workers"] = mc.workers;
    j["ci99_half_width"] = mc.ci99_half_width;
    return write_report(j, out_report);
  });
}

clo_status clo_max_overlap(const clo_bundle* b, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Bundle& v = b->value;
    clo::TestSuite suite = clo::TestSuite::build(v.family.n, v.family.k);
    json j = base_report(v);
    j["rects"] = v.family.rects.size();
    j["max_overlap"] = clo::max_overlap(v.family, suite);
    return write_report(j, out_report);
  });
}

clo_status clo_normal_form(const clo_bundle* b, uint64_t d, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Bundle& v = b->value;
    clo::TestSuite suite = clo::TestSuite::build(v.circuit.n, v.circuit.k);
    clo::NormalForm nf = clo::normal_form(v.circuit, v.family, d, suite);
    json entries = json::array();
    for (const clo::NormalFormEntry& e : nf.entries) {
      clo::Bundle eb{e.circuit, clo::RectFamily{v.circuit.n, v.circuit.k, {}}};
      entries.push_back(json{{"oracles", e.oracles},
                             {"pair",
                              json{{"U", clo::set_expr_to_json(e.pair.u_set)},
                                   {"V", clo::set_expr_to_json(e.pair.v_set)}}},
                             {"circuit", clo::bundle_to_json(eb)}});
    }
    json j = base_report(v);
    j["d"] = nf.d;
    j["entry_count"] = nf.entries.size();
    j["entries"] = std::move(entries);
    return write_report(j, out_report);
  });
}

clo_status clo_approximate(const clo_bundle* b, uint64_t d, uint64_t ell, uint64_t p,
                           const char* m, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Bundle& v = b->value;
    clo::TestSuite suite = clo::TestSuite::build(v.circuit.n, v.circuit.k);
    clo::ApproxParams params = resolve_params(v.circuit.n, v.circuit.k, ell, p, m);
    clo::CloApproxReport rep = clo::approximate_clo(v.circuit, v.family, d, params, suite);
    json entries = json::array();
    for (const clo::CloApproxEntry& e : rep.entries) {
      entries.push_back(json{{"oracles", e.oracles},
                             {"circuit_size", e.circuit_size},
                             {"approximator", clo::approximator_to_json(e.approx)},
                             {"e_plus", clo::bigint_to_json(e.errors.e_plus)},
                             {"e_minus", clo::bigint_to_json(e.errors.e_minus)},
                             {"bound_plus", clo::bigint_to_json(e.bound_plus)},
                             {"bound_minus", clo::bigint_to_json(e.bound_minus)}});
    }
    json j = base_report(v);
    j["d"] = rep.d;
    j["params"] = params_json(rep.params);
    j["separation_pass"] = rep.separation_pass;
    j["entries"] = std::move(entries);
    j["u_accepted_measure"] = clo::rational_to_json(rep.u_accepted_measure);
    j["v_rejected_measure"] = clo::rational_to_json(rep.v_rejected_measure);
    j["u_disagreements"] = rep.u_disagreements;
    j["v_disagreement_weight"] = clo::bigint_to_json(rep.v_disagreement_weight);
    j["e_plus_total"] = clo::bigint_to_json(rep.e_plus_total);
    j["e_minus_total"] = clo::bigint_to_json(rep.e_minus_total);
    j["agrees_everywhere"] = rep.agrees_everywhere;
    j["union_bound_ok"] = rep.union_bound_ok;
    return write_report(j, out_report);
  });
}

clo_status clo_count_errors(const clo_bundle* b, uint64_t ell, uint64_t p, const char* m,
                            char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Circuit& c = b->value.circuit;
    if (!c.oracle_free())
      clo::fail(clo::ErrorKind::invalid_argument,
                "error counting needs an oracle-free circuit; use approx instead");
    clo::TestSuite suite = clo::TestSuite::build(c.n, c.k);
    clo::ApproxParams params = resolve_params(c.n, c.k, ell, p, m);
    clo::Circuit cb = clo::binarize(c);
    clo::ApproxTrace trace;
    clo::Approximator approx = clo::approximate_circuit(cb, params, &trace);
    clo::ErrorCounts errs = clo::count_errors(cb, approx, suite);
    clo::BigInt bp = clo::positive_error_bound(cb.size(), params, c.n, c.k);
    clo::BigInt bm = clo::negative_error_bound(cb.size(), params, c.n, c.k);
    json j = base_report(b->value);
    j["params"] = params_json(params);
    j["circuit_size"] = cb.size();
    j["approximator"] = clo::approximator_to_json(approx);
    j["dropped_unions"] = trace.dropped;
    j["plucks"] = trace.plucks;
    j["e_plus"] = clo::bigint_to_json(errs.e_plus);
    j["e_minus"] = clo::bigint_to_json(errs.e_minus);
    j["bound_plus"] = clo::bigint_to_json(bp);
    j["bound_minus"] = clo::bigint_to_json(bm);
    j["within_bounds"] = errs.e_plus <= bp && errs.e_minus <= bm;
    return write_report(j, out_report);
  });
}

clo_status clo_dichotomy(const clo_bundle* b, const char* threshold, char** out_report) {
  if (!b || !out_report) return null_arg();
  return guarded([&]() -> clo_status {
    const clo::Bundle& v = b->value;
    std::vector<clo::FlatClause> clauses = clo::flatten_clauses(v);
    clo::TestSuite suite = clo::TestSuite::build(v.circuit.n, v.circuit.k);
    clo::Rational mu =
        threshold ? clo::parse_fraction(threshold) : clo::Rational(1) / 16;
    clo::DichotomyReport rep = clo::dichotomy_measure(clauses, suite, mu);
    json j = base_report(v);
    j["clause_count"] = rep.clause_count;
    j["accepted_v_measure"] = clo::rational_to_json(rep.accepted_v_measure);
    j["rejected_u_measure"] = clo::rational_to_json(rep.rejected_u_measure);
    j["locality"] = clo::rational_to_json(rep.locality);
    j["threshold"] = clo::rational_to_json(rep.threshold);
    j["hypothesis_holds"] = rep.hypothesis_holds;
    j["dichotomy_holds"] = rep.dichotomy_holds;
    j["flagged_contradiction"] = rep.flagged_contradiction;
    return write_report(j, out_report);
  });
}

clo_status clo_phase_report(uint64_t n, const char* eps, int as_csv, char** out_report) {
  if (!out_report) return null_arg();
  return guarded([&]() -> clo_status {
    clo::Rational margin = eps ? clo::parse_fraction(eps) : clo::Rational(1) / 10;
    std::vector<clo::PhaseRow> rows = clo::phase_report(n, margin);
    if (as_csv) return write_text(clo::phase_csv(rows), out_report);
    json arr = json::array();
    for (const clo::PhaseRow& r : rows) {
      arr.push_back(json{{"construction", r.construction},
                         {"n", r.n},
                         {"k", r.k},
                         {"size", r.size},
                         {"locality", clo::rational_to_json(r.locality)},
                         {"regime", r.regime},
                         {"regime_ok", r.regime_ok},
                         {"separates", r.separates}});
    }
    json j{{"version", clo::version_string},
           {"n", n},
           {"eps", clo::rational_to_json(margin)},
           {"rows", std::move(arr)}};
    return write_report(j, out_report);
  });
}

}  // extern "C"
