#include "fcone/serialize.hpp"

#include <map>
#include <set>

#include "fcone/error.hpp"

namespace fcone {

Json rational_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw DomainError("expected a rational \"p/q\", got " + j.dump());
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json subset_json(SubsetMask s) { return mask_members(s); }

SubsetMask subset_from_json(const Json& j, int n) {
  if (!j.is_array() || j.empty()) throw DomainError("a subset is a nonempty array of markings");
  SubsetMask m = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw DomainError("subset members must be integers");
    const auto i = e.get<std::int64_t>();
    if (i < 1 || i >= n) throw DomainError("subset member " + std::to_string(i) + " outside [n-1]");
    const SubsetMask bit = SubsetMask{1} << i;
    if (m & bit) throw DomainError("subset lists " + std::to_string(i) + " twice");
    m |= bit;
  }
  return m;
}

namespace {

int read_n(const Json& j, const char* key = "n") {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw DomainError(std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json divisor_json(const DivisorClass& d) {
  Json coeff = Json::array();
  for (const auto& s : sigma_elements(d.n()))
    if (d[s.mask()] != 0) coeff.push_back({{"subset", subset_json(s.mask())}, {"value", rational_json(d[s.mask()])}});
  return {{"n", d.n()}, {"coeff", coeff}};
}

DivisorClass divisor_from_json(const Json& j) {
  DivisorClass d(read_n(j));
  std::set<SubsetMask> seen;
  for (const auto& e : field(j, "coeff")) {
    const SubsetMask s = subset_from_json(field(e, "subset"), d.n());
    if (!seen.insert(s).second) throw DomainError("divisor lists a subset twice");
    d.set(s, rational_from_json(field(e, "value")));
  }
  return d;
}

Json pbd_json(const PBD& p) {
  Json blocks = Json::array();
  for (const auto& [block, m] : p.blocks()) blocks.push_back({{"set", subset_json(block)}, {"mult", m}});
  return {{"n", p.n()}, {"blocks", blocks}};
}

PBD pbd_from_json(const Json& j) {
  PBD p(read_n(j));
  for (const auto& e : field(j, "blocks")) {
    const auto& mult = field(e, "mult");
    if (!mult.is_number_integer()) throw DomainError("block multiplicities are integers");
    p.add(subset_from_json(field(e, "set"), p.n()), mult.get<std::int64_t>());
  }
  return p;
}

Json pbd_summary_json(const PBD& p) {
  Json out = pbd_json(p);
  try {
    out["index"] = pbd_index(p);
  } catch (const NotBalanced& e) {
    out["index"] = nullptr;
    out["unbalanced"] = e.what();
  }
  Json degrees = Json::array();
  for (int i = 1; i < p.n(); ++i) degrees.push_back(degree(p, i));
  out["degrees"] = degrees;
  out["effective"] = is_effective(p);
  return out;
}

Json curve_json(const CurveClass& c) {
  Json pairings = Json::array();
  for (const auto& s : sigma_elements(c.n()))
    if (c[s.mask()] != 0)
      pairings.push_back({{"subset", subset_json(s.mask())}, {"value", rational_json(c[s.mask()])}});
  return {{"n", c.n()}, {"pairings", pairings}};
}

CurveClass curve_from_json(const Json& j) {
  CurveClass c(read_n(j));
  std::set<SubsetMask> seen;
  for (const auto& e : field(j, "pairings")) {
    const SubsetMask s = subset_from_json(field(e, "subset"), c.n());
    if (!seen.insert(s).second) throw DomainError("curve lists a subset twice");
    c.set(s, rational_from_json(field(e, "value")));
  }
  return c;
}

Json cyclic_fn_json(const CyclicFn& f) { return {{"modulus", f.modulus()}, {"values", rationals_json(f.values())}}; }

CyclicFn cyclic_fn_from_json(const Json& j) {
  if (j.is_array()) {
    auto v = rationals_from_json(j);
    const int m = static_cast<int>(v.size());
    return CyclicFn(m, std::move(v));
  }
  auto v = rationals_from_json(field(j, "values"));
  const int m = read_n(j, "modulus");
  if (static_cast<int>(v.size()) != m) throw DomainError("function has " + std::to_string(v.size()) + " values for modulus " + std::to_string(m));
  return CyclicFn(m, std::move(v));
}

Json system_json(const RationalSystem& sys) {
  std::set<std::string> names(sys.names().begin(), sys.names().end());
  if (names.size() != sys.names().size()) throw DomainError("variable names are not unique");
  Json vars = Json::array();
  for (int j = 0; j < sys.num_vars(); ++j)
    vars.push_back({{"name", sys.names()[j]}, {"kind", sys.kinds()[j] == VarKind::Free ? "free" : "nonneg"}});
  Json rows = Json::array();
  for (const auto& row : sys.rows()) {
    Json coeffs = Json::object();
    for (const auto& [var, v] : row.coeffs) coeffs[sys.names()[var]] = rational_json(v);
    rows.push_back({{"coeffs", coeffs}, {"sense", row.sense == RowSense::Eq ? "eq" : "le"}, {"rhs", rational_json(row.rhs)}});
  }
  Json out = {{"variables", vars}, {"constraints", rows}};
  if (sys.objective()) {
    Json obj = Json::object();
    for (int j = 0; j < sys.num_vars(); ++j)
      if ((*sys.objective())[j] != 0) obj[sys.names()[j]] = rational_json((*sys.objective())[j]);
    out["objective"] = obj;
  }
  return out;
}

RationalSystem system_from_json(const Json& j) {
  try {
    RationalSystem sys;
    std::map<std::string, int> index;
    for (const auto& v : field(j, "variables")) {
      const auto name = field(v, "name").get<std::string>();
      VarKind kind = VarKind::NonNegative;
      if (v.contains("kind")) {
        const auto k = v.at("kind").get<std::string>();
        if (k == "free")
          kind = VarKind::Free;
        else if (k != "nonneg")
          throw MalformedSystem("unknown variable kind '" + k + "'");
      }
      if (index.count(name)) throw MalformedSystem("variable '" + name + "' declared twice");
      index[name] = sys.add_variable(name, kind);
    }
    auto row_of = [&](const Json& coeffs) {
      if (!coeffs.is_object()) throw MalformedSystem("coefficients must be an object keyed by variable name");
      SparseRow row;
      for (const auto& [name, value] : coeffs.items()) {
        auto it = index.find(name);
        if (it == index.end()) throw MalformedSystem("unknown variable '" + name + "'");
        row.emplace_back(it->second, rational_from_json(value));
      }
      return row;
    };
    for (const auto& c : field(j, "constraints")) {
      auto row = row_of(field(c, "coeffs"));
      const auto sense = field(c, "sense").get<std::string>();
      const Rational rhs = rational_from_json(field(c, "rhs"));
      if (sense == "eq")
        sys.add_eq(std::move(row), rhs);
      else if (sense == "le")
        sys.add_le(std::move(row), rhs);
      else if (sense == "ge")
        sys.add_ge(std::move(row), rhs);
      else
        throw MalformedSystem("unknown constraint sense '" + sense + "'");
    }
    if (j.contains("objective")) {
      std::vector<Rational> obj(sys.num_vars(), Rational(0));
      for (const auto& [var, v] : row_of(j.at("objective"))) obj[var] += v;
      sys.set_objective(std::move(obj));
    }
    sys.validate();
    return sys;
  } catch (const Json::exception& e) {
    throw MalformedSystem(std::string("malformed system: ") + e.what());
  } catch (const DomainError& e) {
    throw MalformedSystem(std::string("malformed system: ") + e.what());
  }
}

Json certificate_json(const Certificate& c, const RationalSystem* sys) {
  Json out = {{"kind", c.is_witness() ? "witness" : "farkas"}, {"values", rationals_json(c.values)}};
  if (sys) {
    if (c.is_witness()) {
      Json assignment = Json::object();
      for (int j = 0; j < sys->num_vars(); ++j) assignment[sys->names()[j]] = rational_json(c.values[j]);
      out["assignment"] = assignment;
    }
    out["verified"] = verify(*sys, c);
  }
  return out;
}

Json weight_json(const WeightFn& w) {
  Json entries = Json::array();
  for (int i = 1; i <= w.m(); ++i)
    for (int j = i + 1; j <= w.m(); ++j) entries.push_back({{"pair", {i, j}}, {"value", rational_json(w(i, j))}});
  return {{"m", w.m()}, {"weights", entries}};
}

WeightFn weight_from_json(const Json& j) {
  WeightFn w(read_n(j, "m"));
  for (const auto& e : field(j, "weights")) {
    const auto& pair = field(e, "pair");
    if (!pair.is_array() || pair.size() != 2) throw DomainError("a weight pair has two entries");
    w.set(pair[0].get<int>(), pair[1].get<int>(), rational_from_json(field(e, "value")));
  }
  return w;
}

Json triple_scan_json(const TripleScan& s) {
  Json out = {{"ok", s.ok}, {"triples", s.triples}};
  if (s.violation) {
    out["violation"] = *s.violation;
    out["value"] = rational_json(s.violation_value);
  }
  return out;
}

Json lift_json(const LiftResult& r) {
  const auto& v = r.verification;
  Json verification = {{"source_fnef", v.source_fnef},
                       {"st_positive_floor", rational_json(v.st_positive_floor)},
                       {"max_abs", rational_json(v.max_abs)},
                       {"dominance", v.dominance},
                       {"equality_case_reduction", v.equality_case_reduction},
                       {"sampled", v.sampled},
                       {"sampled_ok", v.sampled_ok}};
  verification["exhaustive"] = v.exhaustive ? Json(*v.exhaustive) : Json(nullptr);
  return {{"n", r.source.n()},
          {"primes", r.weights.primes},
          {"c", rational_json(r.c)},
          {"N", r.weights.N},
          {"A", r.weights.A},
          {"weights", r.weights.a},
          {"lifted", rationals_json(r.lifted.as_cyclic().values())},
          {"verification", verification},
          {"verified", v.passed()}};
}

Json main_theorem_json(const MainTheoremReport& r) {
  return {{"n", r.n},
          {"c", rational_json(r.c)},
          {"N", r.N},
          {"A", r.A},
          {"weights", r.weights},
          {"lift_fnef", r.lift_fnef},
          {"pullback_equals_source", r.pullback_equals_source},
          {"supertotal_vanishes", r.supertotal_vanishes},
          {"verified", r.verified()}};
}

Json stratal_json(const StratalReport& r) {
  Json strata = Json::array();
  for (const auto& s : r.strata) {
    const char* method = s.method == StratumReport::Method::LowRank        ? "low-rank"
                         : s.method == StratumReport::Method::LinearProgram ? "lp"
                                                                            : "ascent";
    Json e = {{"partition", s.partition.parts}, {"method", method}, {"verified", s.verified}};
    if (s.weight) e["weight"] = weight_json(*s.weight);
    if (s.refutation) e["refutation"] = certificate_json(*s.refutation);
    strata.push_back(std::move(e));
  }
  return {{"n", r.n}, {"success", r.success}, {"lp_certified", r.lp_certified}, {"ascended", r.ascended}, {"strata", strata}};
}

Json search_json(const SearchReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    const int rho = (1 << (f.support.n() - 1)) - f.support.n() - 1;
    failures.push_back({{"support", coord_hex(f.support.bits(), rho)},
                        {"pbd", pbd_json(f.pbd)},
                        {"functional", rationals_json(f.functional)}});
  }
  return {{"n", r.n},
          {"complete", r.complete},
          {"nodes_visited", r.nodes_visited},
          {"evaluated", r.evaluated},
          {"resumed", r.resumed},
          {"pruned", r.pruned},
          {"critical", r.critical},
          {"support_lps", r.support_lps},
          {"critical_lps", r.critical_lps},
          {"reused_witnesses", r.reused_witnesses},
          {"failures", failures}};
}

Json pbd_rays_json(const PbdRayReport& r) {
  Json orbits = Json::array();
  for (const auto& o : r.orbits)
    orbits.push_back({{"representative", pbd_json(o.representative)},
                      {"orbit_size", o.orbit_size},
                      {"index", o.index},
                      {"index_range", {o.min_index, o.max_index}}});
  return {{"n", r.n}, {"rays", r.rays}, {"orbit_count", r.orbits.size()}, {"index_range", {r.min_index, r.max_index}},
          {"orbits", orbits}};
}

Json biplane_json(const BiplaneReport& r) {
  Json out = {{"biplane", pbd_summary_json(r.biplane)},
              {"fcurves", r.fcurves},
              {"symmetrized", r.symmetrized},
              {"group_order", r.group_order},
              {"lp_rows", r.lp_rows},
              {"lp_columns", r.lp_columns},
              {"in_fcurve_cone", r.member},
              {"witness_ok", r.witness_ok}};
  if (r.separator) out["separator"] = divisor_json(*r.separator);
  return out;
}

}  // namespace fcone
