#pragma once

#include <nlohmann/json.hpp>

#include "fcone/boundarycert.hpp"
#include "fcone/curves.hpp"
#include "fcone/fnef.hpp"
#include "fcone/lift.hpp"
#include "fcone/picard.hpp"
#include "fcone/ratlp.hpp"
#include "fcone/strongf.hpp"

// JSON forms. Rationals are "p/q" strings; subsets are sorted member lists.
// Every from_json throws DomainError (or MalformedSystem for systems) on bad input.
namespace fcone {

using Json = nlohmann::json;

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json rationals_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const Json& j);

Json subset_json(SubsetMask s);
SubsetMask subset_from_json(const Json& j, int n);

// {"n", "coeff": [{"subset", "value"}]}, nonzero entries in size-then-lex order.
Json divisor_json(const DivisorClass& d);
DivisorClass divisor_from_json(const Json& j);

// {"n", "blocks": [{"set", "mult"}]}.
Json pbd_json(const PBD& p);
PBD pbd_from_json(const Json& j);
// pbd_json plus index, degrees and effectiveness.
Json pbd_summary_json(const PBD& p);

Json curve_json(const CurveClass& c);
CurveClass curve_from_json(const Json& j);

// A bare array of values, or {"modulus", "values"}.
Json cyclic_fn_json(const CyclicFn& f);
CyclicFn cyclic_fn_from_json(const Json& j);

// {"variables": [{"name", "kind": "free"|"nonneg"}],
//  "constraints": [{"coeffs": {name: value}, "sense": "eq"|"le"|"ge", "rhs"}],
//  "objective": {name: value}}  (objective optional, minimized)
Json system_json(const RationalSystem& sys);
RationalSystem system_from_json(const Json& j);

Json certificate_json(const Certificate& c, const RationalSystem* sys = nullptr);

Json weight_json(const WeightFn& w);
WeightFn weight_from_json(const Json& j);

Json triple_scan_json(const TripleScan& s);
Json lift_json(const LiftResult& r);
Json main_theorem_json(const MainTheoremReport& r);
Json stratal_json(const StratalReport& r);
Json search_json(const SearchReport& r);
Json pbd_rays_json(const PbdRayReport& r);
Json biplane_json(const BiplaneReport& r);

}  // namespace fcone
