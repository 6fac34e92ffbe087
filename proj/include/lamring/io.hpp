#pragma once

// JSON exchange formats for forms, classes, ring elements, identity
// reports and characters.

#include <string>

#include <json.hpp>

#include "lamring/forms.hpp"
#include "lamring/lambda.hpp"
#include "lamring/weights.hpp"

namespace lamring::io {

using json = nlohmann::json;

std::string scalar_to_string(const forms::Scalar& s);
/// Decimal integer or "p/q"; the field reduces it.
forms::Scalar parse_scalar(const forms::FieldModel& f, const std::string& text, const std::string& where);

json matrix_to_json(const forms::Matrix& m);
/// e.g. [[0,1],[1,0]]
std::string matrix_to_text(const forms::Matrix& m);

/// {field, gram:[["p/q", ...], ...]}
json form_to_json(const forms::GramForm& a);
/// Throws ParseError on malformed records and DegenerateFormError on
/// asymmetric or singular matrices.
forms::GramForm form_from_json(const json& j);

/// {field, rank, disc[, signature]}
json class_to_json(const forms::GWClass& c);

/// {ring, rank_r, field, terms:[{basis, coeff}]}; GW coefficients are
/// {pos:[...], neg:[...]} lists of square-class representatives, integer
/// coefficients are decimal strings.
json element_to_json(const lambda::IntegerRing& R, const BigInt& x);
json element_to_json(const lambda::GWFieldRing& R, const lambda::GWElt& x);
json element_to_json(const lambda::KTorusRing& R, const lambda::KTorusRing::Elt& x);
json element_to_json(const lambda::KExtTorusRing& R, const lambda::KExtTorusRing::Elt& x);
json element_to_json(const lambda::GWExtTorusRing& R, const lambda::GWExtTorusRing::Elt& x);

/// Throw ParseError naming the offending field, RingMismatchError if the
/// record belongs to another ring.
BigInt element_from_json(const lambda::IntegerRing& R, const json& j);
lambda::GWElt element_from_json(const lambda::GWFieldRing& R, const json& j);
lambda::KTorusRing::Elt element_from_json(const lambda::KTorusRing& R, const json& j);
lambda::KExtTorusRing::Elt element_from_json(const lambda::KExtTorusRing& R, const json& j);
lambda::GWExtTorusRing::Elt element_from_json(const lambda::GWExtTorusRing& R, const json& j);

/// {"delta_delta": "one"|"delta", "lambda2_pair": "one"|"delta", "zero_pair_coeff": "2"}; keys optional.
lambda::StructureConstants constants_from_json(const json& j);

template <class Ring>
json report_to_json(const Ring& R, const lambda::CheckResult<Ring>& r, const typename Ring::Elt& x,
                    const typename Ring::Elt* y) {
  json out;
  out["check"] = r.check;
  out["k"] = r.k;
  if (r.check == "lambda2") out["j"] = r.j;
  out["x"] = element_to_json(R, x);
  if (y) out["y"] = element_to_json(R, *y);
  out["lhs"] = element_to_json(R, r.lhs);
  out["rhs"] = element_to_json(R, r.rhs);
  out["pass"] = r.pass;
  return out;
}

/// {n, flavor, terms:[{weight, mult}]} with weights in lexicographic order.
json char_to_json(const weights::LaurentChar& c, const weights::Flavor& f);
weights::LaurentChar char_from_json(const json& j);

/// Parse text as JSON, reporting failures as ParseError.
json parse_json(const std::string& text, const std::string& what);

}  // namespace lamring::io
