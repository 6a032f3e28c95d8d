#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "transclab/algebra/field_context.hpp"
#include "transclab/algebra/radical_element.hpp"
#include "transclab/error.hpp"

namespace transclab::algebra {

using json = nlohmann::json;

/// Big integers travel as decimal strings; plain JSON integers are accepted on input.
inline mpz_class parse_bigint(const json& v) {
  mpz_class z;
  if (v.is_string()) {
    if (z.set_str(v.get<std::string>(), 10) != 0) throw FormatError("not a decimal integer: " + v.dump());
  } else if (v.is_number_integer()) {
    z.set_str(v.dump(), 10);
  } else {
    throw FormatError("expected a decimal integer, got " + v.dump());
  }
  return z;
}

/// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as decimal strings.
inline json bigint_to_json(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return json(static_cast<long long>(mpz_get_si(z.get_mpz_t())));
  return json(z.get_str());
}

inline json context_to_json(const FieldContext& ctx) {
  json primes = json::array();
  for (const auto& p : ctx.primes()) primes.push_back(p.get_str());
  return {{"primes", primes}, {"d", ctx.d()}};
}

/// {"primes": [...], "d": ..., "coords": [{"j": [...], "num": "...", "den": "..."}, ...]}
inline json to_json(const RadicalElement& a) {
  json out = context_to_json(*a.context());
  json coords = json::array();
  for (const auto& [j, c] : a.coords())
    coords.push_back({{"j", j}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  out["coords"] = std::move(coords);
  return out;
}

inline ContextPtr context_from_json(const json& v) {
  if (!v.is_object() || !v.contains("primes") || !v.contains("d")) throw FormatError("field context needs primes and d");
  std::vector<mpz_class> primes;
  for (const auto& p : v.at("primes")) primes.push_back(parse_bigint(p));
  if (!v.at("d").is_number_unsigned()) throw FormatError("d must be a non-negative integer");
  return make_context(std::move(primes), v.at("d").get<unsigned>());
}

/// Parses an element; when `ctx` is given the serialized context must match it
/// and the shared pointer is reused.
inline RadicalElement from_json(const json& v, ContextPtr ctx = nullptr) {
  try {
    ContextPtr parsed = context_from_json(v);
    if (ctx) {
      if (!same_context(ctx, parsed)) throw ContextMismatch();
    } else {
      ctx = parsed;
    }
    RadicalElement::Coords coords;
    for (const auto& item : v.value("coords", json::array())) {
      Exponent j = item.at("j").get<Exponent>();
      mpq_class q(parse_bigint(item.at("num")), parse_bigint(item.value("den", json("1"))));
      if (q.get_den() == 0) throw FormatError("zero denominator");
      q.canonicalize();
      if (coords.count(j)) throw FormatError("duplicate exponent tuple in coords");
      coords.emplace(std::move(j), q);
    }
    return RadicalElement(ctx, std::move(coords));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed radical element: ") + e.what());
  }
}

}  // namespace transclab::algebra
