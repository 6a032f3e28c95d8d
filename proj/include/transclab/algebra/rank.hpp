#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "transclab/algebra/radical_element.hpp"
#include "transclab/algebra/rational_matrix.hpp"
#include "transclab/error.hpp"

namespace transclab::algebra {

namespace detail {

inline void require_shared_context(std::span<const RadicalElement> elements) {
  if (elements.empty()) throw DomainError("rank_over_q needs a nonempty list");
  for (const auto& e : elements)
    if (!same_context(e.context(), elements.front().context())) throw ContextMismatch();
}

/// Column index for every basis monomial occurring in any element.
inline std::map<Exponent, std::size_t> support_columns(std::span<const RadicalElement> elements) {
  std::map<Exponent, std::size_t> cols;
  for (const auto& e : elements)
    for (const auto& [j, c] : e.coords()) cols.emplace(j, 0);
  std::size_t i = 0;
  for (auto& [j, idx] : cols) idx = i++;
  return cols;
}

}  // namespace detail

/// Coordinate matrix restricted to the union of supports, one row per element.
inline RationalMatrix coordinate_matrix(std::span<const RadicalElement> elements) {
  detail::require_shared_context(elements);
  auto cols = detail::support_columns(elements);
  RationalMatrix m(elements.size(), cols.size());
  for (std::size_t r = 0; r < elements.size(); ++r)
    for (const auto& [j, c] : elements[r].coords()) m(r, cols.at(j)) = c;
  return m;
}

/// Dimension of the Q-span of the elements.
///
/// Sparse Gaussian elimination: rows are bucketed by leading column; within a
/// bucket the largest-numerator row becomes the pivot and eliminates the rest.
/// With the basis faithful, this is also the Q-dimension of the span of the
/// complex numbers the elements denote.
inline std::size_t rank_over_q(std::span<const RadicalElement> elements) {
  detail::require_shared_context(elements);
  using Row = std::map<std::size_t, mpq_class>;
  auto cols = detail::support_columns(elements);
  std::map<std::size_t, std::vector<Row>> buckets;
  for (const auto& e : elements) {
    if (e.is_zero()) continue;
    Row row;
    for (const auto& [j, c] : e.coords()) row.emplace(cols.at(j), c);
    std::size_t lead = row.begin()->first;
    buckets[lead].push_back(std::move(row));
  }

  std::size_t rank = 0;
  while (!buckets.empty()) {
    auto node = buckets.extract(buckets.begin());
    auto& rows = node.mapped();
    std::size_t p = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (better_pivot(rows[i].begin()->second, rows[p].begin()->second)) p = i;
    const Row& pivot = rows[p];
    const mpq_class& pv = pivot.begin()->second;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == p) continue;
      Row& r = rows[i];
      mpq_class f = r.begin()->second / pv;
      for (const auto& [c, v] : pivot) {
        auto [it, inserted] = r.try_emplace(c, 0);
        it->second -= f * v;
        if (it->second == 0) r.erase(it);
      }
      if (!r.empty()) {
        std::size_t nl = r.begin()->first;
        buckets[nl].push_back(std::move(r));
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_over_q(std::initializer_list<RadicalElement> elements) {
  return rank_over_q(std::span<const RadicalElement>(elements.begin(), elements.size()));
}

}  // namespace transclab::algebra
