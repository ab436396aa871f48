#pragma once

// Finite groupoids given by tables, their validation, and a few builders.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgl/report.hpp"

namespace qgl {

/// Arrows are opaque string ids; internally they are numbered in the order given.
class FiniteGroupoid {
 public:
  using Entry = std::array<std::string, 3>;

  /// Throws Error(Parse) on structural table defects: duplicate ids, unknown
  /// ids, units that are not elements, missing source/target/inverse entries,
  /// non-composable or duplicate product entries, and composable pairs without a product.
  FiniteGroupoid(std::vector<std::string> elements, std::vector<std::string> units,
                 const std::map<std::string, std::string>& source,
                 const std::map<std::string, std::string>& target,
                 const std::vector<Entry>& mult,
                 const std::map<std::string, std::string>& inverse);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int p) const { return names_[p]; }
  /// Throws Error(InvalidInput) for an unknown id.
  int index(const std::string& id) const;
  const std::vector<std::string>& names() const { return names_; }

  const std::vector<int>& units() const { return units_; }
  bool is_unit(int p) const { return unit_flag_[p]; }
  int source(int p) const { return source_[p]; }
  int target(int p) const { return target_[p]; }
  int inverse(int p) const { return inverse_[p]; }
  bool composable(int p, int q) const { return source_[p] == target_[q]; }
  /// pq for a composable pair, -1 otherwise.
  int product(int p, int q) const { return product_[static_cast<std::size_t>(p) * size() + q]; }

  /// The table in file form: composable pairs in element order.
  std::vector<Entry> mult_entries() const;
  std::map<std::string, std::string> source_map() const;
  std::map<std::string, std::string> target_map() const;
  std::map<std::string, std::string> inverse_map() const;
  std::vector<std::string> unit_names() const;

  /// Returns a copy with pq replaced by `result` for one composable pair.
  FiniteGroupoid with_product(const std::string& p, const std::string& q,
                              const std::string& result) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
  std::vector<int> units_;
  std::vector<bool> unit_flag_;
  std::vector<int> source_;
  std::vector<int> target_;
  std::vector<int> inverse_;
  std::vector<int> product_;
};

/// Exhaustive check of the groupoid laws; each failing check names a witness.
VerificationReport validate_groupoid(const FiniteGroupoid& g);

/// Pair groupoid on n objects: arrows "(i,j)" with target i and source j.
FiniteGroupoid pair_groupoid(int n);
/// Z_n as a one-unit groupoid: arrows "g0", ..., "g{n-1}".
FiniteGroupoid cyclic_group(int n);
/// S_3 as a one-unit groupoid, arrows named by one-line notation ("123" is the unit).
FiniteGroupoid symmetric_group_3();
/// Pair groupoid on k objects times Z_m.
FiniteGroupoid pair_times_cyclic(int k, int m);
FiniteGroupoid disjoint_union(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                              const std::string& prefix1 = "a.",
                              const std::string& prefix2 = "b.");

/// Disjoint union of up to n_components pieces, each a pair groupoid on at
/// most max_objects objects times Z_m with m drawn from isotropy_orders; at
/// most 30 arrows in total, listed in shuffled order. Deterministic per seed.
FiniteGroupoid random_groupoid(int n_components, int max_objects,
                               const std::vector<int>& isotropy_orders, std::uint64_t seed);

}  // namespace qgl
