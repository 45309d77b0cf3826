#pragma once

#include <memory>
#include <string>
#include <vector>

#include "specinv/common.hpp"

namespace specinv {

/// Canonical form of a group element:
///   free-abelian(d): d coordinates; cyclic(n): one value in [0, n);
///   heisenberg: (a, b, c); free(k): reduced word with letters +/-1..+/-k;
///   finite-table: one index into the table.
using Elem = std::vector<std::int64_t>;

struct ElemHash {
  std::size_t operator()(const Elem& e) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : e) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct GroupDescriptor {
  std::string kind;                      // free-abelian | cyclic | heisenberg | free | finite-table
  int rank = 1;                          // d for free-abelian, k for free
  int modulus = 0;                       // n for cyclic
  std::vector<std::vector<int>> table;   // finite-table products, table[i][j] = i*j
  std::vector<int> table_generators;     // optional generating subset; empty = all non-identity
};

class Group {
public:
  explicit Group(GroupDescriptor desc) : desc_(std::move(desc)) {}
  virtual ~Group() = default;

  [[nodiscard]] virtual Elem identity() const = 0;
  [[nodiscard]] virtual Elem mul(const Elem& a, const Elem& b) const = 0;
  [[nodiscard]] virtual Elem inverse(const Elem& a) const = 0;
  /// Symmetric generating set used for word gauges and growth.
  [[nodiscard]] virtual const std::vector<Elem>& generators() const = 0;
  /// Throws a domain error unless e is a valid canonical form.
  virtual void validate(const Elem& e) const = 0;

  [[nodiscard]] virtual bool is_finite() const { return false; }
  /// All elements, finite groups only.
  [[nodiscard]] virtual std::vector<Elem> all_elements() const {
    fail(ErrorKind::domain, "all_elements: group is not finite");
  }

  [[nodiscard]] const GroupDescriptor& descriptor() const { return desc_; }
  [[nodiscard]] virtual std::string describe() const = 0;

private:
  GroupDescriptor desc_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Builds a group from its descriptor; finite tables are validated
/// exhaustively (associativity, identity, inverses).
GroupPtr make_group(const GroupDescriptor& desc);

}  // namespace specinv
