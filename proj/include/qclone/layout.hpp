#pragma once

#include <span>
#include <string>
#include <vector>

namespace qclone {

struct Register {
  std::string role;
  int dim = 0;
};

/// Ordered list of named qudit registers. Amplitude indexing is big-endian
/// in layout order: the first register varies slowest. Role labels are
/// unique within a layout; labels of the form q<digits> are generic and get
/// renumbered freely when layouts are combined.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  /// count registers of equal dimension with generic roles q0, q1, ...
  static RegisterLayout generic(int count, int dim);

  int size() const { return static_cast<int>(registers_.size()); }
  int dim(int i) const { return registers_.at(i).dim; }
  const std::string& role(int i) const { return registers_.at(i).role; }
  const std::vector<Register>& registers() const { return registers_; }

  long long total_dim() const;
  std::vector<int> dims() const;
  std::vector<long long> strides() const;

  /// -1 when no register carries the role.
  int index_of(const std::string& role) const;

  /// true when every register has the same local dimension.
  bool uniform_dim() const;

  /// Sub-layout of the given register indices, in the order given.
  RegisterLayout select(std::span<const int> indices) const;

 private:
  std::vector<Register> registers_;
};

bool is_generic_role(const std::string& role);

/// Concatenation; generic roles are renumbered by global position, named
/// role collisions throw.
RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b);

}  // namespace qclone
