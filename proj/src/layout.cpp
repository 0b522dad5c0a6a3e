#include "qclone/layout.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace qclone {

namespace {

void check_unique_roles(const std::vector<Register>& regs) {
  std::unordered_set<std::string> seen;
  for (const auto& r : regs) {
    if (r.dim < 2)
      throw std::invalid_argument("dimension-too-small: register dim must be >= 2");
    if (!seen.insert(r.role).second)
      throw std::invalid_argument("duplicate role label: " + r.role);
  }
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
  check_unique_roles(registers_);
}

RegisterLayout RegisterLayout::generic(int count, int dim) {
  std::vector<Register> regs;
  regs.reserve(count);
  for (int i = 0; i < count; ++i) regs.push_back({"q" + std::to_string(i), dim});
  return RegisterLayout(std::move(regs));
}

long long RegisterLayout::total_dim() const {
  long long total = 1;
  for (const auto& r : registers_) total *= r.dim;
  return total;
}

std::vector<int> RegisterLayout::dims() const {
  std::vector<int> out(registers_.size());
  std::transform(registers_.begin(), registers_.end(), out.begin(),
                 [](const Register& r) { return r.dim; });
  return out;
}

std::vector<long long> RegisterLayout::strides() const {
  std::vector<long long> s(registers_.size(), 1);
  for (int i = size() - 2; i >= 0; --i) s[i] = s[i + 1] * registers_[i + 1].dim;
  return s;
}

int RegisterLayout::index_of(const std::string& role) const {
  for (int i = 0; i < size(); ++i)
    if (registers_[i].role == role) return i;
  return -1;
}

bool RegisterLayout::uniform_dim() const {
  return std::all_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.dim == registers_.front().dim; });
}

RegisterLayout RegisterLayout::select(std::span<const int> indices) const {
  std::vector<Register> regs;
  regs.reserve(indices.size());
  for (int i : indices) regs.push_back(registers_.at(i));
  return RegisterLayout(std::move(regs));
}

bool is_generic_role(const std::string& role) {
  if (role.size() < 2 || role[0] != 'q') return false;
  return std::all_of(role.begin() + 1, role.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b) {
  std::vector<Register> regs;
  regs.reserve(a.size() + b.size());
  for (const auto& r : a.registers()) regs.push_back(r);
  for (const auto& r : b.registers()) regs.push_back(r);
  for (int i = 0; i < static_cast<int>(regs.size()); ++i)
    if (is_generic_role(regs[i].role)) regs[i].role = "q" + std::to_string(i);
  return RegisterLayout(std::move(regs));
}

}  // namespace qclone
