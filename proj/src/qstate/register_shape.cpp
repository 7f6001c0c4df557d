#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

RegisterShape::RegisterShape(std::vector<std::size_t> dims, std::size_t cap) : dims_(std::move(dims)) {
  total_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw InputError("register dimension must be positive");
    if (total_ > cap / d) {
      throw CapError("register dimension exceeds cap of " + std::to_string(cap));
    }
    total_ *= d;
  }
}

RegisterShape RegisterShape::concat(const RegisterShape& other, std::size_t cap) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return RegisterShape(std::move(dims), cap);
}

std::size_t RegisterShape::index(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw InputError("digit count does not match register rank");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] >= dims_[k]) throw InputError("digit out of range for register factor");
    idx = idx * dims_[k] + digits[k];
  }
  return idx;
}

std::vector<std::size_t> RegisterShape::digits(std::size_t index) const {
  if (index >= total_) throw InputError("basis index out of range");
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

}  // namespace qma3col
