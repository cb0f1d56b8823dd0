// Copyright 2026 The qpirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpirlab/layout.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "qpirlab/error.hpp"

namespace qpirlab {
namespace {

std::atomic<std::size_t> g_dimension_guard{kDefaultDimensionGuard};

}  // namespace

std::size_t dimension_guard() noexcept { return g_dimension_guard.load(std::memory_order_relaxed); }

void set_dimension_guard(std::size_t guard) {
  if (guard == 0) throw DomainError("dimension guard must be positive");
  g_dimension_guard.store(guard, std::memory_order_relaxed);
}

RegisterLayout::RegisterLayout(std::initializer_list<Register> registers)
    : RegisterLayout(std::vector<Register>(registers)) {}

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
  std::unordered_set<std::string> seen;
  const std::size_t guard = dimension_guard();
  for (const auto& reg : registers_) {
    if (reg.label.empty()) throw LayoutError("register label must be nonempty");
    if (reg.dim == 0) throw LayoutError("register '" + reg.label + "' has dimension 0");
    if (!seen.insert(reg.label).second) throw LayoutError("duplicate register label '" + reg.label + "'");
    if (total_dim_ > std::numeric_limits<std::size_t>::max() / reg.dim || total_dim_ * reg.dim > guard) {
      throw DimensionGuardError("layout exceeds dimension guard " + std::to_string(guard) + " at register '" +
                                reg.label + "'");
    }
    total_dim_ *= reg.dim;
  }
}

bool RegisterLayout::contains(std::string_view label) const noexcept {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.label == label; });
}

std::size_t RegisterLayout::position(std::string_view label) const {
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (registers_[k].label == label) return k;
  }
  throw LayoutError("unknown register '" + std::string(label) + "' in " + to_string());
}

std::size_t RegisterLayout::dim_of(std::string_view label) const { return registers_[position(label)].dim; }

LabelSet RegisterLayout::labels() const {
  LabelSet out;
  out.reserve(registers_.size());
  for (const auto& r : registers_) out.push_back(r.label);
  return out;
}

RegisterLayout RegisterLayout::select(const LabelSet& labels) const {
  std::vector<Register> out;
  out.reserve(labels.size());
  for (const auto& label : labels) out.push_back(registers_[position(label)]);
  return RegisterLayout(std::move(out));
}

RegisterLayout RegisterLayout::without(const LabelSet& labels) const {
  for (const auto& label : labels) position(label);
  std::vector<Register> out;
  for (const auto& r : registers_) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) out.push_back(r);
  }
  return RegisterLayout(std::move(out));
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  std::vector<Register> out = registers_;
  out.insert(out.end(), other.registers_.begin(), other.registers_.end());
  return RegisterLayout(std::move(out));
}

bool RegisterLayout::same_registers(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  return std::all_of(registers_.begin(), registers_.end(), [&](const Register& r) {
    return other.contains(r.label) && other.dim_of(r.label) == r.dim;
  });
}

std::string RegisterLayout::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (k) os << ", ";
    os << registers_[k].label << ':' << registers_[k].dim;
  }
  os << ']';
  return os.str();
}

std::vector<std::size_t> permutation_map(const RegisterLayout& from, const RegisterLayout& to) {
  if (!from.same_registers(to)) {
    throw LayoutError("cannot permute " + from.to_string() + " into " + to.to_string());
  }
  const std::size_t k = to.size();
  // Stride in `from` of each register of `to`.
  std::vector<std::size_t> from_stride(from.size());
  std::size_t s = 1;
  for (std::size_t r = from.size(); r-- > 0;) {
    from_stride[r] = s;
    s *= from.registers()[r].dim;
  }
  std::vector<std::size_t> stride(k), dims(k);
  for (std::size_t r = 0; r < k; ++r) {
    dims[r] = to.registers()[r].dim;
    stride[r] = from_stride[from.position(to.registers()[r].label)];
  }
  std::vector<std::size_t> map(to.total_dim());
  std::vector<std::size_t> digit(k, 0);
  std::size_t source = 0;
  for (std::size_t q = 0; q < map.size(); ++q) {
    map[q] = source;
    // Odometer increment over `to`'s digits, least significant last.
    for (std::size_t r = k; r-- > 0;) {
      ++digit[r];
      source += stride[r];
      if (digit[r] < dims[r]) break;
      source -= stride[r] * dims[r];
      digit[r] = 0;
    }
  }
  return map;
}

}  // namespace qpirlab
