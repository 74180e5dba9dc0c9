// Copyright 2026 The propelin authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace propelin {

// Thrown when materializing a code would exceed the caller's memory budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Default enumeration budget in bytes.  Cost of materializing a code is
// estimated as size * length (one byte per coordinate of every stored word).
inline constexpr std::uint64_t kDefaultEnumerationBudget = 512ull << 20;

}  // namespace propelin
