// Copyright 2026 The ars-ppl Authors
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

#include "ars/address.hpp"

#include <ostream>
#include <sstream>

namespace ars {

std::string Address::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ScopeId& id) { return os << id.label << '#' << id.instance; }

std::ostream& operator<<(std::ostream& os, const Address& address) {
  for (const auto& frame : address.path) {
    os << frame.label << '#' << frame.instance << '@' << frame.iteration << '/';
  }
  return os << address.label;
}

}  // namespace ars
