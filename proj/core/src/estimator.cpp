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

#include "ars/estimator.hpp"

#include <charconv>
#include <string>

#include "ars/error.hpp"

namespace ars {

namespace {

bool parse_int(std::string_view text, int& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

EstimatorKind EstimatorKind::amortized(int replications, int proposal_runs) {
  if (replications < 1 || proposal_runs < 1) {
    throw ConfigError("amortized estimator requires M >= 1 and N >= 1");
  }
  return EstimatorKind{Kind::kAmortized, replications, proposal_runs};
}

EstimatorKind EstimatorKind::parse(std::string_view text, int default_replications, int default_proposal_runs) {
  if (text == "ic" || text == "naive" || text == "naive_ic") {
    return naive_ic();
  }
  if (text == "biased") {
    return biased();
  }
  if (text == "collapsed" || text == "collapsed_oracle") {
    return collapsed_oracle();
  }
  if (text == "ars") {
    return amortized(default_replications, default_proposal_runs);
  }
  // ars_m<M>_n<N>
  if (text.starts_with("ars_m")) {
    const auto rest = text.substr(5);
    const auto sep = rest.find("_n");
    int m = 0;
    int n = 0;
    if (sep != std::string_view::npos && parse_int(rest.substr(0, sep), m) && parse_int(rest.substr(sep + 2), n)) {
      return amortized(m, n);
    }
  }
  throw ConfigError("unknown estimator '" + std::string(text) + "' (expected ic, biased, ars, ars_m<M>_n<N>, collapsed)");
}

std::string EstimatorKind::name() const {
  switch (kind_) {
    case Kind::kNaiveIc:
      return "ic";
    case Kind::kBiased:
      return "biased";
    case Kind::kCollapsedOracle:
      return "collapsed";
    case Kind::kAmortized:
      return "ars_m" + std::to_string(replications_) + "_n" + std::to_string(proposal_runs_);
  }
  return "unknown";
}

}  // namespace ars
