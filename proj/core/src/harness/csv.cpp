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

#include "ars/harness/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "ars/error.hpp"

namespace ars {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

template <class T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    std::ostringstream os;
    os << "line " << line_no << ": cannot parse '" << field << "' as a number";
    throw ConfigError(os.str());
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

void write_rows(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << kExperimentHeader << '\n';
  for (const auto& r : rows) {
    os << r.model << ',' << r.estimator << ',' << r.proposal_preset << ',' << r.run_id << ','
       << r.checkpoint_particles << ',' << format_double(r.posterior_mean_est) << ',' << format_double(r.abs_error)
       << ',' << format_double(r.ess) << ',' << format_double(r.zero_weight_fraction) << ',' << r.seed << ','
       << format_double(r.wall_ms) << '\n';
  }
}

std::vector<ExperimentRow> parse_rows(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kExperimentHeader) {
    throw ConfigError("CSV header does not match the experiment schema: expected '" +
                      std::string(kExperimentHeader) + "'");
  }
  std::vector<ExperimentRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 11) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 11 fields, found " << f.size();
      throw ConfigError(os.str());
    }
    ExperimentRow r;
    r.model = std::string(f[0]);
    r.estimator = std::string(f[1]);
    r.proposal_preset = std::string(f[2]);
    r.run_id = parse_number<std::uint64_t>(f[3], line_no);
    r.checkpoint_particles = parse_number<std::uint64_t>(f[4], line_no);
    r.posterior_mean_est = parse_number<double>(f[5], line_no);
    r.abs_error = parse_number<double>(f[6], line_no);
    r.ess = parse_number<double>(f[7], line_no);
    r.zero_weight_fraction = parse_number<double>(f[8], line_no);
    r.seed = parse_number<std::uint64_t>(f[9], line_no);
    r.wall_ms = parse_number<double>(f[10], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_aggregates(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "model,estimator,proposal_preset,checkpoint_particles,runs,"
        "posterior_mean_est_median,posterior_mean_est_q10,posterior_mean_est_q90,"
        "abs_error_median,abs_error_q10,abs_error_q90,ess_median,ess_q10,ess_q90,zero_weight_fraction_median\n";
  const auto band = [&os](const Band& b) {
    os << ',' << format_double(b.median) << ',' << format_double(b.q10) << ',' << format_double(b.q90);
  };
  for (const auto& r : rows) {
    os << r.model << ',' << r.estimator << ',' << r.proposal_preset << ',' << r.checkpoint_particles << ','
       << r.runs;
    band(r.posterior_mean_est);
    band(r.abs_error);
    band(r.ess);
    os << ',' << format_double(r.zero_weight_fraction_median) << '\n';
  }
}

}  // namespace ars
