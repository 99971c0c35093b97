// Copyright 2026 The Triplescore Authors.
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

#include "triplescore/nationality_mapping.h"

#include "triplescore/errors.h"
#include "triplescore/text.h"

namespace triplescore {

void NationalityMapping::Set(std::string country, std::string demonym) {
  if (country.empty() || demonym.empty()) {
    throw ContractError("nationality mapping entries must be non-empty");
  }
  if (country == demonym) {
    throw ContractError("demonym equals its country token: " + country);
  }
  pairs_.insert_or_assign(std::move(country), std::move(demonym));
}

std::optional<std::string_view> NationalityMapping::Demonym(
    std::string_view country) const {
  auto it = pairs_.find(country);
  if (it == pairs_.end()) return std::nullopt;
  return std::string_view(it->second);
}

NationalityMapping NationalityMapping::Load(const std::string &path) {
  const CharSet punctuation = CharSet::DefaultPunctuation();
  NationalityMapping mapping;
  std::size_t line_number = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    auto fields = SplitFields(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("expected country<TAB>demonym", line_number);
    }
    std::string country = NormalizeTerm(fields[0], punctuation);
    std::string demonym = NormalizeTerm(fields[1], punctuation);
    if (country.empty() || demonym.empty() || country == demonym) {
      throw ParseError("invalid mapping entry", line_number);
    }
    if (mapping.Contains(country)) {
      throw ParseError("duplicate country " + country, line_number);
    }
    mapping.Set(std::move(country), std::move(demonym));
  }
  return mapping;
}

std::string NationalityMapping::ToTsv() const {
  std::string out;
  for (const auto &[country, demonym] : pairs_) {
    out += country;
    out += '\t';
    out += demonym;
    out += '\n';
  }
  return out;
}

void NationalityMapping::Save(const std::string &path) const {
  WriteFile(path, ToTsv());
}

}  // namespace triplescore
