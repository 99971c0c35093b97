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

#ifndef TRIPLESCORE_NATIONALITY_MAPPING_H_
#define TRIPLESCORE_NATIONALITY_MAPPING_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace triplescore {

// Country token -> demonym token, e.g. canada -> canadian. Both sides are
// normalized (joined, lowercased) tokens.
class NationalityMapping {
 public:
  using Map = std::map<std::string, std::string, std::less<>>;

  NationalityMapping() = default;

  // Adds or replaces a pair. Both tokens must be non-empty and distinct.
  void Set(std::string country, std::string demonym);

  std::optional<std::string_view> Demonym(std::string_view country) const;
  bool Contains(std::string_view country) const {
    return pairs_.find(country) != pairs_.end();
  }

  const Map &pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // `country<TAB>demonym` per line. Blank lines are ignored.
  static NationalityMapping Load(const std::string &path);
  void Save(const std::string &path) const;
  std::string ToTsv() const;

 private:
  Map pairs_;
};

}  // namespace triplescore

#endif  // TRIPLESCORE_NATIONALITY_MAPPING_H_
