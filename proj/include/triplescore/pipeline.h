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

#ifndef TRIPLESCORE_PIPELINE_H_
#define TRIPLESCORE_PIPELINE_H_

#include <iosfwd>
#include <string>

#include "triplescore/embedding.h"
#include "triplescore/errors.h"
#include "triplescore/profession.h"

namespace triplescore {

// Raw inputs. Empty means "not given".
struct InputPaths {
  std::string corpus;             // annotated wiki sentences
  std::string persons;            // one name per line
  std::string profession_kb;
  std::string nationality_kb;
  std::string profession_train;
  std::string nationality_train;
  std::string professions;        // one value per line
  std::string nationalities;      // one value per line
  std::string stopwords;
  std::string vectors;            // pretrained vectors for build-mapping
  std::string mapping_overrides;  // static country<TAB>demonym file
  std::string documents;          // per-person document directory
  std::string query;              // pairs to predict
  std::string gold;               // scored pairs for evaluate
};

// Intermediate artifacts. Empty means the default name under output_dir.
struct ArtifactPaths {
  std::string tokens;
  std::string model;
  std::string mapping;
  std::string profession_state;
  std::string nationality_state;
  std::string predictions;
  std::string report;
};

struct PipelineConfig {
  InputPaths inputs;
  ArtifactPaths artifacts;
  std::string output_dir = "out";

  EmbeddingConfig embedding;
  PropagationConfig propagation;
  double split_fraction = 0.7;
  bool apply_truncation = false;
  int default_score = 2;
  int similar_professions = 5;
  std::string anchor_country = "united_states_of_america";
  std::string anchor_demonym = "american";

  // Throws ConfigError.
  void Validate() const;

  std::string TokensPath() const;
  std::string StatsPath() const;
  std::string ModelPath() const;
  std::string MappingPath() const;
  std::string ProfessionStatePath() const;
  std::string ProfessionHeldOutPath() const;
  std::string NationalityStatePath() const;
  std::string NationalityAbsentPath() const;
  // Default depends on the relation being predicted.
  std::string PredictionsPath(const std::string &relation) const;
  std::string ReportPath() const;
};

// An intermediate file is missing; names the subcommand that writes it.
class MissingArtifactError : public ConfigError {
 public:
  MissingArtifactError(const std::string &path, const std::string &producer)
      : ConfigError("missing " + path + "; run `" + producer + "` first") {}
};

// Each stage reads its inputs, writes its artifacts and a short summary to
// `log`. Inputs that are named but do not exist raise ConfigError.
void RunPreprocess(const PipelineConfig &config, std::ostream &log);
void RunTrainEmbeddings(const PipelineConfig &config, std::ostream &log);
void RunBuildMapping(const PipelineConfig &config, std::ostream &log);
void RunLearnProfession(const PipelineConfig &config, std::ostream &log);
void RunPredictProfession(const PipelineConfig &config, std::ostream &log);
void RunLearnNationality(const PipelineConfig &config, std::ostream &log);
void RunPredictNationality(const PipelineConfig &config, std::ostream &log);
// Prints raw and 2-5-truncated metrics and writes them to the report file.
void RunEvaluate(const PipelineConfig &config, std::ostream &log);

}  // namespace triplescore

#endif  // TRIPLESCORE_PIPELINE_H_
