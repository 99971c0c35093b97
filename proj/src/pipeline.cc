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

#include "triplescore/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include "triplescore/corpus.h"
#include "triplescore/metrics.h"
#include "triplescore/nationality.h"
#include "triplescore/triples.h"

namespace triplescore {
namespace {

namespace fs = std::filesystem;

bool Exists(const std::string &path) {
  std::error_code ec;
  return !path.empty() && fs::exists(path, ec);
}

// A raw input that the stage cannot run without.
std::string RequireInput(const std::string &path, const char *flag) {
  if (path.empty()) {
    throw ConfigError(std::string("missing required input --") + flag);
  }
  if (!Exists(path)) {
    throw ConfigError(std::string("--") + flag + " " + path + " does not exist");
  }
  return path;
}

// A raw input that may be omitted but must exist when given.
bool OptionalInput(const std::string &path, const char *flag) {
  if (path.empty()) return false;
  RequireInput(path, flag);
  return true;
}

std::string RequireArtifact(const std::string &path,
                            const char *producer) {
  if (!Exists(path)) throw MissingArtifactError(path, producer);
  return path;
}

void EnsureOutputDir(const std::string &path) {
  fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string());
}

std::string Default(const std::string &configured, const std::string &dir,
                    const std::string &name) {
  if (!configured.empty()) return configured;
  return (fs::path(dir) / name).string();
}

std::vector<std::string> OptionalValueList(const std::string &path,
                                           const char *flag) {
  if (!OptionalInput(path, flag)) return {};
  return ReadValueList(path);
}

// Restricts nearest-neighbor candidates to the listed tokens; no filter
// when the list is empty.
CandidateFilter MembershipFilter(const EmbeddingModel &model,
                                 const std::vector<std::string> &tokens) {
  if (tokens.empty()) return {};
  auto allowed = std::make_shared<std::vector<bool>>(model.vocab().size(), false);
  for (const std::string &token : tokens) {
    if (auto index = model.vocab().Find(token)) (*allowed)[*index] = true;
  }
  return [allowed](int index) { return (*allowed)[index]; };
}

PreprocessConfig BasePreprocessConfig(const PipelineConfig &config) {
  PreprocessConfig pre;
  if (OptionalInput(config.inputs.stopwords, "stopwords")) {
    pre.stopwords = LoadStopwords(config.inputs.stopwords);
  }
  return pre;
}

std::map<std::pair<std::string, std::string>, int> IndexScored(
    const std::vector<Triple> &rows, const std::string &path) {
  std::map<std::pair<std::string, std::string>, int> index;
  for (const Triple &row : rows) {
    if (!index.emplace(std::make_pair(row.person, row.value), *row.score).second) {
      throw ParseError(path + ": duplicate row " + row.person + "\t" + row.value);
    }
  }
  return index;
}

void WritePredictions(const std::vector<Triple> &predictions,
                      const std::string &path) {
  EnsureOutputDir(path);
  WriteFile(path, FormatScoredTriples(predictions));
}

}  // namespace

void PipelineConfig::Validate() const {
  embedding.Validate();
  propagation.Validate();
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ConfigError("split_fraction must be in (0, 1)");
  }
  if (default_score < kMinScore || default_score > kMaxScore) {
    throw ConfigError("default_score must be in [0, 7]");
  }
  if (similar_professions < 1) {
    throw ConfigError("similar_professions must be >= 1");
  }
  if (output_dir.empty()) throw ConfigError("output directory must be set");
}

std::string PipelineConfig::TokensPath() const {
  return Default(artifacts.tokens, output_dir, "corpus.tok");
}
std::string PipelineConfig::StatsPath() const {
  return TokensPath() + ".stats";
}
std::string PipelineConfig::ModelPath() const {
  return Default(artifacts.model, output_dir, "model.vec");
}
std::string PipelineConfig::MappingPath() const {
  return Default(artifacts.mapping, output_dir, "mapping.tsv");
}
std::string PipelineConfig::ProfessionStatePath() const {
  return Default(artifacts.profession_state, output_dir, "profession.state");
}
std::string PipelineConfig::ProfessionHeldOutPath() const {
  return (fs::path(output_dir) / "profession.heldout").string();
}
std::string PipelineConfig::NationalityStatePath() const {
  return Default(artifacts.nationality_state, output_dir, "nationality.state");
}
std::string PipelineConfig::NationalityAbsentPath() const {
  return NationalityStatePath() + ".absent";
}
std::string PipelineConfig::PredictionsPath(const std::string &relation) const {
  return Default(artifacts.predictions, output_dir, relation + ".predictions");
}
std::string PipelineConfig::ReportPath() const {
  return Default(artifacts.report, output_dir, "report.txt");
}

void RunPreprocess(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  const std::string corpus_path = RequireInput(config.inputs.corpus, "corpus");
  PreprocessConfig pre = BasePreprocessConfig(config);

  if (Exists(config.MappingPath())) {
    pre.nationality_mapping = NationalityMapping::Load(config.MappingPath());
  } else if (!config.artifacts.mapping.empty()) {
    throw MissingArtifactError(config.MappingPath(), "build-mapping");
  } else {
    log << "note: no nationality mapping at " << config.MappingPath()
        << "; demonyms are not injected\n";
  }
  for (const char *flag : {"professions", "nationalities"}) {
    const std::string &path = std::string(flag) == "professions"
                                  ? config.inputs.professions
                                  : config.inputs.nationalities;
    for (auto &term : OptionalValueList(path, flag)) {
      pre.multiword_terms.push_back(std::move(term));
    }
  }
  for (const auto &[country, demonym] : pre.nationality_mapping.pairs()) {
    pre.multiword_terms.push_back(country);
    pre.multiword_terms.push_back(demonym);
  }
  Preprocessor preprocessor(std::move(pre));

  std::ifstream in(corpus_path);
  if (!in) throw IoError("cannot open " + corpus_path);
  const std::string tokens_path = config.TokensPath();
  EnsureOutputDir(tokens_path);
  std::ofstream out(tokens_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + tokens_path);
  CorpusStats stats =
      PreprocessCorpus(in, preprocessor, [&out](const TokenSentence &sentence) {
        out << Join(sentence.tokens, " ") << '\n';
      });
  out.close();
  if (!out) throw IoError("error writing " + tokens_path);
  WriteFile(config.StatsPath(), stats.ToString());
  log << "preprocess: " << stats.sentences << " sentences from "
      << stats.lines_read << " lines (" << stats.dropped << " dropped, "
      << stats.malformed << " malformed) -> " << tokens_path << '\n';
}

void RunTrainEmbeddings(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  const std::string tokens = RequireArtifact(config.TokensPath(), "preprocess");
  TrainingReport report;
  EmbeddingModel model = TrainCbow(ReadTokenCorpus(tokens), config.embedding, &report);
  const std::string path = config.ModelPath();
  EnsureOutputDir(path);
  model.Save(path);
  log << "train-embeddings: " << model.vocab().size() << " words, dim "
      << model.dim() << ", " << report.epoch_mean_loss.size() << " epochs";
  if (!report.epoch_mean_loss.empty()) {
    log << ", loss " << report.epoch_mean_loss.front() << " -> "
        << report.epoch_mean_loss.back();
  }
  log << " -> " << path << '\n';
}

void RunBuildMapping(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  std::vector<std::string> countries =
      ReadValueList(RequireInput(config.inputs.nationalities, "nationalities"));
  NationalityMapping overrides;
  if (OptionalInput(config.inputs.mapping_overrides, "mapping-overrides")) {
    overrides = NationalityMapping::Load(config.inputs.mapping_overrides);
  }
  EmbeddingModel vectors;
  if (OptionalInput(config.inputs.vectors, "vectors")) {
    vectors = EmbeddingModel::Load(config.inputs.vectors);
  } else if (overrides.empty()) {
    throw ConfigError("build-mapping needs --vectors or --mapping-overrides");
  }
  MappingResult result = BuildMapping(countries, vectors, config.anchor_country,
                                      config.anchor_demonym, overrides);
  const std::string path = config.MappingPath();
  EnsureOutputDir(path);
  result.mapping.Save(path);
  log << "build-mapping: " << result.mapping.size() << " countries ("
      << result.from_overrides << " from overrides, " << result.from_analogy
      << " by analogy), " << result.unmapped.size() << " unmapped -> " << path
      << '\n';
  for (const std::string &country : result.unmapped) {
    log << "warning: no demonym for " << country << '\n';
  }
}

void RunLearnProfession(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  std::vector<Triple> train =
      ReadTrainFile(RequireInput(config.inputs.profession_train, "profession-train"));
  EmbeddingModel model =
      EmbeddingModel::Load(RequireArtifact(config.ModelPath(), "train-embeddings"));
  CandidateFilter persons =
      MembershipFilter(model, OptionalValueList(config.inputs.persons, "persons"));

  LearnResult learned =
      Learn(train, model, config.propagation, config.split_fraction, persons);
  const std::string path = config.ProfessionStatePath();
  EnsureOutputDir(path);
  learned.state.Save(path);
  TripleSplit split = SplitTriples(train, config.split_fraction);
  WriteFile(config.ProfessionHeldOutPath(), FormatScoredTriples(split.tail));

  log << "learn-profession: seeded " << split.head.size() << " triples, "
      << learned.iterations << " iterations, persons";
  for (std::size_t n : learned.person_counts) log << ' ' << n;
  log << " -> " << path << '\n';
  if (!learned.skipped.empty()) {
    log << "warning: " << learned.skipped.size()
        << " persons have no embedding and were not propagated\n";
  }
}

void RunPredictProfession(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  KnowledgeState state = KnowledgeState::Load(
      RequireArtifact(config.ProfessionStatePath(), "learn-profession"));
  EmbeddingModel model =
      EmbeddingModel::Load(RequireArtifact(config.ModelPath(), "train-embeddings"));
  std::vector<Triple> query =
      config.inputs.query.empty()
          ? ReadQueryFile(
                RequireArtifact(config.ProfessionHeldOutPath(), "learn-profession"))
          : ReadQueryFile(RequireInput(config.inputs.query, "query"));

  PredictionOptions options;
  options.default_score = config.default_score;
  options.similar_professions = config.similar_professions;
  options.neighbor_filter =
      MembershipFilter(model, OptionalValueList(config.inputs.persons, "persons"));
  options.profession_filter = MembershipFilter(
      model, OptionalValueList(config.inputs.professions, "professions"));

  std::map<PredictionSource, std::size_t> sources;
  for (Triple &row : query) {
    ProfessionPrediction prediction = PredictProfession(
        row.person, row.value, state, model, config.propagation, options);
    ++sources[prediction.source];
    row.score = config.apply_truncation ? Truncate2To5(prediction.score)
                                        : prediction.score;
  }
  const std::string path = config.PredictionsPath("profession");
  WritePredictions(query, path);
  log << "predict-profession: " << query.size() << " pairs (state "
      << sources[PredictionSource::kState] << ", neighbors "
      << sources[PredictionSource::kNeighbors] << ", similar professions "
      << sources[PredictionSource::kSimilarProfessions] << ", default "
      << sources[PredictionSource::kDefault] << ") -> " << path << '\n';
}

void RunLearnNationality(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  const std::string documents = RequireInput(config.inputs.documents, "documents");
  std::vector<std::string> countries =
      ReadValueList(RequireInput(config.inputs.nationalities, "nationalities"));
  NationalityMapping mapping =
      NationalityMapping::Load(RequireArtifact(config.MappingPath(), "build-mapping"));

  std::vector<std::string> persons;
  if (OptionalInput(config.inputs.nationality_kb, "nationality-kb")) {
    for (const Triple &row : ReadKbFile(config.inputs.nationality_kb)) {
      persons.push_back(row.person);
    }
  } else if (OptionalInput(config.inputs.nationality_train, "nationality-train")) {
    for (const Triple &row : ReadTrainFile(config.inputs.nationality_train)) {
      persons.push_back(row.person);
    }
  } else if (OptionalInput(config.inputs.persons, "persons")) {
    persons = ReadValueList(config.inputs.persons);
  } else {
    throw ConfigError(
        "learn-nationality needs --nationality-kb, --nationality-train or "
        "--persons");
  }

  OccurrenceCounter counter(countries, mapping, BasePreprocessConfig(config));
  DirectoryDocumentProvider provider(documents);
  NationalityLearnResult learned = LearnNationalities(persons, provider, counter);

  const std::string path = config.NationalityStatePath();
  EnsureOutputDir(path);
  SaveNationalityTables(learned.tables, path);
  std::vector<std::string> absent = learned.absent;
  std::sort(absent.begin(), absent.end());
  WriteFile(config.NationalityAbsentPath(),
            absent.empty() ? std::string() : Join(absent, "\n") + "\n");
  log << "learn-nationality: " << learned.tables.size() << " persons scored, "
      << learned.absent.size() << " without document (" << learned.read_failures
      << " read failures) -> " << path << '\n';
}

void RunPredictNationality(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  NationalityTables learned = LoadNationalityTables(
      RequireArtifact(config.NationalityStatePath(), "learn-nationality"));
  EmbeddingModel model =
      EmbeddingModel::Load(RequireArtifact(config.ModelPath(), "train-embeddings"));
  std::vector<std::string> nationalities =
      ReadValueList(RequireInput(config.inputs.nationalities, "nationalities"));
  std::vector<Triple> query;
  if (!config.inputs.query.empty()) {
    query = ReadQueryFile(RequireInput(config.inputs.query, "query"));
  } else if (OptionalInput(config.inputs.nationality_kb, "nationality-kb")) {
    query = ReadQueryFile(config.inputs.nationality_kb);
  } else {
    throw ConfigError("predict-nationality needs --query or --nationality-kb");
  }

  std::map<NationalitySource, std::size_t> sources;
  for (Triple &row : query) {
    NationalityPrediction prediction =
        PredictNationality(row.person, row.value, learned, model, nationalities);
    ++sources[prediction.source];
    row.score = config.apply_truncation ? Truncate2To5(prediction.score)
                                        : prediction.score;
  }
  const std::string path = config.PredictionsPath("nationality");
  WritePredictions(query, path);
  log << "predict-nationality: " << query.size() << " pairs (learned "
      << sources[NationalitySource::kLearned] << ", embedding "
      << sources[NationalitySource::kEmbedding] << ", unknown "
      << sources[NationalitySource::kUnknown] << ") -> " << path << '\n';
  if (sources[NationalitySource::kUnknown] > 0) {
    log << "warning: " << sources[NationalitySource::kUnknown]
        << " pairs scored 0 for lack of a document and a usable embedding\n";
  }
}

void RunEvaluate(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  const std::string predictions_path = config.PredictionsPath("profession");
  RequireArtifact(predictions_path, "predict-profession` or `predict-nationality");
  std::string gold_path = config.inputs.gold;
  if (gold_path.empty()) {
    gold_path = RequireArtifact(config.ProfessionHeldOutPath(), "learn-profession");
  } else {
    RequireInput(gold_path, "gold");
  }

  auto predicted = IndexScored(ReadTrainFile(predictions_path), predictions_path);
  std::vector<ScoredPair> raw;
  std::vector<ScoredPair> truncated;
  for (const Triple &gold : ReadTrainFile(gold_path)) {
    auto it = predicted.find({gold.person, gold.value});
    if (it == predicted.end()) {
      throw ParseError("no prediction for " + gold.person + "\t" + gold.value +
                       " in " + predictions_path);
    }
    ScoredPair pair{gold.person, gold.value, static_cast<double>(it->second),
                    static_cast<double>(*gold.score)};
    raw.push_back(pair);
    pair.predicted = Truncate2To5(it->second);
    truncated.push_back(std::move(pair));
  }
  if (raw.empty()) throw ConfigError("gold file " + gold_path + " is empty");

  std::string report = "mode=raw " + Evaluate(raw).ToString() + "\n" +
                       "mode=truncated_2_5 " + Evaluate(truncated).ToString() +
                       "\n";
  const std::string path = config.ReportPath();
  EnsureOutputDir(path);
  WriteFile(path, report);
  log << report;
}

}  // namespace triplescore
