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

// Command-line driver for the triple scoring pipeline.

#include <fmt/core.h>

#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "triplescore/errors.h"
#include "triplescore/pipeline.h"

namespace ts = triplescore;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Registers an option under its dashed flag and its underscored config key.
template <typename T>
CLI::Option *Add(CLI::App &app, const std::string &name, T &value,
                 const std::string &help) {
  std::string key = name;
  for (char &c : key) {
    if (c == '-') c = '_';
  }
  std::string names = "--" + name;
  if (key != name) names += ",--" + key;
  return app.add_option(names, value, help)->capture_default_str();
}

void AddOptions(CLI::App &app, ts::PipelineConfig &config) {
  const std::string inputs = "Inputs";
  ts::InputPaths &in = config.inputs;
  Add(app, "corpus", in.corpus, "annotated sentence file")->group(inputs);
  Add(app, "persons", in.persons, "person list, one per line")->group(inputs);
  Add(app, "profession-kb", in.profession_kb, "person<TAB>profession pairs")
      ->group(inputs);
  Add(app, "nationality-kb", in.nationality_kb, "person<TAB>nationality pairs")
      ->group(inputs);
  Add(app, "profession-train", in.profession_train, "scored profession triples")
      ->group(inputs);
  Add(app, "nationality-train", in.nationality_train,
      "scored nationality triples")
      ->group(inputs);
  Add(app, "professions", in.professions, "profession list")->group(inputs);
  Add(app, "nationalities", in.nationalities, "nationality list")->group(inputs);
  Add(app, "stopwords", in.stopwords, "stopword list")->group(inputs);
  Add(app, "vectors", in.vectors, "pretrained vectors for build-mapping")
      ->group(inputs);
  Add(app, "mapping-overrides", in.mapping_overrides,
      "country<TAB>demonym pairs applied before analogy lookup")
      ->group(inputs);
  Add(app, "documents", in.documents, "directory of per-person documents")
      ->group(inputs);
  Add(app, "query", in.query, "pairs to score")->group(inputs);
  Add(app, "gold", in.gold, "scored pairs to evaluate against")->group(inputs);

  const std::string artifacts = "Artifacts";
  ts::ArtifactPaths &out = config.artifacts;
  Add(app, "output", config.output_dir, "directory for intermediate files")
      ->group(artifacts);
  Add(app, "tokens", out.tokens, "token corpus (default OUTPUT/corpus.tok)")
      ->group(artifacts);
  Add(app, "model", out.model, "model file (default OUTPUT/model.vec)")
      ->group(artifacts);
  Add(app, "mapping", out.mapping, "mapping file (default OUTPUT/mapping.tsv)")
      ->group(artifacts);
  Add(app, "profession-state", out.profession_state,
      "default OUTPUT/profession.state")
      ->group(artifacts);
  Add(app, "nationality-state", out.nationality_state,
      "default OUTPUT/nationality.state")
      ->group(artifacts);
  Add(app, "predictions", out.predictions,
      "default OUTPUT/<relation>.predictions")
      ->group(artifacts);
  Add(app, "report", out.report, "default OUTPUT/report.txt")->group(artifacts);

  const std::string model = "Embedding";
  ts::EmbeddingConfig &e = config.embedding;
  Add(app, "dim", e.dim, "vector dimension")->group(model);
  Add(app, "negatives", e.negatives, "negative samples per target")->group(model);
  Add(app, "rho", e.rho, "subsampling threshold")->group(model);
  Add(app, "window", e.window, "context radius")->group(model);
  Add(app, "epochs", e.epochs, "training epochs")->group(model);
  Add(app, "min-count", e.min_count, "minimum word count")->group(model);
  Add(app, "learning-rate", e.initial_lr, "initial learning rate")->group(model);
  Add(app, "seed", e.seed, "random seed")->group(model);
  Add(app, "workers", e.workers, "training threads; 1 is deterministic")
      ->group(model);

  const std::string scoring = "Scoring";
  ts::PropagationConfig &p = config.propagation;
  Add(app, "topn", p.topn, "neighbors considered per person")->group(scoring);
  Add(app, "threshold", p.threshold, "minimum neighbor similarity")
      ->group(scoring);
  Add(app, "max-iterations", p.max_iterations, "propagation iteration cap")
      ->group(scoring);
  Add(app, "split-fraction", config.split_fraction,
      "leading share of the training file used for learning")
      ->group(scoring);
  Add(app, "default-score", config.default_score,
      "score when no evidence is found")
      ->group(scoring);
  Add(app, "similar-professions", config.similar_professions,
      "professions compared in the last fallback")
      ->group(scoring);
  Add(app, "anchor-country", config.anchor_country,
      "country of the analogy anchor pair")
      ->group(scoring);
  Add(app, "anchor-demonym", config.anchor_demonym,
      "demonym of the analogy anchor pair")
      ->group(scoring);
  app.add_flag("--truncate", config.apply_truncation,
               "clamp predictions to [2, 5]")
      ->group(scoring);
}

using Stage = void (*)(const ts::PipelineConfig &, std::ostream &);

int Run(Stage stage, const ts::PipelineConfig &config) {
  try {
    stage(config, std::cerr);
    return kOk;
  } catch (const ts::ConfigError &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const ts::NumericalError &e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kNumerical;
  } catch (const ts::Error &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kData;
  } catch (const std::bad_alloc &) {
    fmt::print(stderr, "error: out of memory\n");
    return kData;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Relevance scoring for person/profession and person/nationality triples"};
  app.require_subcommand(1);
  app.set_config("--config", "", "file of key = value lines");

  ts::PipelineConfig config;
  const unsigned cores = std::thread::hardware_concurrency();
  config.embedding.workers = cores == 0 ? 1 : static_cast<int>(cores);
  const std::string stopwords = TRIPLESCORE_DATA_DIR "/stopwords.txt";
  if (std::filesystem::exists(stopwords)) config.inputs.stopwords = stopwords;
  AddOptions(app, config);

  struct Command {
    const char *name;
    const char *help;
    Stage stage;
  };
  const Command commands[] = {
      {"preprocess", "tokenize the annotated corpus", ts::RunPreprocess},
      {"train-embeddings", "train CBOW vectors on the token corpus",
       ts::RunTrainEmbeddings},
      {"build-mapping", "map countries to demonyms", ts::RunBuildMapping},
      {"learn-profession", "propagate profession scores to neighbors",
       ts::RunLearnProfession},
      {"predict-profession", "score person/profession pairs",
       ts::RunPredictProfession},
      {"learn-nationality", "score nationalities from person documents",
       ts::RunLearnNationality},
      {"predict-nationality", "score person/nationality pairs",
       ts::RunPredictNationality},
      {"evaluate", "compare predictions with gold scores", ts::RunEvaluate},
  };
  Stage selected = nullptr;
  for (const Command &command : commands) {
    CLI::App *sub = app.add_subcommand(command.name, command.help);
    sub->fallthrough();
    sub->callback([&selected, &command] { selected = command.stage; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }
  return Run(selected, config);
}
