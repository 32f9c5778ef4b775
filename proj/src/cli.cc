// Copyright 2026 The TDPR Authors
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

#include "tdpr/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdpr/adapter.h"
#include "tdpr/config.h"
#include "tdpr/corpus.h"
#include "tdpr/embedding.h"
#include "tdpr/error.h"
#include "tdpr/ingest.h"
#include "tdpr/llm_client.h"
#include "tdpr/mcq.h"
#include "tdpr/metrics.h"
#include "tdpr/prompts.h"
#include "tdpr/qa_generation.h"
#include "tdpr/rag.h"
#include "tdpr/retriever.h"
#include "tdpr/similarity.h"
#include "tdpr/sparse_index.h"
#include "tdpr/trainer.h"
#include "tdpr/vector_index.h"

namespace tdpr {
namespace {

namespace fs = std::filesystem;

inline constexpr char kSparseIndexFile[] = "corpus.sparse.idx";
inline constexpr char kPassageIndexFile[] = "corpus.passages.dense.idx";
inline constexpr char kDocumentIndexFile[] = "corpus.documents.dense.idx";

// Every setting of a run. Flags and config keys share names: config key
// `batch_size` in any section sets `--batch-size`.
struct RunConfig {
  std::string out = "out";
  std::string corpus;
  std::string index_dir;
  std::string provider = "hash";
  std::string endpoint;
  int dim = 256;
  int max_in_flight = 4;
  int embed_batch = 64;
  std::string llm = "mock";
  std::string llm_endpoint;
  std::string method = "dhr";
  int k = 10;
  int d = 5;
  std::string adapter;
  uint64_t seed = 42;
  double lr = 0.5;
  int epochs = 10;
  int batch_size = 32;
  double scale = 20.0;
  std::string input;
  std::string output;
  int token_limit = kPassageTokenLimit;
  int min_tokens = 64;
  std::string qa;
  std::string mcq;
  bool zero_shot = false;
  int bins = 20;
  int max_context_tokens = 4096;
  std::vector<std::string> docs;
  int max_q = 5;
  double test_fraction = 0.3;
  std::string question;

  std::string CorpusPath() const {
    return corpus.empty() ? (fs::path(out) / "corpus.jsonl").string() : corpus;
  }
  fs::path IndexDir() const { return index_dir.empty() ? out : index_dir; }
  EmbedOptions Embedding() const {
    EmbedOptions o;
    o.batch_size = static_cast<size_t>(embed_batch);
    o.max_in_flight = max_in_flight;
    return o;
  }
};

void AddProviderOptions(CLI::App* app, RunConfig& c) {
  app->add_option("--provider", c.provider, "Embedding provider: hash|http")
      ->check(CLI::IsMember({"hash", "http"}));
  app->add_option("--endpoint", c.endpoint, "Embedding service URL");
  app->add_option("--dim", c.dim, "Embedding dimension");
  app->add_option("--max-in-flight", c.max_in_flight,
                  "Concurrent provider requests");
  app->add_option("--embed-batch", c.embed_batch, "Texts per provider call");
  app->add_option("--adapter", c.adapter, "Adapter file");
}

void AddLlmOptions(CLI::App* app, RunConfig& c) {
  app->add_option("--llm", c.llm, "LLM client: mock|http")
      ->check(CLI::IsMember({"mock", "http"}));
  app->add_option("--llm-endpoint", c.llm_endpoint, "LLM service URL");
}

void AddRetrieverOptions(CLI::App* app, RunConfig& c) {
  app->add_option("--method", c.method, "Retriever: bm25|dpr|dhr");
  app->add_option("-k,--k", c.k, "Passages to retrieve");
  app->add_option("--d", c.d, "Documents kept by DHR stage one");
  app->add_option("--index-dir", c.index_dir,
                  "Directory holding the index files (default: --out)");
}

void AddCommon(CLI::App* app, RunConfig& c) {
  app->add_option("--out", c.out, "Artifact directory");
  app->add_option("--corpus", c.corpus,
                  "Corpus JSONL (default: <out>/corpus.jsonl)");
  app->add_option("--seed", c.seed, "Seed for every random choice");
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const RunConfig& c) {
  if (c.provider == "http") {
    if (c.endpoint.empty()) throw UsageError("--endpoint is required for http");
    return std::make_unique<HttpEmbeddingProvider>(c.endpoint, c.dim);
  }
  return std::make_unique<HashEmbedder>(c.dim);
}

std::unique_ptr<LLMClient> MakeLlm(const RunConfig& c) {
  return MakeLLMClient(c.llm, c.llm_endpoint);
}

std::optional<AdapterMatrix> LoadAdapterFor(const RunConfig& c,
                                            const EmbeddingProvider& provider) {
  if (c.adapter.empty()) return std::nullopt;
  AdapterMatrix a = AdapterMatrix::Load(c.adapter);
  const auto dim = static_cast<size_t>(provider.dim());
  if (a.rows() != dim || a.cols() != dim) {
    throw DataError("adapter '" + c.adapter + "' is " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " but the provider dimension is " + std::to_string(dim));
  }
  return a;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw DataError("cannot create directory '" + dir.string() +
                    "': " + ec.message());
  }
}

void WriteFile(const fs::path& path, const std::string& content) {
  EnsureDir(path.has_parent_path() ? path.parent_path() : fs::path("."));
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Indexes and the objects a Retriever points into.
struct LoadedRetriever {
  std::optional<InvertedIndex> sparse;
  std::optional<VectorIndex> passages;
  std::optional<VectorIndex> documents;
  std::unique_ptr<EmbeddingProvider> provider;
  std::optional<AdapterMatrix> adapter;
  std::unique_ptr<Retriever> retriever;
};

void CheckDim(const VectorIndex& index, const EmbeddingProvider& provider,
              const fs::path& path) {
  if (index.dim() != static_cast<size_t>(provider.dim())) {
    throw DataError("index '" + path.string() + "' has dimension " +
                    std::to_string(index.dim()) +
                    " but the provider dimension is " +
                    std::to_string(provider.dim()));
  }
}

std::unique_ptr<LoadedRetriever> LoadRetriever(const RunConfig& c) {
  RetrieverConfig rc;
  rc.method = ParseRetrieverMethod(c.method);
  rc.k = c.k;
  rc.d = c.d;
  if (rc.k < 1) throw UsageError("--k must be >= 1");
  if (rc.method == RetrieverMethod::kDhr && rc.d < 1) {
    throw UsageError("--d must be >= 1");
  }
  auto r = std::make_unique<LoadedRetriever>();
  const fs::path dir = c.IndexDir();
  if (rc.method == RetrieverMethod::kBm25) {
    r->sparse = InvertedIndex::Load((dir / kSparseIndexFile).string());
  } else {
    r->provider = MakeProvider(c);
    r->adapter = LoadAdapterFor(c, *r->provider);
    const fs::path pp = dir / kPassageIndexFile;
    r->passages = VectorIndex::Load(pp.string());
    CheckDim(*r->passages, *r->provider, pp);
    if (rc.method == RetrieverMethod::kDhr) {
      const fs::path dp = dir / kDocumentIndexFile;
      r->documents = VectorIndex::Load(dp.string());
      CheckDim(*r->documents, *r->provider, dp);
    }
  }
  r->retriever = std::make_unique<Retriever>(
      rc, r->sparse ? &*r->sparse : nullptr,
      r->passages ? &*r->passages : nullptr,
      r->documents ? &*r->documents : nullptr, r->provider.get(),
      r->adapter ? &*r->adapter : nullptr);
  return r;
}

std::string ResultTable(const std::vector<RetrievalResult>& results) {
  std::ostringstream os;
  char line[64];
  os << "rank  score       passage_id  doc_id\n";
  for (const auto& r : results) {
    std::snprintf(line, sizeof(line), "%4d  %10.6f  ", r.rank, r.score);
    os << line << r.passage_id << "  " << r.doc_id << '\n';
  }
  if (results.empty()) os << "(no results)\n";
  return os.str();
}

int CmdIngest(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.input.empty()) throw UsageError("ingest needs --input");
  LoadOptions lo;
  lo.token_limit = 0;
  const Corpus raw = LoadCorpus(c.input, lo);
  auto llm = MakeLlm(c);
  IngestOptions io;
  io.token_limit = c.token_limit;
  io.min_tokens = c.min_tokens;
  IngestReport report;
  const Corpus corpus = IngestCorpus(raw, *llm, io, &report);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  const fs::path path =
      c.output.empty() ? fs::path(c.out) / "corpus.jsonl" : fs::path(c.output);
  std::ostringstream os;
  WriteCorpus(corpus, os);
  WriteFile(path, os.str());
  out << FormatStats(ComputeCorpusStats(corpus));
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

int CmdIndex(const RunConfig& c, std::ostream& out) {
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  auto provider = MakeProvider(c);
  const auto adapter = LoadAdapterFor(c, *provider);
  const AdapterMatrix* a = adapter ? &*adapter : nullptr;
  const fs::path dir = c.out;
  EnsureDir(dir);

  const InvertedIndex sparse = InvertedIndex::Build(corpus.passages());
  sparse.Save((dir / kSparseIndexFile).string());
  const VectorIndex passages =
      BuildPassageIndex(corpus, *provider, a, c.Embedding());
  passages.Save((dir / kPassageIndexFile).string());
  const VectorIndex documents =
      BuildDocumentIndex(corpus, *provider, a, c.Embedding());
  documents.Save((dir / kDocumentIndexFile).string());

  out << "sparse: " << sparse.n_passages() << " passages, "
      << sparse.vocabulary_size() << " terms\n"
      << "passage index: " << passages.size() << " x " << passages.dim()
      << '\n'
      << "document index: " << documents.size() << " x " << documents.dim()
      << '\n';
  return kExitOk;
}

int CmdSearch(const RunConfig& c, std::ostream& out) {
  if (c.question.empty()) throw UsageError("search needs a question");
  const auto r = LoadRetriever(c);
  out << ResultTable(r->retriever->Retrieve(c.question));
  return kExitOk;
}

int CmdAsk(const RunConfig& c, std::ostream& out) {
  if (c.question.empty()) throw UsageError("ask needs a question");
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  const auto r = LoadRetriever(c);
  const auto results = r->retriever->Retrieve(c.question);
  out << ResultTable(results);
  const AssembledContext ctx =
      AssembleContext(ResolveTables(results, corpus), c.max_context_tokens);
  auto llm = MakeLlm(c);
  const std::string answer =
      llm->Generate(BuildOpenAnswerPrompt(c.question, ctx.text), 256);
  out << "answer: " << answer << '\n';
  return kExitOk;
}

int CmdEvalRetriever(const RunConfig& c, std::ostream& out) {
  if (c.qa.empty()) throw UsageError("eval-retriever needs --qa");
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  const auto pairs = LoadQaPairs(c.qa, &corpus);
  const auto r = LoadRetriever(c);
  const std::string method(RetrieverMethodName(r->retriever->config().method));

  std::vector<RankOutcome> outcomes;
  std::ostringstream log;
  std::vector<std::string> questions;
  std::vector<std::string> gold_texts;
  for (const auto& p : pairs) {
    if (p.split != Split::kTest) continue;
    RunLogEntry entry;
    entry.query_id = p.question_id;
    entry.method = method;
    entry.k = r->retriever->config().k;
    if (r->retriever->config().method == RetrieverMethod::kDhr) {
      entry.d = r->retriever->config().d;
    }
    entry.results = r->retriever->Retrieve(p.question);
    WriteRunLogEntry(entry, log);
    outcomes.push_back(
        MakeRankOutcome(p.question_id, p.passage_id, entry.results));
    questions.push_back(p.question);
    gold_texts.push_back(PassageRepresentation(corpus.passage(p.passage_id)));
  }
  if (outcomes.empty()) throw DataError("no test-split pairs in '" + c.qa + "'");
  const EvalReport report = EvaluateOutcomes(outcomes);
  const fs::path dir = c.out;
  WriteFile(dir / ("eval_retriever." + method + ".json"),
            EvalReportJson(report) + "\n");
  WriteFile(dir / ("run_log." + method + ".jsonl"), log.str());
  if (r->provider) {
    const auto hist = SimilarityDistribution(
        questions, gold_texts, *r->provider,
        r->adapter ? &*r->adapter : nullptr, c.bins, method);
    WriteFile(dir / ("similarity." + method + ".csv"), HistogramCsv(hist));
  }
  out << FormatEvalReport(report, method);
  return kExitOk;
}

int CmdTrainAdapter(const RunConfig& c, std::ostream& out) {
  if (c.qa.empty()) throw UsageError("train-adapter needs --qa");
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  const auto pairs = LoadQaPairs(c.qa, &corpus);
  const auto train = TrainingPairsFor(pairs, Split::kTrain);
  auto provider = MakeProvider(c);
  TrainConfig tc;
  tc.learning_rate = c.lr;
  tc.epochs = c.epochs;
  tc.batch_size = c.batch_size;
  tc.scale = c.scale;
  tc.seed = c.seed;
  const TrainResult result =
      TrainAdapter(train, corpus, *provider, tc, c.Embedding());
  const fs::path dir = c.out;
  EnsureDir(dir);
  result.adapter.Save((dir / "adapter.bin").string());
  std::string csv = "epoch,loss\n";
  for (size_t i = 0; i < result.loss_history.size(); ++i) {
    csv += std::to_string(i + 1) + "," +
           FormatDouble(result.loss_history[i]) + "\n";
  }
  WriteFile(dir / "loss_history.csv", csv);
  out << "trained on " << train.size() << " pairs, " << tc.epochs
      << " epochs\n";
  if (!result.loss_history.empty()) {
    out << "loss: " << FormatDouble(result.loss_history.front()) << " -> "
        << FormatDouble(result.loss_history.back()) << '\n';
  }
  out << "wrote " << (dir / "adapter.bin").string() << '\n';
  return kExitOk;
}

nlohmann::ordered_json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

int CmdEvalQa(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.mcq.empty()) throw UsageError("eval-qa needs --mcq");
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  const auto items = LoadMcqItems(c.mcq);
  std::unique_ptr<LoadedRetriever> r;
  if (!c.zero_shot) r = LoadRetriever(c);
  auto llm = MakeLlm(c);
  AnswerOptions ao;
  ao.k = c.k;
  ao.max_context_tokens = c.max_context_tokens;

  std::vector<McqPrediction> predictions;
  std::vector<McqResult> graded;
  std::vector<RankOutcome> outcomes;
  std::map<std::string, std::string> difficulty;
  std::map<std::string, size_t> status_counts;
  std::ostringstream answers;
  std::ostringstream log;
  std::string method = "zero-shot";
  for (const auto& item : items) {
    McqAnswer a = AnswerMcq(item, r ? r->retriever.get() : nullptr, corpus,
                            *llm, ao);
    method = a.log.method;
    ++status_counts[a.status];
    if (a.status != "ok") {
      err << "warning: " << item.item_id << ": " << a.status << '\n';
    }
    predictions.push_back({item.item_id, a.predicted_index});
    const bool correct =
        a.predicted_index && *a.predicted_index == item.answer_index;
    WriteRunLogEntry(a.log, log);
    nlohmann::ordered_json j;
    j["item_id"] = item.item_id;
    j["predicted_index"] = a.predicted_index
                               ? nlohmann::ordered_json(*a.predicted_index)
                               : nlohmann::ordered_json(nullptr);
    j["correct"] = correct;
    j["status"] = a.status;
    answers << j.dump() << '\n';
    if (item.gold_passage_id) {
      outcomes.push_back(
          MakeRankOutcome(item.item_id, *item.gold_passage_id, a.log.results));
      graded.push_back({item.item_id, correct});
      difficulty[item.item_id] = std::string(DifficultyName(item.difficulty));
    }
  }
  const McqGrade grade = GradeMcq(predictions, items);

  nlohmann::ordered_json report;
  report["method"] = method;
  report["k"] = c.k;
  report["n_items"] = grade.n_items;
  report["n_correct"] = grade.n_correct;
  nlohmann::ordered_json acc;
  acc["overall"] = grade.overall;
  for (Difficulty d :
       {Difficulty::kEasy, Difficulty::kIntermediate, Difficulty::kHard}) {
    const auto it = grade.per_difficulty.find(d);
    acc[std::string(DifficultyName(d))] =
        it == grade.per_difficulty.end() ? nlohmann::ordered_json(nullptr)
                                         : OptionalJson(it->second);
  }
  report["accuracy"] = acc;
  nlohmann::ordered_json statuses;
  for (const auto& [s, n] : status_counts) statuses[s] = n;
  report["status_counts"] = statuses;
  std::optional<GroundingReport> grounding;
  if (!outcomes.empty()) {
    const EvalReport retrieval =
        EvaluateOutcomesByDifficulty(outcomes, difficulty);
    report["retrieval"] = nlohmann::ordered_json::parse(EvalReportJson(retrieval));
    grounding = BuildGroundingReport(graded, outcomes, c.k);
    nlohmann::ordered_json g;
    g["k"] = c.k;
    g["correct_grounded"] = grounding->correct_grounded;
    g["correct_ungrounded"] = grounding->correct_ungrounded;
    g["incorrect_grounded"] = grounding->incorrect_grounded;
    g["incorrect_ungrounded"] = grounding->incorrect_ungrounded;
    report["grounding"] = g;
  } else {
    report["retrieval"] = nullptr;
    report["grounding"] = nullptr;
  }
  const fs::path dir = c.out;
  WriteFile(dir / "eval_qa.json", report.dump(2) + "\n");
  WriteFile(dir / "answers.jsonl", answers.str());
  WriteFile(dir / "run_log.qa.jsonl", log.str());

  out << "method: " << method << '\n'
      << "accuracy: " << FormatDouble(grade.overall) << " (" << grade.n_correct
      << "/" << grade.n_items << ")\n";
  if (grounding) {
    out << "grounding@" << c.k << ": correct_grounded "
        << grounding->correct_grounded << ", correct_ungrounded "
        << grounding->correct_ungrounded << ", incorrect_grounded "
        << grounding->incorrect_grounded << ", incorrect_ungrounded "
        << grounding->incorrect_ungrounded << '\n';
  }
  return kExitOk;
}

int CmdGenQa(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Corpus corpus = LoadCorpus(c.CorpusPath());
  for (const auto& d : c.docs) corpus.document(d);  // unknown id: DataError
  const std::set<std::string> selected(c.docs.begin(), c.docs.end());
  auto llm = MakeLlm(c);
  QaGenerationOptions qo;
  qo.max_questions = c.max_q;
  qo.test_fraction = c.test_fraction;
  qo.seed = c.seed;
  std::vector<QAPair> generated;
  for (const auto& p : corpus.passages()) {
    if (p.kind == PassageKind::kTableSummary) continue;
    if (!selected.empty() && !selected.contains(p.doc_id)) continue;
    QaGenerationResult r = GenerateQaPairs(p, corpus, *llm, qo);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    for (auto& pair : r.pairs) generated.push_back(std::move(pair));
  }
  const auto kept = FilterQaPairs(generated, corpus);
  std::ostringstream os;
  WriteQaPairs(kept, os);
  const fs::path path = fs::path(c.out) / "qa.jsonl";
  WriteFile(path, os.str());
  size_t n_test = 0;
  for (const auto& p : kept) n_test += p.split == Split::kTest ? 1 : 0;
  out << "generated " << generated.size() << " pairs, kept " << kept.size()
      << " (" << kept.size() - n_test << " train, " << n_test << " test)\n"
      << "wrote " << path.string() << '\n';
  return kExitOk;
}

std::optional<std::string> FindConfigPath(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.starts_with("--config=")) return std::string(a.substr(9));
  }
  if (const char* env = std::getenv("TDPR_CONFIG"); env != nullptr && *env) {
    return std::string(env);
  }
  return std::nullopt;
}

// Config values become option defaults so explicit flags still win.
void ApplyConfig(CLI::App& app, const std::vector<ConfigEntry>& entries) {
  for (const auto& e : entries) {
    std::string flag = "--" + e.key;
    for (char& ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (flag == "--config") continue;
    bool known = false;
    std::vector<CLI::App*> apps = app.get_subcommands({});
    apps.push_back(&app);
    for (CLI::App* sub : apps) {
      if (CLI::Option* opt = sub->get_option_no_throw(flag)) {
        opt->default_val(e.value);
        known = true;
      }
    }
    if (!known) {
      throw UsageError("config line " + std::to_string(e.line) +
                       ": unknown key '" + e.key + "'");
    }
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  RunConfig c;
  std::string config_path;
  CLI::App app{"Retrieval, fine-tuning and RAG evaluation for technical "
               "specification corpora",
               "tdpr"};
  app.require_subcommand(1);
  app.add_option("--config", config_path,
                 "TOML-style config file (default: $TDPR_CONFIG)");

  CLI::App* ingest = app.add_subcommand(
      "ingest", "Split, aggregate and summarize a raw corpus");
  AddCommon(ingest, c);
  AddLlmOptions(ingest, c);
  ingest->add_option("--input", c.input, "Raw corpus JSONL");
  ingest->add_option("--output", c.output,
                     "Output corpus (default: <out>/corpus.jsonl)");
  ingest->add_option("--token-limit", c.token_limit, "Passage token limit");
  ingest->add_option("--min-tokens", c.min_tokens,
                     "Aggregation threshold for short passages");

  CLI::App* index = app.add_subcommand(
      "index", "Build the sparse, passage and document indexes");
  AddCommon(index, c);
  AddProviderOptions(index, c);

  CLI::App* search = app.add_subcommand("search", "Retrieve passages");
  AddCommon(search, c);
  AddProviderOptions(search, c);
  AddRetrieverOptions(search, c);
  search->add_option("question", c.question, "Question text");

  CLI::App* ask = app.add_subcommand(
      "ask", "Retrieve passages and answer with the LLM");
  AddCommon(ask, c);
  AddProviderOptions(ask, c);
  AddRetrieverOptions(ask, c);
  AddLlmOptions(ask, c);
  ask->add_option("question", c.question, "Question text");
  ask->add_option("--max-context-tokens", c.max_context_tokens,
                  "Context budget");

  CLI::App* eval_retriever = app.add_subcommand(
      "eval-retriever", "Top-K accuracy and MRR over the test split");
  AddCommon(eval_retriever, c);
  AddProviderOptions(eval_retriever, c);
  AddRetrieverOptions(eval_retriever, c);
  eval_retriever->add_option("--qa", c.qa, "QA-pair JSONL");
  eval_retriever->add_option("--bins", c.bins, "Similarity histogram bins");

  CLI::App* train = app.add_subcommand(
      "train-adapter", "Train the embedding adapter on the train split");
  AddCommon(train, c);
  AddProviderOptions(train, c);
  train->add_option("--qa", c.qa, "QA-pair JSONL");
  train->add_option("--lr", c.lr, "Learning rate");
  train->add_option("--epochs", c.epochs, "Epochs");
  train->add_option("--batch-size", c.batch_size, "Pairs per batch");
  train->add_option("--scale", c.scale, "Similarity scale");

  CLI::App* eval_qa = app.add_subcommand(
      "eval-qa", "Answer an MCQ set with retrieval and grade it");
  AddCommon(eval_qa, c);
  AddProviderOptions(eval_qa, c);
  AddRetrieverOptions(eval_qa, c);
  AddLlmOptions(eval_qa, c);
  eval_qa->add_option("--mcq", c.mcq, "MCQ JSONL");
  eval_qa->add_flag("--zero-shot", c.zero_shot, "Answer without context");
  eval_qa->add_option("--max-context-tokens", c.max_context_tokens,
                      "Context budget");

  CLI::App* gen_qa = app.add_subcommand(
      "gen-qa", "Generate and filter synthetic QA pairs");
  AddCommon(gen_qa, c);
  AddLlmOptions(gen_qa, c);
  gen_qa->add_option("--docs", c.docs, "Document ids (default: all)")
      ->delimiter(',');
  gen_qa->add_option("--max-q", c.max_q, "Questions per passage (1-5)");
  gen_qa->add_option("--test-fraction", c.test_fraction,
                     "Share of pairs stamped test");

  try {
    if (const auto path = FindConfigPath(argc, argv)) {
      ApplyConfig(app, LoadConfig(*path));
    }
    app.parse(argc, argv);
    if (ingest->parsed()) return CmdIngest(c, out, err);
    if (index->parsed()) return CmdIndex(c, out);
    if (search->parsed()) return CmdSearch(c, out);
    if (ask->parsed()) return CmdAsk(c, out);
    if (eval_retriever->parsed()) return CmdEvalRetriever(c, out);
    if (train->parsed()) return CmdTrainAdapter(c, out);
    if (eval_qa->parsed()) return CmdEvalQa(c, out, err);
    if (gen_qa->parsed()) return CmdGenQa(c, out, err);
    return kExitUsageError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const ProviderError& e) {
    err << "provider error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace tdpr
