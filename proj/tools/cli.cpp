// Copyright 2026 The annotkit Authors.
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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/agreement_report.hpp"
#include "annotkit/annotation_io.hpp"
#include "annotkit/calibration.hpp"
#include "annotkit/corpus.hpp"
#include "annotkit/csv.hpp"
#include "annotkit/cost.hpp"
#include "annotkit/errors.hpp"
#include "annotkit/hash.hpp"
#include "annotkit/metrics.hpp"
#include "annotkit/mock_backend.hpp"
#include "annotkit/ols.hpp"
#include "annotkit/remote_backend.hpp"
#include "annotkit/replay_backend.hpp"
#include "annotkit/run.hpp"
#include "annotkit/temporal.hpp"

namespace annotkit::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string Thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

void WriteFile(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
}

// Identity block embedded in every report.
struct ReportMeta {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // file name, digest

  void AddInput(const fs::path& path) {
    inputs.emplace_back(path.filename().string(), FileDigest(path));
  }

  ordered_json Json() const {
    ordered_json j;
    j["tool"] = "annotkit";
    j["version"] = ANNOTKIT_VERSION;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    ordered_json in = ordered_json::array();
    for (const auto& [name, digest] : inputs) in.push_back({{"file", name}, {"digest", digest}});
    j["inputs"] = std::move(in);
    return j;
  }

  std::string MarkdownFooter() const {
    std::string s = fmt::format("\n<!-- annotkit {} | config {} | seed {}", ANNOTKIT_VERSION,
                                config_hash, seed);
    for (const auto& [name, digest] : inputs) s += fmt::format(" | {} {}", name, digest);
    return s + " -->\n";
  }
};

// Settings shared by commands that talk to a backend.
struct BackendArgs {
  std::string kind = "mock";
  std::string template_spec = "builtin:final";
  BackendConfig config;
  long long timeout_ms = 120000;
  std::string fixture;
  std::string record;
  std::string lexicon;
  double mock_corruption_rate = 0;
  double mock_half_size = 0;
  std::size_t parallelism = 1;
  std::size_t token_budget = 128000;
  double price = 0.01;
  std::string run_id;

  void Register(CLI::App* cmd) {
    cmd->add_option("--template", template_spec, "Prompt template file or builtin:<name>");
    cmd->add_option("--backend", kind, "remote | mock | replay")
        ->check(CLI::IsMember({"remote", "mock", "replay"}));
    cmd->add_option("--endpoint", config.endpoint, "Chat-completion URL");
    cmd->add_option("--model", config.model_name);
    cmd->add_option("--temperature", config.temperature)->check(CLI::Range(0.0, 2.0));
    cmd->add_option("--structured", config.structured_output, "Structured-object output mode");
    cmd->add_option("--max-retries", config.max_retries)->check(CLI::NonNegativeNumber);
    cmd->add_option("--timeout-ms", timeout_ms)->check(CLI::PositiveNumber);
    cmd->add_option("--rate-limit", config.rate_limit_rpm, "Requests per minute, 0 = off");
    cmd->add_option("--api-key-env", config.api_key_env, "Credential variable name");
    cmd->add_option("--fixture", fixture, "Replay fixture file");
    cmd->add_option("--record", record, "Write every response to this fixture file");
    cmd->add_option("--lexicon", lexicon, "Mock lexicon file (<CODE>\\t<term>)");
    cmd->add_option("--mock-corruption-rate", mock_corruption_rate)->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mock-half-size", mock_half_size,
                    "Mock sensitivity dial: keep = h / (h + batch size)");
    cmd->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);
    cmd->add_option("--token-budget", token_budget)->check(CLI::PositiveNumber);
    cmd->add_option("--price", price, "Dollars per 1,000 tokens");
    cmd->add_option("--run-id", run_id);
  }

  RunOptions Options(std::size_t batch_size) const {
    RunOptions o;
    o.batch_size = batch_size;
    o.token_budget = token_budget;
    o.parallelism = parallelism;
    o.price_per_1000_tokens = price;
    o.run_id = run_id;
    return o;
  }

  // Backend plus an optional recorder wrapped around it.
  struct Built {
    std::unique_ptr<Backend> base;
    std::unique_ptr<RecordingBackend> recorder;
    Backend& get() { return recorder ? static_cast<Backend&>(*recorder) : *base; }
  };

  Built Build(ReportMeta& meta) {
    config.request_timeout = std::chrono::milliseconds(timeout_ms);
    Built b;
    if (kind == "remote") {
      b.base = std::make_unique<RemoteBackend>(config);
    } else if (kind == "replay") {
      if (fixture.empty()) throw InvalidArgument("--backend replay needs --fixture");
      meta.AddInput(fixture);
      b.base = std::make_unique<ReplayBackend>(fs::path(fixture));
    } else {
      MockOptions mo;
      if (lexicon.empty()) {
        mo.lexicon = DefaultLexicon();
      } else {
        meta.AddInput(lexicon);
        mo.lexicon = LoadLexicon(lexicon);
      }
      if (mock_half_size > 0) mo.dial = SensitivityDial{{}, mock_half_size, 0};
      mo.corruption_rate = mock_corruption_rate;
      b.base = std::make_unique<MockBackend>(std::move(mo));
    }
    if (!record.empty()) b.recorder = std::make_unique<RecordingBackend>(*b.base);
    return b;
  }

  PromptTemplate Template(ReportMeta& meta) const {
    if (template_spec.rfind("builtin:", 0) != 0) meta.AddInput(template_spec);
    return ResolveTemplate(template_spec);
  }
};

Corpus LoadCorpus(const std::string& path, ReportMeta& meta) {
  IngestResult r = Ingest(path, FormatFromPath(path));
  meta.AddInput(path);
  return std::move(r.corpus);
}

std::vector<Post> SelectPosts(const Corpus& corpus, std::optional<std::size_t> limit,
                              std::uint64_t seed) {
  if (limit) {
    if (*limit == 0) throw InvalidArgument("--limit must be at least 1");
    return Sample(corpus, std::min(*limit, corpus.size()), seed);
  }
  return corpus.posts();
}

bool LooksHuman(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.rfind("human", 0) == 0;
}

std::vector<AnnotationSet> LoadSets(const std::vector<std::string>& files,
                                    const std::vector<std::string>& human_names,
                                    ReportMeta& meta) {
  std::vector<AnnotationSet> sets;
  for (const auto& file : files) {
    const std::string stem = fs::path(file).stem().string();
    AnnotationSet s;
    s.annotations = ReadAnnotations(file, stem);
    meta.AddInput(file);
    s.name = !s.annotations.empty() && !s.annotations.front().annotator_id.empty()
                 ? s.annotations.front().annotator_id
                 : stem;
    int suffix = 2;
    const std::string base = s.name;
    while (std::any_of(sets.begin(), sets.end(), [&](const AnnotationSet& o) { return o.name == s.name; })) {
      s.name = fmt::format("{}#{}", base, suffix++);
    }
    s.is_human = LooksHuman(s.name) || LooksHuman(stem) ||
                 std::find(human_names.begin(), human_names.end(), base) != human_names.end() ||
                 std::find(human_names.begin(), human_names.end(), stem) != human_names.end();
    sets.push_back(std::move(s));
  }
  return sets;
}

std::string ConfigHash(const CLI::App& app) {
  std::stringstream in(app.config_to_str(true, false));
  std::string line, kept;
  while (std::getline(in, line)) {
    // Output locations do not change results.
    if (line.rfind("out=", 0) == 0 || line.rfind("out =", 0) == 0 ||
        line.rfind("figure-data", 0) == 0 || line.rfind("config", 0) == 0) {
      continue;
    }
    kept += line + "\n";
  }
  return "fnv1a64:" + HexDigest(Fnv1a64(kept));
}

int ExitFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kInvalidArgument: return kExitUsage;
    case ErrorKind::kIo:
    case ErrorKind::kParse:
    case ErrorKind::kAlignment: return kExitIo;
    case ErrorKind::kBackendAuth: return kExitUsage;
    case ErrorKind::kBackendTransient:
    case ErrorKind::kBackendFatal: return kExitBackend;
  }
  return kExitUsage;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Violence-taxonomy annotation toolkit for forum corpora", "annotkit"};
  app.set_config("--config", "", "INI file; one [section] per command, flags override it");
  app.set_version_flag("--version", std::string(ANNOTKIT_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "Seed for sampling and permutation tests");
  app.add_option("--out,-o", out_dir, "Output directory");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Read a JSONL/CSV post archive into a corpus file");
  std::string ingest_input, ingest_format = "auto";
  ingest->add_option("input", ingest_input)->required();
  ingest->add_option("--format", ingest_format)->check(CLI::IsMember({"auto", "jsonl", "csv"}));

  // annotate
  auto* annotate = app.add_subcommand("annotate", "Label posts with a chat-completion backend");
  BackendArgs annotate_backend;
  std::string annotate_corpus;
  std::size_t batch_size = 50;
  std::optional<std::size_t> limit;
  annotate->add_option("--corpus", annotate_corpus)->required();
  annotate->add_option("--batch-size", batch_size)->check(CLI::PositiveNumber);
  annotate->add_option("--limit", limit, "Annotate a seeded random sample of this many posts");
  annotate_backend.Register(annotate);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Class distribution across batch sizes");
  BackendArgs sweep_backend;
  std::string sweep_corpus, sweep_from_json;
  std::vector<std::size_t> sweep_sizes = kDefaultSweepSizes;
  std::vector<std::string> sweep_humans;
  std::optional<std::size_t> sweep_limit;
  sweep->add_option("--corpus", sweep_corpus);
  sweep->add_option("--sizes", sweep_sizes, "Batch sizes, e.g. 10,20,50")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep->add_option("--human", sweep_humans, "Human annotation files (reference)");
  sweep->add_option("--limit", sweep_limit);
  sweep->add_option("--from-json", sweep_from_json,
                    "Select/render from stored distributions instead of running");
  sweep_backend.Register(sweep);

  // agree
  auto* agree = app.add_subcommand("agree", "Pairwise kappa / weighted F1 / macro F1 table");
  std::vector<std::string> agree_files, agree_humans;
  std::string granularity = "coarse";
  agree->add_option("files", agree_files)->required()->expected(2, -1);
  agree->add_option("--human", agree_humans, "Annotator names or file stems that are human");
  agree->add_option("--granularity", granularity)->check(CLI::IsMember({"coarse", "full"}));

  // sessions
  auto* sessions = app.add_subcommand("sessions", "Segment user timelines by inactivity");
  std::string sessions_corpus;
  std::vector<std::string> thresholds;
  sessions->add_option("--corpus", sessions_corpus)->required();
  sessions->add_option("--threshold", thresholds, "e.g. 1h 6h 12h 24h 14d 180d (default: all)");

  // regress
  auto* regress = app.add_subcommand("regress", "OLS trend of violent share over time");
  std::string regress_corpus, regress_annotations, regress_series, scope = "forum",
                              category = "combined", regress_threshold = "24h", figure_dir;
  std::optional<std::string> bin_width;
  std::size_t bins = 50;
  bool weighted = false;
  double series_unit = 1.0;
  regress->add_option("--corpus", regress_corpus);
  regress->add_option("--annotations", regress_annotations);
  regress->add_option("--series", regress_series, "CSV with bin_start,share,n");
  regress->add_option("--series-unit-seconds", series_unit, "Seconds per time unit for --series");
  regress->add_option("--scope", scope)->check(CLI::IsMember({"forum", "user", "window"}));
  regress->add_option("--category", category);
  regress->add_option("--threshold", regress_threshold, "Inactivity period for window scope");
  regress->add_option("--bin-width", bin_width);
  regress->add_option("--bins", bins)->check(CLI::PositiveNumber);
  regress->add_flag("--weighted", weighted, "Weight bins by post count");
  regress->add_option("--figure-data", figure_dir, "Write per-subfigure CSVs (a-h) here");

  // cost
  auto* cost = app.add_subcommand("cost", "Project input-token cost of an annotation job");
  std::size_t cost_posts = 0, cost_batch = 50, prompt_tokens = 500, post_tokens = 50;
  double cost_price = 0.01;
  cost->add_option("--posts", cost_posts)->required()->check(CLI::PositiveNumber);
  cost->add_option("--batch-size", cost_batch)->check(CLI::PositiveNumber);
  cost->add_option("--prompt-tokens", prompt_tokens)->check(CLI::PositiveNumber);
  cost->add_option("--post-tokens", post_tokens)->check(CLI::PositiveNumber);
  cost->add_option("--price", cost_price, "Dollars per 1,000 tokens");

  // report
  auto* report = app.add_subcommand("report", "Summary report for an annotated corpus");
  std::string report_corpus, report_annotations;
  report->add_option("--corpus", report_corpus)->required();
  report->add_option("--annotations", report_annotations)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  ReportMeta meta;
  meta.seed = seed;
  meta.config_hash = ConfigHash(app);
  const fs::path out_path(out_dir);

  try {
    if (*ingest) {
      InputFormat format = ingest_format == "auto" ? FormatFromPath(ingest_input)
                           : ingest_format == "csv" ? InputFormat::kCsv
                                                    : InputFormat::kJsonl;
      IngestResult r = Ingest(ingest_input, format);
      meta.AddInput(ingest_input);
      fs::create_directories(out_path);
      ExportJsonl(r.corpus, out_path / "corpus.jsonl");
      ordered_json doc;
      doc["posts"] = r.corpus.size();
      doc["users"] = r.corpus.user_index().size();
      doc["records_seen"] = r.records_seen;
      doc["skipped_missing_field"] = r.skipped_missing_field;
      doc["skipped_bad_timestamp"] = r.skipped_bad_timestamp;
      doc["skipped_malformed"] = r.skipped_malformed;
      doc["duplicates"] = r.duplicates;
      doc["warnings"] = r.warnings;
      doc["meta"] = meta.Json();
      WriteFile(out_path / "ingest_report.json", doc.dump(2) + "\n");
      out << fmt::format("{} posts, {} skipped, {} duplicates\n", Thousands(r.corpus.size()),
                         Thousands(r.skipped()), Thousands(r.duplicates));
      return kExitOk;
    }

    if (*annotate) {
      const Corpus corpus = LoadCorpus(annotate_corpus, meta);
      const std::vector<Post> posts = SelectPosts(corpus, limit, seed);
      const PromptTemplate tmpl = annotate_backend.Template(meta);
      auto backend = annotate_backend.Build(meta);
      AnnotationRun run = RunAnnotation(posts, tmpl, annotate_backend.config, backend.get(),
                                        annotate_backend.Options(batch_size));
      fs::create_directories(out_path);
      WriteAnnotationsJsonl(run.annotations, out_path / "annotations.jsonl");
      std::ostringstream failures;
      WriteFailuresJsonl(run.failures, failures);
      WriteFile(out_path / "failures.jsonl", failures.str());
      ordered_json doc = ordered_json::parse(RunSummaryJson(run));
      doc["meta"] = meta.Json();
      WriteFile(out_path / "run.json", doc.dump(2) + "\n");
      if (backend.recorder) backend.recorder->Save(annotate_backend.record);
      const double per_post = run.annotations.empty()
                                  ? 0.0
                                  : run.ledger.total_cost / static_cast<double>(run.annotations.size());
      out << fmt::format(
          "{} annotated, {} failed ({} batches sent, cost ${:.4f} from {} usage, "
          "${:.6f} per post)\n",
          Thousands(run.annotations.size()), Thousands(run.failed_posts()),
          run.ledger.batches_sent, run.ledger.total_cost,
          UsageSourceName(run.ledger.usage_source), per_post);
      err << fmt::format("wall time {} ms\n", run.ledger.wall_time.count());
      if (run.failed_posts() > 0) {
        const bool backend_only = run.annotations.empty() &&
            std::all_of(run.failures.begin(), run.failures.end(), [](const BatchFailure& f) {
              return f.error.find("retries exhausted") != std::string::npos;
            });
        return backend_only ? kExitBackend : kExitPartial;
      }
      return kExitOk;
    }

    if (*sweep) {
      SweepResult result;
      std::optional<std::vector<double>> reference;
      if (!sweep_from_json.empty()) {
        std::ifstream in(sweep_from_json);
        if (!in) throw IoError("cannot read " + sweep_from_json);
        meta.AddInput(sweep_from_json);
        auto doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_discarded()) throw ParseError(sweep_from_json + " is not JSON");
        try {
          result.batch_sizes = doc.at("batch_sizes").get<std::vector<std::size_t>>();
          result.distributions = doc.at("distributions").get<std::vector<std::vector<double>>>();
          if (doc.contains("reference")) reference = doc["reference"].get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(fmt::format("{}: {}", sweep_from_json, e.what()));
        }
        if (result.batch_sizes.size() != result.distributions.size()) {
          throw ParseError(sweep_from_json + ": sizes and distributions differ in length");
        }
        result.usable.assign(result.batch_sizes.size(), true);
      } else {
        if (sweep_corpus.empty()) throw InvalidArgument("sweep needs --corpus or --from-json");
        const Corpus corpus = LoadCorpus(sweep_corpus, meta);
        const std::vector<Post> posts = SelectPosts(corpus, sweep_limit, seed);
        const PromptTemplate tmpl = sweep_backend.Template(meta);
        auto backend = sweep_backend.Build(meta);
        std::vector<AnnotationSet> humans = LoadSets(sweep_humans, {}, meta);
        result = Sweep(posts, tmpl, sweep_backend.config, backend.get(), sweep_sizes,
                       sweep_backend.Options(sweep_sizes.front()), humans);
        if (!humans.empty()) reference = ReferenceDistribution(humans);
        if (backend.recorder) backend.recorder->Save(sweep_backend.record);
      }
      if (reference) SelectBatchSize(result, *reference);
      fs::create_directories(out_path);
      ordered_json doc = ordered_json::parse(RenderSweepJson(result, reference));
      doc["meta"] = meta.Json();
      const std::string md = RenderSweepMarkdown(result, reference);
      WriteFile(out_path / "sweep.json", doc.dump(2) + "\n");
      WriteFile(out_path / "sweep.md", md + meta.MarkdownFooter());
      out << md;
      return kExitOk;
    }

    if (*agree) {
      const auto sets = LoadSets(agree_files, agree_humans, meta);
      const AgreementMatrix matrix = BuildAgreementMatrix(sets, ParseGranularity(granularity));
      const std::string md = RenderAgreementMarkdown(matrix);
      ordered_json doc = ordered_json::parse(RenderAgreementJson(matrix));
      doc["granularity"] = granularity;
      doc["meta"] = meta.Json();
      fs::create_directories(out_path);
      WriteFile(out_path / "agreement.md", md + meta.MarkdownFooter());
      WriteFile(out_path / "agreement.json", doc.dump(2) + "\n");
      out << md;
      return kExitOk;
    }

    if (*sessions) {
      const Corpus corpus = LoadCorpus(sessions_corpus, meta);
      std::vector<Duration> ths;
      if (thresholds.empty()) {
        for (const auto& t : StandardThresholds()) ths.push_back(t.value);
      } else {
        for (const auto& t : thresholds) ths.push_back(ParseDuration(t));
      }
      std::string csv = "threshold,users,sessions,mean_posts_per_session,mean_session_seconds,right_censored_users\n";
      ordered_json rows = ordered_json::array();
      for (Duration th : ths) {
        const auto s = SummarizeSegmentation(corpus, th);
        csv += fmt::format("{},{},{},{},{},{}\n", FormatDuration(th), s.users, s.sessions,
                           s.mean_posts_per_session, s.mean_session_seconds, s.right_censored_users);
        rows.push_back({{"threshold", FormatDuration(th)},
                        {"threshold_seconds", th.count()},
                        {"users", s.users},
                        {"sessions", s.sessions},
                        {"mean_posts_per_session", s.mean_posts_per_session},
                        {"mean_session_seconds", s.mean_session_seconds},
                        {"right_censored_users", s.right_censored_users}});
        out << fmt::format("threshold {}: {} sessions across {} users ({} possibly truncated)\n",
                           FormatDuration(th), s.sessions, s.users, s.right_censored_users);
      }
      ordered_json doc;
      doc["segmentation"] = std::move(rows);
      doc["meta"] = meta.Json();
      fs::create_directories(out_path);
      WriteFile(out_path / "sessions.csv", csv);
      WriteFile(out_path / "sessions.json", doc.dump(2) + "\n");
      return kExitOk;
    }

    if (*regress) {
      auto result_json = [](const RegressionResult& r) {
        return ordered_json{{"beta", r.beta},
                            {"intercept", r.intercept},
                            {"p_value", r.p_value},
                            {"stars", r.stars},
                            {"n_bins", r.n_bins},
                            {"time_unit", r.time_unit},
                            {"beta_per_second", r.beta_per_second}};
      };
      fs::create_directories(out_path);
      if (!regress_series.empty()) {
        std::ifstream in(regress_series);
        if (!in) throw IoError("cannot read " + regress_series);
        meta.AddInput(regress_series);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        BinnedSeries series = ParseSeriesCsv(text);
        series.time_unit_seconds = series_unit;
        series.time_unit = series_unit == 1.0 ? "second" : fmt::format("{}s", series_unit);
        const RegressionResult r = OlsFit(series, weighted);
        ordered_json doc;
        doc["regression"] = result_json(r);
        doc["weighted"] = weighted;
        doc["meta"] = meta.Json();
        WriteFile(out_path / "regression.json", doc.dump(2) + "\n");
        out << fmt::format("beta {:.6g} per {} (p = {:.3g}) {}\n", r.beta, r.time_unit, r.p_value,
                           r.stars.empty() ? "n.s." : r.stars);
        return kExitOk;
      }
      if (regress_corpus.empty() || regress_annotations.empty()) {
        throw InvalidArgument("regress needs --series or --corpus with --annotations");
      }
      const Corpus corpus = LoadCorpus(regress_corpus, meta);
      const auto annotations = ReadAnnotations(regress_annotations);
      meta.AddInput(regress_annotations);
      const LabelLookup labels = MakeLabelLookup(annotations);
      SeriesOptions options;
      options.scope = ParseScope(scope);
      options.threshold = ParseDuration(regress_threshold);
      if (bin_width) options.bin_width = ParseDuration(*bin_width);
      options.default_bins = bins;

      if (!figure_dir.empty()) {
        const fs::path dir(figure_dir);
        fs::create_directories(dir);
        std::vector<std::pair<std::string, SeriesOptions>> panels;
        SeriesOptions p = options;
        p.bin_width.reset();
        p.scope = Scope::kForumCalendar;
        panels.emplace_back("a", p);
        p.scope = Scope::kUserRelative;
        panels.emplace_back("b", p);
        char letter = 'c';
        for (const auto& t : StandardThresholds()) {
          p.scope = Scope::kPostInactivity;
          p.threshold = t.value;
          panels.emplace_back(std::string(1, letter++), p);
        }
        const std::vector<std::pair<std::string, std::vector<Category>>> figures = {
            {"violence", {Category::kCombined, Category::kExplicit, Category::kImplicit}},
            {"directedness", {Category::kDirected, Category::kGeneral, Category::kSelfDirected}}};
        std::string summary = "figure,panel,scope,threshold,category,beta,p_value,stars,n_bins,time_unit\n";
        for (const auto& [fig, cats] : figures) {
          for (const auto& [panel, popts] : panels) {
            std::string csv = "category,bin_start,share,n\n";
            for (Category c : cats) {
              BinnedSeries s;
              try {
                s = ViolentShareSeries(corpus, labels, popts, c);
              } catch (const Error& e) {
                err << fmt::format("{} {}: {}\n", fig, panel, e.what());
                continue;
              }
              for (const Bin& b : s.bins) {
                csv += fmt::format("{},{},{},{}\n", CategoryName(c), b.start_seconds, b.share, b.n_posts);
              }
              const std::string th = popts.scope == Scope::kPostInactivity ? FormatDuration(popts.threshold) : "";
              try {
                const auto r = OlsFit(s, weighted);
                summary += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", fig, panel, ScopeName(popts.scope),
                                       th, CategoryName(c), r.beta, r.p_value, r.stars, r.n_bins,
                                       annotkit::csv::Escape(r.time_unit));
              } catch (const Error& e) {
                summary += fmt::format("{},{},{},{},{},,,,{},\n", fig, panel, ScopeName(popts.scope), th,
                                       CategoryName(c), s.bins.size());
              }
            }
            WriteFile(dir / fmt::format("{}_{}.csv", fig, panel), csv);
          }
        }
        WriteFile(dir / "regressions.csv", summary);
        out << fmt::format("figure data written to {}\n", dir.string());
      }

      const BinnedSeries series = ViolentShareSeries(corpus, labels, options, ParseCategory(category));
      const RegressionResult r = OlsFit(series, weighted);
      ordered_json doc;
      doc["scope"] = std::string(ScopeName(options.scope));
      if (options.scope == Scope::kPostInactivity) doc["threshold"] = FormatDuration(options.threshold);
      doc["category"] = category;
      doc["weighted"] = weighted;
      doc["regression"] = result_json(r);
      doc["meta"] = meta.Json();
      WriteFile(out_path / "series.csv", SeriesCsv(series));
      WriteFile(out_path / "regression.json", doc.dump(2) + "\n");
      out << fmt::format("{} / {}: beta {} per {} (p = {:.3g}, {} bins)\n", ScopeName(options.scope),
                         category, FormatBeta(r), r.time_unit, r.p_value, r.n_bins);
      return kExitOk;
    }

    if (*cost) {
      const CostProjection p = EstimateCost(cost_posts, cost_batch, prompt_tokens, post_tokens, cost_price);
      out << fmt::format(
          "{} posts in {} batches of {}: {} tokens per batch, ${:.4f} per batch, ${:.6f} per "
          "post, ≈${:.0f} input cost (${:.2f})\n",
          Thousands(cost_posts), Thousands(p.batches), cost_batch, p.tokens_per_batch,
          p.cost_per_batch, p.cost_per_post, p.total_cost, p.total_cost);
      if (app.get_option("--out")->count() > 0) {
        ordered_json doc;
        doc["posts"] = cost_posts;
        doc["batch_size"] = cost_batch;
        doc["prompt_tokens"] = prompt_tokens;
        doc["post_tokens"] = post_tokens;
        doc["price_per_1000_tokens"] = cost_price;
        doc["batches"] = p.batches;
        doc["tokens_per_batch"] = p.tokens_per_batch;
        doc["cost_per_batch"] = p.cost_per_batch;
        doc["cost_per_post"] = p.cost_per_post;
        doc["total_cost"] = p.total_cost;
        doc["meta"] = meta.Json();
        WriteFile(out_path / "cost.json", doc.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (*report) {
      const Corpus corpus = LoadCorpus(report_corpus, meta);
      const auto annotations = ReadAnnotations(report_annotations);
      meta.AddInput(report_annotations);
      std::string md = "# Annotation report\n\n## Corpus\n\n";
      md += RenderEngagement(ComputeEngagement(corpus)) + "\n\n## Label distribution\n\n";
      if (annotations.empty()) throw InvalidArgument("annotation file is empty");
      const auto coarse = ClassDistribution(annotations, Granularity::kCoarse);
      const auto full = ClassDistribution(annotations, Granularity::kFull);
      md += "| class | share |\n|---|---|\n";
      for (int c = 0; c < kCoarseClassCount; ++c) {
        md += fmt::format("| {} | {:.3f} |\n", ClassName(c, Granularity::kCoarse), coarse.shares[c]);
      }
      md += "\n| code | share |\n|---|---|\n";
      for (int c = 0; c < kFullClassCount; ++c) {
        md += fmt::format("| {} | {:.3f} |\n", ClassName(c, Granularity::kFull), full.shares[c]);
      }
      md += "\n## Position in batch\n\n";
      try {
        const auto bias = ComputePositionBias(annotations, 10000, seed);
        md += bias.degenerate
                  ? "All labels identical; correlation undefined.\n"
                  : fmt::format("Pearson r = {:.4f} between ordinal and violent label (permutation p = {:.4f}, n = {}).\n",
                                bias.correlation, bias.p_value, bias.n);
      } catch (const Error& e) {
        md += fmt::format("Not available: {}.\n", e.what());
      }
      md += "\n## Sessions\n\n| threshold | sessions | posts/session | possibly truncated users |\n|---|---|---|---|\n";
      for (const auto& t : StandardThresholds()) {
        const auto s = SummarizeSegmentation(corpus, t.value);
        md += fmt::format("| {} | {} | {:.2f} | {} |\n", t.name, s.sessions, s.mean_posts_per_session,
                          s.right_censored_users);
      }
      md += "\n## Trends (combined violent share)\n\n| scope | beta | unit | p | bins |\n|---|---|---|---|---|\n";
      const LabelLookup labels = MakeLabelLookup(annotations);
      for (Scope sc : {Scope::kForumCalendar, Scope::kUserRelative}) {
        SeriesOptions o;
        o.scope = sc;
        try {
          const auto r = OlsFit(ViolentShareSeries(corpus, labels, o, Category::kCombined));
          md += fmt::format("| {} | {} | {} | {:.3g} | {} |\n", ScopeName(sc), FormatBeta(r), r.time_unit,
                            r.p_value, r.n_bins);
        } catch (const Error& e) {
          md += fmt::format("| {} | - | - | - | {} |\n", ScopeName(sc), e.what());
        }
      }
      md += meta.MarkdownFooter();
      fs::create_directories(out_path);
      WriteFile(out_path / "report.md", md);
      out << md;
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "annotkit: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const fs::filesystem_error& e) {
    err << "annotkit: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace annotkit::cli
