#include "prosodex_cli/app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "prosodex/config.hpp"
#include "prosodex/corpus.hpp"
#include "prosodex/error.hpp"
#include "prosodex/features.hpp"
#include "prosodex/learning.hpp"
#include "prosodex/parallel.hpp"
#include "prosodex/phonetics.hpp"
#include "prosodex/rng.hpp"
#include "prosodex/simgraph.hpp"
#include "prosodex/stats.hpp"
#include "prosodex/synth.hpp"
#include "prosodex/timeline.hpp"
#include "prosodex/windowing.hpp"

namespace prosodex::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::string lexicon;
  std::string corpus;
  std::uint64_t seed = 0;
  int jobs = 1;

  int per_class = 0;

  std::string input;
  std::string label = "unlabeled";
  int l0 = 0;
  double delta = 0.0;
  bool dump_timeline = false;
  bool dump_windows = false;

  std::string features;
  int nf_min = 0;
  int nf_max = 0;
  std::vector<std::string> classifiers;

  std::string dest;

  double tau = 0.0;
  std::string top_k;
  std::string out;
  std::string format;
};

bool given(const CLI::App& app, const std::string& name) {
  const CLI::Option* opt = app.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& log) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
  log << "wrote " << path.string() << "\n";
}

class Runner {
 public:
  Runner(const Options& o, const CLI::App& root, const CLI::App& sub, std::ostream& log)
      : o_(o), root_(root), sub_(sub), log_(log) {}

  Config config() const {
    Config c;
    std::string path = o_.config;
    if (path.empty()) {
      if (const char* env = std::getenv("PROSODEX_CONFIG")) path = env;
    }
    if (!path.empty()) {
      if (!fs::exists(path)) throw ConfigError("config file '" + path + "' does not exist");
      c = load_config(path);
    }
    if (c.lexicon_path.empty()) c.lexicon_path = default_lexicon();
    if (flag("--lexicon")) c.lexicon_path = o_.lexicon;
    if (flag("--corpus")) c.corpus_dir = o_.corpus;
    if (flag("--jobs")) {
      if (o_.jobs < 1) throw UsageError("--jobs must be positive");
      c.jobs = o_.jobs;
    }
    if (flag("--seed")) {
      c.seed = o_.seed;
      c.synth_seed = o_.seed;
      for (auto& cc : c.classifiers) cc.seed = o_.seed;
    }
    c.layout.seed = c.seed;
    return c;
  }

  // An installed binary finds the lexicon under <prefix>/share; a build-tree
  // binary falls back to the source checkout.
  static fs::path default_lexicon() {
    std::error_code ec;
    const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) {
      const fs::path installed = exe.parent_path().parent_path() / "share/prosodex/data/cmudict-fixture.dict";
      if (fs::exists(installed)) return installed;
    }
    return PROSODEX_DEFAULT_LEXICON;
  }

  PronDict lexicon(const Config& c) const {
    if (!fs::exists(c.lexicon_path)) throw ConfigError("lexicon '" + c.lexicon_path.string() + "' not found");
    return load_cmudict(c.lexicon_path);
  }

  Corpus corpus(const Config& c) const {
    if (c.corpus_dir.empty()) throw UsageError("no corpus directory; pass --corpus or set paths.corpus_dir");
    if (!fs::is_directory(c.corpus_dir)) {
      throw ConfigError("corpus directory '" + c.corpus_dir.string() + "' not found");
    }
    Corpus corpus = load_corpus(c.corpus_dir);
    log_ << "loaded " << corpus.size() << " documents from " << c.corpus_dir.string() << "\n";
    return corpus;
  }

  fs::path out_path(const std::string& name) const { return fs::path(o_.out_dir) / name; }

  fs::path features_path() const { return sub_flag("--features") ? fs::path(o_.features) : out_path("features.csv"); }

  FeatureTable feature_table() const {
    const fs::path path = features_path();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("feature table '" + path.string() + "' not found");
    try {
      return read_feature_csv(in);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what(), 0);
    }
  }

  void synth() const {
    Config c = config();
    if (sub_flag("--per-class")) c.synth_per_class = o_.per_class;
    if (c.synth_per_class < 1) throw UsageError("--per-class must be positive");
    const PronDict dict = lexicon(c);
    const Corpus corpus = generate_synthetic_corpus(c.synth_per_class, c.synth_seed, dict, c.synth);
    const fs::path dest = flag("--corpus") ? fs::path(o_.corpus) : out_path("corpus");
    write_corpus(corpus, dest);
    log_ << "wrote " << corpus.size() << " documents to " << dest.string() << "\n";
  }

  void stats() const {
    const Config c = config();
    const PronDict dict = lexicon(c);
    const CorpusStats s = corpus_stats(corpus(c), dict, c.rhythm_punct);
    write_file(out_path("stats.csv"), stats_csv(s), log_);
    write_file(out_path("stats.json"), stats_json(s), log_);
  }

  void extract() const {
    Config c = config();
    if (sub_flag("--l0")) {
      if (o_.l0 < 1) throw UsageError("--l0 must be positive");
      c.grid_l0 = {o_.l0};
    }
    if (sub_flag("--delta")) {
      if (!(o_.delta >= 0.0)) throw UsageError("--delta must be non-negative");
      c.grid_delta = {o_.delta};
    }
    const PronDict dict = lexicon(c);
    Corpus docs;
    if (sub_flag("--input")) {
      std::ifstream in(o_.input, std::ios::binary);
      if (!in) throw ConfigError("input file '" + o_.input + "' not found");
      std::stringstream buf;
      buf << in.rdbuf();
      Label label;
      try {
        label = parse_label(o_.label);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      docs.documents.push_back(load_document(buf.str(), fs::path(o_.input).stem().string(), label));
    } else {
      docs = corpus(c);
    }

    const auto grid = c.grid();
    const std::size_t n = docs.size();
    FeatureTable table;
    table.names = feature_column_names(grid);
    table.rows.resize(n);
    std::vector<json> timelines(n);
    std::vector<json> windows(n);
    parallel_for(n, c.jobs, [&](std::size_t i) {
      const Document& doc = docs.documents[i];
      const auto tokens = tokenize(doc.text);
      const Timeline timeline = build_timeline(tokens, dict, c.durations);
      const SignalSequence signals = find_rhyme_signals(tokens, timeline, dict, c.rhythm_punct);
      FeatureVector row = document_features(signals, grid);
      row.doc_id = doc.id;
      row.label = doc.label;
      table.rows[i] = std::move(row);
      if (o_.dump_timeline) {
        timelines[i] = json{{"id", doc.id}, {"timeline", json::parse(timeline_dump_json(tokens, timeline, signals))}};
      }
      if (o_.dump_windows) {
        json per_grid = json::array();
        for (const auto& p : grid) {
          per_grid.push_back({{"l0", p.initial_pairs},
                              {"delta", p.delta},
                              {"windows", json::parse(windows_dump_json(signals, detect_windows(signals, p)))}});
        }
        windows[i] = json{{"id", doc.id}, {"grid", std::move(per_grid)}};
      }
    });

    std::ostringstream csv;
    write_feature_csv(csv, table);
    write_file(out_path("features.csv"), csv.str(), log_);
    if (o_.dump_timeline) write_file(out_path("timeline.json"), json{{"documents", timelines}}.dump(2) + "\n", log_);
    if (o_.dump_windows) write_file(out_path("windows.json"), json{{"documents", windows}}.dump(2) + "\n", log_);
  }

  void classify() const {
    Config c = config();
    if (sub_flag("--nf-min")) c.nf_min = o_.nf_min;
    if (sub_flag("--nf-max")) c.nf_max = o_.nf_max;
    if (c.nf_min < 1 || c.nf_max < c.nf_min) throw UsageError("invalid n_f range");
    if (sub_flag("--classifiers")) {
      std::vector<ClassifierConfig> chosen;
      for (const auto& name : o_.classifiers) {
        ClassifierConfig cc = c.classifiers.front();
        try {
          cc.kind = parse_classifier(name);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        chosen.push_back(cc);
      }
      c.classifiers = std::move(chosen);
    }

    const FeatureTable table = feature_table();
    std::array<std::size_t, 2> counts{};
    for (const auto& row : table.rows) {
      if (row.label == Label::unlabeled) {
        throw ConfigError("row '" + row.doc_id + "' in " + features_path().string() + " has no label");
      }
      ++counts[static_cast<std::size_t>(class_index(row.label))];
    }
    for (int k = 0; k < 2; ++k) {
      if (counts[k] == 0) {
        throw TrainError("missing class '" + std::string(to_string(class_label(k))) + "': " +
                         features_path().string() + " has no documents labeled " +
                         std::string(to_string(class_label(k))));
      }
    }
    const Dataset data = Dataset::from_table(table);
    const EvalReport report = sweep_nf(data, c.classifiers, static_cast<std::size_t>(c.nf_min),
                                       static_cast<std::size_t>(c.nf_max), c.nmi_bins, c.jobs);
    write_file(out_path("report.csv"), report_csv(report), log_);
    write_file(out_path("summary.json"), report_summary_json(report), log_);
    for (const auto& row : report.best) {
      log_ << to_string(row.classifier) << ": accuracy " << format_double(row.accuracy) << " at n_f "
           << row.n_features << "\n";
    }
  }

  void shuffle() const {
    const Config c = config();
    const Corpus source = corpus(c);
    Corpus shuffled;
    Rng seeds(c.seed);
    for (const auto& doc : source.documents) shuffled.documents.push_back(shuffle_document(doc, seeds.next()));
    const fs::path dest = sub_flag("--dest") ? fs::path(o_.dest) : out_path("shuffled");
    write_corpus(shuffled, dest);
    log_ << "wrote " << shuffled.size() << " shuffled documents to " << dest.string() << "\n";
  }

  void graph() const {
    Config c = config();
    if (sub_flag("--tau")) c.tau = o_.tau;
    if (c.tau < -1.0 || c.tau > 1.0) throw UsageError("--tau must lie in [-1, 1]");
    if (sub_flag("--top-k")) c.top_k = o_.top_k;

    const fs::path out = sub_flag("--out") ? fs::path(o_.out) : out_path("graph.svg");
    GraphFormat format;
    try {
      std::string name = o_.format;
      if (name.empty()) name = out.extension().string().substr(out.has_extension() ? 1 : 0);
      format = parse_graph_format(name);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }

    int k = 0;
    if (c.top_k != "all") {
      try {
        std::size_t used = 0;
        k = std::stoi(c.top_k, &used);
        if (used != c.top_k.size() || k < 1) throw std::invalid_argument("top-k");
      } catch (const std::exception&) {
        throw UsageError("--top-k must be a positive integer or 'all'");
      }
    }

    const FeatureTable table = feature_table();
    std::vector<std::size_t> selected;
    if (k > 0) {
      const Dataset data = Dataset::from_table(table);
      const auto ranking = rank_features(data.features, data.labels, c.nmi_bins);
      for (std::size_t i = 0; i < ranking.size() && i < static_cast<std::size_t>(k); ++i) {
        selected.push_back(ranking[i].index);
      }
    }
    const SimilarityGraph g = build_graph(table.rows, selected, c.tau);
    const auto layout = layout_fr(g, c.layout);
    write_file(out, export_graph(g, layout, format), log_);
    log_ << "edges " << g.edges.size() << "; density poetry-poetry "
         << format_double(edge_density(g, Label::poetry, Label::poetry)) << ", prose-prose "
         << format_double(edge_density(g, Label::prose, Label::prose)) << ", poetry-prose "
         << format_double(edge_density(g, Label::poetry, Label::prose)) << "\n";
  }

 private:
  bool flag(const std::string& name) const { return given(root_, name) || given(sub_, name); }
  bool sub_flag(const std::string& name) const { return given(sub_, name); }

  const Options& o_;
  const CLI::App& root_;
  const CLI::App& sub_;
  std::ostream& log_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  CLI::App app{"prosodex: rhyme-rhythm features for telling poetry from prose"};
  app.name(args.empty() ? "prosodex" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "TOML config file (default: $PROSODEX_CONFIG)");
  app.add_option("--seed", o.seed, "Seed for every randomized step");
  app.add_option("--jobs", o.jobs, "Worker threads");
  app.add_option("--out-dir", o.out_dir, "Directory for artifacts")->capture_default_str();
  app.add_option("--lexicon", o.lexicon, "CMU-format pronouncing dictionary");
  app.add_option("--corpus", o.corpus, "Corpus directory (read, or written by synth)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth->add_option("--per-class", o.per_class, "Documents per class");

  app.add_subcommand("stats", "Corpus statistics (CSV and JSON)");

  auto* extract = app.add_subcommand("extract", "Rhyme-window features for every document");
  extract->add_option("--input", o.input, "Single text file instead of a corpus");
  extract->add_option("--label", o.label, "Label for --input: poetry, prose or unlabeled");
  extract->add_option("--l0", o.l0, "Use this single L0 instead of the grid");
  extract->add_option("--delta", o.delta, "Use this single delta instead of the grid");
  extract->add_flag("--dump-timeline", o.dump_timeline, "Also write timeline.json");
  extract->add_flag("--dump-windows", o.dump_windows, "Also write windows.json");

  auto* classify = app.add_subcommand("classify", "Leave-one-out evaluation over n_f");
  classify->add_option("--features", o.features, "Feature CSV (default: <out-dir>/features.csv)");
  classify->add_option("--nf-min", o.nf_min, "Smallest n_f");
  classify->add_option("--nf-max", o.nf_max, "Largest n_f");
  classify->add_option("--classifiers", o.classifiers, "Subset of LDA RF KNN SVM MLP");

  auto* shuffle = app.add_subcommand("shuffle", "Shuffle words within each document");
  shuffle->add_option("--dest", o.dest, "Output corpus (default: <out-dir>/shuffled)");

  auto* graph = app.add_subcommand("graph", "Cosine-similarity network figure");
  graph->add_option("--features", o.features, "Feature CSV (default: <out-dir>/features.csv)");
  graph->add_option("--tau", o.tau, "Edge threshold");
  graph->add_option("--top-k", o.top_k, "Use the k best NMI-ranked features, or 'all'");
  graph->add_option("--out", o.out, "Output file (default: <out-dir>/graph.svg)");
  graph->add_option("--format", o.format, "json, dot or svg (default: from --out extension)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("prosodex");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, log);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, log);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, log);
    return kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Runner runner(o, app, *sub, log);
  try {
    const std::string& name = sub->get_name();
    if (name == "synth") runner.synth();
    else if (name == "stats") runner.stats();
    else if (name == "extract") runner.extract();
    else if (name == "classify") runner.classify();
    else if (name == "shuffle") runner.shuffle();
    else if (name == "graph") runner.graph();
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

}  // namespace prosodex::cli
