// Command-line driver: dataset generation, experiment runs, raw machine
// access, feature export and artifact inspection.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cipherid/corpus.hpp"
#include "cipherid/dataset.hpp"
#include "cipherid/eval.hpp"
#include "cipherid/features.hpp"
#include "cipherid/machines.hpp"
#include "cipherid/rng.hpp"
#include "cipherid/threading.hpp"

namespace fs = std::filesystem;
using namespace cipherid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

fs::path resolve_out_dir(std::string out) {
  if (out.empty()) {
    if (const char* env = std::getenv("CIPHERID_OUT_DIR")) out = env;
  }
  if (out.empty()) {
    throw ConfigError("no output directory: pass --out or set CIPHERID_OUT_DIR");
  }
  return fs::path(out);
}

machines::WiringLibrary load_wirings(const std::string& dir) {
  return dir.empty() ? machines::WiringLibrary::defaults()
                     : machines::WiringLibrary::load_dir(dir);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<classifiers::Family> parse_models(const std::string& csv) {
  std::vector<classifiers::Family> out;
  for (const auto& name : split_list(csv)) {
    auto family = classifiers::family_from_string(name);
    if (!family) throw ConfigError("unknown model family: " + name);
    out.push_back(*family);
  }
  if (out.empty()) throw ConfigError("no models selected");
  return out;
}

std::vector<features::Kind> parse_kinds(const std::string& csv) {
  std::vector<features::Kind> out;
  for (const auto& name : split_list(csv)) {
    auto kind = features::kind_from_string(name);
    if (!kind) throw ConfigError("unknown feature kind: " + name);
    out.push_back(*kind);
  }
  if (out.empty()) throw ConfigError("no features selected");
  return out;
}

void write_resolved_config(CLI::App& app, const fs::path& dir) {
  std::ofstream out(dir / "config_resolved.ini");
  out << app.config_to_str(true, true);
}

// --------------------------------------------------------------- gen

struct GenOptions {
  std::string corpus_path, scenario = "random-random", out, wirings;
  int per_cipher = 1000, length = 1000, threads = 0;
  uint64_t seed = 0;
};

int run_gen(CLI::App& app, const GenOptions& opt) {
  auto scenario = dataset::scenario_from_string(opt.scenario);
  if (!scenario) throw ConfigError("unknown scenario: " + opt.scenario);
  auto corp = corpus::load_file(opt.corpus_path);
  auto wiring = load_wirings(opt.wirings);
  fs::path out_dir = resolve_out_dir(opt.out);
  auto data = dataset::generate(corp, *scenario, opt.per_cipher, opt.length,
                                opt.seed, wiring, opt.threads);
  dataset::save(data, out_dir);
  write_resolved_config(app, out_dir);
  std::cout << "wrote " << data.messages.size() << " messages ("
            << opt.per_cipher << " per cipher, length " << opt.length
            << ", scenario " << opt.scenario << ") to " << out_dir.string()
            << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- run

struct RunOptions {
  std::string dataset_dir, corpus_path, scenario = "random-random";
  std::string features_csv = "histogram,digram,sequence";
  std::string models_csv = "svm,knn,rf,mlp,elm";
  std::string study, lengths_csv = "50,100,200,300,400,500,600,700,800,900,1000";
  std::string out, wirings;
  int per_cipher = 1000, length = 1000, threads = 0;
  uint64_t seed = 0;
  bool grid_search = false, dry_run = false;
};

int run_run(CLI::App& app, const RunOptions& opt) {
  auto families = parse_models(opt.models_csv);
  auto kinds = parse_kinds(opt.features_csv);
  std::vector<int> lengths;
  for (const auto& tok : split_list(opt.lengths_csv)) {
    lengths.push_back(std::stoi(tok));
  }
  if (!opt.study.empty() && opt.study != "length") {
    throw ConfigError("unknown study: " + opt.study);
  }

  if (opt.dry_run) {
    std::cout << "plan:\n";
    if (!opt.dataset_dir.empty()) {
      std::cout << "  dataset: load " << opt.dataset_dir << "\n";
    } else {
      std::cout << "  dataset: generate scenario=" << opt.scenario
                << " per-cipher=" << opt.per_cipher << " length=" << opt.length
                << " seed=" << opt.seed << "\n";
    }
    std::cout << "  features: " << opt.features_csv << "\n";
    std::cout << "  models: " << opt.models_csv << "\n";
    if (opt.grid_search) std::cout << "  grid search: full tested grids\n";
    if (!opt.study.empty()) {
      std::cout << "  study: length over " << opt.lengths_csv << "\n";
    }
    std::cout << "  out: " << (opt.out.empty() ? "(unset)" : opt.out) << "\n";
    return kExitOk;
  }

  dataset::Dataset data;
  if (!opt.dataset_dir.empty()) {
    data = dataset::load(opt.dataset_dir);
  } else if (!opt.corpus_path.empty()) {
    auto scenario = dataset::scenario_from_string(opt.scenario);
    if (!scenario) throw ConfigError("unknown scenario: " + opt.scenario);
    auto corp = corpus::load_file(opt.corpus_path);
    data = dataset::generate(corp, *scenario, opt.per_cipher, opt.length,
                             opt.seed, load_wirings(opt.wirings), opt.threads);
  } else {
    throw ConfigError("run needs --dataset or --corpus");
  }

  fs::path out_dir = resolve_out_dir(opt.out);
  fs::create_directories(out_dir);
  write_resolved_config(app, out_dir);
  eval::SplitSpec split_spec{0.8, derive_seed(opt.seed, "split")};
  int failures = 0;

  if (opt.study.empty()) {
    eval::HyperOverride override;
    if (opt.grid_search) {
      // Tune on the training portion, then hand the winners to the suite.
      auto labels = data.labels();
      auto split = eval::stratified_split(labels, kCipherCount, split_spec);
      auto texts = data.texts();
      auto selected = std::make_shared<
          std::map<std::pair<int, int>, eval::Hyperparameters>>();
      for (auto kind : kinds) {
        eval::Matrix all = features::batch(texts, kind);
        eval::Matrix train_x(split.train_idx.size(), all.cols());
        std::vector<int> train_y;
        for (size_t i = 0; i < split.train_idx.size(); ++i) {
          train_x.row(i) = all.row(split.train_idx[i]);
          train_y.push_back(labels[split.train_idx[i]]);
        }
        for (auto family : families) {
          auto result = eval::grid_search(train_x, train_y, kCipherCount,
                                          eval::default_grid(family), 5,
                                          derive_seed(opt.seed, "grid"));
          eval::write_grid_csv(
              out_dir / ("grid_" + std::string(to_string(family)) + "_" +
                         std::string(features::to_string(kind)) + ".csv"),
              result);
          (*selected)[{static_cast<int>(family), static_cast<int>(kind)}] =
              result.best().hp;
          std::cout << "grid " << to_string(family) << " x "
                    << features::to_string(kind) << ": selected "
                    << result.best().hp.describe() << " (cv "
                    << result.best().cv_accuracy << ")\n";
        }
      }
      override = [selected](classifiers::Family f, features::Kind k)
          -> std::optional<eval::Hyperparameters> {
        auto it = selected->find({static_cast<int>(f), static_cast<int>(k)});
        if (it == selected->end()) return std::nullopt;
        return it->second;
      };
    }
    auto cells = eval::scenario_suite(data, families, kinds, split_spec,
                                      opt.seed, override);
    eval::write_suite_csv(out_dir / "accuracy_table.csv", cells);
    for (const auto& cell : cells) {
      std::string tag = std::string(to_string(cell.family)) + "_" +
                        std::string(features::to_string(cell.kind));
      if (!cell.ok()) {
        ++failures;
        std::cout << "cell " << tag << " FAILED: " << cell.error << "\n";
        continue;
      }
      eval::write_report(out_dir / ("report_" + tag + ".txt"), cell.report,
                         eval::kCipherNames);
      eval::write_confusion_csv(out_dir / ("confusion_" + tag + ".csv"),
                                cell.report, eval::kCipherNames);
      std::cout << "cell " << tag << ": accuracy " << cell.report.accuracy
                << "\n";
    }
  } else {
    auto kind = kinds.front();
    if (kinds.size() != 1 ||
        (kind != features::Kind::kDigram && kind != features::Kind::kSequence)) {
      throw ConfigError("length study takes exactly one feature kind, "
                        "digram or sequence");
    }
    auto points =
        eval::length_study(data, lengths, families, kind, split_spec, opt.seed);
    eval::write_length_csv(out_dir / "length_study.csv", points);
    for (const auto& p : points) {
      std::cout << "length " << p.length << " " << to_string(p.family)
                << ": accuracy " << p.accuracy << "\n";
    }
  }
  std::cout << "results in " << out_dir.string() << "\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------- machine

struct MachineOptions {
  std::string cipher, keyfile, wirings;
  uint64_t seed = 0;
  bool have_seed = false, decrypt = false, encrypt = false;
};

int run_machine(const MachineOptions& opt) {
  auto cipher = cipher_from_string(opt.cipher);
  if (!cipher) throw ConfigError("unknown cipher: " + opt.cipher);
  auto wiring = load_wirings(opt.wirings);
  machines::MachineKey key;
  if (!opt.keyfile.empty()) {
    std::ifstream in(opt.keyfile);
    if (!in) throw ConfigError("cannot open keyfile: " + opt.keyfile);
    nlohmann::json j;
    try {
      in >> j;
      key = machines::key_from_json(j);
    } catch (const std::exception& e) {
      throw ConfigError("bad keyfile: " + std::string(e.what()));
    }
    if (key.cipher != *cipher) {
      throw ConfigError("keyfile is for " +
                        std::string(to_string(key.cipher)));
    }
  } else if (opt.have_seed) {
    key = machines::sample_key(*cipher, opt.seed, wiring);
  } else {
    throw ConfigError("machine needs --keyfile or --seed");
  }
  auto violations = machines::validate_key(key, wiring);
  if (!violations.empty()) {
    std::string what = "invalid key:";
    for (const auto& v : violations) what += " " + v + ";";
    throw ConfigError(what);
  }

  std::ostringstream buf;
  buf << std::cin.rdbuf();
  auto normalized = corpus::normalize(buf.str());
  auto machine = machines::make_machine(key, wiring);
  std::cout << (opt.decrypt ? machine->decrypt(normalized.letters)
                            : machine->encrypt(normalized.letters))
            << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ features

struct FeatureOptions {
  std::string dataset_dir, kind = "histogram", out;
  int length = 0;
};

int run_features(const FeatureOptions& opt) {
  auto kind = features::kind_from_string(opt.kind);
  if (!kind) throw ConfigError("unknown feature kind: " + opt.kind);
  auto data = dataset::load(opt.dataset_dir);
  auto matrix = features::batch(data.texts(), *kind,
                                static_cast<size_t>(opt.length));
  features::write_csv(resolve_out_dir(opt.out), matrix, data.labels(),
                      eval::kCipherNames);
  std::cout << "wrote " << matrix.rows() << " x " << matrix.cols()
            << " feature rows to " << opt.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- inspect

int run_inspect(const std::string& path) {
  fs::path p(path);
  if (fs::is_directory(p)) {
    auto data = dataset::load(p);
    std::cout << "dataset " << p.string() << "\n";
    std::cout << "  scenario: " << data.manifest.scenario << "\n";
    std::cout << "  messages: " << data.messages.size() << " (length "
              << data.manifest.message_length << ")\n";
    std::cout << "  keys: " << data.keys.size() << "\n";
    std::cout << "  seed: " << data.manifest.seed << "\n";
    std::cout << "  corpus digest: " << data.manifest.corpus_digest << "\n";
    std::cout << "  generator: " << data.manifest.generator_version << "\n";
    return kExitOk;
  }
  if (p.extension() == ".bin") {
    auto model = classifiers::Model::load(p);
    std::cout << "model " << p.string() << "\n";
    std::cout << "  " << model.hyperparameters().describe() << "\n";
    std::cout << "  classes: " << model.n_classes() << ", seed "
              << model.seed() << "\n";
    return kExitOk;
  }
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open " + path);
  std::cout << in.rdbuf();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WWII cipher machine identification experiments"};
  app.set_config("--config", "", "plain key=value config file; flags override");
  app.require_subcommand(1);

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a labelled dataset");
  cmd_gen->add_option("--corpus", gen.corpus_path, "plaintext corpus file")
      ->required();
  cmd_gen->add_option("--scenario", gen.scenario,
                      "fixed-fixed|random-fixed|fixed-random|random-random");
  cmd_gen->add_option("--per-cipher", gen.per_cipher, "messages per cipher");
  cmd_gen->add_option("--length", gen.length, "letters per message");
  cmd_gen->add_option("--seed", gen.seed, "generation seed");
  cmd_gen->add_option("--out", gen.out, "output directory");
  cmd_gen->add_option("--wirings", gen.wirings, "wiring override directory");
  cmd_gen->add_option("--threads", gen.threads, "worker cap (0 = auto)");

  RunOptions run;
  auto* cmd_run = app.add_subcommand("run", "train and evaluate classifiers");
  cmd_run->add_option("--dataset", run.dataset_dir, "existing dataset dir");
  cmd_run->add_option("--corpus", run.corpus_path, "corpus for inline gen");
  cmd_run->add_option("--scenario", run.scenario, "scenario for inline gen");
  cmd_run->add_option("--per-cipher", run.per_cipher, "messages per cipher");
  cmd_run->add_option("--length", run.length, "letters per message");
  cmd_run->add_option("--features", run.features_csv, "feature kinds, csv");
  cmd_run->add_option("--models", run.models_csv, "model families, csv");
  cmd_run->add_option("--seed", run.seed, "experiment seed");
  cmd_run->add_option("--out", run.out, "output directory");
  cmd_run->add_option("--study", run.study, "extra study to run: length");
  cmd_run->add_option("--lengths", run.lengths_csv, "lengths for the study");
  cmd_run->add_option("--wirings", run.wirings, "wiring override directory");
  cmd_run->add_option("--threads", run.threads, "worker cap (0 = auto)");
  cmd_run->add_flag("--grid-search", run.grid_search,
                    "tune hyperparameters on the training split first");
  cmd_run->add_flag("--dry-run", run.dry_run, "print the plan, write nothing");

  MachineOptions mach;
  auto* cmd_machine =
      app.add_subcommand("machine", "run one cipher machine over stdin");
  cmd_machine->add_option("cipher", mach.cipher,
                          "enigma|m209|purple|sigaba|typex")
      ->required();
  cmd_machine->add_option("--keyfile", mach.keyfile, "JSON key file");
  auto* seed_opt =
      cmd_machine->add_option("--seed", mach.seed, "sample a key from seed");
  cmd_machine->add_flag("--encrypt", mach.encrypt, "encrypt stdin");
  cmd_machine->add_flag("--decrypt", mach.decrypt, "decrypt stdin");
  cmd_machine->add_option("--wirings", mach.wirings,
                          "wiring override directory");

  FeatureOptions feat;
  auto* cmd_features =
      app.add_subcommand("features", "export a feature matrix as CSV");
  cmd_features->add_option("--dataset", feat.dataset_dir, "dataset directory")
      ->required();
  cmd_features->add_option("--kind", feat.kind, "histogram|digram|sequence");
  cmd_features->add_option("--length", feat.length,
                           "truncate messages to this prefix first");
  cmd_features->add_option("--out", feat.out, "output CSV path");

  std::string inspect_path;
  auto* cmd_inspect =
      app.add_subcommand("inspect", "print a manifest, report or model");
  cmd_inspect->add_option("path", inspect_path, "artifact path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_gen(app, gen);
    if (cmd_run->parsed()) return run_run(app, run);
    if (cmd_machine->parsed()) {
      mach.have_seed = seed_opt->count() > 0;
      if (mach.encrypt == mach.decrypt) {
        throw ConfigError("machine needs exactly one of --encrypt/--decrypt");
      }
      return run_machine(mach);
    }
    if (cmd_features->parsed()) return run_features(feat);
    if (cmd_inspect->parsed()) return run_inspect(inspect_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
