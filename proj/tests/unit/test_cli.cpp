// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "../support/fixtures.hpp"
#include "senspick/cli.hpp"
#include "senspick/training.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "senspick");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = senspick::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string echoed_config(const std::string& err) {
  auto begin = err.find("effective config\n");
  auto end = err.find("# end config");
  REQUIRE(begin != std::string::npos);
  REQUIRE(end != std::string::npos);
  return err.substr(begin, end - begin);
}

fs::path overfit(const std::string& name) { return testing::fixture_dir() / "overfit" / name; }

// A two-epoch model on the overfit fixture, trained once per process.
const fs::path& model_dir() {
  static const fs::path dir = [] {
    auto d = testing::scratch_dir("cli");
    auto r = cli({"train", "--config", overfit("config.yaml").string(), "--wordnet", overfit("").string(), "--corpus",
                  overfit("train.jsonl").string(), "--embeddings", overfit("embeddings.txt").string(), "--out",
                  (d / "m.ckpt").string(), "--epochs", "2", "--seed", "5"});
    REQUIRE(r.code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  auto r = cli({"train", "--corpus", "x.jsonl", "--embeddings", "e.txt", "--out", "m.ckpt"});
  CHECK(r.code == senspick::cli::kExitUsage);
  CHECK(r.err.find("--wordnet") != std::string::npos);

  r = cli({"evaluate", "--no-such-flag", "1"});
  CHECK(r.code == senspick::cli::kExitUsage);
  CHECK(r.err.find("--eval") != std::string::npos);  // help text lists the options

  r = cli({});
  CHECK(r.code == senspick::cli::kExitUsage);

  r = cli({"train", "--wordnet", "w", "--corpus", "c", "--embeddings", "e", "--out", "o", "--epochs", "many"});
  CHECK(r.code == senspick::cli::kExitUsage);

  auto dir = testing::scratch_dir("cli-cfg");
  std::ofstream(dir / "bad.yaml") << "epochz: 3\n";
  r = cli({"train", "--config", (dir / "bad.yaml").string()});
  CHECK(r.code == senspick::cli::kExitUsage);
  CHECK(r.err.find("epochz") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("data errors exit with 2") {
  auto r = cli({"baseline", "--kind", "first-sense", "--wordnet", overfit("").string(), "--eval", "/nonexistent.jsonl"});
  CHECK(r.code == senspick::cli::kExitData);
  CHECK(r.err.find("/nonexistent.jsonl") != std::string::npos);
}

TEST_CASE("train writes both checkpoints and the log; echo shows effective values") {
  const auto& dir = model_dir();
  CHECK(fs::exists(dir / "m.ckpt"));
  CHECK(fs::exists(dir / "m.ckpt.best"));
  auto log = slurp(dir / "m.ckpt.log.csv");
  CHECK(log.rfind("epoch,train_loss,dev_acc\n", 0) == 0);
  CHECK(std::count(log.begin(), log.end(), '\n') == 3);
  auto ckpt = senspick::load_checkpoint(dir / "m.ckpt");
  CHECK(ckpt.train_config.epochs == 2);  // flag beats config file
  CHECK(ckpt.train_config.seed == 5);
  CHECK(ckpt.model.config.encoder.hidden_units == 32);  // from the config file
}

TEST_CASE("seed precedence: flag, config, environment, default") {
  auto dir = testing::scratch_dir("cli-seed");
  std::ofstream(dir / "seed.yaml") << "seed: 9\n";
  auto base = std::vector<std::string>{"baseline", "--kind", "first-sense", "--wordnet", overfit("").string(), "--eval",
                                       overfit("heldout.jsonl").string(), "--report", (dir / "r.json").string()};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return echoed_config(cli(args).err);
  };
  ::setenv("SENSPICK_SEED", "77", 1);
  CHECK(with({"--seed", "3", "--config", (dir / "seed.yaml").string()}).find("seed: 3") != std::string::npos);
  CHECK(with({"--config", (dir / "seed.yaml").string()}).find("seed: 9") != std::string::npos);
  CHECK(with({}).find("seed: 77") != std::string::npos);
  ::unsetenv("SENSPICK_SEED");
  CHECK(with({}).find("seed: 77") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("evaluate writes a report and predictions; repeated runs match") {
  const auto& dir = model_dir();
  auto args = std::vector<std::string>{"evaluate", "--ckpt", (dir / "m.ckpt").string(), "--eval",
                                       overfit("heldout.jsonl").string(), "--report", (dir / "r1.json").string(),
                                       "--dump-attention", (dir / "att.jsonl").string()};
  auto first = cli(args);
  REQUIRE(first.code == 0);
  auto report = nlohmann::json::parse(slurp(dir / "r1.json"));
  CHECK(report["overall"]["attempted"] == 20);
  CHECK(fs::exists(dir / "r1.json.predictions.tsv"));

  args[6] = (dir / "r2.json").string();
  auto second = cli(args);
  REQUIRE(second.code == 0);
  CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));
  CHECK(slurp(dir / "r1.json.predictions.tsv") == slurp(dir / "r2.json.predictions.tsv"));
  // Same inputs, same echoed configuration apart from the report path.
  auto a = echoed_config(first.err), b = echoed_config(second.err);
  CHECK(a.replace(a.find("r1.json"), 7, "rX.json") == b.replace(b.find("r2.json"), 7, "rX.json"));

  std::ifstream dump(dir / "att.jsonl");
  std::string line;
  std::size_t records = 0;
  while (std::getline(dump, line)) {
    auto j = nlohmann::json::parse(line);
    double sum = 0;
    for (double w : j["phi"]) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["phi"].size() == j["scores"].size());
    ++records;
  }
  CHECK(records == 20 * 3);  // default pass count
}

TEST_CASE("evaluate --baseline needs no checkpoint") {
  auto r = cli({"evaluate", "--baseline", "mfs", "--wordnet", overfit("").string(), "--corpus",
                overfit("train.jsonl").string(), "--eval", overfit("heldout.jsonl").string()});
  REQUIRE(r.code == 0);
  auto report = nlohmann::json::parse(r.out);
  CHECK(report["system"] == "mfs");
  CHECK(report["overall"]["f1"].get<double>() == 50.0);
}

TEST_CASE("disambiguate prints the chosen sense and its distribution") {
  const auto& dir = model_dir();
  auto r = cli({"disambiguate", "--ckpt", (dir / "m.ckpt").string(), "--sentence", "a steep slope here",
                "--target-index", "2", "--lemma", "slope", "--pos", "n"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["sense_id"] == "slope%1");
  REQUIRE(j["distribution"].size() == 1);
  CHECK(j["distribution"][0]["prob"].get<double>() == 1.0);
  CHECK_FALSE(j["gloss"].get<std::string>().empty());

  r = cli({"disambiguate", "--ckpt", (dir / "m.ckpt").string(), "--sentence", "the bank of the river",
           "--target-index", "1", "--lemma", "bank", "--pos", "n", "--k-depth", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  j = nlohmann::json::parse(r.out);
  CHECK(j["used_lemma_head"] == true);
  double total = 0;
  for (const auto& d : j["distribution"]) total += d["prob"].get<double>();
  CHECK(total == doctest::Approx(1.0));

  r = cli({"disambiguate", "--ckpt", (dir / "m.ckpt").string(), "--sentence", "a b", "--target-index", "5",
           "--lemma", "bank", "--pos", "n"});
  CHECK(r.code == senspick::cli::kExitUsage);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = SENSPICK_CLI_PATH;
  CHECK(WEXITSTATUS(std::system((bin + " --help > /dev/null 2>&1").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((bin + " bogus > /dev/null 2>&1").c_str())) == 1);
}
