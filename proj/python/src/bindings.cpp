// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

// Python bindings for the main pipeline operations. Reports are handed
// over as the same JSON text the command-line tool writes.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "senspick/cli.hpp"
#include "senspick/converter.hpp"
#include "senspick/evaluation.hpp"
#include "senspick/training.hpp"

namespace py = pybind11;
using namespace senspick;

namespace {

py::dict sense_dict(const Sense& s) {
  py::dict d;
  d["sense_id"] = s.sense_id;
  d["lemma"] = s.lemma;
  d["pos"] = s.pos;
  d["rank"] = s.rank;
  d["gloss"] = s.gloss;
  return d;
}

std::vector<py::dict> senses_of(const SenseInventory& inv, const std::string& lemma, Pos pos) {
  std::vector<py::dict> out;
  for (const Sense* s : inv.senses_of(lemma, pos)) out.push_back(sense_dict(*s));
  return out;
}

py::dict expand(const SenseInventory& inv, const std::string& sense_id, int depth, int cap) {
  const Sense* s = inv.find(sense_id);
  if (!s) throw py::key_error("unknown sense " + sense_id);
  auto set = inv.expand_gloss(*s, depth, cap);
  py::dict d;
  d["sense_id"] = set.sense_id;
  d["m"] = set.m;
  d["n"] = set.n;
  std::vector<std::pair<int, std::vector<std::string>>> entries;
  for (const auto& e : set.entries) entries.emplace_back(e.offset, e.gloss);
  d["entries"] = entries;
  return d;
}

Pos pos_arg(const py::object& value) {
  if (py::isinstance<Pos>(value)) return value.cast<Pos>();
  auto pos = parse_pos(value.cast<std::string>());
  if (!pos) throw py::value_error("unknown part of speech: " + value.cast<std::string>());
  return *pos;
}

py::dict disambiguate_py(const Checkpoint& ckpt, const SenseInventory& inv, const EmbeddingTable& table,
                         std::vector<std::string> tokens, std::size_t target_index, const std::string& lemma,
                         const py::object& pos) {
  Instance inst;
  inst.instance_id = "python";
  inst.tokens = std::move(tokens);
  inst.target_index = target_index;
  inst.lemma = lemma;
  inst.pos = pos_arg(pos);
  auto result = disambiguate(inst, ckpt.model, inv, table);
  py::dict d;
  d["sense_id"] = result.sense_id;
  d["candidates"] = result.candidates;
  d["probs"] = result.distribution.probs;
  d["used_lemma_head"] = result.used_head;
  py::list passes;
  for (const auto& p : result.attention.passes) passes.append(py::make_tuple(p.weights, p.scores));
  d["attention"] = passes;
  return d;
}

py::tuple cli_run(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"senspick"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SensPick word sense disambiguation core";

  py::register_exception<LoadError>(m, "LoadError", PyExc_IOError);
  py::register_exception<UnresolvableError>(m, "UnresolvableError", PyExc_LookupError);
  py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);

  py::enum_<Pos>(m, "Pos")
      .value("noun", Pos::noun)
      .value("verb", Pos::verb)
      .value("adj", Pos::adj)
      .value("adv", Pos::adv);

  py::class_<SenseInventory>(m, "SenseInventory")
      .def_static("load", &SenseInventory::load, py::arg("directory"))
      .def("__len__", &SenseInventory::size)
      .def("senses_of", &senses_of, py::arg("lemma"), py::arg("pos"))
      .def("first_sense",
           [](const SenseInventory& inv, const std::string& lemma, Pos pos) -> std::optional<std::string> {
             const Sense* s = inv.first_sense(lemma, pos);
             if (!s) return std::nullopt;
             return s->sense_id;
           })
      .def("expand_gloss", &expand, py::arg("sense_id"), py::arg("depth"), py::arg("hyponym_cap") = kDefaultHyponymCap)
      .def_property_readonly("fingerprint", &SenseInventory::fingerprint);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def_readwrite("instance_id", &Instance::instance_id)
      .def_readwrite("tokens", &Instance::tokens)
      .def_readwrite("target_index", &Instance::target_index)
      .def_readwrite("lemma", &Instance::lemma)
      .def_readwrite("pos", &Instance::pos)
      .def_readwrite("gold_sense_ids", &Instance::gold_sense_ids)
      .def("__repr__", [](const Instance& i) { return "<Instance " + i.instance_id + ">"; });

  m.def("load_corpus", [](const std::filesystem::path& path, const SenseInventory& inv) {
    auto load = load_corpus(path, inv);
    std::vector<std::pair<std::size_t, std::string>> skipped;
    for (const auto& s : load.report.skipped) skipped.emplace_back(s.line, s.reason);
    return py::make_tuple(load.instances, skipped);
  }, py::arg("path"), py::arg("inventory"), "Returns (instances, [(line, reason), ...]).");
  m.def("write_corpus", [](const std::filesystem::path& path, const std::vector<Instance>& xs) {
    write_corpus(path, xs);
  });
  m.def("convert_unified_xml", [](const std::filesystem::path& xml, const std::filesystem::path& keys) {
    return convert_unified_xml(xml, keys).instances;
  });

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def_static("load", [](const std::filesystem::path& path, int dim) { return EmbeddingTable::load(path, dim); },
                  py::arg("path"), py::arg("dim"))
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def("__len__", &EmbeddingTable::vocab_size)
      .def("__contains__", [](const EmbeddingTable& t, const std::string& w) { return t.contains(w); })
      .def("lookup", &EmbeddingTable::lookup)
      .def_property_readonly("checksum", &EmbeddingTable::checksum);

  py::class_<EncoderConfig>(m, "EncoderConfig")
      .def(py::init<>())
      .def_readwrite("hidden_units", &EncoderConfig::hidden_units)
      .def_readwrite("num_layers", &EncoderConfig::num_layers);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("dropout", &TrainConfig::dropout)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("k_depth", &TrainConfig::k_depth)
      .def_readwrite("attention_passes", &TrainConfig::attention_passes)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("grad_clip", &TrainConfig::grad_clip)
      .def_readwrite("dev_split", &TrainConfig::dev_split)
      .def_readwrite("hyponym_cap", &TrainConfig::hyponym_cap);

  py::class_<Checkpoint>(m, "Checkpoint")
      .def("save", [](const Checkpoint& c, const std::filesystem::path& p) { save_checkpoint(c, p); })
      .def_readonly("epoch", &Checkpoint::epoch)
      .def_readonly("dev_accuracy", &Checkpoint::dev_accuracy)
      .def_readwrite("provenance", &Checkpoint::provenance)
      .def_property_readonly("k_depth", [](const Checkpoint& c) { return c.model.config.k_depth; })
      .def_property_readonly("parameter_count", [](const Checkpoint& c) { return c.model.parameter_count(); })
      .def("parameters", [](const Checkpoint& c) { return c.model.flatten(); })
      .def("override_k_depth", &override_k_depth);
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("final_checkpoint", &TrainResult::final_checkpoint)
      .def_readonly("best_checkpoint", &TrainResult::best_checkpoint)
      .def_readonly("first_batch_loss", &TrainResult::first_batch_loss)
      .def_readonly("skipped", &TrainResult::skipped)
      .def_property_readonly("log", [](const TrainResult& r) {
        std::vector<std::tuple<int, double, std::optional<double>>> out;
        for (const auto& e : r.log) out.emplace_back(e.epoch, e.train_loss, e.dev_accuracy);
        return out;
      });

  m.def(
      "train",
      [](const std::vector<Instance>& corpus, const SenseInventory& inv, const EmbeddingTable& table,
         const TrainConfig& config, const EncoderConfig& encoder) {
        py::gil_scoped_release release;
        return train(corpus, inv, table, config, encoder);
      },
      py::arg("corpus"), py::arg("inventory"), py::arg("table"), py::arg("config") = TrainConfig{},
      py::arg("encoder") = EncoderConfig{});

  m.def(
      "evaluate",
      [](const Checkpoint& c, const std::vector<Instance>& xs, const SenseInventory& inv, const EmbeddingTable& t) {
        auto report = evaluate(c, xs, inv, t);
        return py::make_tuple(report_json(report), predictions_tsv(report));
      },
      "Returns (report JSON text, predictions TSV text).");
  m.def("mfs_baseline", [](const Checkpoint& c, const std::vector<Instance>& xs, const SenseInventory& inv) {
    auto report = mfs_baseline(c.frequencies, xs, inv);
    return py::make_tuple(report_json(report), predictions_tsv(report));
  });
  m.def("first_sense_baseline", [](const std::vector<Instance>& xs, const SenseInventory& inv) {
    auto report = first_sense_baseline(xs, inv);
    return py::make_tuple(report_json(report), predictions_tsv(report));
  });
  m.def("disambiguate", &disambiguate_py, py::arg("checkpoint"), py::arg("inventory"), py::arg("table"),
        py::arg("tokens"), py::arg("target_index"), py::arg("lemma"), py::arg("pos"));
  m.def("cli_run", &cli_run, py::arg("args"), "Runs the command-line tool in process; returns (code, out, err).");
}
