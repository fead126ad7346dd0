/**
 * Copyright 2026 The mpemb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mpemb/corpus.h"
#include "mpemb/dictionary.h"
#include "mpemb/embedding.h"
#include "mpemb/error.h"
#include "mpemb/experiment.h"
#include "mpemb/features.h"
#include "mpemb/graph.h"
#include "mpemb/logreg.h"
#include "mpemb/miner.h"
#include "mpemb/snapshot.h"
#include "mpemb/synthetic.h"
#include "mpemb/taxonomy.h"
#include "mpemb/trainer.h"

namespace py = pybind11;
using namespace mpemb;

namespace {

NodeId NodeByName(const KnowledgeGraph& g, const std::string& name) {
  auto id = g.FindNode(name);
  if (!id) throw py::key_error("unknown node '" + name + "'");
  return *id;
}

std::vector<std::string> Words(const MetaPathDictionary& dict, NodeId u,
                               NodeId v) {
  std::vector<std::string> out;
  for (const MetaPath& mp : dict.Get(u, v)) out.push_back(SerializeMetaPath(mp));
  return out;
}

FeatureVector Plain(std::vector<double> values) {
  FeatureVector f;
  f.values = std::move(values);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Meta-path mining, embedding and link-prediction features";
  m.attr("__version__") = "0.1.0";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<IntegrityError>(m, "IntegrityError", error);
  py::register_exception<TaxonomyError>(m, "TaxonomyError", error);
  py::register_exception<OutOfVocabularyError>(m, "OutOfVocabularyError", error);
  py::register_exception<UnsupportedConfigError>(m, "UnsupportedConfigError", error);
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", error);
  py::register_exception<TrainingDivergedError>(m, "TrainingDivergedError", error);
  py::register_exception<ExperimentError>(m, "ExperimentError", error);
  py::register_exception<ResourceError>(m, "ResourceError", error);

  py::class_<KnowledgeGraph>(m, "KnowledgeGraph")
      .def_property_readonly("num_nodes", &KnowledgeGraph::num_nodes)
      .def_property_readonly("num_edges", &KnowledgeGraph::num_edges)
      .def_property_readonly("num_node_types", &KnowledgeGraph::num_node_types)
      .def_property_readonly("num_edge_types", &KnowledgeGraph::num_edge_types)
      .def("node_names", [](const KnowledgeGraph& g) { return g.node_names().names(); })
      .def("node_types", [](const KnowledgeGraph& g, const std::string& node) {
        std::vector<std::string> out;
        for (NodeTypeId t : g.NodeTypes(NodeByName(g, node))) {
          out.push_back(g.node_type_names().Name(t.value));
        }
        return out;
      })
      .def("neighbors", [](const KnowledgeGraph& g, const std::string& node) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const Neighbor& nb : g.Neighbors(NodeByName(g, node))) {
          out.emplace_back(g.node_names().Name(nb.node),
                           g.edge_type_names().Name(nb.type.value));
        }
        return out;
      });

  m.def("load_graph", &LoadGraph, py::arg("nodes"), py::arg("edges"),
        py::arg("types") = std::filesystem::path());
  m.def("save_graph", &SaveGraph, py::arg("graph"), py::arg("nodes"),
        py::arg("edges"), py::arg("types") = std::filesystem::path());
  m.def("load_taxonomy", &LoadTaxonomy, py::arg("file"));
  py::class_<Taxonomy>(m, "Taxonomy");
  m.def("assign_node_types",
        [](const KnowledgeGraph& g, const Taxonomy& tax, const std::string& instance_of,
           int depth_limit) { return AssignNodeTypes(g, tax, instance_of, depth_limit); },
        py::arg("graph"), py::arg("taxonomy"), py::arg("instance_of"), py::arg("depth_limit"));

  py::class_<MiningConfig>(m, "MiningConfig")
      .def(py::init<>())
      .def_readwrite("max_length", &MiningConfig::max_length)
      .def_readwrite("min_length", &MiningConfig::min_length)
      .def_readwrite("node_skip_probability", &MiningConfig::node_skip_probability)
      .def_readwrite("edge_skip_probability", &MiningConfig::edge_skip_probability)
      .def_readwrite("max_paths_per_node", &MiningConfig::max_paths_per_node)
      .def_readwrite("seed", &MiningConfig::seed)
      .def_readwrite("max_records", &MiningConfig::max_records)
      .def_readwrite("workers", &MiningConfig::workers);

  py::class_<MetaPathDictionary>(m, "MetaPathDictionary")
      .def_property_readonly("num_pairs", &MetaPathDictionary::num_pairs)
      .def_property_readonly("num_paths", &MetaPathDictionary::num_paths)
      .def_property_readonly("total_records", &MetaPathDictionary::total_records)
      .def("same_content", &MetaPathDictionary::SameContent, py::arg("other"),
           py::arg("per_direction") = true);

  m.def("mine_all", [](const KnowledgeGraph& g, const MiningConfig& cfg) {
    py::gil_scoped_release release;
    return MineAll(g, cfg);
  }, py::arg("graph"), py::arg("config") = MiningConfig{});
  m.def("mine", [](const KnowledgeGraph& g, const MiningConfig& cfg) {
    py::gil_scoped_release release;
    return MineProbabilistic(g, cfg);
  }, py::arg("graph"), py::arg("config") = MiningConfig{});
  m.def("meta_paths", [](const MetaPathDictionary& dict, const KnowledgeGraph& g,
                         const std::string& u, const std::string& v) {
    return Words(dict, NodeByName(g, u), NodeByName(g, v));
  }, py::arg("dictionary"), py::arg("graph"), py::arg("u"), py::arg("v"),
     "Meta-path words between two nodes, oriented from u to v");
  m.def("write_dictionary", &WriteDictionary, py::arg("dictionary"), py::arg("graph"),
        py::arg("dir"), py::arg("shards") = 1);
  m.def("read_dictionary", [](const KnowledgeGraph& g, const std::filesystem::path& dir) {
    const auto files = DictionaryShards(dir);
    return ReadDictionary(g, files);
  }, py::arg("graph"), py::arg("dir"));

  py::class_<SentenceConfig>(m, "SentenceConfig")
      .def(py::init<>())
      .def_readwrite("sentence_length", &SentenceConfig::sentence_length)
      .def_readwrite("samples_per_pair", &SentenceConfig::samples_per_pair)
      .def_readwrite("seed", &SentenceConfig::seed)
      .def_readwrite("weight_by_count", &SentenceConfig::weight_by_count)
      .def_readwrite("workers", &SentenceConfig::workers);

  py::class_<Corpus>(m, "Corpus")
      .def("sentences", [](const Corpus& c) {
        std::vector<std::vector<std::string>> out;
        for (const auto& s : c.sentences()) {
          auto& row = out.emplace_back();
          for (std::uint32_t w : s) row.push_back(c.words()[w]);
        }
        return out;
      })
      .def_property_readonly("num_tokens", &Corpus::num_tokens);
  m.def("build_sentences", &BuildSentences, py::arg("dictionary"),
        py::arg("config") = SentenceConfig{});
  m.def("write_corpus", &WriteCorpus, py::arg("corpus"), py::arg("file"));
  m.def("read_corpus", &ReadCorpus, py::arg("file"));

  py::class_<NgramConfig>(m, "NgramConfig")
      .def(py::init<>())
      .def_readwrite("min_n", &NgramConfig::min_n)
      .def_readwrite("max_n", &NgramConfig::max_n)
      .def_readwrite("buckets", &NgramConfig::buckets);
  m.def("ngrams", &NgramStrings, py::arg("word"), py::arg("min_n"), py::arg("max_n"));

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("dim", &TrainConfig::dim)
      .def_readwrite("window", &TrainConfig::window)
      .def_readwrite("negatives", &TrainConfig::negatives)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("ngrams", &TrainConfig::ngrams)
      .def_readwrite("min_count", &TrainConfig::min_count)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("workers", &TrainConfig::workers);

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def("words", [](const EmbeddingTable& t) {
        std::vector<std::string> out;
        for (std::uint32_t w = 0; w < t.vocab().size(); ++w) out.push_back(t.vocab().word(w));
        return out;
      })
      .def("emb_word", [](const EmbeddingTable& t, const std::string& word) {
        auto v = t.EmbWord(word);
        return py::make_tuple(v.values, v.flagged);
      }, py::arg("word"), "(vector, composed_from_grams)")
      .def("score", [](const EmbeddingTable& t, const std::string& w, const std::string& c) {
        return t.Score(w, c);
      }, py::arg("word"), py::arg("context"))
      .def("emb_node_type", [](const EmbeddingTable& t, const KnowledgeGraph& g,
                               const std::string& type) {
        auto id = g.FindNodeType(type);
        if (!id) throw py::key_error("unknown node type '" + type + "'");
        auto v = t.EmbNodeType(*id);
        return py::make_tuple(v.values, v.flagged);
      }, py::arg("graph"), py::arg("type"), "(vector, bucket_shared)")
      .def("save", &EmbeddingTable::Save, py::arg("file"))
      .def_static("load", &EmbeddingTable::Load, py::arg("file"))
      .def("write_word_vectors", &EmbeddingTable::WriteWordVectors, py::arg("file"))
      .def("__eq__", &EmbeddingTable::operator==);

  m.def("train", [](const Corpus& corpus, const TrainConfig& cfg) {
    TrainStats stats;
    EmbeddingTable table;
    {
      py::gil_scoped_release release;
      table = Train(corpus, cfg, &stats);
    }
    return py::make_tuple(std::move(table), stats.epoch_loss);
  }, py::arg("corpus"), py::arg("config") = TrainConfig{}, "(table, epoch_losses)");

  m.def("edge_embedding", [](const KnowledgeGraph& g, const MetaPathDictionary& dict,
                             const EmbeddingTable& t, const std::string& u,
                             const std::string& v) {
    PathEmbeddingCache cache(dict, t);
    auto f = EdgeEmbedding(NodeByName(g, u), NodeByName(g, v), dict, cache);
    return py::make_tuple(f.values, f.empty);
  }, py::arg("graph"), py::arg("dictionary"), py::arg("table"), py::arg("u"), py::arg("v"));
  m.def("node_embedding_mp", [](const KnowledgeGraph& g, const MetaPathDictionary& dict,
                                const EmbeddingTable& t, const std::string& node,
                                std::size_t top_k) {
    PathEmbeddingCache cache(dict, t);
    const NodeMetaPathIndex index(dict, g.num_nodes());
    auto f = NodeEmbeddingMetaPaths(NodeByName(g, node), index, cache, top_k);
    return py::make_tuple(f.values, f.empty);
  }, py::arg("graph"), py::arg("dictionary"), py::arg("table"), py::arg("node"),
     py::arg("top_k") = 0);
  m.def("node_embedding_types", [](const KnowledgeGraph& g, const EmbeddingTable& t,
                                   const std::string& node) {
    return NodeEmbeddingTypes(NodeByName(g, node), g, t).values;
  }, py::arg("graph"), py::arg("table"), py::arg("node"));
  m.def("combine_pair", [](std::vector<double> a, std::vector<double> b,
                           const std::string& op) {
    return CombinePair(Plain(std::move(a)), Plain(std::move(b)), ParsePairOperator(op)).values;
  }, py::arg("a"), py::arg("b"), py::arg("op"));

  m.def("diff_snapshots", [](const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return DiffSnapshots(a, b);
  }, py::arg("earlier"), py::arg("later"));
  py::class_<SnapshotDiff>(m, "SnapshotDiff")
      .def_property_readonly("new_nodes", [](const SnapshotDiff& d) { return d.new_nodes; })
      .def_property_readonly("new_edges", [](const SnapshotDiff& d) {
        std::vector<py::tuple> out;
        for (const NewEdge& e : d.new_edges) {
          out.push_back(py::make_tuple(e.src, e.dst, e.type, e.touches_new_node));
        }
        return out;
      });

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_property("feature",
                    [](const ExperimentConfig& c) { return std::string(ToString(c.feature)); },
                    [](ExperimentConfig& c, const std::string& s) { c.feature = ParseFeatureMode(s); })
      .def_property("op",
                    [](const ExperimentConfig& c) { return std::string(ToString(c.op)); },
                    [](ExperimentConfig& c, const std::string& s) { c.op = ParsePairOperator(s); })
      .def_readwrite("train_fraction", &ExperimentConfig::train_fraction)
      .def_readwrite("sample_fraction", &ExperimentConfig::sample_fraction)
      .def_readwrite("repetitions", &ExperimentConfig::repetitions)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("top_k", &ExperimentConfig::top_k)
      .def_readwrite("workers", &ExperimentConfig::workers);

  py::class_<Report>(m, "Report")
      .def_readonly("f1", &Report::f1)
      .def_readonly("mean", &Report::mean)
      .def_readonly("std", &Report::stddev)
      .def_readonly("dim", &Report::dim)
      .def_readonly("effective_op", &Report::effective_op)
      .def_readonly("downgraded", &Report::downgraded)
      .def("key_values", &ReportKeyValues);

  m.def("run_experiment", [](const ExperimentConfig& cfg, const KnowledgeGraph& g0,
                             const SnapshotDiff& diff, const EmbeddingTable& table,
                             const MetaPathDictionary* dict) {
    py::gil_scoped_release release;
    return RunExperiment(cfg, ExperimentInputs{&g0, &diff, dict, &table});
  }, py::arg("config"), py::arg("g0"), py::arg("diff"), py::arg("table"),
     py::arg("dictionary") = nullptr);
  m.def("macro_f1", [](std::vector<int> pred, std::vector<int> labels) {
    return MacroF1(pred, labels);
  }, py::arg("predictions"), py::arg("labels"));

  m.def("two_block_graph", [](std::size_t block_size, double p_in, double p_out,
                              double holdout, std::uint64_t seed) {
    auto pair = MakeTwoBlockGraph({block_size, p_in, p_out, holdout, seed});
    return py::make_tuple(std::move(pair.t0), std::move(pair.t1));
  }, py::arg("block_size") = 500, py::arg("p_in") = 0.02, py::arg("p_out") = 0.001,
     py::arg("holdout") = 0.1, py::arg("seed") = 0);
}
