#pragma once

// Corpus runner: each claim becomes a check evaluated ring by ring.

#include "edr/engine.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace edr {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CorpusConfig {
  std::vector<std::string> rings;
  std::size_t size_bound = kDefaultSizeBound;
  std::size_t exhaustive_bound = 8;     // exhaustive 2x2 / tuple sweeps up to this size
  std::size_t matrix_size_bound = 128;  // sampled reductions up to this size
  std::size_t samples_2x2 = 1000;
  std::size_t samples_3x3 = 200;
  std::size_t tuple_samples = 300;  // kernel tuples and Step I/II rows on larger rings
  std::size_t z_tuple_samples = 10000;
  std::size_t dualint_samples = 500;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> checks;  // empty: all
  unsigned workers = 0;             // 0: EDR_WORKERS, else hardware concurrency

  nlohmann::json to_json() const;
  // Missing keys keep their defaults; throws ParseError on malformed values.
  static CorpusConfig from_json(const nlohmann::json& doc);
};

const std::vector<std::string>& default_corpus_specs();
CorpusConfig default_corpus();

const std::vector<std::string>& check_ids();
bool is_info_check(const std::string& id);

unsigned resolve_workers(unsigned requested);

// {config, results: [{id, statement, per_ring, aggregate, info}], summary}
nlohmann::json run_corpus(const CorpusConfig& config);

// The localization of Z at {3, 5} checked through its residue map.
nlohmann::json check_example_2_11();

// Finite rings go through the engine; Z, zloc and dualint report the
// predicates decidable from their structure.
PropertyReport classify(const RingHandle& ring, std::size_t bound = kDefaultSizeBound);

}  // namespace edr
