#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/ltl.hpp"

namespace decmon {

// SplitMix64 step; used to derive independent per-run seeds from a root seed.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic engine for stream `stream` under `root`.
std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t stream);

// Random per-component traces: each proposition holds independently with
// probability `prob` at each instant.
std::vector<std::vector<Event>> gen_trace(const DistributedAlphabet& alphabet, int len,
                                          double prob, std::mt19937_64& rng);

struct GeneratorError : std::runtime_error {
  explicit GeneratorError(const std::string& what) : std::runtime_error(what) {}
};

// Random formula whose entailment_size is exactly `size` after
// canonicalization. Sizes well above 6 get expensive to monitor.
FormulaPtr gen_formula(const DistributedAlphabet& alphabet, int size,
                       std::mt19937_64& rng);

enum class Pattern {
  Absence,
  Existence,
  BoundedExistence,
  Universality,
  Precedence,
  Response,
  PrecedenceChain,
  ResponseChain,
  ConstrainedChain,
};

// Full names ("response_chain") and short aliases ("respc").
std::optional<Pattern> pattern_by_name(const std::string& name);
const std::vector<std::string>& pattern_names();
std::string pattern_name(Pattern p);

// Instantiates the pattern template over propositions drawn from the alphabet
// (distinct while the alphabet allows it).
FormulaPtr pattern_formula(Pattern p, const DistributedAlphabet& alphabet,
                           std::mt19937_64& rng);

}  // namespace decmon
