#pragma once

// Randomized instance builders shared across the test binaries.

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/monitor.hpp"

namespace testsup {

// Partition of n_props propositions over n_components non-empty blocks.
// Requires n_props >= n_components.
inline decmon::DistributedAlphabet random_alphabet(std::mt19937_64& rng, int n_props,
                                                   int n_components) {
  std::vector<std::string> names;
  names.reserve(n_props);
  for (int p = 0; p < n_props; ++p) names.push_back("p" + std::to_string(p));
  std::vector<int> ids(n_props);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  // Deal one proposition to each component first so no block is empty.
  std::vector<std::vector<int>> blocks(n_components);
  for (int c = 0; c < n_components; ++c) blocks[c].push_back(ids[c]);
  std::uniform_int_distribution<int> which(0, n_components - 1);
  for (int k = n_components; k < n_props; ++k) blocks[which(rng)].push_back(ids[k]);
  return decmon::DistributedAlphabet(std::move(names), std::move(blocks));
}

// Deterministic complete acceptor with random shape (dense table).
inline decmon::Acceptor random_acceptor(std::mt19937_64& rng, int n_props,
                                        int max_states) {
  std::uniform_int_distribution<int> nstates(1, max_states);
  decmon::Acceptor a;
  a.n_props = n_props;
  a.n_states = nstates(rng);
  std::uniform_int_distribution<int> state(0, a.n_states - 1);
  a.init = state(rng);
  std::uniform_int_distribution<int> coin(0, 1);
  a.accepting.resize(a.n_states);
  for (int q = 0; q < a.n_states; ++q) a.accepting[q] = coin(rng) == 1;
  a.delta = decmon::TransitionFn::dense(a.n_states, n_props);
  decmon::Event full =
      n_props == 0 ? 0 : static_cast<decmon::Event>((1u << n_props) - 1);
  for (int q = 0; q < a.n_states; ++q)
    for (decmon::Event e = 0;; ++e) {
      a.delta.set(q, e, state(rng));
      if (e == full) break;
    }
  return a;
}

// Random permutation forming a single cycle over n monitors.
inline std::vector<int> random_cycle(std::mt19937_64& rng, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> choose(n);
  for (int i = 0; i < n; ++i) choose[order[i]] = order[(i + 1) % n];
  return choose;
}

inline std::vector<decmon::Event> random_global_trace(
    std::mt19937_64& rng, const decmon::DistributedAlphabet& alphabet, int len,
    double prob = 0.5) {
  std::bernoulli_distribution flip(prob);
  std::vector<decmon::Event> out;
  out.reserve(len);
  for (int i = 0; i < len; ++i) {
    decmon::Event e = 0;
    for (int p = 0; p < alphabet.n_props(); ++p)
      if (flip(rng)) e |= (1u << p);
    out.push_back(e);
  }
  return out;
}

}  // namespace testsup
