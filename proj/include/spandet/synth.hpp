#pragma once

#include <array>
#include <cstdint>
#include <tuple>
#include <vector>

#include "spandet/corpus.hpp"
#include "spandet/rng.hpp"

namespace spandet {

// Configuration for the seeded synthetic disfluency generator. Fluent
// backbones are chains of uniformly sampled vocabulary tokens; at most one
// disfluency (repetition, restart, or repair) is inserted per sentence.
struct SynthConfig {
  int num_sentences = 1000;
  int vocab_size = 50;
  int len_min = 5;   // fluent backbone length range, inclusive
  int len_max = 12;
  double p_disfluent = 0.7;
  double weight_repetition = 0.7;
  double weight_restart = 0.15;
  double weight_repair = 0.15;
  int max_reparandum_len = 3;
  std::uint64_t seed = 42;
};

// Throws DataError when a field is out of range.
void validate_config(const SynthConfig& config);

// Deterministic for a given config (the seed is part of it).
std::vector<AnnotatedSentence> generate(const SynthConfig& config);

// Single edit steps, exposed for direct testing. Each inserts the reparandum
// (labeled Disfluent) in front of the fluent material it abandons; the
// reparandum's first token attaches to its fluent counterpart (repetition and
// repair) or to the following fluent token (restart), and later reparandum
// tokens chain to their predecessor the way the backbone does.
AnnotatedSentence apply_repetition(const AnnotatedSentence& backbone, int start, int len);
AnnotatedSentence apply_restart(const AnnotatedSentence& backbone, int len, int vocab_size, Rng& rng);
AnnotatedSentence apply_repair(const AnnotatedSentence& backbone, int start, int len, int vocab_size, Rng& rng);

// Seeded shuffle split into (train, dev, test); sizes follow the ratios by
// largest remainder, so each part is within one sentence of its quota.
std::tuple<std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>>
split(const std::vector<AnnotatedSentence>& corpus, const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace spandet
