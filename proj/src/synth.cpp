#include "spandet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spandet/errors.hpp"

namespace spandet {

namespace {

std::string vocab_token(int index) { return "w" + std::to_string(index); }

AnnotatedSentence make_backbone(int length, int vocab_size, Rng& rng) {
  AnnotatedSentence sentence;
  sentence.tokens.reserve(length);
  for (int t = 0; t < length; ++t) {
    sentence.tokens.push_back(vocab_token(static_cast<int>(rng.uniform_int(0, vocab_size - 1))));
    sentence.labels.push_back(TokenLabel::Fluent);
    sentence.heads.push_back(t);  // chain: token t+1 attaches to t, token 1 is root
  }
  return sentence;
}

// Splices `reparandum` in front of backbone position `start` (1-indexed).
// The first reparandum token attaches to `root_attachment` counted in the
// original backbone positions; later ones chain to their predecessor.
AnnotatedSentence splice_reparandum(const AnnotatedSentence& backbone,
                                    const std::vector<std::string>& reparandum, int start,
                                    int root_attachment) {
  const int n = backbone.size();
  const int k = static_cast<int>(reparandum.size());
  AnnotatedSentence out;
  out.tokens.reserve(n + k);

  for (int t = 0; t < start - 1; ++t) {
    out.tokens.push_back(backbone.tokens[t]);
    out.labels.push_back(backbone.labels[t]);
    out.heads.push_back(backbone.heads[t] >= start ? backbone.heads[t] + k : backbone.heads[t]);
  }
  for (int r = 0; r < k; ++r) {
    out.tokens.push_back(reparandum[r]);
    out.labels.push_back(TokenLabel::Disfluent);
    out.heads.push_back(r == 0 ? root_attachment + k : start + r - 1);
  }
  for (int t = start - 1; t < n; ++t) {
    out.tokens.push_back(backbone.tokens[t]);
    out.labels.push_back(backbone.labels[t]);
    out.heads.push_back(backbone.heads[t] >= start ? backbone.heads[t] + k : backbone.heads[t]);
  }
  return out;
}

}  // namespace

void validate_config(const SynthConfig& config) {
  if (config.num_sentences < 0) throw DataError("synth config: num_sentences must be >= 0");
  if (config.vocab_size < 1) throw DataError("synth config: vocab_size must be >= 1");
  if (config.len_min < 2) throw DataError("synth config: len_min must be >= 2");
  if (config.len_max < config.len_min) throw DataError("synth config: len_max must be >= len_min");
  if (config.p_disfluent < 0.0 || config.p_disfluent > 1.0)
    throw DataError("synth config: p_disfluent must lie in [0, 1]");
  if (config.weight_repetition < 0.0 || config.weight_restart < 0.0 || config.weight_repair < 0.0)
    throw DataError("synth config: type weights must be non-negative");
  if (config.weight_repetition + config.weight_restart + config.weight_repair <= 0.0)
    throw DataError("synth config: type weights must not all be zero");
  if (config.max_reparandum_len < 1) throw DataError("synth config: max_reparandum_len must be >= 1");
}

AnnotatedSentence apply_repetition(const AnnotatedSentence& backbone, int start, int len) {
  std::vector<std::string> copy(backbone.tokens.begin() + start - 1,
                                backbone.tokens.begin() + start - 1 + len);
  return splice_reparandum(backbone, copy, start, start);
}

AnnotatedSentence apply_restart(const AnnotatedSentence& backbone, int len, int vocab_size, Rng& rng) {
  std::vector<std::string> prefix(len);
  for (auto& token : prefix) token = vocab_token(static_cast<int>(rng.uniform_int(0, vocab_size - 1)));
  return splice_reparandum(backbone, prefix, 1, 1);
}

AnnotatedSentence apply_repair(const AnnotatedSentence& backbone, int start, int len, int vocab_size,
                               Rng& rng) {
  std::vector<std::string> resampled(len);
  for (auto& token : resampled) token = vocab_token(static_cast<int>(rng.uniform_int(0, vocab_size - 1)));
  return splice_reparandum(backbone, resampled, start, start);
}

std::vector<AnnotatedSentence> generate(const SynthConfig& config) {
  validate_config(config);
  Rng rng(config.seed);
  std::vector<AnnotatedSentence> corpus;
  corpus.reserve(config.num_sentences);

  const double weights[3] = {config.weight_repetition, config.weight_restart, config.weight_repair};
  for (int i = 0; i < config.num_sentences; ++i) {
    const int n = static_cast<int>(rng.uniform_int(config.len_min, config.len_max));
    AnnotatedSentence sentence = make_backbone(n, config.vocab_size, rng);
    if (rng.bernoulli(config.p_disfluent)) {
      const auto type = rng.pick_weighted(weights);
      const int k = static_cast<int>(rng.uniform_int(1, std::min(config.max_reparandum_len, n)));
      if (type == 0) {
        const int start = static_cast<int>(rng.uniform_int(1, n - k + 1));
        sentence = apply_repetition(sentence, start, k);
      } else if (type == 1) {
        sentence = apply_restart(sentence, k, config.vocab_size, rng);
      } else {
        const int start = static_cast<int>(rng.uniform_int(1, n - k + 1));
        sentence = apply_repair(sentence, start, k, config.vocab_size, rng);
      }
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

std::tuple<std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>>
split(const std::vector<AnnotatedSentence>& corpus, const std::array<double, 3>& ratios,
      std::uint64_t seed) {
  if (corpus.empty()) throw DataError("split: empty corpus");
  double total = 0.0;
  for (double r : ratios) {
    if (r < 0.0) throw DataError("split: ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DataError("split: ratios must sum to 1");

  const std::size_t n = corpus.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  // Largest-remainder apportionment keeps every part within one of its quota.
  std::array<std::size_t, 3> sizes;
  std::array<double, 3> residual;
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double quota = ratios[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(quota);
    residual[i] = quota - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  while (assigned < n) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (residual[i] > residual[best]) best = i;
    ++sizes[best];
    residual[best] = -1.0;
    ++assigned;
  }

  std::tuple<std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>, std::vector<AnnotatedSentence>> parts;
  std::size_t cursor = 0;
  const auto take = [&](std::vector<AnnotatedSentence>& dst, std::size_t count) {
    dst.reserve(count);
    for (std::size_t i = 0; i < count; ++i) dst.push_back(corpus[order[cursor++]]);
  };
  take(std::get<0>(parts), sizes[0]);
  take(std::get<1>(parts), sizes[1]);
  take(std::get<2>(parts), sizes[2]);
  return parts;
}

}  // namespace spandet
