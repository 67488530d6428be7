#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace spandet {

// Per-token tag: Disfluent marks reparandum tokens, Fluent everything else.
enum class TokenLabel : std::uint8_t { Disfluent, Fluent };

char to_char(TokenLabel label);                     // 'I' / 'O'
TokenLabel label_from_string(const std::string&);  // "I" / "O", else DataError

// Contiguous token span, 1-indexed and inclusive on both ends.
struct Span {
  int start = 0;
  int end = 0;
  int length() const { return end - start + 1; }
  friend bool operator==(const Span&, const Span&) = default;
};

// One utterance: tokens, IO labels, and a dependency parse given as 1-indexed
// head positions (0 = root). deprels are carried through when present but the
// model treats arcs as unlabeled.
struct AnnotatedSentence {
  std::vector<std::string> tokens;
  std::vector<TokenLabel> labels;
  std::vector<int> heads;
  std::vector<std::string> deprels;  // empty when absent

  int size() const { return static_cast<int>(tokens.size()); }
};

// Throws DataError naming the offending field and sentence index when sizes
// disagree, a head is out of range or points at its own token, or the head
// pointers contain a cycle.
void validate_sentence(const AnnotatedSentence& sentence, std::size_t sentence_index);

// JSONL corpus: one object per line with keys tokens/labels/heads and
// optional deprels; unknown keys are rejected. Line numbers appear in errors.
std::vector<AnnotatedSentence> load_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::vector<AnnotatedSentence>& corpus, const std::filesystem::path& path);

// CoNLL-U plus a parallel label file holding one space-separated I/O sequence
// per sentence. Multiword-token and empty-node lines are skipped.
std::vector<AnnotatedSentence> import_conllu(const std::filesystem::path& conllu_path,
                                             const std::filesystem::path& labels_path);

// Lower-cases tokens, strips punctuation characters, and deletes tokens that
// become empty as well as partial words (trailing "-"). Dependents of deleted
// tokens re-attach to the deleted token's head, climbing until a surviving
// token or the root. Returns nullopt when nothing survives.
std::optional<AnnotatedSentence> preprocess(const AnnotatedSentence& sentence);

// preprocess() over a corpus, dropping sentences that empty out.
std::vector<AnnotatedSentence> preprocess_corpus(const std::vector<AnnotatedSentence>& corpus);

// Maximal runs of Disfluent tokens, sorted by start.
std::vector<Span> io_tags_to_spans(const std::vector<TokenLabel>& labels);

// Inverse of io_tags_to_spans up to merging of adjacent spans. Spans must be
// non-overlapping and within [1, n_tokens].
std::vector<TokenLabel> spans_to_io(const std::vector<Span>& spans, int n_tokens);

}  // namespace spandet
