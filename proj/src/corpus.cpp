#include "spandet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spandet/errors.hpp"

namespace spandet {

namespace {

// Unicode 13 punctuation categories (Pc, Pd, Ps, Pe, Pi, Pf, Po) as closed
// code point ranges, sorted for binary search.
struct CodepointRange {
  char32_t lo, hi;
};
constexpr CodepointRange kPunctRanges[] = {
    {0x21, 0x23}, {0x25, 0x2A}, {0x2C, 0x2F}, {0x3A, 0x3B}, {0x3F, 0x40}, {0x5B, 0x5D},
    {0x5F, 0x5F}, {0x7B, 0x7B}, {0x7D, 0x7D}, {0xA1, 0xA1}, {0xA7, 0xA7}, {0xAB, 0xAB},
    {0xB6, 0xB7}, {0xBB, 0xBB}, {0xBF, 0xBF}, {0x37E, 0x37E}, {0x387, 0x387}, {0x55A, 0x55F},
    {0x589, 0x58A}, {0x5BE, 0x5BE}, {0x5C0, 0x5C0}, {0x5C3, 0x5C3}, {0x5C6, 0x5C6}, {0x5F3, 0x5F4},
    {0x609, 0x60A}, {0x60C, 0x60D}, {0x61B, 0x61B}, {0x61E, 0x61F}, {0x66A, 0x66D}, {0x6D4, 0x6D4},
    {0x700, 0x70D}, {0x7F7, 0x7F9}, {0x830, 0x83E}, {0x85E, 0x85E}, {0x964, 0x965}, {0x970, 0x970},
    {0x9FD, 0x9FD}, {0xA76, 0xA76}, {0xAF0, 0xAF0}, {0xC77, 0xC77}, {0xC84, 0xC84}, {0xDF4, 0xDF4},
    {0xE4F, 0xE4F}, {0xE5A, 0xE5B}, {0xF04, 0xF12}, {0xF14, 0xF14}, {0xF3A, 0xF3D}, {0xF85, 0xF85},
    {0xFD0, 0xFD4}, {0xFD9, 0xFDA}, {0x104A, 0x104F}, {0x10FB, 0x10FB}, {0x1360, 0x1368}, {0x1400, 0x1400},
    {0x166E, 0x166E}, {0x169B, 0x169C}, {0x16EB, 0x16ED}, {0x1735, 0x1736}, {0x17D4, 0x17D6}, {0x17D8, 0x17DA},
    {0x1800, 0x180A}, {0x1944, 0x1945}, {0x1A1E, 0x1A1F}, {0x1AA0, 0x1AA6}, {0x1AA8, 0x1AAD}, {0x1B5A, 0x1B60},
    {0x1BFC, 0x1BFF}, {0x1C3B, 0x1C3F}, {0x1C7E, 0x1C7F}, {0x1CC0, 0x1CC7}, {0x1CD3, 0x1CD3}, {0x2010, 0x2027},
    {0x2030, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205E}, {0x207D, 0x207E}, {0x208D, 0x208E}, {0x2308, 0x230B},
    {0x2329, 0x232A}, {0x2768, 0x2775}, {0x27C5, 0x27C6}, {0x27E6, 0x27EF}, {0x2983, 0x2998}, {0x29D8, 0x29DB},
    {0x29FC, 0x29FD}, {0x2CF9, 0x2CFC}, {0x2CFE, 0x2CFF}, {0x2D70, 0x2D70}, {0x2E00, 0x2E2E}, {0x2E30, 0x2E4F},
    {0x2E52, 0x2E52}, {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F}, {0x3030, 0x3030}, {0x303D, 0x303D},
    {0x30A0, 0x30A0}, {0x30FB, 0x30FB}, {0xA4FE, 0xA4FF}, {0xA60D, 0xA60F}, {0xA673, 0xA673}, {0xA67E, 0xA67E},
    {0xA6F2, 0xA6F7}, {0xA874, 0xA877}, {0xA8CE, 0xA8CF}, {0xA8F8, 0xA8FA}, {0xA8FC, 0xA8FC}, {0xA92E, 0xA92F},
    {0xA95F, 0xA95F}, {0xA9C1, 0xA9CD}, {0xA9DE, 0xA9DF}, {0xAA5C, 0xAA5F}, {0xAADE, 0xAADF}, {0xAAF0, 0xAAF1},
    {0xABEB, 0xABEB}, {0xFD3E, 0xFD3F}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52}, {0xFE54, 0xFE61}, {0xFE63, 0xFE63},
    {0xFE68, 0xFE68}, {0xFE6A, 0xFE6B}, {0xFF01, 0xFF03}, {0xFF05, 0xFF0A}, {0xFF0C, 0xFF0F}, {0xFF1A, 0xFF1B},
    {0xFF1F, 0xFF20}, {0xFF3B, 0xFF3D}, {0xFF3F, 0xFF3F}, {0xFF5B, 0xFF5B}, {0xFF5D, 0xFF5D}, {0xFF5F, 0xFF65},
    {0x10100, 0x10102}, {0x1039F, 0x1039F}, {0x103D0, 0x103D0}, {0x1056F, 0x1056F}, {0x10857, 0x10857}, {0x1091F, 0x1091F},
    {0x1093F, 0x1093F}, {0x10A50, 0x10A58}, {0x10A7F, 0x10A7F}, {0x10AF0, 0x10AF6}, {0x10B39, 0x10B3F}, {0x10B99, 0x10B9C},
    {0x10EAD, 0x10EAD}, {0x10F55, 0x10F59}, {0x11047, 0x1104D}, {0x110BB, 0x110BC}, {0x110BE, 0x110C1}, {0x11140, 0x11143},
    {0x11174, 0x11175}, {0x111C5, 0x111C8}, {0x111CD, 0x111CD}, {0x111DB, 0x111DB}, {0x111DD, 0x111DF}, {0x11238, 0x1123D},
    {0x112A9, 0x112A9}, {0x1144B, 0x1144F}, {0x1145A, 0x1145B}, {0x1145D, 0x1145D}, {0x114C6, 0x114C6}, {0x115C1, 0x115D7},
    {0x11641, 0x11643}, {0x11660, 0x1166C}, {0x1173C, 0x1173E}, {0x1183B, 0x1183B}, {0x11944, 0x11946}, {0x119E2, 0x119E2},
    {0x11A3F, 0x11A46}, {0x11A9A, 0x11A9C}, {0x11A9E, 0x11AA2}, {0x11C41, 0x11C45}, {0x11C70, 0x11C71}, {0x11EF7, 0x11EF8},
    {0x11FFF, 0x11FFF}, {0x12470, 0x12474}, {0x16A6E, 0x16A6F}, {0x16AF5, 0x16AF5}, {0x16B37, 0x16B3B}, {0x16B44, 0x16B44},
    {0x16E97, 0x16E9A}, {0x16FE2, 0x16FE2}, {0x1BC9F, 0x1BC9F}, {0x1DA87, 0x1DA8B}, {0x1E95E, 0x1E95F},
};

bool is_punct(char32_t cp) {
  auto it = std::upper_bound(std::begin(kPunctRanges), std::end(kPunctRanges), cp,
                             [](char32_t v, const CodepointRange& r) { return v < r.lo; });
  return it != std::begin(kPunctRanges) && cp <= std::prev(it)->hi;
}

// Decodes the UTF-8 sequence starting at s[i] into cp and advances i. Bytes
// that do not form a valid sequence are passed through one at a time.
char32_t next_codepoint(const std::string& s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
  if (len == 0 || i + len > s.size()) {
    ++i;
    return b0;
  }
  char32_t cp = b0 & (0x7F >> len);
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string lowercase_strip_punct(const std::string& token) {
  std::string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    char32_t cp = next_codepoint(token, i);
    if (is_punct(cp)) continue;
    if (cp < 0x80) cp = static_cast<char32_t>(std::tolower(static_cast<int>(cp)));
    append_utf8(out, cp);
  }
  return out;
}

[[noreturn]] void fail(const std::string& message) { throw DataError(message); }

}  // namespace

char to_char(TokenLabel label) { return label == TokenLabel::Disfluent ? 'I' : 'O'; }

TokenLabel label_from_string(const std::string& s) {
  if (s == "I") return TokenLabel::Disfluent;
  if (s == "O") return TokenLabel::Fluent;
  fail("label must be \"I\" or \"O\", got \"" + s + "\"");
}

void validate_sentence(const AnnotatedSentence& sentence, std::size_t sentence_index) {
  const std::string where = "sentence " + std::to_string(sentence_index) + ": ";
  const std::size_t n = sentence.tokens.size();
  if (n == 0) fail(where + "tokens: empty sentence");
  if (sentence.labels.size() != n)
    fail(where + "labels: size " + std::to_string(sentence.labels.size()) + " does not match " +
         std::to_string(n) + " tokens");
  if (sentence.heads.size() != n)
    fail(where + "heads: size " + std::to_string(sentence.heads.size()) + " does not match " +
         std::to_string(n) + " tokens");
  if (!sentence.deprels.empty() && sentence.deprels.size() != n)
    fail(where + "deprels: size " + std::to_string(sentence.deprels.size()) + " does not match " +
         std::to_string(n) + " tokens");
  for (std::size_t t = 0; t < n; ++t) {
    const int h = sentence.heads[t];
    if (h < 0 || h > static_cast<int>(n))
      fail(where + "heads: head " + std::to_string(h) + " out of range at token " + std::to_string(t + 1));
    if (h == static_cast<int>(t + 1))
      fail(where + "heads: head equals own index at token " + std::to_string(t + 1));
  }
  // Every token must reach the root within n steps, otherwise there is a cycle.
  for (std::size_t t = 0; t < n; ++t) {
    int cur = static_cast<int>(t + 1);
    std::size_t steps = 0;
    while (cur != 0) {
      cur = sentence.heads[cur - 1];
      if (++steps > n) fail(where + "heads: cycle involving token " + std::to_string(t + 1));
    }
  }
}

std::vector<AnnotatedSentence> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open corpus file: " + path.string());

  std::vector<AnnotatedSentence> corpus;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(path.string() + ":" + std::to_string(line_number) + ": malformed JSON: " + e.what());
    }
    const std::string where = path.string() + ":" + std::to_string(line_number) + ": ";
    if (!record.is_object()) fail(where + "record is not an object");
    for (const auto& [key, value] : record.items()) {
      if (key != "tokens" && key != "labels" && key != "heads" && key != "deprels")
        fail(where + "unknown key \"" + key + "\"");
    }
    AnnotatedSentence sentence;
    try {
      record.at("tokens").get_to(sentence.tokens);
      for (const auto& l : record.at("labels")) sentence.labels.push_back(label_from_string(l.get<std::string>()));
      record.at("heads").get_to(sentence.heads);
      if (record.contains("deprels")) record.at("deprels").get_to(sentence.deprels);
    } catch (const nlohmann::json::exception& e) {
      fail(where + std::string(e.what()));
    }
    try {
      validate_sentence(sentence, corpus.size());
    } catch (const DataError& e) {
      fail(where + e.what());
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

void write_jsonl(const std::vector<AnnotatedSentence>& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write corpus file: " + path.string());
  for (const auto& sentence : corpus) {
    nlohmann::ordered_json record;
    record["tokens"] = sentence.tokens;
    auto& labels = record["labels"] = nlohmann::json::array();
    for (TokenLabel l : sentence.labels) labels.push_back(std::string(1, to_char(l)));
    record["heads"] = sentence.heads;
    if (!sentence.deprels.empty()) record["deprels"] = sentence.deprels;
    out << record.dump() << '\n';
  }
  if (!out) fail("write failed: " + path.string());
}

std::vector<AnnotatedSentence> import_conllu(const std::filesystem::path& conllu_path,
                                             const std::filesystem::path& labels_path) {
  std::ifstream conllu(conllu_path);
  if (!conllu) fail("cannot open CoNLL-U file: " + conllu_path.string());

  std::vector<AnnotatedSentence> corpus;
  AnnotatedSentence current;
  const auto flush = [&] {
    if (!current.tokens.empty()) {
      corpus.push_back(std::move(current));
      current = {};
    }
  };
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(conllu, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;

    std::vector<std::string> cols;
    std::istringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    const std::string where = conllu_path.string() + ":" + std::to_string(line_number) + ": ";
    if (cols.size() < 8) fail(where + "expected 10 tab-separated columns, got " + std::to_string(cols.size()));

    const std::string& id = cols[0];
    // Multiword-token ranges ("1-2") and empty nodes ("1.1") carry no parse.
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;

    current.tokens.push_back(cols[1]);
    try {
      current.heads.push_back(std::stoi(cols[6]));
    } catch (const std::exception&) {
      fail(where + "HEAD column is not an integer: \"" + cols[6] + "\"");
    }
    current.deprels.push_back(cols[7]);
  }
  flush();

  std::ifstream labels_in(labels_path);
  if (!labels_in) fail("cannot open labels file: " + labels_path.string());
  std::vector<std::vector<TokenLabel>> label_rows;
  while (std::getline(labels_in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<TokenLabel> row;
    std::string tag;
    while (ss >> tag) row.push_back(label_from_string(tag));
    if (!row.empty()) label_rows.push_back(std::move(row));
  }

  if (label_rows.size() != corpus.size())
    fail("sentence count mismatch: " + std::to_string(corpus.size()) + " CoNLL-U sentences vs " +
         std::to_string(label_rows.size()) + " label lines");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (label_rows[i].size() != corpus[i].tokens.size())
      fail("sentence " + std::to_string(i) + ": token count mismatch: " +
           std::to_string(corpus[i].tokens.size()) + " tokens vs " +
           std::to_string(label_rows[i].size()) + " labels");
    corpus[i].labels = std::move(label_rows[i]);
    validate_sentence(corpus[i], i);
  }
  return corpus;
}

std::optional<AnnotatedSentence> preprocess(const AnnotatedSentence& sentence) {
  const int n = sentence.size();
  std::vector<std::string> cleaned(n);
  std::vector<bool> keep(n, false);
  for (int t = 0; t < n; ++t) {
    const std::string& raw = sentence.tokens[t];
    // Partial words are marked by a trailing "-" and go before stripping
    // would erase the marker.
    if (!raw.empty() && raw.back() == '-') continue;
    cleaned[t] = lowercase_strip_punct(raw);
    keep[t] = !cleaned[t].empty();
  }

  std::vector<int> new_index(n + 1, 0);  // old 1-indexed position -> new, 0 stays root
  int kept = 0;
  for (int t = 0; t < n; ++t) {
    if (keep[t]) new_index[t + 1] = ++kept;
  }
  if (kept == 0) return std::nullopt;

  // A surviving token whose head was deleted climbs the head chain until it
  // lands on a survivor or the root.
  const auto surviving_head = [&](int head) {
    while (head != 0 && !keep[head - 1]) head = sentence.heads[head - 1];
    return new_index[head];
  };

  AnnotatedSentence out;
  out.tokens.reserve(kept);
  for (int t = 0; t < n; ++t) {
    if (!keep[t]) continue;
    out.tokens.push_back(std::move(cleaned[t]));
    out.labels.push_back(sentence.labels[t]);
    out.heads.push_back(surviving_head(sentence.heads[t]));
    if (!sentence.deprels.empty()) out.deprels.push_back(sentence.deprels[t]);
  }
  return out;
}

std::vector<AnnotatedSentence> preprocess_corpus(const std::vector<AnnotatedSentence>& corpus) {
  std::vector<AnnotatedSentence> out;
  out.reserve(corpus.size());
  for (const auto& sentence : corpus) {
    if (auto p = preprocess(sentence)) out.push_back(std::move(*p));
  }
  return out;
}

std::vector<Span> io_tags_to_spans(const std::vector<TokenLabel>& labels) {
  std::vector<Span> spans;
  const int n = static_cast<int>(labels.size());
  int t = 0;
  while (t < n) {
    if (labels[t] == TokenLabel::Disfluent) {
      int start = t;
      while (t < n && labels[t] == TokenLabel::Disfluent) ++t;
      spans.push_back({start + 1, t});
    } else {
      ++t;
    }
  }
  return spans;
}

std::vector<TokenLabel> spans_to_io(const std::vector<Span>& spans, int n_tokens) {
  std::vector<TokenLabel> labels(static_cast<std::size_t>(n_tokens), TokenLabel::Fluent);
  for (const Span& span : spans) {
    if (span.start < 1 || span.end > n_tokens || span.start > span.end)
      fail("span (" + std::to_string(span.start) + ", " + std::to_string(span.end) +
           ") out of range for " + std::to_string(n_tokens) + " tokens");
    for (int t = span.start; t <= span.end; ++t) {
      if (labels[t - 1] == TokenLabel::Disfluent)
        fail("overlapping spans at token " + std::to_string(t));
      labels[t - 1] = TokenLabel::Disfluent;
    }
  }
  return labels;
}

}  // namespace spandet
