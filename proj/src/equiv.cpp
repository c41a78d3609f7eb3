#include "sstkit/equiv.hpp"

#include "machine_text.hpp"
#include "sstkit/error.hpp"

namespace sstkit {

Machine parse_machine(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto toks = detail::split_tokens(text.substr(start, end - start));
    start = end + 1;
    if (toks.empty()) continue;
    if (toks[0] == "sst") return parse_sst(text);
    if (toks[0] == "sstla") return parse_sstla(text);
    if (toks[0] == "fot") return parse_fot(text);
    break;
  }
  throw ParseError(1, "unknown machine header (expected sst, sstla or fot)");
}

const Alphabet& input_alphabet(const Machine& m) {
  return std::visit(
      [](const auto& x) -> const Alphabet& {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SstLa>) {
          return x.base.input;
        } else {
          return x.input;
        }
      },
      m);
}

const Alphabet& output_alphabet(const Machine& m) {
  return std::visit(
      [](const auto& x) -> const Alphabet& {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SstLa>) {
          return x.base.output;
        } else {
          return x.output;
        }
      },
      m);
}

std::optional<std::vector<std::string>> transform(const Machine& m, const std::vector<std::string>& input) {
  const Alphabet& in = input_alphabet(m);
  Word w;
  for (const auto& name : input) {
    auto l = in.find(name);
    if (!l) return std::nullopt;
    w.push_back(*l);
  }
  std::optional<Word> out;
  if (const auto* t = std::get_if<Sst>(&m)) {
    out = output(*t, w);
  } else if (const auto* t = std::get_if<SstLa>(&m)) {
    out = la_output(*t, w);
  } else {
    out = output_string(std::get<FoTransducer>(m), w);
  }
  if (!out) return std::nullopt;
  return output_alphabet(m).names(*out);
}

EquivVerdict equiv_bounded(const Machine& a, const Machine& b, std::size_t max_len) {
  EquivVerdict v;
  std::vector<std::string> letters = input_alphabet(a).letters();
  for (const auto& l : input_alphabet(b).letters()) {
    if (!input_alphabet(a).contains(l)) letters.push_back(l);
  }
  v.alphabet = Alphabet(letters);
  for_each_word(letters.size(), max_len, [&](const Word& w) {
    ++v.words_checked;
    auto names = v.alphabet.names(w);
    auto left = transform(a, names);
    auto right = transform(b, names);
    if (left == right) return true;
    v.equal = false;
    v.counterexample = w;
    v.left = std::move(left);
    v.right = std::move(right);
    return false;
  });
  return v;
}

}  // namespace sstkit
