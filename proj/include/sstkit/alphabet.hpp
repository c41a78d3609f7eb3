#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sstkit {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Ordered finite set of symbol tokens. Letters are addressed by their
/// position in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::string& name(Letter l) const { return letters_.at(l); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  std::optional<Letter> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// True when every letter is a single character, so words print without separators.
  bool compact() const noexcept { return compact_; }

  /// Splits `text` into letters. Whitespace-separated tokens are used when
  /// the text contains whitespace; otherwise the longest letter matching at
  /// each offset is taken. Throws ValidationError on unknown symbols.
  Word parse_word(std::string_view text) const;

  std::string render(const Word& w) const;
  std::vector<std::string> names(const Word& w) const;

  bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Letter> index_;
  bool compact_ = true;
};

/// Renders a token sequence, concatenating when all tokens are one character.
std::string render_tokens(const std::vector<std::string>& tokens);

/// Visits every word over an alphabet of `alphabet_size` letters with length
/// at most `max_len`, in shortlex order. The visitor returns false to stop.
void for_each_word(std::size_t alphabet_size, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit);

/// Shortlex comparison: shorter first, then lexicographic on letter indices.
bool shortlex_less(const Word& a, const Word& b);

Word concat(const Word& a, const Word& b);
Word power(const Word& w, std::size_t n);
Word slice(const Word& w, std::size_t from, std::size_t to);

}  // namespace sstkit
