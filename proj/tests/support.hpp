#pragma once

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "sstkit/equiv.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(SSTKIT_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline sstkit::Sst load_sst(const std::string& name) { return sstkit::parse_sst(slurp(name)); }
inline sstkit::SstLa load_sstla(const std::string& name) { return sstkit::parse_sstla(slurp(name)); }
inline sstkit::FoTransducer load_fot(const std::string& name) { return sstkit::parse_fot(slurp(name)); }

/// Seed for sampled properties; SSTKIT_SEED overrides the default 0.
inline unsigned seed() {
  const char* s = std::getenv("SSTKIT_SEED");
  return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 0u;
}

inline sstkit::Word random_word(std::mt19937& rng, std::size_t alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<sstkit::Letter> letter(0, static_cast<sstkit::Letter>(alphabet - 1));
  sstkit::Word w(len(rng));
  for (auto& l : w) l = letter(rng);
  return w;
}

/// Words over {a,b} from plain strings, letters a=0, b=1.
inline sstkit::Word ab(const std::string& s) {
  sstkit::Word w;
  for (char c : s) w.push_back(static_cast<sstkit::Letter>(c - 'a'));
  return w;
}

inline std::string str(const sstkit::Word& w) {
  std::string s;
  for (auto l : w) s += static_cast<char>('a' + l);
  return s;
}

/// (s without b) . reverse(s) . (s without a) on {a,b} strings.
inline std::string f1_oracle(const std::string& s) {
  std::string no_b, no_a;
  for (char c : s) (c == 'a' ? no_b : no_a) += c;
  return no_b + std::string(s.rbegin(), s.rend()) + no_a;
}

inline std::string mirror_oracle(const std::string& s) {
  if (!s.empty() && s.back() == 'a') return std::string(s.rbegin(), s.rend());
  return s;
}

}  // namespace testing
