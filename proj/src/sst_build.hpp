#pragma once

// Resolution of raw machine text into indexed structures, shared by the
// .sst and .sstla readers.

#include "machine_text.hpp"
#include "sstkit/sst.hpp"

namespace sstkit::detail {

/// Fills alphabets, states, initial, finals, vars and out of `t` (delta left empty).
void build_core(const RawMachine& m, Sst& t);

Substitution resolve_update(const Sst& t, const RawTransition& tr);

std::size_t resolve_state(const Sst& t, const std::string& name, std::size_t line);
Letter resolve_letter(const Alphabet& a, const std::string& name, std::size_t line);

/// Writes the shared header fields and out lines of the text formats.
std::string write_core(const Sst& t, std::string_view header);
std::string write_update(const Sst& t, const Substitution& s);

}  // namespace sstkit::detail
