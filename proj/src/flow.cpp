#include "sstkit/flow.hpp"

#include <algorithm>
#include <sstream>
#include <string_view>

#include "sstkit/error.hpp"

namespace sstkit {

char flow_char(Flow f) noexcept {
  switch (f) {
    case Flow::bottom: return '_';
    case Flow::zero: return '0';
    case Flow::one: return '1';
    case Flow::omega: return 'w';
  }
  return '?';
}

FlowMatrix FlowMatrix::unit(std::size_t n) {
  FlowMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Flow::one;
  return m;
}

bool FlowMatrix::contains(Flow f) const { return std::find(cells.begin(), cells.end(), f) != cells.end(); }

FlowMatrix mat_mul(const FlowMatrix& a, const FlowMatrix& b) {
  if (a.dim != b.dim) throw ValidationError("matrix index sets differ");
  const std::size_t n = a.dim;
  FlowMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Flow aij = a.at(i, j);
      if (aij == Flow::bottom) continue;
      for (std::size_t k = 0; k < n; ++k) {
        Flow bjk = b.at(j, k);
        if (bjk == Flow::bottom) continue;
        c.at(i, k) = flow_add(c.at(i, k), flow_mul(aij, bjk));
      }
    }
  }
  return c;
}

namespace {

template <class Bytes>
std::size_t hash_bytes(std::size_t dim, const Bytes& cells) {
  // FNV-1a
  std::size_t h = 1469598103934665603ull ^ dim;
  for (auto c : cells) {
    h ^= static_cast<std::size_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::size_t FlowMatrixHash::operator()(const FlowMatrix& m) const noexcept {
  return hash_bytes(m.dim, m.cells);
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoolMatrix bool_mul(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.dim != b.dim) throw ValidationError("matrix index sets differ");
  const std::size_t n = a.dim;
  BoolMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a.at(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (b.at(j, k)) c.set(i, k);
      }
    }
  }
  return c;
}

std::size_t BoolMatrixHash::operator()(const BoolMatrix& m) const noexcept {
  return hash_bytes(m.dim, m.cells);
}

namespace {

template <class CellFn>
std::string format_table(std::size_t dim, const std::vector<std::string>& labels, CellFn cell) {
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.size());
  std::ostringstream os;
  auto pad = [&](std::string_view s) {
    os << s;
    for (std::size_t i = s.size(); i < width; ++i) os << ' ';
  };
  pad("");
  for (std::size_t j = 0; j < dim; ++j) {
    os << ' ';
    pad(labels.at(j));
  }
  os << '\n';
  for (std::size_t i = 0; i < dim; ++i) {
    pad(labels.at(i));
    for (std::size_t j = 0; j < dim; ++j) {
      os << ' ';
      pad(std::string(1, cell(i, j)));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_matrix(const FlowMatrix& m, const std::vector<std::string>& labels) {
  return format_table(m.dim, labels, [&](std::size_t i, std::size_t j) { return flow_char(m.at(i, j)); });
}

std::string format_matrix(const BoolMatrix& m, const std::vector<std::string>& labels) {
  return format_table(m.dim, labels, [&](std::size_t i, std::size_t j) { return m.at(i, j) ? '1' : '0'; });
}

}  // namespace sstkit
