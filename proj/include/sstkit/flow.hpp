#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sstkit {

/// Flow counts saturated at two: bottom (no run) < 0 < 1 < omega (two or more).
enum class Flow : std::uint8_t { bottom = 0, zero = 1, one = 2, omega = 3 };

constexpr Flow flow_add(Flow a, Flow b) noexcept {
  if (a == Flow::bottom) return b;
  if (b == Flow::bottom) return a;
  int sum = (static_cast<int>(a) - 1) + (static_cast<int>(b) - 1);
  return static_cast<Flow>((sum > 2 ? 2 : sum) + 1);
}

constexpr Flow flow_mul(Flow a, Flow b) noexcept {
  if (a == Flow::bottom || b == Flow::bottom) return Flow::bottom;
  if (a == Flow::zero || b == Flow::zero) return Flow::zero;
  return a > b ? a : b;
}

constexpr Flow flow_from_count(std::size_t n) noexcept {
  return n == 0 ? Flow::zero : n == 1 ? Flow::one : Flow::omega;
}

/// `_`, `0`, `1`, `w`.
char flow_char(Flow f) noexcept;

/// Square matrix over the saturated flow semiring.
struct FlowMatrix {
  std::size_t dim = 0;
  std::vector<Flow> cells;

  FlowMatrix() = default;
  explicit FlowMatrix(std::size_t n, Flow fill = Flow::bottom) : dim(n), cells(n * n, fill) {}

  /// Semiring unit: one on the diagonal, bottom elsewhere.
  static FlowMatrix unit(std::size_t n);

  Flow& at(std::size_t row, std::size_t col) { return cells[row * dim + col]; }
  Flow at(std::size_t row, std::size_t col) const { return cells[row * dim + col]; }

  bool contains(Flow f) const;

  bool operator==(const FlowMatrix&) const = default;
};

/// Matrix product in the flow semiring. Throws ValidationError on a dimension mismatch.
FlowMatrix mat_mul(const FlowMatrix& a, const FlowMatrix& b);

struct FlowMatrixHash {
  std::size_t operator()(const FlowMatrix& m) const noexcept;
};

/// Boolean matrix, used for flow automata and underlying state automata.
struct BoolMatrix {
  std::size_t dim = 0;
  std::vector<std::uint8_t> cells;

  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : dim(n), cells(n * n, 0) {}
  static BoolMatrix identity(std::size_t n);

  bool at(std::size_t row, std::size_t col) const { return cells[row * dim + col] != 0; }
  void set(std::size_t row, std::size_t col, bool v = true) { cells[row * dim + col] = v ? 1 : 0; }

  bool operator==(const BoolMatrix&) const = default;
};

BoolMatrix bool_mul(const BoolMatrix& a, const BoolMatrix& b);

struct BoolMatrixHash {
  std::size_t operator()(const BoolMatrix& m) const noexcept;
};

/// Row-major text table with `(state,var)` style headers.
std::string format_matrix(const FlowMatrix& m, const std::vector<std::string>& labels);
std::string format_matrix(const BoolMatrix& m, const std::vector<std::string>& labels);

}  // namespace sstkit
