#ifndef TTK_MATRIX_HPP
#define TTK_MATRIX_HPP

#include <vector>

#include "ttk/common.hpp"
#include "ttk/rational.hpp"

namespace ttk {

// Dense nonnegative integer matrix over arbitrary-precision integers.
// Transition matrices are indexed rows = target edges, cols = source edges.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, BigInt(0)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  BigInt& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const BigInt& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  static IntMatrix identity(size_t n);

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  bool is_square() const { return rows_ == cols_; }
  bool entrywise_positive() const;

  std::string str() const;

private:
  size_t rows_{0}, cols_{0};
  std::vector<BigInt> a_;
};

// True iff some power M^t, 1 <= t <= (n-1)^2 + 1, is entrywise positive
// (Wielandt's bound). Positivity patterns are tracked over the boolean
// semiring, which decides the same predicate.
bool is_primitive(const IntMatrix& m);

}  // namespace ttk

#endif
