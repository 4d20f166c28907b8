#include "ttk/matrix.hpp"

#include <sstream>

namespace ttk {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) throw invalid_input("matrix dimension mismatch");
  IntMatrix out(x.rows_, y.cols_);
  for (size_t i = 0; i < x.rows_; ++i)
    for (size_t k = 0; k < x.cols_; ++k) {
      const BigInt& xik = x.at(i, k);
      if (xik == 0) continue;
      for (size_t j = 0; j < y.cols_; ++j) out.at(i, j) += xik * y.at(k, j);
    }
  return out;
}

bool IntMatrix::entrywise_positive() const {
  for (const BigInt& v : a_)
    if (v <= 0) return false;
  return !a_.empty();
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << at(i, j).str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool is_primitive(const IntMatrix& m) {
  if (!m.is_square()) throw invalid_input("primitivity is defined for square matrices");
  size_t n = m.rows();
  if (n == 0) return false;
  std::vector<char> base(n * n), cur(n * n), nxt(n * n);
  for (size_t i = 0; i < n * n; ++i) base[i] = m.at(i / n, i % n) > 0 ? 1 : 0;
  cur = base;
  size_t bound = (n - 1) * (n - 1) + 1;
  for (size_t t = 1; t <= bound; ++t) {
    bool all = true;
    for (char c : cur)
      if (!c) { all = false; break; }
    if (all) return true;
    if (t == bound) break;
    std::fill(nxt.begin(), nxt.end(), 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (!cur[i * n + k]) continue;
        for (size_t j = 0; j < n; ++j)
          if (base[k * n + j]) nxt[i * n + j] = 1;
      }
    cur.swap(nxt);
  }
  return false;
}

}  // namespace ttk
