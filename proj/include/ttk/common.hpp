#ifndef TTK_COMMON_HPP
#define TTK_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ttk {

// Oriented edge germ. Positive edge e gets the two directions 2e (forward)
// and 2e+1 (reversed); reversal is a single bit flip.
using Dir = uint32_t;
using Vertex = uint32_t;
using EdgeId = uint32_t;

inline constexpr Dir reversed(Dir d) { return d ^ 1u; }
inline constexpr EdgeId edge_of(Dir d) { return d >> 1; }
inline constexpr bool is_forward(Dir d) { return (d & 1u) == 0; }
inline constexpr Dir forward_dir(EdgeId e) { return e << 1; }
inline constexpr Dir backward_dir(EdgeId e) { return (e << 1) | 1u; }

// Structural misuse of the API: mismatched graphs, ill-formed paths, ...
class invalid_input : public std::runtime_error {
public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A computation was abandoned because it would exceed its resource budget.
// Callers that certify properties report this as an inconclusive outcome.
class budget_exceeded : public std::runtime_error {
public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Violation of an invariant the algorithms guarantee; indicates a bug.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ttk

#endif
