#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ndproof/syntax.hpp"

namespace ndproof {

// ---------- Structures ----------

/// Finite interpretation over the domain 0..domain_size-1.
struct Structure {
  int domain_size = 1;
  std::map<std::string, int> constants;
  /// Total tables: every argument tuple maps to an element.
  std::map<std::string, std::map<std::vector<int>, int>> functions;
  /// Extension of each predicate; a 0-ary predicate is true iff it holds {()}.
  std::map<std::string, std::set<std::vector<int>>> predicates;

  friend bool operator==(const Structure&, const Structure&) = default;
};

using Assignment = std::map<std::string, int>;

/// Tarskian truth value. Throws SignatureError when a symbol of f is not
/// interpreted by s, std::invalid_argument when a free variable is unassigned.
bool evaluate(const Structure& s, const Assignment& a, const Formula& f);
int evaluate_term(const Structure& s, const Assignment& a, const Term& t);

/// Human-readable interpretation tables.
std::string render_structure(const Structure& s);

// ---------- Enumeration ----------

/// Cap on the number of structures a search may visit: ND_MAX_STRUCTURES
/// when set to a positive integer, otherwise 10^7.
std::uint64_t default_structure_cap();

/// Number of structures for `sig` over a domain of size n, saturating at
/// UINT64_MAX: n^#constants · Π_f n^(n^arity) · Π_P 2^(n^arity).
std::uint64_t structure_count(const Signature& sig, int n);

/// Enumerates every structure over 0..n-1 exactly once, in mixed-radix
/// order. The lowest digits are the constants in lexical order, then each
/// function table (functions in lexical order, argument tuples in
/// lexicographic order), then each predicate extension bit (same order).
/// The first structure interprets everything as 0 / empty.
class StructureEnumerator {
 public:
  /// Throws ResourceError when structure_count(sig, n) exceeds `cap`.
  StructureEnumerator(Signature sig, int n, std::uint64_t cap = default_structure_cap());

  std::uint64_t size() const { return count_; }
  std::uint64_t index() const { return index_; }
  bool done() const { return index_ >= count_; }
  Structure current() const;
  void advance();

  /// Structure at a given position without walking to it.
  Structure at(std::uint64_t index) const;

 private:
  friend class CompiledSearch;
  Structure decode(const std::vector<int>& digits) const;
  std::vector<int> digits_at(std::uint64_t index) const;

  Signature sig_;
  int n_;
  std::uint64_t count_;
  std::uint64_t index_ = 0;
  std::vector<int> radix_;
  std::vector<int> digits_;
};

/// Calls visit for every structure in enumeration order until it returns false.
void enumerate_structures(const Signature& sig, int n, const std::function<bool(const Structure&)>& visit,
                          std::uint64_t cap = default_structure_cap());

// ---------- Entailment ----------

/// Outcome of a bounded search. valid() only means that no structure of size
/// at most `bound` is a countermodel; first-order validity is not decidable
/// by finite search.
struct Verdict {
  int bound = 0;
  std::optional<Structure> countermodel;

  bool valid() const { return !countermodel; }
};

struct EntailOptions {
  std::uint64_t cap = default_structure_cap();
  /// Worker threads per domain size; the result does not depend on it.
  unsigned workers = 1;
  /// Symbols interpreted in addition to those of the formulas.
  Signature extra;
};

/// Scans n = 1..max_n and returns the first countermodel in enumeration
/// order, else ValidUpTo(max_n). Throws ResourceError when the total number
/// of structures exceeds the cap, before any enumeration, and
/// std::invalid_argument when a formula is not a sentence or max_n < 1.
Verdict entails(const std::vector<Formula>& premises, const Formula& conclusion, int max_n,
                const EntailOptions& opts = {});

std::optional<Structure> find_countermodel(const std::vector<Formula>& premises, const Formula& conclusion,
                                           int max_n, const EntailOptions& opts = {});

}  // namespace ndproof
