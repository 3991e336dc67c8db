#include "ndproof/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ndproof {

// ---------- Evaluation ----------

int evaluate_term(const Structure& s, const Assignment& a, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = a.find(t.name());
      if (it == a.end()) throw std::invalid_argument("variable " + t.name() + " is unassigned");
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = s.constants.find(t.name());
      if (it == s.constants.end()) throw SignatureError("constant " + t.name() + " is not interpreted");
      return it->second;
    }
    case Term::Kind::App: {
      auto fn = s.functions.find(t.name());
      if (fn == s.functions.end()) throw SignatureError("function " + t.name() + " is not interpreted");
      std::vector<int> args;
      for (const auto& arg : t.args()) args.push_back(evaluate_term(s, a, arg));
      auto it = fn->second.find(args);
      if (it == fn->second.end())
        throw SignatureError("function " + t.name() + " has no value for this argument tuple");
      return it->second;
    }
  }
  return 0;
}

bool evaluate(const Structure& s, const Assignment& a, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Top:
      return true;
    case K::Bottom:
      return false;
    case K::Pred: {
      auto p = s.predicates.find(f.name());
      if (p == s.predicates.end()) throw SignatureError("predicate " + f.name() + " is not interpreted");
      std::vector<int> args;
      for (const auto& t : f.args()) args.push_back(evaluate_term(s, a, t));
      return p->second.count(args) != 0;
    }
    case K::Not:
      return !evaluate(s, a, f.operand());
    case K::And:
      return evaluate(s, a, f.lhs()) && evaluate(s, a, f.rhs());
    case K::Or:
      return evaluate(s, a, f.lhs()) || evaluate(s, a, f.rhs());
    case K::Imp:
      return !evaluate(s, a, f.lhs()) || evaluate(s, a, f.rhs());
    case K::Iff:
      return evaluate(s, a, f.lhs()) == evaluate(s, a, f.rhs());
    case K::Forall:
    case K::Exists: {
      const bool universal = f.is(K::Forall);
      Assignment inner = a;
      for (int d = 0; d < s.domain_size; ++d) {
        inner[f.var()] = d;
        if (evaluate(s, inner, f.body()) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

namespace {

std::string tuple_text(const std::vector<int>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + std::to_string(t[i]);
  return out + ")";
}

}  // namespace

std::string render_structure(const Structure& s) {
  std::string out = "domain: {";
  for (int d = 0; d < s.domain_size; ++d) out += (d ? ", " : "") + std::to_string(d);
  out += "}\n";
  for (const auto& [c, v] : s.constants) out += c + " = " + std::to_string(v) + "\n";
  for (const auto& [f, table] : s.functions) {
    out += f + ":";
    bool first = true;
    for (const auto& [args, v] : table) {
      out += (first ? " " : ", ") + tuple_text(args) + " -> " + std::to_string(v);
      first = false;
    }
    out += "\n";
  }
  for (const auto& [p, ext] : s.predicates) {
    out += p + " = {";
    bool first = true;
    for (const auto& t : ext) {
      out += (first ? "" : ", ") + (t.size() == 1 ? std::to_string(t[0]) : tuple_text(t));
      first = false;
    }
    out += "}\n";
  }
  return out;
}

// ---------- Counting ----------

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kMax / b) return kMax;
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp && r != kMax; ++i) r = mul_sat(r, base);
  return r;
}

}  // namespace

std::uint64_t default_structure_cap() {
  if (const char* env = std::getenv("ND_MAX_STRUCTURES")) {
    std::string_view s(env);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size() && v > 0) return v;
  }
  return 10'000'000;
}

std::uint64_t structure_count(const Signature& sig, int n) {
  if (n < 1) throw std::invalid_argument("domain size must be at least 1");
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t count = pow_sat(un, sig.constants.size());
  for (const auto& [f, arity] : sig.functions)
    count = mul_sat(count, pow_sat(un, pow_sat(un, static_cast<std::uint64_t>(arity))));
  for (const auto& [p, arity] : sig.predicates)
    count = mul_sat(count, pow_sat(2, pow_sat(un, static_cast<std::uint64_t>(arity))));
  return count;
}

// ---------- Enumerator ----------

StructureEnumerator::StructureEnumerator(Signature sig, int n, std::uint64_t cap)
    : sig_(std::move(sig)), n_(n), count_(structure_count(sig_, n)) {
  if (count_ > cap)
    throw ResourceError("domain size " + std::to_string(n) + " has " +
                        (count_ == kMax ? std::string("more than 2^64") : std::to_string(count_)) +
                        " structures, above the cap of " + std::to_string(cap));
  const auto entries = [n](int arity) {
    std::size_t e = 1;
    for (int i = 0; i < arity; ++i) e *= static_cast<std::size_t>(n);
    return e;
  };
  radix_.assign(sig_.constants.size(), n);
  for (const auto& [f, arity] : sig_.functions) radix_.insert(radix_.end(), entries(arity), n);
  for (const auto& [p, arity] : sig_.predicates) radix_.insert(radix_.end(), entries(arity), 2);
  digits_.assign(radix_.size(), 0);
}

void StructureEnumerator::advance() {
  if (done()) return;
  ++index_;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (++digits_[i] < radix_[i]) return;
    digits_[i] = 0;
  }
}

Structure StructureEnumerator::current() const { return decode(digits_); }

Structure StructureEnumerator::at(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("structure index out of range");
  return decode(digits_at(index));
}

std::vector<int> StructureEnumerator::digits_at(std::uint64_t index) const {
  std::vector<int> d(radix_.size(), 0);
  for (std::size_t i = 0; i < radix_.size() && index; ++i) {
    d[i] = static_cast<int>(index % static_cast<std::uint64_t>(radix_[i]));
    index /= static_cast<std::uint64_t>(radix_[i]);
  }
  return d;
}

Structure StructureEnumerator::decode(const std::vector<int>& digits) const {
  Structure s;
  s.domain_size = n_;
  std::size_t k = 0;
  for (const auto& c : sig_.constants) s.constants[c] = digits[k++];

  // Argument tuples in lexicographic order.
  const auto tuples = [this](int arity) {
    std::vector<std::vector<int>> out{{}};
    for (int i = 0; i < arity; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& t : out)
        for (int d = 0; d < n_; ++d) {
          next.push_back(t);
          next.back().push_back(d);
        }
      out = std::move(next);
    }
    return out;
  };
  for (const auto& [f, arity] : sig_.functions) {
    auto& table = s.functions[f];
    for (const auto& t : tuples(arity)) table[t] = digits[k++];
  }
  for (const auto& [p, arity] : sig_.predicates) {
    auto& ext = s.predicates[p];
    for (const auto& t : tuples(arity))
      if (digits[k++]) ext.insert(t);
  }
  return s;
}

void enumerate_structures(const Signature& sig, int n, const std::function<bool(const Structure&)>& visit,
                          std::uint64_t cap) {
  for (StructureEnumerator e(sig, n, cap); !e.done(); e.advance())
    if (!visit(e.current())) return;
}

// ---------- Compiled search ----------

/// Evaluates formulas directly over an enumerator's digit vector.
class CompiledSearch {
 public:
  CompiledSearch(const StructureEnumerator& e, const std::vector<Formula>& premises, const Formula& conclusion)
      : enumerator_(e), n_(e.n_) {
    std::size_t k = 0;
    for (const auto& c : e.sig_.constants) offset_[c] = k++;
    for (const auto& [f, arity] : e.sig_.functions) {
      offset_[f] = k;
      k += pow_sat(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(arity));
    }
    for (const auto& [p, arity] : e.sig_.predicates) {
      offset_[p] = k;
      k += pow_sat(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(arity));
    }
    for (const auto& p : premises) premises_.push_back(compile(p));
    conclusion_ = compile(conclusion);
  }

  /// Lowest enumeration index of a countermodel, whatever the worker count.
  std::optional<std::uint64_t> first_hit(unsigned workers) const {
    const std::uint64_t count = enumerator_.size();
    constexpr std::uint64_t kChunk = 4096;
    if (workers <= 1 || count < 2 * kChunk) return scan(0, count);

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{kMax};
    auto work = [&] {
      for (;;) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= count || start >= best.load()) return;
        if (auto hit = scan(start, std::min(count, start + kChunk))) {
          std::uint64_t cur = best.load();
          while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
          }
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (best.load() == kMax) return std::nullopt;
    return best.load();
  }

  bool is_countermodel(const std::vector<int>& digits) const {
    std::vector<int> env(slots_, 0);
    if (eval(conclusion_, digits, env)) return false;
    for (const auto& p : premises_)
      if (!eval(p, digits, env)) return false;
    return true;
  }

 private:
  struct CTerm {
    Term::Kind kind;
    std::size_t index;  // env slot for variables, digit offset otherwise
    std::vector<CTerm> args;
  };
  struct CNode {
    Formula::Kind kind;
    std::size_t index = 0;  // digit offset for predicates, env slot for quantifiers
    std::vector<CTerm> args;
    std::vector<CNode> children;
  };

  CTerm compile(const Term& t) {
    if (t.is_var()) return {t.kind(), scope_.at(t.name()).back(), {}};
    CTerm out{t.kind(), offset_.at(t.name()), {}};
    for (const auto& a : t.args()) out.args.push_back(compile(a));
    return out;
  }

  CNode compile(const Formula& f) {
    CNode out{f.kind(), 0, {}, {}};
    switch (f.kind()) {
      case Formula::Kind::Pred:
        out.index = offset_.at(f.name());
        for (const auto& t : f.args()) out.args.push_back(compile(t));
        break;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        out.index = slots_++;
        auto& stack = scope_[f.var()];
        stack.push_back(out.index);
        out.children.push_back(compile(f.body()));
        scope_[f.var()].pop_back();
        break;
      }
      case Formula::Kind::Not:
        out.children.push_back(compile(f.operand()));
        break;
      case Formula::Kind::Top:
      case Formula::Kind::Bottom:
        break;
      default:
        out.children.push_back(compile(f.lhs()));
        out.children.push_back(compile(f.rhs()));
    }
    return out;
  }

  std::size_t tuple_index(const std::vector<CTerm>& args, const std::vector<int>& digits,
                          std::vector<int>& env) const {
    std::size_t idx = 0;
    for (const auto& a : args) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(eval(a, digits, env));
    return idx;
  }

  int eval(const CTerm& t, const std::vector<int>& digits, std::vector<int>& env) const {
    switch (t.kind) {
      case Term::Kind::Var:
        return env[t.index];
      case Term::Kind::Const:
        return digits[t.index];
      case Term::Kind::App:
        return digits[t.index + tuple_index(t.args, digits, env)];
    }
    return 0;
  }

  bool eval(const CNode& f, const std::vector<int>& digits, std::vector<int>& env) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Top:
        return true;
      case K::Bottom:
        return false;
      case K::Pred:
        return digits[f.index + tuple_index(f.args, digits, env)] != 0;
      case K::Not:
        return !eval(f.children[0], digits, env);
      case K::And:
        return eval(f.children[0], digits, env) && eval(f.children[1], digits, env);
      case K::Or:
        return eval(f.children[0], digits, env) || eval(f.children[1], digits, env);
      case K::Imp:
        return !eval(f.children[0], digits, env) || eval(f.children[1], digits, env);
      case K::Iff:
        return eval(f.children[0], digits, env) == eval(f.children[1], digits, env);
      case K::Forall:
      case K::Exists: {
        const bool universal = f.kind == K::Forall;
        for (int d = 0; d < n_; ++d) {
          env[f.index] = d;
          if (eval(f.children[0], digits, env) != universal) return !universal;
        }
        return universal;
      }
    }
    return false;
  }

  // Walks indices [from, to) with an odometer.
  std::optional<std::uint64_t> scan(std::uint64_t from, std::uint64_t to) const {
    std::vector<int> digits = enumerator_.digits_at(from);
    const auto& radix = enumerator_.radix_;
    for (std::uint64_t i = from; i < to; ++i) {
      if (is_countermodel(digits)) return i;
      for (std::size_t k = 0; k < digits.size(); ++k) {
        if (++digits[k] < radix[k]) break;
        digits[k] = 0;
      }
    }
    return std::nullopt;
  }

  const StructureEnumerator& enumerator_;
  int n_;
  std::map<std::string, std::size_t> offset_;
  std::map<std::string, std::vector<std::size_t>> scope_;
  std::size_t slots_ = 0;
  std::vector<CNode> premises_;
  CNode conclusion_;
};

namespace {

void require_sentence(const Formula& f) {
  if (!free_vars(f).empty())
    throw std::invalid_argument("entailment needs sentences, but " + format_formula(f) + " has free variables");
}

}  // namespace

Verdict entails(const std::vector<Formula>& premises, const Formula& conclusion, int max_n,
                const EntailOptions& opts) {
  if (max_n < 1) throw std::invalid_argument("max domain size must be at least 1");
  Signature sig = opts.extra;
  for (const auto& p : premises) {
    require_sentence(p);
    sig.add(p);
  }
  require_sentence(conclusion);
  sig.add(conclusion);

  std::uint64_t total = 0;
  for (int n = 1; n <= max_n; ++n) total = add_sat(total, structure_count(sig, n));
  if (total > opts.cap)
    throw ResourceError("searching domain sizes 1.." + std::to_string(max_n) + " needs " +
                        (total == kMax ? std::string("more than 2^64") : std::to_string(total)) +
                        " structures, above the cap of " + std::to_string(opts.cap));

  for (int n = 1; n <= max_n; ++n) {
    StructureEnumerator e(sig, n, kMax);
    CompiledSearch cs(e, premises, conclusion);
    auto hit = cs.first_hit(opts.workers);
    if (!hit) continue;
    Structure s = e.at(*hit);
    for (const auto& p : premises)
      if (!evaluate(s, {}, p)) throw std::logic_error("countermodel self-check failed on a premise");
    if (evaluate(s, {}, conclusion)) throw std::logic_error("countermodel self-check failed on the conclusion");
    return Verdict{n, std::move(s)};
  }
  return Verdict{max_n, std::nullopt};
}

std::optional<Structure> find_countermodel(const std::vector<Formula>& premises, const Formula& conclusion,
                                           int max_n, const EntailOptions& opts) {
  return entails(premises, conclusion, max_n, opts).countermodel;
}

}  // namespace ndproof
