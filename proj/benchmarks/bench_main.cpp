#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include <ndproof/checker.hpp>
#include <ndproof/corpus.hpp>
#include <ndproof/semantics.hpp>

using namespace ndproof;

namespace {

std::vector<std::string> corpus_texts() {
  std::vector<std::string> out;
  const Corpus corpus = Corpus::load(NDPROOF_CORPUS_DIR);
  for (const auto& e : corpus.entries())
    out.push_back(read_file(std::filesystem::path(NDPROOF_CORPUS_DIR) / e.file));
  return out;
}

void BM_ParseFormula(benchmark::State& state) {
  const std::string text = "∀x(∃y R(x, y) → ¬(P(x) ∧ Q(f(x))) ∨ ∀z(R(z, x) ↔ P(z)))";
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text));
}
BENCHMARK(BM_ParseFormula);

void BM_ParseCorpus(benchmark::State& state) {
  const auto texts = corpus_texts();
  for (auto _ : state)
    for (const auto& t : texts) benchmark::DoNotOptimize(parse_proof(t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(texts.size()));
}
BENCHMARK(BM_ParseCorpus);

void BM_CheckCorpus(benchmark::State& state) {
  std::vector<ProofDocument> docs;
  for (const auto& t : corpus_texts()) docs.push_back(parse_proof(t));
  for (auto _ : state)
    for (const auto& d : docs) benchmark::DoNotOptimize(check_proof(d));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(docs.size()));
}
BENCHMARK(BM_CheckCorpus);

void BM_EntailsSocrates(benchmark::State& state) {
  const std::vector<Formula> premises{parse_formula("∀x(H(x) → M(x))"), parse_formula("H(s)")};
  const Formula conclusion = parse_formula("M(s)");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(entails(premises, conclusion, n));
}
BENCHMARK(BM_EntailsSocrates)->DenseRange(1, 4);

void BM_EntailsBinary(benchmark::State& state) {
  const std::vector<Formula> premises{parse_formula("∀x ∃y R(x, y)"), parse_formula("∀x ∀y(R(x, y) → R(y, x))")};
  const Formula conclusion = parse_formula("∃x R(x, x)");
  EntailOptions opts;
  opts.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(entails(premises, conclusion, 3, opts));
}
BENCHMARK(BM_EntailsBinary)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
