#include "treeshift/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace treeshift {

// ── reduced systems ────────────────────────────────────────────────────────

IntMatrix weighted_adjacency(const ReducedSnre& reduced) {
  const int k = reduced.symbol_count();
  IntMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (SymbolId j : reduced.choice[static_cast<std::size_t>(i)]) ++m.at(i, j);
  return m;
}

ReducedEntropy reduced_entropy(const ReducedSnre& reduced) {
  ReducedEntropy out;
  out.matrix = weighted_adjacency(reduced);
  const auto scc = scc_decompose(out.matrix);
  const std::size_t n_comps = scc.components.size();

  // A component qualifies when it has a directed path (in the choice digraph)
  // to some symbol with initial count ≥ 2; only those components feed counts
  // that ever leave 1.  Components are in topological order, so a reverse
  // sweep propagates reachability along condensation edges.
  std::vector<bool> qualifies(n_comps, false);
  for (std::size_t c = 0; c < n_comps; ++c)
    for (int v : scc.components[c])
      if (reduced.initial[static_cast<std::size_t>(v)] >= 2) qualifies[c] = true;
  for (std::size_t c = n_comps; c-- > 0;) {
    if (qualifies[c]) continue;
    bool reaches = false;
    for (int u : scc.components[c]) {
      for (int v = 0; v < out.matrix.size() && !reaches; ++v)
        if (out.matrix.at(u, v) > 0 &&
            qualifies[static_cast<std::size_t>(scc.component_of[static_cast<std::size_t>(v)])])
          reaches = true;
      if (reaches) break;
    }
    qualifies[c] = reaches;
  }

  out.components.reserve(n_comps);
  for (std::size_t c = 0; c < n_comps; ++c) {
    ComponentValue cv;
    cv.vertices = scc.components[c];
    cv.nontrivial = scc.nontrivial[c];
    cv.qualifying = qualifies[c];
    cv.rho = cv.nontrivial ? component_spectral_radius(out.matrix, cv.vertices) : 0.0;
    if (cv.nontrivial) {
      out.rho_raw = std::max(out.rho_raw, cv.rho);
      if (cv.qualifying) out.rho_effective = std::max(out.rho_effective, cv.rho);
    }
    out.components.push_back(std::move(cv));
  }
  out.value = out.rho_effective > 0.0 ? std::log(out.rho_effective) : 0.0;
  return out;
}

// ── enumeration ────────────────────────────────────────────────────────────

ReductionStream::ReductionStream(const Snre& base) : base_(&base), total_(1) {
  radix_.reserve(base.terms.size());
  for (const auto& table : base.terms) {
    if (table.empty())
      throw_domain("reduction enumeration requires every symbol to have at least one tuple "
                   "(prune the spec first)");
    radix_.push_back(static_cast<std::uint32_t>(table.size()));
    total_ *= static_cast<unsigned long>(table.size());
  }
}

std::vector<std::uint32_t> ReductionStream::digits_at(const mpz_class& index) const {
  if (index < 0 || index >= total_) throw_domain("reduction index out of range");
  std::vector<std::uint32_t> digits(radix_.size(), 0);
  mpz_class rest = index;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    mpz_class q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), radix_[i]);
    digits[i] = static_cast<std::uint32_t>(r.get_ui());
    rest = q;
  }
  return digits;
}

bool ReductionStream::advance(std::vector<std::uint32_t>& digits) const {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix_[i]) return true;
    digits[i] = 0;
  }
  return false;  // wrapped
}

ReducedSnre ReductionStream::make(const std::vector<std::uint32_t>& digits) const {
  ReducedSnre reduced;
  reduced.alphabet = base_->alphabet;
  reduced.arity = base_->arity;
  reduced.initial = base_->initial;
  reduced.choice.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i)
    reduced.choice.push_back(base_->terms[i][digits[i]]);
  return reduced;
}

ReducedSnre ReductionStream::at(const mpz_class& index) const { return make(digits_at(index)); }

std::vector<ReducedSnre> enumerate_reductions(const Snre& base, std::uint64_t limit) {
  ReductionStream stream(base);
  std::vector<ReducedSnre> out;
  std::vector<std::uint32_t> digits(base.terms.size(), 0);
  while (out.size() < limit) {
    out.push_back(stream.make(digits));
    if (!stream.advance(digits)) break;
  }
  return out;
}

// ── entropy of the full system ─────────────────────────────────────────────

namespace {

struct Candidate {
  bool set = false;
  double value = 0.0;
  std::vector<std::uint32_t> digits;
};

// Deterministic, order-independent merge: higher value wins; within the tie
// band the lexicographically smaller choice vector wins.
void merge_candidate(Candidate& best, double value, const std::vector<std::uint32_t>& digits,
                     double tie_epsilon) {
  if (!best.set) {
    best.set = true;
    best.value = value;
    best.digits = digits;
    return;
  }
  if (value > best.value + tie_epsilon) {
    best.value = value;
    best.digits = digits;
  } else if (value > best.value - tie_epsilon && digits < best.digits) {
    best.value = std::max(best.value, value);
    best.digits = digits;
  }
}

}  // namespace

EntropyReport tsft_entropy(const Snre& base, const EntropyOptions& options) {
  ReductionStream stream(base);
  EntropyReport report;
  report.reduction_total = stream.total();
  report.exhaustive = mpz_fits_ulong_p(report.reduction_total.get_mpz_t()) &&
                      report.reduction_total.get_ui() <= options.reduction_cap;

  Candidate best;

  if (report.exhaustive) {
    const std::uint64_t n = static_cast<std::uint64_t>(report.reduction_total.get_ui());
    const int worker_count = std::max(
        1, std::min({options.threads, 64, static_cast<int>(std::min<std::uint64_t>(n, 64))}));
    const std::uint64_t chunk = (n + static_cast<std::uint64_t>(worker_count) - 1) /
                                static_cast<std::uint64_t>(worker_count);

    std::vector<Candidate> local(static_cast<std::size_t>(worker_count));
    auto scan = [&](int w) {
      const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
      const std::uint64_t hi = std::min(n, lo + chunk);
      if (lo >= hi) return;
      auto digits = stream.digits_at(mpz_class(static_cast<unsigned long>(lo)));
      Candidate& mine = local[static_cast<std::size_t>(w)];
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        const auto value = reduced_entropy(stream.make(digits)).value;
        merge_candidate(mine, value, digits, options.tie_epsilon);
        stream.advance(digits);
      }
    };

    if (worker_count == 1) {
      scan(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(worker_count));
      for (int w = 0; w < worker_count; ++w) pool.emplace_back(scan, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& cand : local)
      if (cand.set) merge_candidate(best, cand.value, cand.digits, options.tie_epsilon);
    report.evaluated = n;
  } else {
    // Sampled lower-bound pass: lexicographic extremes plus a fixed-seed
    // uniform sample.  Deterministic by construction.
    report.lower_bound_only = true;
    std::vector<std::vector<std::uint32_t>> picks;
    picks.push_back(std::vector<std::uint32_t>(base.terms.size(), 0));
    std::vector<std::uint32_t> last;
    for (const auto& table : base.terms)
      last.push_back(static_cast<std::uint32_t>(table.size() - 1));
    picks.push_back(std::move(last));
    std::mt19937_64 rng(0x74726565u);  // fixed seed: reports must be reproducible
    for (std::uint64_t s = 0; s < options.sample_size; ++s) {
      std::vector<std::uint32_t> digits;
      digits.reserve(base.terms.size());
      for (const auto& table : base.terms)
        digits.push_back(static_cast<std::uint32_t>(rng() % table.size()));
      picks.push_back(std::move(digits));
    }
    for (const auto& digits : picks) {
      const auto value = reduced_entropy(stream.make(digits)).value;
      merge_candidate(best, value, digits, options.tie_epsilon);
    }
    report.evaluated = static_cast<std::uint64_t>(picks.size());
  }

  report.witness = stream.make(best.digits);
  const auto witness_entropy = reduced_entropy(report.witness);
  report.entropy = witness_entropy.value;
  report.rho_effective = witness_entropy.rho_effective;
  report.rho_raw = witness_entropy.rho_raw;
  report.witness_matrix = witness_entropy.matrix;
  if (report.witness_matrix.size() <= kCharPolyDimensionCap)
    report.witness_char_poly = char_poly(report.witness_matrix);

  // Perron classification of the component that certifies the entropy value.
  if (report.rho_effective > 0.0) {
    for (const auto& cv : witness_entropy.components) {
      if (cv.nontrivial && cv.qualifying &&
          cv.rho >= report.rho_effective - 1e-12) {
        report.support_component = cv.vertices;
        report.perron = perron_analysis(report.witness_matrix.principal_submatrix(cv.vertices));
        break;
      }
    }
  } else {
    report.perron.verdict = PerronVerdict::Zero;
    report.perron.notes.push_back(
        "no qualifying component: every count stays bounded, entropy 0");
  }

  report.estimator = entropy_estimate(base, options.estimator_level, options.estimator_variant);
  report.estimator_tail = report.estimator.values.empty() ? 0.0 : report.estimator.values.back();
  report.agreement = std::abs(report.entropy - report.estimator_tail) <= options.agreement_tol;
  return report;
}

}  // namespace treeshift
