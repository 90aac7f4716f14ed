#include "tfact/moments.hpp"

#include <map>
#include <stdexcept>

namespace tfact {

namespace {

LaurentPoly from_histogram(const std::vector<std::uint64_t>& hist, int dk) {
  LaurentPoly p;
  for (std::size_t f0 = 0; f0 < hist.size(); ++f0) {
    if (hist[f0] == 0) continue;
    mpz_class c;
    mpz_import(c.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hist[f0]);
    p.add_term(static_cast<int>(f0) - dk, c);
  }
  return p;
}


int mask_of(const std::vector<int>& block) {
  int m = 0;
  for (int i : block) m |= 1 << i;
  return m;
}

Pairing mirror_pairing(int k) {
  std::vector<int> image(static_cast<std::size_t>(2 * k));
  for (int s = 0; s < k; ++s) {
    image[static_cast<std::size_t>(s)] = k + s;
    image[static_cast<std::size_t>(k + s)] = s;
  }
  return Pairing(std::move(image));
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

LaurentPoly gaussian_moment(const GraphFamily& F, const SearchOptions& opts) {
  return from_histogram(f0_histogram(F, false, opts), F.D() * F.total_k());
}

LaurentPoly gaussian_moment(const ColoredGraph& G, const SearchOptions& opts) {
  return gaussian_moment(GraphFamily::of({G}), opts);
}

LaurentPoly connected_cumulant(const GraphFamily& F, const SearchOptions& opts) {
  return from_histogram(f0_histogram(F, true, opts), F.D() * F.total_k());
}

LaurentPoly cumulant_consistency(const GraphFamily& F, const SearchOptions& opts, int p_max) {
  const int p = F.size();
  const auto partitions = set_partitions(p, p_max);
  check_budget(F.total_k(), opts);
  std::map<int, LaurentPoly> cumulants;
  auto cumulant_of = [&](const std::vector<int>& block) -> const LaurentPoly& {
    const int m = mask_of(block);
    auto it = cumulants.find(m);
    if (it == cumulants.end()) it = cumulants.emplace(m, connected_cumulant(F.subfamily(block), opts)).first;
    return it->second;
  };
  LaurentPoly residual = gaussian_moment(F, opts);
  for (const auto& part : partitions) {
    LaurentPoly term = LaurentPoly::constant(1);
    for (const auto& block : part) term = term * cumulant_of(block);
    residual -= term;
  }
  return residual;
}

mpq_class haar_factor(int k, int D, long N) {
  if (N < 1) throw std::invalid_argument("haar_factor needs N >= 1");
  if (k < 0) throw std::invalid_argument("haar_factor needs k >= 0");
  mpz_class nd;
  mpz_ui_pow_ui(nd.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(D));
  mpz_class num = 1;
  mpz_class den = 1;
  for (int j = 0; j < k; ++j) {
    num *= nd;
    den *= nd + j;
  }
  mpq_class f(num, den);
  f.canonicalize();
  return f;
}

FactorizationVerdict factorization_verdict(const GraphFamily& F, const SearchOptions& opts, int p_max) {
  const int p = F.size();
  const auto partitions = set_partitions(p, p_max);
  SearchOptions light = opts;
  light.max_optima = 1;

  std::vector<int> member_f0(static_cast<std::size_t>(p));
  int reference = 0;
  for (int i = 0; i < p; ++i) {
    member_f0[static_cast<std::size_t>(i)] = search_f0(F.member(i), light).f0_max;
    reference += member_f0[static_cast<std::size_t>(i)];
  }

  FactorizationVerdict verdict;
  struct BlockValue {
    int value = 0;
    std::string method;
    bool exact = true;
  };
  std::map<int, BlockValue> connected;
  auto connected_max = [&](const std::vector<int>& block) -> const BlockValue& {
    const int m = mask_of(block);
    auto it = connected.find(m);
    if (it != connected.end()) return it->second;
    BlockValue value;
    if (block.size() == 1) {
      value = {member_f0[static_cast<std::size_t>(block[0])], "search", true};
    } else {
      const GraphFamily sub = F.subfamily(block);
      const bool mirror_pair = block.size() == 2 && sub.member(1) == conjugate(sub.member(0));
      if (sub.total_k() <= opts.k_max) {
        value = {search_f0_connected(sub, light).f0_max, "search", true};
      } else if (mirror_pair && graph_stats(sub.member(0)).is_mst) {
        // A connected pairing of H and its mirror has at most D k(H) faces,
        // attained by the mirror pairing.
        value = {F.D() * sub.member(0).k(), "mst-pair", true};
        verdict.used_mst_shortcut = true;
      } else if (mirror_pair) {
        // Only a lower bound: the mirror pairing sends white s of H to black
        // s of its conjugate and back, closing one face per color and white.
        value = {pairing_f0(sub.union_graph(), mirror_pairing(sub.member(0).k())), "mirror-witness", false};
      } else {
        // Chaining member optima by flips connects the block and loses D
        // faces per flip, so this value is always attained.
        int chain = F.D();
        for (int i : block) chain += member_f0[static_cast<std::size_t>(i)] - F.D();
        value = {chain, "flip-chain-witness", false};
      }
    }
    return connected.emplace(m, value).first->second;
  };

  verdict.factorizes = true;
  bool undecided = false;
  for (const auto& part : partitions) {
    if (static_cast<int>(part.size()) == p) continue;
    PartitionMargin pm;
    pm.partition = part;
    pm.reference = reference;
    for (const auto& block : part) {
      const auto& b = connected_max(block);
      pm.connected_sum += b.value;
      pm.block_methods.push_back(b.method);
      pm.lower_bound = pm.lower_bound || !b.exact;
    }
    pm.margin = pm.connected_sum - reference;
    if (pm.margin >= 0) {
      verdict.factorizes = false;
    } else if (pm.lower_bound) {
      undecided = true;
    }
    verdict.per_partition.push_back(std::move(pm));
  }
  for (std::size_t i = 0; i < verdict.per_partition.size(); ++i) {
    if (!verdict.worst || verdict.per_partition[i].margin > verdict.per_partition[*verdict.worst].margin) verdict.worst = i;
  }
  // A lower bound below the reference settles nothing unless some other
  // partition already violates.
  if (verdict.factorizes && undecided) throw BudgetExceeded(F.total_k(), opts.k_max);
  return verdict;
}

ComponentBoundReport component_bound_check(const GraphFamily& F, const SearchOptions& opts) {
  const ColoredGraph& G = F.union_graph();
  const auto st = graph_stats(G);
  const int D = G.D();
  SearchOptions light = opts;
  light.max_optima = 1;
  ComponentBoundReport rep;
  long long f0_sum = 0;
  for (const auto& comp : split_components(G)) {
    const int f0 = search_f0(comp, light).f0_max;
    f0_sum += f0;
    rep.delta_sum_scaled += delta_scaled_from(comp, f0);
  }
  rep.lhs = mpq_class(static_cast<long>(f0_sum));
  rep.rhs = mpq_class(static_cast<long>(D * st.k), 2L) + mpq_class(static_cast<long>(st.F_total), static_cast<long>(D - 1)) - D;
  rep.rhs.canonicalize();
  rep.passes = rep.lhs > rep.rhs;
  return rep;
}

LimitMoments pair_limit_moments(const mpq_class& mu_c, int p, LimitRegime regime) {
  if (p < 1) throw std::invalid_argument("limit moments need p >= 1");
  if (mu_c <= 0) throw std::invalid_argument("limit moments need mu_c > 0");
  mpq_class mu_p = 1;
  for (int i = 0; i < p; ++i) mu_p *= mu_c;
  LimitMoments out;
  if (regime == LimitRegime::exponential) {
    out.cumulant = mpq_class(factorial(p - 1)) * mu_p;
    out.moment = mpq_class(factorial(p)) * mu_p;
  } else {
    mpz_class two_p;
    mpz_ui_pow_ui(two_p.get_mpz_t(), 2, static_cast<unsigned long>(p));
    out.cumulant = mpq_class(factorial(p - 1) * two_p, 2) * mu_p;
    // (2p-1)!! = (2p)! / (2^p p!)
    mpq_class dfact(factorial(2 * p), two_p * factorial(p));
    dfact.canonicalize();
    out.moment = dfact * mu_p;
  }
  out.cumulant.canonicalize();
  out.moment.canonicalize();
  return out;
}

std::vector<mpq_class> moments_from_cumulants(const std::vector<mpq_class>& cumulants, int p_max) {
  std::vector<mpq_class> moments;
  for (int p = 1; p <= static_cast<int>(cumulants.size()); ++p) {
    mpq_class m = 0;
    for (const auto& part : set_partitions(p, p_max)) {
      mpq_class term = 1;
      for (const auto& block : part) term *= cumulants[block.size() - 1];
      m += term;
    }
    moments.push_back(m);
  }
  return moments;
}

ScalingCheck pair_scaling_check(const ColoredGraph& H, int p, const SearchOptions& opts) {
  if (p < 1) throw std::invalid_argument("pair_scaling_check needs p >= 1");
  const auto pair = mst_pair_f0(H, opts);
  if (!pair.nonfactorizing) {
    throw std::invalid_argument("pair_scaling_check needs {H, Hbar} non-factorizing (F0(H) = " +
                                std::to_string(pair.f0_member) + " > D k(H) / 2)");
  }
  const ColoredGraph G = disjoint_union({H, conjugate(H)});
  ScalingCheck out;
  out.exponent = -(G.D() * G.k() / 2) * p;
  if (p * G.k() <= opts.k_max) {
    const GraphFamily copies = GraphFamily::of(std::vector<ColoredGraph>(static_cast<std::size_t>(p), G));
    out.observed = leading_order(gaussian_moment(copies, opts)).s;
    out.verified = *out.observed == out.exponent;
    out.status = "enumeration";
  } else if (p == 1) {
    out.observed = pair.f0_union - G.D() * G.k();
    out.verified = *out.observed == out.exponent;
    out.status = "single-trace pair shortcut";
  } else {
    out.status = "asymptotic (not desk-verifiable)";
  }
  return out;
}

}  // namespace tfact
