#pragma once

// The ten acceptance criteria as runnable checks. Each returns a pass flag, a JSON detail
// payload (deterministic for a given seed) and its wall time against a pinned budget.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jinv/dimension.hpp"
#include "jinv/generators.hpp"
#include "jinv/nullcone.hpp"
#include "jinv/relation.hpp"
#include "jinv/umbral.hpp"

namespace jinv {

/// Per-lab seeds: master seed XOR a fixed constant.
enum class Lab : std::uint64_t {
  Generators = 0x67656e73,  // "gens"
  Invariance = 0x696e7661,  // "inva"
  Core = 0x636f7265,        // "core"
  Dimension = 0x64696d73,   // "dims"
  Relation = 0x72656c61,    // "rela"
  Appendix = 0x61707078,    // "appx"
  Umbral = 0x756d6272,      // "umbr"
  Todd = 0x746f6464,        // "todd"
  Nullcone = 0x6e756c6c,    // "null"
};

inline std::uint64_t lab_seed(std::uint64_t master, Lab lab) { return master ^ static_cast<std::uint64_t>(lab); }

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = false;  // the check itself
  nlohmann::json detail;
  double elapsed_ms = 0;
  double budget_ms = 0;
  bool within_budget() const { return elapsed_ms <= budget_ms; }
  bool pass() const { return ok && within_budget(); }
};

namespace detail {

template <class Fn>
CriterionResult timed(int id, std::string title, double budget_s, Fn&& fn) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.budget_ms = budget_s * 1000;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.ok = fn(r.detail);
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail["error"] = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline CriterionResult criterion_generator_counts(std::uint64_t) {
  return detail::timed(1, "generator counts p=2 -> 4, p=3 -> 11", 1, [](nlohmann::json& d) {
    TreeBuilder b;
    const auto g2 = enumerate_generators(2, b), g3 = enumerate_generators(3, b);
    d["p2"] = g2.generators.size();
    d["p3"] = g3.generators.size();
    return g2.generators.size() == 4 && g3.generators.size() == 11;
  });
}

inline CriterionResult criterion_invariance(std::uint64_t seed, int trials = 100) {
  return detail::timed(2, "invariance and multihomogeneity of every generator, p=2..5", 120, [&](nlohmann::json& d) {
    bool ok = true;
    for (int p = 2; p <= 5; ++p) {
      TreeBuilder b;
      const auto fam = enumerate_generators(p, b);
      InvarianceOptions opt;
      opt.trials = trials;
      opt.seed = lab_seed(seed, Lab::Invariance) + static_cast<std::uint64_t>(p);
      std::size_t failed = 0, trial_failures = 0;
      for (const auto& r : check_invariance(fam.generators, opt)) {
        failed += !r.pass();
        trial_failures += r.failures();
      }
      const auto mh = check_multihomogeneous(fam.generators, opt.seed);
      const std::size_t mh_failed = std::count(mh.begin(), mh.end(), false);
      d["p" + std::to_string(p)] = {{"generators", fam.generators.size()},
                                    {"trials", trials},
                                    {"invariance_failures", failed},
                                    {"failed_trials", trial_failures},
                                    {"multihomogeneity_failures", mh_failed}};
      ok = ok && failed == 0 && mh_failed == 0;
    }
    return ok;
  });
}

inline CriterionResult criterion_core_identities(std::uint64_t seed, int samples = 200) {
  return detail::timed(3, "core Jordan identities on random exact inputs", 30, [&](nlohmann::json& d) {
    using Q = Rational;
    Rng rng(lab_seed(seed, Lab::Core));
    std::map<std::string, int> fail{{"f(x,x,x)=6det", 0},      {"f symmetric", 0}, {"x n(x) = det x I", 0},
                                    {"n(g.x) equivariance", 0}, {"pencil expansion", 0}};
    for (int s = 0; s < samples; ++s) {
      const auto pt = random_tuple(rng, 3, 9, 2);
      const auto &x = pt[0], &y = pt[1], &z = pt[2];
      if (trilinear_f(x, x, x) != 6 * det3(x)) ++fail["f(x,x,x)=6det"];
      const Q f = trilinear_f(x, y, z);
      if (f != trilinear_f(y, x, z) || f != trilinear_f(z, y, x) || f != trilinear_f(x, z, y) ||
          f != trilinear_f(y, z, x) || f != trace_form(cross(x, y), z))
        ++fail["f symmetric"];
      if (!(Mat3<Q>::from_sym(x) * Mat3<Q>::from_sym(adjugate(x)) == Mat3<Q>::from_sym(det3(x) * SymMat3<Q>::identity())))
        ++fail["x n(x) = det x I"];
      if (!check_adjugate_equivariance(rand_sl3(rng, 6), x)) ++fail["n(g.x) equivariance"];
      const auto c = binary_cubic_of_pencil(x, y);
      const Q a = draw_rational(rng, 7, 3), b = draw_rational(rng, 7, 3);
      if (det3(a * x + b * y) != a * a * a * c[0] + a * a * b * c[1] + a * b * b * c[2] + b * b * b * c[3])
        ++fail["pencil expansion"];
    }
    bool ok = true;
    for (const auto& [k, v] : fail) ok = ok && v == 0;
    d["samples"] = samples;
    d["failures"] = fail;
    return ok;
  });
}

struct DimensionFigures {
  long long a3_3 = -1, a6_3 = -1;
};

inline CriterionResult criterion_dimensions(std::uint64_t, DimensionFigures* out = nullptr) {
  return detail::timed(4, "dim A3(3)=10, A6(3)=56, A6(2)=10, A3(2)=4 across two primes", 600, [&](nlohmann::json& d) {
    struct Want {
      int p, degree;
      std::size_t dim;
    };
    bool ok = true;
    for (const Want& w : {Want{3, 3, 10}, Want{3, 6, 56}, Want{2, 6, 10}, Want{2, 3, 4}}) {
      const auto r = invariant_dimension(w.p, w.degree);
      d["A" + std::to_string(w.degree) + "(" + std::to_string(w.p) + ")"] = {
          {"dim", r.total}, {"primes", r.primes_used}, {"primes_disagreed", r.primes_disagreed}};
      ok = ok && r.total == w.dim && r.primes_used.size() >= 2 && !r.primes_disagreed;
      if (out && w.p == 3 && w.degree == 3) out->a3_3 = static_cast<long long>(r.total);
      if (out && w.p == 3 && w.degree == 6) out->a6_3 = static_cast<long long>(r.total);
    }
    return ok;
  });
}

inline CriterionResult criterion_poincare(std::uint64_t seed, std::optional<DimensionFigures> dims = std::nullopt) {
  // computing the dimensions here is part of criterion 4; only the fit is timed against 1 s
  DimensionFigures f;
  if (dims) {
    f = *dims;
  } else {
    f.a3_3 = static_cast<long long>(invariant_dimension(3, 3).total);
    f.a6_3 = static_cast<long long>(invariant_dimension(3, 6).total);
  }
  (void)seed;
  return detail::timed(5, "Poincare numerator (1,0,1,0,1), predicted dim 9 = 230, rank 3", 1, [&](nlohmann::json& d) {
    const auto n = poincare_numerator_A3(f.a3_3, f.a6_3);
    const long long p9 = predicted_dim(n, 9, nullptr);
    const long long rank = verify_rank_free_module(n);
    d["dims"] = {f.a3_3, f.a6_3};
    d["numerator"] = n.a;
    d["palindromic"] = n.palindromic();
    d["predicted_dim_9"] = p9;
    d["rank"] = rank;
    return n.a == std::array<long long, 5>{1, 0, 1, 0, 1} && p9 == 230 && rank == 3;
  });
}

inline CriterionResult criterion_cubic_relation(std::uint64_t seed) {
  return detail::timed(6, "monic cubic relation in f11, S3-symmetric, 1000 points; f11 outside A3A3", 300,
                       [&](nlohmann::json& d) {
                         const auto s = find_cubic_relation(lab_seed(seed, Lab::Relation), 1000);
                         const auto cert = check_f11_outside_A3A3(lab_seed(seed, Lab::Relation));
                         const bool sym = is_s3_symmetric(s.relation);
                         d["unknowns"] = s.unknowns;
                         d["kernel_dims"] = s.kernel_dims;
                         d["verification_points"] = s.verification_points;
                         d["verified"] = s.verified;
                         d["s3_symmetric"] = sym;
                         d["terms"] = {s.relation.Q[0].size(), s.relation.Q[1].size(), s.relation.Q[2].size()};
                         d["certificate_rank"] = cert.rank;
                         d["certificate"] = cert.established();
                         return s.verified && s.verification_points >= 1000 && sym && s.kernel_dims.back() == 1 &&
                                cert.established();
                       });
}

inline CriterionResult criterion_appendix_identities(std::uint64_t seed, int samples = 200) {
  return detail::timed(7, "(*), (**) and both Cramer systems on random normal-form triples", 30, [&](nlohmann::json& d) {
    Rng rng(lab_seed(seed, Lab::Appendix));
    int star = 0, cramer = 0;
    for (int s = 0; s < samples; ++s) {
      const auto t = random_normal_form_triple(rng);
      star += !verify_star_identities(t);
      cramer += !verify_cramer_systems(t).all();
    }
    d["samples"] = samples;
    d["star_failures"] = star;
    d["cramer_failures"] = cramer;
    return star == 0 && cramer == 0;
  });
}

inline CriterionResult criterion_umbral(std::uint64_t seed, int samples = 50) {
  return detail::timed(8, "umbral lemmas 7.1-7.4 and the U([a,b,c]^2) constant", 60, [&](nlohmann::json& d) {
    const std::uint64_t s = lab_seed(seed, Lab::Umbral);
    const bool l1 = check_lemma_7_1(samples, s + 1), l2 = check_lemma_7_2(), l3 = check_lemma_7_3(samples, s + 3),
               l4 = check_lemma_7_4(samples, s + 4);
    const Rational c = bracket_square_constant();
    d["lemma_7_1"] = l1;
    d["lemma_7_2_zero_polynomial"] = l2;
    d["lemma_7_3"] = l3;
    d["lemma_7_4"] = l4;
    d["samples"] = samples;
    d["bracket_square_constant"] = c.get_str();
    d["note"] = "U([a,b,c]^2) = 6 det x for three instances on one slot, matching f(x,x,x) = 6 det x; not 1/6";
    return l1 && l2 && l3 && l4 && c == 6;
  });
}

inline nlohmann::json to_json(const ToddReport& r) {
  auto opt = [](const std::optional<Rational>& q) { return q ? nlohmann::json(q->get_str()) : nlohmann::json(); };
  return {{"products", r.products},
          {"sample_points", r.sample_points},
          {"span_rank", r.span_rank},
          {"primes", r.primes},
          {"J9_minus_2U_reduced_in_span", r.member_per_prime},
          {"J9_plus_2todd_in_span", r.todd_member_per_prime},
          {"deg9_minus_2todd_in_span", r.literal_member_per_prime},
          {"J9_equals_4deg9", r.j9_is_4_deg9},
          {"todd_in_span", r.todd_in_span},
          {"deg9_over_todd", opt(r.deg9_constant)},
          {"deg9_over_U_reduced", opt(r.reduced_constant)},
          {"divisibility_vanishes_at_singular_y", r.divisibility_vanishes},
          {"divisibility_term_nonzero", r.divisibility_nonzero}};
}

inline CriterionResult criterion_todd(std::uint64_t seed) {
  return detail::timed(9, "degree-9 identity modulo A3(5)A6(5), two primes", 600, [&](nlohmann::json& d) {
    const auto r = check_todd_identity(lab_seed(seed, Lab::Todd));
    d = to_json(r);
    d["note"] =
        "J9 = f((x×x)×(y×y),(x×z)×(y×t),u) = 4 deg9. Passing form: J9 - 2 U(reduced monomial) in span. "
        "The form deg9 - 2 todd_umbral is reported separately.";
    return r.pass() && r.divisibility_vanishes && r.divisibility_nonzero;
  });
}

inline CriterionResult criterion_nullcone(std::uint64_t seed, int tuples = 100) {
  return detail::timed(10, "nilcone equations exact; drive_to_zero contract on >= 95 of 100", 120, [&](nlohmann::json& d) {
    const std::uint64_t s = lab_seed(seed, Lab::Nullcone);
    int equations = 0, met = 0;
    nlohmann::json failures = nlohmann::json::array();
    for (int i = 0; i < tuples; ++i) {
      const auto shape = i % 2 ? ShapePattern::FirstRowColumn : ShapePattern::TopLeftBlock;
      const int p = 2 + i % 4;
      const auto t = canonical_nilpotent_tuple(shape, p, derive_seed(s, static_cast<std::uint64_t>(i)));
      if (!check_nilcone_equations(t)) continue;
      ++equations;
      const auto w = drive_to_zero(t);
      if (w.contract_met)
        ++met;
      else
        failures.push_back({{"index", i}, {"diagnostic", w.diagnostic}, {"residual", w.residual}});
    }
    d["tuples"] = tuples;
    d["equations_hold"] = equations;
    d["contract_met"] = met;
    d["failures"] = failures;
    return equations == tuples && met * 100 >= 95 * tuples;
  });
}

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                                   const std::function<void(const CriterionResult&)>& on_done = {}) {
  std::vector<CriterionResult> out;
  auto add = [&](CriterionResult r) {
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  };
  add(criterion_generator_counts(seed));
  add(criterion_invariance(seed));
  add(criterion_core_identities(seed));
  DimensionFigures dims;
  add(criterion_dimensions(seed, &dims));
  add(criterion_poincare(seed, dims));
  add(criterion_cubic_relation(seed));
  add(criterion_appendix_identities(seed));
  add(criterion_umbral(seed));
  add(criterion_todd(seed));
  add(criterion_nullcone(seed));
  return out;
}

}  // namespace jinv
