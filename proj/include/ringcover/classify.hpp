#ifndef RINGCOVER_CLASSIFY_HPP_
#define RINGCOVER_CLASSIFY_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "error.hpp"
#include "ideals.hpp"
#include "ring.hpp"

namespace ringcover {

enum class SnFailure { none, wrong_sigma, quotient_also_small };

struct MinimalIdealCheck {
  ElementSet ideal;
  //! sigma(R/I) when it is at most n; NotCoverable stands for "> n".
  Sigma quotient_sigma = Sigma::not_coverable();
  bool exceeds_n = false;
};

struct SnVerdict {
  bool member = false;
  std::size_t n = 0;
  CoverResult sigma_r;
  std::vector<MinimalIdealCheck> minimal_ideal_checks;
  SnFailure failure = SnFailure::none;
  //! Index into minimal_ideal_checks of the offending ideal when
  //! failure == quotient_also_small.
  std::optional<std::size_t> failing_ideal;
};

//! True iff sigma(q) > n. Solving with cap n turns "more than n" into
//! CapExceeded, which is exactly the answer needed.
inline std::pair<bool, Sigma> sigma_exceeds(RingTable const& q, std::size_t n, SolverOptions opt) {
  opt.sigma_cap = n;
  try {
    CoverResult c = sigma(q, opt);
    return {!c.sigma.coverable(), c.sigma};
  } catch (RingError const& e) {
    if (e.code() != Errc::cap_exceeded) throw;
    return {true, Sigma::not_coverable()};
  }
}

//! R is in S(n) iff sigma(R) = n and sigma(R/I) > n for every nonzero
//! proper ideal I. Only minimal ideals are checked: R/I is a quotient of
//! R/I0 for some minimal I0 inside I, so sigma(R/I0) <= sigma(R/I).
inline SnVerdict in_sn(RingTable const& r, std::size_t n, SolverOptions const& opt = {}) {
  if (n < 3) throw RingError(Errc::range_error, "S(n) is defined for n >= 3");
  SnVerdict v;
  v.n = n;
  v.sigma_r = sigma(r, opt);
  if (v.sigma_r.sigma != Sigma(n)) {
    v.failure = SnFailure::wrong_sigma;
    return v;
  }
  for (ElementSet const& i : minimal_ideals(r)) {
    MinimalIdealCheck check;
    check.ideal = i;
    auto [exceeds, s] = sigma_exceeds(quotient_ring(r, i).quotient, n, opt);
    check.exceeds_n = exceeds;
    check.quotient_sigma = s;
    v.minimal_ideal_checks.push_back(std::move(check));
    if (!exceeds && !v.failing_ideal) {
      v.failing_ideal = v.minimal_ideal_checks.size() - 1;
      v.failure = SnFailure::quotient_also_small;
    }
  }
  v.member = v.failure == SnFailure::none;
  return v;
}

struct SigmaWitness {
  Sigma sigma = Sigma::not_coverable();
  //! Ideals of R, strictly increasing; the last one I gives R/I in S(sigma).
  //! Empty when R itself is in S(sigma).
  std::vector<ElementSet> chain;
  RingTable quotient;
};

//! Descends through quotients by minimal ideals while sigma is preserved,
//! always taking the canonically least such ideal. The final quotient lies in
//! S(sigma(R)).
inline SigmaWitness classify_sigma_witness(RingTable const& r, SolverOptions const& opt = {}) {
  SigmaWitness w;
  w.sigma = sigma(r, opt).sigma;
  if (!w.sigma.coverable()) {
    throw RingError(Errc::not_applicable, "ring is not coverable");
  }
  std::size_t const n = w.sigma.value();
  RingTable cur = r;
  std::vector<Element> to_cur(r.order());
  for (Element x = 0; x < r.order(); ++x) to_cur[x] = x;
  for (;;) {
    bool descended = false;
    for (ElementSet const& i : minimal_ideals(cur)) {
      QuotientResult q = quotient_ring(cur, i);
      if (sigma_exceeds(q.quotient, n, opt).first) continue;
      ElementSet pulled(r.order());
      for (Element x = 0; x < r.order(); ++x) {
        to_cur[x] = q.projection[to_cur[x]];
        if (to_cur[x] == 0) pulled.insert(x);
      }
      w.chain.push_back(std::move(pulled));
      cur = std::move(q.quotient);
      descended = true;
      break;
    }
    if (!descended) break;
  }
  w.quotient = std::move(cur);
  return w;
}

struct LocalPrediction {
  bool coverable = false;
  Sigma sigma = Sigma::not_coverable();
  LocalData data;
};

//! For a commutative local ring with residue field F_p: with n = dim J/J^2,
//! R is not coverable when n <= 1 or (n = 2 and p not in J^2); otherwise
//! sigma(R) = p + 1.
inline LocalPrediction local_coverability_criterion(RingTable const& r) {
  LocalPrediction pred;
  pred.data = local_data(r);
  if (!r.is_commutative() || !pred.data.is_local || !pred.data.resfield_prime) {
    throw RingError(Errc::not_applicable,
                    "criterion needs a commutative local ring with prime residue field");
  }
  std::size_t const n = pred.data.dim_j_mod_j2;
  if (n <= 1 || (n == 2 && !pred.data.p_in_j2)) return pred;
  pred.coverable = true;
  pred.sigma = Sigma(pred.data.residue_order + 1);
  return pred;
}

}  // namespace ringcover

#endif  // RINGCOVER_CLASSIFY_HPP_
