#ifndef RINGCOVER_TESTS_AST_GEN_HPP_
#define RINGCOVER_TESTS_AST_GEN_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "ringcover/constructors.hpp"
#include "ringcover/dsl.hpp"

namespace support {

namespace ex = ringcover::expr;
using ringcover::Coords;
using ringcover::RingExpr;
using ringcover::StructConsts;

// Random ASTs of depth <= 4, drawn from the whole grammar. Generated trees are
// valid for the parser but not necessarily small enough to evaluate.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  RingExpr gen(int depth) {
    int kind = pick(depth <= 0 ? 8 : 13);
    switch (kind) {
      case 0: return ex::zmod(2 + pick(40));
      case 1: return ex::gf(ringcover::supported_field_orders()[pick(8)]);
      case 2: return ex::trunc_poly(primes_[pick(5)], 1 + pick(6));
      case 3: return ex::nil2(primes_[pick(5)]);
      case 4: return ex::twisted_dual(pick(2) ? 4 : 9);
      case 5: return ex::mixed_tri();
      case 6:
      case 7: return table();
      case 8: return ex::mat(1 + pick(3), gen(depth - 1));
      case 9: return ex::tri(1 + pick(3), gen(depth - 1));
      case 10: return ex::opp(gen(depth - 1));
      case 11: {
        std::vector<RingExpr> fs;
        std::size_t n = 2 + pick(3);
        for (std::size_t i = 0; i < n; ++i) fs.push_back(gen(depth - 1));
        return ex::prod(std::move(fs));
      }
      default: {
        RingExpr base = gen(depth - 1);
        std::size_t k = ringcover::static_rank(base).value_or(1 + pick(4));
        std::vector<Coords> gens(pick(3));
        for (auto& g : gens) {
          g.resize(k);
          for (auto& c : g) c = static_cast<std::uint32_t>(pick(3));
        }
        return ex::quot(std::move(base), std::move(gens));
      }
    }
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  RingExpr table() {
    std::size_t k = 1 + pick(3);
    std::vector<std::uint32_t> shape(k);
    for (auto& d : shape) d = std::vector<std::uint32_t>{2, 3, 4, 5, 8, 9}[pick(6)];
    auto vec = [&] {
      Coords c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<std::uint32_t>(pick(shape[i]));
      return c;
    };
    StructConsts consts(k, std::vector<Coords>(k));
    for (auto& row : consts)
      for (auto& c : row) c = vec();
    return ex::table(shape, consts, vec());
  }

  std::mt19937_64 rng_;
  std::vector<std::uint64_t> primes_{2, 3, 5, 7, 11};
};

}  // namespace support

#endif  // RINGCOVER_TESTS_AST_GEN_HPP_
