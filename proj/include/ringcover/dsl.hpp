#ifndef RINGCOVER_DSL_HPP_
#define RINGCOVER_DSL_HPP_

// Ring specification language.
//
//   expr := term ("x" term)*                 binary product, left-assoc
//   term := ctor "(" args ")" | "(" expr ")"
//   ctor := Z | GF | M | T | P | Nil2 | TD | MT | Op | Quot | Table
//
//   Z(n)  GF(q)  M(k, e)  T(k, e)  P(p, n)  Nil2(p)  TD(q)  MT()  Op(e)
//   Quot(e, [[c1,...,ck], ...])   Table([d1,...,dk], [[[..],..],..], [u1,...,uk])
//
// "#" starts a comment running to the end of the line.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "constructors.hpp"
#include "error.hpp"
#include "ideals.hpp"
#include "ring.hpp"

namespace ringcover {

struct RingExpr {
  enum class Kind { zmod, gf, prod, mat, tri, trunc_poly, nil2, twisted_dual, mixed_tri, opp, quot, table };

  Kind kind = Kind::zmod;
  //! Integer arguments in source order (Z: n; GF/TD: q; M/T: k; P: p, n; Nil2: p).
  std::vector<std::uint64_t> ints;
  std::vector<RingExpr> children;
  //! Quot generators.
  std::vector<Coords> gens;
  //! Table payload.
  std::vector<std::uint32_t> shape;
  StructConsts consts;
  Coords unit;

  friend bool operator==(RingExpr const&, RingExpr const&) = default;
};

namespace expr {

inline RingExpr leaf(RingExpr::Kind k, std::vector<std::uint64_t> ints) {
  RingExpr e;
  e.kind = k;
  e.ints = std::move(ints);
  return e;
}

inline RingExpr zmod(std::uint64_t n) { return leaf(RingExpr::Kind::zmod, {n}); }
inline RingExpr gf(std::uint64_t q) { return leaf(RingExpr::Kind::gf, {q}); }
inline RingExpr trunc_poly(std::uint64_t p, std::uint64_t n) { return leaf(RingExpr::Kind::trunc_poly, {p, n}); }
inline RingExpr nil2(std::uint64_t p) { return leaf(RingExpr::Kind::nil2, {p}); }
inline RingExpr twisted_dual(std::uint64_t q) { return leaf(RingExpr::Kind::twisted_dual, {q}); }
inline RingExpr mixed_tri() { return leaf(RingExpr::Kind::mixed_tri, {}); }

inline RingExpr mat(std::uint64_t k, RingExpr e) {
  RingExpr m = leaf(RingExpr::Kind::mat, {k});
  m.children.push_back(std::move(e));
  return m;
}

inline RingExpr tri(std::uint64_t k, RingExpr e) {
  RingExpr m = leaf(RingExpr::Kind::tri, {k});
  m.children.push_back(std::move(e));
  return m;
}

inline RingExpr opp(RingExpr e) {
  RingExpr m = leaf(RingExpr::Kind::opp, {});
  m.children.push_back(std::move(e));
  return m;
}

inline RingExpr quot(RingExpr e, std::vector<Coords> gens) {
  RingExpr m = leaf(RingExpr::Kind::quot, {});
  m.children.push_back(std::move(e));
  m.gens = std::move(gens);
  return m;
}

inline RingExpr table(std::vector<std::uint32_t> shape, StructConsts consts, Coords unit) {
  RingExpr m = leaf(RingExpr::Kind::table, {});
  m.shape = std::move(shape);
  m.consts = std::move(consts);
  m.unit = std::move(unit);
  return m;
}

//! n-ary product in normal form: nested products are flattened.
inline RingExpr prod(std::vector<RingExpr> factors) {
  RingExpr m = leaf(RingExpr::Kind::prod, {});
  for (auto& f : factors) {
    if (f.kind == RingExpr::Kind::prod) {
      for (auto& g : f.children) m.children.push_back(std::move(g));
    } else {
      m.children.push_back(std::move(f));
    }
  }
  if (m.children.size() == 1) return std::move(m.children.front());
  return m;
}

}  // namespace expr

//! Number of additive generators of the evaluated ring, when it is known
//! without evaluation (unknown below a Quot).
inline std::optional<std::size_t> static_rank(RingExpr const& e) {
  using K = RingExpr::Kind;
  switch (e.kind) {
    case K::zmod: return detail::prime_power_parts(e.ints[0]).size();
    case K::gf: return field_spec(static_cast<std::uint32_t>(e.ints[0])).e;
    case K::prod: {
      std::size_t sum = 0;
      for (auto const& c : e.children) {
        auto r = static_rank(c);
        if (!r) return std::nullopt;
        sum += *r;
      }
      return sum;
    }
    case K::mat:
    case K::tri: {
      auto r = static_rank(e.children[0]);
      if (!r) return std::nullopt;
      std::size_t k = e.ints[0];
      return (e.kind == K::mat ? k * k : k * (k + 1) / 2) * *r;
    }
    case K::trunc_poly: return e.ints[1];
    case K::nil2: return 3;
    case K::twisted_dual: return 2 * field_spec(static_cast<std::uint32_t>(e.ints[0])).e;
    case K::mixed_tri: return 5;
    case K::opp: return static_rank(e.children[0]);
    case K::quot: return std::nullopt;
    case K::table: return e.shape.size();
  }
  return std::nullopt;
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RingExpr parse_all() {
    RingExpr e = parse_expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(std::string const& msg, Errc code = Errc::syntax_error) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw RingError(code, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  [[noreturn]] void range(std::string const& msg) const { fail(msg, Errc::range_error); }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail("expected a constructor name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t integer() {
    skip_space();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1000000000ULL) range("integer literal too large");
      ++pos_;
    }
    if (start == pos_) fail("expected an integer");
    return v;
  }

  //! Whether the next token is the product operator "x".
  bool at_times() {
    skip_space();
    // No constructor starts with 'x', so an 'x' in operator position is
    // always the product.
    return pos_ < text_.size() && text_[pos_] == 'x';
  }

  RingExpr parse_expr() {
    std::vector<RingExpr> factors;
    factors.push_back(parse_term());
    while (at_times()) {
      ++pos_;
      factors.push_back(parse_term());
    }
    return factors.size() == 1 ? std::move(factors.front()) : expr::prod(std::move(factors));
  }

  template <typename T, typename F>
  std::vector<T> list(F&& item) {
    expect('[');
    std::vector<T> out;
    if (peek(']')) {
      ++pos_;
      return out;
    }
    out.push_back(item());
    while (peek(',')) {
      ++pos_;
      out.push_back(item());
    }
    expect(']');
    return out;
  }

  Coords vec() {
    return list<std::uint32_t>([&] {
      std::uint64_t v = integer();
      return static_cast<std::uint32_t>(v);
    });
  }

  RingExpr parse_term() {
    if (peek('(')) {
      ++pos_;
      RingExpr e = parse_expr();
      expect(')');
      return e;
    }
    std::size_t const at = pos_;
    std::string name = ident();
    expect('(');
    RingExpr e;
    auto small = [&](std::uint64_t v, char const* what) {
      if (v > 64) range(std::string(what) + " too large");
      return v;
    };
    if (name == "Z") {
      std::uint64_t n = integer();
      if (n < 2) range("Z(n) needs n >= 2");
      e = expr::zmod(n);
    } else if (name == "GF") {
      std::uint64_t q = integer();
      if (q > 32 || detail::prime_of_power(q) == 0) range("GF(" + std::to_string(q) + ") unsupported");
      try {
        field_spec(static_cast<std::uint32_t>(q));
      } catch (RingError const&) {
        range("GF(" + std::to_string(q) + ") unsupported");
      }
      e = expr::gf(q);
    } else if (name == "M" || name == "T") {
      std::uint64_t k = small(integer(), "matrix size");
      if (k < 1) range("matrix size must be >= 1");
      expect(',');
      RingExpr inner = parse_expr();
      e = name == "M" ? expr::mat(k, std::move(inner)) : expr::tri(k, std::move(inner));
    } else if (name == "P") {
      std::uint64_t p = integer();
      if (!detail::is_prime(p)) range("P(p, n) needs p prime");
      expect(',');
      std::uint64_t n = small(integer(), "truncation degree");
      if (n < 1) range("P(p, n) needs n >= 1");
      e = expr::trunc_poly(p, n);
    } else if (name == "Nil2") {
      std::uint64_t p = integer();
      if (!detail::is_prime(p)) range("Nil2(p) needs p prime");
      e = expr::nil2(p);
    } else if (name == "TD") {
      std::uint64_t q = integer();
      if (q != 4 && q != 9) range("TD(q) needs q in {4, 9}");
      e = expr::twisted_dual(q);
    } else if (name == "MT") {
      e = expr::mixed_tri();
    } else if (name == "Op") {
      e = expr::opp(parse_expr());
    } else if (name == "Quot") {
      RingExpr base = parse_expr();
      expect(',');
      std::vector<Coords> gens = list<Coords>([&] { return vec(); });
      if (auto k = static_rank(base)) {
        for (auto const& g : gens) {
          if (g.size() != *k) range("Quot generator length does not match the base ring");
        }
      }
      e = expr::quot(std::move(base), std::move(gens));
    } else if (name == "Table") {
      std::vector<std::uint32_t> shape = vec();
      expect(',');
      StructConsts consts = list<std::vector<Coords>>([&] { return list<Coords>([&] { return vec(); }); });
      expect(',');
      Coords unit = vec();
      std::size_t const k = shape.size();
      for (auto d : shape) {
        if (detail::prime_of_power(d) == 0) range("Table shape entries must be prime powers");
      }
      auto check = [&](Coords const& c) {
        if (c.size() != k) range("Table coordinate vector has the wrong length");
        for (std::size_t i = 0; i < k; ++i) {
          if (c[i] >= shape[i]) range("Table coordinate out of range");
        }
      };
      if (consts.size() != k) range("Table needs k rows of structure constants");
      for (auto const& row : consts) {
        if (row.size() != k) range("Table needs k columns of structure constants");
        for (auto const& c : row) check(c);
      }
      check(unit);
      e = expr::table(std::move(shape), std::move(consts), std::move(unit));
    } else {
      pos_ = at;
      fail("unknown constructor '" + name + "'");
    }
    expect(')');
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void print_vec(std::ostream& os, Coords const& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
}

}  // namespace detail

inline RingExpr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

inline std::string canonical_print(RingExpr const& e) {
  using K = RingExpr::Kind;
  std::ostringstream os;
  switch (e.kind) {
    case K::zmod: os << "Z(" << e.ints[0] << ')'; break;
    case K::gf: os << "GF(" << e.ints[0] << ')'; break;
    case K::prod:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        os << (i ? " x " : "") << canonical_print(e.children[i]);
      }
      break;
    case K::mat: os << "M(" << e.ints[0] << ", " << canonical_print(e.children[0]) << ')'; break;
    case K::tri: os << "T(" << e.ints[0] << ", " << canonical_print(e.children[0]) << ')'; break;
    case K::trunc_poly: os << "P(" << e.ints[0] << ", " << e.ints[1] << ')'; break;
    case K::nil2: os << "Nil2(" << e.ints[0] << ')'; break;
    case K::twisted_dual: os << "TD(" << e.ints[0] << ')'; break;
    case K::mixed_tri: os << "MT()"; break;
    case K::opp: os << "Op(" << canonical_print(e.children[0]) << ')'; break;
    case K::quot:
      os << "Quot(" << canonical_print(e.children[0]) << ", [";
      for (std::size_t i = 0; i < e.gens.size(); ++i) {
        if (i) os << ',';
        detail::print_vec(os, e.gens[i]);
      }
      os << "])";
      break;
    case K::table:
      os << "Table(";
      detail::print_vec(os, e.shape);
      os << ", [";
      for (std::size_t i = 0; i < e.consts.size(); ++i) {
        os << (i ? "," : "") << '[';
        for (std::size_t j = 0; j < e.consts[i].size(); ++j) {
          if (j) os << ',';
          detail::print_vec(os, e.consts[i][j]);
        }
        os << ']';
      }
      os << "], ";
      detail::print_vec(os, e.unit);
      os << ')';
      break;
  }
  return os.str();
}

inline RingTable eval(RingExpr const& e) {
  using K = RingExpr::Kind;
  auto u32 = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  switch (e.kind) {
    case K::zmod: return zmod(e.ints[0]);
    case K::gf: return gf(u32(e.ints[0]));
    case K::prod: {
      std::vector<RingTable> rs;
      for (auto const& c : e.children) rs.push_back(eval(c));
      return product(rs);
    }
    case K::mat: return matrix_ring(e.ints[0], eval(e.children[0]));
    case K::tri: return upper_tri(e.ints[0], eval(e.children[0]));
    case K::trunc_poly: return trunc_poly(u32(e.ints[0]), u32(e.ints[1]));
    case K::nil2: return nil2(u32(e.ints[0]));
    case K::twisted_dual: return twisted_dual(u32(e.ints[0]));
    case K::mixed_tri: return mixed_tri();
    case K::opp: return opposite(eval(e.children[0]));
    case K::quot: {
      RingTable base = eval(e.children[0]);
      ElementSet gens(base.order());
      for (auto const& g : e.gens) {
        if (g.size() != base.rank()) {
          throw RingError(Errc::range_error, "Quot generator length does not match the base ring");
        }
        gens.insert(base.index(g));
      }
      return quotient_ring(base, ideal_closure(base, gens)).quotient;
    }
    case K::table: return make_ring(e.shape, e.consts, e.unit);
  }
  throw RingError(Errc::range_error, "unknown expression kind");
}

inline RingTable eval(std::string_view text) { return eval(parse(text)); }

//! Accepts either a path to a `.ring` file or an inline expression.
inline std::string load_spec_text(std::string const& arg) {
  std::ifstream in(arg);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

}  // namespace ringcover

#endif  // RINGCOVER_DSL_HPP_
