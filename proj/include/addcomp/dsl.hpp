#pragma once

// Text and JSON forms of set descriptors.
//
//   finite{a,b,...}   cofinite{a,...}   below(x)   above(x)   multiples(n)
//   ap(res=r, mod=n, side=below|above, from=x)
//   family(doubling | blocks | blocks-complement)
//   family(generic, lenI=c0:c1:c2, lenJ=c0:c1:c2, origin=x)
//   nonprimes   nonpowers2   nonsquares
//   union(S, S, ...)   minus(S, finite{...})   translate(S, g)   neg(S)
//
// Both forms go through one syntax tree, a JSON object with an "op" field.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "addcomp/intset.hpp"

namespace addcomp {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t pos, const std::string& what)
      : Error(kind, what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

namespace dsl {

// ---------------------------------------------------------------------------
// Text -> tree

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  json parse() {
    json t = set();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorKind::SyntaxError, i_, msg); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }

  std::string word() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-' || s_[i_] == '_'))
      ++i_;
    if (b == i_) fail("expected a name");
    return std::string(s_.substr(b, i_ - b));
  }

  Int integer() {
    skip();
    std::size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    std::size_t d = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (d == i_) {
      i_ = b;
      fail("expected an integer");
    }
    try {
      std::size_t used = 0;
      long long v = std::stoll(std::string(s_.substr(b, i_ - b)), &used);
      return static_cast<Int>(v);
    } catch (const std::out_of_range&) {
      i_ = b;
      fail("integer out of range");
    }
  }

  std::vector<Int> braced() {
    expect('{');
    std::vector<Int> out;
    if (accept('}')) return out;
    do out.push_back(integer());
    while (accept(','));
    expect('}');
    return out;
  }

  std::vector<Int> poly() {
    std::vector<Int> c{integer()};
    while (accept(':')) c.push_back(integer());
    if (c.size() > 3) fail("at most three coefficients");
    c.resize(3, 0);
    return c;
  }

  json set() {
    skip();
    const std::size_t at = i_;
    std::string name = word();
    if (name == "finite" || name == "cofinite") return {{"op", name}, {"elems", braced()}};
    if (name == "nonprimes" || name == "nonpowers2" || name == "nonsquares") {
      if (accept('(')) expect(')');
      return {{"op", name}};
    }
    if (name == "integers") return {{"op", "cofinite"}, {"elems", json::array()}};
    expect('(');
    json t;
    if (name == "below" || name == "above") {
      t = {{"op", name}, {"x", integer()}};
    } else if (name == "multiples") {
      const std::size_t p = i_;
      t = {{"op", name}, {"n", integer()}};
      if (t["n"] == 0) throw ParseError(ErrorKind::SemanticError, p, "multiples of 0");
    } else if (name == "ap") {
      t = {{"op", "ap"}, {"side", "above"}, {"from", 0}};
      bool res = false, mod = false;
      do {
        std::string key = word();
        expect('=');
        const std::size_t p = i_;
        if (key == "res") {
          t["res"] = integer();
          res = true;
        } else if (key == "mod") {
          t["mod"] = integer();
          mod = true;
          if (t["mod"] == 0) throw ParseError(ErrorKind::SemanticError, p, "mod must be nonzero");
        } else if (key == "from") {
          t["from"] = integer();
        } else if (key == "side") {
          std::string v = word();
          if (v != "below" && v != "above") fail("side must be below or above");
          t["side"] = v;
        } else {
          fail("unknown ap parameter '" + key + "'");
        }
      } while (accept(','));
      if (!res || !mod) fail("ap needs res and mod");
    } else if (name == "family") {
      std::string rule = word();
      t = {{"op", "family"}, {"rule", rule}};
      if (rule == "generic") {
        t["origin"] = 1;
        while (accept(',')) {
          std::string key = word();
          expect('=');
          if (key == "lenI" || key == "lenJ") t[key] = poly();
          else if (key == "origin") t["origin"] = integer();
          else fail("unknown family parameter '" + key + "'");
        }
        if (!t.contains("lenI") || !t.contains("lenJ")) fail("generic family needs lenI and lenJ");
      } else if (rule != "doubling" && rule != "blocks" && rule != "blocks-complement") {
        fail("unknown family '" + rule + "'");
      }
    } else if (name == "union") {
      t = {{"op", "union"}, {"parts", json::array({set()})}};
      while (accept(',')) t["parts"].push_back(set());
    } else if (name == "minus") {
      t = {{"op", "minus"}, {"base", set()}};
      expect(',');
      skip();
      if (word() != "finite") fail("minus takes a finite set");
      t["elems"] = braced();
    } else if (name == "translate") {
      t = {{"op", "translate"}, {"base", set()}};
      expect(',');
      t["by"] = integer();
    } else if (name == "neg") {
      t = {{"op", "neg"}, {"base", set()}};
    } else {
      i_ = at;
      fail("unknown set '" + name + "'");
    }
    expect(')');
    return t;
  }
};

// ---------------------------------------------------------------------------
// Tree -> set

inline Poly poly_of(const json& j) {
  auto v = j.get<std::vector<Int>>();
  v.resize(3, 0);
  return Poly{v[0], v[1], v[2]};
}

inline IntSet build(const json& t) {
  const std::string op = t.at("op").get<std::string>();
  if (op == "finite") return finite_set(t.at("elems").get<std::vector<Int>>());
  if (op == "cofinite") return cofinite_set(t.at("elems").get<std::vector<Int>>());
  if (op == "below") return below_set(t.at("x").get<Int>());
  if (op == "above") return above_set(t.at("x").get<Int>());
  if (op == "multiples") return multiples_set(t.at("n").get<Int>());
  if (op == "ap")
    return bep_set(Bep::ap(t.at("res").get<Int>(), t.at("mod").get<Int>(), t.at("side") == "above", t.at("from").get<Int>()));
  if (op == "nonprimes") return pointwise_set(PredicateKind::NonPrimes);
  if (op == "nonpowers2") return pointwise_set(PredicateKind::NonPowersOfTwo);
  if (op == "nonsquares") return pointwise_set(PredicateKind::NonSquares);
  if (op == "family") {
    const std::string r = t.at("rule").get<std::string>();
    if (r == "doubling") return family_set(FamilyRule::doubling());
    if (r == "blocks") return family_set(FamilyRule::blocks());
    if (r == "blocks-complement") return family_set(FamilyRule::blocks_complement());
    if (r == "generic")
      return family_set(FamilyRule::generic(poly_of(t.at("lenI")), poly_of(t.at("lenJ")), t.value("origin", Int{1})));
    throw Error(ErrorKind::SemanticError, "unknown family '" + r + "'");
  }
  if (op == "union") {
    std::vector<IntSet> parts;
    for (const auto& p : t.at("parts")) parts.push_back(build(p));
    return parts.size() == 1 ? parts.front() : union_of(std::move(parts));
  }
  if (op == "minus") return minus_finite(build(t.at("base")), t.at("elems").get<std::vector<Int>>());
  if (op == "translate") return translated(build(t.at("base")), t.at("by").get<Int>());
  if (op == "neg") return negated(build(t.at("base")));
  throw Error(ErrorKind::SemanticError, "unknown constructor '" + op + "'");
}

// ---------------------------------------------------------------------------
// Set -> tree

inline json shifted(json t, int sign, Int offset) {
  // t describes R; the result is {x : sign*x + offset ∈ R}
  if (sign < 0) return offset == 0 ? json{{"op", "neg"}, {"base", t}}
                                   : json{{"op", "translate"}, {"base", {{"op", "neg"}, {"base", t}}}, {"by", offset}};
  return offset == 0 ? t : json{{"op", "translate"}, {"base", t}, {"by", neg(offset)}};
}

inline json union_tree(std::vector<json> parts) {
  if (parts.size() == 1) return parts.front();
  return {{"op", "union"}, {"parts", parts}};
}

inline json tree_of_bep(const Bep& b) {
  std::vector<json> parts;
  auto tail = [&](const TailSpec& ts, bool above, Int th) {
    if (ts.is_empty()) return;
    if (ts.is_full()) {
      parts.push_back({{"op", above ? "above" : "below"}, {"x", th}});
      return;
    }
    for (Int r : ts.residues())
      parts.push_back({{"op", "ap"}, {"res", r}, {"mod", ts.period()}, {"side", above ? "above" : "below"}, {"from", th}});
  };
  tail(b.left(), false, b.lo());
  if (!b.core().empty()) parts.push_back({{"op", "finite"}, {"elems", b.core()}});
  tail(b.right(), true, b.hi());
  if (parts.empty()) throw Error(ErrorKind::EmptySet, "set is empty");
  return union_tree(std::move(parts));
}

inline json tree_of_rule(const FamilyRule& r) {
  switch (r.kind()) {
    case FamilyRule::Kind::Doubling: return {{"op", "family"}, {"rule", "doubling"}};
    case FamilyRule::Kind::Blocks: return {{"op", "family"}, {"rule", "blocks"}};
    case FamilyRule::Kind::BlocksComplement: return {{"op", "family"}, {"rule", "blocks-complement"}};
    case FamilyRule::Kind::Generic: {
      auto p = [](const Poly& q) { return std::vector<Int>{q.c0, q.c1, q.c2}; };
      return {{"op", "family"}, {"rule", "generic"}, {"lenI", p(r.len_i())}, {"lenJ", p(r.len_j())}, {"origin", r.origin()}};
    }
  }
  throw Error(ErrorKind::NonRepresentable, "unknown rule");
}

inline json tree_of(const IntSet& s) {
  if (auto v = s.as<FiniteSet>()) return {{"op", "finite"}, {"elems", v->elems}};
  if (auto v = s.as<CofiniteSet>()) return {{"op", "cofinite"}, {"elems", v->excluded}};
  if (auto v = s.as<BepSet>()) return tree_of_bep(v->bep);
  if (auto v = s.as<FamilySet>()) {
    json t = shifted(tree_of_rule(v->rule), v->sign, v->offset);
    if (v->extra && !v->extra->is_empty_set()) t = union_tree({tree_of_bep(*v->extra), t});
    if (!v->removed.empty()) t = {{"op", "minus"}, {"base", t}, {"elems", v->removed}};
    return t;
  }
  if (auto v = s.as<PointwiseSet>()) {
    if (v->range_lo != std::numeric_limits<Int>::min() || v->range_hi != std::numeric_limits<Int>::max())
      throw Error(ErrorKind::NonRepresentable, "restricted decidable range has no text form");
    return shifted({{"op", predicate_name(v->kind)}}, v->sign, v->offset);
  }
  if (auto v = s.as<UnionSet>()) {
    std::vector<json> parts;
    for (const auto& p : v->parts) parts.push_back(tree_of(p));
    return union_tree(std::move(parts));
  }
  if (auto v = s.as<MinusSet>()) return {{"op", "minus"}, {"base", tree_of(v->base)}, {"elems", v->removed}};
  if (auto v = s.as<TranslateSet>()) return {{"op", "translate"}, {"base", tree_of(v->base)}, {"by", v->shift}};
  if (auto v = s.as<NegateSet>()) return {{"op", "neg"}, {"base", tree_of(v->base)}};
  throw Error(ErrorKind::NonRepresentable, "unknown node");
}

// ---------------------------------------------------------------------------
// Tree -> text

inline std::string ints(const json& a, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? sep : "") + std::to_string(a[i].get<Int>());
  return out;
}

inline std::string render(const json& t) {
  const std::string op = t.at("op").get<std::string>();
  if (op == "finite" || op == "cofinite") return op + "{" + ints(t.at("elems")) + "}";
  if (op == "below" || op == "above") return op + "(" + std::to_string(t.at("x").get<Int>()) + ")";
  if (op == "multiples") return "multiples(" + std::to_string(t.at("n").get<Int>()) + ")";
  if (op == "ap")
    return "ap(res=" + std::to_string(t.at("res").get<Int>()) + ", mod=" + std::to_string(t.at("mod").get<Int>()) +
           ", side=" + t.at("side").get<std::string>() + ", from=" + std::to_string(t.at("from").get<Int>()) + ")";
  if (op == "nonprimes" || op == "nonpowers2" || op == "nonsquares") return op;
  if (op == "family") {
    const std::string r = t.at("rule").get<std::string>();
    if (r != "generic") return "family(" + r + ")";
    return "family(generic, lenI=" + ints(t.at("lenI"), ":") + ", lenJ=" + ints(t.at("lenJ"), ":") +
           ", origin=" + std::to_string(t.value("origin", Int{1})) + ")";
  }
  if (op == "union") {
    std::string out = "union(";
    for (std::size_t i = 0; i < t.at("parts").size(); ++i) out += (i ? ", " : "") + render(t["parts"][i]);
    return out + ")";
  }
  if (op == "minus") return "minus(" + render(t.at("base")) + ", finite{" + ints(t.at("elems")) + "})";
  if (op == "translate") return "translate(" + render(t.at("base")) + ", " + std::to_string(t.at("by").get<Int>()) + ")";
  if (op == "neg") return "neg(" + render(t.at("base")) + ")";
  throw Error(ErrorKind::SemanticError, "unknown constructor '" + op + "'");
}

}  // namespace dsl

inline IntSet parse_set(std::string_view text) { return dsl::build(dsl::Parser(text).parse()); }
inline std::string print_set(const IntSet& s) { return dsl::render(dsl::tree_of(s)); }
inline json set_to_json(const IntSet& s) { return dsl::tree_of(s); }
inline IntSet set_from_json(const json& j) {
  try {
    return dsl::build(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SemanticError, e.what());
  }
}

}  // namespace addcomp
