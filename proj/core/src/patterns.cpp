//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/patterns.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "safekit/error.hpp"

namespace safekit {

void PredicateRegistry::add(std::string name, AtomPredicate predicate) {
  table_[std::move(name)] = std::make_shared<const AtomPredicate>(std::move(predicate));
}

std::shared_ptr<const AtomPredicate>
PredicateRegistry::find(std::string_view name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : it->second;
}

bool AtomPattern::is_wildcard() const {
  for (const AtomPrimitive &t: terms) {
    if (t.kind != AtomPrimitiveKind::kAny || t.negated)
      return false;
  }
  return true;
}

namespace {

bool primitive_holds(const AtomPrimitive &t, const MolGraph &g, std::uint32_t i) {
  const Atom &a = g.atom(i);
  switch (t.kind) {
  case AtomPrimitiveKind::kAny:
    return true;
  case AtomPrimitiveKind::kSymbol:
    return a.element == t.element && a.aromatic == t.aromatic;
  case AtomPrimitiveKind::kAtomicNumber:
    return a.element == t.element;
  case AtomPrimitiveKind::kAromatic:
    return a.aromatic;
  case AtomPrimitiveKind::kAliphatic:
    return !a.aromatic;
  case AtomPrimitiveKind::kInRing:
    return a.in_ring;
  case AtomPrimitiveKind::kDegree:
    return static_cast<int>(g.degree(i)) == t.value;
  case AtomPrimitiveKind::kCharge:
    return a.charge == t.value;
  case AtomPrimitiveKind::kTotalH:
    return a.total_h() == t.value;
  case AtomPrimitiveKind::kNamed:
    return (*t.predicate)(g, i);
  }
  return false;
}

}  // namespace

bool AtomPattern::matches(const MolGraph &g, std::uint32_t atom) const {
  for (const AtomPrimitive &t: terms) {
    if (primitive_holds(t, g, atom) == t.negated)
      return false;
  }
  return true;
}

bool BondPattern::has_order_term() const {
  for (const BondPrimitive &t: terms) {
    if (t.kind != BondPrimitiveKind::kInRing)
      return true;
  }
  return false;
}

bool BondPattern::matches(const Bond &b) const {
  if (!has_order_term() && b.order != BondOrder::kSingle
      && b.order != BondOrder::kAromatic)
    return false;
  for (const BondPrimitive &t: terms) {
    bool holds = false;
    switch (t.kind) {
    case BondPrimitiveKind::kAny:
      holds = true;
      break;
    case BondPrimitiveKind::kSingle:
      holds = b.order == BondOrder::kSingle;
      break;
    case BondPrimitiveKind::kDouble:
      holds = b.order == BondOrder::kDouble;
      break;
    case BondPrimitiveKind::kTriple:
      holds = b.order == BondOrder::kTriple;
      break;
    case BondPrimitiveKind::kAromatic:
      holds = b.order == BondOrder::kAromatic;
      break;
    case BondPrimitiveKind::kInRing:
      holds = b.in_ring;
      break;
    }
    if (holds == t.negated)
      return false;
  }
  return true;
}

std::uint32_t QueryGraph::add_atom(AtomPattern p) {
  atoms_.push_back(std::move(p));
  adjacency_.emplace_back();
  return num_atoms() - 1;
}

void QueryGraph::add_bond(std::uint32_t a, std::uint32_t b, BondPattern p) {
  const auto id = num_bonds();
  bonds_.push_back({ a, b, std::move(p) });
  adjacency_[a].push_back({ b, id });
  adjacency_[b].push_back({ a, id });
}

bool QueryGraph::connected() const {
  if (atoms_.empty())
    return false;
  std::vector<bool> seen(atoms_.size(), false);
  std::vector<std::uint32_t> stack { 0 };
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    for (Neighbor nb: adjacency_[a]) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = true;
        ++count;
        stack.push_back(nb.atom);
      }
    }
  }
  return count == atoms_.size();
}

namespace {

class PatternParser {
public:
  PatternParser(std::string_view text, const PredicateRegistry *registry)
      : s_(text), registry_(registry) { }

  QueryGraph parse() {
    if (s_.empty())
      fail(ErrorKind::kSyntax, "empty pattern");
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') {
        if (!prev_ || pending_)
          fail(ErrorKind::kSyntax, "misplaced '('");
        branches_.push_back(*prev_);
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty() || pending_)
          fail(ErrorKind::kSyntax, "misplaced ')'");
        prev_ = branches_.back();
        branches_.pop_back();
        ++pos_;
      } else if (c == '.') {
        fail(ErrorKind::kUnsupportedPrimitive, "disconnected patterns ('.') are not supported");
      } else if (is_bond_char(c)) {
        if (!prev_ || pending_)
          fail(ErrorKind::kSyntax, "misplaced bond expression");
        pending_ = read_bond_expression();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        ring_closure();
      } else {
        add_atom(c == '[' ? read_bracket() : read_bare_atom());
      }
    }
    if (pending_ || !branches_.empty() || !prev_)
      fail(ErrorKind::kSyntax, "incomplete pattern");
    if (!open_rings_.empty())
      fail(ErrorKind::kUnclosedRing, "unclosed ring in pattern");
    return std::move(q_);
  }

private:
  [[noreturn]] void fail(ErrorKind kind, const std::string &msg) const {
    throw Error(kind, msg + " in pattern '" + std::string(s_) + "' at "
                          + std::to_string(pos_));
  }

  static bool is_bond_char(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '~' || c == '@'
           || c == '!' || c == ';' || c == '&' || c == ',' || c == '/' || c == '\\';
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  int read_number(int fallback) {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      return fallback;
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  BondPattern read_bond_expression() {
    BondPattern p;
    bool negated = false;
    while (pos_ < s_.size() && is_bond_char(peek())) {
      const char c = s_[pos_++];
      BondPrimitive t;
      switch (c) {
      case '!':
        negated = !negated;
        continue;
      case ';':
      case '&':
        if (negated)
          fail(ErrorKind::kSyntax, "dangling '!' in bond expression");
        continue;
      case ',':
        fail(ErrorKind::kUnsupportedPrimitive, "OR bond expressions are not supported");
      case '/':
      case '\\':
        fail(ErrorKind::kUnsupportedPrimitive, "directional bonds are not supported");
      case '-':
        t.kind = BondPrimitiveKind::kSingle;
        break;
      case '=':
        t.kind = BondPrimitiveKind::kDouble;
        break;
      case '#':
        t.kind = BondPrimitiveKind::kTriple;
        break;
      case ':':
        t.kind = BondPrimitiveKind::kAromatic;
        break;
      case '~':
        t.kind = BondPrimitiveKind::kAny;
        break;
      case '@':
        t.kind = BondPrimitiveKind::kInRing;
        break;
      default:
        break;
      }
      t.negated = negated;
      negated = false;
      p.terms.push_back(t);
    }
    if (negated || p.terms.empty())
      fail(ErrorKind::kSyntax, "incomplete bond expression");
    return p;
  }

  void ring_closure() {
    if (!prev_)
      fail(ErrorKind::kSyntax, "ring closure without an atom");
    int digit;
    if (peek() == '%') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))
          || !std::isdigit(static_cast<unsigned char>(peek(1))))
        fail(ErrorKind::kSyntax, "'%' needs two digits");
      digit = (peek() - '0') * 10 + (peek(1) - '0');
      pos_ += 2;
    } else {
      digit = s_[pos_++] - '0';
    }
    auto it = open_rings_.find(digit);
    if (it == open_rings_.end()) {
      open_rings_.emplace(digit, std::make_pair(*prev_, pending_));
    } else {
      auto [atom, bond] = it->second;
      open_rings_.erase(it);
      if (atom == *prev_)
        fail(ErrorKind::kSyntax, "ring closure onto the same atom");
      BondPattern p = pending_ ? *pending_ : bond ? *bond : BondPattern {};
      q_.add_bond(atom, *prev_, std::move(p));
    }
    pending_.reset();
  }

  void add_atom(AtomPattern p) {
    const auto idx = q_.add_atom(std::move(p));
    if (prev_)
      q_.add_bond(*prev_, idx, pending_ ? *pending_ : BondPattern {});
    pending_.reset();
    prev_ = idx;
  }

  static AtomPrimitive symbol(Element e, bool aromatic) {
    AtomPrimitive t;
    t.kind = AtomPrimitiveKind::kSymbol;
    t.element = e;
    t.aromatic = aromatic;
    return t;
  }

  // Reads an element symbol at the cursor, if any.
  std::optional<AtomPrimitive> read_symbol() {
    const char c = peek();
    if (c == 'C' && peek(1) == 'l') {
      pos_ += 2;
      return symbol(Element::kCl, false);
    }
    if (c == 'B' && peek(1) == 'r') {
      pos_ += 2;
      return symbol(Element::kBr, false);
    }
    switch (c) {
    case 'C':
      ++pos_;
      return symbol(Element::kC, false);
    case 'N':
      ++pos_;
      return symbol(Element::kN, false);
    case 'O':
      ++pos_;
      return symbol(Element::kO, false);
    case 'S':
      ++pos_;
      return symbol(Element::kS, false);
    case 'F':
      ++pos_;
      return symbol(Element::kF, false);
    case 'c':
      ++pos_;
      return symbol(Element::kC, true);
    case 'n':
      ++pos_;
      return symbol(Element::kN, true);
    case 'o':
      ++pos_;
      return symbol(Element::kO, true);
    case 's':
      ++pos_;
      return symbol(Element::kS, true);
    default:
      return std::nullopt;
    }
  }

  AtomPattern read_bare_atom() {
    AtomPattern p;
    const char c = peek();
    AtomPrimitive t;
    if (c == '*') {
      ++pos_;
    } else if (c == 'a') {
      ++pos_;
      t.kind = AtomPrimitiveKind::kAromatic;
    } else if (c == 'A') {
      ++pos_;
      t.kind = AtomPrimitiveKind::kAliphatic;
    } else if (auto sym = read_symbol()) {
      t = *sym;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      fail(ErrorKind::kUnknownElement, std::string("unsupported atom '") + c + "'");
    } else {
      fail(ErrorKind::kSyntax, std::string("unexpected character '") + c + "'");
    }
    p.terms.push_back(std::move(t));
    return p;
  }

  AtomPattern read_bracket() {
    ++pos_;  // '['
    AtomPattern p;
    if (peek() == 'H' && peek(1) == ']') {
      pos_ += 2;
      p.terms.push_back(symbol(Element::kH, false));
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(peek())))
      fail(ErrorKind::kUnsupportedPrimitive, "isotopes are not supported");

    bool negated = false;
    while (true) {
      const char c = peek();
      if (c == '\0')
        fail(ErrorKind::kSyntax, "unterminated '['");
      if (c == ']') {
        if (negated || p.terms.empty())
          fail(ErrorKind::kSyntax, "incomplete atom expression");
        ++pos_;
        return p;
      }
      if (c == '!') {
        negated = !negated;
        ++pos_;
        continue;
      }
      if (c == ';' || c == '&') {
        if (negated)
          fail(ErrorKind::kSyntax, "dangling '!'");
        ++pos_;
        continue;
      }
      if (c == ',')
        fail(ErrorKind::kUnsupportedPrimitive, "OR atom lists are not supported");
      if (c == '$')
        fail(ErrorKind::kUnsupportedPrimitive, "recursive SMARTS is not supported");
      if (c == '@')
        fail(ErrorKind::kUnsupportedPrimitive, "chirality is not supported");

      AtomPrimitive t;
      if (c == '*') {
        ++pos_;
      } else if (c == 'a') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kAromatic;
      } else if (c == 'A') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kAliphatic;
      } else if (c == 'R') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kInRing;
        const int n = read_number(-1);
        if (n == 0)
          negated = !negated;
        else if (n > 0)
          fail(ErrorKind::kUnsupportedPrimitive, "ring counts (R<n>) are not supported");
      } else if (c == 'D') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kDegree;
        t.value = read_number(1);
      } else if (c == 'H') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kTotalH;
        t.value = read_number(1);
      } else if (c == '#') {
        ++pos_;
        const int z = read_number(-1);
        auto e = element_from_atomic_number(z);
        if (z < 0)
          fail(ErrorKind::kSyntax, "'#' needs an atomic number");
        if (!e)
          fail(ErrorKind::kUnknownElement, "atomic number " + std::to_string(z));
        t.kind = AtomPrimitiveKind::kAtomicNumber;
        t.element = *e;
      } else if (c == '+' || c == '-') {
        ++pos_;
        t.kind = AtomPrimitiveKind::kCharge;
        int magnitude = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          magnitude = read_number(1);
        } else {
          while (peek() == c) {
            ++magnitude;
            ++pos_;
          }
        }
        t.value = c == '+' ? magnitude : -magnitude;
      } else if (c == '{') {
        const auto close = s_.find('}', pos_);
        if (close == std::string_view::npos)
          fail(ErrorKind::kSyntax, "unterminated '{'");
        t.kind = AtomPrimitiveKind::kNamed;
        t.name = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
        if (registry_)
          t.predicate = registry_->find(t.name);
        if (!t.predicate)
          fail(ErrorKind::kUnsupportedPrimitive, "unknown environment {" + t.name + "}");
        pos_ = close + 1;
      } else if (auto sym = read_symbol()) {
        t = *sym;
      } else {
        fail(ErrorKind::kUnsupportedPrimitive,
             std::string("unsupported atom primitive '") + c + "'");
      }
      t.negated = negated;
      negated = false;
      p.terms.push_back(std::move(t));
    }
  }

  std::string_view s_;
  const PredicateRegistry *registry_;
  std::size_t pos_ = 0;
  QueryGraph q_;
  std::optional<std::uint32_t> prev_;
  std::optional<BondPattern> pending_;
  std::vector<std::uint32_t> branches_;
  std::map<int, std::pair<std::uint32_t, std::optional<BondPattern>>> open_rings_;
};

}  // namespace

QueryGraph parse_pattern(std::string_view text, const PredicateRegistry *registry) {
  return PatternParser(text, registry).parse();
}

}  // namespace safekit
