//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safekit/smiles.hpp"

namespace safekit {

namespace {

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): s_(text) { }

  MolGraph parse() {
    if (s_.empty())
      fail(ErrorKind::kSyntax, "empty SMILES");

    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      switch (c) {
      case '(':
        open_branch();
        break;
      case ')':
        close_branch();
        break;
      case '.':
        dot();
        break;
      case '-':
      case '=':
      case '#':
      case ':':
        bond_symbol(c);
        break;
      case '/':
      case '\\':
        fail(ErrorKind::kSyntax, "stereo bond symbols are not supported");
      case '$':
        fail(ErrorKind::kSyntax, "quadruple bonds are not supported");
      case '%':
        ring_closure(read_percent_digit());
        break;
      case '[':
        add_atom(read_bracket_atom());
        break;
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          ++pos_;
          ring_closure(c - '0');
        } else {
          add_atom(read_organic_atom());
        }
        break;
      }
    }

    if (pending_)
      fail(ErrorKind::kSyntax, "dangling bond symbol at end of input");
    if (!branches_.empty())
      fail(ErrorKind::kSyntax, "unmatched '('");
    if (!prev_)
      fail(ErrorKind::kSyntax, "input ends with '.'");
    if (!open_rings_.empty())
      fail(ErrorKind::kUnclosedRing,
           "ring closure " + format_ring_digit(open_rings_.begin()->first)
               + " opened but never closed");
    return builder_.build();
  }

private:
  struct PendingBond {
    BondOrder order;
    std::size_t pos;
  };
  struct OpenRing {
    std::uint32_t atom;
    std::optional<BondOrder> order;
  };
  struct Branch {
    std::uint32_t atom;
    std::uint32_t atoms_before;
  };

  [[noreturn]] void fail(ErrorKind kind, const std::string &msg) const {
    throw Error(kind, msg + " (position " + std::to_string(pos_) + ")");
  }

  BondOrder default_order(std::uint32_t a, std::uint32_t b) const {
    return builder_.atom(a).aromatic && builder_.atom(b).aromatic
               ? BondOrder::kAromatic
               : BondOrder::kSingle;
  }

  void open_branch() {
    if (!prev_)
      fail(ErrorKind::kSyntax, "branch without a preceding atom");
    if (pending_)
      fail(ErrorKind::kSyntax, "bond symbol before '('");
    branches_.push_back({ *prev_, builder_.num_atoms() });
    ++pos_;
  }

  void close_branch() {
    if (branches_.empty())
      fail(ErrorKind::kSyntax, "unmatched ')'");
    if (pending_)
      fail(ErrorKind::kSyntax, "dangling bond symbol before ')'");
    if (builder_.num_atoms() == branches_.back().atoms_before)
      fail(ErrorKind::kSyntax, "empty branch");
    prev_ = branches_.back().atom;
    branches_.pop_back();
    ++pos_;
  }

  void dot() {
    if (pending_)
      fail(ErrorKind::kSyntax, "dangling bond symbol before '.'");
    if (!prev_)
      fail(ErrorKind::kSyntax, "'.' without a preceding atom");
    if (!branches_.empty())
      fail(ErrorKind::kSyntax, "'.' inside a branch");
    prev_.reset();
    ++pos_;
  }

  void bond_symbol(char c) {
    if (!prev_)
      fail(ErrorKind::kSyntax, "bond symbol without a preceding atom");
    if (pending_)
      fail(ErrorKind::kSyntax, "two consecutive bond symbols");
    BondOrder order = BondOrder::kSingle;
    switch (c) {
    case '=':
      order = BondOrder::kDouble;
      break;
    case '#':
      order = BondOrder::kTriple;
      break;
    case ':':
      order = BondOrder::kAromatic;
      break;
    default:
      break;
    }
    pending_ = PendingBond { order, pos_ };
    ++pos_;
  }

  int read_percent_digit() {
    if (pos_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))
        || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
      fail(ErrorKind::kSyntax, "'%' must be followed by two digits");
    int d = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
    pos_ += 3;
    return d;
  }

  void ring_closure(int digit) {
    if (!prev_)
      fail(ErrorKind::kSyntax, "ring-closure digit without a preceding atom");
    std::optional<BondOrder> order;
    if (pending_)
      order = pending_->order;
    pending_.reset();

    auto it = open_rings_.find(digit);
    if (it == open_rings_.end()) {
      open_rings_.emplace(digit, OpenRing { *prev_, order });
      return;
    }
    OpenRing ring = it->second;
    open_rings_.erase(it);
    if (ring.atom == *prev_)
      fail(ErrorKind::kSyntax, "ring closure " + format_ring_digit(digit)
                                   + " bonds an atom to itself");
    if (order && ring.order && *order != *ring.order)
      fail(ErrorKind::kSyntax, "conflicting bond symbols on ring closure "
                                   + format_ring_digit(digit));
    BondOrder resolved = order ? *order
                         : ring.order ? *ring.order
                                      : default_order(ring.atom, *prev_);
    if (builder_.has_bond(ring.atom, *prev_))
      fail(ErrorKind::kSyntax, "ring closure " + format_ring_digit(digit)
                                   + " duplicates an existing bond");
    builder_.add_bond(ring.atom, *prev_, resolved);
  }

  void add_atom(const AtomSpec &spec) {
    std::uint32_t idx = builder_.add_atom(spec);
    if (prev_) {
      BondOrder order = pending_ ? pending_->order : default_order(*prev_, idx);
      builder_.add_bond(*prev_, idx, order);
    } else if (pending_) {
      fail(ErrorKind::kSyntax, "bond symbol after '.'");
    }
    pending_.reset();
    prev_ = idx;
  }

  AtomSpec read_organic_atom() {
    const char c = s_[pos_];
    const char next = pos_ + 1 < s_.size() ? s_[pos_ + 1] : '\0';
    AtomSpec spec;
    switch (c) {
    case '*':
      spec.element = Element::kWildcard;
      ++pos_;
      return spec;
    case 'C':
      spec.element = next == 'l' ? Element::kCl : Element::kC;
      pos_ += next == 'l' ? 2 : 1;
      return spec;
    case 'B':
      if (next == 'r') {
        spec.element = Element::kBr;
        pos_ += 2;
        return spec;
      }
      fail(ErrorKind::kUnknownElement, "element B is not supported");
    case 'N':
      spec.element = Element::kN;
      break;
    case 'O':
      spec.element = Element::kO;
      break;
    case 'S':
      spec.element = Element::kS;
      break;
    case 'F':
      spec.element = Element::kF;
      break;
    case 'c':
      spec.element = Element::kC;
      spec.aromatic = true;
      break;
    case 'n':
      spec.element = Element::kN;
      spec.aromatic = true;
      break;
    case 'o':
      spec.element = Element::kO;
      spec.aromatic = true;
      break;
    case 's':
      spec.element = Element::kS;
      spec.aromatic = true;
      break;
    case 'P':
    case 'I':
    case 'b':
    case 'p':
      fail(ErrorKind::kUnknownElement,
           std::string("element ") + c + " is not supported");
    default:
      fail(ErrorKind::kSyntax, std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    return spec;
  }

  AtomSpec read_bracket_atom() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    auto peek = [&]() -> char { return pos_ < s_.size() ? s_[pos_] : '\0'; };

    if (std::isdigit(static_cast<unsigned char>(peek())))
      fail(ErrorKind::kSyntax, "isotopes are not supported");

    AtomSpec spec;
    const char c = peek();
    if (c == '*') {
      spec.element = Element::kWildcard;
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string sym(1, c);
      ++pos_;
      if (std::islower(static_cast<unsigned char>(peek()))) {
        sym += peek();
        ++pos_;
      }
      auto e = element_from_symbol(sym);
      if (!e || *e == Element::kWildcard)
        fail(ErrorKind::kUnknownElement, "element " + sym + " is not supported");
      spec.element = *e;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::string sym(1, c);
      ++pos_;
      if (std::islower(static_cast<unsigned char>(peek()))) {
        sym += peek();
        fail(ErrorKind::kUnknownElement, "aromatic element " + sym + " is not supported");
      }
      sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
      auto e = element_from_symbol(sym);
      if (!e)
        fail(ErrorKind::kUnknownElement, "element " + sym + " is not supported");
      if (!can_be_aromatic(*e))
        fail(ErrorKind::kUnknownElement, "aromatic " + sym + " is not supported");
      spec.element = *e;
      spec.aromatic = true;
    } else {
      fail(ErrorKind::kSyntax, "bad bracket atom");
    }

    if (peek() == '@')
      fail(ErrorKind::kSyntax, "chirality is not supported");

    int h = 0;
    if (peek() == 'H') {
      ++pos_;
      h = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        h = peek() - '0';
        ++pos_;
      }
    }
    spec.explicit_h = h;

    if (peek() == '+' || peek() == '-') {
      const char sign = peek();
      ++pos_;
      int magnitude = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        magnitude = peek() - '0';
        ++pos_;
      } else {
        while (peek() == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      spec.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (peek() == ':') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail(ErrorKind::kSyntax, "atom map class must be numeric");
      while (std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
    }

    if (peek() != ']') {
      pos_ = start;
      fail(ErrorKind::kSyntax, "bad bracket atom");
    }
    ++pos_;
    return spec;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  MolBuilder builder_;
  std::optional<std::uint32_t> prev_;
  std::optional<PendingBond> pending_;
  std::vector<Branch> branches_;
  std::map<int, OpenRing> open_rings_;
};

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::variant<MolGraph, Error> try_parse_smiles(std::string_view text) {
  try {
    return parse_smiles(text);
  } catch (const Error &e) {
    return e;
  }
}

}  // namespace safekit
