#include "tazone/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tazone {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  Dot,
  Comma,
  Colon,
  Caret,
  Slash,
  Minus,
  Less,
  LessEq,
  Equal,
  Greater,
  GreaterEq,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Position pos;
  Rational number;
};

constexpr std::array kKeywords = {"specification", "Clocks",      "States", "Labels", "Automata", "Locations",
                                  "Invariants",    "Transitions", "nil",    "true",   "end",      "go"};

bool is_keyword(std::string_view s) { return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end(); }

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

struct SyntaxError {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(Position pos, std::string msg) { throw SyntaxError{Diagnostic{pos, std::move(msg)}}; }

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.pos = pos_;
      if (at_end()) {
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (!at_end() && (ident_char(peek()) || (peek() == '-' && ident_char(peek(1))))) t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        t.number = number(t);
      } else {
        t.text = std::string(1, advance());
        switch (c) {
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '.': t.kind = Tok::Dot; break;
          case ',': t.kind = Tok::Comma; break;
          case ':': t.kind = Tok::Colon; break;
          case '^': t.kind = Tok::Caret; break;
          case '/': t.kind = Tok::Slash; break;
          case '-': t.kind = Tok::Minus; break;
          case '=': t.kind = Tok::Equal; break;
          case '<':
          case '>': {
            const bool eq = !at_end() && peek() == '=';
            if (eq) t.text += advance();
            t.kind = c == '<' ? (eq ? Tok::LessEq : Tok::Less) : (eq ? Tok::GreaterEq : Tok::Greater);
            break;
          }
          default: fail(t.pos, "unexpected character '" + t.text + "'");
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return offset_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }
  char advance() {
    const char c = text_[offset_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Rational number(Token& t) {
    std::int64_t mantissa = 0;
    std::int64_t denominator = 1;
    auto digit = [&](bool fractional) {
      const char c = advance();
      t.text += c;
      if (__builtin_mul_overflow(mantissa, 10, &mantissa) || __builtin_add_overflow(mantissa, c - '0', &mantissa) ||
          (fractional && __builtin_mul_overflow(denominator, 10, &denominator)))
        fail(t.pos, "numeric literal too large");
    };
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digit(false);
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      t.text += advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digit(true);
    }
    return Rational(mantissa, denominator);
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SyntaxNetwork spec() {
    SyntaxNetwork net;
    keyword("specification");
    net.name = ident("specification name");
    keyword("Clocks");
    net.clocks = idlist();
    for (const auto& c : net.clocks) clocks_.push_back(c.text);
    keyword("States");
    net.locations = idlist();
    keyword("Labels");
    net.labels = idlist();
    keyword("Automata");
    while (peek().kind == Tok::LParen) {
      next();
      net.automata.push_back(automaton());
      expect(Tok::RParen, "')' closing the automaton");
      expect(Tok::Dot, "'.' after the automaton");
    }
    keyword("nil");
    keyword("end");
    expect(Tok::End, "end of input after 'end'");
    return net;
  }

  // locvec "/" constraint, used for both halves of a query.
  std::pair<std::vector<Name>, SyntaxConstraint> located() {
    std::vector<Name> locs;
    while (!is_keyword_token("nil")) {
      locs.push_back(ident("location"));
      expect(Tok::Dot, "'.' after location");
    }
    if (locs.empty()) fail(peek().pos, "location vector needs at least one location");
    keyword("nil");
    expect(Tok::Slash, "'/' between location vector and constraint");
    return {std::move(locs), constraint()};
  }

  void keyword(std::string_view kw) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != kw) fail(t.pos, "expected '" + std::string(kw) + "' but found " + describe(t));
    next();
  }

  void expect(Tok kind, std::string_view what) {
    const Token& t = peek();
    if (t.kind != kind) fail(t.pos, "expected " + std::string(what) + " but found " + describe(t));
    next();
  }

  void set_clocks(std::vector<std::string> clocks) { clocks_ = std::move(clocks); }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(index_ + ahead, tokens_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (index_ < tokens_.size() - 1) ++index_;
    return t;
  }
  bool is_keyword_token(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  Name ident(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      fail(t.pos, "expected " + std::string(what) + " but found " + describe(t));
    next();
    return Name{t.text, t.pos};
  }

  std::vector<Name> idlist() {
    std::vector<Name> out;
    while (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
      const Token& t = next();
      out.push_back(Name{t.text, t.pos});
    }
    const Token& t = peek();
    if (!(t.kind == Tok::Ident && t.text == "nil")) fail(t.pos, "expected 'nil' terminating the list but found " + describe(t));
    next();
    return out;
  }

  SyntaxAutomaton automaton() {
    SyntaxAutomaton a;
    a.pos = peek().pos;
    keyword("Locations");
    a.locations = idlist();
    keyword("Labels");
    a.labels = idlist();
    keyword("Invariants");
    while (!is_keyword_token("nil")) {
      SyntaxInvariant inv;
      inv.location = ident("location");
      expect(Tok::Colon, "':' after invariant location");
      inv.constraint = constraint();
      a.invariants.push_back(std::move(inv));
    }
    keyword("nil");
    keyword("Transitions");
    while (!is_keyword_token("nil")) a.transitions.push_back(transition());
    keyword("nil");
    return a;
  }

  SyntaxTransition transition() {
    SyntaxTransition t;
    t.source = ident("transition source");
    expect(Tok::Comma, "',' after transition source");
    t.label = ident("transition label");
    expect(Tok::Colon, "':' after transition label");
    t.guard = constraint();
    expect(Tok::Comma, "',' after guard");
    t.resets = idlist();
    expect(Tok::Comma, "',' after reset list");
    t.target = ident("transition target");
    expect(Tok::Dot, "'.' ending the transition");
    return t;
  }

  SyntaxConstraint constraint() {
    SyntaxConstraint c;
    while (!is_keyword_token("true")) {
      atom(c);
      expect(Tok::Caret, "'^' after atom (constraints end with 'true')");
    }
    next();
    return c;
  }

  bool is_clock(std::string_view s) const { return std::find(clocks_.begin(), clocks_.end(), s) != clocks_.end(); }

  void atom(SyntaxConstraint& c) {
    SyntaxAtom a;
    a.lhs = ident("clock");
    if (peek().kind == Tok::Minus) {
      next();
      a.rhs = ident("clock");
    } else if (!is_clock(a.lhs.text)) {
      // `X-Y` lexes as one identifier; split it if that is unambiguous.
      std::optional<std::pair<std::string, std::string>> split;
      int matches = 0;
      for (std::size_t i = a.lhs.text.find('-'); i != std::string::npos; i = a.lhs.text.find('-', i + 1)) {
        std::string l = a.lhs.text.substr(0, i), r = a.lhs.text.substr(i + 1);
        if (is_clock(l) && is_clock(r)) {
          split.emplace(std::move(l), std::move(r));
          ++matches;
        }
      }
      if (matches == 1) {
        Position rpos = a.lhs.pos;
        rpos.column += split->first.size() + 1;
        a.rhs = Name{split->second, rpos};
        a.lhs.text = split->first;
      }
    }
    const Token& op = peek();
    switch (op.kind) {
      case Tok::Less: a.op = RelOp::Less; break;
      case Tok::LessEq: a.op = RelOp::LessEq; break;
      case Tok::Equal: a.op = RelOp::Equal; break;
      case Tok::Greater: a.op = RelOp::Greater; break;
      case Tok::GreaterEq: a.op = RelOp::GreaterEq; break;
      default: fail(op.pos, "unknown operator " + describe(op) + " (expected <, <=, =, >=, >)");
    }
    next();
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      negative = true;
      next();
    }
    const Token& num = peek();
    if (num.kind != Tok::Number) fail(num.pos, "expected a number but found " + describe(num));
    next();
    a.constant = negative ? -num.number : num.number;
    if (a.op == RelOp::Equal) {
      SyntaxAtom upper = a, lower = a;
      upper.op = RelOp::LessEq;
      lower.op = RelOp::GreaterEq;
      c.atoms.push_back(std::move(upper));
      c.atoms.push_back(std::move(lower));
    } else {
      c.atoms.push_back(std::move(a));
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::vector<std::string> clocks_;
};

template <class T, class F>
Checked<T> guarded(F&& f) {
  Checked<T> out;
  try {
    out.value = f();
  } catch (const SyntaxError& e) {
    out.diagnostics.push_back(e.diagnostic);
  }
  return out;
}

std::string decimal(const Rational& r) {
  std::string sign = r < 0 ? "-" : "";
  Rational a = r < 0 ? -r : r;
  if (a.denominator() == 1) return sign + std::to_string(a.numerator());
  std::int64_t den = a.denominator();
  int digits = 0;
  std::int64_t scale = 1;
  while (den % 2 == 0 || den % 5 == 0) {
    den /= (den % 2 == 0) ? 2 : 5;
    ++digits;
  }
  if (den != 1) throw std::domain_error("constant has no terminating decimal form");
  // digits is an upper bound on the needed fractional digits
  for (int i = 0; i < digits; ++i) scale *= 10;
  const std::int64_t scaled = a.numerator() * (scale / a.denominator());
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return sign + std::to_string(scaled / scale) + "." + frac;
}

}  // namespace

Checked<SyntaxNetwork> parse_spec_syntax(std::string_view text) {
  return guarded<SyntaxNetwork>([&] { return Parser(Lexer(text).run()).spec(); });
}

Checked<Network> parse_spec(std::string_view text) {
  auto syntax = parse_spec_syntax(text);
  if (!syntax) return Checked<Network>{std::nullopt, std::move(syntax.diagnostics)};
  auto net = validate(*syntax);
  if (net) net.value = normalize_constants(std::move(*net.value));
  return net;
}

Checked<Query> parse_query(std::string_view text, const Network& net) {
  using Half = std::pair<std::vector<Name>, SyntaxConstraint>;
  auto halves = guarded<std::pair<Half, Half>>([&] {
    Parser p(Lexer(text).run());
    p.set_clocks(net.clocks);
    p.keyword("go");
    p.expect(Tok::LParen, "'(' after 'go'");
    Half source = p.located();
    p.expect(Tok::Comma, "',' between source and target");
    Half target = p.located();
    p.expect(Tok::RParen, "')' closing the query");
    p.expect(Tok::End, "end of query");
    return std::pair{std::move(source), std::move(target)};
  });
  Checked<Query> out;
  if (!halves) {
    out.diagnostics = std::move(halves.diagnostics);
    return out;
  }

  auto resolve = [&](const Half& half, LocatedConstraint& into) {
    const auto& names = half.first;
    if (names.size() != net.automata.size()) {
      out.diagnostics.push_back({names.front().pos, "location vector has " + std::to_string(names.size()) +
                                                        " entries but the network has " +
                                                        std::to_string(net.automata.size()) + " automata"});
    } else {
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto id = net.find_location(names[i].text);
        if (!id) out.diagnostics.push_back({names[i].pos, "undeclared location '" + names[i].text + "'"});
        else if (!net.automata[i].owns(*id))
          out.diagnostics.push_back({names[i].pos, "location '" + names[i].text + "' does not belong to automaton " +
                                                       std::to_string(i + 1)});
        else into.locations.push_back(*id);
      }
    }
    auto c = resolve_constraint(net, half.second);
    if (!c) {
      out.diagnostics.insert(out.diagnostics.end(), c.diagnostics.begin(), c.diagnostics.end());
      return;
    }
    into.constraint = rescale(*c, net.scale);
    if (!is_integral(into.constraint)) {
      const Position pos = half.second.atoms.empty() ? names.front().pos : half.second.atoms.front().lhs.pos;
      out.diagnostics.push_back({pos, "query constant is finer than the network's constant scale"});
    }
  };
  Query q;
  resolve(halves->first, q.source);
  resolve(halves->second, q.target);
  if (out.diagnostics.empty()) out.value = std::move(q);
  return out;
}

std::string pretty_print(const ClockConstraint& c, const Network& net) {
  std::string out;
  for (const auto& a : c.atoms) {
    out += net.name_of(a.lhs);
    if (a.rhs) out += " - " + net.name_of(*a.rhs);
    out += to_string(a.op);
    out += decimal(a.constant / net.scale);
    out += " ^ ";
  }
  return out + "true";
}

std::string pretty_print(const LocationVector& locs, const Network& net) {
  std::string out;
  for (auto l : locs) out += net.name_of(l) + ".";
  return out + "nil";
}

std::string pretty_print(const Query& q, const Network& net) {
  return "go(" + pretty_print(q.source.locations, net) + "/" + pretty_print(q.source.constraint, net) + ", " +
         pretty_print(q.target.locations, net) + "/" + pretty_print(q.target.constraint, net) + ")";
}

std::string pretty_print(const Network& net) {
  std::ostringstream os;
  auto list = [&](const auto& names, const char* indent) {
    if (!names.empty()) {
      os << indent;
      for (std::size_t i = 0; i < names.size(); ++i) os << (i ? " " : "") << names[i];
      os << '\n';
    }
    os << indent << "nil\n";
  };
  auto names_of = [&](const auto& ids) {
    std::vector<std::string> out;
    for (auto id : ids) out.push_back(net.name_of(id));
    return out;
  };

  os << "specification " << net.name << "\n";
  os << "Clocks\n";
  list(net.clocks, "  ");
  os << "States\n";
  list(net.locations, "  ");
  os << "Labels\n";
  list(net.labels, "  ");
  os << "Automata\n";
  for (const auto& a : net.automata) {
    os << "  (\n    Locations\n";
    list(names_of(a.locations), "      ");
    os << "    Labels\n";
    list(names_of(a.alphabet), "      ");
    os << "    Invariants\n";
    for (std::size_t i = 0; i < a.locations.size(); ++i)
      os << "      " << net.name_of(a.locations[i]) << " : " << pretty_print(a.invariants[i], net) << '\n';
    os << "      nil\n    Transitions\n";
    for (const auto& t : a.transitions) {
      os << "      " << net.name_of(t.source) << " , " << net.name_of(t.label) << " : "
         << pretty_print(t.guard, net) << ", ";
      for (auto r : t.resets) os << net.name_of(r) << ' ';
      os << "nil, " << net.name_of(t.target) << " .\n";
    }
    os << "      nil\n  ) .\n";
  }
  os << "  nil\nend\n";
  return os.str();
}

}  // namespace tazone
