#include "scpkit/parse.hpp"

#include <cctype>
#include <map>
#include <vector>

namespace scp {

namespace {

enum class Tok {
  Ident, One, KwBot, KwPar, KwFwd, KwNu, KwCase, KwClose, KwWait, KwInl, KwInr,
  LParen, RParen, LBrace, RBrace, LBrack, RBrack,
  Colon, Semi, Comma, Dot, Pipe, Turnstile, Gt, Star, PlusSym, Amp, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance(char c) {
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  void skip_space() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(src[pos]);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(c);
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_space();
    int l = line, c = col;
    if (pos >= src.size()) return {Tok::End, "", l, c};
    char ch = src[pos];
    auto one = [&](Tok k) {
      advance(ch);
      return Token{k, std::string(1, ch), l, c};
    };
    switch (ch) {
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case '{': return one(Tok::LBrace);
      case '}': return one(Tok::RBrace);
      case '[': return one(Tok::LBrack);
      case ']': return one(Tok::RBrack);
      case ':': return one(Tok::Colon);
      case ';': return one(Tok::Semi);
      case ',': return one(Tok::Comma);
      case '.': return one(Tok::Dot);
      case '>': return one(Tok::Gt);
      case '*': return one(Tok::Star);
      case '+': return one(Tok::PlusSym);
      case '&': return one(Tok::Amp);
      case '|':
        advance(ch);
        if (pos < src.size() && src[pos] == '-') {
          advance('-');
          return {Tok::Turnstile, "|-", l, c};
        }
        return {Tok::Pipe, "|", l, c};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        num += src[pos];
        advance(src[pos]);
      }
      if (num != "1") throw ParseError("unexpected number '" + num + "'", l, c);
      return {Tok::One, num, l, c};
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string id;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        id += src[pos];
        advance(src[pos]);
      }
      static const std::map<std::string, Tok> keywords = {
          {"bot", Tok::KwBot},   {"par", Tok::KwPar},   {"fwd", Tok::KwFwd},
          {"nu", Tok::KwNu},     {"case", Tok::KwCase}, {"close", Tok::KwClose},
          {"wait", Tok::KwWait}, {"inl", Tok::KwInl},   {"inr", Tok::KwInr},
      };
      auto it = keywords.find(id);
      return {it != keywords.end() ? it->second : Tok::Ident, id, l, c};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }
};

struct Parser {
  Lexer lex;
  Token tok;
  Calculus calc = Calculus::CP;
  std::uint32_t next_uid = 1;
  std::vector<std::pair<std::string, Name>> scope;  // innermost last

  explicit Parser(std::string_view text) : lex{text} { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok.line, tok.col); }

  void eat(Tok k, const char* what) {
    if (tok.kind != k) fail(std::string("expected ") + what);
    tok = lex.next();
  }

  bool at(Tok k) const { return tok.kind == k; }

  std::string ident(const char* what) {
    if (tok.kind != Tok::Ident) fail(std::string("expected ") + what);
    std::string s = tok.text;
    tok = lex.next();
    return s;
  }

  Name use_name(const std::string& base) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == base) return it->second;
    return Name{base, 0};
  }

  Name bind_name(const std::string& base) {
    Name n{base, next_uid++};
    scope.emplace_back(base, n);
    return n;
  }

  void unbind(std::size_t count) { scope.resize(scope.size() - count); }

  // ---- types ----------------------------------------------------------
  SessionType type_primary() {
    if (at(Tok::One)) {
      eat(Tok::One, "type");
      return SessionType::one();
    }
    if (at(Tok::KwBot)) {
      eat(Tok::KwBot, "type");
      return SessionType::bot();
    }
    if (at(Tok::LParen)) {
      eat(Tok::LParen, "'('");
      SessionType t = type_expr();
      eat(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  SessionType type_expr() {
    SessionType l = type_primary();
    switch (tok.kind) {
      case Tok::Star: eat(Tok::Star, "'*'"); return SessionType::tensor(l, type_expr());
      case Tok::KwPar: eat(Tok::KwPar, "'par'"); return SessionType::par(l, type_expr());
      case Tok::PlusSym: eat(Tok::PlusSym, "'+'"); return SessionType::plus(l, type_expr());
      case Tok::Amp: eat(Tok::Amp, "'&'"); return SessionType::with(l, type_expr());
      default: return l;
    }
  }

  // ---- processes ------------------------------------------------------
  CpRef cp_proc() {
    if (at(Tok::KwFwd)) {
      eat(Tok::KwFwd, "'fwd'");
      Name x = use_name(ident("channel name"));
      Name y = use_name(ident("channel name"));
      return CpProc::fwd(x, y);
    }
    if (at(Tok::KwClose)) {
      eat(Tok::KwClose, "'close'");
      return CpProc::close(use_name(ident("channel name")));
    }
    if (at(Tok::KwWait)) {
      eat(Tok::KwWait, "'wait'");
      Name x = use_name(ident("channel name"));
      eat(Tok::Dot, "'.'");
      return CpProc::wait(x, cp_proc());
    }
    if (at(Tok::KwNu)) {
      eat(Tok::KwNu, "'nu'");
      std::string base = ident("channel name");
      eat(Tok::Colon, "':'");
      SessionType ann = type_expr();
      Name x = bind_name(base);
      eat(Tok::LParen, "'('");
      CpRef l = cp_proc();
      eat(Tok::Pipe, "'|'");
      CpRef r = cp_proc();
      eat(Tok::RParen, "')'");
      unbind(1);
      return CpProc::cut(x, ann, l, r);
    }
    if (at(Tok::KwCase)) {
      eat(Tok::KwCase, "'case'");
      Name x = use_name(ident("channel name"));
      eat(Tok::LBrace, "'{'");
      CpRef l = cp_proc();
      eat(Tok::Semi, "';'");
      CpRef r = cp_proc();
      eat(Tok::RBrace, "'}'");
      return CpProc::case_(x, l, r);
    }
    if (at(Tok::Ident)) {
      Name x = use_name(ident("channel name"));
      if (at(Tok::LBrack)) {
        eat(Tok::LBrack, "'['");
        if (at(Tok::KwInl) || at(Tok::KwInr)) {
          bool left = at(Tok::KwInl);
          tok = lex.next();
          if (at(Tok::Gt)) fail("continuation binder is SCP syntax; this is a CP term");
          eat(Tok::RBrack, "']'");
          eat(Tok::Dot, "'.'");
          CpRef b = cp_proc();
          return left ? CpProc::inl(x, b) : CpProc::inr(x, b);
        }
        std::string ybase = ident("sent channel name");
        if (at(Tok::Gt)) fail("continuation binder is SCP syntax; this is a CP term");
        eat(Tok::RBrack, "']'");
        eat(Tok::LParen, "'('");
        Name y = bind_name(ybase);
        CpRef payload = cp_proc();
        unbind(1);
        eat(Tok::Pipe, "'|'");
        CpRef cont = cp_proc();
        eat(Tok::RParen, "')'");
        return CpProc::out(x, y, payload, cont);
      }
      if (at(Tok::LParen)) {
        eat(Tok::LParen, "'('");
        std::string ybase = ident("received channel name");
        if (at(Tok::Comma)) fail("two-name input is SCP syntax; this is a CP term");
        eat(Tok::RParen, "')'");
        eat(Tok::Dot, "'.'");
        Name y = bind_name(ybase);
        CpRef body = cp_proc();
        unbind(1);
        return CpProc::inp(x, y, body);
      }
      fail("expected a process construct after channel name");
    }
    fail("expected a process");
  }

  ScpRef scp_proc() {
    if (at(Tok::KwFwd)) {
      eat(Tok::KwFwd, "'fwd'");
      Name x = use_name(ident("channel name"));
      Name y = use_name(ident("channel name"));
      return ScpProc::fwd(x, y);
    }
    if (at(Tok::KwClose)) {
      eat(Tok::KwClose, "'close'");
      return ScpProc::close(use_name(ident("channel name")));
    }
    if (at(Tok::KwWait)) {
      eat(Tok::KwWait, "'wait'");
      Name x = use_name(ident("channel name"));
      eat(Tok::Dot, "'.'");
      return ScpProc::wait(x, scp_proc());
    }
    if (at(Tok::KwNu)) {
      eat(Tok::KwNu, "'nu'");
      std::string base = ident("channel name");
      eat(Tok::Colon, "':'");
      SessionType ann = type_expr();
      Name x = bind_name(base);
      eat(Tok::LParen, "'('");
      ScpRef l = scp_proc();
      eat(Tok::Pipe, "'|'");
      ScpRef r = scp_proc();
      eat(Tok::RParen, "')'");
      unbind(1);
      return ScpProc::cut(x, ann, l, r);
    }
    if (at(Tok::KwCase)) {
      eat(Tok::KwCase, "'case'");
      Name x = use_name(ident("channel name"));
      eat(Tok::LBrace, "'{'");
      Name w = bind_name(ident("continuation binder"));
      eat(Tok::Dot, "'.'");
      ScpRef l = scp_proc();
      unbind(1);
      eat(Tok::Semi, "';'");
      Name w2 = bind_name(ident("continuation binder"));
      eat(Tok::Dot, "'.'");
      ScpRef r = scp_proc();
      unbind(1);
      eat(Tok::RBrace, "'}'");
      return ScpProc::case_(x, w, l, w2, r);
    }
    if (at(Tok::Ident)) {
      Name x = use_name(ident("channel name"));
      if (at(Tok::LBrack)) {
        eat(Tok::LBrack, "'['");
        if (at(Tok::KwInl) || at(Tok::KwInr)) {
          bool left = at(Tok::KwInl);
          tok = lex.next();
          eat(Tok::Gt, "'>' (SCP choice carries a continuation binder)");
          Name w = bind_name(ident("continuation binder"));
          eat(Tok::RBrack, "']'");
          eat(Tok::Dot, "'.'");
          ScpRef b = scp_proc();
          unbind(1);
          return left ? ScpProc::inl(x, w, b) : ScpProc::inr(x, w, b);
        }
        std::string ybase = ident("sent channel name");
        eat(Tok::Gt, "'>' (SCP output carries a continuation binder)");
        std::string wbase = ident("continuation binder");
        eat(Tok::RBrack, "']'");
        eat(Tok::LParen, "'('");
        Name y = bind_name(ybase);
        ScpRef payload = scp_proc();
        unbind(1);
        eat(Tok::Pipe, "'|'");
        Name w = bind_name(wbase);
        ScpRef cont = scp_proc();
        unbind(1);
        eat(Tok::RParen, "')'");
        return ScpProc::out(x, y, payload, w, cont);
      }
      if (at(Tok::LParen)) {
        eat(Tok::LParen, "'('");
        std::string wbase = ident("continuation binder");
        eat(Tok::Comma, "',' (SCP input binds continuation and payload)");
        std::string ybase = ident("received channel name");
        eat(Tok::RParen, "')'");
        eat(Tok::Dot, "'.'");
        Name w = bind_name(wbase);
        Name y = bind_name(ybase);
        ScpRef body = scp_proc();
        unbind(2);
        return ScpProc::inp(x, w, y, body);
      }
      fail("expected a process construct after channel name");
    }
    fail("expected a process");
  }

  TypingContext context_until_turnstile() {
    std::vector<TypingContext::Entry> entries;
    if (!at(Tok::Turnstile)) {
      for (;;) {
        Name n = Name{ident("context name"), 0};
        eat(Tok::Colon, "':'");
        SessionType t = type_expr();
        for (const auto& e : entries)
          if (e.first == n) fail("duplicate context name '" + n.base + "'");
        entries.emplace_back(n, t);
        if (at(Tok::Comma)) {
          eat(Tok::Comma, "','");
          continue;
        }
        break;
      }
    }
    eat(Tok::Turnstile, "'|-'");
    return TypingContext(std::move(entries));
  }

  void expect_end() {
    if (!at(Tok::End)) fail("trailing input after the term");
  }
};

}  // namespace

SessionType parse_type(std::string_view text) {
  Parser p(text);
  SessionType t = p.type_expr();
  p.expect_end();
  return t;
}

CpRef parse_cp(std::string_view text) {
  Parser p(text);
  CpRef r = p.cp_proc();
  p.expect_end();
  return r;
}

ScpRef parse_scp(std::string_view text) {
  Parser p(text);
  p.calc = Calculus::SCP;
  ScpRef r = p.scp_proc();
  p.expect_end();
  return r;
}

std::pair<TypingContext, CpRef> parse_cp_judgment(std::string_view text) {
  Parser p(text);
  TypingContext ctx = p.context_until_turnstile();
  CpRef r = p.cp_proc();
  p.expect_end();
  return {std::move(ctx), std::move(r)};
}

std::pair<TypingContext, ScpRef> parse_scp_judgment(std::string_view text) {
  Parser p(text);
  p.calc = Calculus::SCP;
  TypingContext ctx = p.context_until_turnstile();
  ScpRef r = p.scp_proc();
  p.expect_end();
  return {std::move(ctx), std::move(r)};
}

bool looks_like_judgment(std::string_view text) {
  bool in_comment = false;
  for (std::size_t i = 0; i + 1 < text.size(); i++) {
    if (text[i] == '#') in_comment = true;
    if (text[i] == '\n') in_comment = false;
    if (!in_comment && text[i] == '|' && text[i + 1] == '-') return true;
  }
  return false;
}

}  // namespace scp
