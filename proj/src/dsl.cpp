#include "tubehyp/dsl.hpp"

#include "tubehyp/error.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace tubehyp {

ParseError::ParseError(std::string origin, int line, int column, std::string message, std::string snippet)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      origin_(std::move(origin)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      snippet_(std::move(snippet))
{
}

namespace {

enum class Tok { word, key, number, string, lparen, comma, rparen, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int column = 1;  // 1-based
  Rational value;
};

class LineParser {
 public:
  LineParser(const DomainSpecSource& src, std::string_view line, int line_no)
      : src_(src), line_(line), line_no_(line_no)
  {
    tokenize();
  }

  [[noreturn]] void fail(int column, const std::string& message) const
  {
    throw ParseError(src_.origin, line_no_, column, message, std::string(line_));
  }

  bool empty() const { return tokens_.size() == 1; }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Tok kind, const char* what)
  {
    const Token& t = peek();
    if (t.kind != kind) fail(t.column, std::string("expected ") + what);
    return next();
  }

  Rational number() { return expect(Tok::number, "number").value; }

  Point2 point()
  {
    expect(Tok::lparen, "'('");
    Rational x = number();
    expect(Tok::comma, "','");
    Rational y = number();
    expect(Tok::rparen, "')'");
    return {std::move(x), std::move(y)};
  }

  std::vector<Point2> points(std::size_t minimum, const char* what)
  {
    std::vector<Point2> out;
    while (peek().kind == Tok::lparen) out.push_back(point());
    if (out.size() < minimum) {
      if (peek().kind != Tok::end) fail(peek().column, "expected '('");
      fail(peek().column, std::string(what) + " requires at least " + std::to_string(minimum) + " points");
    }
    return out;
  }

  Rational keyed(const char* key)
  {
    const Token& t = peek();
    if (t.kind != Tok::key || t.text != key) fail(t.column, std::string("expected '") + key + "'");
    next();
    return number();
  }

  void finish()
  {
    if (peek().kind != Tok::end) fail(peek().column, "unexpected token '" + peek().text + "'");
  }

 private:
  void tokenize()
  {
    std::size_t i = 0;
    const std::size_t n = line_.size();
    while (i < n) {
      const char ch = line_[i];
      const int column = static_cast<int>(i) + 1;
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        continue;
      }
      if (ch == '#') break;
      if (ch == '(' || ch == ',' || ch == ')') {
        tokens_.push_back({ch == '(' ? Tok::lparen : ch == ',' ? Tok::comma : Tok::rparen, std::string(1, ch), column, {}});
        ++i;
        continue;
      }
      if (ch == '"') {
        const std::size_t close = line_.find('"', i + 1);
        if (close == std::string_view::npos) fail(column, "unterminated string");
        tokens_.push_back({Tok::string, std::string(line_.substr(i + 1, close - i - 1)), column, {}});
        i = close + 1;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t j = i;
        while (j < n && (std::isalnum(static_cast<unsigned char>(line_[j])) || line_[j] == '_' || line_[j] == '-')) ++j;
        if (j < n && line_[j] == '=') {
          tokens_.push_back({Tok::key, std::string(line_.substr(i, j + 1 - i)), column, {}});
          i = j + 1;
        } else {
          tokens_.push_back({Tok::word, std::string(line_.substr(i, j - i)), column, {}});
          i = j;
        }
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '.') {
        std::size_t j = i;
        while (j < n && (std::isdigit(static_cast<unsigned char>(line_[j])) || line_[j] == '.' || line_[j] == '/' ||
                         ((line_[j] == '-' || line_[j] == '+') && j == i)))
          ++j;
        Token t{Tok::number, std::string(line_.substr(i, j - i)), column, {}};
        try {
          t.value = parse_rational(t.text);
        } catch (const std::invalid_argument&) {
          fail(column, "malformed number '" + t.text + "'");
        }
        tokens_.push_back(std::move(t));
        i = j;
        continue;
      }
      fail(column, std::string("unexpected character '") + ch + "'");
    }
    tokens_.push_back({Tok::end, "end of line", static_cast<int>(line_.size()) + 1, {}});
  }

  const DomainSpecSource& src_;
  std::string_view line_;
  int line_no_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Domain parse_domain(const DomainSpecSource& source)
{
  std::optional<ConvexBase> base;
  std::vector<Obstacle> obstacles;
  std::string name;
  bool seen_declaration = false;

  std::string_view text = source.text;
  int line_no = 0;
  int last_line = 1;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);

    LineParser p(source, line, line_no);
    if (p.empty()) {
      if (text.empty()) break;
      continue;
    }
    last_line = line_no;
    const Token head = p.next();
    if (head.kind != Tok::word) p.fail(head.column, "expected a declaration keyword");
    const std::string& kw = head.text;

    if (kw == "domain") {
      if (seen_declaration) p.fail(head.column, "domain header must come first");
      name = p.expect(Tok::string, "quoted domain name").text;
    } else if (kw == "strip" || kw == "halfplane" || kw == "polybase") {
      if (base) p.fail(head.column, "duplicate base declaration");
      ConvexBase b;
      if (kw == "strip") {
        Rational lo = p.number();
        Rational hi = p.number();
        b = Strip{std::move(lo), std::move(hi)};
      } else if (kw == "halfplane") {
        b = HalfPlane{p.number()};
      } else {
        b = ConvexPolygon{p.points(3, "polybase")};
      }
      p.finish();
      if (auto err = validate_base(b)) p.fail(head.column, *err);
      base = std::move(b);
    } else if (kw == "slit" || kw == "polygon" || kw == "bump") {
      if (!base) p.fail(head.column, "missing base declaration");
      Obstacle o;
      if (kw == "slit") {
        Rational x1 = p.number();
        Rational lo = p.number();
        Rational hi = p.number();
        o = VerticalSlit{std::move(x1), std::move(lo), std::move(hi)};
      } else if (kw == "polygon") {
        o = Polygon{p.points(3, "polygon")};
      } else {
        const Token& side = p.expect(Tok::word, "'top' or 'bottom'");
        if (side.text != "top" && side.text != "bottom") p.fail(side.column, "expected 'top' or 'bottom'");
        Bump bump;
        bump.side = side.text == "top" ? BumpSide::top : BumpSide::bottom;
        bump.x0 = p.keyed("x0=");
        bump.w = p.keyed("w=");
        bump.h = p.keyed("h=");
        o = std::move(bump);
      }
      p.finish();
      if (auto err = validate_obstacle(*base, o)) p.fail(head.column, *err);
      obstacles.push_back(std::move(o));
    } else {
      p.fail(head.column, "unknown declaration '" + kw + "'");
    }
    p.finish();
    seen_declaration = true;
    if (text.empty()) break;
  }

  if (!base) {
    std::string snippet;
    throw ParseError(source.origin, seen_declaration ? last_line : 1, 1, "missing base declaration", snippet);
  }
  try {
    return Domain(std::move(*base), std::move(obstacles), std::move(name));
  } catch (const Error& e) {
    throw ParseError(source.origin, last_line, 1, e.what(), "");
  }
}

namespace {

std::string point_text(const Point2& p) { return "(" + to_string(p.x1) + ", " + to_string(p.x2) + ")"; }

}  // namespace

std::string serialize_domain(const Domain& domain)
{
  std::ostringstream out;
  if (!domain.name().empty()) out << "domain \"" << domain.name() << "\"\n";

  if (const auto* strip = std::get_if<Strip>(&domain.base())) {
    out << "strip " << to_string(strip->lo) << ' ' << to_string(strip->hi) << '\n';
  } else if (const auto* half = std::get_if<HalfPlane>(&domain.base())) {
    out << "halfplane " << to_string(half->lo) << '\n';
  } else {
    out << "polybase";
    for (const auto& v : std::get<ConvexPolygon>(domain.base()).vertices) out << ' ' << point_text(v);
    out << '\n';
  }

  for (const auto& o : domain.obstacles()) {
    if (const auto* slit = std::get_if<VerticalSlit>(&o)) {
      out << "slit " << to_string(slit->x1) << ' ' << to_string(slit->lo) << ' ' << to_string(slit->hi) << '\n';
    } else if (const auto* poly = std::get_if<Polygon>(&o)) {
      out << "polygon";
      for (const auto& v : poly->vertices) out << ' ' << point_text(v);
      out << '\n';
    } else {
      const auto& b = std::get<Bump>(o);
      out << "bump " << (b.side == BumpSide::top ? "top" : "bottom") << " x0=" << to_string(b.x0)
          << " w=" << to_string(b.w) << " h=" << to_string(b.h) << '\n';
    }
  }
  return out.str();
}

Domain builtin(std::string_view name, const SmoothVariantParams& params)
{
  if (name == "fig1")
    return Domain(Strip{0, 2}, {VerticalSlit{-1, 1, 2}, VerticalSlit{1, 0, 1}}, "fig1");
  if (name == "fig2-smooth") {
    if (params.touch && (params.top_h > 1 || params.bottom_h > 1))
      throw Error(Errc::bad_params, "bump height above 1 crosses the line {x2 = 1}");
    try {
      return Domain(Strip{0, 2},
                    {Bump{BumpSide::top, params.top_x0, params.top_w, params.top_h},
                     Bump{BumpSide::bottom, params.bottom_x0, params.bottom_w, params.bottom_h}},
                    "fig2-smooth");
    } catch (const Error& e) {
      throw Error(Errc::bad_params, e.what());
    }
  }
  if (name == "strip") return Domain(Strip{0, 2}, {}, "strip");
  if (name == "square") return Domain(ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {}, "square");
  throw Error(Errc::unknown_builtin, "unknown builtin domain '" + std::string(name) + "'");
}

}  // namespace tubehyp
