#include "pf/symbolic.hpp"

#include <algorithm>

namespace pf {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::InsufficientWindow: return "InsufficientWindow";
    case Errc::InsufficientDepth: return "InsufficientDepth";
    case Errc::InvalidArcCode: return "InvalidArcCode";
    case Errc::BadFirstSymbol: return "BadFirstSymbol";
    case Errc::DuplicateArcCode: return "DuplicateArcCode";
    case Errc::MissingRoot: return "MissingRoot";
    case Errc::MalformedPattern: return "MalformedPattern";
    case Errc::ShapeViolation: return "ShapeViolation";
    case Errc::NotMisiurewicz: return "NotMisiurewicz";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::WindowTooDeep: return "WindowTooDeep";
    case Errc::OrderingAmbiguous: return "OrderingAmbiguous";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::UnstableEigenvalueMissing: return "UnstableEigenvalueMissing";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::Minus: return '-';
    case Symbol::PlusMinus: return '~';
    case Symbol::Plus: return '+';
  }
  return '?';
}

Symbol symbol_from_char(char c) {
  switch (c) {
    case '-': return Symbol::Minus;
    case '~': return Symbol::PlusMinus;
    case '+': return Symbol::Plus;
    default:
      fail(Errc::ParseError, std::string("invalid symbol character '") + c + "'");
  }
}

std::string format_word(WordView w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(symbol_char(s));
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.push_back(symbol_from_char(c));
  return w;
}

Ordering3 plex_compare(WordView u, WordView v, int depth) {
  const int limit = std::min<int>(depth < 0 ? 0 : depth,
                                  std::min<int>(static_cast<int>(u.size()),
                                                static_cast<int>(v.size())));
  bool odd_plus = false;
  for (int i = 0; i < limit; ++i) {
    const Symbol a = u[static_cast<std::size_t>(i)];
    const Symbol b = v[static_cast<std::size_t>(i)];
    if (a == b) {
      if (a == Symbol::Plus) odd_plus = !odd_plus;
      // A shared locus symbol ends the comparison: the Plus count beyond it
      // is undefined, so no deeper coordinate can be ordered.
      if (a == Symbol::PlusMinus) return Ordering3::equal_up_to(i + 1);
      continue;
    }
    const bool natural_less = static_cast<int>(a) < static_cast<int>(b);
    return (natural_less != odd_plus) ? Ordering3::less() : Ordering3::greater();
  }
  return Ordering3::equal_up_to(limit);
}

bool Window::has(int coord) const {
  if (coord >= 0) return coord < static_cast<int>(right.size());
  const int idx = static_cast<int>(left.size()) + coord;
  return idx >= 0 || left_tail_all_plus;
}

Symbol Window::at(int coord) const {
  if (coord >= 0) {
    if (coord >= static_cast<int>(right.size()))
      fail(Errc::InsufficientWindow,
           "window coordinate " + std::to_string(coord) + " beyond known depth");
    return right[static_cast<std::size_t>(coord)];
  }
  const int idx = static_cast<int>(left.size()) + coord;
  if (idx >= 0) return left[static_cast<std::size_t>(idx)];
  if (left_tail_all_plus) return Symbol::Plus;
  fail(Errc::InsufficientWindow,
       "window coordinate " + std::to_string(coord) + " before stored left part");
}

void Window::normalize() {
  if (!left_tail_all_plus) return;
  std::size_t drop = 0;
  while (drop < left.size() && left[drop] == Symbol::Plus) ++drop;
  if (drop > 0) left.erase(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(drop));
}

std::string format_window(const Window& w) {
  std::string out;
  if (w.left_tail_all_plus) out += "...";
  out += format_word(w.left);
  out += '.';
  out += format_word(w.right);
  return out;
}

Window parse_window(const std::string& text) {
  Window w;
  std::string_view body(text);
  if (body.starts_with("...")) {
    w.left_tail_all_plus = true;
    body.remove_prefix(3);
  }
  const auto dot = body.find('.');
  if (dot == std::string_view::npos)
    fail(Errc::ParseError, "window text lacks the '.' origin separator");
  if (body.find('.', dot + 1) != std::string_view::npos)
    fail(Errc::ParseError, "window text has more than one '.'");
  for (std::size_t i = 0; i < dot; ++i)
    w.left.push_back(symbol_from_char(body[i]));
  for (std::size_t i = dot + 1; i < body.size(); ++i)
    w.right.push_back(symbol_from_char(body[i]));
  w.normalize();
  return w;
}

Ordering3 gplex_compare_at(const Window& p, const Window& q, int n) {
  if (!p.left_tail_all_plus || !q.left_tail_all_plus)
    fail(Errc::InvalidArgument,
         "generalized order needs windows with all-Plus left tails");
  if (n < 1 || p.left_extent() > n - 1 || q.left_extent() > n - 1)
    fail(Errc::InvalidArgument,
         "n = " + std::to_string(n) + " does not expose both stored left parts");
  const int shared_depth = std::min(p.known_depth(), q.known_depth());
  const int length = (n - 1) + shared_depth;
  Word u, v;
  u.reserve(static_cast<std::size_t>(length));
  v.reserve(static_cast<std::size_t>(length));
  for (int c = -n + 1; c < shared_depth; ++c) {
    u.push_back(p.at(c));
    v.push_back(q.at(c));
  }
  Ordering3 r = plex_compare(u, v, length);
  if (r.is_equal()) return Ordering3::equal_up_to(r.depth - (n - 1));
  if (n % 2 == 0) return r.is_less() ? Ordering3::greater() : Ordering3::less();
  return r;
}

Ordering3 gplex_compare(const Window& p, const Window& q) {
  const int n = std::max(p.left_extent(), q.left_extent()) + 1;
  return gplex_compare_at(p, q, n);
}

Window shift(const Window& w, int k) {
  const int L = w.left_extent();
  const int R = w.known_depth();
  Window out;
  out.left_tail_all_plus = w.left_tail_all_plus;
  // Result coordinate c reads input coordinate c + k. Stored input coordinates
  // run -L..R-1; the all-Plus tail extends the left side when flagged.
  for (int c = 0; c + k < R; ++c) {
    const int src = c + k;
    if (src < -L && !w.left_tail_all_plus)
      fail(Errc::InsufficientWindow, "shift would read before the stored left part");
    out.right.push_back(w.at(src));
  }
  for (int c = -1; c + k >= -L; --c) {
    const int src = c + k;
    if (src >= R) continue;  // shifted past known data, nothing to store
    out.left.insert(out.left.begin(), w.at(src));
  }
  out.normalize();
  return out;
}

}  // namespace pf
