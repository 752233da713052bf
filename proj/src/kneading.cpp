#include "pf/kneading.hpp"

#include <algorithm>
#include <map>

namespace pf {

namespace {

bool code_symbols_ok(const Word& w) {
  return std::all_of(w.begin(), w.end(),
                     [](Symbol s) { return s != Symbol::PlusMinus; });
}

}  // namespace

void validate(const KneadingSequence& ks) {
  if (!code_symbols_ok(ks.arc_code))
    fail(Errc::InvalidArcCode, "arc-code may not contain the locus symbol");
  if (!ks.arc_code.empty() && ks.arc_code.front() != Symbol::Minus)
    fail(Errc::BadFirstSymbol, "nonempty arc-code must start with '-'");
  if (!ks.tail.empty() && ks.tail.front() != Symbol::Plus)
    fail(Errc::BadFirstSymbol, "kneading tail must start with '+'");
}

const KneadingEntry* KneadingSet::find(int index) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), index,
      [](const KneadingEntry& e, int i) { return e.index < i; });
  if (it == entries.end() || it->index != index) return nullptr;
  return &*it;
}

void KneadingSet::sort_entries() {
  std::sort(entries.begin(), entries.end(),
            [](const KneadingEntry& x, const KneadingEntry& y) {
              return x.index < y.index;
            });
}

void validate(const KneadingSet& ks) {
  for (std::size_t i = 0; i < ks.entries.size(); ++i) {
    const KneadingEntry& e = ks.entries[i];
    validate(e.seq);
    if (i > 0 && ks.entries[i - 1].index >= e.index)
      fail(Errc::InvalidArgument, "kneading entries must be sorted by unique index");
    const std::size_t len = e.seq.arc_code.size();
    if (e.index == 0 && len != 0)
      fail(Errc::InvalidArcCode, "index 0 must carry the empty arc-code");
    if (e.index > 0 && (len == 0 || len % 2 != 0))
      fail(Errc::InvalidArcCode, "positive indices need even arc-code length");
    if (e.index < 0 && len % 2 != 1)
      fail(Errc::InvalidArcCode, "negative indices need odd arc-code length");
  }
  for (std::size_t i = 0; i < ks.entries.size(); ++i)
    for (std::size_t j = i + 1; j < ks.entries.size(); ++j)
      if (ks.entries[i].seq.arc_code == ks.entries[j].seq.arc_code)
        fail(Errc::DuplicateArcCode, "two entries share an arc-code");
}

ArcOrder basic_arc_order(WordView u, WordView v) {
  if (u.size() % 2 != v.size() % 2) return ArcOrder::IncomparableParity;
  if (u.size() != v.size())
    return u.size() > v.size() ? ArcOrder::FartherFromX : ArcOrder::CloserToX;
  Ordering3 r = plex_compare(u, v, static_cast<int>(u.size()));
  if (r.is_less()) return ArcOrder::FartherFromX;
  if (r.is_greater()) return ArcOrder::CloserToX;
  return ArcOrder::SameArc;
}

KneadingSet recover_indices(std::vector<KneadingSequence> sequences) {
  KneadingSet out;
  std::vector<const KneadingSequence*> evens, odds;
  const KneadingSequence* central = nullptr;
  for (const KneadingSequence& ks : sequences) {
    validate(ks);
    if (ks.arc_code.empty()) {
      if (central) fail(Errc::DuplicateArcCode, "two entries with empty arc-code");
      central = &ks;
    } else if (ks.arc_code.size() % 2 == 0) {
      evens.push_back(&ks);
    } else {
      odds.push_back(&ks);
    }
  }
  auto closer_first = [](const KneadingSequence* x, const KneadingSequence* y) {
    ArcOrder o = basic_arc_order(x->arc_code, y->arc_code);
    if (o == ArcOrder::SameArc)
      fail(Errc::DuplicateArcCode, "two entries share an arc-code");
    return o == ArcOrder::CloserToX;
  };
  std::sort(evens.begin(), evens.end(), closer_first);
  std::sort(odds.begin(), odds.end(), closer_first);
  if (central) out.entries.push_back({0, *central});
  for (std::size_t r = 0; r < evens.size(); ++r)
    out.entries.push_back({static_cast<int>(r) + 1, *evens[r]});
  for (std::size_t r = 0; r < odds.size(); ++r)
    out.entries.push_back({-static_cast<int>(r) - 1, *odds[r]});
  out.sort_entries();
  return out;
}

namespace {

// Admissibility of one concrete word (no locus symbols, p[0] == Minus).
Verdict check_concrete(WordView p, const KneadingSet& K, int depth) {
  const int D = std::min<int>(depth, static_cast<int>(p.size()));
  int cert = D;
  for (const KneadingEntry& e : K.entries) {
    const Word& w = e.seq.arc_code;
    if (w.empty()) continue;  // the central sequence carries no prefix constraint
    const int m = static_cast<int>(w.size()) - 1;
    if (m + 1 > D) continue;
    if (!std::equal(w.begin(), w.end(), p.begin())) continue;
    const std::size_t from = std::min(p.size(), static_cast<std::size_t>(m + 2));
    WordView s = p.subspan(from);
    Ordering3 r = plex_compare(s, e.seq.tail, depth);
    if (r.is_greater()) return Verdict::rejected(e.index, m + 1);
    const int compared =
        std::min<int>({static_cast<int>(s.size()), e.seq.depth(), depth});
    cert = std::min(cert, m + 2 + compared);
  }
  return Verdict::admissible_up_to(cert);
}

}  // namespace

Verdict is_wu_admissible(WordView p, const KneadingSet& K, int depth) {
  if (p.empty()) fail(Errc::InvalidArgument, "empty word");
  if (p.front() == Symbol::Plus)
    fail(Errc::BadFirstSymbol, "word must start with '-' (or a resolvable locus symbol)");
  // Resolve locus symbols both ways; the word is admissible when some
  // resolution is. Resolutions are scanned with Minus tried before Plus.
  std::size_t first_pm = p.size();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] == Symbol::PlusMinus) { first_pm = i; break; }
  if (first_pm == p.size()) return check_concrete(p, K, depth);

  Word resolved(p.begin(), p.end());
  std::optional<Verdict> first_reject;
  for (Symbol choice : {Symbol::Minus, Symbol::Plus}) {
    resolved[first_pm] = choice;
    if (first_pm == 0 && choice == Symbol::Plus) continue;
    Verdict v = is_wu_admissible(resolved, K, depth);
    if (v.kind == Verdict::Kind::AdmissibleUpTo) return v;
    if (!first_reject) first_reject = v;
  }
  return first_reject ? *first_reject : Verdict::rejected(0, 0);
}

Verdict is_admissible(const Window& w, const KneadingSet& K, int n,
                      const AdmissibleOptions& opt) {
  if (n < 1) fail(Errc::InvalidArgument, "n must be positive");
  if (w.known_depth() < n)
    fail(Errc::InsufficientWindow, "window right part shorter than n");
  if (!w.left_tail_all_plus && w.left_extent() < n)
    fail(Errc::InsufficientWindow, "window left part shorter than n");
  Word body;
  for (int c = -n; c < n; ++c) body.push_back(w.at(c));

  const int L = opt.prelude_budget < 0 ? n : opt.prelude_budget;
  long long examined = 0;
  std::optional<Verdict> first_reject;

  auto try_candidate = [&](const Word& prelude) -> std::optional<Verdict> {
    if (++examined > opt.candidate_budget) return Verdict::budget();
    Word cand = prelude;
    cand.insert(cand.end(), body.begin(), body.end());
    std::size_t start = 0;
    while (start < cand.size() && cand[start] == Symbol::Plus) ++start;
    if (start == cand.size())
      return Verdict::admissible_up_to(n);  // the all-Plus completion
    WordView v(cand.begin() + static_cast<std::ptrdiff_t>(start), cand.end());
    Verdict r = is_wu_admissible(v, K, static_cast<int>(v.size()));
    if (r.kind == Verdict::Kind::AdmissibleUpTo)
      return Verdict::admissible_up_to(n);
    if (!first_reject) first_reject = r;
    return std::nullopt;
  };

  // Prelude length 0, then Minus-initial preludes of each length up to L,
  // enumerated lexicographically with Minus before Plus.
  if (auto v = try_candidate({})) return *v;
  for (int len = 1; len <= L; ++len) {
    Word prelude(static_cast<std::size_t>(len), Symbol::Minus);
    while (true) {
      if (auto v = try_candidate(prelude)) return *v;
      int i = len - 1;
      while (i >= 1 && prelude[static_cast<std::size_t>(i)] == Symbol::Plus) {
        prelude[static_cast<std::size_t>(i)] = Symbol::Minus;
        --i;
      }
      if (i < 1) break;  // first symbol stays Minus
      prelude[static_cast<std::size_t>(i)] = Symbol::Plus;
    }
  }
  return first_reject ? *first_reject : Verdict::rejected(0, 0);
}

SetDifference compare_kneading_sets(const KneadingSet& a, const KneadingSet& b,
                                    int depth) {
  if (a.entries.empty() || b.entries.empty())
    return {SetDifference::Kind::EqualUpToDepth, depth, 0, 0};
  const int lo = std::max(a.entries.front().index, b.entries.front().index);
  const int hi = std::min(a.entries.back().index, b.entries.back().index);
  int cert = depth;
  // Scan outward from the centre: 0, -1, 1, -2, 2, ...
  std::vector<int> order;
  for (int k = 0; k <= hi - lo + 1; ++k) {
    if (k == 0) { if (0 >= lo && 0 <= hi) order.push_back(0); continue; }
    if (-k >= lo && -k <= hi) order.push_back(-k);
    if (k >= lo && k <= hi) order.push_back(k);
  }
  for (int i : order) {
    const KneadingEntry* ea = a.find(i);
    const KneadingEntry* eb = b.find(i);
    if (!ea && !eb) continue;
    if (!ea || !eb) return {SetDifference::Kind::MissingEntry, 0, i, 0};
    if (ea->seq.arc_code != eb->seq.arc_code)
      return {SetDifference::Kind::ArcCodeMismatch, 0, i, 0};
    const int L = std::min<int>({depth, ea->seq.depth(), eb->seq.depth()});
    for (int j = 0; j < L; ++j)
      if (ea->seq.tail[static_cast<std::size_t>(j)] !=
          eb->seq.tail[static_cast<std::size_t>(j)])
        return {SetDifference::Kind::TailMismatch, 0, i, j};
    cert = std::min(cert, L);
  }
  return {SetDifference::Kind::EqualUpToDepth, cert, 0, 0};
}

}  // namespace pf
