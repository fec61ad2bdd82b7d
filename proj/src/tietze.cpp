#include <algorithm>
#include <map>
#include <set>

#include "thetapi/error.hpp"
#include "thetapi/presentation.hpp"

namespace thetapi {

namespace {

constexpr std::size_t kRewriteRelatorLimit = 200;

Word substitute(const Word& w, std::size_t g, const Word& image) {
  const Word image_inv = inverse(image);
  Word out;
  for (int x : w) {
    if (static_cast<std::size_t>(generator_of(x)) != g) {
      out.push_back(x);
      continue;
    }
    const Word& piece = x > 0 ? image : image_inv;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

void normalize(std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (Word& r : rels) {
    r = cyclic_reduce(r);
    if (r.empty()) continue;
    if (seen.insert(cyclic_canonical(r)).second) out.push_back(std::move(r));
  }
  rels = std::move(out);
}

std::size_t occurrences(const Word& w, std::size_t g) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [g](int x) { return static_cast<std::size_t>(generator_of(x)) == g; }));
}

// One elimination of a generator that occurs once in some relator, chosen so
// the total relator length cannot grow. Returns false if none applies.
bool eliminate_one(std::vector<Word>& rels, std::vector<bool>& alive, std::vector<std::pair<std::size_t, Word>>& log) {
  std::vector<std::size_t> order(rels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rels[a].size() < rels[b].size(); });

  std::map<std::size_t, std::size_t> total;  // generator -> occurrences over all relators
  for (const Word& r : rels)
    for (int x : r) ++total[static_cast<std::size_t>(generator_of(x))];

  for (std::size_t idx : order) {
    const Word& r = rels[idx];
    const std::size_t len = r.size();
    std::size_t best = static_cast<std::size_t>(-1), best_other = 0;
    for (int x : r) {
      const auto g = static_cast<std::size_t>(generator_of(x));
      if (occurrences(r, g) != 1) continue;
      const std::size_t other = total[g] - 1;
      if (len > 2 && other * (len - 2) > len) continue;
      if (best == static_cast<std::size_t>(-1) || other < best_other || (other == best_other && g < best)) {
        best = g;
        best_other = other;
      }
    }
    if (best == static_cast<std::size_t>(-1)) continue;

    // Rotate so the letter of `best` comes first: r = g^s * rest.
    Word rot = r;
    const auto pos = std::find_if(rot.begin(), rot.end(), [&](int x) { return static_cast<std::size_t>(generator_of(x)) == best; });
    std::rotate(rot.begin(), pos, rot.end());
    const int s = rot.front();
    const Word rest(rot.begin() + 1, rot.end());
    const Word image = s > 0 ? inverse(rest) : rest;

    std::vector<Word> next;
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (i != idx) next.push_back(substitute(rels[i], best, image));
    rels = std::move(next);
    alive[best] = false;
    log.emplace_back(best, image);
    normalize(rels);
    return true;
  }
  return false;
}

// Replace in s a cyclic subword that is more than half of a conjugate of
// r or r^-1 by the inverse of the remaining part.
bool rewrite_with(const Word& r, Word& s) {
  const std::size_t L = r.size();
  if (L == 0 || s.empty()) return false;
  for (const Word& base : {r, inverse(r)}) {
    for (std::size_t shift = 0; shift < L; ++shift) {
      Word c(base.begin() + static_cast<std::ptrdiff_t>(shift), base.end());
      c.insert(c.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(shift));
      for (std::size_t k = std::min(L, s.size()); 2 * k > L; --k) {
        for (std::size_t start = 0; start < s.size(); ++start) {
          bool match = true;
          for (std::size_t t = 0; t < k && match; ++t) match = s[(start + t) % s.size()] == c[t];
          if (!match) continue;
          Word rotated(s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
          rotated.insert(rotated.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(start));
          Word out = inverse(Word(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()));
          out.insert(out.end(), rotated.begin() + static_cast<std::ptrdiff_t>(k), rotated.end());
          s = cyclic_reduce(out);
          return true;
        }
      }
    }
  }
  return false;
}

bool rewrite_pass(std::vector<Word>& rels) {
  if (rels.size() > kRewriteRelatorLimit) return false;
  bool changed = false;
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (std::size_t j = 0; j < rels.size(); ++j) {
      if (i == j || rels[i].empty()) continue;
      const std::size_t before = rels[j].size();
      if (rewrite_with(rels[i], rels[j]) && rels[j].size() < before) changed = true;
    }
  if (changed) normalize(rels);
  return changed;
}

}  // namespace

TietzeResult tietze_simplify(const GroupPresentation& p, int effort) {
  p.validate();
  const std::size_t n = p.generator_count();
  std::vector<Word> rels = p.relators;
  normalize(rels);
  std::vector<bool> alive(n, true);
  TietzeResult result;

  int passes = 0;
  for (;;) {
    if (eliminate_one(rels, alive, result.eliminations)) continue;
    if (passes < effort && rewrite_pass(rels)) {
      ++passes;
      continue;
    }
    break;
  }

  result.new_index.assign(n, std::nullopt);
  std::size_t next = 0;
  GroupPresentation& out = result.presentation;
  for (std::size_t g = 0; g < n; ++g) {
    if (!alive[g]) continue;
    result.new_index[g] = next++;
    if (!p.generators.empty()) out.generators.push_back(p.generators[g]);
  }
  if (p.generators.empty()) out.generator_count_override = next;
  for (const Word& r : rels) {
    Word w;
    for (int x : r) {
      const auto idx = result.new_index[static_cast<std::size_t>(generator_of(x))];
      ensure(idx.has_value(), "simplified relator uses an eliminated generator");
      const int letter = static_cast<int>(*idx) + 1;
      w.push_back(x > 0 ? letter : -letter);
    }
    out.relators.push_back(std::move(w));
  }
  out.theta = p.theta;
  out.space_hash = p.space_hash;
  out.basepoint = p.basepoint;
  out.tree = p.tree;
  return result;
}

Word TietzeResult::map_word(const Word& w) const {
  Word cur = free_reduce(w);
  for (const auto& [g, image] : eliminations) cur = substitute(cur, g, image);
  Word out;
  for (int x : cur) {
    const auto g = static_cast<std::size_t>(generator_of(x));
    require(g < new_index.size(), "map_word: letter out of range");
    ensure(new_index[g].has_value(), "map_word: eliminated generator survived substitution");
    const int letter = static_cast<int>(*new_index[g]) + 1;
    out.push_back(x > 0 ? letter : -letter);
  }
  return free_reduce(out);
}

}  // namespace thetapi
