#include "thetapi/words.hpp"

#include <algorithm>
#include <sstream>

#include "thetapi/error.hpp"

namespace thetapi {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    ensure(x != 0, "word contains the zero letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return std::find(w.begin(), w.end(), 0) == w.end();
}

Word cyclic_canonical(const Word& w) {
  const Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  Word best = r;
  for (const Word& base : {r, inverse(r)}) {
    Word rot = base;
    for (std::size_t k = 0; k < base.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot < best) best = rot;
    }
  }
  return best;
}

std::vector<long long> exponent_sums(const Word& w, std::size_t n_generators) {
  std::vector<long long> out(n_generators, 0);
  for (int x : w) {
    const auto g = static_cast<std::size_t>(generator_of(x));
    ensure(g < n_generators, "letter out of range for exponent sum");
    out[g] += x > 0 ? 1 : -1;
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'g' << (generator_of(w[i]) + 1);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

}  // namespace thetapi
