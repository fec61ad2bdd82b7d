// H1 coordinates: sparse elimination of unit pivots, then a dense Smith
// form on the residual relators.

#include <algorithm>
#include <limits>
#include <queue>

#include "thetapi/error.hpp"
#include "thetapi/presentation.hpp"

namespace thetapi {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, long long>>;

__extension__ using Wide = __int128;

struct Overflow {};

constexpr long long kCoefficientBound = 1LL << 60;

long long checked(Wide v) {
  if (v > kCoefficientBound || v < -kCoefficientBound) throw Overflow{};
  return static_cast<long long>(v);
}

// a - f * b, both sorted by column.
SparseRow axpy(const SparseRow& a, long long f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, checked(-static_cast<Wide>(f) * b[j].second));
      ++j;
    } else {
      const long long v = checked(static_cast<Wide>(a[i].second) - static_cast<Wide>(f) * b[j].second);
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

long long coefficient(const SparseRow& r, std::size_t c) {
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(c, std::numeric_limits<long long>::min()));
  return it != r.end() && it->first == c ? it->second : 0;
}

SparseRow row_of(const Word& w) {
  SparseRow r;
  for (int x : w) r.emplace_back(static_cast<std::size_t>(generator_of(x)), x > 0 ? 1 : -1);
  std::sort(r.begin(), r.end());
  SparseRow merged;
  for (const auto& [c, v] : r) {
    if (!merged.empty() && merged.back().first == c)
      merged.back().second += v;
    else
      merged.emplace_back(c, v);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }), merged.end());
  return merged;
}

}  // namespace

AbelianCoordinates::AbelianCoordinates(const GroupPresentation& p) : n_(p.generator_count()) {
  std::vector<SparseRow> original;
  for (const Word& w : p.relators) {
    for (int x : w) require(x != 0 && static_cast<std::size_t>(generator_of(x)) < n_, "relator letter out of range");
    SparseRow r = row_of(w);
    if (!r.empty()) original.push_back(std::move(r));
  }

  std::vector<SparseRow> rows;
  std::vector<bool> live_col;
  std::vector<bool> live_row;
  auto eliminate = [&] {
    rows = original;
    live_col.assign(n_, true);
    live_row.assign(rows.size(), true);
    std::vector<std::vector<std::size_t>> col_rows(n_);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& e : rows[r]) col_rows[e.first].push_back(r);
    using Key = std::pair<std::size_t, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    for (std::size_t r = 0; r < rows.size(); ++r) queue.emplace(rows[r].size(), r);
    std::vector<std::size_t> mark(rows.size(), static_cast<std::size_t>(-1));

    while (!queue.empty()) {
      const auto [len, r] = queue.top();
      queue.pop();
      if (!live_row[r] || len != rows[r].size()) continue;
      if (rows[r].empty()) {
        live_row[r] = false;
        continue;
      }
      std::size_t pivot = n_;
      for (const auto& [c, v] : rows[r])
        if ((v == 1 || v == -1) && (pivot == n_ || col_rows[c].size() < col_rows[pivot].size())) pivot = c;
      if (pivot == n_) continue;
      const long long eps = coefficient(rows[r], pivot);
      substitutions_.push_back({pivot, eps, rows[r]});
      live_row[r] = false;
      live_col[pivot] = false;
      for (std::size_t r2 : col_rows[pivot]) {
        if (r2 == r || !live_row[r2] || mark[r2] == pivot) continue;
        mark[r2] = pivot;
        const long long f = coefficient(rows[r2], pivot);
        if (f == 0) continue;
        rows[r2] = axpy(rows[r2], checked(static_cast<Wide>(f) * eps), rows[r]);
        for (const auto& e : rows[r2]) col_rows[e.first].push_back(r2);
        queue.emplace(rows[r2].size(), r2);
      }
      col_rows[pivot].clear();
    }
  };
  try {
    eliminate();
  } catch (const Overflow&) {
    substitutions_.clear();
    rows = original;
    live_col.assign(n_, true);
    live_row.assign(rows.size(), true);
  }

  std::vector<std::size_t> residual;
  std::vector<bool> appears(n_, false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!live_row[r] || rows[r].empty()) continue;
    residual.push_back(r);
    for (const auto& e : rows[r]) appears[e.first] = true;
  }
  for (std::size_t c = 0; c < n_; ++c) {
    if (!live_col[c]) continue;
    (appears[c] ? active_ : inactive_).push_back(c);
  }
  std::vector<std::size_t> position(n_, 0);
  for (std::size_t j = 0; j < active_.size(); ++j) position[active_[j]] = j;

  IntMatrix dense(residual.size(), active_.size());
  for (std::size_t i = 0; i < residual.size(); ++i)
    for (const auto& [c, v] : rows[residual[i]]) {
      ensure(live_col[c], "residual relator touches an eliminated generator");
      dense(i, position[c]) = static_cast<long>(v);
    }
  const SmithForm snf = smith_normal_form(dense);
  v_ = snf.V;

  const std::size_t diag = std::min(dense.rows, dense.cols);
  std::size_t nonzero = 0;
  while (nonzero < diag && snf.D(nonzero, nonzero) != 0) ++nonzero;
  while (skip_ < nonzero && snf.D(skip_, skip_) == 1) ++skip_;

  auto add_representative = [&](std::vector<mpz_class> rep) { representatives_.push_back(std::move(rep)); };
  for (std::size_t k = skip_; k < active_.size(); ++k) {
    const bool torsion = k < nonzero;
    moduli_.push_back(torsion ? snf.D(k, k) : mpz_class(0));
    if (torsion) {
      ensure(snf.D(k, k).fits_slong_p(), "torsion coefficient exceeds 64 bits");
      invariants_.torsion.push_back(snf.D(k, k).get_si());
    } else {
      ++invariants_.rank;
    }
    std::vector<mpz_class> rep(n_);
    for (std::size_t j = 0; j < active_.size(); ++j) rep[active_[j]] = snf.V_inverse(k, j);
    add_representative(std::move(rep));
  }
  for (std::size_t c : inactive_) {
    moduli_.push_back(0);
    ++invariants_.rank;
    std::vector<mpz_class> rep(n_);
    rep[c] = 1;
    add_representative(std::move(rep));
  }
}

std::vector<mpz_class> AbelianCoordinates::coordinates(const std::vector<mpz_class>& exponents) const {
  require(exponents.size() == n_, "exponent vector has the wrong length");
  std::vector<mpz_class> x = exponents;
  mpz_class t;
  for (const auto& s : substitutions_) {
    if (x[s.column] == 0) continue;
    t = x[s.column] * static_cast<long>(s.sign);
    for (const auto& [c, v] : s.row) x[c] -= t * static_cast<long>(v);
  }
  std::vector<mpz_class> out;
  out.reserve(moduli_.size());
  for (std::size_t k = skip_; k < active_.size(); ++k) {
    mpz_class y = 0;
    for (std::size_t j = 0; j < active_.size(); ++j)
      if (x[active_[j]] != 0) y += x[active_[j]] * v_(j, k);
    out.push_back(std::move(y));
  }
  for (std::size_t c : inactive_) out.push_back(x[c]);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (moduli_[i] != 0) mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), moduli_[i].get_mpz_t());
  return out;
}

std::vector<mpz_class> AbelianCoordinates::coordinates(const Word& w) const {
  std::vector<mpz_class> x(n_);
  for (int l : w) {
    const auto g = static_cast<std::size_t>(generator_of(l));
    require(g < n_, "word letter out of range");
    x[g] += l > 0 ? 1 : -1;
  }
  return coordinates(x);
}

Word AbelianCoordinates::representative_word(std::size_t i) const {
  Word w;
  const auto& rep = representatives_.at(i);
  for (std::size_t g = 0; g < rep.size(); ++g) {
    ensure(rep[g].fits_slong_p(), "representative coefficient too large for a word");
    const long e = rep[g].get_si();
    for (long k = 0; k < (e > 0 ? e : -e); ++k) w.push_back(e > 0 ? static_cast<int>(g) + 1 : -static_cast<int>(g) - 1);
  }
  return w;
}

AbelianInvariants abelianization(const GroupPresentation& p) { return AbelianCoordinates(p).invariants(); }

IntMatrix exponent_matrix(const GroupPresentation& p) {
  const std::size_t n = p.generator_count();
  IntMatrix m(p.relators.size(), n);
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (int x : p.relators[i]) {
      const auto g = static_cast<std::size_t>(generator_of(x));
      require(g < n, "relator letter out of range");
      m(i, g) += x > 0 ? 1 : -1;
    }
  return m;
}

}  // namespace thetapi
