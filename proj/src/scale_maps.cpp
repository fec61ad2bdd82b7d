#include "thetapi/scale_maps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "thetapi/error.hpp"

namespace thetapi {

namespace {

using QVector = std::vector<mpq_class>;

void reduce_rows(IntMatrix& m, const std::vector<mpz_class>& moduli) {
  for (std::size_t i = 0; i < m.rows; ++i)
    if (moduli[i] != 0)
      for (std::size_t j = 0; j < m.cols; ++j)
        mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), moduli[i].get_mpz_t());
}

std::vector<std::size_t> free_positions(const std::vector<mpz_class>& moduli) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] == 0) out.push_back(i);
  return out;
}

// Columns of the free x free block, as rational vectors over the target free coordinates.
std::vector<QVector> free_columns(const ScaleMap& m) {
  const auto rows = free_positions(m.moduli_to);
  const auto cols = free_positions(m.moduli_from);
  std::vector<QVector> out;
  for (std::size_t c : cols) {
    QVector v;
    for (std::size_t r : rows) v.emplace_back(m.matrix(r, c));
    out.push_back(std::move(v));
  }
  return out;
}

// Incrementally maintained echelon basis of a subspace of Q^d.
class RationalSpan {
 public:
  explicit RationalSpan(std::size_t dim) : dim_(dim) {}

  bool contains(QVector v) const { return is_zero(reduce(std::move(v))); }

  bool add(QVector v) {
    v = reduce(std::move(v));
    if (is_zero(v)) return false;
    std::size_t p = 0;
    while (v[p] == 0) ++p;
    const mpq_class lead = v[p];
    for (auto& x : v) x /= lead;
    for (auto& [q, b] : basis_)
      if (b[p] != 0) {
        const mpq_class f = b[p];
        for (std::size_t i = 0; i < dim_; ++i) b[i] -= f * v[i];
      }
    basis_.emplace_back(p, std::move(v));
    return true;
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  QVector reduce(QVector v) const {
    for (const auto& [p, b] : basis_)
      if (v[p] != 0) {
        const mpq_class f = v[p];
        for (std::size_t i = 0; i < dim_; ++i) v[i] -= f * b[i];
      }
    return v;
  }
  static bool is_zero(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
  }

  std::size_t dim_;
  std::vector<std::pair<std::size_t, QVector>> basis_;
};

std::size_t rank_of(const std::vector<QVector>& columns, std::size_t dim) {
  RationalSpan span(dim);
  for (const auto& c : columns) span.add(c);
  return span.rank();
}

// Integer basis of the kernel of the matrix with the given columns.
std::vector<std::vector<mpz_class>> kernel_basis(const std::vector<QVector>& columns, std::size_t dim) {
  const std::size_t n = columns.size();
  // Row-reduce the dim x n matrix.
  std::vector<QVector> a(dim, QVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = columns[j][i];
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < dim; ++c) {
    std::size_t p = row;
    while (p < dim && a[p][c] == 0) ++p;
    if (p == dim) continue;
    std::swap(a[p], a[row]);
    const mpq_class lead = a[row][c];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t i = 0; i < dim; ++i)
      if (i != row && a[i][c] != 0) {
        const mpq_class f = a[i][c];
        for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][f];
    mpz_class den = 1, g = 0;
    for (const auto& x : v) den = lcm(den, x.get_den());
    std::vector<mpz_class> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = v[i].get_num() * (den / v[i].get_den());
      g = gcd(g, z[i]);
    }
    if (g > 1)
      for (auto& x : z) x /= g;
    out.push_back(std::move(z));
  }
  return out;
}

Word power(const Word& w, const mpz_class& e) {
  ensure(e.fits_slong_p(), "witness exponent too large");
  const long k = e.get_si();
  const Word base = k >= 0 ? w : inverse(w);
  Word out;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

ClassWitness witness_for(const ScaleComplex& c, std::vector<mpz_class> coords) {
  Word w;
  for (std::size_t t = 0; t < coords.size(); ++t)
    if (coords[t] != 0) {
      const Word piece = power(c.abelian().representative_word(t), coords[t]);
      w.insert(w.end(), piece.begin(), piece.end());
    }
  w = free_reduce(w);
  std::vector<Vertex> loop = c.loop_of_word(w);
  return ClassWitness{std::move(coords), std::move(w), std::move(loop)};
}

}  // namespace

ScaleMap induced_map(const ScaleComplex& from, const ScaleComplex& to) {
  require(from.theta() <= to.theta(), "induced_map: source scale exceeds target scale");
  require(from.space()->content_hash() == to.space()->content_hash(), "induced_map: different spaces");
  require(from.basepoint() == to.basepoint(), "induced_map: different basepoints");

  ScaleMap m;
  m.theta_from = from.theta();
  m.theta_to = to.theta();
  m.moduli_from = from.abelian().moduli();
  m.moduli_to = to.abelian().moduli();
  const std::size_t n_from = from.presentation().generators.size();
  const std::size_t n_to = to.abelian().generator_count();
  for (std::size_t g = 0; g < n_from; ++g) m.images.push_back(to.word_of_walk(from.generator_loop(g)));
  m.matrix = IntMatrix(m.moduli_to.size(), m.moduli_from.size());
  for (std::size_t k = 0; k < m.moduli_from.size(); ++k) {
    const auto& rep = from.abelian().representative(k);
    std::vector<mpz_class> sum(n_to);
    for (std::size_t g = 0; g < n_from; ++g) {
      if (rep[g] == 0) continue;
      for (int x : m.images[g]) {
        if (x > 0)
          sum[static_cast<std::size_t>(generator_of(x))] += rep[g];
        else
          sum[static_cast<std::size_t>(generator_of(x))] -= rep[g];
      }
    }
    const auto col = to.abelian().coordinates(sum);
    for (std::size_t r = 0; r < col.size(); ++r) m.matrix(r, k) = col[r];
  }
  return m;
}

ScaleMap induced_map(const SpaceRef& space, double theta_from, double theta_to, Vertex basepoint,
                     const PresentationOptions& options) {
  require(theta_from > 0.0 && theta_from <= theta_to, "induced_map: need 0 < theta_from <= theta_to");
  const ScaleComplex from(space, theta_from, basepoint, options);
  const ScaleComplex to(space, theta_to, basepoint, options);
  return induced_map(from, to);
}

ScaleMap compose(const ScaleMap& m1, const ScaleMap& m2) {
  require(m1.theta_to == m2.theta_from, "compose: scale mismatch");
  require(m1.moduli_to == m2.moduli_from, "compose: coordinate mismatch");
  ScaleMap out;
  out.theta_from = m1.theta_from;
  out.theta_to = m2.theta_to;
  out.moduli_from = m1.moduli_from;
  out.moduli_to = m2.moduli_to;
  out.matrix = m2.matrix * m1.matrix;
  reduce_rows(out.matrix, out.moduli_to);
  for (const Word& w : m1.images) {
    Word image;
    for (int x : w) {
      const auto g = static_cast<std::size_t>(generator_of(x));
      require(g < m2.images.size(), "compose: generator images missing");
      const Word piece = x > 0 ? m2.images[g] : inverse(m2.images[g]);
      image.insert(image.end(), piece.begin(), piece.end());
    }
    out.images.push_back(free_reduce(image));
  }
  return out;
}

std::vector<mpz_class> apply(const ScaleMap& m, const std::vector<mpz_class>& v) {
  require(v.size() == m.matrix.cols, "apply: vector has the wrong length");
  std::vector<mpz_class> out(m.matrix.rows);
  for (std::size_t i = 0; i < m.matrix.rows; ++i) {
    for (std::size_t j = 0; j < m.matrix.cols; ++j) out[i] += m.matrix(i, j) * v[j];
    if (m.moduli_to[i] != 0) mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), m.moduli_to[i].get_mpz_t());
  }
  return out;
}

std::size_t rational_rank(const ScaleMap& m) {
  return rank_of(free_columns(m), free_positions(m.moduli_to).size());
}

std::vector<double> critical_sweep_scales(const FiniteMetricSpace& space) {
  const auto crit = critical_scales(space);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) out.push_back(0.5 * (crit[i] + crit[i + 1]));
  out.push_back(crit.empty() ? 1.0 : crit.back() * 1.125);
  return out;
}

ScaleMap ScaleTower::between(std::size_t from, std::size_t to) const {
  require(from < size() && to <= from, "tower: need from >= to");
  const auto& moduli = complexes[from]->abelian().moduli();
  ScaleMap m;
  m.theta_from = m.theta_to = scales[from];
  m.moduli_from = m.moduli_to = moduli;
  m.matrix = IntMatrix::identity(moduli.size());
  for (std::size_t t = from; t > to; --t) {
    const ScaleMap& step = maps[t - 1];
    m.matrix = step.matrix * m.matrix;
    m.moduli_to = step.moduli_to;
    m.theta_to = step.theta_to;
    reduce_rows(m.matrix, m.moduli_to);
  }
  return m;
}

ScaleTower sweep(const SpaceRef& space, std::vector<double> scales, Vertex basepoint, const SweepOptions& options) {
  require(space != nullptr, "sweep: null space");
  require(!scales.empty(), "sweep: no scales");
  for (double s : scales) require(s > 0.0 && std::isfinite(s), "sweep: scales must be positive");
  std::sort(scales.begin(), scales.end(), std::greater<>());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  ScaleTower tower;
  tower.scales = scales;
  tower.basepoint = basepoint;
  tower.space_hash = space->content_hash();
  tower.complexes.resize(scales.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scales.size(); i = next++)
      tower.complexes[i] = std::make_shared<const ScaleComplex>(space, scales[i], basepoint, options.presentation);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(scales.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          worker();
        } catch (...) {
          errors[t] = std::current_exception();
          next = scales.size();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i + 1 < scales.size(); ++i)
    tower.maps.push_back(induced_map(*tower.complexes[i + 1], *tower.complexes[i]));
  return tower;
}

std::vector<Bar> barcode(const ScaleTower& tower) {
  const std::size_t k = tower.size();
  require(k > 0, "barcode: empty tower");
  // Ascending index a = k - 1 - (tower index).
  std::vector<std::vector<std::size_t>> r(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) r[i][j] = rational_rank(tower.between(k - 1 - i, k - 1 - j));
  auto rank = [&](long i, long j) -> long {
    if (i < 0 || j >= static_cast<long>(k) || i > j) return 0;
    return static_cast<long>(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  };
  std::vector<Bar> bars;
  for (long i = 0; i < static_cast<long>(k); ++i)
    for (long j = i; j < static_cast<long>(k); ++j) {
      const long mult = rank(i, j) - rank(i - 1, j) - rank(i, j + 1) + rank(i - 1, j + 1);
      ensure(mult >= 0, "barcode: negative multiplicity");
      if (mult == 0) continue;
      Bar b{tower.scales[k - 1 - static_cast<std::size_t>(i)], std::nullopt, static_cast<std::size_t>(mult)};
      if (j + 1 < static_cast<long>(k)) b.death = tower.scales[k - 2 - static_cast<std::size_t>(j)];
      bars.push_back(b);
    }
  return bars;
}

std::size_t bars_covering(const std::vector<Bar>& bars, double theta) {
  std::size_t n = 0;
  for (const Bar& b : bars)
    if (b.birth <= theta && (!b.death || theta < *b.death)) n += b.multiplicity;
  return n;
}

bool in_rational_image(const ScaleTower& tower, std::size_t from, std::size_t to, const std::vector<mpz_class>& cls) {
  const ScaleMap m = tower.between(from, to);
  const auto rows = free_positions(m.moduli_to);
  RationalSpan span(rows.size());
  for (auto& c : free_columns(m)) span.add(std::move(c));
  QVector v;
  for (std::size_t r : rows) v.emplace_back(cls.at(r));
  return span.contains(std::move(v));
}

InverseLimitReport inverse_limit_report(const ScaleTower& tower) {
  const std::size_t k = tower.size();
  require(k >= 2, "inverse_limit_report: tower needs at least two scales");
  InverseLimitReport report;
  report.note =
      "finite truncation: the inverse limit over all scales is approximated by the swept grid; "
      "ranks are over Q, torsion is listed per scale";
  const std::size_t smallest = k - 1;
  const ScaleComplex& bottom = *tower.complexes[smallest];
  const auto bottom_free = free_positions(bottom.abelian().moduli());
  std::vector<bool> injective(k, false);

  for (std::size_t i = 0; i < k; ++i) {
    const ScaleComplex& here = *tower.complexes[i];
    ScaleReport s;
    s.theta = tower.scales[i];
    s.invariants = here.abelian().invariants();
    const ScaleMap m = tower.between(smallest, i);
    const auto rows = free_positions(m.moduli_to);
    const auto columns = free_columns(m);
    RationalSpan span(rows.size());
    for (const auto& c : columns) span.add(c);
    s.image_rank = span.rank();
    injective[i] = s.image_rank == bottom_free.size();

    for (std::size_t t = 0; t < rows.size(); ++t) {
      QVector e(rows.size());
      e[t] = 1;
      if (!span.add(e)) continue;
      std::vector<mpz_class> coords(m.moduli_to.size());
      coords[rows[t]] = 1;
      s.cokernel.push_back(witness_for(here, std::move(coords)));
    }
    for (const auto& z : kernel_basis(columns, rows.size())) {
      std::vector<mpz_class> coords(m.moduli_from.size());
      for (std::size_t t = 0; t < z.size(); ++t) coords[bottom_free[t]] = z[t];
      s.kernel.push_back(witness_for(bottom, std::move(coords)));
    }
    if (i + 1 < k) {
      const ScaleMap& adj = tower.maps[i];
      s.adjacent_kernel_rank = free_positions(adj.moduli_from).size() - rational_rank(adj);
    }
    report.scales.push_back(std::move(s));
  }
  std::size_t idx = k - 1;
  while (idx > 0 && injective[idx - 1]) --idx;
  report.stabilization_index = idx;
  report.stabilization_theta = tower.scales[idx];
  return report;
}

}  // namespace thetapi
