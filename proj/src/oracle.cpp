#include "thetapi/oracle.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace thetapi::oracle {

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

void swap_rows(Dense& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(Dense& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

// row_i -= q * row_j
void row_sub(Dense& a, std::size_t i, std::size_t j, const mpz_class& q) {
  for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= q * a[j][k];
}

void col_sub(Dense& a, std::size_t i, std::size_t j, const mpz_class& q) {
  for (auto& row : a) row[i] -= q * row[j];
}

}  // namespace

std::vector<mpz_class> invariant_factors(const IntMatrix& m) {
  Dense a(m.rows, std::vector<mpz_class>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
  const std::size_t r = m.rows, c = m.cols;
  std::vector<mpz_class> out;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // first nonzero entry in column-major order
    std::size_t pi = r, pj = c;
    for (std::size_t j = t; j < c && pi == r; ++j)
      for (std::size_t i = t; i < r; ++i)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == r) break;
    swap_rows(a, t, pi);
    swap_cols(a, t, pj);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        while (a[i][t] != 0) {
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_sub(a, i, t, q);
          if (a[i][t] != 0) {
            swap_rows(a, i, t);
            changed = true;
          }
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        while (a[t][j] != 0) {
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_sub(a, j, t, q);
          if (a[t][j] != 0) {
            swap_cols(a, j, t);
            changed = true;
          }
        }
      }
      if (changed) continue;
      // pivot must divide the whole remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = 0; k < c; ++k) a[t][k] += a[i][k];
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

AbelianInvariants naive_h1(const FiniteMetricSpace& space, double theta, Vertex basepoint) {
  const std::size_t n = space.size();
  auto adj = [&](Vertex a, Vertex b) { return a != b && space.dist(a, b) <= theta; };

  // component of the basepoint by repeated relaxation
  std::vector<bool> in(n, false);
  in[basepoint] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (in[a] && !in[b] && adj(a, b)) in[b] = grew = true;
  }
  std::vector<Vertex> verts;
  for (Vertex v = 0; v < n; ++v)
    if (in[v]) verts.push_back(v);

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (adj(verts[i], verts[j])) edges.emplace_back(verts[i], verts[j]);
  auto edge_index = [&](Vertex a, Vertex b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), key) - edges.begin());
  };

  // every 3- and 4-cycle, once per vertex set and cyclic order
  std::vector<std::vector<Vertex>> faces;
  const std::size_t m = verts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const Vertex a = verts[i], b = verts[j], c = verts[k];
        if (adj(a, b) && adj(b, c) && adj(c, a)) faces.push_back({a, b, c});
        for (std::size_t l = k + 1; l < m; ++l) {
          const Vertex d = verts[l];
          for (const auto& cyc : {std::vector<Vertex>{a, b, c, d}, std::vector<Vertex>{a, b, d, c},
                                  std::vector<Vertex>{a, c, b, d}})
            if (adj(cyc[0], cyc[1]) && adj(cyc[1], cyc[2]) && adj(cyc[2], cyc[3]) && adj(cyc[3], cyc[0]))
              faces.push_back(cyc);
        }
      }

  IntMatrix d1(verts.size(), edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto u = std::find(verts.begin(), verts.end(), edges[e].first) - verts.begin();
    const auto v = std::find(verts.begin(), verts.end(), edges[e].second) - verts.begin();
    d1(u, e) -= 1;
    d1(v, e) += 1;
  }
  IntMatrix d2(edges.size(), faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& cyc = faces[f];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const Vertex a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      d2(edge_index(a, b), f) += a < b ? 1 : -1;
    }
  }
  const std::size_t rank1 = invariant_factors(d1).size();
  const auto f2 = invariant_factors(d2);
  AbelianInvariants h;
  h.rank = edges.size() - rank1 - f2.size();
  for (const auto& d : f2)
    if (d > 1) h.torsion.push_back(d.get_si());
  return h;
}

ShortCycles short_cycles(const ThetaGraph& graph) {
  const std::size_t n = graph.vertex_count();
  auto adj = [&](Vertex a, Vertex b) {
    const auto& nb = graph.neighbors(a);
    return std::find(nb.begin(), nb.end(), b) != nb.end();
  };
  std::set<std::array<Vertex, 3>> tri;
  std::set<std::array<Vertex, 4>> sq;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (adj(a, b) && adj(b, c) && adj(c, a)) {
          std::array<Vertex, 3> t{a, b, c};
          std::sort(t.begin(), t.end());
          tri.insert(t);
        }
        for (Vertex d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (!(adj(a, b) && adj(b, c) && adj(c, d) && adj(d, a))) continue;
          // canonical: start at the smallest vertex, then the smaller neighbour
          std::array<Vertex, 4> cyc{a, b, c, d};
          const auto m = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
          std::array<Vertex, 4> r{};
          for (int k = 0; k < 4; ++k) r[k] = cyc[(m + k) % 4];
          if (r[3] < r[1]) std::swap(r[1], r[3]);
          sq.insert(r);
        }
      }
  ShortCycles out;
  out.triangles.assign(tri.begin(), tri.end());
  out.squares.assign(sq.begin(), sq.end());
  return out;
}

}  // namespace thetapi::oracle
