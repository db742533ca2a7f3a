#include "fpl2/loop_oracle.hpp"

#include <Eigen/SparseCore>
#include <map>
#include <stdexcept>

namespace fpl2 {

namespace {

using Sparse = Eigen::SparseMatrix<cd>;

cd qpow(cd q, int e) {
  cd r{1.0, 0.0};
  const cd b = e >= 0 ? q : cd(1.0, 0.0) / q;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

// edge state: color and direction along the edge axis (+1 = right/up)
struct ES {
  int color = 0;  // 0 black, 1 white
  int dir = +1;
};
const std::array<ES, 4> kStates = {ES{0, +1}, ES{0, -1}, ES{1, +1}, ES{1, -1}};

// cross product of headings; +1 = left (ccw) turn, -1 = right, 0 = straight
int turn_ccw(int inx, int iny, int outx, int outy) { return inx * outy - iny * outx; }

// 24-vertex check and total turn exponent (black left = +1, white left = -1)
bool vertex_ok(const ES& w, const ES& e, const ES& n, const ES& s, int* expo) {
  struct Inc {
    const ES* st;
    bool in;
    int hx, hy;
  };
  const Inc inc[4] = {{&w, w.dir > 0, w.dir, 0},
                      {&e, e.dir < 0, e.dir, 0},
                      {&n, n.dir < 0, 0, n.dir},
                      {&s, s.dir > 0, 0, s.dir}};
  int total = 0;
  for (int color = 0; color < 2; ++color) {
    const Inc *cin = nullptr, *cout = nullptr;
    int ni = 0, no = 0;
    for (const auto& i : inc) {
      if (i.st->color != color) continue;
      if (i.in) {
        cin = &i;
        ++ni;
      } else {
        cout = &i;
        ++no;
      }
    }
    if (ni != 1 || no != 1) return false;
    const int t = turn_ccw(cin->hx, cin->hy, cout->hx, cout->hy);
    total += color == 0 ? t : -t;
  }
  *expo = total;
  return true;
}

// Sparse one-row transfer matrix over vertical edge layers (2L edges, 4
// states each); the seam sits on the wrap horizontal edge.
Sparse row_transfer(int L, const CouplingSet& cpl) {
  const int width = 2 * L;
  const std::int64_t dim = std::int64_t(1) << (2 * width);
  std::vector<Eigen::Triplet<cd>> ts;

  std::vector<int> vin(width), vout(width);
  // depth-first over columns; h[c] = horizontal edge east of vertex c
  struct Frame {
    int col;
    cd weight;
  };
  for (int hwrap = 0; hwrap < 4; ++hwrap) {
    const ES wrap = kStates[hwrap];
    const cd seam = wrap.dir < 0 ? cpl.a : cd(1.0, 0.0) / cpl.a;
    std::function<void(int, int, cd)> dfs = [&](int c, int hwest, cd weight) {
      if (c == width) {
        if (hwest != hwrap) return;  // wrap consistency
        std::int64_t in_idx = 0, out_idx = 0;
        for (int k = 0; k < width; ++k) {
          in_idx = in_idx * 4 + vin[k];
          out_idx = out_idx * 4 + vout[k];
        }
        ts.emplace_back(out_idx, in_idx, weight * seam);
        return;
      }
      for (int he = 0; he < 4; ++he)
        for (int s = 0; s < 4; ++s)
          for (int n = 0; n < 4; ++n) {
            int expo;
            if (!vertex_ok(kStates[hwest], kStates[he], kStates[n], kStates[s], &expo)) continue;
            vin[c] = s;
            vout[c] = n;
            dfs(c + 1, he, weight * qpow(cpl.omega, expo));
          }
    };
    dfs(0, hwrap, cd(1.0, 0.0));
  }
  Sparse w(dim, dim);
  w.setFromTriplets(ts.begin(), ts.end());
  w.makeCompressed();
  return w;
}

void check_limits(int L, int M, const OracleLimits& limits) {
  if (4 * L * M > limits.max_vertices)
    throw std::length_error("oracle enumeration cap exceeded (4*L*M over the limit)");
}

}  // namespace

cd arrow_partition_function(int L, int M, const CouplingSet& cpl, OracleLimits limits) {
  check_limits(L, M, limits);
  const Sparse w = row_transfer(L, cpl);
  // trace of w^{2M} with fixed multiplication order
  Sparse p = w;
  for (int r = 1; r < 2 * M; ++r) p = (p * w).pruned();
  cd tr = 0.0;
  for (int k = 0; k < p.outerSize(); ++k)
    for (Sparse::InnerIterator it(p, k); it; ++it)
      if (it.row() == it.col()) tr += it.value();
  return tr;
}

cd reference_slab_weight(int L, const CouplingSet& cpl) {
  const Sparse w = row_transfer(L, cpl);
  // reference layer: all white up
  std::int64_t ref = 0;
  for (int k = 0; k < 2 * L; ++k) ref = ref * 4 + 2;
  const Sparse p = (w * w).pruned();
  return p.coeff(ref, ref);
}

std::vector<std::vector<LoopInfo>> enumerate_bicolorings(int L, int M, OracleLimits limits) {
  check_limits(L, M, limits);
  const int W = 2 * L, H = 2 * M;
  // hcol[r][c]: color of edge east of vertex (r,c); vcol[r][c]: color of edge
  // south of vertex (r,c). 0 black, 1 white.
  std::vector<std::vector<int>> hcol(H, std::vector<int>(W, -1));
  std::vector<std::vector<int>> vcol(H, std::vector<int>(W, -1));
  std::vector<std::vector<LoopInfo>> results;

  // count black edges around vertex (r,c); requires all four assigned
  auto vertex_valid = [&](int r, int c) {
    const int wst = hcol[r][(c + W - 1) % W];
    const int est = hcol[r][c];
    const int sst = vcol[r][c];
    const int nst = vcol[(r + 1) % H][c];
    const int blacks = (wst == 0) + (est == 0) + (sst == 0) + (nst == 0);
    return blacks == 2;
  };

  std::function<void(int)> dfs = [&](int pos) {
    if (pos == 2 * W * H) {
      // all edges assigned and all vertices checked: decompose
      std::vector<LoopInfo> loops;
      // trace loops of each color; edges: (kind 0=h,1=v, r, c), visited flags
      std::vector<std::vector<char>> hdone(H, std::vector<char>(W, 0));
      std::vector<std::vector<char>> vdone(H, std::vector<char>(W, 0));
      auto color_of = [&](int kind, int r, int c) { return kind == 0 ? hcol[r][c] : vcol[r][c]; };
      for (int kind0 = 0; kind0 < 2; ++kind0)
        for (int r0 = 0; r0 < H; ++r0)
          for (int c0 = 0; c0 < W; ++c0) {
            auto& done0 = kind0 == 0 ? hdone : vdone;
            if (done0[r0][c0]) continue;
            const int col = color_of(kind0, r0, c0);
            LoopInfo info;
            info.white = col == 1;
            // walk: state = (kind, r, c, heading) with heading along the edge;
            // start heading +x for h, +y for v
            int kind = kind0, r = r0, c = c0, hx = kind0 == 0 ? 1 : 0, hy = kind0 == 0 ? 0 : 1;
            do {
              (kind == 0 ? hdone : vdone)[r][c] = 1;
              ++info.length;
              if (kind == 0 && c == W - 1) info.h_winding += hx;  // crossing the seam
              if (kind == 1 && r == 0) info.v_winding += hy;
              // arrive at the vertex ahead
              int vr = r, vc = c;
              if (kind == 0)
                vc = hx > 0 ? (c + 1) % W : c;
              else
                vr = hy > 0 ? r : (r + H - 1) % H;
              // pick the other edge of this color at (vr, vc)
              struct Nb {
                int kind, r, c, hx, hy;  // leaving heading
              };
              const Nb nbs[4] = {{0, vr, vc, 1, 0},
                                 {0, vr, (vc + W - 1) % W, -1, 0},
                                 {1, (vr + 1) % H, vc, 0, 1},
                                 {1, vr, vc, 0, -1}};
              const Nb* next = nullptr;
              for (const auto& nb : nbs) {
                if (color_of(nb.kind, nb.r, nb.c) != col) continue;
                if (nb.kind == kind && nb.r == r && nb.c == c) continue;  // came from here
                next = &nb;
                break;
              }
              info.turning += turn_ccw(hx, hy, next->hx, next->hy);
              kind = next->kind;
              r = next->r;
              c = next->c;
              hx = next->hx;
              hy = next->hy;
            } while (!(kind == kind0 && r == r0 && c == c0));
            // normalize winding sign conventions: traversal direction is
            // arbitrary for an unoriented loop
            loops.push_back(info);
          }
      results.push_back(std::move(loops));
      return;
    }
    const int kind = pos % 2;  // assign h then v at each (r,c)
    const int cell = pos / 2;
    const int r = cell / W, c = cell % W;
    auto& arr = kind == 0 ? hcol : vcol;
    for (int col = 0; col < 2; ++col) {
      arr[r][c] = col;
      // check every vertex whose four edges are now complete
      bool ok = true;
      // vertex (r,c) depends on h[r][c-1], h[r][c], v[r][c], v[r+1][c]
      // assignment order is raster (r,c): h then v. A vertex (ri,ci) is
      // complete once v[(ri+1)%H][ci] is assigned; in raster order that is
      // position of v at ((ri+1)%H, ci) unless the wrap makes it earlier.
      auto assigned = [&](int kind2, int ri, int ci) {
        const int p = (ri * W + ci) * 2 + (kind2 == 0 ? 0 : 1);
        return p <= pos;
      };
      for (int ri = 0; ri < H && ok; ++ri)
        for (int ci = 0; ci < W && ok; ++ci) {
          if (!assigned(0, ri, ci) || !assigned(0, ri, (ci + W - 1) % W) || !assigned(1, ri, ci) ||
              !assigned(1, (ri + 1) % H, ci))
            continue;
          // only re-check vertices adjacent to the edge just assigned
          const bool touches = (kind == 0 && ri == r && (ci == c || ci == (c + 1) % W)) ||
                               (kind == 1 && ci == c && (ri == r || (r == 0 && ri == H - 1) ||
                                                         ri == (r + H - 1) % H));
          if (!touches) continue;
          if (!vertex_valid(ri, ci)) ok = false;
        }
      if (ok) dfs(pos + 1);
    }
    arr[r][c] = -1;
  };
  dfs(0);
  return results;
}

cd loop_partition_function(int L, int M, const CouplingSet& cpl, OracleLimits limits) {
  const auto configs = enumerate_bicolorings(L, M, limits);
  cd z = 0.0;
  for (const auto& loops : configs) {
    cd wconf = 1.0;
    for (const auto& lp : loops) {
      if (lp.turning != 0) {
        if (std::abs(lp.turning) != 4)
          throw std::logic_error("contractible loop with turning != +-4");
        wconf *= cd(cpl.n, 0.0);
      } else if (lp.h_winding != 0) {
        const int w = std::abs(lp.h_winding);
        wconf *= qpow(cpl.a, w) + qpow(cpl.a, -w);
      } else {
        wconf *= 2.0;
      }
    }
    z += wconf;
  }
  return z;
}

Eigen::MatrixXcd enumerated_block_r(const CouplingSet& cpl) {
  // frozen block labeling: label v (0-based) on each dangling edge maps to
  //   upper horizontal ends:  (B>, W>, W<, B<)
  //   lower horizontal ends:  reversed (B<, W<, W>, B>)
  //   right vertical column:  (B^, W^, Wv, Bv)
  //   left vertical column:   reversed (Bv, Wv, W^, B^)
  // row = (uhL, uhR, vt_right, vt_left), col = (lhL, lhR, vb_right, vb_left)
  auto hmap = [](int v, bool lower) {
    static const ES up[4] = {{0, 1}, {1, 1}, {1, -1}, {0, -1}};
    ES e = up[v];
    if (lower) e.dir = -e.dir;
    return e;
  };
  auto vmap = [](int v, bool left) {
    static const ES right[4] = {{0, 1}, {1, 1}, {1, -1}, {0, -1}};
    ES e = right[v];
    if (left) e.dir = -e.dir;
    return e;
  };

  Eigen::MatrixXcd out(256, 256);
  for (int pr = 0; pr < 256; ++pr)
    for (int pc = 0; pc < 256; ++pc) {
      int rd[4], cdg[4];
      int t = pr;
      for (int k = 3; k >= 0; --k) {
        rd[k] = t % 4;
        t /= 4;
      }
      t = pc;
      for (int k = 3; k >= 0; --k) {
        cdg[k] = t % 4;
        t /= 4;
      }
      const ES uhL = hmap(rd[0], false), uhR = hmap(rd[1], false);
      const ES vt1 = vmap(rd[2], false), vt0 = vmap(rd[3], true);
      const ES lhL = hmap(cdg[0], true), lhR = hmap(cdg[1], true);
      const ES vb1 = vmap(cdg[2], false), vb0 = vmap(cdg[3], true);
      cd sum = 0.0;
      for (int hl = 0; hl < 4; ++hl)
        for (int hu = 0; hu < 4; ++hu)
          for (int v0 = 0; v0 < 4; ++v0)
            for (int v1 = 0; v1 < 4; ++v1) {
              int e1, e2, e3, e4;
              if (!vertex_ok(lhL, kStates[hl], kStates[v0], vb0, &e1)) continue;
              if (!vertex_ok(kStates[hl], lhR, kStates[v1], vb1, &e2)) continue;
              if (!vertex_ok(uhL, kStates[hu], vt0, kStates[v0], &e3)) continue;
              if (!vertex_ok(kStates[hu], uhR, vt1, kStates[v1], &e4)) continue;
              sum += qpow(cpl.omega, e1 + e2 + e3 + e4);
            }
      out(pr, pc) = sum;
    }
  return out;
}

}  // namespace fpl2
