#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "nc11/error.hpp"

namespace nc11 {

struct MatchEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

namespace detail {

// Bitmask dynamic programme over vertex subsets, exact for n <= 20.
// Ties prefer leaving the lowest vertex unmatched, then the lowest partner.
inline std::vector<std::size_t> matching_by_subsets(int n, std::span<const MatchEdge> edges) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> w(un * un, 0.0);
  std::vector<std::size_t> which(un * un, edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (!(ed.weight > 0.0)) continue;
    const auto a = static_cast<std::size_t>(ed.u) * un + static_cast<std::size_t>(ed.v);
    const auto b = static_cast<std::size_t>(ed.v) * un + static_cast<std::size_t>(ed.u);
    if (which[a] == edges.size() || ed.weight > w[a]) {
      w[a] = w[b] = ed.weight;
      which[a] = which[b] = e;
    }
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  std::vector<double> best(std::size_t{full} + 1, 0.0);
  std::vector<std::int8_t> choice(std::size_t{full} + 1, -1);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    double b = best[rest];
    std::int8_t c = -1;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      const int j = std::countr_zero(r);
      const auto idx = static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j);
      if (which[idx] == edges.size()) continue;
      const double cand = w[idx] + best[rest & ~(1u << j)];
      if (cand > b + 1e-9 * std::max(1.0, std::abs(b))) {
        b = cand;
        c = static_cast<std::int8_t>(j);
      }
    }
    best[mask] = b;
    choice[mask] = c;
  }
  std::vector<std::size_t> out;
  for (std::uint32_t mask = full; mask;) {
    const int i = std::countr_zero(mask);
    const std::int8_t c = choice[mask];
    mask &= mask - 1;
    if (c >= 0) {
      out.push_back(which[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(c)]);
      mask &= ~(1u << c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Edmonds' weighted blossom algorithm, O(n^3), on integer weights. Returns
// mate[v] (or -1). Structure follows the classic primal-dual formulation
// with vertex and blossom dual variables and lazy best-edge bookkeeping.
class WeightedBlossom {
 public:
  struct IntEdge {
    int u;
    int v;
    std::int64_t w;
  };

  WeightedBlossom(int n, std::vector<IntEdge> edges)
      : nv_(n), edges_(std::move(edges)) {}

  std::vector<int> solve() {
    const int n = nv_;
    const int ne = static_cast<int>(edges_.size());
    if (ne == 0) return std::vector<int>(static_cast<std::size_t>(n), -1);
    std::int64_t maxw = 0;
    for (const auto& e : edges_) maxw = std::max(maxw, e.w);

    endpoint_.resize(2 * static_cast<std::size_t>(ne));
    for (int p = 0; p < 2 * ne; ++p) {
      endpoint_[idx(p)] = (p % 2 == 0) ? edges_[idx(p / 2)].u : edges_[idx(p / 2)].v;
    }
    neighbend_.assign(idx(n), {});
    for (int k = 0; k < ne; ++k) {
      neighbend_[idx(edges_[idx(k)].u)].push_back(2 * k + 1);
      neighbend_[idx(edges_[idx(k)].v)].push_back(2 * k);
    }
    mate_.assign(idx(n), -1);
    label_.assign(idx(2 * n), 0);
    labelend_.assign(idx(2 * n), -1);
    inblossom_.resize(idx(n));
    for (int i = 0; i < n; ++i) inblossom_[idx(i)] = i;
    blossomparent_.assign(idx(2 * n), -1);
    blossomchilds_.assign(idx(2 * n), {});
    blossombase_.assign(idx(2 * n), -1);
    for (int i = 0; i < n; ++i) blossombase_[idx(i)] = i;
    blossomendps_.assign(idx(2 * n), {});
    bestedge_.assign(idx(2 * n), -1);
    blossombestedges_.assign(idx(2 * n), {});
    has_bestedges_.assign(idx(2 * n), false);
    unusedblossoms_.clear();
    for (int b = n; b < 2 * n; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(idx(2 * n), 0);
    for (int i = 0; i < n; ++i) dualvar_[idx(i)] = maxw;
    allowedge_.assign(idx(ne), false);
    queue_.clear();

    for (int stage = 0; stage < n; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n; b < 2 * n; ++b) {
        blossombestedges_[idx(b)].clear();
        has_bestedges_[idx(b)] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < n; ++v) {
        if (mate_[idx(v)] == -1 && label_[idx(inblossom_[idx(v)])] == 0) assign_label(v, 1, -1);
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[idx(v)]) {
            int k = p / 2;
            int w = endpoint_[idx(p)];
            if (inblossom_[idx(v)] == inblossom_[idx(w)]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[idx(k)]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[idx(k)] = true;
            }
            if (allowedge_[idx(k)]) {
              if (label_[idx(inblossom_[idx(w)])] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[idx(inblossom_[idx(w)])] == 1) {
                int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[idx(w)] == 0) {
                label_[idx(w)] = 2;
                labelend_[idx(w)] = p ^ 1;
              }
            } else if (label_[idx(inblossom_[idx(w)])] == 1) {
              int b = inblossom_[idx(v)];
              if (bestedge_[idx(b)] == -1 || kslack < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = k;
            } else if (label_[idx(w)] == 0) {
              if (bestedge_[idx(w)] == -1 || kslack < slack(bestedge_[idx(w)])) bestedge_[idx(w)] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = 1;
        std::int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < n; ++v) {
          if (label_[idx(inblossom_[idx(v)])] == 0 && bestedge_[idx(v)] != -1) {
            std::int64_t d = slack(bestedge_[idx(v)]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[idx(v)];
            }
          }
        }
        for (int b = 0; b < 2 * n; ++b) {
          if (blossomparent_[idx(b)] == -1 && label_[idx(b)] == 1 && bestedge_[idx(b)] != -1) {
            std::int64_t d = slack(bestedge_[idx(b)]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[idx(b)];
            }
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1 && label_[idx(b)] == 2 &&
              dualvar_[idx(b)] < delta) {
            delta = dualvar_[idx(b)];
            deltatype = 4;
            deltablossom = b;
          }
        }
        for (int v = 0; v < n; ++v) {
          int l = label_[idx(inblossom_[idx(v)])];
          if (l == 1) {
            dualvar_[idx(v)] -= delta;
          } else if (l == 2) {
            dualvar_[idx(v)] += delta;
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1) {
            if (label_[idx(b)] == 1) {
              dualvar_[idx(b)] += delta;
            } else if (label_[idx(b)] == 2) {
              dualvar_[idx(b)] -= delta;
            }
          }
        }
        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[idx(deltaedge)] = true;
          int i = edges_[idx(deltaedge)].u;
          int j = edges_[idx(deltaedge)].v;
          if (label_[idx(inblossom_[idx(i)])] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[idx(deltaedge)] = true;
          queue_.push_back(edges_[idx(deltaedge)].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = n; b < 2 * n; ++b) {
        if (blossomparent_[idx(b)] == -1 && blossombase_[idx(b)] >= 0 && label_[idx(b)] == 1 &&
            dualvar_[idx(b)] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<int> out(idx(n), -1);
    for (int v = 0; v < n; ++v) {
      if (mate_[idx(v)] >= 0) out[idx(v)] = endpoint_[idx(mate_[idx(v)])];
    }
    return out;
  }

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  static int wrap(int j, std::size_t size) {
    const int s = static_cast<int>(size);
    return ((j % s) + s) % s;
  }

  std::int64_t slack(int k) const {
    const auto& e = edges_[idx(k)];
    return dualvar_[idx(e.u)] + dualvar_[idx(e.v)] - 2 * e.w;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[idx(b)]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    int b = inblossom_[idx(w)];
    label_[idx(w)] = label_[idx(b)] = t;
    labelend_[idx(w)] = labelend_[idx(b)] = p;
    bestedge_[idx(w)] = bestedge_[idx(b)] = -1;
    if (t == 1) {
      for (int v : leaves(b)) queue_.push_back(v);
    } else if (t == 2) {
      int base = blossombase_[idx(b)];
      assign_label(endpoint_[idx(mate_[idx(base)])], 1, mate_[idx(base)] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[idx(v)];
      if (label_[idx(b)] & 4) {
        base = blossombase_[idx(b)];
        break;
      }
      path.push_back(b);
      label_[idx(b)] = 5;
      if (labelend_[idx(b)] == -1) {
        v = -1;
      } else {
        v = endpoint_[idx(labelend_[idx(b)])];
        b = inblossom_[idx(v)];
        v = endpoint_[idx(labelend_[idx(b)])];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[idx(b)] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[idx(k)].u;
    int w = edges_[idx(k)].v;
    int bb = inblossom_[idx(base)];
    int bv = inblossom_[idx(v)];
    int bw = inblossom_[idx(w)];
    int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[idx(b)] = base;
    blossomparent_[idx(b)] = -1;
    blossomparent_[idx(bb)] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossomparent_[idx(bv)] = b;
      path.push_back(bv);
      endps.push_back(labelend_[idx(bv)]);
      v = endpoint_[idx(labelend_[idx(bv)])];
      bv = inblossom_[idx(v)];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[idx(bw)] = b;
      path.push_back(bw);
      endps.push_back(labelend_[idx(bw)] ^ 1);
      w = endpoint_[idx(labelend_[idx(bw)])];
      bw = inblossom_[idx(w)];
    }
    blossomchilds_[idx(b)] = path;
    blossomendps_[idx(b)] = endps;
    label_[idx(b)] = 1;
    labelend_[idx(b)] = labelend_[idx(bb)];
    dualvar_[idx(b)] = 0;
    for (int leaf : leaves(b)) {
      if (label_[idx(inblossom_[idx(leaf)])] == 2) queue_.push_back(leaf);
      inblossom_[idx(leaf)] = b;
    }
    std::vector<int> bestedgeto(idx(2 * nv_), -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[idx(child)]) {
        for (int leaf : leaves(child)) {
          std::vector<int> lst;
          for (int p : neighbend_[idx(leaf)]) lst.push_back(p / 2);
          nblists.push_back(std::move(lst));
        }
      } else {
        nblists.push_back(blossombestedges_[idx(child)]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[idx(kk)].u;
          int j = edges_[idx(kk)].v;
          if (inblossom_[idx(j)] == b) std::swap(i, j);
          int bj = inblossom_[idx(j)];
          if (bj != b && label_[idx(bj)] == 1 &&
              (bestedgeto[idx(bj)] == -1 || slack(kk) < slack(bestedgeto[idx(bj)]))) {
            bestedgeto[idx(bj)] = kk;
          }
        }
      }
      blossombestedges_[idx(child)].clear();
      has_bestedges_[idx(child)] = false;
      bestedge_[idx(child)] = -1;
    }
    auto& mine = blossombestedges_[idx(b)];
    mine.clear();
    for (int kk : bestedgeto) {
      if (kk != -1) mine.push_back(kk);
    }
    has_bestedges_[idx(b)] = true;
    bestedge_[idx(b)] = -1;
    for (int kk : mine) {
      if (bestedge_[idx(b)] == -1 || slack(kk) < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = kk;
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[idx(b)];
    for (int s : childs) {
      blossomparent_[idx(s)] = -1;
      if (s < nv_) {
        inblossom_[idx(s)] = s;
      } else if (endstage && dualvar_[idx(s)] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[idx(leaf)] = s;
      }
    }
    if (!endstage && label_[idx(b)] == 2) {
      const auto& ch = blossomchilds_[idx(b)];
      const auto& ep = blossomendps_[idx(b)];
      const std::size_t len = ch.size();
      int entrychild = inblossom_[idx(endpoint_[idx(labelend_[idx(b)] ^ 1)])];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= static_cast<int>(len);
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[idx(b)];
      while (j != 0) {
        label_[idx(endpoint_[idx(p ^ 1)])] = 0;
        label_[idx(endpoint_[idx(ep[idx(wrap(j - endptrick, len))] ^ endptrick ^ 1)])] = 0;
        assign_label(endpoint_[idx(p ^ 1)], 2, p);
        allowedge_[idx(ep[idx(wrap(j - endptrick, len))] / 2)] = true;
        j += jstep;
        p = ep[idx(wrap(j - endptrick, len))] ^ endptrick;
        allowedge_[idx(p / 2)] = true;
        j += jstep;
      }
      int bv = ch[idx(wrap(j, len))];
      label_[idx(endpoint_[idx(p ^ 1)])] = label_[idx(bv)] = 2;
      labelend_[idx(endpoint_[idx(p ^ 1)])] = labelend_[idx(bv)] = p;
      bestedge_[idx(bv)] = -1;
      j += jstep;
      while (ch[idx(wrap(j, len))] != entrychild) {
        bv = ch[idx(wrap(j, len))];
        if (label_[idx(bv)] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[idx(leaf)] != 0) {
            found = leaf;
            break;
          }
        }
        if (found != -1) {
          label_[idx(found)] = 0;
          label_[idx(endpoint_[idx(mate_[idx(blossombase_[idx(bv)])])])] = 0;
          assign_label(found, 2, labelend_[idx(found)]);
        }
        j += jstep;
      }
    }
    label_[idx(b)] = labelend_[idx(b)] = -1;
    blossomchilds_[idx(b)].clear();
    blossomendps_[idx(b)].clear();
    blossombase_[idx(b)] = -1;
    blossombestedges_[idx(b)].clear();
    has_bestedges_[idx(b)] = false;
    bestedge_[idx(b)] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[idx(t)] != b) t = blossomparent_[idx(t)];
    if (t >= nv_) augment_blossom(t, v);
    auto& ch = blossomchilds_[idx(b)];
    auto& ep = blossomendps_[idx(b)];
    const std::size_t len = ch.size();
    int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= static_cast<int>(len);
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = ch[idx(wrap(j, len))];
      int p = ep[idx(wrap(j - endptrick, len))] ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[idx(p)]);
      j += jstep;
      t = ch[idx(wrap(j, len))];
      if (t >= nv_) augment_blossom(t, endpoint_[idx(p ^ 1)]);
      mate_[idx(endpoint_[idx(p)])] = p ^ 1;
      mate_[idx(endpoint_[idx(p ^ 1)])] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[idx(b)] = blossombase_[idx(ch[0])];
  }

  void augment_matching(int k) {
    const int v0 = edges_[idx(k)].u;
    const int w0 = edges_[idx(k)].v;
    const int starts[2][2] = {{v0, 2 * k + 1}, {w0, 2 * k}};
    for (const auto& sp : starts) {
      int s = sp[0];
      int p = sp[1];
      while (true) {
        int bs = inblossom_[idx(s)];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[idx(s)] = p;
        if (labelend_[idx(bs)] == -1) break;
        int t = endpoint_[idx(labelend_[idx(bs)])];
        int bt = inblossom_[idx(t)];
        s = endpoint_[idx(labelend_[idx(bt)])];
        int j = endpoint_[idx(labelend_[idx(bt)] ^ 1)];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[idx(j)] = labelend_[idx(bt)];
        p = labelend_[idx(bt)] ^ 1;
      }
    }
  }

  int nv_;
  std::vector<IntEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

// Weights are quantised to integers relative to the heaviest edge so the
// dual updates stay exact.
inline std::vector<std::size_t> matching_by_blossom(int n, std::span<const MatchEdge> edges) {
  double maxw = 0.0;
  for (const auto& e : edges) maxw = std::max(maxw, e.weight);
  if (!(maxw > 0.0)) return {};
  const double scale = static_cast<double>(std::int64_t{1} << 40) / maxw;

  // Collapse parallel edges to the heaviest (first on ties).
  std::vector<std::size_t> kept;
  std::vector<WeightedBlossom::IntEdge> ints;
  {
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
      int a = std::min(edges[i].u, edges[i].v);
      int b = std::max(edges[i].u, edges[i].v);
      return std::pair{a, b};
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (key(x) != key(y)) return key(x) < key(y);
      return edges[x].weight > edges[y].weight;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      std::size_t i = order[pos];
      if (pos > 0 && key(order[pos - 1]) == key(i)) continue;
      if (!(edges[i].weight > 0.0)) continue;
      kept.push_back(i);
      ints.push_back({edges[i].u, edges[i].v, std::llround(edges[i].weight * scale)});
    }
  }
  std::vector<int> mate = WeightedBlossom(n, ints).solve();
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ints.size(); ++k) {
    if (mate[static_cast<std::size_t>(ints[k].u)] == ints[k].v) out.push_back(kept[k]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Largest graph handled by the exact subset programme.
inline constexpr int kSubsetMatchingLimit = 20;

// Maximum-weight matching on vertices 0..n-1 (parallel edges allowed).
// Returns the indices of the selected edges, sorted.
inline std::vector<std::size_t> max_weight_matching(int n, std::span<const MatchEdge> edges) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw ContractError("matching edge endpoints out of range");
    }
  }
  if (n <= 1 || edges.empty()) return {};
  if (n <= kSubsetMatchingLimit) return detail::matching_by_subsets(n, edges);
  return detail::matching_by_blossom(n, edges);
}

}  // namespace nc11
