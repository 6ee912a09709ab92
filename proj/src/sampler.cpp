#include "latdec/sampler.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace latdec {

MarkovState::MarkovState(const LatinSquare& start)
    : n_(start.order()), cube_(static_cast<std::size_t>(n_) * n_ * n_, 0) {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) cube_[index(r, c, start.at(r, c))] = 1;
}

// Adds +1 on the corners of the 2x2x2 subcube with an even number of primed
// coordinates and -1 on the rest; (r, c, s) gains +1.
void MarkovState::flip(int r, int c, int s, int r2, int c2, int s2) {
  ++cube_[index(r, c, s)];
  ++cube_[index(r, c2, s2)];
  ++cube_[index(r2, c, s2)];
  ++cube_[index(r2, c2, s)];
  --cube_[index(r, c, s2)];
  --cube_[index(r, c2, s)];
  --cube_[index(r2, c, s)];
  --cube_[index(r2, c2, s2)];
  if (cube_[index(r2, c2, s2)] < 0) {
    improper_ = Improper{r2, c2, s2};
  } else {
    improper_.reset();
  }
}

void MarkovState::step(SeededRng& rng) {
  const int n = n_;
  if (n < 2) return;
  if (!improper_) {
    const int r = rng.below(n);
    const int c = rng.below(n);
    int cur = 0;
    while (cube_[index(r, c, cur)] != 1) ++cur;
    int s = rng.below(n - 1);
    if (s >= cur) ++s;
    int r2 = 0, c2 = 0;
    while (cube_[index(r2, c, s)] != 1) ++r2;
    while (cube_[index(r, c2, s)] != 1) ++c2;
    flip(r, c, s, r2, c2, cur);
    return;
  }
  const auto [r, c, s] = *improper_;
  std::array<int, 2> syms{}, rows{}, cols{};
  int ks = 0, kr = 0, kc = 0;
  for (int i = 0; i < n; ++i) {
    if (cube_[index(r, c, i)] == 1) syms[ks++] = i;
    if (cube_[index(i, c, s)] == 1) rows[kr++] = i;
    if (cube_[index(r, i, s)] == 1) cols[kc++] = i;
  }
  flip(r, c, s, rows[rng.below(2)], cols[rng.below(2)], syms[rng.below(2)]);
}

std::optional<std::string> MarkovState::check_invariants() const {
  const int n = n_;
  int negatives = 0;
  for (int8_t v : cube_) {
    if (v < -1 || v > 1) return "entry outside {-1,0,1}";
    if (v == -1) ++negatives;
  }
  if (negatives > 1) return "more than one -1 entry";
  if ((negatives == 1) != improper_.has_value()) return "improper flag disagrees with the cube";
  if (improper_ && entry(improper_->r, improper_->c, improper_->s) != -1)
    return "improper cell does not hold -1";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int rc = 0, rs = 0, cs = 0;
      for (int k = 0; k < n; ++k) {
        rc += entry(a, b, k);
        rs += entry(a, k, b);
        cs += entry(k, a, b);
      }
      if (rc != 1 || rs != 1 || cs != 1) return "line sum differs from 1";
    }
  }
  return std::nullopt;
}

LatinSquare MarkovState::square() const {
  if (improper_) throw std::logic_error("improper state has no square");
  std::vector<int> cells(static_cast<std::size_t>(n_) * n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      int s = 0;
      while (entry(r, c, s) != 1) ++s;
      cells[static_cast<std::size_t>(r) * n_ + c] = s;
    }
  return LatinSquare::from_flat(n_, std::move(cells));
}

MarkovState jm_step(MarkovState state, SeededRng& rng) {
  state.step(rng);
  return state;
}

namespace {

void advance_proper(MarkovState& st, SeededRng& rng, std::uint64_t visits) {
  if (st.order() < 2) return;
  for (std::uint64_t seen = 0; seen < visits;) {
    st.step(rng);
    if (st.is_proper()) ++seen;
  }
}

}  // namespace

LatinSquare sample_uniform(int n, SeededRng& rng, std::uint64_t burnin) {
  MarkovState st(LatinSquare::cyclic(n));
  advance_proper(st, rng, burnin);
  return st.square();
}

std::vector<LatinSquare> sample_many(int n, SeededRng& rng, std::uint64_t burnin,
                                     std::uint64_t thin, std::size_t count) {
  std::vector<LatinSquare> out;
  out.reserve(count);
  MarkovState st(LatinSquare::cyclic(n));
  for (std::size_t i = 0; i < count; ++i) {
    advance_proper(st, rng, i == 0 ? burnin : thin);
    out.push_back(st.square());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Fills the cells marked -1 in row-major order.
struct Filler {
  int n;
  std::vector<int> cells;
  std::vector<std::uint32_t> row_used, col_used;
  const std::function<bool(const LatinSquare&)>& visit;

  bool run(int pos) {
    const int total = n * n;
    while (pos < total && cells[pos] >= 0) ++pos;
    if (pos == total) return visit(LatinSquare::from_flat(n, cells));
    const int r = pos / n, c = pos % n;
    for (std::uint32_t m = ~(row_used[r] | col_used[c]) & ((1u << n) - 1); m; m &= m - 1) {
      const int s = std::countr_zero(m);
      cells[pos] = s;
      row_used[r] |= 1u << s;
      col_used[c] |= 1u << s;
      const bool go = run(pos + 1);
      row_used[r] &= ~(1u << s);
      col_used[c] &= ~(1u << s);
      cells[pos] = -1;
      if (!go) return false;
    }
    return true;
  }
};

void fill(int n, std::vector<int> preset, const std::function<bool(const LatinSquare&)>& visit) {
  Filler f{n, std::move(preset), std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 0),
           visit};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int s = f.cells[r * n + c];
      if (s < 0) continue;
      f.row_used[r] |= 1u << s;
      f.col_used[c] |= 1u << s;
    }
  f.run(0);
}

}  // namespace

void for_each_reduced(int n, const std::function<bool(const LatinSquare&)>& visit) {
  if (n < 1 || n > kMaxReducedOrder) {
    throw InvalidInput("reduced enumeration supports orders 1.." + std::to_string(kMaxReducedOrder));
  }
  std::vector<int> preset(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    preset[i] = i;
    preset[i * n] = i;
  }
  fill(n, std::move(preset), visit);
}

std::vector<LatinSquare> enumerate_reduced(int n) {
  std::vector<LatinSquare> out;
  for_each_reduced(n, [&](const LatinSquare& ls) {
    out.push_back(ls);
    return true;
  });
  return out;
}

void for_each_latin_square(int n, const std::function<bool(const LatinSquare&)>& visit) {
  if (n < 1 || n > kMaxAllOrder) {
    throw InvalidInput("full enumeration supports orders 1.." + std::to_string(kMaxAllOrder));
  }
  fill(n, std::vector<int>(static_cast<std::size_t>(n) * n, -1), visit);
}

std::vector<LatinSquare> enumerate_all(int n) {
  std::vector<LatinSquare> out;
  for_each_latin_square(n, [&](const LatinSquare& ls) {
    out.push_back(ls);
    return true;
  });
  return out;
}

}  // namespace latdec
