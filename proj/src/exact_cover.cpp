#include "latdec/exact_cover.hpp"

#include <limits>
#include <stdexcept>

namespace latdec {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::Undecided: return "undecided";
  }
  return "?";
}

ExactCover::ExactCover(int num_items) : num_items_(num_items) {
  const auto headers = num_items + 1;
  left_.resize(headers);
  right_.resize(headers);
  up_.resize(headers);
  down_.resize(headers);
  top_.assign(headers, 0);  // for headers: the live option count
  option_of_.assign(headers, -1);
  for (int i = 0; i <= num_items; ++i) {
    left_[i] = i == 0 ? num_items : i - 1;
    right_[i] = i == num_items ? 0 : i + 1;
    up_[i] = down_[i] = i;
  }
}

int ExactCover::add_option(std::span<const int> items) {
  if (items.empty()) throw std::invalid_argument("empty option");
  const int id = num_options_++;
  int first = -1;
  for (int item : items) {
    if (item < 0 || item >= num_items_) throw std::out_of_range("exact cover item out of range");
    const int header = item + 1;
    const int node = static_cast<int>(left_.size());
    top_.push_back(header);
    option_of_.push_back(id);
    // vertical: append at the bottom of the item's list
    const int last = up_[header];
    up_.push_back(last);
    down_.push_back(header);
    down_[last] = node;
    up_[header] = node;
    ++top_[header];
    // horizontal: circular list within the option
    if (first < 0) {
      first = node;
      left_.push_back(node);
      right_.push_back(node);
    } else {
      const int prev = left_[first];
      left_.push_back(prev);
      right_.push_back(first);
      right_[prev] = node;
      left_[first] = node;
    }
  }
  return id;
}

namespace {

// Working copy of the link arrays; search mutates it and restores on backtrack.
struct Links {
  std::vector<int> L, R, U, D, top, opt;
  std::vector<int> size;  // per header

  void cover(int c) {
    L[R[c]] = L[c];
    R[L[c]] = R[c];
    for (int i = D[c]; i != c; i = D[i]) {
      for (int j = R[i]; j != i; j = R[j]) {
        U[D[j]] = U[j];
        D[U[j]] = D[j];
        --size[top[j]];
      }
    }
  }

  void uncover(int c) {
    for (int i = U[c]; i != c; i = U[i]) {
      for (int j = L[i]; j != i; j = L[j]) {
        ++size[top[j]];
        U[D[j]] = j;
        D[U[j]] = j;
      }
    }
    L[R[c]] = c;
    R[L[c]] = c;
  }

  int choose() const {
    int best = -1;
    int best_size = std::numeric_limits<int>::max();
    for (int c = R[0]; c != 0; c = R[c]) {
      if (size[c] < best_size) {
        best = c;
        best_size = size[c];
        if (best_size == 0) break;
      }
    }
    return best;
  }
};

struct Searcher {
  Links& x;
  std::uint64_t budget;
  std::uint64_t limit;  // solutions wanted
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  bool out_of_budget = false;
  std::vector<int> stack;
  std::vector<int> first_solution;

  // Returns true to stop the search.
  bool run() {
    if (x.R[0] == 0) {
      if (solutions++ == 0) {
        for (int node : stack) first_solution.push_back(x.opt[node]);
      }
      return solutions >= limit;
    }
    const int c = x.choose();
    if (x.size[c] == 0) return false;
    x.cover(c);
    bool stop = false;
    for (int r = x.D[c]; r != c && !stop;
         r = x.D[r]) {
      if (++nodes > budget) {
        out_of_budget = true;
        stop = true;
        break;
      }
      stack.push_back(r);
      for (int j = x.R[r]; j != r; j = x.R[j])
        x.cover(x.top[j]);
      stop = run();
      for (int j = x.L[r]; j != r; j = x.L[j])
        x.uncover(x.top[j]);
      stack.pop_back();
    }
    x.uncover(c);
    return stop;
  }
};

}  // namespace

ExactCover::Result ExactCover::solve(std::uint64_t node_budget) const {
  Links x{left_, right_, up_, down_, top_, option_of_, {}};
  x.size.assign(num_items_ + 1, 0);
  for (int i = 1; i <= num_items_; ++i) x.size[i] = top_[i];
  Searcher s{x, node_budget, 1, 0, 0, false, {}, {}};
  s.run();
  Result res;
  res.nodes = s.nodes;
  if (s.solutions > 0) {
    res.status = SearchStatus::Found;
    res.options = std::move(s.first_solution);
  } else {
    res.status = s.out_of_budget ? SearchStatus::Undecided : SearchStatus::None;
  }
  return res;
}

std::uint64_t ExactCover::count(std::uint64_t limit) const {
  Links x{left_, right_, up_, down_, top_, option_of_, {}};
  x.size.assign(num_items_ + 1, 0);
  for (int i = 1; i <= num_items_; ++i) x.size[i] = top_[i];
  Searcher s{x, std::numeric_limits<std::uint64_t>::max(), limit, 0, 0, false, {}, {}};
  s.run();
  return s.solutions;
}

}  // namespace latdec
