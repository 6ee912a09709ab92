#pragma once

// Dancing-links exact cover over primary items only.

#include <cstdint>
#include <span>
#include <vector>

namespace latdec {

enum class SearchStatus { Found, None, Undecided };

const char* to_string(SearchStatus s);

class ExactCover {
 public:
  explicit ExactCover(int num_items);

  /// Adds an option covering the given items (distinct, in [0, num_items)).
  /// Returns its index.
  int add_option(std::span<const int> items);

  int num_items() const { return num_items_; }
  int num_options() const { return num_options_; }

  struct Result {
    SearchStatus status = SearchStatus::None;
    std::vector<int> options;  // the cover, in selection order, if Found
    std::uint64_t nodes = 0;
  };

  /// First exact cover found. Branches on the uncovered item with the fewest
  /// remaining options, ties to the lowest item index. Each option tried
  /// counts as one node; exceeding `node_budget` yields Undecided.
  Result solve(std::uint64_t node_budget) const;

  /// Number of exact covers, stopping once `limit` is reached.
  std::uint64_t count(std::uint64_t limit) const;

 private:
  int num_items_;
  int num_options_ = 0;
  // Item headers occupy nodes [0, num_items]; node 0 is the root.
  std::vector<int> left_, right_, up_, down_, top_, option_of_;
};

}  // namespace latdec
