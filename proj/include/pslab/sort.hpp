#pragma once

#include <chrono>
#include <cstddef>
#include <iterator>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pslab/op_counter.hpp"

namespace pslab {

namespace detail {

template <typename T>
bool counted_less(const T& x, const T& y, OpCounter& c) {
  ++c.comparisons;
  return x < y;
}

template <typename T>
void counted_swap(T& x, T& y, OpCounter& c) {
  using std::swap;
  swap(x, y);
  ++c.swaps;
}

// Heap ordering used by the sift routines. A max-heap keeps the largest key
// at the root, a min-heap the smallest.
enum class HeapOrder { Max, Min };

template <HeapOrder Order, typename T>
bool outranks(const T& x, const T& y, OpCounter& c) {
  if constexpr (Order == HeapOrder::Max) {
    return counted_less(y, x, c);
  } else {
    return counted_less(x, y, c);
  }
}

// Hole-based sift-down over the heap stored at `heap[0, n)`. Each level
// costs two comparisons (sibling vs sibling, winner vs item); lifting a child
// is one move, and taking the item out and putting it back is two more moves
// when the item actually travels.
template <HeapOrder Order, std::random_access_iterator It>
void sift_down(It heap, std::size_t n, std::size_t i, OpCounter& c) {
  using T = std::iter_value_t<It>;
  std::size_t hole = i;
  std::optional<T> item;
  for (;;) {
    std::size_t child = 2 * hole + 1;
    if (child >= n) break;
    if (child + 1 < n && outranks<Order>(heap[child + 1], heap[child], c)) {
      ++child;
    }
    const T& current = item ? *item : heap[i];
    if (!outranks<Order>(heap[child], current, c)) break;
    if (!item) item.emplace(std::move(heap[i]));
    heap[hole] = std::move(heap[child]);
    ++c.moves;
    hole = child;
  }
  if (item) {
    heap[hole] = std::move(*item);
    c.moves += 2;
  }
}

template <HeapOrder Order, std::random_access_iterator It>
void make_heap(It heap, std::size_t n, OpCounter& c) {
  for (std::size_t i = n / 2; i-- > 0;) {
    sift_down<Order>(heap, n, i, c);
  }
}

}  // namespace detail

/// Rearranges `a` so that every key in `a[0, k)` is <= every key in
/// `a[k, n)` where `k = n / 2`, and returns `k`.
///
/// The left block becomes a max-heap and the right block a min-heap, with
/// both roots at the boundary: the left heap is laid out mirrored, node `i`
/// at `a[k - 1 - i]`, and the right heap's node `i` at `a[k + i]`. While the
/// left root exceeds the right root the two roots are exchanged and both
/// heaps repaired. A key crosses the boundary at most once, so at most
/// `min(k, n - k)` exchanges happen, each costing O(log n).
///
/// In this layout an ascending block is already a valid heap on both sides,
/// so sorted input is left untouched and the recursion keeps seeing sorted
/// blocks: linear work per level on the best case.
template <typename T>
std::size_t partition(std::span<T> a, OpCounter& c) {
  const std::size_t k = a.size() / 2;
  if (a.size() < 2) return k;

  const auto boundary = a.begin() + static_cast<std::ptrdiff_t>(k);
  const auto left = std::make_reverse_iterator(boundary);
  const auto right = boundary;
  const std::size_t right_size = a.size() - k;

  detail::make_heap<detail::HeapOrder::Max>(left, k, c);
  detail::make_heap<detail::HeapOrder::Min>(right, right_size, c);

  while (detail::counted_less(*right, *left, c)) {
    detail::counted_swap(*left, *right, c);
    detail::sift_down<detail::HeapOrder::Max>(left, k, 0, c);
    detail::sift_down<detail::HeapOrder::Min>(right, right_size, 0, c);
  }
  return k;
}

/// Partition Sort: split into floor(n/2) / ceil(n/2) blocks with `partition`,
/// then sort each block. Recursion depth is ceil(log2 n).
template <typename T>
void partition_sort(std::span<T> a, OpCounter& c) {
  if (a.size() <= 1) return;
  const std::size_t k = partition(a, c);
  partition_sort(a.first(k), c);
  partition_sort(a.subspan(k), c);
}

/// Textbook quicksort: last element as pivot, Lomuto partition. Recurses on
/// the smaller side and loops on the larger so the stack stays O(log n) even
/// on the quadratic inputs (sorted, all-equal). Self-swaps are not performed
/// and not counted.
template <typename T>
void quick_sort(std::span<T> a, OpCounter& c) {
  while (a.size() > 1) {
    const std::size_t last = a.size() - 1;
    std::size_t store = 0;
    for (std::size_t j = 0; j < last; ++j) {
      if (!detail::counted_less(a[last], a[j], c)) {
        if (store != j) detail::counted_swap(a[store], a[j], c);
        ++store;
      }
    }
    if (store != last) detail::counted_swap(a[store], a[last], c);

    auto lower = a.first(store);
    auto upper = a.subspan(store + 1);
    if (lower.size() < upper.size()) {
      quick_sort(lower, c);
      a = upper;
    } else {
      quick_sort(upper, c);
      a = lower;
    }
  }
}

/// Heapsort with Floyd's bottom-up heap construction.
template <typename T>
void heap_sort(std::span<T> a, OpCounter& c) {
  if (a.size() <= 1) return;
  detail::make_heap<detail::HeapOrder::Max>(a.begin(), a.size(), c);
  for (std::size_t end = a.size() - 1; end > 0; --end) {
    detail::counted_swap(a[0], a[end], c);
    detail::sift_down<detail::HeapOrder::Max>(a.begin(), end, 0, c);
  }
}

enum class Algorithm { Partition, Quick, Heap };

constexpr std::string_view to_string(Algorithm alg) noexcept {
  switch (alg) {
    case Algorithm::Partition: return "partition";
    case Algorithm::Quick: return "quick";
    case Algorithm::Heap: return "heap";
  }
  return "unknown";
}

constexpr std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "partition") return Algorithm::Partition;
  if (name == "quick") return Algorithm::Quick;
  if (name == "heap") return Algorithm::Heap;
  return std::nullopt;
}

template <typename T>
void sort_in_place(Algorithm alg, std::span<T> a, OpCounter& c) {
  switch (alg) {
    case Algorithm::Partition: partition_sort(a, c); break;
    case Algorithm::Quick: quick_sort(a, c); break;
    case Algorithm::Heap: heap_sort(a, c); break;
  }
}

template <typename T>
struct SortOutcome {
  std::vector<T> keys;
  OpCounter counter;
  double elapsed_s{0.0};
};

/// Sorts `keys` with `alg`, timing only the sort call on a monotonic clock.
template <typename T>
SortOutcome<T> timed_sort(Algorithm alg, std::vector<T> keys) {
  SortOutcome<T> out{std::move(keys), {}, 0.0};
  const auto start = std::chrono::steady_clock::now();
  sort_in_place(alg, std::span<T>(out.keys), out.counter);
  const auto stop = std::chrono::steady_clock::now();
  out.elapsed_s = std::chrono::duration<double>(stop - start).count();
  return out;
}

}  // namespace pslab
