#pragma once

// Index-space kernels used by every grid scan. Each kernel has a serial
// reference and an OpenMP version; both return identical results (ties and
// exceptions resolve to the lowest index), which test_parallel checks.

#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#include <omp.h>

namespace multicubic {

enum class Exec { serial, parallel };

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

template <class Key>
struct ArgMax {
  Key value{};
  std::size_t index = npos;

  bool found() const { return index != npos; }
};

namespace detail {

template <class Key>
void merge_argmax(ArgMax<Key>& best, const ArgMax<Key>& other) {
  if (!other.found()) return;
  if (!best.found() || best.value < other.value ||
      (!(other.value < best.value) && other.index < best.index)) {
    best = other;
  }
}

struct FirstError {
  std::size_t index = npos;
  std::exception_ptr error;

  void record(std::size_t i, std::exception_ptr e) {
    if (i < index) {
      index = i;
      error = std::move(e);
    }
  }
  void merge(const FirstError& other) { record(other.index, other.error); }
};

}  // namespace detail

/// key(i) returns std::optional<Key>; std::nullopt skips index i.
template <class Key, class F>
ArgMax<Key> argmax_serial(std::size_t count, F&& key) {
  ArgMax<Key> best;
  for (std::size_t i = 0; i < count; ++i) {
    std::optional<Key> k = key(i);
    if (k && (!best.found() || best.value < *k)) {
      best.value = std::move(*k);
      best.index = i;
    }
  }
  return best;
}

template <class Key, class F>
ArgMax<Key> argmax_parallel(std::size_t count, F&& key) {
  ArgMax<Key> best;
  detail::FirstError failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel
  {
    ArgMax<Key> local;
    detail::FirstError local_failure;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      if (i > local_failure.index) continue;
      try {
        std::optional<Key> k = key(i);
        if (k && (!local.found() || local.value < *k)) {
          local.value = std::move(*k);
          local.index = i;
        }
      } catch (...) {
        local_failure.record(i, std::current_exception());
      }
    }
#pragma omp critical(multicubic_argmax_merge)
    {
      detail::merge_argmax(best, local);
      failure.merge(local_failure);
    }
  }
  if (failure.error) std::rethrow_exception(failure.error);
  return best;
}

template <class Key, class F>
ArgMax<Key> argmax(Exec exec, std::size_t count, F&& key) {
  return exec == Exec::serial ? argmax_serial<Key>(count, key) : argmax_parallel<Key>(count, key);
}

/// out[i] = fn(i), in index order.
template <class T, class F>
std::vector<T> map_indices_serial(std::size_t count, F&& fn) {
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

template <class T, class F>
std::vector<T> map_indices_parallel(std::size_t count, F&& fn) {
  std::vector<std::optional<T>> slots(count);
  detail::FirstError failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel
  {
    detail::FirstError local_failure;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        local_failure.record(i, std::current_exception());
      }
    }
#pragma omp critical(multicubic_map_merge)
    failure.merge(local_failure);
  }
  if (failure.error) std::rethrow_exception(failure.error);
  std::vector<T> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

template <class T, class F>
std::vector<T> map_indices(Exec exec, std::size_t count, F&& fn) {
  return exec == Exec::serial ? map_indices_serial<T>(count, fn) : map_indices_parallel<T>(count, fn);
}

}  // namespace multicubic
