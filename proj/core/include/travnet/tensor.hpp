#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "travnet/common.hpp"
#include "travnet/rng.hpp"

namespace travnet::nn {

// Live/peak tensor memory, fed by the counting allocator below. The peak is
// what the benchmark module reports as activation memory.
struct MemoryStats {
  static std::atomic<std::size_t> live_bytes;
  static std::atomic<std::size_t> peak_bytes;

  static void note_alloc(std::size_t bytes) {
    std::size_t now = live_bytes.fetch_add(bytes) + bytes;
    std::size_t prev = peak_bytes.load();
    while (prev < now && !peak_bytes.compare_exchange_weak(prev, now)) {
    }
  }
  static void note_free(std::size_t bytes) { live_bytes.fetch_sub(bytes); }
  static void reset_peak() { peak_bytes.store(live_bytes.load()); }
};

inline std::atomic<std::size_t> MemoryStats::live_bytes{0};
inline std::atomic<std::size_t> MemoryStats::peak_bytes{0};

template <typename T>
struct CountingAllocator {
  using value_type = T;
  CountingAllocator() = default;
  template <typename U>
  CountingAllocator(const CountingAllocator<U>&) {}

  T* allocate(std::size_t n) {
    MemoryStats::note_alloc(n * sizeof(T));
    return static_cast<T*>(::operator new(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t n) {
    MemoryStats::note_free(n * sizeof(T));
    ::operator delete(p);
  }
  bool operator==(const CountingAllocator&) const { return true; }
};

// Dense row-major tensor. Rank is small (<= 4 in practice: NCHW activations,
// [out,in] weight matrices, flat vectors). Scalar type is templated so the
// same layer code runs in float for training and double for finite-difference
// gradient checks.
template <typename S>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> dims) : dims_(std::move(dims)) {
    data_.assign(count(dims_), S(0));
  }
  Tensor(std::initializer_list<int> dims) : Tensor(std::vector<int>(dims)) {}

  static Tensor zeros(std::vector<int> dims) { return Tensor(std::move(dims)); }

  static Tensor randn(std::vector<int> dims, Rng& rng, double mean = 0.0,
                      double stddev = 1.0) {
    Tensor t(std::move(dims));
    for (auto& v : t.data_) v = static_cast<S>(rng.normal(mean, stddev));
    return t;
  }

  static Tensor uniform(std::vector<int> dims, Rng& rng, double lo, double hi) {
    Tensor t(std::move(dims));
    for (auto& v : t.data_) v = static_cast<S>(rng.uniform(lo, hi));
    return t;
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& dims() const { return dims_; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  S* data() { return data_.data(); }
  const S* data() const { return data_.data(); }
  S& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }
  const S& operator[](std::int64_t i) const {
    return data_[static_cast<std::size_t>(i)];
  }

  // Reshape in place; the element count must match.
  Tensor& reshape(std::vector<int> dims) {
    if (count(dims) != size())
      fail_contract("tensor reshape: element count mismatch (" +
                    shape_string() + " -> " + shape_string(dims) + ")");
    dims_ = std::move(dims);
    return *this;
  }

  void fill(S v) { std::fill(data_.begin(), data_.end(), v); }

  void add_scaled(const Tensor& other, S scale) {
    check_same_shape(other);
    for (std::int64_t i = 0; i < size(); ++i) data_[i] += scale * other[i];
  }

  void scale(S s) {
    for (auto& v : data_) v *= s;
  }

  S sum() const {
    S acc = 0;
    for (const auto& v : data_) acc += v;
    return acc;
  }

  S abs_mean() const {
    if (data_.empty()) return 0;
    S acc = 0;
    for (const auto& v : data_) acc += std::abs(v);
    return acc / static_cast<S>(data_.size());
  }

  bool all_finite() const {
    for (const auto& v : data_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  template <typename U>
  Tensor<U> cast() const {
    Tensor<U> out(dims_);
    for (std::int64_t i = 0; i < size(); ++i) out[i] = static_cast<U>(data_[i]);
    return out;
  }

  void check_same_shape(const Tensor& other) const {
    if (dims_ != other.dims_)
      fail_contract("tensor shape mismatch: " + shape_string() + " vs " +
                    other.shape_string());
  }

  std::string shape_string() const { return shape_string(dims_); }

  static std::string shape_string(const std::vector<int>& dims) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dims.size(); ++i)
      os << (i ? "x" : "") << dims[i];
    os << "]";
    return os.str();
  }

 private:
  static std::int64_t count(const std::vector<int>& dims) {
    std::int64_t n = 1;
    for (int d : dims) {
      if (d < 0) fail_contract("tensor dimension must be non-negative");
      n *= d;
    }
    return n;
  }

  std::vector<int> dims_;
  std::vector<S, CountingAllocator<S>> data_;
};

// FNV-1a over the raw bytes of a tensor list; used by freeze tests and the
// checkpoint round-trip checks.
template <typename S>
std::uint64_t content_hash(const Tensor<S>& t, std::uint64_t h = 1469598103934665603ull) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(t.data());
  for (std::int64_t i = 0; i < t.size() * static_cast<std::int64_t>(sizeof(S)); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace travnet::nn
