#pragma once

// The scalar tower Exact -> CouplingSeries -> RegulatorLaurent and the
// handful of free functions generic code relies on.

#include <uvqft/coupling_series.hpp>
#include <uvqft/exact_complex.hpp>
#include <uvqft/regulator_laurent.hpp>

#include <concepts>
#include <type_traits>

namespace uvqft {

template <class S>
concept Scalar = requires(S a, const S& b, long k) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { is_zero(b) } -> std::convertible_to<bool>;
  { conj(b) } -> std::convertible_to<S>;
  { mul_int(a, k) } -> std::convertible_to<S>;
  { div_int(a, k) } -> std::convertible_to<S>;
  { is_nilpotent(b) } -> std::convertible_to<bool>;
};

template <class S>
inline constexpr int scalar_rank = -1;
template <>
inline constexpr int scalar_rank<ExactComplex> = 0;
template <>
inline constexpr int scalar_rank<CouplingSeries> = 1;
template <>
inline constexpr int scalar_rank<RegulatorLaurent> = 2;

/// True when values of From embed into To along the tower.
template <class From, class To>
inline constexpr bool liftable = scalar_rank<From> >= 0 && scalar_rank<From> <= scalar_rank<To>;

template <class To, class From>
  requires liftable<From, To>
To lift(const From& x) {
  if constexpr (std::is_same_v<From, To>) {
    return x;
  } else if constexpr (std::is_same_v<To, RegulatorLaurent> && std::is_same_v<From, ExactComplex>) {
    return RegulatorLaurent(CouplingSeries(x));
  } else {
    return To(x);
  }
}

inline const char* scalar_kind_name(int rank) {
  switch (rank) {
    case 0: return "exact";
    case 1: return "series";
    case 2: return "laurent";
    default: return "unknown";
  }
}

}  // namespace uvqft
