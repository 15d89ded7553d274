#ifndef VDWFLUCT_SCALAR_HPP
#define VDWFLUCT_SCALAR_HPP

// Minimal customization point shared by every scalar the kernels are
// instantiated with (double, long double, mpq_class, Jet<...>,
// RationalFunction<...>).

namespace vdw {

template <typename S>
struct ScalarTraits {
  static bool is_zero(const S& s) { return s == S(0); }
  static double to_double(const S& s) { return static_cast<double>(s); }
};

template <typename S>
bool scalar_is_zero(const S& s) {
  return ScalarTraits<S>::is_zero(s);
}

template <typename S>
double scalar_to_double(const S& s) {
  return ScalarTraits<S>::to_double(s);
}

}  // namespace vdw

#endif  // VDWFLUCT_SCALAR_HPP
