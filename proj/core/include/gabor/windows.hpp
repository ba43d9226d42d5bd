#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gabor/numerics.hpp"

namespace gabor {

/// One term a / (t - i w)^j of a rational window.
struct PoleTerm {
  cplx a{1.0, 0.0};
  cplx w{1.0, 0.0};
  int j = 1;

  friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

/// All multiplicities equal one; the values e^{2 pi w_k} are pairwise distinct.
struct SimpleWindow {
  std::vector<PoleTerm> terms;
  std::size_t N() const noexcept { return terms.size(); }
};

/// Arbitrary multiplicities, sorted ascending; distinct pole parameters.
struct GeneralWindow {
  std::vector<PoleTerm> terms;
  std::size_t N() const noexcept { return terms.size(); }
  int M() const noexcept;
};

using Window = std::variant<SimpleWindow, GeneralWindow>;

inline constexpr double kPoleTolerance = 1e-12;
inline constexpr double kMaxExponent = 40.0;  // bound on |2 pi Re w|

/// Checks the pole data and classifies it. Throws gabor::Error.
Window validate(std::vector<PoleTerm> spec);

/// validate() followed by a check that the result is simple.
SimpleWindow validate_simple(std::vector<PoleTerm> spec);

/// Same poles seen as a general window (multiplicities kept, sorted).
GeneralWindow as_general(const Window& w);

std::span<const PoleTerm> terms_of(const Window& w);
int total_multiplicity(const Window& w);

cplx eval_window(std::span<const PoleTerm> terms, double t);
cplx eval_window(const Window& w, double t);

struct ClassTestOptions {
  double t_max = 50.0;
  int steps = 20000;
  double atol = 1e-12;  // threshold on the scale-free modulus
  double rtol = 1e-3;   // dips below rtol * local max trigger refinement
};

struct MembershipReport {
  bool member = true;
  std::optional<double> witness;
  double min_modulus = 0.0;
  double min_location = 0.0;
  // true when a dominance bound shows the test function cannot vanish on (-inf, -t_max]
  bool tail_certified = false;
};

/// Phi(t) = sum_k a_k e^{2 pi w_k t} (2 pi i)^{j_k-1}/(j_k-1)! t^{j_k-1}
cplx membership_function(std::span<const PoleTerm> terms, double t);

/// |Phi(t)| / sum_k |phi_k(t)|, evaluated in log space. In [0, 1].
double membership_ratio(std::span<const PoleTerm> terms, double t);

/// Scans [-t_max, 0) for zeros of Phi and refines candidate dips.
MembershipReport class_test(const Window& w, const ClassTestOptions& opts = {});

/// Fourier transform int g(t) e^{2 pi i t tau} dt for simple windows with w_k > 0.
/// At tau = 0 the half jump pi i sum a_k is returned.
cplx fourier_transform(const Window& w, double tau);

}  // namespace gabor
