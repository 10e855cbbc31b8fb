#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zeromode/potential.hpp"

namespace zeromode {

enum class RootMethod { DeltaBisect, DeterminantBrent, WindingNewton };

std::string_view to_string(RootMethod m);

struct SpectralRoot {
  std::complex<double> value;
  /// DeltaBisect: distance of delta to (n + 1/2) pi. DeterminantBrent: final
  /// bracket width. WindingNewton: size of the last Newton correction.
  double residual;
  RootMethod method;
  /// Winding number of the enclosing cell; > 1 flags an unresolved cluster.
  int multiplicity = 1;
};

struct Rectangle {
  double re_min;
  double re_max;
  double im_min;
  double im_max;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool contains(std::complex<double> z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

struct GammaSpectrum {
  std::vector<SpectralRoot> roots;
  /// Real search interval [re_min, re_max] (im_min = im_max = 0) or complex
  /// rectangle.
  Rectangle search_region;
  double k;
  /// Largest distance between the Pruefer and determinant root lists, when
  /// both were computed.
  std::optional<double> cross_check_gap;
};

struct RealSpectrumOptions {
  double tol = 1e-10;
  unsigned threads = 1;
  /// Restarts at half step allowed before ScanStepTooCoarse is raised.
  int max_restarts = 8;
  /// Also locate roots by sign changes of the determinant and compare
  /// (piecewise-constant potentials only).
  bool cross_check = true;
};

/// All real points of Gamma(V) in (0, R].
GammaSpectrum real_spectrum(const Potential& V, double k, double R, const RealSpectrumOptions& opts = {});

/// Real roots of the matching determinant in (0, R], bracketed on a grid of
/// the given step and refined by TOMS 748.
GammaSpectrum real_spectrum_determinant(const PiecewiseConstantPotential& V, double k, double R, double step,
                                        double tol = 1e-12);

/// Number of real roots in (0, R]. Throws RegionTooSmall if the spectrum
/// was not computed up to R.
std::size_t counting_function(const GammaSpectrum& spectrum, double R);

struct ComplexSpectrumOptions {
  double tol = 1e-10;
  /// Cells are split until their diagonal is below this before polishing.
  double min_cell = 1e-3;
  unsigned threads = 1;
};

/// Zeros of the matching determinant inside the rectangle via the argument
/// principle and recursive quadrisection. Throws WindingMismatch or
/// BoundaryRoot.
GammaSpectrum complex_spectrum(const PiecewiseConstantPotential& V, double k, Rectangle rect,
                               const ComplexSpectrumOptions& opts = {});

/// Winding number of the determinant around the rectangle boundary.
int winding_number(const PiecewiseConstantPotential& V, double k, const Rectangle& rect);

struct PhaseGrid {
  Rectangle rectangle;
  std::size_t nx;
  std::size_t ny;
  /// Row-major, row 0 at im_max; arg D in (-pi, pi] at cell centres.
  std::vector<double> arg_values;

  double at(std::size_t ix, std::size_t iy) const { return arg_values[iy * nx + ix]; }
  std::complex<double> centre(std::size_t ix, std::size_t iy) const;
};

PhaseGrid phase_grid(const PiecewiseConstantPotential& V, double k, Rectangle rect, std::size_t nx, std::size_t ny,
                     unsigned threads = 1);

/// One JSON object per root: {"re":..,"im":..,"residual":..,"method":..}.
std::string to_json_lines(const GammaSpectrum& spectrum);
/// Binary PPM, hue = (arg + pi) / 2pi at full saturation and value.
std::string to_ppm(const PhaseGrid& grid);
std::string to_csv(const PhaseGrid& grid);

}  // namespace zeromode
