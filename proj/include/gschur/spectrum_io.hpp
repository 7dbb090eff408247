#ifndef GSCHUR_SPECTRUM_IO_HPP
#define GSCHUR_SPECTRUM_IO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gschur/weight_vector.hpp"

namespace gschur {

enum class SpectrumFormat { Auto, List, Matrix };

struct SpectrumData {
  WeightVector spectrum;
  double trace = 0.0;
  double spectral_norm = 0.0;
};

// Reads a spectrum from text: either
//   (a) a newline/comma-separated list of nonnegative eigenvalues, or
//   (b) a dense symmetric matrix, row-major whitespace-separated entries
//       preceded by a header line holding the dimension n.
// Auto picks (b) when the first token is a positive integer n followed by
// exactly n*n further tokens. Matrix eigenvalues come from cyclic Jacobi
// rotations run to off-diagonal norm <= 1e-10 times the Frobenius norm;
// computed eigenvalues within -1e-8 * spectral_norm of zero are clamped,
// anything more negative is rejected as not PSD.
SpectrumData parse_spectrum_text(const std::string& text,
                                 SpectrumFormat format = SpectrumFormat::Auto);

SpectrumData ingest_spectrum(const std::string& path,
                             SpectrumFormat format = SpectrumFormat::Auto);

// Eigenvalues of a symmetric matrix (row-major, n x n) by cyclic Jacobi
// sweeps; exposed for tests. Relative asymmetry beyond 1e-10 is rejected.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

}  // namespace gschur

#endif  // GSCHUR_SPECTRUM_IO_HPP
