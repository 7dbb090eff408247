#include "gschur/spectrum_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gschur/errors.hpp"

namespace gschur {

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

double parse_double(const std::string& tok) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    raise(Errc::ParseError, "spectrum: cannot parse '" + tok + "'");
  }
  if (pos != tok.size())
    raise(Errc::ParseError, "spectrum: trailing characters in '" + tok + "'");
  return v;
}

bool is_positive_integer(const std::string& tok, std::size_t& value) {
  if (tok.empty()) return false;
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  try {
    value = std::stoull(tok);
  } catch (const std::exception&) {
    return false;
  }
  return value > 0;
}

SpectrumData from_eigenvalues(std::vector<double> vals) {
  if (vals.empty()) raise(Errc::ParseError, "spectrum: no values");
  double vmax = *std::max_element(vals.begin(), vals.end());
  if (vmax < 0.0) raise(Errc::NotPSD, "spectrum: all eigenvalues negative");
  if (vmax == 0.0) raise(Errc::AllWeightsZero, "spectrum: all eigenvalues are zero");
  for (double& v : vals) {
    if (v < 0.0) {
      if (v >= -1e-8 * vmax)
        v = 0.0;
      else
        raise(Errc::NotPSD, "spectrum: negative eigenvalue beyond the clamp band");
    }
  }
  SpectrumData data{WeightVector(std::move(vals)), 0.0, 0.0};
  data.trace = data.spectrum.sum();
  data.spectral_norm = data.spectrum.max();
  return data;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n)
    raise(Errc::InvalidArgument, "jacobi_eigenvalues: size mismatch");

  double max_abs = 0.0, max_asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      max_abs = std::max(max_abs, std::fabs(a[i * n + j]));
      max_asym = std::max(max_asym, std::fabs(a[i * n + j] - a[j * n + i]));
    }
  if (max_abs == 0.0) return std::vector<double>(n, 0.0);
  if (max_asym > 1e-10 * max_abs)
    raise(Errc::NotSymmetric, "jacobi_eigenvalues: matrix is not symmetric");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = s;
    }

  double frob2 = 0.0;
  for (double v : a) frob2 += v * v;
  const double off_target2 = 1e-20 * frob2;  // (1e-10 * ||A||_F)^2

  auto off2 = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return s;
  };

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps && off2() > off_target2; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = a[p * n + p], aqq = a[q * n + q];
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double arp = a[r * n + p], arq = a[r * n + q];
          a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
          a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

SpectrumData parse_spectrum_text(const std::string& text, SpectrumFormat format) {
  std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) raise(Errc::ParseError, "spectrum: empty input");

  std::size_t n = 0;
  bool matrix_shaped =
      is_positive_integer(tokens.front(), n) && tokens.size() == 1 + n * n;
  bool as_matrix = format == SpectrumFormat::Matrix ||
                   (format == SpectrumFormat::Auto && matrix_shaped);

  if (as_matrix) {
    if (!matrix_shaped)
      raise(Errc::ParseError,
            "spectrum: matrix form needs a dimension header followed by n*n entries");
    if (n > 2000)
      raise(Errc::InvalidArgument,
            "spectrum: dense matrices are supported up to n = 2000; supply the "
            "spectrum directly for larger problems");
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = parse_double(tokens[i + 1]);
    return from_eigenvalues(jacobi_eigenvalues(std::move(a), n));
  }

  std::vector<double> vals(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    vals[i] = parse_double(tokens[i]);
    if (vals[i] < 0.0) raise(Errc::NotPSD, "spectrum: negative eigenvalue in list");
  }
  return from_eigenvalues(std::move(vals));
}

SpectrumData ingest_spectrum(const std::string& path, SpectrumFormat format) {
  std::ifstream in(path);
  if (!in) raise(Errc::ParseError, "spectrum: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spectrum_text(ss.str(), format);
}

}  // namespace gschur
