#include "fho/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "fho/errors.hpp"

namespace fho {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary: '\n' endings everywhere
  if (!os) throw io_error("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open '" + path + "' for reading");
  return is;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw io_error("malformed number '" + s + "' in " + path);
  }
}

}  // namespace

void write_grid_field(const GridField& f, const std::string& path) {
  std::ofstream os = open_out(path);
  const UniformGrid& g = f.grid;
  const int n = g.points_per_axis;
  if (g.dim == 1) {
    os << "x,re,im\n";
    for (int j = 0; j < n; ++j)
      os << format_double(g.axis_point(j)) << ',' << format_double(f.values[j].real())
         << ',' << format_double(f.values[j].imag()) << '\n';
  } else {
    os << "x,y,re,im\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex& v = f.values[static_cast<std::size_t>(i) * n + j];
        os << format_double(g.axis_point(i)) << ',' << format_double(g.axis_point(j))
           << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
      }
  }
  if (!os) throw io_error("write failed for '" + path + "'");
}

GridField read_grid_field(const std::string& path) {
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw io_error("empty file: " + path);
  std::vector<std::string> hdr = split_csv(line);
  int dim;
  if (hdr.size() == 3 && hdr[0] == "x")
    dim = 1;
  else if (hdr.size() == 4 && hdr[0] == "x" && hdr[1] == "y")
    dim = 2;
  else
    throw io_error("unrecognized grid-field header in " + path);

  std::vector<double> xs;
  std::vector<Complex> vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> c = split_csv(line);
    if (static_cast<int>(c.size()) != (dim == 1 ? 3 : 4))
      throw io_error("bad column count in " + path);
    xs.push_back(parse_num(c[0], path));
    vals.emplace_back(parse_num(c[dim], path), parse_num(c[dim + 1], path));
  }
  if (vals.size() < 2) throw io_error("too few rows in " + path);

  std::size_t n;
  if (dim == 1) {
    n = vals.size();
  } else {
    n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
    if (n * n != vals.size())
      throw io_error("row count is not a perfect square in " + path);
  }
  double L = std::abs(xs.front());
  UniformGrid g(dim, L, static_cast<int>(n));
  // spot-check the abscissae really form the implied uniform grid
  for (std::size_t r = 0; r < xs.size(); r += std::max<std::size_t>(1, xs.size() / 7)) {
    int axis_idx = dim == 1 ? static_cast<int>(r) : static_cast<int>(r / n);
    if (std::abs(xs[r] - g.axis_point(axis_idx)) > 1e-9 * (1.0 + L))
      throw io_error("non-uniform grid abscissae in " + path);
  }
  return GridField(g, std::move(vals));
}

void write_spectral_field(const SpectralField& f, const std::string& path) {
  if (!f.basis) throw precondition_error("spectral field has no basis");
  std::ofstream os = open_out(path);
  const int N = f.basis->max_degree();
  if (f.basis->dim() == 1) {
    os << "alpha1,re,im\n";
    for (int k = 0; k <= N; ++k)
      os << k << ',' << format_double(f.coeffs[k].real()) << ','
         << format_double(f.coeffs[k].imag()) << '\n';
  } else {
    os << "alpha1,alpha2,re,im\n";
    for (int a1 = 0; a1 <= N; ++a1)
      for (int a2 = 0; a2 <= N; ++a2) {
        const Complex& v = f.coeffs[f.index(a1, a2)];
        os << a1 << ',' << a2 << ',' << format_double(v.real()) << ','
           << format_double(v.imag()) << '\n';
      }
  }
  if (!os) throw io_error("write failed for '" + path + "'");
}

SpectralField read_spectral_field(const std::string& path,
                                  std::shared_ptr<const HermiteBasis> basis) {
  if (!basis) throw precondition_error("read_spectral_field: null basis");
  std::ifstream is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw io_error("empty file: " + path);
  std::vector<std::string> hdr = split_csv(line);
  int dim;
  if (hdr.size() == 3 && hdr[0] == "alpha1")
    dim = 1;
  else if (hdr.size() == 4 && hdr[1] == "alpha2")
    dim = 2;
  else
    throw io_error("unrecognized spectral-field header in " + path);
  if (dim != basis->dim()) throw io_error("dimension mismatch in " + path);

  SpectralField f(std::move(basis));
  const int N = f.basis->max_degree();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> c = split_csv(line);
    if (static_cast<int>(c.size()) != dim + 2)
      throw io_error("bad column count in " + path);
    int a1 = static_cast<int>(parse_num(c[0], path));
    int a2 = dim == 2 ? static_cast<int>(parse_num(c[1], path)) : 0;
    if (a1 < 0 || a1 > N || a2 < 0 || a2 > N)
      throw io_error("index out of range in " + path);
    f.coeffs[f.index(a1, a2)] =
        Complex(parse_num(c[dim], path), parse_num(c[dim + 1], path));
  }
  return f;
}

void write_decay_scan(const DecayScanResult& r, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "t,ratio\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    os << format_double(r.times[i]) << ',' << format_double(r.ratios[i]) << '\n';
  if (!os) throw io_error("write failed for '" + path + "'");
}

void write_trajectory(const SolveTrajectory& t, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "t,lp_norm,weighted_norm,contraction_factor\n";
  for (std::size_t i = 0; i < t.times.size(); ++i)
    os << format_double(t.times[i]) << ',' << format_double(t.lp_norms[i]) << ','
       << format_double(t.weighted_norms[i]) << ','
       << format_double(t.contraction_factors[i]) << '\n';
  if (!os) throw io_error("write failed for '" + path + "'");
}

}  // namespace fho
