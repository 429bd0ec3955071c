#include "inclab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "inclab/error.hpp"

namespace inclab {

FitResult fit_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::insufficient_data, "x and y differ in length");
  if (x.size() < 2) throw Error(ErrorCode::insufficient_data, "need at least two samples");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw Error(ErrorCode::non_positive_value, "sample " + std::to_string(i) + " is not positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw Error(ErrorCode::insufficient_data, "all x values coincide");
  FitResult f;
  f.samples = lx.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

FitResult fit_exponent(const std::vector<SweepRecord>& records, std::string_view x_field,
                       std::string_view y_field) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    auto vx = record_value(r, x_field);
    auto vy = record_value(r, y_field);
    if (vx && vy) {
      x.push_back(*vx);
      y.push_back(*vy);
    }
  }
  return fit_exponent(x, y);
}

std::string fit_svg(std::span<const double> x, std::span<const double> y, const FitResult& fit,
                    std::string_view x_label, std::string_view y_label) {
  constexpr double W = 640, H = 480, M = 60;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log10(x[i]));
    ly.push_back(std::log10(y[i]));
  }
  auto [x0, x1] = std::minmax_element(lx.begin(), lx.end());
  auto [y0, y1] = std::minmax_element(ly.begin(), ly.end());
  double ax = *x0, bx = *x1, ay = *y0, by = *y1;
  if (bx - ax < 1e-12) bx = ax + 1;
  if (by - ay < 1e-12) by = ay + 1;
  auto sx = [&](double v) { return M + (v - ax) / (bx - ax) * (W - 2 * M); };
  auto sy = [&](double v) { return H - M - (v - ay) / (by - ay) * (H - 2 * M); };

  std::string out;
  char buf[256];
  auto put = [&](const char* f, auto... args) {
    std::snprintf(buf, sizeof buf, f, args...);
    out += buf;
  };
  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", W, H, W, H);
  put("<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", W, H);
  put("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", M, H - M, W - M, H - M);
  put("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", M, M, M, H - M);
  // Fitted line in log10 coordinates has the same slope; the intercept rescales by ln 10.
  const double c = fit.intercept / std::log(10.0);
  put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#c03\" stroke-width=\"1.5\"/>\n", sx(ax),
      sy(c + fit.slope * ax), sx(bx), sy(c + fit.slope * bx));
  for (std::size_t i = 0; i < lx.size(); ++i)
    put("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"#036\"/>\n", sx(lx[i]), sy(ly[i]));
  put("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">log10 ", W / 2,
      H - 20);
  out += std::string(x_label) + "</text>\n";
  put("<text x=\"18\" y=\"%g\" transform=\"rotate(-90 18 %g)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">log10 ",
      H / 2, H / 2);
  out += std::string(y_label) + "</text>\n";
  put("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"13\">slope %.4f, R^2 %.4f, %zu samples</text>\n",
      M + 8, M - 16, fit.slope, fit.r_squared, fit.samples);
  out += "</svg>\n";
  return out;
}

}  // namespace inclab
