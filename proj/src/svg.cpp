#include "hopfdde/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hopfdde/errors.hpp"

namespace hopfdde::svg {

namespace {

constexpr double kLeft = 90.0, kRight = 30.0, kTop = 50.0, kBottom = 70.0;
constexpr std::size_t kMaxPoints = 4000;

struct Range {
  double lo, hi;
};

Range range_of(std::span<const double> v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  Range r{*lo, *hi};
  if (r.hi - r.lo < 1e-12 * std::max(1.0, std::abs(r.hi))) {
    const double pad = std::max(1e-6, 0.05 * std::abs(r.hi));
    r.lo -= pad;
    r.hi += pad;
  }
  return r;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" << escape(title)
     << "</text>\n";
}

void polyline(std::ostringstream& os, std::span<const double> px, std::span<const double> py) {
  const std::size_t n = px.size();
  const std::size_t stride = std::max<std::size_t>(1, (n + kMaxPoints - 1) / kMaxPoints);
  os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.2\" points=\"";
  os.precision(6);
  for (std::size_t i = 0; i < n; i += stride) os << px[i] << ',' << py[i] << ' ';
  if ((n - 1) % stride != 0) os << px[n - 1] << ',' << py[n - 1];
  os << "\"/>\n";
}

void check_input(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw PreconditionError("plot series must be non-empty and equal length");
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      std::span<const double> x, std::span<const double> y) {
  check_input(x, y);
  const Range rx = range_of(x), ry = range_of(y);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto sx = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
  const auto sy = [&](double v) { return kTop + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::ostringstream os;
  header(os, title);
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double vx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
    const double vy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
    os << "<line x1=\"" << sx(vx) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(vx) << "\" y2=\"" << kTop + ph + 6
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << sx(vx) << "\" y=\"" << kTop + ph + 22 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << tick_label(vx) << "</text>\n";
    os << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << sy(vy) << "\" x2=\"" << kLeft << "\" y2=\"" << sy(vy)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 10 << "\" y=\"" << sy(vy) + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
       << tick_label(vy) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"22\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 22 "
     << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";

  std::vector<double> px(x.size()), py(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[i] = sx(x[i]);
    py[i] = sy(y[i]);
  }
  polyline(os, px, py);
  os << "</svg>\n";
  return os.str();
}

std::string projection_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                            const std::string& z_label, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z) {
  check_input(x, y);
  check_input(x, z);
  const Range rx = range_of(x), ry = range_of(y), rz = range_of(z);
  // Cabinet projection: the second coordinate recedes at 30 degrees, half length.
  const double depth_x = 0.5 * std::cos(std::numbers::pi / 6.0), depth_y = 0.25;
  const auto proj = [&](double a, double b, double c) {
    return std::pair{a + depth_x * b, c + depth_y * b};
  };
  // The projected unit cube spans [0, 1 + depth_x] × [0, 1 + depth_y].
  const double scale = std::min((kWidth - 160.0) / (1.0 + depth_x), (kHeight - 140.0) / (1.0 + depth_y));
  const double x0 = 60.0, y0 = kHeight - 60.0;
  const auto to_screen = [&](std::pair<double, double> q) {
    return std::pair{x0 + scale * q.first, y0 - scale * q.second};
  };
  const auto norm = [](double v, Range r) { return (v - r.lo) / (r.hi - r.lo); };

  std::ostringstream os;
  header(os, title);
  const auto axis = [&](double a, double b, double c, const std::string& label) {
    const auto o = to_screen(proj(0, 0, 0));
    const auto e = to_screen(proj(a, b, c));
    os << "<line x1=\"" << o.first << "\" y1=\"" << o.second << "\" x2=\"" << e.first << "\" y2=\"" << e.second
       << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << e.first << "\" y=\"" << e.second - 6 << "\" font-size=\"14\">" << escape(label) << "</text>\n";
  };
  axis(1, 0, 0, x_label + " [" + tick_label(rx.lo) + ", " + tick_label(rx.hi) + "]");
  axis(0, 1, 0, y_label + " [" + tick_label(ry.lo) + ", " + tick_label(ry.hi) + "]");
  axis(0, 0, 1, z_label + " [" + tick_label(rz.lo) + ", " + tick_label(rz.hi) + "]");

  std::vector<double> px(x.size()), py(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto q = to_screen(proj(norm(x[i], rx), norm(y[i], ry), norm(z[i], rz)));
    px[i] = q.first;
    py[i] = q.second;
  }
  polyline(os, px, py);
  os << "</svg>\n";
  return os.str();
}

}  // namespace hopfdde::svg
