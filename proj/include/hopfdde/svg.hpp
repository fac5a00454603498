#pragma once

#include <span>
#include <string>

namespace hopfdde::svg {

inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 600.0;

/// 800×600 line plot of y against x with labelled axes and tick values.
std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      std::span<const double> x, std::span<const double> y);

/// Oblique (cabinet) projection of a 3-D curve; each coordinate is normalized to its
/// own range before projecting, and the three axes are drawn and labelled.
std::string projection_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                            const std::string& z_label, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z);

}  // namespace hopfdde::svg
