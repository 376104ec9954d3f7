#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <trilevel/observables.hpp>
#include <trilevel/propagator.hpp>

namespace trilevel {

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// t,pop1,pop2,pop3,re12,im12,re13,im13,re23,im23,entropy,purity,eig1,eig2,eig3,eta_norm
const std::vector<std::string>& csv_columns();
std::string csv_header();

/// One row per sample, 12 significant digits in scientific notation.
void write_csv(std::ostream& out, const Trajectory& traj);
void write_csv_file(const std::string& path, const Trajectory& traj);

/// Value of a CSV column by name; throws std::invalid_argument if unknown.
double quantity(const ObservableRecord& r, std::string_view name);
bool is_quantity(std::string_view name);

struct PlotSeries
{
    std::string label;
    std::vector<double> y;
};

struct PlotSpec
{
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    std::vector<double> x;
    std::vector<PlotSeries> series;
};

/// SVG 1.1 line chart with axes, ticks and a legend.
void write_svg(std::ostream& out, const PlotSpec& plot);
void write_svg_file(const std::string& path, const PlotSpec& plot);

/// Plot of the named CSV columns of a trajectory.
PlotSpec plot_quantities(const Trajectory& traj,
                         const std::vector<std::string>& names,
                         std::string title, std::string y_label = {});

}  // namespace trilevel
