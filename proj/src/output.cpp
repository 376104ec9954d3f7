#include <trilevel/output.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace trilevel {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(const char* format, double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// "Nice" tick spacing for a range split into roughly n intervals.
double tick_step(double span, int n)
{
    const double raw = span / n;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

}  // namespace

const std::vector<std::string>&
csv_columns()
{
    static const std::vector<std::string> cols = {
        "t",    "pop1", "pop2",    "pop3",   "re12", "im12", "re13", "im13",
        "re23", "im23", "entropy", "purity", "eig1", "eig2", "eig3", "eta_norm"};
    return cols;
}

std::string
csv_header()
{
    std::string h;
    for (const auto& c : csv_columns()) {
        if (!h.empty()) {
            h += ',';
        }
        h += c;
    }
    return h;
}

bool
is_quantity(std::string_view name)
{
    const auto& cols = csv_columns();
    return std::find(cols.begin(), cols.end(), name) != cols.end();
}

double
quantity(const ObservableRecord& r, std::string_view name)
{
    if (name == "t") return r.t;
    if (name == "pop1") return r.pop1;
    if (name == "pop2") return r.pop2;
    if (name == "pop3") return r.pop3;
    if (name == "re12") return r.re12;
    if (name == "im12") return r.im12;
    if (name == "re13") return r.re13;
    if (name == "im13") return r.im13;
    if (name == "re23") return r.re23;
    if (name == "im23") return r.im23;
    if (name == "entropy") return r.entropy;
    if (name == "purity") return r.purity;
    if (name == "eig1") return r.eigenvalues[0];
    if (name == "eig2") return r.eigenvalues[1];
    if (name == "eig3") return r.eigenvalues[2];
    if (name == "eta_norm") return r.eta_norm;
    throw std::invalid_argument("unknown quantity '" + std::string(name) + "'");
}

void
write_csv(std::ostream& out, const Trajectory& traj)
{
    out << csv_header() << '\n';
    std::string line;
    for (const auto& r : traj.observables) {
        line.clear();
        for (const auto& c : csv_columns()) {
            if (!line.empty()) {
                line += ',';
            }
            line += fmt("%.11e", quantity(r, c));
        }
        out << line << '\n';
    }
}

void
write_csv_file(const std::string& path, const Trajectory& traj)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_csv(out, traj);
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void
write_svg(std::ostream& out, const PlotSpec& plot)
{
    const double width = 720, height = 420;
    const double left = 70, right = 150, top = 40, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double xmin = plot.x.empty() ? 0.0 : plot.x.front();
    double xmax = plot.x.empty() ? 1.0 : plot.x.back();
    double ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& s : plot.series) {
        for (double v : s.y) {
            if (!std::isfinite(v)) {
                continue;
            }
            ymin = first ? v : std::min(ymin, v);
            ymax = first ? v : std::max(ymax, v);
            first = false;
        }
    }
    if (xmax <= xmin) {
        xmax = xmin + 1.0;
    }
    if (ymax - ymin < 1e-9) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
        << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">"
        << xml_escape(plot.title) << "</text>\n";

    out << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"#ccc\">\n";
    const double xs = tick_step(xmax - xmin, 8);
    for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-12; x += xs) {
        out << "<line x1=\"" << fmt("%.2f", px(x)) << "\" y1=\"" << top
            << "\" x2=\"" << fmt("%.2f", px(x)) << "\" y2=\"" << top + ph
            << "\"/>\n<text x=\"" << fmt("%.2f", px(x)) << "\" y=\""
            << top + ph + 16 << "\" text-anchor=\"middle\" stroke=\"none\">"
            << fmt("%g", x) << "</text>\n";
    }
    const double ys = tick_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ys) * ys; y <= ymax + 1e-12; y += ys) {
        const double yy = std::abs(y) < 1e-12 * ys ? 0.0 : y;
        out << "<line x1=\"" << left << "\" y1=\"" << fmt("%.2f", py(yy))
            << "\" x2=\"" << left + pw << "\" y2=\"" << fmt("%.2f", py(yy))
            << "\"/>\n<text x=\"" << left - 6 << "\" y=\""
            << fmt("%.2f", py(yy) + 4) << "\" text-anchor=\"end\" stroke=\"none\">"
            << fmt("%g", yy) << "</text>\n";
    }
    out << "</g>\n"
        << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(plot.x_label) << "</text>\n"
        << "<text transform=\"translate(18," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << xml_escape(plot.y_label) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.3\" points=\"";
        const std::size_t n = std::min(s.y.size(), plot.x.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(s.y[i])) {
                out << fmt("%.2f", px(plot.x[i])) << ',' << fmt("%.2f", py(s.y[i]))
                    << ' ';
            }
        }
        out << "\"/>\n";
        const double ly = top + 14 + 18.0 * k;
        out << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
            << left + pw + 36 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n<text x=\"" << left + pw + 42
            << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

void
write_svg_file(const std::string& path, const PlotSpec& plot)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_svg(out, plot);
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

PlotSpec
plot_quantities(const Trajectory& traj, const std::vector<std::string>& names,
                std::string title, std::string y_label)
{
    PlotSpec plot;
    plot.title = std::move(title);
    plot.y_label = std::move(y_label);
    plot.x = traj.grid;
    for (const auto& name : names) {
        PlotSeries s{name, {}};
        s.y.reserve(traj.observables.size());
        for (const auto& r : traj.observables) {
            s.y.push_back(quantity(r, name));
        }
        plot.series.push_back(std::move(s));
    }
    return plot;
}

}  // namespace trilevel
