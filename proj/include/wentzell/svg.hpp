#pragma once

#include <string>
#include <vector>

namespace wentzell {

/// Minimal polyline plot writer: fixed-size canvas, one polyline per series,
/// linear axes with tick labels.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel);

    void add_series(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& label);
    void write(const std::string& path) const;

private:
    struct Series {
        std::vector<double> x, y;
        std::string label;
    };
    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
};

}  // namespace wentzell
