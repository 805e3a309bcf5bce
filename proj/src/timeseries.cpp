#include "episis/timeseries.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace episis {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_csv(std::ostream& out, const TimeSeries& ts)
{
    const bool controlled = !ts.mean_beta.empty();
    out << "t,sum_i";
    if (controlled)
        out << ",mean_beta,max_beta,clamp_events";
    out << "\n";
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        out << format_double(ts.t[k]) << ',' << format_double(ts.sum_i[k]);
        if (controlled)
            out << ',' << format_double(ts.mean_beta[k]) << ',' << format_double(ts.max_beta[k]) << ','
                << ts.clamp_events[k];
        out << "\n";
    }
}

void write_snapshot_csv(std::ostream& out, const TimeSeries& ts)
{
    out << "t,sum_i";
    for (auto id : ts.node_ids)
        out << ",i_" << id;
    out << "\n";
    for (std::size_t k = 0; k < ts.snapshot_t.size(); ++k) {
        const auto& row = ts.snapshots[k];
        double s = 0.0;
        for (double x : row)
            s += x;
        out << format_double(ts.snapshot_t[k]) << ',' << format_double(s);
        for (double x : row)
            out << ',' << format_double(x);
        out << "\n";
    }
}

void write_csv_file(const std::string& path, const TimeSeries& ts)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    if (ts.node_stride > 0)
        write_snapshot_csv(out, ts);
    else
        write_csv(out, ts);
}

} // namespace episis
