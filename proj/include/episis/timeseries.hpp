#ifndef EPISIS_TIMESERIES_HPP
#define EPISIS_TIMESERIES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace episis {

/// Per-step trajectory record. `t` and `sum_i` are always filled;
/// controlled runs add the beta columns, and a positive node stride adds
/// downsampled per-node rows.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> sum_i;

    // controlled runs only (empty otherwise)
    std::vector<double> mean_beta;
    std::vector<double> max_beta;
    std::vector<std::int64_t> clamp_events; // per step

    // full state snapshots every `stride` steps (empty if stride == 0)
    int node_stride = 0;
    std::vector<double> snapshot_t;
    std::vector<std::vector<double>> snapshots;
    std::vector<std::int64_t> node_ids; // column labels for snapshots

    std::int64_t total_clamps = 0;

    double final_sum() const { return sum_i.empty() ? 0.0 : sum_i.back(); }
};

/// Aggregate columns: t,sum_i[,mean_beta,max_beta,clamp_events].
void write_csv(std::ostream& out, const TimeSeries& ts);

/// Snapshot rows: t,sum_i,i_<id>,... for every recorded snapshot.
void write_snapshot_csv(std::ostream& out, const TimeSeries& ts);

void write_csv_file(const std::string& path, const TimeSeries& ts);

std::string format_double(double x);

} // namespace episis

#endif
