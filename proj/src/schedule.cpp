#include "episis/schedule.hpp"

#include <cmath>

#include "episis/rng.hpp"

namespace episis {

namespace {

void check_probability(double x, const char* what)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string("schedule: ") + what + " must be in [0,1]");
}

} // namespace

ParamSchedule::ParamSchedule(Constant c) : kind_(c)
{
    check_probability(c.value, "value");
}

ParamSchedule::ParamSchedule(SquareWave w) : kind_(w)
{
    check_probability(w.low, "low");
    check_probability(w.high, "high");
    if (w.low > w.high)
        throw std::invalid_argument("schedule: low must not exceed high");
    if (!(w.period > 0.0))
        throw std::invalid_argument("schedule: period must be positive");
    if (!(w.phase >= 0.0 && w.phase < w.period))
        throw std::invalid_argument("schedule: phase must lie in [0, period)");
}

ParamSchedule::ParamSchedule(UniformRandomPiecewise r) : kind_(r)
{
    check_probability(r.lo, "lo");
    check_probability(r.hi, "hi");
    if (r.lo > r.hi)
        throw std::invalid_argument("schedule: lo must not exceed hi");
    if (!(r.dwell > 0.0))
        throw std::invalid_argument("schedule: dwell must be positive");
}

double ParamSchedule::eval(double t) const
{
    if (!(t >= 0.0))
        throw std::invalid_argument("schedule: eval requires t >= 0");
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>) {
                return k.value;
            } else if constexpr (std::is_same_v<K, SquareWave>) {
                double pos = std::fmod(t - k.phase, k.period);
                if (pos < 0.0)
                    pos += k.period;
                return pos < k.period / 2.0 ? k.low : k.high;
            } else {
                const auto window = static_cast<std::uint64_t>(std::floor(t / k.dwell));
                return k.lo + (k.hi - k.lo) * unit_draw(k.seed, window);
            }
        },
        kind_);
}

double ParamSchedule::stationary_mean() const
{
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, SquareWave>)
                return (k.low + k.high) / 2.0;
            else
                return (k.lo + k.hi) / 2.0;
        },
        kind_);
}

double ParamSchedule::max_value() const
{
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, SquareWave>)
                return k.high;
            else
                return k.hi;
        },
        kind_);
}

TimeAverage time_average(const ParamSchedule& s, double horizon)
{
    if (!(horizon > 0.0))
        throw std::invalid_argument("time_average: horizon must be positive");
    const double stationary = s.stationary_mean();
    if (!s.is_stochastic())
        return {stationary, stationary};

    // Exact accumulation over the piecewise-constant dwell windows,
    // sampling at window midpoints so boundary rounding cannot shift the
    // window index.
    const auto& r = std::get<ParamSchedule::UniformRandomPiecewise>(s.kind());
    const auto full = static_cast<std::uint64_t>(std::floor(horizon / r.dwell));
    double acc = 0.0;
    for (std::uint64_t k = 0; k < full; ++k)
        acc += s.eval((static_cast<double>(k) + 0.5) * r.dwell) * r.dwell;
    const double rest = horizon - static_cast<double>(full) * r.dwell;
    if (rest > 0.0)
        acc += s.eval((static_cast<double>(full) + 0.5) * r.dwell) * rest;
    return {acc / horizon, stationary};
}

} // namespace episis
