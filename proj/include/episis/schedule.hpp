#ifndef EPISIS_SCHEDULE_HPP
#define EPISIS_SCHEDULE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace episis {

/// Time-varying model parameter. Evaluation is a pure function of t (and,
/// for the stochastic kind, the seed), bounded in [0, 1].
class ParamSchedule {
public:
    struct Constant {
        double value;
    };
    /// Two-valued periodic wave: low on [phase, phase + T/2) within each
    /// period, high on the other half.
    struct SquareWave {
        double low;
        double high;
        double period;
        double phase = 0.0;
    };
    /// Piecewise-constant over dwell windows; window k takes a value drawn
    /// uniformly from [lo, hi] keyed on (seed, k).
    struct UniformRandomPiecewise {
        double lo;
        double hi;
        double dwell;
        std::uint64_t seed = 0;
    };

    ParamSchedule() : kind_(Constant{0.0}) {}
    ParamSchedule(Constant c);
    ParamSchedule(SquareWave w);
    ParamSchedule(UniformRandomPiecewise r);

    static ParamSchedule constant(double value) { return ParamSchedule(Constant{value}); }
    static ParamSchedule square_wave(double low, double high, double period, double phase = 0.0)
    {
        return ParamSchedule(SquareWave{low, high, period, phase});
    }
    static ParamSchedule uniform_random(double lo, double hi, double dwell, std::uint64_t seed)
    {
        return ParamSchedule(UniformRandomPiecewise{lo, hi, dwell, seed});
    }

    double eval(double t) const;

    /// The analytic long-run mean: the value itself, (low+high)/2 for an
    /// equal-duty square wave, and the stationary expectation (lo+hi)/2
    /// for the stochastic kind.
    double stationary_mean() const;

    /// sup_t of the schedule.
    double max_value() const;

    bool is_constant() const { return std::holds_alternative<Constant>(kind_); }
    bool is_stochastic() const { return std::holds_alternative<UniformRandomPiecewise>(kind_); }

    const std::variant<Constant, SquareWave, UniformRandomPiecewise>& kind() const { return kind_; }

    bool operator==(const ParamSchedule&) const = default;

private:
    std::variant<Constant, SquareWave, UniformRandomPiecewise> kind_;
};

struct TimeAverage {
    /// (1/horizon) * integral over [0, horizon] — analytic for the
    /// deterministic kinds, exact piecewise accumulation for the
    /// stochastic one.
    double value;
    /// The limit the finite-horizon average converges to.
    double stationary;
};

TimeAverage time_average(const ParamSchedule& s, double horizon);

/// Cure schedules for all nodes (one shared schedule or one per node)
/// plus the shared edge-infection schedule.
struct NodeSchedules {
    std::vector<ParamSchedule> beta; // size 1 = homogeneous, size n = per node
    ParamSchedule gamma;

    bool per_node() const { return beta.size() > 1; }

    double beta_at(double t, int v) const { return beta.size() > 1 ? beta[v].eval(t) : beta[0].eval(t); }
    double gamma_at(double t) const { return gamma.eval(t); }

    void materialize_beta(double t, std::span<double> out) const
    {
        if (beta.size() == 1) {
            const double b = beta[0].eval(t);
            for (auto& x : out)
                x = b;
        } else {
            for (std::size_t v = 0; v < out.size(); ++v)
                out[v] = beta[v].eval(t);
        }
    }

    void validate(int n) const
    {
        if (beta.empty())
            throw std::invalid_argument("schedules: no beta schedule");
        if (beta.size() != 1 && beta.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("schedules: per-node beta list length must equal node count");
    }
};

} // namespace episis

#endif
