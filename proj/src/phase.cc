// Copyright 2026 The phasesynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasesynth/phase.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace phasesynth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view field, int line_no) {
    double v = 0.0;
    const auto* begin = field.data();
    const auto* end = field.data() + field.size();
    while (begin < end && *begin == ' ') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse number '" +
                                    std::string(field) + "'");
    }
    return v;
}

}  // namespace

TruncatedPhaseState::TruncatedPhaseState(double theta, int order) : theta_(theta), order_(order) {
    if (order < 0) {
        throw std::invalid_argument("truncated phase state order must be non-negative");
    }
}

std::vector<Complex> TruncatedPhaseState::amplitudes() const {
    std::vector<Complex> amps(static_cast<size_t>(order_) + 1);
    for (int n = 0; n <= order_; ++n) {
        amps[n] = (*this)[n];
    }
    return amps;
}

Complex TruncatedPhaseState::operator[](int n) const {
    if (n < 0 || n > order_) {
        return 0.0;
    }
    return std::polar(1.0 / std::sqrt(order_ + 1.0), n * theta_);
}

std::string to_string(DistributionSource source) {
    switch (source) {
        case DistributionSource::kAnalytic:
            return "analytic";
        case DistributionSource::kExactSimulated:
            return "exact-simulated";
        case DistributionSource::kMonteCarlo:
            return "monte-carlo";
    }
    return "unknown";
}

double PhaseDistribution::periodic_trapezoid() const {
    if (points.empty()) {
        return 0.0;
    }
    double area = 0.0;
    for (size_t k = 0; k < points.size(); ++k) {
        const auto& a = points[k];
        const auto& b = points[(k + 1) % points.size()];
        double width = b.theta - a.theta;
        if (k + 1 == points.size()) {
            width += kTwoPi;
        }
        area += 0.5 * (a.value + b.value) * width;
    }
    return area;
}

double canonical_density(const FockVector& state, double theta) {
    Complex sum = 0.0;
    const auto c = state.amplitudes();
    for (int n = 0; n <= state.cutoff(); ++n) {
        sum += std::conj(c[n]) * std::polar(1.0, n * theta);
    }
    return std::norm(sum) / kTwoPi;
}

double canonical_density(const SignalState& state, double theta) {
    if (const auto* pure = std::get_if<FockVector>(&state)) {
        return canonical_density(*pure, theta);
    }
    double total = 0.0;
    for (const auto& m : std::get<StateEnsemble>(state).members()) {
        total += m.weight * canonical_density(m.state, theta);
    }
    return total;
}

PhaseDistribution canonical_distribution(const SignalState& state, std::span<const double> thetas) {
    PhaseDistribution dist;
    dist.source = DistributionSource::kAnalytic;
    dist.points.reserve(thetas.size());
    for (double theta : thetas) {
        dist.points.push_back({theta, canonical_density(state, theta), std::nullopt});
    }
    return dist;
}

std::vector<double> uniform_theta_grid(int count) {
    if (count < 1) {
        throw std::invalid_argument("theta grid needs at least one point");
    }
    std::vector<double> grid(count);
    for (int m = 0; m < count; ++m) {
        grid[m] = kTwoPi * m / count;
    }
    return grid;
}

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    if (w >= kTwoPi) {
        w = 0.0;
    }
    return w;
}

TruncatedPhaseState truncated_phase_state(double theta, int order) {
    return TruncatedPhaseState(theta, order);
}

Complex projection_amplitude(const FockVector& state, const TruncatedPhaseState& phase_state) {
    Complex sum = 0.0;
    for (int n = 0; n <= phase_state.order(); ++n) {
        sum += std::conj(phase_state[n]) * state[n];
    }
    return sum;
}

double projection_probability(const FockVector& state, const TruncatedPhaseState& phase_state) {
    return std::norm(projection_amplitude(state, phase_state));
}

std::vector<double> normalize_counts(std::span<const double> event_probs) {
    if (event_probs.size() < 2) {
        throw std::invalid_argument("normalization needs at least two event probabilities");
    }
    double sum = 0.0;
    for (double p : event_probs) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("event probabilities must be non-negative");
        }
        sum += p;
    }
    if (sum == 0.0) {
        throw std::domain_error("cannot normalize: all event probabilities are zero");
    }
    const double bin_width = kTwoPi / static_cast<double>(event_probs.size());
    std::vector<double> y(event_probs.size());
    for (size_t m = 0; m < y.size(); ++m) {
        y[m] = event_probs[m] / (sum * bin_width);
    }
    return y;
}

std::array<double, 4> normalize_counts(std::span<const double, 4> event_probs) {
    const auto y = normalize_counts(std::span<const double>(event_probs));
    return {y[0], y[1], y[2], y[3]};
}

void write_csv(std::ostream& out, const PhaseDistribution& dist) {
    out << "# theta in radians; value and stderr in 1/radian; source=" << to_string(dist.source)
        << "\n";
    out << "theta,value,stderr\n";
    for (const auto& p : dist.points) {
        out << format_double(p.theta) << ',' << format_double(p.value) << ','
            << format_double(p.stderr_value.value_or(0.0)) << '\n';
    }
}

PhaseDistribution read_csv(std::istream& in) {
    PhaseDistribution dist;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            if (line.rfind("# ", 0) == 0) {
                const auto pos = line.find("source=");
                if (pos != std::string::npos) {
                    const auto tag = line.substr(pos + 7);
                    if (tag == "exact-simulated") {
                        dist.source = DistributionSource::kExactSimulated;
                    } else if (tag == "monte-carlo") {
                        dist.source = DistributionSource::kMonteCarlo;
                    }
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "theta,value,stderr") {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected header 'theta,value,stderr'");
            }
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected three comma-separated fields");
        }
        const std::string_view view(line);
        PhasePoint p{parse_double(view.substr(0, c1), line_no),
                     parse_double(view.substr(c1 + 1, c2 - c1 - 1), line_no),
                     parse_double(view.substr(c2 + 1), line_no)};
        dist.points.push_back(p);
    }
    return dist;
}

}  // namespace phasesynth
