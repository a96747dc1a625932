// Copyright 2026 The dlczsim Authors
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

#include "dlcz/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "dlcz/source.hpp"
#include "dlcz/text_format.hpp"

namespace dlcz {

namespace {

// Click statistics of one arm (splitter + two detectors) given the photon number at the source
// side of the arm. Each photon reaches the splitter with probability `reach`; an independent
// Poisson(extra_mean) of uncorrelated photons joins it there.
struct ArmModel {
    double reach = 0.0;
    double extra_mean = 0.0;
    double det_eff = 0.0;
    double dark_mean = 0.0;

    // P(none of k specific detectors of this arm click | n source photons), k in {0,1,2}.
    double no_click(unsigned k, Count n) const {
        if (k == 0) {
            return 1.0;
        }
        double per_photon = static_cast<double>(k) * det_eff / 2.0;
        double base = 1.0 - reach * per_photon;
        double from_source = n == 0 ? 1.0 : std::pow(base, static_cast<double>(n));
        return from_source * std::exp(-extra_mean * per_photon - static_cast<double>(k) * dark_mean);
    }

    // Distribution over (first, second) click states: index = first | second << 1.
    std::array<double, 4> patterns(Count n) const {
        double q1 = no_click(1, n);
        double q2 = no_click(2, n);
        double one = std::max(0.0, q1 - q2);
        return {q2, one, one, std::max(0.0, 1.0 - 2.0 * q1 + q2)};
    }
};

struct Arms {
    ArmModel stokes;
    ArmModel antistokes;
};

Arms arms_for(const ExperimentConfig &c) {
    double survival = memory_survival(c.delay_dt, c.memory_lifetime);
    Arms arms;
    arms.stokes = {c.transmission, c.bg_stokes_mean, c.detector_eff, c.dark_mean};
    double to_splitter = c.retrieval_eff * c.transmission;
    arms.antistokes = {survival * to_splitter,
                       c.memory_diffusion_in * (1.0 - survival) * to_splitter + c.bg_antistokes_mean,
                       c.detector_eff, c.dark_mean};
    return arms;
}

void accumulate(std::array<double, kPatternCount> &out, double weight, const std::array<double, 4> &stokes,
                const std::array<double, 4> &antistokes) {
    for (unsigned s = 0; s < 4; ++s) {
        for (unsigned a = 0; a < 4; ++a) {
            out[s | (a << 2)] += weight * stokes[s] * antistokes[a];
        }
    }
}

double safe_ratio(double num, double den, const char *what) {
    if (!(den > 0.0)) {
        throw UndefinedCorrelation(std::string("predicted ") + what + " undefined: a detector never clicks");
    }
    return num / den;
}

}  // namespace

std::string pattern_name(ClickPattern pattern) {
    std::string out;
    for (Detector d : kAllDetectors) {
        out += (pattern & pattern_bit(d)) ? '1' : '0';
    }
    return out;
}

double ClickPatternDistribution::total() const {
    double sum = 0.0;
    for (double p : probability) {
        sum += p;
    }
    return sum;
}

double ClickPatternDistribution::all_click(ClickPattern mask) const {
    double sum = 0.0;
    for (ClickPattern k = 0; k < kPatternCount; ++k) {
        if ((k & mask) == mask) {
            sum += probability[k];
        }
    }
    return sum;
}

double ClickPatternDistribution::any_click(ClickPattern mask) const {
    double sum = 0.0;
    for (ClickPattern k = 0; k < kPatternCount; ++k) {
        if ((k & mask) != 0) {
            sum += probability[k];
        }
    }
    return sum;
}

double truncation_bound(double p, SourceModel model, unsigned n_max) {
    if (p <= 0.0) {
        return 0.0;
    }
    // Both models have geometric marginals with mean p: P(n > n_max) = q^(n_max+1).
    double tail = std::exp(static_cast<double>(n_max + 1) * (std::log(p) - std::log1p(p)));
    double bound = model == SourceModel::QuantumTms ? tail : 2.0 * tail;
    return std::min(1.0, bound);
}

unsigned required_n_max(double p, SourceModel model, double tolerance) {
    unsigned n = 1;
    while (truncation_bound(p, model, n) > tolerance) {
        if (n > 100000) {
            throw DomainError("mean excitation too large for Fock enumeration");
        }
        n = n < 64 ? n + 1 : n * 2;
    }
    return n;
}

ClickPatternDistribution truncated_joint(const ExperimentConfig &config, unsigned n_max) {
    if (n_max < 1) {
        throw DomainError("n_max must be >= 1");
    }
    require_valid(config);
    const Arms arms = arms_for(config);
    const double p = config.p_excitation;

    ClickPatternDistribution dist;
    dist.n_max = n_max;
    if (p == 0.0) {
        accumulate(dist.probability, 1.0, arms.stokes.patterns(0), arms.antistokes.patterns(0));
    } else if (config.source_model == SourceModel::QuantumTms) {
        for (Count n = 0; n <= n_max; ++n) {
            accumulate(dist.probability, joint_pmf(p, SourceModel::QuantumTms, n, n), arms.stokes.patterns(n),
                       arms.antistokes.patterns(n));
        }
    } else {
        std::vector<std::array<double, 4>> antistokes(n_max + 1);
        for (Count m = 0; m <= n_max; ++m) {
            antistokes[m] = arms.antistokes.patterns(m);
        }
        for (Count n = 0; n <= n_max; ++n) {
            auto stokes = arms.stokes.patterns(n);
            for (Count m = 0; m <= n_max; ++m) {
                accumulate(dist.probability, joint_pmf(p, SourceModel::ClassicalCorrelated, n, m), stokes,
                           antistokes[m]);
            }
        }
    }
    dist.truncation_error_bound = truncation_bound(p, config.source_model, n_max);
    dist.truncation_warning = dist.truncation_error_bound > kTruncationWarning;
    return dist;
}

PredictedCorrelations predicted_correlations(const ExperimentConfig &config, unsigned n_max) {
    double bound = truncation_bound(config.p_excitation, config.source_model, n_max);
    if (bound > kTruncationRequired) {
        throw DomainError("n_max = " + std::to_string(n_max) + " leaves truncation mass " + format_report(bound) +
                          "; need n_max >= " +
                          std::to_string(required_n_max(config.p_excitation, config.source_model,
                                                        kTruncationRequired)));
    }
    PredictedCorrelations out;
    out.distribution = truncated_joint(config, n_max);
    const auto &d = out.distribution;
    const ClickPattern a = pattern_bit(Detector::A), b = pattern_bit(Detector::B);
    const ClickPattern c = pattern_bit(Detector::C), dd = pattern_bit(Detector::D);
    for (Detector det : kAllDetectors) {
        out.click_probability[index_of(det)] = d.all_click(pattern_bit(det));
    }
    auto g = [&](ClickPattern x, ClickPattern y, const char *what) {
        return safe_ratio(d.all_click(x | y), d.all_click(x) * d.all_click(y), what);
    };
    out.g11 = g(a, b, "g11");
    out.g22 = g(c, dd, "g22");
    out.g12 = g(a, c, "g12");
    out.g12_bd = g(b, dd, "g12 (B,D)");
    double both_arms = 0.0;
    for (ClickPattern k = 0; k < kPatternCount; ++k) {
        if ((k & (a | b)) && (k & (c | dd))) {
            both_arms += d.probability[k];
        }
    }
    out.g12_arm = safe_ratio(both_arms, d.any_click(a | b) * d.any_click(c | dd), "arm g12");
    return out;
}

std::size_t ZTable::flagged_count() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ZRow &r) { return r.flagged; }));
}

std::string ZTable::render() const {
    std::string out = "quantity,mc,oracle,sigma_mc,z,flagged\n";
    for (const auto &r : rows) {
        out += r.quantity + "," + format_report(r.mc) + "," + format_report(r.oracle) + "," + format_report(r.sigma) +
               "," + format_report(r.z) + "," + (r.flagged ? "1" : "0") + "\n";
    }
    return out;
}

ZTable compare(const McObservables &mc, const PredictedCorrelations &oracle, double threshold) {
    ZTable table;
    table.threshold = threshold;
    auto add = [&](std::string name, double value, double expected, double sigma) {
        ZRow row{std::move(name), value, expected, sigma, 0.0, false};
        if (sigma > 0.0) {
            row.z = (value - expected) / sigma;
        } else if (value != expected) {
            row.z = std::copysign(INFINITY, value - expected);
        }
        row.flagged = std::abs(row.z) > threshold;
        table.rows.push_back(std::move(row));
    };
    if (mc.trials == 0) {
        return table;
    }
    const double n = static_cast<double>(mc.trials);
    auto frequency_row = [&](std::string name, std::uint64_t count, double expected) {
        double f = static_cast<double>(count) / n;
        double var = f * (1.0 - f);
        if (var <= 0.0) {
            var = expected * (1.0 - expected);
        }
        add(std::move(name), f, expected, std::sqrt(var / n));
    };
    for (ClickPattern k = 0; k < kPatternCount; ++k) {
        frequency_row("pattern_" + pattern_name(k), mc.pattern_counts[k], oracle.distribution.probability[k]);
    }
    for (Detector det : kAllDetectors) {
        std::uint64_t clicks = 0;
        for (ClickPattern k = 0; k < kPatternCount; ++k) {
            if (k & pattern_bit(det)) {
                clicks += mc.pattern_counts[k];
            }
        }
        frequency_row("click_" + std::string(detector_name(det)), clicks, oracle.click_probability[index_of(det)]);
    }
    auto g_row = [&](const char *name, const std::optional<Estimate> &e, double expected, std::size_t i) {
        if (!e) {
            return;
        }
        double sigma = e->sigma;
        const double m = mc.baseline_mean[i];
        if (sigma <= 0.0 && m > 0.0 && expected > 0.0 && mc.baseline_peaks > 0) {
            // N = 0 observed: error of the estimator at the predicted value, N = g * M.
            sigma = expected * std::sqrt(1.0 / (expected * m) + 1.0 / (static_cast<double>(mc.baseline_peaks) * m));
        }
        add(name, e->value, expected, sigma);
    };
    g_row("g11", mc.g11, oracle.g11, 0);
    g_row("g22", mc.g22, oracle.g22, 1);
    g_row("g12", mc.g12, oracle.g12, 2);
    g_row("g12_bd", mc.g12_bd, oracle.g12_bd, 3);
    return table;
}

std::string render_oracle_report(const PredictedCorrelations &oracle, const ExperimentConfig &config) {
    std::string out = "# dlczsim oracle report\n";
    auto line = [&out](const std::string &key, const std::string &value) { out += key + " = " + value + "\n"; };
    out += render_report(cauchy_schwarz({oracle.g11, 0.0}, {oracle.g22, 0.0}, {oracle.g12, 0.0}, config.delay_dt));
    line("g12_bd", format_report(oracle.g12_bd));
    line("g12_bd_sigma", "0");
    line("g12_arm", format_report(oracle.g12_arm));
    for (Detector d : kAllDetectors) {
        line("click_" + std::string(detector_name(d)), format_report(oracle.click_probability[index_of(d)]));
    }
    for (ClickPattern k = 0; k < kPatternCount; ++k) {
        line("pattern_" + pattern_name(k), format_report(oracle.distribution.probability[k]));
    }
    line("n_max", std::to_string(oracle.distribution.n_max));
    line("truncation_error_bound", format_report(oracle.distribution.truncation_error_bound));
    return out;
}

}  // namespace dlcz
