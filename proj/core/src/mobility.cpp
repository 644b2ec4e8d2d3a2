#include "itsc/mobility.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace itsc {

double two_ray_rx_power(double pt_w, double gt, double gr, double ht_m, double hr_m,
                        double d_m)
{
    if (d_m <= 0.0)
        throw std::domain_error("two_ray_rx_power: distance must be > 0");
    return pt_w * gt * gr * (ht_m * ht_m * hr_m * hr_m) / (d_m * d_m * d_m * d_m);
}

double crossover_distance_m(double ht_m, double hr_m, double wavelength_m)
{
    return 4.0 * std::numbers::pi * ht_m * hr_m / wavelength_m;
}

double rx_power_w(const RadioParams& radio, double ht_m, double hr_m, double d_m)
{
    if (d_m <= 0.0)
        throw std::domain_error("rx_power_w: distance must be > 0");
    const double crossover = crossover_distance_m(ht_m, hr_m, radio.wavelength_m);
    if (d_m <= crossover) {
        const double denom = 4.0 * std::numbers::pi * d_m / radio.wavelength_m;
        return radio.tx_power_w * radio.tx_gain * radio.rx_gain / (denom * denom);
    }
    return two_ray_rx_power(radio.tx_power_w, radio.tx_gain, radio.rx_gain, ht_m, hr_m,
                            d_m);
}

namespace {

Point2 draw_waypoint(double w, double h, SeededRng& rng)
{
    const double x = rng.uniform(0.0, w);
    const double y = rng.uniform(0.0, h);
    return Point2{x, y};
}

}  // namespace

UeState init_ue_state(const UeConfig& cfg, double area_width_m, double area_height_m,
                      SeededRng& rng)
{
    UeState st;
    st.position = cfg.initial_position ? *cfg.initial_position
                                       : draw_waypoint(area_width_m, area_height_m, rng);
    st.waypoint = draw_waypoint(area_width_m, area_height_m, rng);
    st.speed_mps = rng.uniform(cfg.speed_min_mps, cfg.speed_max_mps);
    st.pause_remaining_s = 0.0;
    return st;
}

UeState random_waypoint_step(const UeState& state, const UeConfig& cfg,
                             double area_width_m, double area_height_m, double dt_s,
                             SeededRng& rng)
{
    UeState st = state;
    double remaining = dt_s;
    // A dt can span several phases: finish a pause, reach the waypoint,
    // start a new leg.
    while (remaining > 0.0) {
        if (st.pause_remaining_s > 0.0) {
            const double consumed = std::min(st.pause_remaining_s, remaining);
            st.pause_remaining_s -= consumed;
            remaining -= consumed;
            if (st.pause_remaining_s > 0.0)
                break;
            st.waypoint = draw_waypoint(area_width_m, area_height_m, rng);
            st.speed_mps = rng.uniform(cfg.speed_min_mps, cfg.speed_max_mps);
            continue;
        }
        if (st.speed_mps <= 0.0)
            break;  // a zero-speed walker never reaches its waypoint
        const double dist = distance_m(st.position, st.waypoint);
        const double reach = st.speed_mps * remaining;
        if (reach < dist) {
            const double frac = reach / dist;
            st.position.x_m += (st.waypoint.x_m - st.position.x_m) * frac;
            st.position.y_m += (st.waypoint.y_m - st.position.y_m) * frac;
            remaining = 0.0;
        } else {
            st.position = st.waypoint;
            remaining -= dist / st.speed_mps;
            if (cfg.pause_s > 0.0) {
                st.pause_remaining_s = cfg.pause_s;
            } else {
                st.waypoint = draw_waypoint(area_width_m, area_height_m, rng);
                st.speed_mps = rng.uniform(cfg.speed_min_mps, cfg.speed_max_mps);
                if (st.speed_mps <= 0.0)
                    break;
            }
        }
    }
    return st;
}

std::vector<std::optional<SbsId>> associate_all(const std::vector<Point2>& ue_positions,
                                                const std::vector<double>& ue_heights_m,
                                                const std::vector<SbsConfig>& sbss,
                                                const RadioParams& radio)
{
    // Scan order is ascending SBS id so ties resolve to the lowest id no
    // matter how the input list is permuted.
    std::vector<const SbsConfig*> by_id;
    by_id.reserve(sbss.size());
    for (const auto& b : sbss)
        by_id.push_back(&b);
    std::sort(by_id.begin(), by_id.end(),
              [](const SbsConfig* a, const SbsConfig* b) { return a->id < b->id; });

    std::vector<std::optional<SbsId>> out(ue_positions.size());
    for (std::size_t i = 0; i < ue_positions.size(); ++i) {
        double best_power = 0.0;
        std::optional<SbsId> best;
        for (const SbsConfig* b : by_id) {
            // A UE sitting exactly on an SBS is effectively at zero range.
            const double d = std::max(distance_m(ue_positions[i], b->position), 0.1);
            const double p = rx_power_w(radio, b->antenna_height_m, ue_heights_m[i], d);
            if (p > best_power) {
                best_power = p;
                best = b->id;
            }
        }
        out[i] = best;
    }
    return out;
}

}  // namespace itsc
