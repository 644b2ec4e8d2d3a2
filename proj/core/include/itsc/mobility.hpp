#pragma once

#include <optional>
#include <vector>

#include "itsc/geometry.hpp"
#include "itsc/rng.hpp"
#include "itsc/scenario.hpp"

namespace itsc {

/// Random-waypoint walker state for one UE.
struct UeState {
    Point2 position;
    Point2 waypoint;
    double speed_mps = 0.0;
    double pause_remaining_s = 0.0;
    std::optional<SbsId> attached_sbs;
};

/// Far-field two-ray-ground received power: pt*gt*gr*ht^2*hr^2 / d^4.
/// Throws std::domain_error when d_m <= 0.
double two_ray_rx_power(double pt_w, double gt, double gr, double ht_m, double hr_m,
                        double d_m);

/// Distance where the two-ray form meets the Friis free-space form:
/// 4*pi*ht*hr / wavelength.
double crossover_distance_m(double ht_m, double hr_m, double wavelength_m);

/// Received power with near-field handling: Friis free-space below the
/// cross-over distance, two-ray-ground beyond it. Continuous at the seam.
double rx_power_w(const RadioParams& radio, double ht_m, double hr_m, double d_m);

/// Draws position (unless explicit in cfg), first waypoint and speed from the
/// UE's stream. Draw order: position x, y (only when seed-derived), waypoint
/// x, y, speed.
UeState init_ue_state(const UeConfig& cfg, double area_width_m, double area_height_m,
                      SeededRng& rng);

/// Advances the walker by dt: move toward the waypoint at speed_mps, pause on
/// arrival, then redraw waypoint and speed. Handles multiple phases within one
/// dt; the result stays inside the area.
UeState random_waypoint_step(const UeState& state, const UeConfig& cfg,
                             double area_width_m, double area_height_m, double dt_s,
                             SeededRng& rng);

/// Maps each UE position to the SBS with the strongest received power,
/// Active and Sleeping alike; ties go to the lowest SBS id. Empty only when
/// every SBS yields zero power.
std::vector<std::optional<SbsId>> associate_all(const std::vector<Point2>& ue_positions,
                                                const std::vector<double>& ue_heights_m,
                                                const std::vector<SbsConfig>& sbss,
                                                const RadioParams& radio);

}  // namespace itsc
