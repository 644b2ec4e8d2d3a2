#pragma once

#include <map>
#include <vector>

#include "itsc/sbs_state.hpp"
#include "itsc/scenario.hpp"

namespace itsc {

/// Accumulated energy, joules. total_j = sum of per-SBS entries + backhaul.
struct EnergyAccount {
    std::map<SbsId, double> per_sbs_j;
    double backhaul_j = 0.0;
    double total_j = 0.0;
};

/// Per-SBS operating point over one accounting interval.
struct SbsEnergySample {
    SbsId sbs = 0;
    SbsState state = SbsState::Active;
    double load_fraction = 0.0;   // served_bps / bw_total, clamped to [0,1]
};

/// Instantaneous draw: Active -> fixed + load * dynamic_max; Sleeping ->
/// sleep power regardless of load. Throws std::domain_error when
/// load_fraction is outside [0, 1].
double power_draw_w(SbsState state, double load_fraction, const PowerProfile& profile);

/// Adds power_draw * dt per SBS plus the backhaul constant to the account.
void accumulate(EnergyAccount& account, const std::vector<SbsEnergySample>& samples,
                double dt_s, const PowerProfile& profile);

/// Delivered bits per joule. Throws std::domain_error when energy <= 0.
double energy_efficiency_bits_per_joule(double delivered_bits, double energy_j);

}  // namespace itsc
