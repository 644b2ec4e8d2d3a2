#include "itsc/energy_model.hpp"

#include <stdexcept>

namespace itsc {

double power_draw_w(SbsState state, double load_fraction, const PowerProfile& profile)
{
    if (load_fraction < 0.0 || load_fraction > 1.0)
        throw std::domain_error("power_draw: load_fraction must be within [0, 1]");
    if (state == SbsState::Sleeping)
        return profile.p_sleep_w;
    return profile.p_fixed_active_w + load_fraction * profile.p_dynamic_max_w;
}

void accumulate(EnergyAccount& account, const std::vector<SbsEnergySample>& samples,
                double dt_s, const PowerProfile& profile)
{
    if (dt_s <= 0.0)
        return;
    for (const auto& s : samples) {
        const double j = power_draw_w(s.state, s.load_fraction, profile) * dt_s;
        account.per_sbs_j[s.sbs] += j;
        account.total_j += j;
    }
    const double backhaul = profile.pc_backhaul_w * dt_s;
    account.backhaul_j += backhaul;
    account.total_j += backhaul;
}

double energy_efficiency_bits_per_joule(double delivered_bits, double energy_j)
{
    if (energy_j <= 0.0)
        throw std::domain_error("energy_efficiency: energy must be > 0");
    return delivered_bits / energy_j;
}

}  // namespace itsc
