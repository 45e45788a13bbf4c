#include "core/device.hpp"

#include "core/errors.hpp"

namespace hysim {

void TimingParams::validate() const {
    if (t_row_hit == 0) throw ValidationError("timing.t_row_hit: must be > 0");
    if (t_act_dram == 0) throw ValidationError("timing.t_act_dram: must be > 0");
    if (t_act_read_pcm <= t_act_dram)
        throw ValidationError("timing.t_act_read_pcm: must exceed timing.t_act_dram");
    if (t_act_write_pcm < t_act_read_pcm)
        throw ValidationError("timing.t_act_write_pcm: must be >= timing.t_act_read_pcm");
    if (t_bus == 0) throw ValidationError("timing.t_bus: must be > 0");
    if (t_migration == 0) throw ValidationError("timing.t_migration: must be > 0");
}

void EnergyParams::validate() const {
    if (e_row_hit < 0) throw ValidationError("energy.e_row_hit: must be >= 0");
    if (e_act_read_pcm <= e_act_dram)
        throw ValidationError("energy.e_act_read_pcm: must exceed energy.e_act_dram");
    if (e_act_write_pcm < e_act_read_pcm)
        throw ValidationError("energy.e_act_write_pcm: must be >= energy.e_act_read_pcm");
    if (e_static_dram < 0 || e_static_pcm < 0)
        throw ValidationError("energy.e_static_dram/e_static_pcm: must be >= 0");
    if (e_migration < 0) throw ValidationError("energy.e_migration: must be >= 0");
}

RowOutcome bank_access(BankState& state, RowId row) {
    const bool hit = state.open_row.has_value() && *state.open_row == row;
    state.open_row = row;
    return hit ? RowOutcome::Hit : RowOutcome::Miss;
}

Cycle access_latency(Device dev, AccessKind kind, RowOutcome outcome, const TimingParams& t) {
    if (outcome == RowOutcome::Hit) return t.t_row_hit;
    return t.activation(dev, kind) + t.t_row_hit;
}

double access_energy(Device dev, AccessKind kind, RowOutcome outcome, const EnergyParams& e) {
    if (outcome == RowOutcome::Hit) return e.e_row_hit;
    return e.activation(dev, kind) + e.e_row_hit;
}

} // namespace hysim
