#pragma once

#include <cstdint>
#include <random>

namespace itsc {

/// Deterministic random stream. Wraps mt19937_64 but derives doubles from
/// raw draws directly, so the value sequence does not depend on the standard
/// library's distribution implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform01();
    }

private:
    std::mt19937_64 engine_;
};

/// Mixes a run seed with a per-entity index into an independent stream seed
/// (splitmix64 finalizer). Entity streams stay decoupled from each other and
/// from everything else the engine does.
inline std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::uint64_t entity_id)
{
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (entity_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace itsc
