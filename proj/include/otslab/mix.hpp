#pragma once

#include <cstdint>

namespace otslab {

// splitmix64 finalizer (Steele, Lea, Flood). Every seeded component in the
// project derives its bits through this one mixer so results are pinned by
// golden tests and stable across rebuilds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Worker substream seeds: substream(master, w) = splitmix64(master + phi64 * (w + 1)).
constexpr std::uint64_t substream_seed(std::uint64_t master, int worker) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(worker) + 1));
}

}  // namespace otslab
