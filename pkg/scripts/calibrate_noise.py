"""Monte-Carlo calibration of the raw fBm standard deviation per family.

Samples the un-normalized value-noise field over many seeds and a dense grid
and prints the pooled std. The result is frozen into terrain._FBM_STD so that
amplitude_m equals the expected height standard deviation.
"""

import numpy as np

from terracost.seeding import derive_seed
from terracost import terrain


def pooled_std(octaves: int, persistence: float, n_seeds: int = 200, n: int = 256) -> float:
    coords = np.linspace(0.0, 16.0, n)  # 16 correlation lengths
    gx, gy = np.meshgrid(coords, coords)
    vals = []
    for seed in range(n_seeds):
        raw = terrain._fbm(gx, gy, derive_seed(seed, "fbm"), octaves, persistence)
        vals.append(raw.ravel())
    v = np.concatenate(vals)
    return float(v.std())


def per_realization_spread(octaves, persistence, corr, extent, res, n_seeds=50):
    spec_n = int(extent / res)
    coords = np.arange(spec_n + 1) * res / corr
    gx, gy = np.meshgrid(coords, coords)
    stds = []
    for seed in range(n_seeds):
        raw = terrain._fbm(gx, gy, derive_seed(seed, "fbm"), octaves, persistence)
        stds.append(raw.std())
    return np.array(stds)


if __name__ == "__main__":
    for fam, octv, pers in [("ROLLING", 2, 0.5), ("ROUGH", 4, 0.5)]:
        s = pooled_std(octv, pers)
        print(f"{fam}: pooled fbm std = {s:.4f}")
        # realization spread at a typical roster setting
        for corr in (1.0, 2.0, 4.0):
            spread = per_realization_spread(octv, pers, corr, 32.0, 0.25)
            print(
                f"  corr={corr:4.1f} m over 32 m: per-field std/pooled "
                f"min={spread.min()/s:.3f} max={spread.max()/s:.3f}"
            )
