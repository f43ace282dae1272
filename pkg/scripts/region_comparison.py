#!/usr/bin/env python3
"""Trace the rate-region comparison at 0/10/50 dB receive SNR.

Writes one frontier CSV and one annotated JSON per channel kind per SNR
(cognitive X, cognitive interference, broadcast dual-MAC outer bound) for
the reference cross gains (0.8, 0.2), plus a printed summary with the
fully-cooperative sum-rate cap.  The JSON points carry a tangent-slope
annotation: frontier stretches with tangent slope steeper than -1 are where
the achievable region is conjectured to hug the outer bound.

Usage: python scripts/region_comparison.py [--out results/regions]
"""
import argparse
from pathlib import Path

from xchannel import (
    ChannelParams,
    SweepGrid,
    bc_outer_dual_mac,
    cooperative_outer,
    snr_to_power,
    sweep_cognitive_ic,
    sweep_cognitive_x,
)
from xchannel.regions import write_frontier_csv, write_frontier_json

SNRS_DB = (0.0, 10.0, 50.0)
ALPHA12, ALPHA21 = 0.8, 0.2


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/regions"))
    parser.add_argument("--grid", type=int, default=33)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    grid = SweepGrid(n_power_split=args.grid, n_beta=max(2, (args.grid + 1) // 2))

    print(f"{'snr_db':>7s} {'kind':6s} {'points':>7s} {'max_sum':>9s} {'max_r1':>9s}")
    for snr_db in SNRS_DB:
        power = snr_to_power(snr_db, 1.0)
        ch = ChannelParams(alpha12=ALPHA12, alpha21=ALPHA21, n1=1.0, n2=1.0,
                           p1=power, p2=power)
        frontiers = {
            "cogx": sweep_cognitive_x(ch, grid),
            "cogic": sweep_cognitive_ic(ch, grid),
            "bc": bc_outer_dual_mac(ch, 2.0 * power, grid),
        }
        for kind, frontier in frontiers.items():
            stem = args.out / f"frontier_{kind}_{snr_db:g}"
            write_frontier_csv(frontier, stem.with_suffix(".csv"))
            write_frontier_json(
                frontier, stem.with_suffix(".json"),
                meta={"snr_db": snr_db, "alpha12": ALPHA12, "alpha21": ALPHA21},
            )
            print(f"{snr_db:7g} {kind:6s} {len(frontier.points):7d} "
                  f"{frontier.max_sum_rate:9.4f} {frontier.max_r1_point[0]:9.4f}")
        coop = cooperative_outer(ch, 2.0 * power)
        print(f"{snr_db:7g} {'coop':6s} {'-':>7s} {coop:9.4f} {'-':>9s}")
    print(f"\nfrontier files in {args.out}/")


if __name__ == "__main__":
    main()
