#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# Regenerates data/atmosphere_p676.txt from the ITU-R P.676 line-by-line model
# implemented by the `itur` package (pip install itur).

import argparse

import numpy as np
from itur.models import itu676


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/atmosphere_p676.txt")
    ap.add_argument("--f-min", type=float, default=1.0)
    ap.add_argument("--f-max", type=float, default=350.0)
    ap.add_argument("--step", type=float, default=0.25)
    ap.add_argument("--temperature-c", type=float, default=15.0)
    ap.add_argument("--pressure-pa", type=float, default=101300.0)
    ap.add_argument("--water-vapor", type=float, default=7.5)
    args = ap.parse_args()

    n = int(round((args.f_max - args.f_min) / args.step)) + 1
    freqs = args.f_min + args.step * np.arange(n)
    t_k = args.temperature_c + 273.15
    p_hpa = args.pressure_pa / 100.0  # dry-air pressure
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("# Specific attenuation by atmospheric gases (oxygen + water vapour)\n")
        fh.write("# ITU-R P.676 line-by-line model, generated by tools/gen_atmosphere_table.py\n")
        fh.write(f"# temperature_c = {args.temperature_c:g}\n")
        fh.write(f"# pressure_pa = {args.pressure_pa:g}\n")
        fh.write(f"# water_vapor_g_m3 = {args.water_vapor:g}\n")
        fh.write("# frequency_GHz specific_attenuation_dB_per_km\n")
        for f in freqs:
            g = itu676.gamma_exact(float(f), p_hpa, args.water_vapor, t_k)
            fh.write(f"{f:.2f} {float(np.asarray(g.value if hasattr(g, 'value') else g)):.6e}\n")


if __name__ == "__main__":
    main()
