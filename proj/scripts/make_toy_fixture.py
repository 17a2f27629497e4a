#!/usr/bin/env python3
"""Write the bundled 3-bus toy data set to data/toy/ (deterministic)."""

import argparse
import json
import math
from pathlib import Path

HOURS = 8760


def load_mw(bus: int, hour: int) -> float:
    day, h = divmod(hour, 24)
    seasonal = 1.0 + 0.25 * math.cos(2 * math.pi * (day - 200) / 365)
    diurnal = 1.0 + 0.3 * math.sin(2 * math.pi * (h - 9) / 24)
    base = (40.0, 120.0, 30.0)[bus]
    return round(base * seasonal * diurnal, 3)


def solar_cf(hour: int) -> float:
    day, h = divmod(hour, 24)
    if h < 6 or h > 19:
        return 0.0
    season = 0.8 + 0.2 * math.cos(2 * math.pi * (day - 172) / 365)
    return round(season * math.sin(math.pi * (h - 6) / 14), 4)


def wind_cf(hour: int) -> float:
    day, h = divmod(hour, 24)
    v = 0.55 + 0.25 * math.sin(2 * math.pi * day / 37) + 0.1 * math.cos(2 * math.pi * h / 24)
    return round(min(1.0, max(0.0, v)), 4)


def write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(str(x) for x in r) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "toy"))
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)

    write_csv(out / "buses.csv", ["id", "lat", "lon", "county"],
              [[0, 30.27, -97.74, "Travis"], [1, 29.76, -95.37, "Harris"], [2, 32.45, -100.41, "Nolan"]])
    write_csv(out / "generators.csv", ["bus", "tech", "capacity_mw"],
              [[0, "natural_gas", 150], [1, "solar", 20], [2, "wind", 60]])
    write_csv(out / "lines.csv", ["from", "to", "reactance_pu", "capacity_mw"],
              [[0, 1, 0.05, 80], [0, 2, 0.08, 40], [1, 2, 0.1, 30]])
    write_csv(out / "county_centroids.csv", ["county", "lat", "lon"],
              [["Travis", 30.33, -97.78], ["Harris", 29.86, -95.39], ["Nolan", 32.30, -100.41],
               ["Williamson", 30.65, -97.60]])
    write_csv(out / "psi_dc.csv", ["county", "share"], [["Harris", 0.6], ["Travis", 0.4]])
    write_csv(out / "psi_em.csv", ["county", "share"], [["Harris", 0.5], ["Williamson", 0.5]])
    write_csv(out / "base_load.csv", ["hour", "0", "1", "2"],
              [[h, load_mw(0, h), load_mw(1, h), load_mw(2, h)] for h in range(HOURS)])
    write_csv(out / "cf_solar.csv", ["hour", "1"], [[h, solar_cf(h)] for h in range(HOURS)])
    write_csv(out / "cf_wind.csv", ["hour", "2"], [[h, wind_cf(h)] for h in range(HOURS)])

    years = [2025, 2026]

    def tech(lead, capex, fom, vom=0.0, fuel=0.0, hr=0.0, **extra):
        entry = {"lead_time": lead, **extra}
        for y in years:
            entry[str(y)] = {"capex": capex, "fom": fom, "vom": vom, "fuel": fuel, "heat_rate": hr}
        return entry

    scenario = {
        "horizon": years,
        "data_dir": ".",
        "econ": {"interest_rate": 0.05, "base_year": 2025, "trans_capex": 930.0, "trans_lead_time": 1,
                 "demand_curtail_cost": 5000, "gen_curtail_cost": 100},
        "storage": {"lead_time": 1, "duration": 4, "round_trip": 0.85,
                    **{str(y): {"capex": 1200, "fom": 30} for y in years}},
        "tech": {
            "natural_gas": tech(0, 1100, 20, vom=2.0, fuel=3.5, hr=7.0, f_min=0.1, f_max=0.9, ramp=0.5),
            "solar": tech(0, 1000, 18),
            "wind": tech(0, 1300, 40),
        },
        "demand": {"E_base": [1.7, 1.8], "P_DC": [0.0, 0.02], "LF_DC": 0.9, "Q_M": 0.05,
                   "phi": [0.0, 0.1], "eta_elec": 0.97, "P_base_peak": [0.29, 0.31]},
        "clustering": {"k": 2, "seed": 7, "restarts": 4},
        "solver": {"backend": "simplex"},
    }
    (out / "scenario.json").write_text(json.dumps(scenario, indent=2) + "\n")


if __name__ == "__main__":
    main()
