#!/usr/bin/env python3
# Copyright 2026 The dqplan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Extract one vehicle from an NGSIM trajectory export into the replay format.

NGSIM trajectory CSVs (I-80 / US-101) carry one row per vehicle per frame at
10 Hz with positions in feet:

    Vehicle_ID, Frame_ID, ..., Local_X (lateral, ft), Local_Y (longitudinal, ft), ...

The simulator ingests `t,x,y` in seconds/meters with x longitudinal. Any
alignment to a scenario's lane geometry (scale/rotation/translation) is left
to the scenario file's replay `transform` block.

Usage:
    ngsim_to_csv.py trajectories.csv VEHICLE_ID -o vehicle.csv
"""

import argparse
import csv
import sys

FT_TO_M = 0.3048
FRAME_DT = 0.1  # NGSIM exports run at 10 Hz


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="NGSIM trajectory CSV")
    parser.add_argument("vehicle_id", help="Vehicle_ID to extract")
    parser.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    args = parser.parse_args()

    rows = []
    with open(args.input, newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"Vehicle_ID", "Frame_ID", "Local_X", "Local_Y"}
        missing = required - set(reader.fieldnames or [])
        if missing:
            sys.exit(f"{args.input}: missing columns {sorted(missing)}")
        for row in reader:
            if row["Vehicle_ID"].strip() == args.vehicle_id:
                rows.append((int(row["Frame_ID"]),
                             float(row["Local_Y"]) * FT_TO_M,
                             float(row["Local_X"]) * FT_TO_M))
    if len(rows) < 2:
        sys.exit(f"vehicle {args.vehicle_id}: fewer than 2 frames found")
    rows.sort()
    first = rows[0][0]

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    try:
        out.write("t,x,y\n")
        for frame, x, y in rows:
            out.write(f"{(frame - first) * FRAME_DT:.1f},{x:.4f},{y:.4f}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
