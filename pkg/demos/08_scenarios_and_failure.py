# Scenario files, and what a run that dies looks like.
#
# The scenarios/ directory next to this script holds the five stock
# presets (written by serialize(), so they parse back verbatim) plus
# evacuation.ini, a run designed to drain a potential hill dry. This
# script runs the evacuation in-process; from a shell the equivalent is
#
#   qfluid run demos/scenarios/evacuation.ini -o out/
#
# which exits 3 and writes error.json next to the partial snapshots.

import os

import numpy as np

from qfluid import parse_scenario, presets, serialize
from qfluid.madelung import run
from qfluid.scenario import (build_external, build_flags, build_grid,
                             build_initial_state, build_params,
                             build_solver_config)

here = os.path.dirname(os.path.abspath(__file__))

# every preset file on disk round-trips through the parser unchanged
for name, scn in presets.suite().items():
    with open(os.path.join(here, "scenarios", name + ".ini")) as f:
        on_disk = parse_scenario(f.read())
    assert on_disk == scn and serialize(on_disk) == serialize(scn)
print("scenarios/: all five preset files parse back to their presets")
print()

with open(os.path.join(here, "scenarios", "evacuation.ini")) as f:
    scn = parse_scenario(f.read())
grid = build_grid(scn)
params = build_params(scn)
vext = build_external(scn)
state0 = build_initial_state(scn, grid, params, vext)

print("running '%s' (asked for t_end = %g) ..." % (scn.name, scn.solver.t_end))
traj = run(state0, build_solver_config(scn), build_flags(scn, grid),
           params, vext)

print("status:  %s" % traj.status)
print("message: %s" % traj.message)
print()
print("    t     min density at snapshot")
for s, r in zip(traj.snapshots, traj.records):
    print("  %5.2f    %.3e" % (r.t, r.min_density))
print()
print("%d snapshots survive out of the %d requested; the trajectory is"
      % (len(traj.snapshots), round(scn.solver.t_end / scn.solver.dt
                                    / scn.solver.snapshot_stride) + 1))
print("truncated, not discarded, so the approach to vacuum is on record")
