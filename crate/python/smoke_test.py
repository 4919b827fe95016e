#!/usr/bin/env python3
"""Smoke test for the ion_gate_forge_py extension module.

Builds nothing itself: run `cargo build -p ion-gate-forge-py` first, then
`python3 python/smoke_test.py`. The script locates the compiled cdylib under
target/, copies it next to a temp directory under the importable name, and
exercises the bound API end to end.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    names = ["libion_gate_forge_py.so", "libion_gate_forge_py.dylib", "ion_gate_forge_py.dll"]
    candidates = []
    for profile in ("debug", "release"):
        for name in names:
            p = REPO / "target" / profile / name
            if p.exists():
                candidates.append(p)
    if not candidates:
        sys.exit("cdylib not found; run `cargo build -p ion-gate-forge-py` first")
    return max(candidates, key=lambda p: p.stat().st_mtime)


def main() -> None:
    src = locate_cdylib()
    tmp = Path(tempfile.mkdtemp(prefix="ion-gate-forge-py-"))
    suffix = ".pyd" if src.suffix == ".dll" else ".so"
    shutil.copy2(src, tmp / f"ion_gate_forge_py{suffix}")
    sys.path.insert(0, str(tmp))

    import ion_gate_forge_py as igf

    # Protocol I design hits the target phase exactly
    d1 = igf.design_protocol_i()
    assert d1.protocol == "I"
    assert abs(d1.theta - math.pi / 4) < 1e-12, d1.theta
    assert abs(d1.tau1 / (2 * math.pi) - 0.5386) < 1e-3, d1.tau1
    assert d1.residual_cc <= 1e-9 and d1.residual_cr <= 1e-9

    # schedule round trip: re-evaluating the expanded events reproduces theta
    events = d1.expand()
    assert len(events) == 4
    assert abs(igf.gate_phase(events) - d1.theta) < 1e-12
    cc, cr = igf.commensurability(events)
    assert abs(cc) <= 1e-9 and abs(cr) <= 1e-9

    # JSON round trip preserves the design
    d1b = igf.GateDesign.from_json(d1.to_json())
    assert d1b.theta == d1.theta and d1b.scale_n == d1.scale_n

    # Protocol II at nu T = 0.628: residuals solved to 1e-9
    d2 = igf.design_protocol_ii(0.628)
    assert d2.protocol == "II"
    assert d2.tau3 is not None
    assert d2.residual_cc <= 1e-9 and d2.residual_cr <= 1e-9
    xr, pr = igf.max_excursion(d2.expand())
    assert xr > 0 and pr > 0

    # exact Fock-space verification agrees with the analytic phase
    report = igf.extract_phases(d1)
    assert abs(report["theta_extracted"] - d1.theta) % (math.pi / 2) < 1e-9
    assert report["motional_dependence"] <= 1e-9
    assert report["closure_error"] <= 1e-9
    assert set(report["phi"]) == {"pp", "pm", "mp", "mm"}

    # free evolution of a coherent state traces the unit circle
    samples = igf.trajectory([], nu_mode=1.0, kick_scale=0.0, alpha0=1 + 0j, dt=0.1)
    for t, x, p in samples:
        assert abs(x * x + p * p - 2.0) < 1e-9

    # controlled-phase truth table: (1, 1, 1, -1), no leakage
    tt = igf.cz95_truth_table()
    expected = [1, 1, 1, -1]
    for phase, want in zip(tt["phases"], expected):
        assert abs(phase - want) <= 1e-9, tt["phases"]
    assert tt["leakage"] <= 1e-10

    # sideband error grows with Omega/nu and is small in the resolved regime
    errs = [igf.sideband_population_error(om) for om in (0.05, 0.1, 0.2)]
    assert errs[0] <= 0.01
    assert errs[0] < errs[1] < errs[2]

    # invalid input raises instead of crashing
    try:
        igf.design_protocol_i(target_theta=-1.0)
    except ValueError:
        pass
    else:
        sys.exit("negative target should raise ValueError")

    print("smoke test passed:",
          f"protocol I N={d1.scale_n}, theta={d1.theta:.12f};",
          f"protocol II Np={d2.pulse_pairs_np};",
          f"sideband errors {['%.3e' % e for e in errs]}")


if __name__ == "__main__":
    main()
