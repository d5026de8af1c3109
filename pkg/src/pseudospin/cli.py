"""Command-line driver: scenario files in, trajectories and reports out.

Scenarios are JSON; complex numbers are [re, im] pairs (plain numbers are
accepted as reals).  Every run writes machine-readable output into the
--out directory and exits 0 on success, 2 on a validation problem and 3
when the mathematics refuses (no real solution, wrong regime, ...).
Identical scenarios produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import (
    Trajectory,
    evolve_trajectory,
    integrate,
    rhs_damped_precession,
    rhs_llg,
    rhs_llg_spin_torque,
)
from .exceptions import PseudospinError, ValidationError
from .grassmann import correspondence_suite
from .linalg import field_square, hamiltonian_from_field, spectrum
from .metric import build_isometry, canonical_limit_field, canonical_rotation, is_pseudo_hermitian
from .rabi import (
    PseudoHermitianRabi,
    RabiParameters,
    classify_regime,
    ph_condition_residual,
    ph_condition_residual_spin_valve,
    ph_rabi_amplitude,
    rabi_amplitude,
    solve_suppression_B,
    solve_suppression_spin_valve,
)

KINDS = (
    "check",
    "metric",
    "evolve",
    "bloch",
    "rabi",
    "suppress",
    "grassmann_verify",
    "sweep",
)


# ----------------------------------------------------------- scenario parsing


def _parse_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValidationError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _parse_cvector(value, where: str, size: int) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != size:
        raise ValidationError(f"{where}: expected {size} components")
    return np.array([_parse_complex(v, where) for v in value], dtype=complex)


def _parse_time_grid(window, step_override=None) -> np.ndarray:
    if not isinstance(window, dict):
        raise ValidationError("time: expected an object with start/stop and step or num")
    start = float(window.get("start", 0.0))
    stop = float(window["stop"])
    if stop < start:
        raise ValidationError("time: stop must be >= start")
    if step_override is not None:
        step = float(step_override)
    elif "step" in window:
        step = float(window["step"])
    elif "num" in window:
        num = int(window["num"])
        if num < 1:
            raise ValidationError("time: num must be positive")
        return np.linspace(start, stop, num)
    else:
        raise ValidationError("time: needs step or num")
    if step <= 0:
        raise ValidationError("time: step must be positive")
    count = int(round((stop - start) / step))
    return start + step * np.arange(count + 1)


def _require(scenario: dict, key: str):
    if key not in scenario:
        raise ValidationError(f"scenario is missing required key {key!r}")
    return scenario[key]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return [z.real, z.imag]
    return obj


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n")


# --------------------------------------------------------------- trajectories


def emit_trajectory(traj: Trajectory, path) -> None:
    """Write a trajectory as CSV with 17 significant digits and LF endings.

    Columns are the fixed schema t, n{1,2,3}_{re,im}, norm_canonical,
    norm_eta.  Quantum runs fill the norm columns with the canonical and
    metric norms; classical runs carry the raw and projected |n| there.
    """
    canonical = traj.norms.get("canonical", traj.norms.get("raw"))
    eta = traj.norms.get("eta", traj.norms.get("projected"))
    if canonical is None:
        raise ValidationError("trajectory has no norm record")
    if eta is None:
        eta = canonical
    states = np.asarray(traj.states, dtype=complex)
    with open(path, "w", newline="") as fh:
        fh.write("t,n1_re,n1_im,n2_re,n2_im,n3_re,n3_im,norm_canonical,norm_eta\n")
        for k, t in enumerate(traj.times):
            row = [t]
            for j in range(3):
                row.extend([states[k, j].real, states[k, j].imag])
            row.extend([canonical[k], eta[k]])
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_trajectory(path):
    """Parse a trajectory CSV back into (times, states, norms) arrays."""
    rows = []
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
        if header[0] != "t":
            raise ValidationError(f"{path}: not a trajectory file")
        for line in fh:
            rows.append([float(v) for v in line.strip().split(",")])
    data = np.array(rows)
    states = data[:, 1:7:2] + 1j * data[:, 2:8:2]
    return data[:, 0], states, {"canonical": data[:, 7], "eta": data[:, 8]}


# ----------------------------------------------------------------- metric aid


def _metric_inputs(scenario: dict, tol: float):
    field = _parse_cvector(_require(scenario, "field"), "field", 3)
    if "b_field" in scenario:
        real_field = _parse_cvector(scenario["b_field"], "b_field", 3)
        return field, real_field
    if "alpha" in scenario:
        alpha = float(scenario["alpha"])
        if alpha == 0.0:
            raise ValidationError("alpha must be nonzero for the limit family")

        def family(a):
            return field.real + 1j * (a / alpha) * field.imag

        return field, canonical_limit_field(family, alpha, tol).astype(complex)
    if np.max(np.abs(field.imag)) < tol:
        return field, field.real.astype(complex)
    raise ValidationError("metric construction needs b_field or alpha for a complex field")


# ------------------------------------------------------------------- handlers


def _run_check(scenario, out_dir, tol, step):
    field = _parse_cvector(_require(scenario, "field"), "field", 3)
    h = hamiltonian_from_field(field)
    e_plus, e_minus = spectrum(h)
    payload = {
        "field": field,
        "field_square": field_square(field),
        "det": complex(np.linalg.det(h)),
        "pseudo_hermitian": bool(is_pseudo_hermitian(h, tol)),
        "eigenvalues": [e_plus, e_minus],
    }
    _write_json(out_dir / "check.json", payload)
    return payload


def _run_metric(scenario, out_dir, tol, step):
    field, real_field = _metric_inputs(scenario, tol)
    pair = build_isometry(field, real_field, tol)
    rotation = canonical_rotation(field, real_field, tol)
    h_f = hamiltonian_from_field(field)
    h_b = hamiltonian_from_field(real_field)
    similarity = pair.isometry @ h_b @ np.linalg.inv(pair.isometry) - h_f
    payload = {
        "field": field,
        "b_field": real_field,
        "isometry": pair.isometry,
        "eta": pair.eta,
        "rotation": rotation,
        "checks": {
            "rotation_residual": float(np.linalg.norm(rotation @ real_field - field)),
            "similarity_residual": float(np.linalg.norm(similarity)),
            "eta_identity_distance": float(np.linalg.norm(pair.eta - np.eye(2))),
            "eigenvalue": spectrum(h_f)[0],
        },
    }
    _write_json(out_dir / "metric.json", payload)
    return payload


def _run_evolve(scenario, out_dir, tol, step):
    field = _parse_cvector(_require(scenario, "field"), "field", 3)
    psi0 = _parse_cvector(_require(scenario, "state"), "state", 2)
    grid = _parse_time_grid(_require(scenario, "time"), step)
    metric_tag = scenario.get("metric", "canonical")
    h = hamiltonian_from_field(field)
    if metric_tag == "canonical":
        traj = evolve_trajectory(h, psi0, grid)
    elif metric_tag == "eta":
        _, real_field = _metric_inputs(scenario, tol)
        pair = build_isometry(field, real_field, tol)
        traj = evolve_trajectory(
            h,
            psi0,
            grid,
            eta=pair.eta,
            observables=scenario.get("observables", "dressed"),
            isometry=pair.isometry,
        )
    else:
        raise ValidationError(f"unknown metric tag {metric_tag!r}")
    emit_trajectory(traj, out_dir / "trajectory.csv")
    payload = {
        "samples": len(traj),
        "metric": metric_tag,
        "norm_canonical_drift": float(np.max(np.abs(traj.norms["canonical"] - 1.0))),
        "norm_eta_drift": float(np.max(np.abs(traj.norms["eta"] - 1.0))),
    }
    _write_json(out_dir / "evolve.json", payload)
    return payload


def _run_bloch(scenario, out_dir, tol, step):
    model = scenario.get("model", "damped")
    n0 = np.array([float(v) for v in _require(scenario, "n0")])
    grid = _parse_time_grid(_require(scenario, "time"), step)
    renormalize = bool(scenario.get("renormalize", False))
    if model in ("damped", "precession"):
        field = _parse_cvector(_require(scenario, "field"), "field", 3)
        rhs = lambda t, n: rhs_damped_precession(n, field)
    elif model == "llg":
        field = _parse_cvector(_require(scenario, "field"), "field", 3).real
        alpha = float(_require(scenario, "alpha"))
        rhs = lambda t, n: rhs_llg(n, field, alpha)
    elif model == "llg_spin_valve":
        field = _parse_cvector(_require(scenario, "field"), "field", 3).real
        alpha = float(_require(scenario, "alpha"))
        torque = float(_require(scenario, "a"))
        polarization = np.array([float(v) for v in _require(scenario, "polarization")])
        rhs = lambda t, n: rhs_llg_spin_torque(n, field, alpha, torque, polarization)
    else:
        raise ValidationError(f"unknown bloch model {model!r}")
    traj = integrate(rhs, n0, grid, renormalize=renormalize)
    emit_trajectory(traj, out_dir / "trajectory.csv")
    payload = {
        "model": model,
        "samples": len(traj),
        "norm_raw_drift": float(np.max(np.abs(traj.norms["raw"] - 1.0))),
        "final": traj.states[-1],
        "step": traj.metadata["step"],
    }
    _write_json(out_dir / "bloch.json", payload)
    return payload


def _rabi_point(p: RabiParameters, tol: float) -> dict:
    record = {
        "b": p.b,
        "b_z": p.b_z,
        "omega": p.omega,
        "alpha": p.alpha,
        "a": p.a,
        "delta": p.delta,
        "rabi_freq_sq": p.rabi_freq_sq,
        "cond_residual": ph_condition_residual(p),
        "regime": classify_regime(p, tol),
    }
    scale = max(1.0, p.b**2, p.delta**2, (p.alpha * p.omega) ** 2)
    if abs(record["cond_residual"]) <= tol * scale and p.delta * p.omega <= tol * scale:
        record["omega_sq"] = -p.delta * p.omega
    else:
        record["omega_sq"] = None
    try:
        record["suppression_b"] = solve_suppression_B(p.b_z, p.omega, p.alpha)
    except PseudospinError:
        record["suppression_b"] = None
    if p.a != 0.0:
        record["spin_valve_residual"] = ph_condition_residual_spin_valve(p)
    return record


def _run_rabi(scenario, out_dir, tol, step):
    p = RabiParameters(
        b=float(_require(scenario, "b")),
        b_z=float(_require(scenario, "b_z")),
        omega=float(_require(scenario, "omega")),
        alpha=float(scenario.get("alpha", 0.0)),
        a=float(scenario.get("a", 0.0)),
    )
    payload = _rabi_point(p, tol)
    amplitude = None
    if p.alpha == 0.0:
        amplitude = lambda t: rabi_amplitude(p, t)
        payload["amplitude_form"] = "undamped"
    elif payload["omega_sq"] is not None:
        pr = PseudoHermitianRabi(p, tolerance=tol)
        amplitude = lambda t: ph_rabi_amplitude(pr, t)
        payload["amplitude_form"] = "suppressed_damping"
    else:
        payload["amplitude_form"] = None
    if amplitude is not None and "time" in scenario:
        grid = _parse_time_grid(scenario["time"], step)
        with open(out_dir / "amplitude.csv", "w", newline="") as fh:
            fh.write("t,amp_re,amp_im\n")
            for t in grid:
                z = amplitude(t)
                fh.write(f"{t:.17g},{z.real:.17g},{z.imag:.17g}\n")
        payload["amplitude_samples"] = len(grid)
    _write_json(out_dir / "rabi.json", payload)
    return payload


def _run_suppress(scenario, out_dir, tol, step):
    b_z = float(_require(scenario, "b_z"))
    omega = float(_require(scenario, "omega"))
    alpha = float(_require(scenario, "alpha"))
    torque = float(scenario.get("a", 0.0))
    if torque == 0.0:
        b = solve_suppression_B(b_z, omega, alpha)
        residual = ph_condition_residual(RabiParameters(b, b_z, omega, alpha))
    else:
        b = solve_suppression_spin_valve(b_z, omega, alpha, torque)
        residual = ph_condition_residual_spin_valve(
            RabiParameters(b, b_z, omega, alpha, a=torque)
        )
    payload = {
        "b": b,
        "b_squared": b * b,
        "residual": residual,
        "delta": b_z - omega,
        "a": torque,
    }
    _write_json(out_dir / "suppress.json", payload)
    return payload


def _run_grassmann(scenario, out_dir, tol, step):
    field = [float(v) for v in scenario.get("b_field", [0.7, -1.1, 0.4])]
    suite = correspondence_suite(field, tol=max(tol, 1e-13))
    required = suite["generator_pairs"] + suite["hamiltonian_pairs"]
    suite["required_pairs_exact"] = all(entry["exact"] for entry in required)
    suite["b_field"] = field
    _write_json(out_dir / "grassmann.json", suite)
    if not suite["required_pairs_exact"]:
        raise ValidationError("generator or Hamiltonian correspondence pairs failed")
    return suite


def _grid_axis(axis) -> list:
    if isinstance(axis, (list, tuple)):
        return [float(v) for v in axis]
    if isinstance(axis, dict):
        return list(np.linspace(float(axis["start"]), float(axis["stop"]), int(axis["num"])))
    return [float(axis)]


def _run_sweep(scenario, out_dir, tol, step):
    grid = _require(scenario, "grid")
    if not isinstance(grid, dict):
        raise ValidationError("grid: expected an object of parameter axes")
    axes = {}
    for name in ("b", "b_z", "omega", "alpha", "a"):
        if name in grid:
            axes[name] = _grid_axis(grid[name])
        elif name in scenario:
            axes[name] = [float(scenario[name])]
        elif name == "a":
            axes[name] = [0.0]
        else:
            raise ValidationError(f"sweep needs {name!r} in the grid or as a scalar")
    points = [
        RabiParameters(b=b, b_z=b_z, omega=omega, alpha=alpha, a=a)
        for b, b_z, omega, alpha, a in itertools.product(
            axes["b"], axes["b_z"], axes["omega"], axes["alpha"], axes["a"]
        )
    ]
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        records = list(pool.map(lambda p: _rabi_point(p, tol), points))
    with open(out_dir / "sweep.jsonl", "w", newline="") as fh:
        for record in records:
            fh.write(json.dumps(_jsonable(record), sort_keys=True) + "\n")
    summary = {"points": len(records)}
    _write_json(out_dir / "sweep.json", summary)
    return summary


_HANDLERS = {
    "check": _run_check,
    "metric": _run_metric,
    "evolve": _run_evolve,
    "bloch": _run_bloch,
    "rabi": _run_rabi,
    "suppress": _run_suppress,
    "grassmann_verify": _run_grassmann,
    "sweep": _run_sweep,
}


def run(kind: str, scenario_path, out_dir, tol: float = 1e-10, step=None) -> int:
    """Execute one scenario; returns the process exit code."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        try:
            scenario = json.loads(Path(scenario_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read scenario: {exc}") from exc
        if not isinstance(scenario, dict):
            raise ValidationError("scenario must be a JSON object")
        declared = scenario.get("kind")
        if declared is not None and declared != kind:
            raise ValidationError(f"scenario kind {declared!r} does not match command {kind!r}")
        _HANDLERS[kind](scenario, out, tol, step)
    except PseudospinError as exc:
        _write_json(out / "error.json", {"error": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pseudospin",
        description="Two-level pseudo-Hermitian dynamics: checks, metrics, evolution, "
        "Rabi scenarios, damping suppression and Grassmann verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        name = kind.replace("_", "-")
        cmd = sub.add_parser(name, help=f"run a {name} scenario")
        cmd.add_argument("--scenario", required=True, help="scenario JSON file")
        cmd.add_argument("--out", required=True, help="output directory")
        cmd.add_argument("--tol", type=float, default=1e-10, help="numerical tolerance")
        cmd.add_argument("--step", type=float, default=None, help="time-grid step override")
    args = parser.parse_args(argv)
    kind = args.command.replace("-", "_")
    return run(kind, args.scenario, args.out, tol=args.tol, step=args.step)


if __name__ == "__main__":
    sys.exit(main())
