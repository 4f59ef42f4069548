"""Command line front end.

Subcommands:
  analyze       full pipeline report as JSON (exit 0 trap, 2 otherwise)
  wavefunction  coherent-state amplitude on a rectangular grid as CSV
  sweep         Penning uncertainty surface over (delta, epsilon) as CSV
  evolve        coherent-state trajectory as CSV

Exit codes: 0 success, 1 malformed input, 2 computed but not trap regime.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import IO, Sequence

import numpy as np

from .errors import DegenerateSpectrum, QuadCoherentError
from .gaussian import (
    coherent_wavefunction,
    decompose_linear_forms,
    displacement_vectors,
    extremal_matrix,
)
from .model import QuadraticHamiltonian, dynamical_matrix, hamiltonian_from_json
from .observables import covariance, evolve, hamiltonian_stats
from .penning import PenningParams, penning_closed_forms, penning_hamiltonian
from .spectral import (
    LadderSystem,
    RegimeKind,
    classify_regime,
    eigen_pairing,
    normalize_ladder,
    reordered,
)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _c(value: complex) -> list[float]:
    return [float(np.real(value)), float(np.imag(value))]


class _Parser(argparse.ArgumentParser):
    """argparse that reports flag errors on stderr and exits 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--file", help="path to a JSON document {\"n\": int, \"B\": [[...]]}")
    p.add_argument("--penning", action="store_true", help="build an asymmetric Penning trap")
    p.add_argument("--omega-c", type=float, default=2.0, help="cyclotron frequency")
    p.add_argument("--omega-z", type=float, default=1.0, help="axial frequency")
    p.add_argument("--epsilon", type=float, default=0.0, help="asymmetry parameter")


def _parse_z(text: str, n: int) -> np.ndarray:
    """Parse comma-separated re:im pairs into a complex label vector."""
    if not text:
        return np.zeros(n, dtype=complex)
    parts = text.split(",")
    try:
        vals = [complex(float(re), float(im)) for re, im in (p.split(":") for p in parts)]
    except ValueError as exc:
        raise QuadCoherentError(f"cannot parse --z value {text!r}: {exc}") from exc
    if len(vals) != n:
        raise QuadCoherentError(f"--z needs {n} re:im pairs, got {len(vals)}")
    return np.array(vals, dtype=complex)


def _load_system(args) -> tuple[QuadraticHamiltonian, PenningParams | None]:
    if args.penning and args.file:
        raise QuadCoherentError("use either --file or --penning, not both")
    if args.penning:
        params = PenningParams(omega_c=args.omega_c, omega_z=args.omega_z, epsilon=args.epsilon)
        return penning_hamiltonian(params), params
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            return hamiltonian_from_json(fh.read()), None
    raise QuadCoherentError("no input: pass --file PATH or --penning")


def _trap_ladder(ham: QuadraticHamiltonian, params: PenningParams | None) -> LadderSystem:
    """Ladder system in reporting order; Penning systems use the trap's
    conventional order (radial pair by the closed forms, then axial)."""
    ladder = normalize_ladder(eigen_pairing(dynamical_matrix(ham)), ham)
    if params is not None:
        ref = penning_closed_forms(params).omega
        order = [int(np.argmin(np.abs(ladder.omega - w))) for w in ref]
        ladder = reordered(ladder, order)
    return ladder


def _out_stream(args) -> IO[str]:
    if args.out:
        return open(args.out, "w", encoding="utf-8")
    return sys.stdout


def cmd_analyze(args) -> int:
    ham, params = _load_system(args)
    dyn = dynamical_matrix(ham)
    try:
        pairing = eigen_pairing(dyn)
    except DegenerateSpectrum as exc:
        report = {"regime": "degenerate", "n": ham.n, "detail": str(exc)}
        print(json.dumps(report, indent=2), file=_out_stream(args))
        return 2
    regime = classify_regime(pairing)
    if regime.kind is not RegimeKind.TRAP:
        report = {
            "regime": regime.kind.value,
            "n": ham.n,
            "lambda": [_c(v) for v in pairing.lam],
            "offending_modes": [[k, _c(v)] for k, v in regime.offending_modes],
        }
        print(json.dumps(report, indent=2), file=_out_stream(args))
        return 2
    ladder = _trap_ladder(ham, params)
    decomp = decompose_linear_forms(ladder)
    state = extremal_matrix(decomp)
    cov = covariance(ladder)
    report = {
        "regime": "trap",
        "n": ham.n,
        "omega": [float(w) for w in ladder.omega],
        "gamma": [int(g) for g in ladder.gamma],
        "g0_prime": ladder.g0_prime,
        "b": [[_c(v) for v in row] for row in ladder.b],
        "a": [[_c(v) for v in row] for row in state.a],
        "sigma": [[float(v) for v in row] for row in cov.sigma],
        "heisenberg": [float(v) for v in cov.heisenberg],
        "rs_margin": [float(v) for v in cov.rs_margin],
        "E000": ladder.g0_prime,
    }
    print(json.dumps(report, indent=2), file=_out_stream(args))
    return 0


def _parse_grid_flags(grid_flags: Sequence[str] | None, n: int, state, coh) -> list[np.ndarray]:
    """Per-axis sample coordinates from --grid axis:min:max:count flags.

    Axes not given are auto-sized to cover the displaced Gaussian with 101
    points.
    """
    C = np.linalg.inv(2.0 * state.a.real)
    sig = np.sqrt(np.diag(C))
    half = 6.0 * sig + np.abs(coh.Gamma)
    coords = [np.linspace(-half[i], half[i], 101) for i in range(n)]
    for flag in grid_flags or []:
        try:
            axis_s, lo_s, hi_s, count_s = flag.split(":")
            axis, lo, hi, count = int(axis_s), float(lo_s), float(hi_s), int(count_s)
        except ValueError as exc:
            raise QuadCoherentError(
                f"--grid expects axis:min:max:count, got {flag!r}"
            ) from exc
        if not 1 <= axis <= n:
            raise QuadCoherentError(f"--grid axis must be in 1..{n}, got {axis}")
        if count < 2 or not hi > lo:
            raise QuadCoherentError(f"--grid needs max > min and count >= 2, got {flag!r}")
        coords[axis - 1] = np.linspace(lo, hi, count)
    return coords


def cmd_wavefunction(args) -> int:
    ham, params = _load_system(args)
    regime = classify_regime(eigen_pairing(dynamical_matrix(ham)))
    if regime.kind is not RegimeKind.TRAP:
        print(f"error: system is {regime.kind.value}, no coherent states", file=sys.stderr)
        return 2
    ladder = _trap_ladder(ham, params)
    decomp = decompose_linear_forms(ladder)
    state = extremal_matrix(decomp)
    z = _parse_z(args.z, ham.n)
    coh = displacement_vectors(z, decomp)
    coords = _parse_grid_flags(args.grid, ham.n, state, coh)
    out = _out_stream(args)
    header = [f"x{i + 1}" for i in range(ham.n)] + ["re_phi", "im_phi", "abs2"]
    print(",".join(header), file=out)
    for point in itertools.product(*coords):
        x = np.array(point)
        amp = complex(coherent_wavefunction(state, coh, x))
        row = [_fmt(v) for v in point] + [
            _fmt(amp.real),
            _fmt(amp.imag),
            _fmt(abs(amp) ** 2),
        ]
        print(",".join(row), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def _parse_range(text: str, name: str) -> tuple[float, float]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError as exc:
        raise QuadCoherentError(f"{name} expects lo:hi, got {text!r}") from exc
    if not hi >= lo:
        raise QuadCoherentError(f"{name} needs hi >= lo, got {text!r}")
    return lo, hi


def cmd_sweep(args) -> int:
    from .errors import RangeError

    dlo, dhi = _parse_range(args.delta_range, "--delta-range")
    elo, ehi = _parse_range(args.epsilon_range, "--epsilon-range")
    if not (0.0 < dlo and dhi < 1.0):
        raise RangeError(f"--delta-range must stay inside (0, 1), got {dlo}:{dhi}")
    if not (-1.0 < elo and ehi < 1.0):
        raise RangeError(f"--epsilon-range must stay inside (-1, 1), got {elo}:{ehi}")
    if args.steps < 2:
        raise RangeError(f"--steps must be >= 2, got {args.steps}")
    deltas = np.linspace(dlo, dhi, args.steps)
    epsilons = np.linspace(elo, ehi, args.steps)
    out = _out_stream(args)
    print("delta,epsilon,dx_dpx,dy_dpy,dz_dpz", file=out)
    for d in deltas:
        for e in epsilons:
            cf = penning_closed_forms(PenningParams.from_delta(float(d), float(e), args.omega_c))
            print(
                ",".join(
                    [
                        _fmt(float(d)),
                        _fmt(float(e)),
                        _fmt(cf.heisenberg_xy),
                        _fmt(cf.heisenberg_xy),
                        _fmt(0.5),
                    ]
                ),
                file=out,
            )
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_evolve(args) -> int:
    from .errors import RangeError

    if args.steps < 2:
        raise RangeError(f"--steps must be >= 2, got {args.steps}")
    ham, params = _load_system(args)
    regime = classify_regime(eigen_pairing(dynamical_matrix(ham)))
    if regime.kind is not RegimeKind.TRAP:
        print(f"error: system is {regime.kind.value}, no coherent states", file=sys.stderr)
        return 2
    ladder = _trap_ladder(ham, params)
    decomp = decompose_linear_forms(ladder)
    z0 = _parse_z(args.z, ham.n)
    times = np.linspace(0.0, args.t_max, args.steps)
    out = _out_stream(args)
    n = ham.n
    header = (
        ["t"]
        + [f"{p}_z{k + 1}" for k in range(n) for p in ("re", "im")]
        + [f"x{j + 1}" for j in range(n)]
        + [f"p{j + 1}" for j in range(n)]
        + ["energy"]
    )
    print(",".join(header), file=out)
    for t in times:
        z_t, _ = evolve(z0, float(t), ladder)
        coh = displacement_vectors(z_t, decomp)
        stats = hamiltonian_stats(z_t, ladder)
        row = [_fmt(float(t))]
        for k in range(n):
            row += [_fmt(z_t[k].real), _fmt(z_t[k].imag)]
        row += [_fmt(v) for v in coh.Gamma]
        row += [_fmt(v) for v in coh.Sigma]
        row.append(_fmt(stats.mean))
        print(",".join(row), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadcoherent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="ladder, Gaussian and covariance report as JSON")
    _add_system_flags(p)
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("wavefunction", help="coherent-state amplitude on a grid as CSV")
    _add_system_flags(p)
    p.add_argument("--z", default="", help="label as comma-separated re:im pairs")
    p.add_argument("--grid", action="append", help="axis:min:max:count (repeatable)")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("sweep", help="Penning uncertainty surface as CSV")
    p.add_argument("--delta-range", default="0.05:0.95", help="lo:hi inside (0,1)")
    p.add_argument(
        "--epsilon-range",
        default="-0.9:0.9",
        help="lo:hi inside (-1,1); use --epsilon-range=-a:b for negative bounds",
    )
    p.add_argument("--steps", type=int, default=50, help="grid points per axis")
    p.add_argument("--omega-c", type=float, default=2.0, help="cyclotron frequency")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evolve", help="coherent-state trajectory as CSV")
    _add_system_flags(p)
    p.add_argument("--z", default="", help="initial label as re:im pairs")
    p.add_argument("--t-max", type=float, default=10.0, help="final time")
    p.add_argument("--steps", type=int, default=100, help="number of samples")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_evolve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error [missing_file]: {exc}", file=sys.stderr)
        return 1
    except QuadCoherentError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
