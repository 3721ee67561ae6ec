"""Command-line interface.

Subcommands: forward, inverse, periodize, sweep, roundtrip, figure1, check.
All floating output uses 17 significant digits and LF line endings; identical
inputs produce byte-identical files.  NLFT_THREADS caps sweep parallelism
(results are sorted before writing, so the output does not depend on it).

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import _corpus as corpus
from .converge import (HatFunction, convergence_sweep, default_zgrid, figure1_data,
                       oscillating_step_average, roundtrip_residual)
from .errors import InputError, NlftError, NumericalError
from .forward import (DiscretePotential, StepPotential, forward_continuous,
                      forward_continuous_grid, forward_discrete,
                      forward_discrete_grid, fourier_linear, potential_from_spec,
                      schur_ratio)
from .herglotz import conjugate_poisson_integral, poisson_integral, schwarz_transform
from .inverse import (opuc_h11, potential_from_h11, toeplitz_entry_sum_exact,
                      toeplitz_h11)
from .measure import measure_from_spec, measure_to_spec, periodize, trig_moments

FLOAT_FMT = "%.16e"


def _fmt(value) -> str:
    return FLOAT_FMT % value


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row) + "\n")


def parse_pi_value(token: str) -> float:
    """Numbers with an optional pi suffix: '2pi', 'pi', '0.5pi', '3.14'."""
    token = token.strip().lower()
    if token.endswith("pi"):
        head = token[:-2].strip()
        factor = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
        return factor * math.pi
    return float(token)


def parse_pi_list(text: str) -> list[float]:
    return [parse_pi_value(tok) for tok in text.split(",") if tok.strip()]


def parse_grid(text: str) -> np.ndarray:
    """Inclusive grid 'lo:hi:count'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must be lo:hi:count, got {text!r}")
    lo, hi = parse_pi_value(parts[0]), parse_pi_value(parts[1])
    count = int(parts[2])
    if count < 1:
        raise InputError("grid count must be >= 1")
    return np.linspace(lo, hi, count)


def _thread_count() -> int:
    raw = os.environ.get("NLFT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"NLFT_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("NLFT_THREADS must be a positive integer")
    return n


def _parallel_map(fn, items):
    n = _thread_count()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _read_json(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# -- subcommands -------------------------------------------------------------


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, math.ceil(len(items) / n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _cmd_forward(args) -> int:
    pot = potential_from_spec(_read_json(args.potential))
    res = parse_grid(args.grid_re)
    ims = parse_pi_list(args.grid_im)
    zs = [complex(r, im) for im in ims for r in res]
    grid_fn = forward_discrete_grid if isinstance(pot, DiscretePotential) \
        else forward_continuous_grid
    rows = []
    for chunk in _parallel_map(lambda zc: grid_fn(pot, np.array(zc)),
                               _chunks(zs, _thread_count())):
        a_arr, b_arr = chunk
        rows.extend(zip(a_arr.tolist(), b_arr.tolist()))
    out_rows = []
    for z, (a, b) in zip(zs, rows):
        if abs(a) < 1e-14 * max(1.0, abs(b)):
            raise NumericalError(f"resonance at z = {z}: a = 0")
        out_rows.append([z.real, z.imag, (b / a).real, (b / a).imag, abs(a), abs(b)])
    out_rows.sort(key=lambda r: (r[1], r[0]))
    _write_csv(args.out, ["z_re", "z_im", "schur_re", "schur_im", "abs_a", "abs_b"],
               out_rows)
    return 0


def _cmd_inverse(args) -> int:
    mu = measure_from_spec(_read_json(args.measure))
    if not mu.is_periodic:
        mu = periodize(mu, args.T)
    elif abs(mu.half_period - args.T) > 1e-12 * max(1.0, args.T):
        raise InputError(f"measure is periodic with T = {mu.half_period}, "
                         f"but --T = {args.T}")
    mom = trig_moments(mu, args.N)
    route = toeplitz_h11 if args.method == "toeplitz" else opuc_h11
    h = route(mom, args.N)
    pot = potential_from_h11(h)
    rows = [[str(n), n * h.step_width, h.steps[n],
             pot.masses[n - 1] if n >= 1 else 0.0]
            for n in range(len(h.steps))]
    _write_csv(args.out, ["n", "t_n", "h11", "mass"], rows)
    return 0


def _cmd_periodize(args) -> int:
    import json as _json
    mu = measure_from_spec(_read_json(args.measure))
    muT = periodize(mu, args.T)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(_json.dumps(measure_to_spec(muT), indent=2) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    mu = measure_from_spec(_read_json(args.measure))
    Ts = parse_pi_list(args.T_list)
    res = parse_grid(args.grid_re)
    ims = parse_pi_list(args.grid_im)
    grid = [complex(r, im) for im in ims for r in res]
    rows_out = []
    for chunk in _parallel_map(lambda T: convergence_sweep(mu, [T], grid, args.tol), Ts):
        rows_out.extend(chunk)
    rows_out.sort(key=lambda r: (r.T, r.z.real, r.z.imag))
    _write_csv(args.out,
               ["T", "z_re", "z_im", "approx_re", "approx_im",
                "target_re", "target_im", "abs_err"],
               [[r.T, r.z.real, r.z.imag, r.approx.real, r.approx.imag,
                 r.target.real, r.target.imag, r.abs_err] for r in rows_out])
    return 0


def _cmd_roundtrip(args) -> int:
    mu = measure_from_spec(_read_json(args.measure))
    residual = roundtrip_residual(mu, args.T, args.N, tol=args.tol)
    if args.out:
        _write_csv(args.out, ["T", "N", "max_residual"],
                   [[args.T, str(args.N), residual]])
    print(_fmt(residual))
    return 0


def _cmd_figure1(args) -> int:
    mu = measure_from_spec(_read_json(args.measure))
    Ts = parse_pi_list(args.T_list)
    beta = args.oracle_beta
    oracle = (lambda t: -beta / (1 + beta * t)) if beta is not None else None
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for T in Ts:
        rep = figure1_data(mu, T, args.N, oracle=oracle,
                           alt_oracle_note=args.alt_oracle)
        for note in rep.notes:
            print(f"# T={T:g}: {note}", file=sys.stderr)
        _write_csv(str(outdir / f"figure1_T{T:.6f}.csv"),
                   ["t", "scaled_mass", "oracle_f"],
                   [[r.t, r.scaled_mass, r.oracle_f] for r in rep.rows])
    return 0


# -- property battery ---------------------------------------------------------


def _check_forward_properties(rng) -> list[tuple[str, bool, str]]:
    results = []
    worst_det = worst_tr = worst_rl = 0.0
    xs = np.linspace(-7.0, 7.0, 200)
    for _ in range(100):
        n = rng.integers(1, 9)
        pot = DiscretePotential(float(rng.uniform(0.2, 1.5)),
                                tuple(rng.normal(scale=0.6, size=n)))
        x = float(rng.choice(xs))
        tm = forward_discrete(pot, x)
        worst_det = max(worst_det, abs(abs(tm.a) ** 2 - abs(tm.b) ** 2 - 1))
        worst_rl = max(worst_rl,
                       abs(schur_ratio(tm).value) - math.tanh(pot.l1_norm()))
        k = int(rng.integers(1, 5))
        z = complex(rng.uniform(-3, 3), rng.uniform(0.2, 2.0))
        base = forward_discrete(pot, z)
        shifted = forward_discrete(
            DiscretePotential(pot.spacing, (0.0,) * k + pot.masses), z)
        phase = np.exp(2j * z * k * pot.spacing)
        worst_tr = max(worst_tr, abs(shifted.b - phase * base.b),
                       abs(shifted.a - base.a))
    results.append(("determinant |a|^2-|b|^2 = 1", worst_det <= 1e-11, f"{worst_det:.2e}"))
    results.append(("translation phase", worst_tr <= 1e-12, f"{worst_tr:.2e}"))
    results.append(("riemann-lebesgue bound", worst_rl <= 1e-12, f"{worst_rl:.2e}"))

    worst_sc = 0.0
    for _ in range(25):
        k = int(rng.integers(1, 4))
        brk = np.cumsum(rng.uniform(0.2, 1.0, size=k))
        vals = rng.uniform(-0.8, 0.8, size=k)
        pot = StepPotential(tuple(brk), tuple(vals))
        afac = float(rng.uniform(0.5, 2.0))
        scaled = StepPotential(tuple(b / afac for b in brk),
                               tuple(afac * v for v in vals))
        z = complex(rng.uniform(-3, 3), rng.uniform(0.2, 2.0))
        lhs = forward_continuous(scaled, z)
        rhs = forward_continuous(pot, z / afac)
        worst_sc = max(worst_sc, abs(lhs.a - rhs.a), abs(lhs.b - rhs.b))
    results.append(("time scaling", worst_sc <= 1e-9, f"{worst_sc:.2e}"))

    g = DiscretePotential(0.5, tuple(rng.normal(scale=1.0, size=8)))
    grid = np.linspace(-3, 3, 41)
    errs = []
    for eps in (1e-2, 1e-3):
        scaled = DiscretePotential(g.spacing, tuple(eps * c for c in g.masses))
        err = max(abs(schur_ratio(forward_discrete(scaled, x)).value
                      - eps * fourier_linear(g, x)) for x in grid)
        errs.append(err)
    ratio = errs[0] / errs[1]
    results.append(("linearization error order", 500 <= ratio <= 2000, f"ratio {ratio:.0f}"))
    return results


def _check_inverse_properties(rng) -> list[tuple[str, bool, str]]:
    results = []
    worst_route = 0.0
    for _, mom in corpus.corpus_moments(70):
        h1 = toeplitz_h11(mom, 64)
        h2 = opuc_h11(mom, 64)
        worst_route = max(worst_route,
                          float(np.max(np.abs(np.array(h1.steps) - np.array(h2.steps)))))
    results.append(("route equality (64 steps)", worst_route <= 1e-10, f"{worst_route:.2e}"))

    worst_oracle = 0.0
    for _, mom in corpus.corpus_moments(10)[:4]:
        h = toeplitz_h11(mom, 8)
        sums = np.cumsum(h.steps)
        for n in range(8):
            exact = toeplitz_entry_sum_exact(mom, n)
            worst_oracle = max(worst_oracle, abs(sums[n] - exact))
    results.append(("exact-inverse oracle (n <= 7)", worst_oracle <= 1e-12,
                    f"{worst_oracle:.2e}"))

    res = roundtrip_residual(corpus.flagship_measure(), math.pi, 60,
                             zgrid=default_zgrid(12))
    results.append(("round trip (flagship, N=60)", res <= 1e-9, f"{res:.2e}"))
    return results


def _check_transform_properties(rng) -> list[tuple[str, bool, str]]:
    results = []
    worst_dec = 0.0
    worst_pos = math.inf
    for _, mu in corpus.corpus_measures():
        for _ in range(20):
            z = complex(rng.uniform(-5, 5), rng.uniform(0.1, 10.0))
            S = schwarz_transform(mu, z, 1e-11).value
            P = poisson_integral(mu, z, 1e-11)
            Q = conjugate_poisson_integral(mu, z, 1e-11)
            worst_dec = max(worst_dec, abs(S - (P + 1j * Q)))
            worst_pos = min(worst_pos, P)
    results.append(("decomposition S = P + iQ", worst_dec <= 1e-9, f"{worst_dec:.2e}"))
    results.append(("poisson positivity", worst_pos > 0, f"min P = {worst_pos:.3g}"))

    avg = oscillating_step_average([0.0, 0.5, 1.0], [1.0, 0.25], 4.0e5,
                                   HatFunction.triangle(0.0, 1.0, 2.0))
    lavg = oscillating_step_average([0.0, 0.5, 1.0], [1.0, 0.25], 4.0e5,
                                    HatFunction.triangle(0.0, 1.0, 2.0), transform=math.log)
    ok = abs(avg - 5 / 8) <= 1e-6 and abs(lavg + math.log(2)) <= 1e-6
    results.append(("oscillation averages (5/8, -log 2)", ok,
                    f"{avg:.8f}, {lavg:.8f}"))
    return results


def _cmd_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0
    for group in (_check_forward_properties, _check_inverse_properties,
                  _check_transform_properties):
        for name, ok, detail in group(rng):
            print(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
            failures += 0 if ok else 1
    if failures:
        print(f"{failures} property check(s) failed", file=sys.stderr)
        return 2
    print("all property checks passed")
    return 0


# -- entry point ---------------------------------------------------------------


# grid specs like "-5:5:101" must parse as values, not as option flags
_NEGATIVE_VALUE = re.compile(r"^-\d+.*$|^-\d*\.\d+.*$")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nlft",
                                description="Forward/inverse non-linear Fourier "
                                            "transforms of half-line systems")
    p._negative_number_matcher = _NEGATIVE_VALUE
    sub = p.add_subparsers(dest="verb", required=True)

    f = sub.add_parser("forward", help="transform of a potential over a z grid")
    f.add_argument("--potential", required=True, help="potential JSON document")
    f.add_argument("--grid-re", required=True, help="real grid lo:hi:count")
    f.add_argument("--grid-im", default="0", help="imaginary parts, comma list")
    f.add_argument("--out", required=True)
    f.set_defaults(fn=_cmd_forward)

    i = sub.add_parser("inverse", help="Hamiltonian steps and masses from a measure")
    i.add_argument("--measure", required=True, help="measure JSON document")
    i.add_argument("--T", type=parse_pi_value, required=True, help="half-period")
    i.add_argument("--N", type=int, required=True, help="number of steps")
    i.add_argument("--method", choices=("toeplitz", "opuc"), default="toeplitz")
    i.add_argument("--out", required=True)
    i.set_defaults(fn=_cmd_inverse)

    pz = sub.add_parser("periodize", help="write the 2T-periodization of a measure")
    pz.add_argument("--measure", required=True)
    pz.add_argument("--T", type=parse_pi_value, required=True)
    pz.add_argument("--out", required=True)
    pz.set_defaults(fn=_cmd_periodize)

    s = sub.add_parser("sweep", help="periodization convergence sweep")
    s.add_argument("--measure", required=True)
    s.add_argument("--T-list", required=True, help="comma list, pi literals allowed")
    s.add_argument("--grid-re", required=True)
    s.add_argument("--grid-im", default="1.0")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_sweep)

    r = sub.add_parser("roundtrip", help="forward-of-inverse residual")
    r.add_argument("--measure", required=True)
    r.add_argument("--T", type=parse_pi_value, required=True)
    r.add_argument("--N", type=int, required=True)
    r.add_argument("--tol", type=float, default=1e-12)
    r.add_argument("--out", default=None)
    r.set_defaults(fn=_cmd_roundtrip)

    g = sub.add_parser("figure1", help="scaled-mass rows against the density oracle")
    g.add_argument("--measure", required=True)
    g.add_argument("--T-list", required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--oracle-beta", type=float, default=None,
                   help="oracle density -beta/(1+beta t)")
    g.add_argument("--alt-oracle", default=None,
                   help="free-text alternative oracle recorded in the notes")
    g.add_argument("--out", required=True, help="output directory, one CSV per T")
    g.set_defaults(fn=_cmd_figure1)

    c = sub.add_parser("check", help="run the property battery")
    c.add_argument("--seed", type=int, default=20240801)
    c.set_defaults(fn=_cmd_check)

    for sp in sub.choices.values():
        sp._negative_number_matcher = _NEGATIVE_VALUE
    return p


def _validate_ranges(args) -> None:
    if getattr(args, "T", None) is not None and args.T <= 0:
        raise InputError(f"--T must be positive, got {args.T}")
    if getattr(args, "N", None) is not None and args.N < 1:
        raise InputError(f"--N must be >= 1, got {args.N}")
    tol = getattr(args, "tol", None)
    if tol is not None and not 0 < tol < 1:
        raise InputError(f"--tol must lie in (0, 1), got {tol}")
    tlist = getattr(args, "T_list", None)
    if tlist is not None and any(T <= 0 for T in parse_pi_list(tlist)):
        raise InputError("--T-list entries must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate_ranges(args)
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except NlftError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
