"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import serialize as sz
from .errors import ConfigParse, GFWignerError, IdentityViolation, IncompleteTomogram, NormZero, StateParse
from .field import (
    Basis,
    FieldSpec,
    Ordering,
    dual_basis,
    format_poly,
    make_basis,
    make_field,
    normal_basis,
    ordering,
    polynomial_basis,
    self_dual_basis,
)
from .geometry import Line
from .nonunique import count_distinct_wigner
from .phase_space import build_kernel, build_mubs, check_kernel, line_indicator, wigner
from .rotations import (
    RotationSet,
    canonical_rotation_set,
    canonical_rotation_set_even,
    default_even_basis,
    shifted_rotation_set,
)
from .tomography import (
    fidelity,
    random_density,
    random_pure_state,
    reconstruct,
    simulate_counts,
    tomogram_from_json,
    tomogram_of,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
ROUND_TRIP_TOL = 1e-9
NAMED_PAIRS = {"gf4-superposition": 4, "gf8-superposition": 8, "gf4-paper-state": 4, "gf8-paper-state": 8}


@dataclass
class RunConfig:
    spec: FieldSpec
    order: Ordering
    rot: RotationSet
    args: argparse.Namespace


# -- option parsing ------------------------------------------------------------------

def _read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigParse(f"cannot read {path}: {exc}") from exc


def parse_field(text: str) -> tuple[FieldSpec, Ordering]:
    """A field JSON path, or shorthand ``p``, ``p^n`` or ``p^n:c0,c1,...``."""
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?(?::([\d,]+))?", text.strip())
    if m and not Path(text).exists():
        poly = [int(c) for c in m.group(3).split(",")] if m.group(3) else None
        spec = make_field(int(m.group(1)), int(m.group(2) or 1), poly)
        return spec, sz.ordering_from_json(spec, None)
    return sz.field_from_json(_read_json(text))


def parse_basis(spec: FieldSpec, text: str) -> Basis:
    """``polynomial``, ``dual``, ``self-dual``, ``normal:<elem>`` or a comma list of elements."""
    if text == "polynomial":
        return polynomial_basis(spec)
    if text == "dual":
        return dual_basis(polynomial_basis(spec))
    if text == "self-dual":
        b = self_dual_basis(spec)
        if b is None:
            raise ConfigParse(f"{spec} has no self-dual basis")
        return b
    if text.startswith("normal:"):
        return normal_basis(spec, spec.parse(text[7:]))
    return make_basis(spec, [spec.parse(x) for x in text.split(",")])


def parse_ordering(spec: FieldSpec, text: str) -> Ordering:
    strategy, _, basis_text = text.partition(":")
    basis = parse_basis(spec, basis_text) if basis_text else None
    if strategy in ("radix",) and basis is None:
        basis = polynomial_basis(spec)
    return ordering(spec, strategy, basis=basis, primitive=spec.element(spec.primitive_code))


def _pairs(text: str) -> list[tuple[str, str]]:
    out = []
    for item in filter(None, text.split(";" if ";" in text else ",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigParse(f"expected key=value, got {item!r}")
        out.append((key.strip(), val.strip()))
    return out


def parse_rotations(spec: FieldSpec, text: str, root_basis: str | None = None) -> RotationSet:
    """``canonical``, ``signs:<mu>=<bits>,...`` (characteristic 2) or
    ``h:<path | mu=value,...>``."""
    basis = parse_basis(spec, root_basis) if root_basis else None
    if spec.p == 2:
        base = canonical_rotation_set_even(spec, basis or default_even_basis(spec))
    else:
        base = canonical_rotation_set(spec)
    kind, _, rest = text.partition(":")
    if kind == "canonical":
        return base
    if kind == "signs":
        if spec.p != 2:
            raise ConfigParse("sign choices only exist in characteristic 2")
        signs = {spec.parse(k): [int(c) for c in v] for k, v in _pairs(rest)}
        return canonical_rotation_set_even(spec, base.basis, signs)
    if kind == "h":
        if Path(rest).exists():
            obj = _read_json(rest)
            h = obj.get("h", obj) if isinstance(obj, dict) else obj
            if isinstance(h, dict):
                return shifted_rotation_set(base, {spec.parse(str(k)): spec.parse(str(v)) for k, v in h.items()})
            return shifted_rotation_set(base, [spec.parse(str(v)) for v in h])
        return shifted_rotation_set(base, {spec.parse(k): spec.parse(v) for k, v in _pairs(rest)})
    raise ConfigParse(f"unknown rotation choice {text!r}")


def _normalized(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise NormZero("state has zero norm")
    return v / n


def parse_state(spec: FieldSpec, text: str, rot: RotationSet) -> np.ndarray:
    """Code-order ket (1-d) or density matrix (2-d) from a name or JSON file.

    Names: ``gf4-superposition``, ``gf8-superposition`` (``(|0> + |1>)/sqrt 2``), ``maximally-mixed``,
    ``basis:<a>``, ``conjugate:<a>``, ``line:<mu|inf>:<nu>``,
    ``random:<seed>``, ``random-mixed:<seed>``, ``amp:<a>=<z>,...``.
    Files hold ``{"re": [...], "im": [...]}`` (vector or matrix) or
    ``{"amplitudes": {"<a>": "<z>"}}``.
    """
    d = spec.d
    try:
        if text in NAMED_PAIRS:
            want = NAMED_PAIRS[text]
            if d != want:
                raise StateParse(f"{text} lives in GF({want}), not in a field of order {d}")
            v = np.zeros(d, dtype=complex)
            v[0] = v[1] = 1
            return _normalized(v)
        if text == "maximally-mixed":
            return np.eye(d, dtype=complex) / d
        kind, _, rest = text.partition(":")
        if kind == "basis":
            v = np.zeros(d, dtype=complex)
            v[spec.code(spec.parse(rest))] = 1
            return v
        if kind == "conjugate":
            a = spec.code(spec.parse(rest))
            from .operators import fourier_matrix

            return fourier_matrix(spec)[:, a].copy()
        if kind == "line":
            mu, _, nu = rest.partition(":")
            m = build_mubs(rot)
            return m.vertical[spec.code(spec.parse(nu))].copy() if mu == "inf" else \
                m.sloped[spec.code(spec.parse(mu)), spec.code(spec.parse(nu))].copy()
        if kind == "random":
            return random_pure_state(d, np.random.default_rng(int(rest)))
        if kind == "random-mixed":
            return random_density(d, np.random.default_rng(int(rest)))
        if kind == "amp":
            v = np.zeros(d, dtype=complex)
            for k, z in _pairs(rest):
                v[spec.code(spec.parse(k))] = complex(z.replace("i", "j"))
            return _normalized(v)
        if Path(text).exists():
            obj = _read_json(text)
            if "amplitudes" in obj:
                v = np.zeros(d, dtype=complex)
                for k, z in obj["amplitudes"].items():
                    v[spec.code(spec.parse(str(k)))] = complex(str(z).replace("i", "j"))
                return _normalized(v)
            arr = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj.get("im", np.zeros_like(obj["re"])), dtype=float)
            order = sz.ordering_from_json(spec, obj.get("ordering"))
            idx = order.index
            if arr.shape == (d,):
                return _normalized(arr[idx])
            if arr.shape == (d, d):
                return arr[np.ix_(idx, idx)]
            raise StateParse(f"state in {text} has shape {arr.shape}")
    except ConfigParse:
        raise
    except (ValueError, KeyError) as exc:
        raise StateParse(f"cannot parse state {text!r}: {exc}") from exc
    raise StateParse(f"unknown state {text!r}")


# -- commands ------------------------------------------------------------------------

def _emit(report: dict, cfg: RunConfig, name: str) -> None:
    text = sz.dumps(report)
    sys.stdout.write(text)
    if cfg.args.out:
        sz.write_text(Path(cfg.args.out) / name, text)


def cmd_field_info(cfg: RunConfig) -> int:
    s, o = cfg.spec, cfg.order
    lines = [
        f"field: GF({s.p}^{s.n})  d = {s.d}",
        f"polynomial: {format_poly(s.poly)}",
        f"primitive element: t^1 (code {s.primitive_code}, coefficients {list(s.coeffs_of(s.primitive_code))})",
        f"ordering: {o.strategy}" + (f" over basis {[s.label(c) for c in o.basis]}" if o.basis else ""),
        "",
        "index  element  coefficients  trace",
    ]
    for i, c in enumerate(o.codes):
        lines.append(f"{i:5d}  {s.label(c):>7}  {str(list(s.coeffs_of(c))):>12}  {int(s.trace_table[c]):5d}")
    sys.stdout.write("\n".join(lines) + "\n")
    if cfg.args.out:
        sz.write_text(Path(cfg.args.out) / "field.json", sz.dumps(sz.field_to_json(s, o)))
    return EXIT_OK


def cmd_kernel_check(cfg: RunConfig) -> int:
    k = build_kernel(cfg.rot, cfg.order)
    rep = check_kernel(k, exhaustive=cfg.args.exhaustive or None, seed=cfg.args.seed or 0)
    obj = rep.to_json()
    obj["rotations"] = cfg.rot.to_json()
    _emit(obj, cfg, "kernel_check.json")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_wigner(cfg: RunConfig) -> int:
    state = parse_state(cfg.spec, cfg.args.state, cfg.rot)
    w = wigner(state, build_kernel(cfg.rot, cfg.order))
    csv_text = sz.wigner_to_csv(w)
    if cfg.args.out:
        out = Path(cfg.args.out)
        sz.write_text(out / "wigner.csv", csv_text)
        sz.write_text(out / "wigner.json", sz.dumps(sz.wigner_to_json(w)))
        sz.write_text(out / "line_sums.csv", sz.line_sums_to_csv(w))
    sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    state = parse_state(cfg.spec, cfg.args.state, cfg.rot)
    rep = count_distinct_wigner(state, cfg.rot)
    _emit(rep.to_json(), cfg, "enumerate.json")
    return EXIT_OK if sum(rep.class_sizes) == rep.total_structures else EXIT_FAIL


def _shots_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigParse(f"bad --shots value {text!r}") from exc


def cmd_tomography(cfg: RunConfig) -> int:
    a = cfg.args
    s = cfg.spec
    mubs = build_mubs(cfg.rot, cfg.order)
    rho = None
    if a.state:
        r = parse_state(s, a.state, cfg.rot)
        rho = np.outer(r, r.conj()) if r.ndim == 1 else r
    report: dict = {"rotations": cfg.rot.to_json()}
    ok = True
    if a.tomogram:
        t = tomogram_from_json(s, _read_json(a.tomogram))
        rec = reconstruct(t, cfg.rot if t.rot is None else None)
        report["mode"] = "file"
        report["asymmetry"] = rec.asymmetry
        report["origin_discrepancy"] = rec.origin_discrepancy
        report["rho"] = sz.matrix_to_json(rec.rho)
        if rho is not None:
            report["fidelity"] = fidelity(rho, rec.projected().in_codes())
    elif rho is None:
        raise IncompleteTomogram("need --state or --tomogram")
    elif not a.shots:
        t = tomogram_of(rho, mubs)
        rec = reconstruct(t)
        err = float(np.max(np.abs(rec.rho.in_codes() - rho)))
        ok = err < ROUND_TRIP_TOL
        report.update(mode="exact", round_trip_error=err, tolerance=ROUND_TRIP_TOL, passed=ok)
        if a.out:
            sz.write_text(Path(a.out) / "tomogram.json", sz.dumps(t.to_json()))
    else:
        rows = []
        for n in _shots_list(a.shots):
            t = simulate_counts(rho, mubs, n, a.seed)
            rec = reconstruct(t)
            rows.append({"shots": n, "fidelity": fidelity(rho, rec.projected().in_codes()),
                         "asymmetry": rec.asymmetry})
            if a.out:
                sz.write_text(Path(a.out) / f"tomogram_{n}.json", sz.dumps(t.to_json()))
        report.update(mode="shots", seed=a.seed, table=rows)
    _emit(report, cfg, "tomography.json")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mub(cfg: RunConfig) -> int:
    m = build_mubs(cfg.rot, cfg.order)
    rep = m.overlap_report()
    d = cfg.spec.d
    ind = 0.0
    if cfg.args.state is None:
        k = build_kernel(cfg.rot, cfg.order)
        for mu in list(range(d)) + [None]:
            for nu in range(d):
                line = Line(cfg.spec, mu, nu)
                w = wigner(m.line_state(line), k)
                ind = max(ind, float(np.max(np.abs(w.in_codes() - line_indicator(cfg.spec, line)))))
    rep["line_indicator"] = ind
    rep["passed"] = max(rep.values()) < ROUND_TRIP_TOL
    rep["rotations"] = cfg.rot.to_json()
    _emit(rep, cfg, "mub.json")
    return EXIT_OK if rep["passed"] else EXIT_FAIL


COMMANDS = {
    "field-info": cmd_field_info,
    "kernel-check": cmd_kernel_check,
    "wigner": cmd_wigner,
    "enumerate": cmd_enumerate,
    "tomography": cmd_tomography,
    "mub": cmd_mub,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfwigner", description="Wigner functions over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--field", required=True, help="field JSON path or p^n[:c0,c1,...]")
        p.add_argument("--ordering", help="radix[:basis] | primitive | trace")
        p.add_argument("--rotations", default="canonical", help="canonical | signs:mu=bits,... | h:path-or-pairs")
        p.add_argument("--root-basis", help="basis for the characteristic-two square roots")
        p.add_argument("--state", help="state JSON path or built-in name")
        p.add_argument("--shots", help="shot count, or comma list for a fidelity table")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tomogram", help="tomogram JSON to reconstruct")
        p.add_argument("--exhaustive", action="store_true", help="exhaustive covariance check")
        p.add_argument("--out", help="output directory")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        spec, order = parse_field(args.field)
        if args.ordering:
            order = parse_ordering(spec, args.ordering)
        rot = parse_rotations(spec, args.rotations, args.root_basis)
        if args.command in ("wigner", "enumerate") and not args.state:
            raise StateParse(f"{args.command} needs --state")
        return COMMANDS[args.command](RunConfig(spec, order, rot, args))
    except IdentityViolation as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAIL
    except (GFWignerError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
