"""
Command-line entry point.

    symp-ainf verify --p 5
    symp-ainf ext-table --p 3 --degree-max 9 --format json
    symp-ainf model-table --p 5 --n 2 3 --degree-max 16
    symp-ainf export-resolution --p 3 --window 10 --out res.json

Exit status is 0 when every check passes, 1 on a verification failure and 2
on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb

import numpy as np

from .gfp_linalg import is_prime
from .hook_algebra import (
    HookProfile,
    LambdaBasis,
    basis_index_certificate,
    gen_morphisms,
    hom_space_basis,
    integral_relations,
    lambda_member,
    reduced_relations,
)

SCHEMA = "ainf/1"


def _suite(name: str, checks: dict, started: float, counterexample=None) -> dict:
    return {
        "suite": name,
        "ok": all(checks.values()),
        "checks": {k: bool(v) for k, v in checks.items()},
        "counterexample": counterexample,
        "seconds": round(time.perf_counter() - started, 3),
    }


def _verify_odd(cfg) -> list[dict]:
    from .ainfty_model import MinimalModel, verify_model
    from .hom_dga import (
        build_chi,
        build_gamma,
        chi_iota,
        gamma_boundary_formula,
        homology_table,
        iota_power,
        m1,
        odd_square_bracket,
    )
    from .resolution import (
        augmentation,
        build_resolution,
        check_exactness,
        hom_to_trivial,
        integral_augmentation_identity,
    )

    p = cfg.p
    prof = HookProfile(p)
    suites = []

    t0 = time.perf_counter()
    basis = LambdaBasis(prof)
    integral = gen_morphisms(prof)
    checks = {
        "basis_count": len(basis) == comb(2 * p - 2, p - 1),
        "basis_members": all(lambda_member(b.value) for b in basis),
        "basis_index": basis_index_certificate(basis),
        "integral_relations": all(integral_relations(integral).values()),
    }
    suites.append(_suite("algebra", checks, t0))

    t0 = time.perf_counter()
    res = build_resolution(prof)
    table = res.table
    report = check_exactness(res, cfg.window)
    eps = augmentation(res)
    checks = {
        "reduced_relations": all(reduced_relations(table).values()),
        "exactness": report.ok,
        "augmentation_linear": eps.is_module_map(),
        "augmentation_kills_loop": not np.mod(eps.values @ res.morphism_matrix(table[1, 1]), p).any(),
        "integral_augmentation": integral_augmentation_identity(res),
    }
    cx = None if report.ok else {"degree": report.failed_degree, "reason": report.reason}
    suites.append(_suite("resolution", checks, t0, cx))

    t0 = time.perf_counter()
    far = all(len(hom_space_basis(res.algebra, table, k, k2)) == 0
              for k in range(1, p) for k2 in range(1, p) if abs(k - k2) > 1)
    triv = [len(hom_to_trivial(res, k)) for k in range(1, p)]
    suites.append(_suite("hom_spaces", {"distant_vanish": far, "trivial_quotients": triv == [1] + [0] * (p - 2)},
                         t0))

    t0 = time.perf_counter()
    chi = build_chi(res)
    checks = {
        "iota_cycles": all(m1(iota_power(res, j)).is_zero() for j in range(5)),
        "chi_iota_cycles": all(m1(chi_iota(res, j)).is_zero() for j in range(5)),
        "chi_square": chi.compose(chi) == m1(build_gamma(res, 2)),
        "gamma_boundaries": all(m1(build_gamma(res, k)) == gamma_boundary_formula(res, k)
                                for k in range(2, p)),
        "odd_bracket": odd_square_bracket(res) == iota_power(res, p - 1),
    }
    suites.append(_suite("cycles", checks, t0))

    t0 = time.perf_counter()
    ht = homology_table(res, 4 * res.l)
    pattern = [1 if k % res.l in (0, res.l - 1) else 0 for k in range(4 * res.l + 1)]
    checks = {"dims": ht.dims() == pattern,
              "certified": all(r.certified for r in ht.rows if r.dim)}
    suites.append(_suite("homology", checks, t0))

    t0 = time.perf_counter()
    rep = verify_model(MinimalModel(res), cfg.jmax, cfg.samples, cfg.seed, cfg.exhaustive_j)
    fail = rep.first_failure()
    checks = {f"{c.identity}[{c.n}]": c.ok for c in rep.checks}
    suites.append(_suite("ainfty", checks, t0, fail.as_dict() if fail else None))
    return suites


def _verify_two(cfg) -> list[dict]:
    from .prime2 import p2_model

    t0 = time.perf_counter()
    rep = p2_model()
    return [_suite("prime2", rep.checks, t0)]


def cmd_verify(cfg) -> tuple[dict, int]:
    suites = _verify_two(cfg) if cfg.p == 2 else _verify_odd(cfg)
    ok = all(s["ok"] for s in suites)
    if cfg.format == "json" and not cfg.timing:
        for s in suites:
            s.pop("seconds")
    return {"schema": SCHEMA, "command": "verify", "p": cfg.p, "ok": ok, "suites": suites}, 0 if ok else 1


def _resolution(p: int):
    if p == 2:
        from .prime2 import build_resolution_p2

        return build_resolution_p2()
    from .resolution import build_resolution

    return build_resolution(HookProfile(p))


def cmd_ext_table(cfg) -> tuple[dict, int]:
    from .hom_dga import homology_table, iota_power

    res = _resolution(cfg.p)
    rep = None
    if cfg.p == 2:
        def rep(a, j):
            return iota_power(res, j)
    D = max(cfg.degree_max, 2 * res.l)
    table = homology_table(res, D, rep)
    rows = [{"degree": r.degree, "dim": r.dim,
             "label": None if r.label is None else {"a": r.label[0], "j": r.label[1]},
             "certified": r.certified}
            for r in table.rows[: cfg.degree_max + 1]]
    ok = all(r["certified"] for r in rows if r["dim"])
    return {"schema": SCHEMA, "command": "ext-table", "p": cfg.p, "period": res.l, "rows": rows}, 0 if ok else 1


def _model(p: int):
    if p == 2:
        from .prime2 import Prime2Model, build_resolution_p2

        return Prime2Model(build_resolution_p2())
    from .ainfty_model import build_model

    return build_model(p)


def cmd_model_table(cfg) -> tuple[dict, int]:
    from .ainfty_model import model_table

    model = _model(cfg.p)
    tables = {str(n): model_table(model, n, cfg.degree_max) for n in cfg.n}
    return {"schema": SCHEMA, "command": "model-table", "p": cfg.p, "degree_max": cfg.degree_max,
            "tables": tables}, 0


def cmd_export_resolution(cfg) -> tuple[dict, int]:
    from .resolution import export_resolution

    res = _resolution(cfg.p)
    return {"schema": SCHEMA, "command": "export-resolution", **export_resolution(res, cfg.window)}, 0


def _text(payload: dict) -> str:
    lines = [f"{payload['command']} p={payload['p']}"]
    if payload["command"] == "verify":
        for s in payload["suites"]:
            lines.append(f"[{'PASS' if s['ok'] else 'FAIL'}] {s['suite']} ({s['seconds']} s)")
            for name, ok in s["checks"].items():
                if not ok:
                    lines.append(f"    failed: {name}")
            if s["counterexample"]:
                lines.append(f"    counterexample: {s['counterexample']}")
        lines.append("all checks passed" if payload["ok"] else "verification FAILED")
    elif payload["command"] == "ext-table":
        for r in payload["rows"]:
            lab = "" if r["label"] is None else f"  chi^{r['label']['a']} iota^{r['label']['j']}"
            lines.append(f"H^{r['degree']:<3d} dim {r['dim']}{lab}")
    elif payload["command"] == "model-table":
        for n, recs in payload["tables"].items():
            nonzero = [r for r in recs if r["result"] is not None]
            lines.append(f"m'_{n}: {len(recs)} tensors, {len(nonzero)} nonzero")
            for r in nonzero:
                args = " x ".join(f"({a['a']},{a['j']})" for a in r["args"])
                res = r["result"]
                lines.append(f"    {args} -> {res['coeff']}*({res['a']},{res['j']})")
    else:
        for d in payload["degrees"]:
            lines.append(f"degree {d['degree']}: P_{d['module']} (dim {d['dim']})")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="the prime")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="symp-ainf",
                                     description="Periodic resolution and A-infinity model for F_p S_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run every verification suite")
    v.add_argument("--window", type=int, default=None, help="exactness window (default 3l)")
    v.add_argument("--jmax", type=int, default=3, help="largest iota exponent in random tensors")
    v.add_argument("--samples", type=int, default=200, help="random tensors per arity")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--exhaustive-j", action="store_true", help="all j in {0,1} (p <= 5)")
    v.add_argument("--timing", action="store_true", help="include wall-clock seconds in JSON output")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("ext-table", parents=[common], help="dimensions of Ext in each degree")
    e.add_argument("--degree-max", type=int, default=None)
    e.set_defaults(func=cmd_ext_table)

    m = sub.add_parser("model-table", parents=[common], help="multiplication tables of the higher products")
    m.add_argument("--n", type=int, nargs="+", default=[2])
    m.add_argument("--degree-max", type=int, default=None)
    m.set_defaults(func=cmd_model_table)

    r = sub.add_parser("export-resolution", parents=[common], help="differential matrices as JSON")
    r.add_argument("--window", type=int, default=None)
    r.set_defaults(func=cmd_export_resolution)
    return parser


def _validate(parser: argparse.ArgumentParser, cfg) -> None:
    p = cfg.p
    if not is_prime(p):
        parser.error(f"--p must be prime, got {p}")
    l = 1 if p == 2 else 2 * (p - 1)
    if p > 7:
        print(f"warning: p = {p} is slow", file=sys.stderr)
    if hasattr(cfg, "window"):
        if cfg.window is None:
            cfg.window = 3 * l
        if cfg.window < l + 2:
            parser.error(f"--window must be at least l+2 = {l + 2}")
    if getattr(cfg, "exhaustive_j", False) and p > 5:
        parser.error("--exhaustive-j is offered for p <= 5 only")
    if getattr(cfg, "jmax", 0) < 0 or getattr(cfg, "samples", 0) < 0:
        parser.error("--jmax and --samples must be nonnegative")
    if hasattr(cfg, "degree_max"):
        if cfg.degree_max is None:
            cfg.degree_max = 2 * l
        if cfg.degree_max < 0:
            parser.error("--degree-max must be nonnegative")
    if hasattr(cfg, "n") and any(n < 1 for n in cfg.n):
        parser.error("--n values must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    _validate(parser, cfg)
    payload, code = cfg.func(cfg)
    text = json.dumps(payload, indent=2, sort_keys=True) if cfg.format == "json" else _text(payload)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
