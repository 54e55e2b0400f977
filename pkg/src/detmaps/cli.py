"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 Koszul check failed (report still
written), 3 resource cap hit, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from .degrees import (
    DegreeVector,
    almost_linear_closed_form,
    binomial_vector,
    decomposed_degree_vector,
    detect_split,
    is_palindromic,
    koszul_multidegree,
    kunneth,
    mv_degree_vector,
    sigma_bound_vector,
    split_blocks,
)
from .detmap import (
    GluingError,
    GluingSpec,
    MinorCapExceeded,
    almost_linear_family,
    base_ideal,
    general_glue,
    koszul_check,
    sample_factors,
    tau_matrix,
)
from .ffprobe import EnumerationCap, FFConfig
from .geom import GeometryError, ResourceError, parse_polytope
from .mixvol import MixedVolumeError, mixed_volume, mixed_volume_oracle, split_mixed_volume
from .poly import HilbertBurchMatrix, PolyError, parse_matrix

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_KOSZUL, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4
DIRECT_MAX_N = 3


class InternalError(RuntimeError):
    """An engine invariant failed; indicates a bug rather than bad input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class Timer:
    def __init__(self):
        self.ms: dict[str, int] = {}

    @contextmanager
    def __call__(self, name: str):
        t = time.perf_counter()
        yield
        self.ms[name] = round((time.perf_counter() - t) * 1000)


def _vec(v: DegreeVector) -> dict:
    return v.to_dict()


def _check_sandwich(mv: DegreeVector, sigma: DegreeVector) -> None:
    if not mv.dominated_by(sigma):
        raise InternalError(f"mixed-volume degrees {mv} exceed the sigma bound {sigma}")


def degree_vector_auto(M: HilbertBurchMatrix, dehomog=(0, 0)) -> tuple[DegreeVector, dict]:
    """Convolution path when a support split exists, direct MV otherwise."""
    split = detect_split(M)
    if split is None:
        return mv_degree_vector(M, tuple(dehomog)), {"method": "direct", "dehomog": list(dehomog)}
    v = decomposed_degree_vector(M, split)
    return v, {"method": "convolution", "split": split, "dehomog": [0, 0]}


def _ffconfig(args) -> FFConfig:
    primes = tuple(args.primes) if args.primes else FFConfig().primes
    return FFConfig(primes=primes, trials=args.trials, seed=args.seed)


# -- commands -----------------------------------------------------------------

def cmd_tau(args) -> tuple[dict, int]:
    n = args.n
    if not 1 <= n <= 6:
        raise ValueError(f"n must be in 1..6, got {n}")
    T = tau_matrix(n)
    if args.out:
        Path(args.out).write_text(T.to_text() + "\n")
    km = koszul_multidegree(T.column_degrees)
    rep = {"command": "tau", "n": n, "matrix": T.to_text(), "binomial": list(binomial_vector(n)),
           "koszul_multidegree": list(km)}
    if n <= 4:
        mv, how = degree_vector_auto(T)
        rep["mv_degrees"] = {**_vec(mv), **how}
        rep["agree"] = list(mv) == list(km) == list(binomial_vector(n))
        if not rep["agree"]:
            raise InternalError(f"tau_{n}: mv {mv} vs koszul {km}")
    return rep, EXIT_OK


def _analysis(M: HilbertBurchMatrix, cfg: FFConfig, dehomog, timer: Timer,
              koszul: bool = True, cross_check: bool = False) -> dict:
    rep: dict = {"input": {"vars": list(M.ctx.names), "matrix": M.to_text()},
                 "hb_degrees": list(M.column_degrees)}
    with timer("codim2"):
        _, ok2 = base_ideal(M)
    rep["codim2_ok"] = ok2
    if koszul:
        with timer("koszul"):
            rep["koszul"] = koszul_check(M, cfg).to_dict()
    sigma = sigma_bound_vector(M.column_degrees)
    rep["sigma_bounds"] = list(sigma)
    with timer("mv"):
        mv, how = degree_vector_auto(M, dehomog)
    _check_sandwich(mv, sigma)
    rep["mv_degrees"] = {**_vec(mv), **how}
    if how["method"] == "convolution":
        A, B = split_blocks(M, how["split"])
        va, vb = degree_vector_auto(A)[0], degree_vector_auto(B)[0]
        rep["kunneth"] = {"blocks": [list(va), list(vb)], "convolution": list(kunneth(va, vb))}
        if cross_check and M.n <= DIRECT_MAX_N:
            with timer("cross_check"):
                direct = mv_degree_vector(M, tuple(dehomog))
            rep["cross_check"] = {"direct": list(direct), "agrees": list(direct) == list(mv)}
            if list(direct) != list(mv):
                raise InternalError(f"direct {direct} and convolution {mv} disagree")
    rep["palindromic"] = is_palindromic(mv)
    return rep


def cmd_analyze(args) -> tuple[dict, int]:
    M = parse_matrix(Path(args.matrix).read_text())
    timer = Timer()
    rep = {"command": "analyze",
           **_analysis(M, _ffconfig(args), args.dehomog, timer, cross_check=args.cross_check)}
    rep["timings_ms"] = timer.ms
    ok = rep["codim2_ok"] and rep["koszul"]["ok"]
    return rep, EXIT_OK if ok else EXIT_KOSZUL


def cmd_family(args) -> tuple[dict, int]:
    m, d = args.m, args.d
    if not 1 <= m <= 8 or d < 1:
        raise ValueError("family needs 1 <= m <= 8 and d >= 1")
    timer = Timer()
    with timer("generate"):
        M = almost_linear_family(m, d, args.seed)
    rep = {"command": "family", "m": m, "d": d, "seed": args.seed,
           **_analysis(M, _ffconfig(args), (0, 0), timer, koszul=args.koszul)}
    closed = almost_linear_closed_form(m, d)
    conv = kunneth(binomial_vector(m), (1, d + 1, 1))
    mv = rep["mv_degrees"]["entries"]
    rep["closed_form"] = {"entries": list(closed), "matches": mv == list(closed)}
    rep["kunneth_formula"] = {"entries": list(conv), "matches": mv == list(conv)}
    rep["timings_ms"] = timer.ms
    if mv != list(closed):
        raise InternalError(f"family ({m},{d}): degrees {mv} differ from closed form {closed}")
    if args.koszul and not rep["koszul"]["ok"]:
        return rep, EXIT_KOSZUL
    return rep, EXIT_OK


def _read_polytopes(path: str):
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    polys = [parse_polytope(ln) for ln in lines if ln]
    if not polys:
        raise GeometryError("no polytopes in file")
    return polys


def cmd_mv(args) -> tuple[dict, int]:
    polys = _read_polytopes(args.polytopes)
    rep = {"command": "mv", "dimension": polys[0].ambient_dim, "mixed_volume": mixed_volume(polys)}
    if args.oracle:
        rep["oracle"] = mixed_volume_oracle(polys)
        if rep["oracle"] != rep["mixed_volume"]:
            raise InternalError(f"oracle {rep['oracle']} != mixed volume {rep['mixed_volume']}")
    if args.split is not None:
        flagged = [int(s) for s in args.split.split(",") if s.strip()]
        rep["split"] = {"flagged": flagged, "value": split_mixed_volume(polys, flagged)}
        if rep["split"]["value"] != rep["mixed_volume"]:
            raise InternalError("projection formula disagrees with the mixed volume")
    return rep, EXIT_OK


def cmd_conjecture(args) -> tuple[dict, int]:
    try:
        spec = GluingSpec.from_json(Path(args.spec).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"spec is not valid JSON: {exc}") from None
    rows = []
    for seed in args.seeds:
        s = spec.with_seed(seed)
        glued = general_glue(s)
        g, g2 = sample_factors(s)
        va, vb = degree_vector_auto(g)[0], degree_vector_auto(g2)[0]
        rhs = kunneth(va, vb)
        if glued.n <= DIRECT_MAX_N:
            lhs, method = mv_degree_vector(glued), "direct"
        else:
            lhs, method = degree_vector_auto(glued)[0], "auto"
        rows.append({"seed": seed, "factors": [list(va), list(vb)], "kunneth": list(rhs),
                     "glued": list(lhs), "glued_method": method, "match": list(lhs) == list(rhs)})
    return {"command": "conjecture", "experimental": True, "spec": spec.to_dict(),
            "rows": rows}, EXIT_OK


# -- text rendering -----------------------------------------------------------

def _fmt(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def render_text(rep: dict, timings: bool) -> str:
    cmd = rep["command"]
    out: list[str] = []
    if cmd == "tau":
        out.append(rep["matrix"])
        out.append(f"binomial            {_fmt(rep['binomial'])}")
        out.append(f"koszul multidegree  {_fmt(rep['koszul_multidegree'])}")
        if "mv_degrees" in rep:
            out.append(f"mixed volume        {_fmt(rep['mv_degrees']['entries'])}")
    elif cmd in ("analyze", "family"):
        if cmd == "family":
            out.append(f"family m={rep['m']} d={rep['d']} seed={rep['seed']}")
        out.append(rep["input"]["matrix"])
        out.append(f"hb degrees     {_fmt(rep['hb_degrees'])}")
        out.append(f"codim2 ok      {rep['codim2_ok']} (exact)")
        if "koszul" in rep:
            for e in rep["koszul"]["per_k"]:
                flag = "pass" if e["pass"] else "FAIL"
                out.append(f"koszul k={e['k']}    codim~{e['codim_estimate']} "
                           f"need {e['required']}  {flag} (probabilistic)")
        mv = rep["mv_degrees"]
        out.append(f"sigma bound    {_fmt(rep['sigma_bounds'])}")
        how = mv["method"] + (f" split={mv['split']}" if "split" in mv else "")
        out.append(f"mv degrees     {_fmt(mv['entries'])}  [{mv['exactness']}; {how}; "
                   f"dehomog {mv['dehomog'][0]},{mv['dehomog'][1]}]")
        if "kunneth" in rep:
            a, b = rep["kunneth"]["blocks"]
            out.append(f"kunneth        {_fmt(a)} * {_fmt(b)} = {_fmt(rep['kunneth']['convolution'])}")
        if "cross_check" in rep:
            out.append(f"direct mv      {_fmt(rep['cross_check']['direct'])}")
        if cmd == "family":
            out.append(f"closed form    {_fmt(rep['closed_form']['entries'])}  "
                       f"match={rep['closed_form']['matches']}")
        out.append(f"palindromic    {rep['palindromic']}")
    elif cmd == "mv":
        out.append(f"mixed volume {rep['mixed_volume']}")
        if "oracle" in rep:
            out.append(f"oracle       {rep['oracle']}")
        if "split" in rep:
            out.append(f"split        {rep['split']['value']} (flagged {rep['split']['flagged']})")
    elif cmd == "conjecture":
        out.append("EXPERIMENTAL: sampled comparison, not a proof")
        out.append("seed  kunneth(factors)        glued                   match")
        for r in rep["rows"]:
            out.append(f"{r['seed']:<5} {_fmt(r['kunneth']):<23} {_fmt(r['glued']):<23} "
                       f"{'yes' if r['match'] else 'NO'}")
    if timings and rep.get("timings_ms"):
        out.append("timings (ms)   " + ", ".join(f"{k}={v}" for k, v in rep["timings_ms"].items()))
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="detmap", description="Degree computations for determinantal maps.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--no-timings", action="store_true", help="omit timings from the output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ff(sp):
        sp.add_argument("--primes", type=int, nargs="+", help="primes for the codimension probe")
        sp.add_argument("--trials", type=int, default=5)
        sp.add_argument("--seed", type=int, default=0)

    t = sub.add_parser("tau", help="standard Cremona matrix and its degrees")
    t.add_argument("n", type=int)
    t.add_argument("--out", help="write the matrix to this file")
    t.set_defaults(func=cmd_tau)

    a = sub.add_parser("analyze", help="full report for a matrix file")
    a.add_argument("matrix")
    a.add_argument("--dehomog", type=int, nargs=2, metavar=("I", "J"), default=[0, 0])
    a.add_argument("--cross-check", action="store_true",
                   help="also run the direct mixed-volume path on split inputs (n <= 3)")
    ff(a)
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", help="almost-linear glued family")
    f.add_argument("m", type=int)
    f.add_argument("d", type=int)
    f.add_argument("--koszul", action="store_true", help="also run the Koszul checks")
    ff(f)
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("mv", help="mixed volume of polytope literals, one per line")
    v.add_argument("polytopes")
    v.add_argument("--oracle", action="store_true", help="cross-check by interpolation")
    v.add_argument("--split", help="comma-separated 0-based indices for the projection formula")
    v.set_defaults(func=cmd_mv)

    c = sub.add_parser("conjecture", help="EXPERIMENTAL: compare Kunneth with sampled gluings")
    c.add_argument("spec")
    c.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    c.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, code = args.func(args)
    except (PolyError, GeometryError, GluingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceError, EnumerationCap, MinorCapExceeded) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InternalError, MixedVolumeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.no_timings:
        rep.pop("timings_ms", None)
    if args.json:
        print(json.dumps({"schema": SCHEMA, **rep}, indent=2))
    else:
        print(render_text(rep, not args.no_timings))
    return code


if __name__ == "__main__":
    sys.exit(main())
