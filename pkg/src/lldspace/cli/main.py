"""``llds`` command-line entry point.

Exit codes: 0 pass/true, 1 fail/false (with a witness in the report),
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from sympy import factorint

from ..alternating import AltSubspace, operator_space_from_alt, regularity_checks
from ..catalog import build_entry, list_entries
from ..errors import LLDError
from ..exactfield import Field, make_field, rank
from ..lldstruct import (
    alternating_core_split,
    column_property,
    flanders_atkinson_check,
    minimal_clld,
    one_dim_split,
    primitive,
    r_reduce_normalize,
    semiprimitive,
    thin_decomposition,
)
from ..matspace import DEFAULT_BUDGET, MatrixSpace, dual_hat, fingerprint, reduce, trk
from ..quadform import classify_dim2, classify_dim3, restrict_pfaffian
from . import harness, spacefile
from .report import Report, digest


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_field(spec: str) -> Field:
    """'5', '9', '3^2' or 'GF(4)' to a field with the automatic modulus."""
    s = spec.strip().upper().removeprefix("GF(").removesuffix(")")
    try:
        if "^" in s:
            p, k = (int(t) for t in s.split("^"))
        else:
            q = int(s)
            fac = factorint(q)
            if len(fac) != 1:
                raise UsageError(f"{q} is not a prime power")
            (p, k), = fac.items()
    except ValueError:
        raise UsageError(f"bad field {spec!r}") from None
    return make_field(p, k)


def _vector(F: Field, text: str | None):
    if text is None:
        return None
    return [F.from_coeffs([int(c) for c in tok.split(":")]) if ":" in tok else int(tok)
            for tok in text.replace(",", " ").split()]


def _load(rep: Report, path: str):
    data = rep.add_input(path)
    return spacefile.parse(data.decode("utf-8"))


def _matrix_space(obj) -> MatrixSpace:
    return operator_space_from_alt(obj) if isinstance(obj, AltSubspace) else obj


def _write_out(rep: Report, path: str | None, obj) -> None:
    text = spacefile.emit(obj)
    if path:
        spacefile.write(path, obj)
        rep.result("output", path)
    rep.result("output_digest", _text_digest(text))


def _text_digest(text: str) -> str:
    return digest(text.encode("utf-8"))


def _check_tags(rep: Report, res) -> None:
    for k, v in res.tags.items():
        rep.tag(k, v)
    if res.witness is not None:
        if isinstance(res.witness, dict):
            for k, v in res.witness.items():
                rep.witness(k, v)
        else:
            rep.witness("value", res.witness)
    if res.detail:
        rep.result("detail", res.detail)


# -- subcommands --------------------------------------------------------------

def cmd_analyze(a, rep: Report) -> int:
    obj = _load(rep, a.file)
    S = _matrix_space(obj)
    if isinstance(obj, AltSubspace):
        reg = regularity_checks(obj)
        rep.result("alt.n", obj.n)
        rep.result("alt.d", obj.d)
        rep.result("alt.incompressible", reg.incompressible)
    fp = fingerprint(S, a.budget, a.seed)
    rep.result("fingerprint", list(fp.summary()))
    rep.result("defect_index", fp.defect_index)
    rep.result("rank_distribution", list(fp.rank_distribution))
    rep.result("kernel_dim", fp.kernel_dim)
    rep.result("essrange_dim", fp.essrange_dim)
    rep.tag("urk_method", fp.urk_method)
    rep.tag("trk_method", fp.trk_method)
    rep.tag("distribution_exact", fp.distribution_exact)
    if fp.sample_size is not None:
        rep.tag("sample_size", fp.sample_size)
    rep.tag("seed", a.seed)
    rep.tag("budget", a.budget)
    return 0


def cmd_check(a, rep: Report) -> int:
    S = _matrix_space(_load(rep, a.file))
    rep.tag("budget", a.budget)
    rep.tag("seed", a.seed)
    what = a.property
    if what == "lld":
        t = trk(S, a.budget, a.seed)
        holds = S.d - t.value >= a.c
        rep.result("c", a.c)
        rep.result("lld_index", S.d - t.value)
        rep.tag("trk_method", t.method)
        if not holds and t.witness is not None:
            rep.witness("x", t.witness)
        res = None
    elif what == "minimal":
        res = minimal_clld(S, a.c, a.budget)
        rep.result("c", a.c)
    elif what == "semiprimitive":
        res = semiprimitive(S, a.budget, a.seed, a.trials)
        rep.tag("trials", a.trials)
    elif what == "primitive":
        res = primitive(S, a.budget, a.seed, a.trials)
        rep.tag("trials", a.trials)
    elif what == "column":
        mode = a.mode
        res = column_property(S, mode, a.budget, a.trials, a.seed)
        rep.tag("trials", a.trials)
    else:
        T, _, _ = r_reduce_normalize(S, a.budget, a.seed)
        res = flanders_atkinson_check(T, None, a.budget)
    if res is not None:
        holds = bool(res.holds)
        _check_tags(rep, res)
    rep.result("property", what)
    rep.result("holds", holds)
    rep.status = "pass" if holds else "fail"
    return 0 if holds else 1


def cmd_dual(a, rep: Report) -> int:
    S = _matrix_space(_load(rep, a.file))
    H = dual_hat(S)
    rep.result("shape", [H.m, H.n, H.d])
    _write_out(rep, a.output, H)
    return 0


def cmd_reduce(a, rep: Report) -> int:
    S = _matrix_space(_load(rep, a.file))
    R = reduce(S)
    rep.result("shape", [R.space.m, R.space.n, R.space.d])
    rep.result("kernel_dim", R.kernel.dim)
    rep.result("essrange_dim", R.essrange.dim)
    _write_out(rep, a.output, R.space)
    return 0


def cmd_split(a, rep: Report) -> int:
    S = _matrix_space(_load(rep, a.file))
    F = S.field
    rep.tag("budget", a.budget)
    rep.tag("seed", a.seed)
    if a.kind == "onedim":
        if a.x is None:
            raise UsageError("split onedim needs --x")
        res = one_dim_split(S, _vector(F, a.x), a.budget, a.seed)
        rep.result("q", res.q)
        out = res.H
    elif a.kind == "thin":
        res = thin_decomposition(S, None, _vector(F, a.x), a.budget, a.seed)
        for k in ("p", "s", "t"):
            rep.result(k, getattr(res, k))
        rep.result("bound", list(res.bound))
        out = res.H
    else:
        res = alternating_core_split(S, _vector(F, a.alpha), a.budget, a.seed)
        rep.result("s", res.s)
        rep.result("p", res.p)
        rep.result("D_shape", [res.D.m, res.D.n, res.D.d])
        out = res.H
    rep.result("H_shape", [out.m, out.n, out.d])
    for k, v in res.checks.items():
        rep.result(f"check.{k}", v)
    rep.result("transformed_digest", _text_digest(spacefile.emit(res.space)))
    _write_out(rep, a.output, res.space if a.whole else out)
    bad = [k for k, v in res.checks.items() if k.endswith("_ok") and v is False]
    rep.status = "fail" if bad else "pass"
    return 1 if bad else 0


def cmd_quadclass(a, rep: Report) -> int:
    obj = _load(rep, a.file)
    if not isinstance(obj, AltSubspace) or obj.n != 4:
        raise UsageError("quadclass needs an 'alt 4 d' file")
    q = restrict_pfaffian(obj.field, obj)
    rep.result("dim", obj.d)
    rep.result("form", q.coeffs)
    if obj.d == 2:
        c = classify_dim2(q)
        rep.result("class", c.tag)
        if c.detail:
            rep.result("detail", c.detail)
    elif obj.d == 3:
        c = classify_dim3(q)
        rep.result("class", c.tag)
        rep.result("rank", c.rank)
    else:
        rep.result("rank", int(_form_rank(q)))
    return 0


def _form_rank(q) -> int:
    return rank(q.field, q.polar()) if q.field.p != 2 else rank(q.field, q.coeffs)


def cmd_catalog(a, rep: Report) -> int:
    if a.action == "list":
        for info in list_entries():
            params = ",".join(info.params) or "-"
            rep.result(info.id, f"params={params} char={info.chars} {info.summary}")
        return 0
    if not a.id or not a.field:
        raise UsageError("catalog emit needs <id> and --field")
    F = parse_field(a.field)
    params = {}
    if a.delta is not None:
        params["delta"] = _vector(F, a.delta)[0]
    if a.n is not None:
        params["n"] = a.n
    if a.t is not None:
        params["t"] = _vector(F, a.t)[0]
    E = build_entry(a.id, F, params)
    text = spacefile.emit(E.space)
    if a.output:
        spacefile.write(a.output, E.space)
        rep.result("id", E.id)
        rep.result("output", a.output)
        rep.result("output_digest", _text_digest(text))
        return 0
    a.stdout.write(text)
    return None


def cmd_verify(a, rep: Report) -> int:
    fields = [parse_field(f) for f in (a.field or ["5"])]
    fn = harness.SUITES.get(a.suite)
    if fn is None:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {sorted(harness.SUITES)}")
    failed = 0
    for F in fields:
        for name, ok, info in fn(F):
            rep.result(f"{F!r}.{name}", "pass" if ok else "fail")
            if not ok:
                failed += 1
                rep.witness(f"{F!r}.{name}", info)
    rep.result("failed", failed)
    rep.status = "fail" if failed else "pass"
    return 1 if failed else 0


def cmd_search(a, rep: Report) -> int:
    F = parse_field(a.field)
    out = harness.search_conjecture(F, a.r, a.trials, a.seed, a.budget)
    for k in ("r", "n", "sampled", "incompressible", "semiprimitive", "max_trk", "bound"):
        rep.result(k, out[k])
    rep.result("violations", len(out["violations"]))
    for i, v in enumerate(out["violations"]):
        rep.witness(f"violation{i}", v)
    rep.tag("field", repr(F))
    rep.tag("seed", a.seed)
    rep.tag("trials", a.trials)
    rep.tag("budget", a.budget)
    rep.status = "fail" if out["violations"] else "pass"
    return 1 if out["violations"] else 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="llds", description="LLD operator spaces over finite fields")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, file=True):
        if file:
            sp.add_argument("file")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("analyze", help="fingerprint of a space")
    common(sp)

    sp = sub.add_parser("check", help="test a structural property")
    sp.add_argument("property", choices=["lld", "minimal", "semiprimitive", "primitive",
                                         "column", "flanders"])
    common(sp)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--mode", choices=["exact", "randomized"], default="exact")

    for name in ("dual", "reduce"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("-o", "--output")

    sp = sub.add_parser("split", help="one-dimensional, thin or core split")
    sp.add_argument("kind", choices=["thin", "core", "onedim"])
    common(sp)
    sp.add_argument("--x", help="vector, e.g. '0 0 0 1'")
    sp.add_argument("--alpha", help="linear form on the canonical basis")
    sp.add_argument("--whole", action="store_true", help="write the transformed space, not H")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("quadclass", help="class of the pfaffian restricted to an alt file")
    common(sp)

    sp = sub.add_parser("catalog")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("id", nargs="?")
    sp.add_argument("--field")
    sp.add_argument("--delta")
    sp.add_argument("--t")
    sp.add_argument("--n", type=int)
    sp.add_argument("-o", "--output")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("verify")
    sp.add_argument("suite")
    sp.add_argument("--field", action="append")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("search")
    sp.add_argument("what", choices=["conjecture"])
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--field", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


COMMANDS = {
    "analyze": cmd_analyze,
    "check": cmd_check,
    "dual": cmd_dual,
    "reduce": cmd_reduce,
    "split": cmd_split,
    "quadclass": cmd_quadclass,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "search": cmd_search,
}


def run(argv, out=None, err=None) -> int:
    """Dispatch argv; write the report to ``out``; return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        if not a.command:
            raise UsageError("missing subcommand")
    except UsageError as exc:
        err.write(f"llds: usage error: {exc}\n")
        return 2
    a.stdout = out
    rep = Report(a.command if a.command != "check" else f"check {a.property}")
    try:
        code = COMMANDS[a.command](a, rep)
    except UsageError as exc:
        err.write(f"llds: usage error: {exc}\n")
        return 2
    except (LLDError, OSError, UnicodeDecodeError) as exc:
        rep.result("error", type(exc).__name__)
        rep.result("message", str(exc))
        rep.status = "error"
        out.write(rep.json() if a.json else rep.text())
        return 2
    if code is None:
        return 0
    out.write(rep.json() if a.json else rep.text())
    return code


def main(argv=None) -> int:
    sys.exit(run(sys.argv[1:] if argv is None else argv))
