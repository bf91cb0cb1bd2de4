"""Command-line front end.

A project file (YAML or JSON) names a base algebra, optionally an anchored
Lie algebra and a truncation degree.  Scalars are integers or ``"p/q"``
strings; floats are rejected.  Every command can print plain text or sorted
JSON (``--format structured``) whose rationals are ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Callable

import yaml

from . import universal as uni
from .algebra import (
    FinAlgebra,
    check_algebra,
    commutator_lie,
    derivation_lie,
    derivations,
    diagonal_algebra,
    dual_numbers,
    ground_field,
    inner_derivation,
    matrix_algebra,
    truncated_polynomials,
)
from .anchored_lie import AnchoredLie, restrict, validate
from .cm_bialgebroid import (
    CMBialgebroid,
    GenBialgebroid,
    all_passed,
    build_cm,
    check_bialgebroid,
    endomorphism_bialgebroid,
    enveloping_bialgebroid,
    prim_decomposition,
    primitives,
    st_ideal,
)
from .errors import CMError, DegreeOverflow, InputError, ValidationError
from .exactlin import Mat, Subspace, Vec, fmt, q, rank
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 64

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


# --- project file ---------------------------------------------------------------

class _Node:
    """A YAML node with position-aware accessors."""

    def __init__(self, node: yaml.Node, path: str = ""):
        self.node = node
        self.path = path or "<root>"

    def error(self, message: str) -> InputError:
        m = self.node.start_mark
        return InputError(f"{self.path}: {message}", m.line + 1, m.column + 1)

    def _mapping(self) -> dict[str, yaml.Node]:
        if not isinstance(self.node, yaml.MappingNode):
            raise self.error("expected a mapping")
        out = {}
        for k, v in self.node.value:
            out[str(k.value)] = v
        return out

    def has(self, key: str) -> bool:
        return key in self._mapping()

    def get(self, key: str) -> _Node | None:
        v = self._mapping().get(key)
        return None if v is None else _Node(v, f"{self.path}.{key}" if self.path != "<root>" else key)

    def req(self, key: str) -> _Node:
        v = self.get(key)
        if v is None:
            raise self.error(f"missing key {key!r}")
        return v

    def items(self) -> list[_Node]:
        if not isinstance(self.node, yaml.SequenceNode):
            raise self.error("expected a list")
        return [_Node(v, f"{self.path}[{i}]") for i, v in enumerate(self.node.value)]

    def text(self) -> str:
        if not isinstance(self.node, yaml.ScalarNode):
            raise self.error("expected a scalar")
        return str(self.node.value)

    def integer(self, lo: int | None = None, hi: int | None = None) -> int:
        t = self.text().strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            raise self.error(f"expected an integer, got {t!r}")
        v = int(t)
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise self.error(f"{v} out of range")
        return v

    def rational(self):
        t = self.text().strip()
        if not _RATIONAL.match(t):
            raise self.error(f"malformed rational {t!r} (use an integer or 'p/q')")
        try:
            return q(t)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def vector(self, n: int) -> list:
        xs = self.items()
        if len(xs) != n:
            raise self.error(f"expected {n} entries, got {len(xs)}")
        return [x.rational() for x in xs]

    def matrix(self, r: int, c: int) -> list[list]:
        rows = self.items()
        if len(rows) != r:
            raise self.error(f"expected {r} rows, got {len(rows)}")
        return [row.vector(c) for row in rows]


def parse_text(text: str) -> _Node:
    try:
        node = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        m = exc.problem_mark
        raise InputError(f"syntax: {exc.problem}", m.line + 1 if m else None, m.column + 1 if m else None) from None
    if node is None:
        raise InputError("empty project file", 1, 1)
    return _Node(node)


_ALGEBRA_PRESETS: dict[str, Callable[..., FinAlgebra]] = {
    "ground_field": lambda: ground_field(),
    "dual_numbers": lambda: dual_numbers(),
    "truncated_polynomials": truncated_polynomials,
    "matrix": matrix_algebra,
    "diagonal": diagonal_algebra,
}


def load_algebra(node: _Node) -> FinAlgebra:
    if node.has("preset"):
        pn = node.req("preset")
        name = pn.text()
        if name not in _ALGEBRA_PRESETS:
            raise pn.error(f"unknown algebra preset {name!r}")
        if name in ("ground_field", "dual_numbers"):
            return _ALGEBRA_PRESETS[name]()
        return _ALGEBRA_PRESETS[name](node.req("n").integer(1, 8))
    d = node.req("dim").integer(1, 64)
    unit = node.req("unit").vector(d)
    cn = node.req("constants")
    rows = cn.items()
    if len(rows) != d:
        raise cn.error(f"expected {d}x{d}x{d} constants")
    sc = [row.matrix(d, d) for row in rows]
    try:
        a = FinAlgebra.from_constants(sc, unit, name=node.get("name").text() if node.has("name") else "A")
    except ValidationError as exc:
        raise node.error(str(exc)) from None
    rep = check_algebra(a)
    if not rep.ok:
        raise node.error(f"not an associative unital algebra: {rep.failures[0]}")
    return a


def load_lie(node: _Node | None, a: FinAlgebra) -> AnchoredLie:
    d = a.dim
    if node is None:
        return AnchoredLie.abelian(a, [], name="0")
    if node.has("preset"):
        pn = node.req("preset")
        kind = pn.text()
        if kind == "zero":
            l = AnchoredLie.abelian(a, [], name="0")
        elif kind == "derivations":
            l = derivation_lie(a)
        elif kind == "commutator":
            l = commutator_lie(a)
        else:
            raise pn.error(f"unknown Lie preset {kind!r}")
        if node.has("span"):
            sn = node.req("span")
            vecs = []
            for v in sn.items():
                vecs.append({i: x for i, x in enumerate(v.vector(l.ldim)) if x})
            span = Subspace.span(l.ldim, vecs)
            try:
                l = restrict(l, span, name=node.get("name").text() if node.has("name") else None)
            except ValidationError as exc:
                raise sn.error(str(exc)) from None
    else:
        n = node.req("ldim").integer(0, 16)
        bn = node.req("brackets")
        brows = bn.items()
        if len(brows) != n:
            raise bn.error(f"expected {n}x{n}x{n} bracket constants")
        f = [r.matrix(n, n) for r in brows]
        an = node.req("anchor")
        arows = an.items()
        if len(arows) != n:
            raise an.error(f"expected {n} anchor matrices")
        anchor = [m.matrix(d, d) for m in arows]
        l = AnchoredLie.from_constants(a, f, anchor, name=node.get("name").text() if node.has("name") else "L")
    rep = validate(l)
    if not rep.ok:
        raise node.error(f"invalid anchored Lie algebra: {rep.failures[0]}")
    return l


class Project:
    def __init__(self, root: _Node):
        self.root = root
        self.algebra = load_algebra(root.req("algebra"))
        self.lie = load_lie(root.get("lie"), self.algebra)
        self.degree = root.req("degree").integer(0, 8) if root.has("degree") else 2
        self.kind = root.get("bialgebroid").text() if root.has("bialgebroid") else "cm"
        if self.kind not in ("cm", "endomorphism", "enveloping", "over_itself"):
            raise root.req("bialgebroid").error(f"unknown bialgebroid kind {self.kind!r}")
        self.mode = root.get("mode").text() if root.has("mode") else "general"
        self.check_level = root.get("check_level").text() if root.has("check_level") else "quick"
        self.representation_node = root.get("representation")

    def bialgebroid(self) -> GenBialgebroid:
        a = self.algebra
        if self.kind == "endomorphism":
            return endomorphism_bialgebroid(a)
        if self.kind == "enveloping":
            return enveloping_bialgebroid(a)
        if self.kind == "over_itself":
            return uni.base_bialgebroid(a)
        return build_cm(a, self.lie, self.degree)

    def representation(self) -> uni.Representation:
        node = self.representation_node
        if node is None or (isinstance(node.node, yaml.ScalarNode) and node.text() == "base"):
            return uni.base_representation(self.lie)
        a = self.algebra
        m = node.req("mdim").integer(1, 64)

        def mats(key: str, count: int) -> tuple[Mat, ...]:
            kn = node.req(key)
            xs = kn.items()
            if len(xs) != count:
                raise kn.error(f"expected {count} matrices")
            return tuple(Mat.from_dense(x.matrix(m, m)) for x in xs)

        return uni.Representation(a, m, mats("left", a.dim), mats("right", a.dim), mats("rho", self.lie.ldim))


def load_project(path: str) -> Project:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return Project(parse_text(text))


# --- rendering -----------------------------------------------------------------

def _scalar(x) -> str:
    return fmt(x)


def dense_vec(v: Vec, n: int) -> list[str]:
    return [fmt(v.get(i, 0)) for i in range(n)]


def dense_mat(m: Mat) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in m.to_dense()]


def report_dict(r: Report) -> dict:
    return {
        "ok": r.ok,
        "checked": r.checked,
        "skipped": r.skipped,
        "failures": [{"check": f.check, "where": list(f.where), "detail": f.detail} for f in r.failures[:20]],
    }


def render_text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, dict) and (not isinstance(x, list) or all(not isinstance(y, (list, dict)) for y in x)) for x in v)


def _inline(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit(obj: dict, fmt_: str, out) -> None:
    if fmt_ == "structured":
        out.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(render_text(obj)) + "\n")


# --- commands ------------------------------------------------------------------

def cmd_derivations(p: Project, args) -> tuple[dict, int]:
    a = p.algebra
    ders = derivations(a)
    d = a.dim
    inner = [inner_derivation(a, {i: 1}) for i in range(d)]
    flat = lambda m: {r * d + c: x for r, row in enumerate(m.rows()) for c, x in row.items()}
    n_inner = rank(Mat.from_columns(d * d, [flat(m) for m in inner])) if d else 0
    n_outer = len(ders) - n_inner
    summary = f"dim {len(ders)}"
    if ders:
        summary += ", all inner" if n_outer == 0 else f", {n_inner} inner, {n_outer} outer"
    return {
        "command": "derivations",
        "algebra": a.name,
        "dim": len(ders),
        "inner_dim": n_inner,
        "outer_dim": n_outer,
        "summary": summary,
        "basis": [dense_mat(m) for m in ders],
    }, EXIT_OK


def cmd_build_check(p: Project, args) -> tuple[dict, int]:
    b = p.bialgebroid()
    reports = check_bialgebroid(b, p.check_level)
    out = {
        "command": "build-check",
        "bialgebroid": b.name,
        "check_level": p.check_level,
        "dims": {"B": b.bdim, "B_tensor_B": b.tensor2.dim, "takeuchi": b.takeuchi.dim},
        "axioms": {name: report_dict(r) for name, r in reports.items()},
        "all_passed": all_passed(reports),
    }
    if isinstance(b, CMBialgebroid):
        out["dims"]["U_truncated"] = b.env.dim
        out["degree"] = b.N
        if b.lie.ldim == 0:
            out["isomorphic_to_enveloping_algebra"] = b.bdim == p.algebra.dim ** 2
    return out, EXIT_OK if out["all_passed"] else EXIT_FAIL


def _b_coords(b: GenBialgebroid, v: Vec) -> list:
    if isinstance(b, CMBialgebroid):
        terms = []
        for k in sorted(v):
            i, u, j = b.split(k)
            terms.append({"coefficient": fmt(v[k]), "left": i, "pbw": list(b.env.monos[u]), "right": j})
        return terms
    return dense_vec(v, b.bdim)


def cmd_primitives(p: Project, args) -> tuple[dict, int]:
    b = p.bialgebroid()
    st = st_ideal(b)
    out: dict[str, Any] = {"command": "primitives", "bialgebroid": b.name, "st_ideal": {"dim": st.dim, "checks": report_dict(st.report)}}
    code = EXIT_OK if st.report.ok else EXIT_FAIL
    if isinstance(b, CMBialgebroid) and b.N >= 2:
        dec = prim_decomposition(b)
        prim = dec.prim
        out["decomposition"] = {
            "ok": dec.ok,
            "lie_dim": dec.lie_span.dim,
            "st_dim": dec.st_span.dim,
            "summary": f"{dec.lie_span.dim} ⊕ {dec.st_span.dim}",
        }
        if not dec.ok:
            out["decomposition"]["failure"] = {"condition": dec.result.condition, "detail": dec.result.detail}
            code = EXIT_FAIL
        out["search_space"] = f"F_{b.N - 1}"
    else:
        prim = primitives(b)
        out["search_space"] = "B"
    out["dim"] = prim.dim
    out["basis"] = [_b_coords(b, v) for v in prim.subspace.basis]
    out["counit_values"] = [dense_vec(v, b.base.dim) for v in prim.counit_values]
    out["anchor"] = [dense_mat(m) for m in prim.lie.anchor]
    return out, code


def cmd_recognize(p: Project, args) -> tuple[dict, int]:
    b = p.bialgebroid()
    depth = p.degree
    if args.degree is None and p.root.has("depth"):
        depth = p.root.req("depth").integer(0, 8)
    v = uni.cm_recognize(b, depth, p.mode, p.check_level)
    label = v.label
    if v.status == "recognized" and v.lie is not None:
        label += f", L = {v.lie.ldim}" if v.lie.ldim else ", L = 0"
    out = {
        "command": "recognize",
        "bialgebroid": b.name,
        "depth": depth,
        "mode": p.mode,
        "verdict": v.status,
        "label": label,
        "prim_dim": v.prim_dim,
        "st_dim": v.st_dim,
        "lie_dim": v.lie.ldim if v.lie is not None else None,
        "lie_basis": [_b_coords(b, x) for x in v.lie_basis],
        "conditions": [_condition(c) for c in v.conditions],
        "notes": list(v.notes),
    }
    return out, {"recognized": EXIT_OK, "refuted": EXIT_FAIL}.get(v.status, EXIT_INCONCLUSIVE)


def _condition(c: uni.Condition) -> dict:
    d = {"name": c.name, "status": c.status, "detail": c.detail}
    w = c.witness
    if isinstance(w, tuple) and all(isinstance(x, int) for x in w):
        d["witness"] = list(w)
    elif isinstance(w, list) and all(isinstance(x, int) for x in w):
        d["witness"] = w
    return d


def cmd_universal(p: Project, args) -> tuple[dict, int]:
    a, l, n = p.algebra, p.lie, p.degree
    b = build_cm(a, l, n)
    ring = uni.universal_ring_map(a, l, n, uni.endomorphism_ring_input(l), b)
    mod = uni.representation_to_module(a, l, n, p.representation(), b)
    out: dict[str, Any] = {
        "command": "universal",
        "bialgebroid": b.name,
        "ring_map": {"matrix": dense_mat(ring.matrix), "checks": report_dict(ring.report)},
        "module": {"checks": report_dict(mod.report)},
    }
    ok = ring.report.ok and mod.report.ok
    if n >= 1:
        unit = uni.adjunction_unit(a, l, n, b)
        out["unit"] = {"matrix": dense_mat(unit.matrix), "prim_dim": unit.subspace.dim, "checks": report_dict(unit.report)}
        ok = ok and unit.report.ok
    if n >= 2:
        tri = uni.triangle_identity(b, n - 1)
        out["triangle_identity"] = report_dict(tri)
        ok = ok and tri.ok
    out["all_passed"] = ok
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_smash(p: Project, args) -> tuple[dict, int]:
    res = uni.smash_quotient(p.algebra, p.lie, p.degree)
    axioms = check_bialgebroid(res.target, p.check_level)
    ok = res.report.ok and all_passed(axioms)
    out = {
        "command": "smash",
        "source": res.source.name,
        "target": res.target.name,
        "dims": {"B": res.source.bdim, "smash": res.target.bdim, "kernel": res.kernel.dim, "ideal": res.ideal.dim},
        "kernel_equals_ideal": res.kernel_matches_ideal,
        "checks": report_dict(res.report),
        "target_axioms": {k: report_dict(r) for k, r in axioms.items()},
        "all_passed": ok,
    }
    return out, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "derivations": cmd_derivations,
    "build-check": cmd_build_check,
    "primitives": cmd_primitives,
    "recognize": cmd_recognize,
    "universal": cmd_universal,
    "smash": cmd_smash,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmbialg", description="Exact computations with finite truncations of A ⊙ U(L) ⊙ A.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file", help="project file (YAML or JSON)")
        sp.add_argument("--degree", type=int, default=None, help="truncation degree N (overrides the file)")
        sp.add_argument("--mode", choices=("general", "commutative"), default=None)
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--check-level", choices=("quick", "exhaustive"), default=None)
    return ap


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        p = load_project(args.file)
        if args.degree is not None:
            if args.degree < 0:
                raise InputError("--degree must be nonnegative")
            p.degree = args.degree
        if args.mode is not None:
            p.mode = args.mode
        if args.check_level is not None:
            p.check_level = args.check_level
        out, code = COMMANDS[args.command](p, args)
    except InputError as exc:
        where = f"{args.file}:{exc.line}:{exc.column}: " if exc.line is not None else f"{args.file}: "
        stderr.write(f"error: {where}{exc.message}\n")
        return EXIT_INPUT
    except (ValidationError, DegreeOverflow) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CMError as exc:  # pragma: no cover - defensive
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    emit(out, args.format, stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
