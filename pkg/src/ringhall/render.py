"""Deterministic text and JSON rendering of Hall-algebra objects."""

from __future__ import annotations

import json
from fractions import Fraction

from .hall import HallAlgebra, HallElement, HomomorphismReport, TensorElement
from .laurent import LaurentPoly, SqrtQ
from .quiver import FreeReps, Quiver
from .ring import get_ring


def align(rows, header=None) -> str:
    """Left-aligned columns separated by two spaces."""
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    if not rows:
        return ""
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def coeff_to_json(c):
    if isinstance(c, SqrtQ):
        return {"a": str(c.a), "b": str(c.b)}
    if isinstance(c, LaurentPoly):
        return {"laurent": str(c)}
    return {"a": str(Fraction(c)), "b": "0"}


def coeff_from_json(obj, q):
    if "laurent" in obj:
        from .laurent import parse_laurent
        return parse_laurent(obj["laurent"])
    return SqrtQ(q, Fraction(obj["a"]), Fraction(obj["b"]))


def algebra_header(H: HallAlgebra) -> dict:
    return {"quiver": H.quiver.to_json(), "q": H.q, "n": H.n, "twist": H.twist}


def element_rows(H: HallAlgebra, x: HallElement):
    return [(",".join(map(str, X.dim)), H.reps.format_rep(X), str(c)) for X, c in x.sorted_terms()]


def element_text(H: HallAlgebra, x: HallElement) -> str:
    if not x.terms:
        return "0"
    return align(element_rows(H, x), ("grade", "representative", "coefficient"))


def element_to_json(H: HallAlgebra, x: HallElement) -> dict:
    out = algebra_header(H)
    out["kind"] = "hall_element"
    out["terms"] = [dict(H.reps.rep_to_json(X), coeff=coeff_to_json(c)) for X, c in x.sorted_terms()]
    return out


def element_from_json(obj) -> HallElement:
    """Rebuild the HallElement described by ``element_to_json`` output."""
    ring = get_ring(obj["q"], obj["n"])
    H = HallAlgebra(FreeReps(Quiver.from_json(obj["quiver"]), ring), obj.get("twist", "half"))
    terms = {}
    for t in obj["terms"]:
        X = H.reps.rep_from_json(t)
        terms[X] = coeff_from_json(t["coeff"], ring.q)
    return HallElement(H, terms)


def tensor_rows(H: HallAlgebra, u: TensorElement):
    fmt = H.reps.format_rep
    return [(fmt(A), fmt(B), str(c)) for (A, B), c in u.sorted_terms()]


def tensor_to_json(H: HallAlgebra, u: TensorElement) -> list:
    return [{"left": H.reps.rep_to_json(A), "right": H.reps.rep_to_json(B), "coeff": coeff_to_json(c)}
            for (A, B), c in u.sorted_terms()]


def _sorted_keys(keys):
    return sorted(keys, key=lambda k: (k[0].sort_key, k[1].sort_key))


def report_to_json(H: HallAlgebra, rep: HomomorphismReport) -> dict:
    pair = lambda k: [H.reps.rep_to_json(k[0]), H.reps.rep_to_json(k[1])]
    return {
        "homomorphism": rep.homomorphism,
        "supports_equal": rep.supports_equal,
        "only_lhs": [pair(k) for k in _sorted_keys(rep.only_lhs)],
        "only_rhs": [pair(k) for k in _sorted_keys(rep.only_rhs)],
        "lhs": tensor_to_json(H, rep.lhs),
        "rhs": tensor_to_json(H, rep.rhs),
    }


def report_text(H: HallAlgebra, rep: HomomorphismReport) -> str:
    fmt = H.reps.format_rep
    lines = [f"verdict: {'homomorphism' if rep.homomorphism else 'NOT-homomorphism'}",
             f"supports equal: {rep.supports_equal}"]
    for name, keys in (("only in Delta(MN)", rep.only_lhs), ("only in Delta(M)Delta(N)", rep.only_rhs)):
        lines.append(f"{name}: {len(keys)}")
        for A, B in _sorted_keys(keys):
            lines.append(f"  {fmt(A)} (x) {fmt(B)}")
    lines.append("Delta(MN):")
    lines.append(align(tensor_rows(H, rep.lhs), ("left", "right", "coefficient")) or "0")
    lines.append("Delta(M)Delta(N):")
    lines.append(align(tensor_rows(H, rep.rhs), ("left", "right", "coefficient")) or "0")
    return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
