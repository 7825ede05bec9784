"""Batch command line: ``ringhall <command> [options]``.

Settings come from an optional JSON config (``--config``) and are overridden by
explicit flags.  Every command loops over the primes in ``q`` and prints one
block per prime.  Exit codes: 0 ok, 1 failed check, 2 bad configuration,
3 budget exceeded, 4 interpolation validation failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import acceptance, render
from .flags import FlagType, free_grassmannian_count, geometry_table
from .gkm import cartan_from_quiver, commutation_check, serre_residual
from .hall import TWISTS, HallAlgebra
from .laurent import InterpolationError, parse_laurent
from .quiver import PRESETS, FreeReps, Quiver, resolve_vertices
from .ring import DEFAULT_BUDGET, BudgetExceeded, get_ring, is_prime
from .symbolic import interpolate_word

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_BUDGET, EXIT_INTERP = range(5)

COMMANDS = ("classify", "product", "delta-check", "serre", "commute", "geom", "grassmann",
            "interpolate", "accept")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    quiver: Quiver = PRESETS["a2"]
    quiver_name: str = "a2"
    q: tuple = (2,)
    n: int = 2
    twist: str = "half"
    budget: int = DEFAULT_BUDGET
    seed: int = acceptance.DEFAULT_SEED
    format: str = "text"
    dim: tuple | None = None
    word: tuple = ()
    extra: dict = field(default_factory=dict)

    def validate(self):
        if not self.q:
            raise ConfigError("q must list at least one prime")
        for q in self.q:
            if not isinstance(q, int) or not is_prime(q):
                raise ConfigError(f"q must be prime, got {q!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        if self.twist not in TWISTS:
            raise ConfigError(f"twist must be one of {TWISTS}")
        if not isinstance(self.budget, int) or self.budget <= 0:
            raise ConfigError("budget must be a positive integer")
        if self.format not in ("text", "json"):
            raise ConfigError("format must be text or json")
        if self.dim is not None and len(self.dim) != len(self.quiver.vertices):
            raise ConfigError(f"dim needs {len(self.quiver.vertices)} entries")
        return self

    def header(self, q=None) -> dict:
        out = {"quiver": self.quiver.to_json(), "n": self.n, "twist": self.twist}
        if q is not None:
            out["q"] = q
        return out


def _csv_ints(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    text = str(text).strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _csv_tokens(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(text)
    return tuple(x.strip() for x in str(text).split(",") if x.strip())


def load_quiver(spec) -> tuple:
    """A preset name, a path to a JSON file, or an inline {vertices, arrows} object."""
    if isinstance(spec, dict):
        return Quiver.from_json(spec), "custom"
    if spec in PRESETS:
        return PRESETS[spec], spec
    path = Path(spec)
    if not path.exists():
        raise ConfigError(f"unknown quiver {spec!r}: not a preset ({', '.join(PRESETS)}) or file")
    return Quiver.from_json(json.loads(path.read_text())), path.stem


def build_config(args) -> JobConfig:
    raw = {}
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("quiver", "q", "n", "twist", "budget", "seed", "format", "dim", "word",
                "left", "right", "pair", "coeff", "flag", "split", "s", "l", "degree", "aut"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            raw[key] = val
    try:
        cfg = JobConfig()
        if "quiver" in raw:
            cfg.quiver, cfg.quiver_name = load_quiver(raw.pop("quiver"))
        if "q" in raw:
            q = raw.pop("q")
            cfg.q = (q,) if isinstance(q, int) else _csv_ints(q)
        for key in ("n", "budget", "seed"):
            if key in raw:
                setattr(cfg, key, int(raw.pop(key)))
        for key in ("twist", "format"):
            if key in raw:
                setattr(cfg, key, raw.pop(key))
        if "dim" in raw:
            cfg.dim = _csv_ints(raw.pop("dim"))
        if "word" in raw:
            cfg.word = _csv_tokens(raw.pop("word"))
        cfg.extra = raw
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate()


# -- representation literals -----------------------------------------------

_REP_RE = re.compile(r"^\s*\(([\d,\s]*)\)\s*(.*)$")


def parse_rep(reps: FreeReps, text) -> object:
    """Parse the rendering used in tables, e.g. '(1,1) [[t]]' or '(2,1) [[t,0]]'.

    Maps are separated by ';' in arrow order; a JSON object with dim/maps
    (coefficient lists) is accepted too.
    """
    if isinstance(text, dict):
        return reps.rep_from_json(text)
    m = _REP_RE.match(text)
    if not m:
        raise ConfigError(f"cannot parse representation {text!r}")
    dim = _csv_ints(m.group(1))
    maps = []
    body = m.group(2).strip()
    for chunk in (c.strip() for c in body.split(";")) if body else ():
        zero = re.fullmatch(r"0\[(\d+)x(\d+)\]", chunk)
        if zero:
            maps.append(reps.ring.zeros(int(zero.group(1)), int(zero.group(2))))
            continue
        rows = re.findall(r"\[([^\[\]]*)\]", chunk)
        maps.append(reps.ring.matrix([[reps.ring.parse(x) for x in r.split(",")] for r in rows]))
    return reps.make(dim, maps)


def default_arrow_rep(reps: FreeReps):
    """R --t--> R on the first arrow, everything else zero."""
    quiver, ring = reps.quiver, reps.ring
    if not quiver.arrows:
        raise ConfigError("quiver has no arrows; pass --left/--right explicitly")
    s, t = quiver.arrow_indices[0]
    dim = tuple(int(k in (s, t)) for k in range(len(quiver.vertices)))
    maps = [ring.matrix([[ring.t]]) if k == 0 else ring.zeros(dim[b], dim[a])
            for k, (a, b) in enumerate(quiver.arrow_indices)]
    return reps.make(dim, maps)


# -- commands ---------------------------------------------------------------

@dataclass
class Output:
    status: int = EXIT_OK
    text: list = field(default_factory=list)
    json: list = field(default_factory=list)


def _algebra(cfg: JobConfig, q: int) -> HallAlgebra:
    return HallAlgebra(FreeReps(cfg.quiver, get_ring(q, cfg.n, cfg.budget)), cfg.twist)


def _block_title(cfg, q):
    return f"# quiver={cfg.quiver_name} q={q} n={cfg.n} twist={cfg.twist}"


def cmd_classify(cfg: JobConfig, out: Output):
    if cfg.dim is None:
        raise ConfigError("classify needs --dim")
    with_aut = bool(cfg.extra.get("aut", False))
    for q in cfg.q:
        reps = FreeReps(cfg.quiver, get_ring(q, cfg.n, cfg.budget))
        classes = reps.iso_classes(cfg.dim)
        rows = []
        items = []
        for k, X in enumerate(classes):
            row = [k, reps.format_rep(X)]
            item = reps.rep_to_json(X)
            if with_aut:
                row.append(reps.aut_count(X))
                item["aut"] = row[-1]
            rows.append(row)
            items.append(item)
        header = ("#", "representative") + (("aut",) if with_aut else ())
        out.text += [_block_title(cfg, q), f"dim ({','.join(map(str, cfg.dim))}): {len(classes)} classes",
                     render.align(rows, header)]
        out.json.append(dict(cfg.header(q), dim=list(cfg.dim), count=len(classes), classes=items))


def cmd_product(cfg: JobConfig, out: Output):
    for q in cfg.q:
        H = _algebra(cfg, q)
        word = resolve_vertices(cfg.quiver, cfg.word)
        x = H.word(word)
        label = "".join(f"S{v}" for v in word) or "1"
        out.text += [_block_title(cfg, q), f"{label} =", render.element_text(H, x)]
        out.json.append(dict(render.element_to_json(H, x), word=[str(v) for v in word]))


def cmd_delta_check(cfg: JobConfig, out: Output):
    for q in cfg.q:
        H = _algebra(cfg, q)
        reps = H.reps
        left = cfg.extra.get("left")
        right = cfg.extra.get("right")
        M = parse_rep(reps, left) if left else default_arrow_rep(reps)
        N = parse_rep(reps, right) if right else M
        report = H.check_delta_homomorphism(M, N)
        out.text += [_block_title(cfg, q), f"M = {reps.format_rep(M)}", f"N = {reps.format_rep(N)}",
                     render.report_text(H, report)]
        out.json.append(dict(cfg.header(q), M=reps.rep_to_json(M), N=reps.rep_to_json(N),
                             **render.report_to_json(H, report)))


def _pair(cfg: JobConfig):
    pair = cfg.extra.get("pair")
    if pair is None:
        if len(cfg.quiver.vertices) < 2:
            raise ConfigError("need two vertices")
        return tuple(cfg.quiver.vertices[:2])
    tokens = _csv_tokens(pair)
    if len(tokens) != 2:
        raise ConfigError("--pair needs exactly two vertices")
    return tuple(resolve_vertices(cfg.quiver, tokens))


def cmd_serre(cfg: JobConfig, out: Output):
    i, j = _pair(cfg)
    coeff = parse_laurent(str(cfg.extra.get("coeff", "v + v^-1")))
    for q in cfg.q:
        H = _algebra(cfg, q)
        res = serre_residual(H, i, j, coeff)
        verdict = "zero" if not res else "nonzero"
        out.text += [_block_title(cfg, q), f"S{i}^2 S{j} - ({coeff}) S{i} S{j} S{i} + S{j} S{i}^2 =",
                     render.element_text(H, res), f"residual: {verdict}"]
        out.json.append(dict(render.element_to_json(H, res), pair=[str(i), str(j)],
                             coeff=str(coeff), residual=verdict))


def cmd_commute(cfg: JobConfig, out: Output):
    i, j = _pair(cfg)
    A = cartan_from_quiver(cfg.quiver, cfg.n)
    for q in cfg.q:
        H = _algebra(cfg, q)
        holds = commutation_check(H, i, j)
        if not holds:
            out.status = EXIT_CHECK
        out.text += [_block_title(cfg, q), f"a_{i}{j} = {A.entry(i, j)}",
                     f"S{i} S{j} == S{j} S{i}: {holds}"]
        out.json.append(dict(cfg.header(q), pair=[str(i), str(j)], a_ij=A.entry(i, j), commutes=holds))


def cmd_geom(cfg: JobConfig, out: Output):
    if "flag" not in cfg.extra:
        raise ConfigError("geom needs --flag, e.g. 1:1,2:1")
    ft = FlagType.parse(str(cfg.extra["flag"]))
    split = cfg.extra.get("split")
    rows = geometry_table(ft, cfg.quiver, cfg.n, None if split is None else int(split))
    values = dict(rows)
    if not (values["jet_scaling_holds"] and values["concat_identity_holds"]
            and values["degree_defect"] == 0):
        out.status = EXIT_CHECK
    out.text += [f"# quiver={cfg.quiver_name} n={cfg.n}", render.align(rows, ("quantity", "value"))]
    out.json.append(dict(cfg.header(), table={k: v for k, v in rows}))


def cmd_grassmann(cfg: JobConfig, out: Output):
    s = int(cfg.extra.get("s", 1))
    l = int(cfg.extra.get("l", 2))
    rows = []
    for q in cfg.q:
        ring = get_ring(q, cfg.n, cfg.budget)
        counted = free_grassmannian_count(s, l, ring)
        formula = ring.free_grassmannian_size(l, s)
        if counted != formula:
            out.status = EXIT_CHECK
        rows.append((q, cfg.n, s, l, counted, formula, counted == formula))
        out.json.append({"q": q, "n": cfg.n, "s": s, "l": l, "count": counted, "formula": formula})
    out.text.append(render.align(rows, ("q", "n", "s", "l", "count", "formula", "match")))


def cmd_interpolate(cfg: JobConfig, out: Output):
    primes = cfg.q if len(cfg.q) > 1 else (2, 3, 5, 7)
    degree = cfg.extra.get("degree")
    word = resolve_vertices(cfg.quiver, cfg.word)
    terms = interpolate_word(cfg.quiver, word, cfg.n, primes, cfg.twist,
                             None if degree is None else int(degree), cfg.budget)
    label = "".join(f"S{v}" for v in word) or "1"
    exponent = terms[0].exponent if terms else 0
    rows = [(",".join(map(str, t.grade)), t.label, str(t.bracket), str(t.value)) for t in terms]
    out.text += [f"# quiver={cfg.quiver_name} n={cfg.n} twist={cfg.twist} primes={','.join(map(str, primes))}",
                 f"{label} = v^{exponent} * [bracket]",
                 render.align(rows, ("grade", "representative", "bracket", "coefficient"))]
    out.json.append(dict(cfg.header(), primes=list(primes), word=[str(v) for v in word],
                         exponent=exponent,
                         terms=[dict(t.rep_json, bracket=str(t.bracket), coefficient=str(t.value))
                                for t in terms]))


def cmd_accept(cfg: JobConfig, out: Output):
    for res in acceptance.run_all(seed=cfg.seed):
        print(f"{res.key}: {res.seconds:.2f}s", file=sys.stderr)
        if not res.passed:
            out.status = EXIT_CHECK
        out.text.append(res.line())
        out.json.append({"key": res.key, "title": res.title, "passed": res.passed, "detail": res.detail})
    passed = sum(r["passed"] for r in out.json)
    out.text.append(f"{passed}/{len(out.json)} criteria passed")


HANDLERS = {
    "classify": cmd_classify,
    "product": cmd_product,
    "delta-check": cmd_delta_check,
    "serre": cmd_serre,
    "commute": cmd_commute,
    "geom": cmd_geom,
    "grassmann": cmd_grassmann,
    "interpolate": cmd_interpolate,
    "accept": cmd_accept,
}


def run(command: str, cfg: JobConfig) -> tuple:
    """Execute one command; returns (exit status, rendered output)."""
    out = Output()
    try:
        HANDLERS[command](cfg, out)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"error: budget exceeded: {exc}\n"
    except InterpolationError as exc:
        return EXIT_INTERP, f"error: interpolation failed: {exc}\n"
    except (ConfigError, ValueError) as exc:
        return EXIT_CONFIG, f"error: {exc}\n"
    if cfg.format == "json":
        body = render.dumps({"command": command, "status": out.status, "results": out.json})
    else:
        body = "\n".join(out.text)
    return out.status, body + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its keys")
    common.add_argument("--quiver", help="preset name (a2, a3, two-points) or JSON file")
    common.add_argument("--q", help="prime or comma-separated primes")
    common.add_argument("--n", type=int, help="nilpotency order of t")
    common.add_argument("--twist", choices=TWISTS)
    common.add_argument("--dim", help="dimension vector, e.g. 2,1")
    common.add_argument("--word", help="word of vertices, e.g. 1,2,1")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--budget", type=int, help="cap on enumerated elements")

    parser = argparse.ArgumentParser(prog="ringhall", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "classify":
            p.add_argument("--aut", action="store_const", const=True, help="also print |Aut|")
        if name == "delta-check":
            p.add_argument("--left", help="M, e.g. '(1,1) [[t]]'")
            p.add_argument("--right", help="N (defaults to M)")
        if name in ("serre", "commute"):
            p.add_argument("--pair", help="two vertices, e.g. 1,2")
        if name == "serre":
            p.add_argument("--coeff", help="Laurent polynomial in v (default 'v + v^-1')")
        if name == "geom":
            p.add_argument("--flag", help="flag type, e.g. 1:1,2:1")
            p.add_argument("--split", type=int, help="cut point between T and W parts")
        if name == "grassmann":
            p.add_argument("--s", type=int, help="rank of the summand (default 1)")
            p.add_argument("--l", type=int, help="ambient rank (default 2)")
        if name == "interpolate":
            p.add_argument("--degree", type=int, help="degree bound in q (default #primes - 2)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    status, text = run(args.command, cfg)
    (sys.stderr if text.startswith("error:") else sys.stdout).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
