"""Batch command-line interface.

Each invocation reads one JSON payload (``--in FILE`` or standard input),
runs one library operation and prints one JSON document that embeds the
command, the configuration and the payload, so it can be replayed.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import random
import sys
import warnings

from . import oracle, springer, vinberg
from .catalog import CATALOG_HORIZON, CatalogEntry, catalog_by_name, entry_record
from .errors import NonCompact, PrecisionExhausted, Unsupported, ValidationError, WindowNotSaturated
from .exactnum import LaurentSeries, SeriesMatrix, get_field
from .rootdata import Coweight, RootDatum
from .sampling import random_char_point

EXIT_OK, EXIT_INTERNAL, EXIT_UNSUPPORTED, EXIT_PRECISION, EXIT_INVALID = 0, 1, 2, 3, 4

COMMANDS = ("chi", "section", "verify-section", "regular", "discriminant", "jordan", "newton",
            "delta", "defect", "dim", "nonempty", "enumerate", "nilcone-report")

DEFAULTS = {"field": "rational", "horizon": CATALOG_HORIZON, "seed": 0, "depth": 4, "q_grid": [3, 5, 7, 11]}


class Context:
    def __init__(self, config: dict):
        self.config = config
        self.field = get_field(config["field"])
        self.horizon = int(config["horizon"])
        self.seed = int(config["seed"])
        self.depth = int(config["depth"])
        self.q_grid = [int(q) for q in config["q_grid"]]

    def series_list(self, docs):
        if not isinstance(docs, list):
            raise ValidationError("expected a list of series")
        return [LaurentSeries.from_json(self.field, d) for d in docs]

    def matrix(self, doc):
        if isinstance(doc, list):
            return SeriesMatrix.from_rows([[LaurentSeries.from_json(self.field, x) for x in row] for row in doc])
        return SeriesMatrix.from_json(self.field, doc)

    def entries(self, payload) -> list[CatalogEntry]:
        """Springer inputs: a catalog name, one entry, or a list of entries."""
        if isinstance(payload, list):
            return [self._entry(d) for d in payload]
        return [self._entry(payload)]

    def _entry(self, doc) -> CatalogEntry:
        if not isinstance(doc, dict):
            raise ValidationError("expected an object")
        if "catalog" in doc:
            entry = catalog_by_name(doc["catalog"], self.horizon)
            if "lambda" in doc:
                entry = CatalogEntry(entry.name, entry.gamma, Coweight.from_json(doc["lambda"]),
                                     entry.q_grid, entry.tags)
            return entry
        if "field" not in doc:
            doc = dict(doc, field=self.field.tag)
        if "lambda" not in doc:
            doc = dict(doc, **{"lambda": [0] * self.matrix(doc["gamma"]).rows})
        return CatalogEntry.from_json(doc)

    def gamma(self, payload):
        if "catalog" in payload:
            return catalog_by_name(payload["catalog"], self.horizon).gamma
        return self.matrix(payload["gamma"])


# -- commands ------------------------------------------------------------------


def cmd_chi(ctx, p):
    if "point" in p:
        v = vinberg.VinbergPoint.from_json(ctx.field, p["point"])
    else:
        g = ctx.matrix(p["g"])
        t = ctx.series_list(p["t"]) if "t" in p else [LaurentSeries.const(ctx.field, 1)] * g.rows
        v = vinberg.embed(t, g)
    return vinberg.chi_plus(v).to_json()


def cmd_section(ctx, p):
    c = vinberg.CharPoint.from_json(ctx.field, p)
    v = vinberg.steinberg_section(c, p.get("order"))
    return {"point": v.to_json(), "chi": vinberg.chi_plus(v).to_json()}


def cmd_verify_section(ctx, p):
    n = int(p.get("n", 2))
    samples = int(p.get("samples", 100))
    RootDatum(n)
    rng = random.Random(ctx.seed)
    failures = []
    for i in range(samples):
        c = random_char_point(n, ctx.field, rng)
        if not vinberg.verify_section(c):
            failures.append(i)
    return {"ok": not failures, "samples": samples, "n": n, "failures": failures}


def cmd_regular(ctx, p):
    if "point" in p:
        v = vinberg.VinbergPoint.from_json(ctx.field, p["point"])
    else:
        v = vinberg.steinberg_section(vinberg.CharPoint.from_json(ctx.field, p))
    d = vinberg.centralizer_dim(v)
    out = {"centralizer_dim": d, "rank": v.rank, "regular": d == v.rank}
    if ctx.field.characteristic:
        out["note"] = "linear solution space over a finite field"
    return out


def cmd_discriminant(ctx, p):
    b = ctx.series_list(p["b"])
    if "a" in p:
        value = vinberg.discriminant_base(vinberg.CharPoint(tuple(b), tuple(ctx.series_list(p["a"]))))
        where = "base"
    elif "t" in p:
        value = vinberg.discriminant_vt(b, ctx.series_list(p["t"]))
        where = "torus"
    else:
        value = vinberg.discriminant_psi(b)
        where = "psi"
    val = value.valuation()
    return {"where": where, "value": value.to_json(), "valuation": None if val == float("inf") else val,
            "nonzero": val != float("inf")}


def cmd_jordan(ctx, p):
    J = springer.topological_jordan(ctx.gamma(p))
    return {"s": J.s.to_json(), "u": J.u.to_json(), "period": J.period, "steps": J.steps}


def cmd_newton(ctx, p):
    return {"newton": springer.newton_point(ctx.gamma(p)).to_json()}


def cmd_delta(ctx, p):
    g = ctx.gamma(p)
    return {"delta": springer.delta(g)}


def cmd_defect(ctx, p):
    g = ctx.gamma(p)
    return {"defect": springer.defect(g, geometric=bool(p.get("geometric", True))),
            "geometric": bool(p.get("geometric", True))}


def _records(ctx, p):
    geometric = bool(p.get("geometric", True)) if isinstance(p, dict) else True
    recs = [entry_record(e, geometric) for e in ctx.entries(p)]
    return recs[0] if isinstance(p, dict) else recs


def cmd_dim(ctx, p):
    return _records(ctx, p)


def cmd_nonempty(ctx, p):
    out = []
    for e in ctx.entries(p):
        out.append({"name": e.name, "lambda": e.lam.to_json(),
                    "newton": springer.newton_point(e.gamma).to_json(),
                    "nonempty": springer.nonempty(e.gamma, e.lam)})
    return out[0] if isinstance(p, dict) else out


def cmd_enumerate(ctx, p):
    entry = ctx.entries(p)[0]
    if isinstance(p, dict) and "q_grid" in p:
        q_grid = [int(q) for q in p["q_grid"]]
    elif ctx.config.get("_q_grid_default"):
        q_grid = list(entry.q_grid)  # catalog entries carry their own grid
    else:
        q_grid = ctx.q_grid
    res = oracle.oracle_dimension(entry.gamma, entry.lam, tuple(q_grid), ctx.depth)
    out = res.to_json()
    out["name"] = entry.name
    out["lambda"] = entry.lam.to_json()
    out["q_grid"] = list(q_grid)
    if not res.saturated:
        out["warning"] = "WindowNotSaturated"
    return out


def cmd_nilcone_report(ctx, p):
    n = int(p.get("n", 3))
    return vinberg.nilcone_report(n, ctx.field)


HANDLERS = {
    "chi": cmd_chi, "section": cmd_section, "verify-section": cmd_verify_section, "regular": cmd_regular,
    "discriminant": cmd_discriminant, "jordan": cmd_jordan, "newton": cmd_newton, "delta": cmd_delta,
    "defect": cmd_defect, "dim": cmd_dim, "nonempty": cmd_nonempty, "enumerate": cmd_enumerate,
    "nilcone-report": cmd_nilcone_report,
}


# -- plumbing ------------------------------------------------------------------


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # flags may sit before or after the command; the copy attached to each
    # subcommand must not reset values given before it
    common = argparse.ArgumentParser(add_help=False)
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    common.add_argument("--field", help="rational or fq:<p>[:<e>]", **kw)
    common.add_argument("--horizon", type=int, help="precision horizon for constructed inputs", **kw)
    common.add_argument("--seed", type=int, help="seed for sampled inputs (default 0)", **kw)
    common.add_argument("--depth", type=int, help="enumeration depth bound", **kw)
    common.add_argument("--q-grid", dest="q_grid", help="comma-separated residue field sizes", **kw)
    common.add_argument("--out", choices=("json", "csv"), **(kw or {"default": "json"}))
    common.add_argument("--in", dest="infile", help="input document (default: standard input)", **kw)
    common.add_argument("--n", type=int, help="shortcut for the payload key n", **kw)
    common.add_argument("--samples", type=int, help="shortcut for the payload key samples", **kw)
    common.add_argument("--catalog", help="use a built-in catalog entry by name", **kw)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vinberg-springer", description=__doc__.splitlines()[0],
                                     parents=[_common_flags(False)])
    sub = parser.add_subparsers(dest="command", required=True)
    sub_common = _common_flags(True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[sub_common])
    return parser


def _read_payload(args, stdin):
    if args.infile:
        with open(args.infile) as fh:
            text = fh.read()
    elif stdin is not None and not stdin.isatty():
        text = stdin.read()
    else:
        text = ""
    if not text.strip():
        return {}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}") from exc


def _resolve_config(args, embedded: dict) -> dict:
    config = dict(DEFAULTS)
    config.update({k: v for k, v in embedded.items() if k in DEFAULTS})
    config["_q_grid_default"] = "q_grid" not in embedded
    for key in ("field", "horizon", "seed", "depth"):
        val = getattr(args, key)
        if val is not None:
            config[key] = val
    if args.q_grid:
        try:
            config["q_grid"] = [int(x) for x in args.q_grid.split(",") if x.strip()]
        except ValueError as exc:
            raise ValidationError(f"bad --q-grid {args.q_grid!r}") from exc
        config["_q_grid_default"] = False
    return config


def _to_csv(result) -> str:
    buf = io.StringIO()
    if isinstance(result, dict) and "reports" in result:
        rows = [row for rep in result["reports"] for row in rep["cells"]]
    elif isinstance(result, list):
        rows = result
    else:
        rows = [{"key": k, "value": v} for k, v in sorted(result.items())]
    if not rows:
        return ""
    cols = list(rows[0].keys())
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return buf.getvalue()


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        doc = _read_payload(args, stdin)
        embedded = {}
        if isinstance(doc, dict) and "command" in doc and "input" in doc:
            embedded = doc.get("config", {})
            doc = doc["input"]
        if isinstance(doc, dict):
            for key in ("n", "samples", "catalog"):
                val = getattr(args, key)
                if val is not None:
                    doc[key] = val
        config = _resolve_config(args, embedded)
        ctx = Context(config)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", WindowNotSaturated)
            result = HANDLERS[args.command](ctx, doc)
        for w in caught:
            print(f"warning: {w.message}", file=stderr)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=stderr)
        return EXIT_UNSUPPORTED
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=stderr)
        return EXIT_PRECISION
    except (ValidationError, NonCompact, KeyError, TypeError, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_INTERNAL
    public_config = {k: v for k, v in config.items() if not k.startswith("_")}
    output = {"command": args.command, "config": public_config, "input": doc, "result": result}
    if args.out == "csv":
        stdout.write(_to_csv(result))
    else:
        stdout.write(json.dumps(output, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
