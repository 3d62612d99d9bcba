"""Named test elements and per-element invariant records."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .exactnum import LaurentSeries, SeriesMatrix, get_field
from .rootdata import Coweight
from .springer import defect, delta, dim_springer, newton_point, nonempty

CATALOG_HORIZON = 64


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    gamma: SeriesMatrix
    lam: Coweight
    q_grid: tuple = (3, 5, 7, 11)
    tags: frozenset = field(default_factory=frozenset)

    @property
    def n(self):
        return self.gamma.rows

    @property
    def field(self):
        return self.gamma.field

    def to_json(self):
        return {
            "name": self.name,
            "n": self.n,
            "field": self.field.tag,
            "gamma": self.gamma.to_json(),
            "lambda": self.lam.to_json(),
            "q_grid": list(self.q_grid),
            "tags": sorted(self.tags),
        }

    @classmethod
    def from_json(cls, doc, default_field=None):
        try:
            F = get_field(doc["field"]) if "field" in doc else (default_field or get_field("rational"))
            gamma = SeriesMatrix.from_json(F, doc["gamma"])
            lam = Coweight.from_json(doc["lambda"])
            name = str(doc.get("name", "input"))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad catalog entry: {exc}") from exc
        if "n" in doc and int(doc["n"]) != gamma.rows:
            raise ValidationError(f"entry {name}: n = {doc['n']} but gamma is {gamma.rows}x{gamma.cols}")
        if lam.n != gamma.rows:
            raise ValidationError(f"entry {name}: lambda has the wrong length")
        return cls(name, gamma, lam, tuple(doc.get("q_grid", (3, 5, 7, 11))), frozenset(doc.get("tags", ())))


def _split_sl2(F, h):
    pi = LaurentSeries.pi(F)
    u = (1 + pi).truncate(h)
    return SeriesMatrix.diag([u, u.inv(h)])


def builtin_catalog(horizon: int = CATALOG_HORIZON) -> list[CatalogEntry]:
    QQ = get_field("rational")
    F5 = get_field("fq:5")
    pi = LaurentSeries.pi(QQ)
    out = []
    for k in range(3):
        out.append(CatalogEntry(f"split_k{k}", _split_sl2(QQ, horizon), Coweight([k, -k]),
                                tags=frozenset({"split", "compact", "sl2"})))
    out.append(CatalogEntry("ramified", SeriesMatrix.from_values(QQ, [[0, 1], [-1, 2 + pi]]), Coweight([0, 0]),
                            tags=frozenset({"elliptic", "compact", "sl2", "tame"})))
    out.append(CatalogEntry("unramified", SeriesMatrix.from_values(QQ, [[0, 1], [-1, 0]]), Coweight([0, 0]),
                            q_grid=(3, 7, 11), tags=frozenset({"elliptic", "compact", "sl2", "tame"})))
    out.append(CatalogEntry("noncompact", SeriesMatrix.diag([pi, pi.inv()]), Coweight([1, -1]),
                            tags=frozenset({"split", "sl2"})))
    p5 = LaurentSeries.pi(F5)
    a = (LaurentSeries.const(F5, 2) * (1 + p5)).truncate(horizon)
    out.append(CatalogEntry("jordan_f5", SeriesMatrix.diag([a, a.inv(horizon)]), Coweight([0, 0]),
                            q_grid=(5,), tags=frozenset({"split", "compact", "sl2"})))
    out.append(CatalogEntry("sl3_ramified",
                            SeriesMatrix.from_values(QQ, [[0, 0, 1], [1, 0, -(3 + pi)], [0, 1, 3]]),
                            Coweight([0, 0, 0]), tags=frozenset({"elliptic", "compact", "sl3", "tame"})))
    t1 = (1 + pi).truncate(horizon)
    t2 = (1 - pi).truncate(horizon)
    t3 = (t1 * t2).inv(horizon)
    out.append(CatalogEntry("sl3_split", SeriesMatrix.diag([t1, t2, t3]), Coweight([1, 0, -1]),
                            tags=frozenset({"split", "compact", "sl3"})))
    return out


def catalog_by_name(name: str, horizon: int = CATALOG_HORIZON) -> CatalogEntry:
    for entry in builtin_catalog(horizon):
        if entry.name == name:
            return entry
    raise ValidationError(f"no catalog entry named {name!r}")


def entry_record(entry: CatalogEntry, geometric: bool = True) -> dict:
    """All invariants of one entry; fields that do not apply are null.

    ``defect`` follows ``geometric``; the dimension always uses the defect
    over an algebraic closure of the residue field.
    """
    g, lam = entry.gamma, entry.lam
    geo = defect(g, geometric=True)
    return {
        "name": entry.name,
        "n": entry.n,
        "field": entry.field.tag,
        "lambda": lam.to_json(),
        "delta": delta(g),
        "defect": geo if geometric else defect(g, geometric=False),
        "defect_geometric": geo,
        "newton": newton_point(g).to_json(),
        "nonempty": nonempty(g, lam),
        "dim": dim_springer(g, lam, geometric=True),
    }
