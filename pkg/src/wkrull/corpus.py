"""Seeded random affine monoids and the decider/oracle cross-check harness."""

import random
from dataclasses import dataclass

from . import monoid as mn
from .errors import BoundExceeded


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 1
    count: int = 50
    max_dim: int = 3
    max_generators: int = 6
    max_entry: int = 5


def random_generators(rng, cfg=CorpusConfig()):
    d = rng.randint(1, cfg.max_dim)
    while True:
        n = rng.randint(1, cfg.max_generators)
        gens = [tuple(rng.randint(0, cfg.max_entry) for _ in range(d)) for _ in range(n)]
        if any(any(g) for g in gens):
            return d, gens


def generate(cfg=CorpusConfig()):
    """List of (ambient_dim, generators); identical for identical configs."""
    rng = random.Random(cfg.seed)
    return [random_generators(rng, cfg) for _ in range(cfg.count)]


def _verdict_key(v):
    return "unsupported" if v.value is None else str(v.value).lower()


def cross_check(S, bound=None):
    """Run the ladder and the direct oracle on one monoid; returns a JSON-ready row."""
    row = {"generators": [list(g) for g in S.generators], "ambient_dim": S.ambient_dim}
    try:
        report = mn.analyze(S, bound)
    except BoundExceeded as exc:
        row["inconclusive"] = f"bound {exc.bound} exceeded"
        row["weakly_krull"] = "inconclusive"
        report = None
    if report is not None:
        row["flags"] = {k: _verdict_key(v) for k, v in report.flags.items()}
        row["weakly_krull"] = _verdict_key(report.flags["weakly_krull"])
    oracle = mn.wk_oracle_direct(S, bound)
    row["oracle"] = _verdict_key(oracle)
    dec = row["weakly_krull"]
    row["contradiction"] = dec in ("true", "false") and dec != row["oracle"]
    return row


def run(cfg=CorpusConfig(), bound=None):
    rows = []
    for d, gens in generate(cfg):
        S = mn.build(d, gens)
        rows.append(cross_check(S, bound))
    agreement = {}
    for r in rows:
        key = f"decider={r['weakly_krull']},oracle={r['oracle']}"
        agreement[key] = agreement.get(key, 0) + 1
    contradictions = [r for r in rows if r["contradiction"]]
    definite = sum(1 for r in rows if r["weakly_krull"] in ("true", "false"))
    return {
        "seed": cfg.seed,
        "count": cfg.count,
        "instances": rows,
        "agreement": dict(sorted(agreement.items())),
        "contradictions": len(contradictions),
        "definite": definite,
        "inconclusive": [i for i, r in enumerate(rows) if r["weakly_krull"] == "inconclusive"],
    }
