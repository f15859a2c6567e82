"""Entropy-based diversity metrics in natural-log units.

Shannon entropy H, the equitability (evenness) index H/ln(k), the
Jensen-Shannon divergence, and its square root (a bounded metric).
"""
from __future__ import annotations

import math

from .errors import CategoryMismatch, DegenerateK
from .scheme import Distribution

MAX_JS_DISTANCE = math.sqrt(math.log(2))  # ~0.832554


def shannon_entropy(dist: Distribution) -> float:
    """H = -sum p*ln(p) in nats, with 0*ln(0) = 0."""
    h = 0.0
    for p in dist.probabilities.values():
        if p > 0.0:
            h -= p * math.log(p)
    # -p*ln(p) roundoff can leave a tiny negative residue
    return max(h, 0.0)


def equitability(dist: Distribution, k: int) -> float:
    """Evenness H/ln(k): 1 when all k categories are equally represented,
    0 when a single category holds everything.

    k is explicit, not inferred from nonzero support: zero-count
    categories must depress evenness for year-over-year comparability.
    """
    if k < 2:
        raise DegenerateK(f"equitability needs k >= 2, got {k}")
    if len(dist.categories) > k:
        raise CategoryMismatch(
            f"distribution has {len(dist.categories)} categories, more than k={k}"
        )
    return shannon_entropy(dist) / math.log(k)


def _check_same_domain(p: Distribution, q: Distribution) -> None:
    if tuple(p.categories) != tuple(q.categories):
        raise CategoryMismatch("distributions are over different category sets")


def jensen_shannon_divergence(p: Distribution, q: Distribution) -> float:
    """JSD(P,Q) = H(M) - (H(P)+H(Q))/2 with M = (P+Q)/2.

    Symmetric and finite even for disjoint supports; bounded by ln 2.
    """
    _check_same_domain(p, q)
    mid = Distribution(
        p.categories,
        {c: 0.5 * (p.probabilities[c] + q.probabilities[c]) for c in p.categories},
    )
    jsd = shannon_entropy(mid) - 0.5 * (shannon_entropy(p) + shannon_entropy(q))
    return max(jsd, 0.0)


def js_distance(p: Distribution, q: Distribution) -> float:
    """sqrt(JSD); a metric on distributions, at most sqrt(ln 2)."""
    return math.sqrt(jensen_shannon_divergence(p, q))
