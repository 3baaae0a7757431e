"""Memory-based classification over the k closest distance values.

All training instances are stored verbatim.  The neighborhood of a query
is every stored instance whose overlap distance (count of differing
attribute positions) falls among the k smallest distinct distance values,
so it can contain far more than k members when distances tie.  Voting
multiplies the legitimate-neighbor count by lambda before taking the
majority; exact ties go to legitimate.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bayes import DecisionPolicy
from .corpus import Label
from .errors import DataError


@dataclass(frozen=True)
class InstanceBase:
    """Immutable store of training vectors and labels, duplicates included."""

    vectors: np.ndarray  # (n, m) uint8
    labels: np.ndarray  # (n,) uint8, 1 = spam

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return self.vectors.shape[1]

    def save(self, path: str | Path) -> None:
        """Vectorized-corpus CSV: label column then one column per attribute bit."""
        with Path(path).open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["label"] + [f"x{i}" for i in range(self.m)])
            for row, label in zip(self.vectors, self.labels):
                writer.writerow([str(Label(int(label)))] + [int(b) for b in row])

    @classmethod
    def load(cls, path: str | Path) -> "InstanceBase":
        with Path(path).open(newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        labels = [1 if r[0] == "spam" else 0 for r in rows[1:]]
        bits = [[int(b) for b in r[1:]] for r in rows[1:]]
        return build_instance_base(np.array(bits, dtype=np.uint8), labels)


@dataclass(frozen=True)
class Neighborhood:
    """Members at the k closest distinct distances, in (distance, index) order."""

    members: tuple[tuple[int, Label], ...]
    distinct_distances: frozenset[int]

    @property
    def spam_count(self) -> int:
        return sum(1 for _, label in self.members if label is Label.SPAM)

    @property
    def legit_count(self) -> int:
        return len(self.members) - self.spam_count


def build_instance_base(
    vectors: Sequence[np.ndarray] | np.ndarray,
    labels: Sequence[Label] | Sequence[int] | np.ndarray,
) -> InstanceBase:
    try:
        matrix = np.asarray(vectors)
    except ValueError:
        raise DataError("instance vectors must all have the same length")
    if matrix.size == 0:
        raise DataError("instance base needs at least one instance")
    if matrix.dtype == object or matrix.ndim != 2:
        raise DataError("instance vectors must all have the same length")
    y = np.asarray([int(l) for l in labels], dtype=np.uint8)
    if len(y) != len(matrix):
        raise DataError("vector and label counts differ")
    return InstanceBase(vectors=matrix.astype(np.uint8), labels=y)


def overlap_distance(a: np.ndarray, b: np.ndarray) -> int:
    """Number of attribute positions where the two vectors differ."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"vector lengths differ: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def _distances_to_base(base: InstanceBase, query: np.ndarray) -> np.ndarray:
    query = np.asarray(query)
    if query.shape != (base.m,):
        raise ValueError(f"query length {query.shape} does not match base m={base.m}")
    return np.count_nonzero(base.vectors != query, axis=1)


def k_distance_neighborhood(
    base: InstanceBase, query: np.ndarray, k: int
) -> Neighborhood:
    """Every instance at one of the k smallest distinct distances to the query."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    distances = _distances_to_base(base, query)
    distinct = np.unique(distances)[:k]
    cutoff = distinct[-1]
    members = [
        (int(d), Label(int(label)))
        for d, label in zip(distances, base.labels)
        if d <= cutoff
    ]
    members.sort(key=lambda item: item[0])
    return Neighborhood(
        members=tuple(members),
        distinct_distances=frozenset(int(d) for d in distinct),
    )


def _vote(spam_count: int, legit_count: int, lam: float) -> Label:
    return Label.SPAM if spam_count > lam * legit_count else Label.LEGITIMATE


def classify_mb(
    base: InstanceBase, query: np.ndarray, k: int, policy: DecisionPolicy
) -> Label:
    """Majority vote in the k-distance neighborhood with lambda-scaled legit votes."""
    hood = k_distance_neighborhood(base, query, k)
    return _vote(hood.spam_count, hood.legit_count, policy.lam)


def classify_mb_batch(
    base: InstanceBase, queries: np.ndarray, k: int, policy: DecisionPolicy
) -> list[Label]:
    """Classify rows of a query matrix; distances via exact integer matmul."""
    queries = np.asarray(queries)
    if queries.ndim != 2 or queries.shape[1] != base.m:
        raise ValueError(f"query shape {queries.shape} does not match base m={base.m}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    x = queries.astype(np.float64)
    y = base.vectors.astype(np.float64)
    # d[i, j] = sum_i x(1-y) + (1-x)y counts differing bits exactly.
    dist = x @ (1.0 - y).T + (1.0 - x) @ y.T
    dist = np.rint(dist).astype(np.int64)
    spam_mask = base.labels == 1
    out = []
    for row in dist:
        cutoff = np.unique(row)[:k][-1]
        in_hood = row <= cutoff
        spam = int(np.count_nonzero(in_hood & spam_mask))
        legit = int(np.count_nonzero(in_hood)) - spam
        out.append(_vote(spam, legit, policy.lam))
    return out
