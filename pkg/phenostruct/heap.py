"""Heaps on finite carriers and the rank (2,2) structure relation

A heap is a carrier G with a ternary operation φ. Four equivalent definitions
are checked here, each as a set of identities over every tuple of the carrier
(or a random sample of tuples), optionally together with a surjectivity
condition on the translations of φ. Operations are stored as g×g×g integer
tables and every identity is evaluated with numpy fancy indexing.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Callable, Optional, Sequence

import numpy as np

from phenostruct.core import PhenostructError
from phenostruct.utils import CONFIG

HEAP = CONFIG["heap"]
MAX_VIOLATIONS = 10


class InvalidGroup(PhenostructError):
    """A multiplication table fails a group axiom."""


class Definition(str, Enum):
    CLASSICAL = "classical"  # outer and middle associativity plus idempotency
    D1 = "D1"
    D2 = "D2"
    D4 = "D4"
    D5 = "D5"


class Condition(str, Enum):
    A = "A"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class FiniteTernaryOp:
    name: str
    table: np.ndarray

    def __post_init__(self):
        g = self.table.shape[0]
        if self.table.shape != (g, g, g):
            raise ValueError(f"{self.name}: table must be g×g×g, got {self.table.shape}")
        if self.table.min() < 0 or self.table.max() >= g:
            raise ValueError(f"{self.name}: table leaves the carrier")

    @property
    def g(self) -> int:
        return self.table.shape[0]

    def __call__(self, x, y, z):
        return self.table[x, y, z]


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    mul: np.ndarray
    inv: np.ndarray
    identity: int

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def validate(self) -> "FiniteGroup":
        """Check the group axioms exhaustively."""
        g = self.order
        x, y, z = np.ogrid[:g, :g, :g]
        M = self.mul
        if not np.array_equal(M[M[x, y], z], M[x, M[y, z]]):
            raise InvalidGroup(f"{self.name}: multiplication is not associative")
        e = np.arange(g)
        if not (np.array_equal(M[self.identity], e) and np.array_equal(M[:, self.identity], e)):
            raise InvalidGroup(f"{self.name}: {self.identity} is not a two-sided identity")
        if not (np.all(M[e, self.inv] == self.identity) and np.all(M[self.inv, e] == self.identity)):
            raise InvalidGroup(f"{self.name}: inverse table is wrong")
        return self


@dataclass(frozen=True)
class Violation:
    identity: str
    args: tuple[int, ...]


def _from_mul(name: str, mul: np.ndarray) -> FiniteGroup:
    """Helper function: find identity and inverses from a multiplication table."""
    g = mul.shape[0]
    e = np.arange(g)
    ids = [k for k in range(g) if np.array_equal(mul[k], e)]
    if not ids:
        raise InvalidGroup(f"{name}: no left identity")
    identity = ids[0]
    inv = np.array([int(np.flatnonzero(mul[x] == identity)[0]) for x in range(g)])
    return FiniteGroup(name, mul, inv, identity).validate()


def cyclic(n: int) -> FiniteGroup:
    k = np.arange(n)
    return _from_mul(f"Z{n}", (k[:, None] + k[None, :]) % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon; index k + n·e stands for rᵏsᵉ."""
    g = 2 * n
    mul = np.empty((g, g), dtype=int)
    for a in range(g):
        k1, e1 = a % n, a // n
        for b in range(g):
            k2, e2 = b % n, b // n
            mul[a, b] = (k1 + (-1) ** e1 * k2) % n + n * (e1 ^ e2)
    return _from_mul(f"D{n}", mul)


def symmetric(n: int = 3) -> FiniteGroup:
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = np.array([[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms])
    return _from_mul(f"S{n}", mul)


def product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    a, b = first.order, second.order
    x = np.arange(a * b)
    mul = first.mul[(x // b)[:, None], (x // b)[None, :]] * b + second.mul[(x % b)[:, None], (x % b)[None, :]]
    return _from_mul(f"{first.name}×{second.name}", mul)


def units_mod(p: int) -> FiniteGroup:
    """Multiplicative group of Z_p for prime p; index k stands for the residue k + 1."""
    v = np.arange(1, p)
    return _from_mul(f"Z{p}*", (v[:, None] * v[None, :]) % p - 1)


def heap_from_group(grp: FiniteGroup) -> FiniteTernaryOp:
    """φ(x, y, z) = x·y⁻¹·z."""
    g = grp.order
    x, y, z = np.ogrid[:g, :g, :g]
    table = grp.mul[grp.mul[x, grp.inv[y]], z]
    return FiniteTernaryOp(f"heap({grp.name})", table)


# -- identities ------------------------------------------------------------------------
# Each identity receives φ and index arrays and returns (label, lhs, rhs) triples.

def _outer(phi, x, y, z, u, v):
    return [("φ(φ(x,y,z),u,v) = φ(x,y,φ(z,u,v))", phi(phi(x, y, z), u, v), phi(x, y, phi(z, u, v)))]


def _middle(phi, x, y, z, u, v):
    return [("φ(φ(x,y,z),u,v) = φ(x,φ(u,z,y),v)", phi(phi(x, y, z), u, v), phi(x, phi(u, z, y), v))]


def _idempotent(phi, x, y):
    return [("φ(x,y,y) = x", phi(x, y, y), x), ("φ(y,y,x) = x", phi(y, y, x), x)]


def _shift(phi, x, y, z, s):
    return [
        ("φ(x,y,z) = φ(φ(x,y,s),s,z)", phi(x, y, z), phi(phi(x, y, s), s, z)),
        ("φ(x,y,z) = φ(x,s,φ(s,y,z))", phi(x, y, z), phi(x, s, phi(s, y, z))),
    ]


Identity = tuple[int, Callable]

OUTER: Identity = (5, _outer)
MIDDLE: Identity = (5, _middle)
IDEMPOTENT: Identity = (2, _idempotent)
SHIFT: Identity = (4, _shift)

DEFINITIONS: dict[Definition, tuple[list[Identity], Optional[Condition]]] = {
    Definition.CLASSICAL: ([OUTER, MIDDLE, IDEMPOTENT], None),
    Definition.D1: ([OUTER, IDEMPOTENT], None),
    Definition.D2: ([SHIFT, IDEMPOTENT], None),
    Definition.D4: ([SHIFT], Condition.B),
    Definition.D5: ([SHIFT], Condition.C),
}


def _tuples(g: int, arity: int, mode: str, rng: Optional[np.random.Generator], n_samples: int) -> np.ndarray:
    """Helper function: index arrays of shape (arity, count)."""
    if mode == "exhaustive":
        if g > HEAP["exhaustive_max"]:
            raise ValueError(f"carrier of size {g} too large for exhaustive mode")
        return np.indices((g,) * arity).reshape(arity, -1)
    if mode == "sampled":
        rng = rng if rng is not None else np.random.default_rng()
        return rng.integers(0, g, size=(arity, n_samples))
    raise ValueError(f"unknown mode {mode!r}")


def check_heap_identities(
    op: FiniteTernaryOp,
    variant: Definition = Definition.D2,
    mode: str = "exhaustive",
    rng: Optional[np.random.Generator] = None,
    n_samples: int = 10_000,
) -> list[Violation]:
    """Violated identities of one definition of a heap; empty when φ is a heap."""
    identities, condition = DEFINITIONS[Definition(variant)]
    found: list[Violation] = []
    if condition is not None and not check_surjectivity(op, condition):
        found.append(Violation(f"condition {condition.value}", ()))
    for arity, build in identities:
        args = _tuples(op.g, arity, mode, rng, n_samples)
        for label, lhs, rhs in build(op, *args):
            bad = np.flatnonzero(lhs != rhs)
            for k in bad[: MAX_VIOLATIONS - len(found)]:
                found.append(Violation(label, tuple(int(a) for a in args[:, k])))
            if len(found) >= MAX_VIOLATIONS:
                return found
    return found


def _surjective_along(images: np.ndarray, axis: int) -> np.ndarray:
    """Helper function: True where the slice along ``axis`` hits every carrier element."""
    g = images.shape[axis]
    ordered = np.sort(images, axis=axis)
    target = np.expand_dims(np.arange(g), tuple(k for k in range(images.ndim) if k != axis))
    return np.all(ordered == target, axis=axis)


def _batch_condition(tables: np.ndarray, condition: Condition) -> np.ndarray:
    """Condition B or C on a stack of tables of shape (count, g, g, g)."""
    g = tables.shape[1]
    if condition is Condition.B:
        first = _surjective_along(tables, 1).reshape(len(tables), -1).all(axis=1)
        middle = _surjective_along(tables, 2).reshape(len(tables), -1).all(axis=1)
        last = _surjective_along(tables, 3).reshape(len(tables), -1).all(axis=1)
        return first & middle & last
    if condition is Condition.C:
        d = np.arange(g)
        right = tables[:, :, d, d]  # (count, x, q)
        left = tables[:, d, d, :]  # (count, q, x)
        return _surjective_along(right, 1).all(axis=1) & _surjective_along(left, 2).all(axis=1)
    raise ValueError("condition A applies to f-tables, not to operations")


def condition_a(f_table: np.ndarray, g: int) -> bool:
    """Every row and every column of f covers the carrier."""
    f = np.asarray(f_table)
    if f.shape[0] < g or f.shape[1] < g:
        return False
    rows = all(len(np.unique(row)) == g for row in f)
    cols = all(len(np.unique(col)) == g for col in f.T)
    return rows and cols and f.min() >= 0 and f.max() < g


def check_surjectivity(target, condition: Condition, carrier: Optional[int] = None) -> bool:
    """Exhaustive verdict on condition A (f-table), B or C (operation)."""
    condition = Condition(condition)
    if condition is Condition.A:
        if carrier is None:
            raise ValueError("condition A needs the carrier size")
        return condition_a(target, carrier)
    return bool(_batch_condition(target.table[None], condition)[0])


def batch_satisfies(
    tables: np.ndarray, definition: Definition, chunk: int = HEAP["chunk"]
) -> np.ndarray:
    """Boolean mask over a stack of g×g×g tables: which ones satisfy ``definition``."""
    identities, condition = DEFINITIONS[Definition(definition)]
    g = tables.shape[1]
    result = np.empty(len(tables), dtype=bool)
    for start in range(0, len(tables), chunk):
        block = tables[start : start + chunk]
        b = np.arange(len(block))[:, None]
        phi = lambda x, y, z: block[b, x, y, z]  # noqa: E731
        ok = np.ones(len(block), dtype=bool)
        for arity, build in identities:
            args = np.indices((g,) * arity).reshape(arity, -1)
            for _, lhs, rhs in build(phi, *args):
                ok &= np.all(lhs == rhs, axis=1)
        if condition is not None:
            ok &= _batch_condition(block, condition)
        result[start : start + chunk] = ok
    return result


def definitions_agree(tables: np.ndarray, chunk: int = HEAP["chunk"]) -> dict[str, np.ndarray]:
    """Verdict of every definition on every table, plus the indices where they disagree."""
    verdicts = {d.value: batch_satisfies(tables, d, chunk) for d in Definition}
    stacked = np.stack(list(verdicts.values()))
    verdicts["disagree"] = np.flatnonzero(stacked.any(axis=0) & ~stacked.all(axis=0))
    return verdicts


# -- random tables ---------------------------------------------------------------------

def random_tables(g: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, g, size=(count, g, g, g))


def permutation_sum(g: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Tables σ₁(x) + σ₂(y) + σ₃(z) mod g; every translation is a bijection."""
    sigma = rng.permuted(np.tile(np.arange(g), (count, 3, 1)), axis=2)
    return (
        sigma[:, 0, :, None, None] + sigma[:, 1, None, :, None] + sigma[:, 2, None, None, :]
    ) % g


def relabelled_heap(grp: FiniteGroup, count: int, rng: np.random.Generator) -> np.ndarray:
    """Group heaps transported along random relabellings of the carrier."""
    base = heap_from_group(grp).table
    g = grp.order
    out = np.empty((count, g, g, g), dtype=base.dtype)
    for k in range(count):
        pi = rng.permutation(g)
        back = np.argsort(pi)
        out[k] = pi[base[np.ix_(back, back, back)]]
    return out


# -- rank (2,2) structure relation -----------------------------------------------------

def f_table_from_group(grp: FiniteGroup, xs: Sequence[int], xis: Sequence[int]) -> np.ndarray:
    """f(i, α) = xᵢ·ξ_α."""
    return grp.mul[np.asarray(xs)[:, None], np.asarray(xis)[None, :]]


def check_structure_relation(f_table: np.ndarray, op: FiniteTernaryOp) -> list[Violation]:
    """Corteges <ij, αβ> where f(iα) ≠ φ(f(iβ), f(jβ), f(jα))."""
    f = np.asarray(f_table)
    m, n = f.shape
    i, j, a, b = np.ogrid[:m, :m, :n, :n]
    lhs = np.broadcast_to(f[i, a], (m, m, n, n))
    rhs = op.table[f[i, b], f[j, b], f[j, a]]
    bad = np.argwhere(lhs != rhs)
    return [Violation("f(iα) = φ(f(iβ),f(jβ),f(jα))", tuple(int(k) for k in idx)) for idx in bad[:MAX_VIOLATIONS]]


def induced_operation(f_table: np.ndarray, g: int, name: str = "induced") -> Optional[FiniteTernaryOp]:
    """The operation φ forced by the structure relation, if f determines it consistently."""
    f = np.asarray(f_table)
    m, n = f.shape
    i, j, a, b = (k.ravel() for k in np.meshgrid(np.arange(m), np.arange(m), np.arange(n), np.arange(n), indexing="ij"))
    keys = (f[i, b] * g + f[j, b]) * g + f[j, a]
    values = f[i, a]
    table = np.full(g**3, -1)
    table[keys] = values
    if np.any(table[keys] != values) or np.any(table < 0):
        return None
    return FiniteTernaryOp(name, table.reshape(g, g, g))


def structure_defines_heap(f_table: np.ndarray, op: FiniteTernaryOp) -> Optional[list[Violation]]:
    """Heap violations of φ when φ realizes the relation on an f satisfying condition A.

    Returns None when the premise fails, so there is nothing to conclude.
    """
    if check_structure_relation(f_table, op) or not condition_a(f_table, op.g):
        return None
    return check_heap_identities(op, Definition.D2)
