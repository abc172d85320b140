"""Exact linear algebra over Q(q) on label-indexed invariant submodules.

An OperatorMatrix stores, for each basis label, the image of that class
under the inertia endomorphism as a column vector.  Triangularity is checked
against an explicit label order (usually the filtration sort by central
rank, then split central degree, then twist type).  Eigenprojectors are
Lagrange products over the distinct diagonal values,

    P_i = prod_{j != i} (M - d_j) / (d_i - d_j),

whose defining identities (sum to the identity, idempotent, mutually
annihilating, reassemble M) are verified exactly before anything is
returned; failure means the matrix is not diagonalizable and is reported
with the offending eigenvalue.  Fixture matrices may mark a column as
"partial" (only its diagonal entry is known); those support eigenvalue
extraction but refuse projector computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDiagonalizableError, PartialFixtureError
from .qfield import Partition, Polynomial, RationalFunction, parse_rational_function

BasisLabel = str


def _coerce_scalar(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x if isinstance(x, Polynomial) else Polynomial.constant(x))


class LabeledVector:
    """A vector over Q(q) indexed by basis labels; zero entries are purged."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        clean: dict[str, RationalFunction] = {}
        for label, value in (entries or {}).items():
            rf = _coerce_scalar(value)
            if not rf.is_zero():
                clean[label] = rf
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, *args):
        raise AttributeError("LabeledVector is immutable")

    @staticmethod
    def unit(label: str) -> "LabeledVector":
        return LabeledVector({label: RationalFunction.one()})

    @staticmethod
    def zero() -> "LabeledVector":
        return LabeledVector()

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, label: str) -> RationalFunction:
        return self.entries.get(label, RationalFunction.zero())

    def support(self) -> list[str]:
        return sorted(self.entries)

    def items(self):
        return [(label, self.entries[label]) for label in self.support()]

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledVector) and self.entries == other.entries

    def __add__(self, other: "LabeledVector") -> "LabeledVector":
        out = dict(self.entries)
        for label, value in other.entries.items():
            out[label] = out.get(label, RationalFunction.zero()) + value
        return LabeledVector(out)

    def __sub__(self, other: "LabeledVector") -> "LabeledVector":
        return self + other.scale(-1)

    def scale(self, scalar) -> "LabeledVector":
        s = _coerce_scalar(scalar)
        return LabeledVector({label: value * s for label, value in self.entries.items()})

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for label, value in self.items():
            parts.append(f"({value})*[{label}]")
        return " + ".join(parts)


@dataclass(frozen=True)
class FiltrationRank:
    """Filtration data of a basis class: rank, split degree, twist type."""

    central_rank: int
    split_degree: int
    twist: Partition

    def sort_key(self) -> tuple:
        return (self.central_rank, self.split_degree, self.twist.sort_key())


class OperatorMatrix:
    """A square matrix over Q(q) with named basis; columns are images.

    ``partial`` marks columns whose off-diagonal entries are unknown; these
    carry only their diagonal.
    """

    def __init__(self, basis, columns, filtration=None, partial=()):
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be unique")
        cols: dict[str, LabeledVector] = {}
        for label in self.basis:
            if label not in columns:
                raise ValueError(f"missing column for {label!r}")
            col = columns[label]
            if not isinstance(col, LabeledVector):
                col = LabeledVector(col)
            outside = set(col.entries) - set(self.basis)
            if outside:
                raise ValueError(f"column {label!r} hits labels outside basis: {sorted(outside)}")
            cols[label] = col
        extra = set(columns) - set(self.basis)
        if extra:
            raise ValueError(f"columns for labels outside basis: {sorted(extra)}")
        self.columns = cols
        self.filtration: dict[str, FiltrationRank] | None = dict(filtration) if filtration else None
        self.partial = frozenset(partial)
        if not self.partial <= set(self.basis):
            raise ValueError("partial markers must be basis labels")

    def column(self, label: str) -> LabeledVector:
        return self.columns[label]

    def entry(self, row: str, col: str) -> RationalFunction:
        return self.columns[col].get(row)

    def diagonal(self) -> dict[str, RationalFunction]:
        return {label: self.entry(label, label) for label in self.basis}

    def apply(self, v: LabeledVector) -> LabeledVector:
        outside = set(v.entries) - set(self.basis)
        if outside:
            raise ValueError(f"vector hits labels outside basis: {sorted(outside)}")
        out = LabeledVector.zero()
        for label, value in v.entries.items():
            out = out + self.columns[label].scale(value)
        return out

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        return OperatorMatrix(
            self.basis,
            {label: self.apply(other.columns[label]) for label in self.basis},
        )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        return OperatorMatrix(
            self.basis,
            {label: self.columns[label] + other.columns[label] for label in self.basis},
        )

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self + other.scale(-1)

    def scale(self, scalar) -> "OperatorMatrix":
        return OperatorMatrix(
            self.basis,
            {label: self.columns[label].scale(scalar) for label in self.basis},
        )

    def shift(self, scalar) -> "OperatorMatrix":
        """M - scalar * Id."""
        s = _coerce_scalar(scalar)
        cols = {}
        for label in self.basis:
            col = dict(self.columns[label].entries)
            col[label] = col.get(label, RationalFunction.zero()) - s
            cols[label] = LabeledVector(col)
        return OperatorMatrix(self.basis, cols)

    @staticmethod
    def identity(basis) -> "OperatorMatrix":
        return OperatorMatrix(basis, {label: LabeledVector.unit(label) for label in basis})

    def is_identity(self) -> bool:
        return all(
            self.columns[label] == LabeledVector.unit(label) for label in self.basis
        )

    def is_zero(self) -> bool:
        return all(self.columns[label].is_zero() for label in self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperatorMatrix)
            and self.basis == other.basis
            and self.columns == other.columns
        )


def filtration_order(m: OperatorMatrix) -> list[str]:
    """Basis sorted by filtration rank (stable on ties)."""
    if m.filtration is None:
        raise ValueError("matrix carries no filtration data")
    pos = {label: i for i, label in enumerate(m.basis)}
    return sorted(m.basis, key=lambda lb: (m.filtration[lb].sort_key(), pos[lb]))


def is_triangular(m: OperatorMatrix, order) -> bool:
    """True iff each column's support sits at or below its label in order."""
    order = list(order)
    if sorted(order) != sorted(m.basis):
        raise ValueError("order must be a permutation of the basis")
    pos = {label: i for i, label in enumerate(order)}
    return all(
        all(pos[row] >= pos[col] for row in m.columns[col].entries)
        for col in m.basis
    )


@dataclass(frozen=True)
class EigenDecomposition:
    """Distinct eigenvalues with their (verified) eigenprojectors."""

    eigenvalues: tuple[Polynomial, ...]
    projectors: dict[Polynomial, OperatorMatrix]


def _triangular_order(m: OperatorMatrix, order=None) -> list[str]:
    if order is None:
        order = filtration_order(m) if m.filtration else list(m.basis)
    if not is_triangular(m, order):
        raise ValueError("matrix is not triangular in the given order")
    return list(order)


def eigen_decompose(m: OperatorMatrix, order=None) -> EigenDecomposition:
    """Eigenvalues (distinct diagonal entries) and Lagrange eigenprojectors.

    Raises PartialFixtureError when some column is only partially known, and
    NotDiagonalizableError when the projector identities fail.
    """
    if m.partial:
        raise PartialFixtureError(
            f"columns {sorted(m.partial)} are known only on the diagonal; "
            "projectors are unavailable"
        )
    tri_order = _triangular_order(m, order)
    diag = m.diagonal()
    eigenvalues: list[Polynomial] = []
    for label in tri_order:
        value = diag[label].as_polynomial()
        if value not in eigenvalues:
            eigenvalues.append(value)
    projectors: dict[Polynomial, OperatorMatrix] = {}
    for lam in eigenvalues:
        proj = OperatorMatrix.identity(m.basis)
        for mu in eigenvalues:
            if mu == lam:
                continue
            gap = RationalFunction(lam - mu)
            proj = (proj @ m.shift(mu)).scale(RationalFunction.one() / gap)
        projectors[lam] = proj
    _verify_decomposition(m, eigenvalues, projectors)
    return EigenDecomposition(tuple(eigenvalues), projectors)


def _verify_decomposition(m, eigenvalues, projectors):
    total = None
    reassembled = None
    for lam in eigenvalues:
        proj = projectors[lam]
        if (m @ proj) != proj.scale(RationalFunction(lam)):
            raise NotDiagonalizableError(
                f"nilpotent residue on the eigenvalue {lam}", eigenvalue=lam
            )
        if (proj @ proj) != proj:
            raise NotDiagonalizableError(
                f"projector for {lam} is not idempotent", eigenvalue=lam
            )
        total = proj if total is None else total + proj
        scaled = proj.scale(RationalFunction(lam))
        reassembled = scaled if reassembled is None else reassembled + scaled
    for i, lam in enumerate(eigenvalues):
        for mu in eigenvalues[i + 1 :]:
            if not (projectors[lam] @ projectors[mu]).is_zero():
                raise NotDiagonalizableError(
                    f"projectors for {lam} and {mu} do not annihilate",
                    eigenvalue=lam,
                )
    if not total.is_identity():
        raise NotDiagonalizableError("projectors do not sum to the identity")
    if reassembled != m:
        raise NotDiagonalizableError("eigenvalue reassembly does not recover the matrix")


def eigen_components(m: OperatorMatrix, v: LabeledVector, order=None) -> list[tuple[Polynomial, LabeledVector]]:
    """Nonzero eigencomponents of v; they sum to v and M scales each by its
    eigenvalue."""
    decomp = eigen_decompose(m, order)
    out = []
    for lam in decomp.eigenvalues:
        comp = decomp.projectors[lam].apply(v)
        if not comp.is_zero():
            out.append((lam, comp))
    return out


# ---------------------------------------------------------------------------
# JSON form


def matrix_to_json(m: OperatorMatrix) -> dict:
    data: dict = {
        "basis": list(m.basis),
        "columns": {
            col: {row: str(value) for row, value in m.columns[col].items()}
            for col in m.basis
        },
    }
    if m.filtration is not None:
        data["filtration"] = {
            label: [
                rank.central_rank,
                rank.split_degree,
                list(rank.twist.counts),
            ]
            for label, rank in m.filtration.items()
        }
    if m.partial:
        data["partial"] = sorted(m.partial)
    return data


def matrix_from_json(data: dict) -> OperatorMatrix:
    basis = data["basis"]
    columns = {
        col: {row: parse_rational_function(text) for row, text in entries.items()}
        for col, entries in data["columns"].items()
    }
    filtration = None
    if "filtration" in data:
        filtration = {
            label: FiltrationRank(rank, degree, Partition(tuple(counts)))
            for label, (rank, degree, counts) in data["filtration"].items()
        }
    return OperatorMatrix(
        basis, columns, filtration=filtration, partial=data.get("partial", ())
    )
