"""
Exact rational matrices and the projector facts that hold in M_n(Q).

Adjoint is transpose throughout (real symmetric case). There is no
tolerance anywhere in this module: every check is an equality of
fractions.Fraction entries.
"""

import itertools
import logging
import math
import random
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .core import perspective, sasaki
from .exceptions import CrossCheckError, LQFFileError, MatrixShapeError, PreconditionError
from .lattice import FiniteOml, read_json, verify_oml
from .models import (
    BorchersCertificate,
    DimensionAudit,
    LinePairReport,
    MatrixDocument,
    MvnVerdict,
    PartialIsometryReport,
    PerspectiveDemoReport,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, str, Fraction]


def _to_fraction(value: Scalar) -> Fraction:
    if isinstance(value, float):
        raise PreconditionError(f"floating point entry {value!r} is not exact", "RationalMatrix")
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise PreconditionError(f"not an exact rational: {value!r}", "RationalMatrix")


class RationalMatrix:
    """An n x m matrix of exact rationals. Instances are immutable and hashable."""

    def __init__(self, rows: Sequence[Sequence[Scalar]]) -> None:
        if not rows or not rows[0]:
            raise MatrixShapeError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise MatrixShapeError(
                f"rows have unequal lengths {sorted({len(r) for r in rows})}", (len(rows), width)
            )
        self._rows: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(_to_fraction(v) for v in row) for row in rows
        )

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "RationalMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence[Scalar]) -> "RationalMatrix":
        return cls([[v] for v in values])

    @classmethod
    def from_document(cls, doc: MatrixDocument) -> "RationalMatrix":
        return cls(doc.rows)

    # -- shape ---------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self._rows), len(self._rows[0])

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __iter__(self) -> Iterator[Tuple[Fraction, ...]]:
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_strings()})"

    def _same_shape(self, other: "RationalMatrix", op: str) -> None:
        if self.shape != other.shape:
            raise MatrixShapeError(
                f"cannot {op} {self.shape[0]}x{self.shape[1]} and "
                f"{other.shape[0]}x{other.shape[1]} matrices",
                other.shape,
            )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other, "add")
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self, other)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other, "subtract")
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self, other)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self])

    def __mul__(self, scalar: Scalar) -> "RationalMatrix":
        c = _to_fraction(scalar)
        return RationalMatrix([[a * c for a in r] for r in self])

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise MatrixShapeError(f"cannot multiply {n}x{k} by {k2}x{m}", other.shape)
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self])

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix([list(c) for c in zip(*self._rows)])

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[0] != other.shape[0]:
            raise MatrixShapeError("hstack needs equal row counts", other.shape)
        return RationalMatrix([list(r) + list(s) for r, s in zip(self, other)])

    def columns(self, indices: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[row[j] for j in indices] for row in self._rows])

    # -- elimination ---------------------------------------------------------

    def rref(self) -> Tuple["RationalMatrix", Tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns."""
        rows = [list(r) for r in self._rows]
        n, m = self.shape
        pivots: List[int] = []
        r = 0
        for c in range(m):
            pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for i in range(n):
                f = rows[i][c]
                if i != r and f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == n:
                break
        return RationalMatrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def column_basis(self) -> Optional["RationalMatrix"]:
        """Pivot columns of the matrix, a basis of its column space (None for rank 0)."""
        _, pivots = self.rref()
        return self.columns(pivots) if pivots else None

    def inverse(self) -> "RationalMatrix":
        """
        Gauss-Jordan inverse.

        Raises:
            MatrixShapeError: If the matrix is not square
            PreconditionError: If it is singular
        """
        if not self.is_square:
            raise MatrixShapeError("only square matrices have inverses", self.shape)
        n = self.shape[0]
        reduced, pivots = self.hstack(RationalMatrix.identity(n)).rref()
        if pivots[:n] != tuple(range(n)):
            raise PreconditionError("matrix is singular", "inverse")
        return reduced.columns(range(n, 2 * n))

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for r in self for v in r)

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    @property
    def is_projector(self) -> bool:
        """P = P^T = P^2."""
        return self.is_symmetric and self @ self == self

    @property
    def is_coordinate_projector(self) -> bool:
        n = self.shape[0]
        return self.is_square and all(
            self[i, j] == (self[i, i] if i == j else 0) and self[i, i] in (0, 1)
            for i in range(n)
            for j in range(n)
        )

    def to_strings(self) -> List[List[str]]:
        return [[str(v) for v in r] for r in self]


def load_matrix(path: Union[str, Path]) -> RationalMatrix:
    """Load a matrix JSON file: either {"rows": [...]} or a bare array of rows."""
    data = read_json(path)
    if isinstance(data, list):
        data = {"rows": data}
    try:
        doc = MatrixDocument.model_validate(data)
    except ValidationError as e:
        raise LQFFileError(f"Invalid matrix document: {e.errors()[0]['msg']}", str(path))
    return RationalMatrix.from_document(doc)


# ---------------------------------------------------------------------------
# Projectors and partial isometries
# ---------------------------------------------------------------------------


def projector_onto(basis: RationalMatrix) -> RationalMatrix:
    """B (B^T B)^-1 B^T for a basis B given as columns."""
    return basis @ (basis.T @ basis).inverse() @ basis.T


def image_projector(W: RationalMatrix) -> RationalMatrix:
    """Orthogonal projector onto the column space of W."""
    basis = W.column_basis()
    return RationalMatrix.zeros(W.shape[0]) if basis is None else projector_onto(basis)


def kernel_complement_projector(W: RationalMatrix) -> RationalMatrix:
    """Orthogonal projector onto Ker(W)-perp, the row space of W."""
    return image_projector(W.T)


def _preserves_gram(W: RationalMatrix) -> bool:
    basis = W.T.column_basis()
    if basis is None:
        return True
    image = W @ basis
    return image.T @ image == basis.T @ basis


def is_partial_isometry(W: RationalMatrix) -> PartialIsometryReport:
    """
    Evaluate the equivalent characterizations of a partial isometry independently.

    Raises:
        MatrixShapeError: If W is not square
        CrossCheckError: If the verdicts disagree
    """
    if not W.is_square:
        raise MatrixShapeError("partial isometry checks need a square matrix", W.shape)
    Wt = W.T
    report = PartialIsometryReport(
        definition=_preserves_gram(W),
        image_projector=W @ Wt == image_projector(W),
        kernel_projector=Wt @ W == kernel_complement_projector(W),
        w_wt_w=W @ Wt @ W == W,
        wt_w_wt=Wt @ W @ Wt == Wt,
        adjoint=_preserves_gram(Wt),
    )
    if not report.agree:
        logger.warning(f"partial isometry verdicts disagree on {W.to_strings()}: {report.verdicts}")
        raise CrossCheckError(
            f"partial isometry characterizations disagree: {report.verdicts}", "is_partial_isometry"
        )
    return report


def _require_projector(P: RationalMatrix, operation: str) -> None:
    if not P.is_square:
        raise MatrixShapeError(f"{operation} needs square matrices", P.shape)
    if not P.is_projector:
        raise PreconditionError(f"not a projector: {P.to_strings()}", operation)


def rank_dimension(P: RationalMatrix) -> int:
    """D(P) = rank(P) for a projector P."""
    _require_projector(P, "rank_dimension")
    return P.rank()


def _coordinate_witness(P: RationalMatrix, Q: RationalMatrix) -> RationalMatrix:
    n = P.shape[0]
    p_axes = [k for k in range(n) if P[k, k] == 1]
    q_axes = [k for k in range(n) if Q[k, k] == 1]
    rows = [[0] * n for _ in range(n)]
    for i, j in zip(p_axes, q_axes):
        rows[i][j] = 1
    return RationalMatrix(rows)


def mvn_equivalent(P: RationalMatrix, Q: RationalMatrix) -> MvnVerdict:
    """
    Murray-von Neumann equivalence in M_n(Q): equal rank.

    Coordinate projectors of equal rank also get an explicit witness W with
    W W^T = P and W^T W = Q, mapping the k-th axis of Q to the k-th axis of P.

    Raises:
        MatrixShapeError: If P and Q differ in size
        PreconditionError: If either is not a projector
    """
    _require_projector(P, "mvn_equivalent")
    _require_projector(Q, "mvn_equivalent")
    if P.shape != Q.shape:
        raise MatrixShapeError(f"projector sizes differ: {P.shape} vs {Q.shape}", Q.shape)
    rank_p, rank_q = P.rank(), Q.rank()
    witness: Optional[List[List[str]]] = None
    if rank_p == rank_q and P.is_coordinate_projector and Q.is_coordinate_projector:
        W = _coordinate_witness(P, Q)
        if not (is_partial_isometry(W).is_partial_isometry and W @ W.T == P and W.T @ W == Q):
            raise CrossCheckError(f"witness {W.to_strings()} does not intertwine", "mvn_equivalent")
        witness = W.to_strings()
    return MvnVerdict(equivalent=rank_p == rank_q, rank_p=rank_p, rank_q=rank_q, witness=witness)


def sum_is_projector(P: RationalMatrix, Q: RationalMatrix) -> bool:
    """
    Whether P + Q is a projector, cross-checked against PQ = 0.

    When it is, P + Q must also be the projector onto the join of the images.

    Raises:
        CrossCheckError: If the direct test and the orthogonality test disagree
    """
    _require_projector(P, "sum_is_projector")
    _require_projector(Q, "sum_is_projector")
    total = P + Q
    direct = total.is_projector
    orthogonal = (P @ Q).is_zero
    if direct != orthogonal:
        raise CrossCheckError(
            f"P+Q projector={direct} but PQ=0 is {orthogonal}", "sum_is_projector"
        )
    if direct and total != image_projector(P.hstack(Q)):
        raise CrossCheckError("P+Q is not the projector onto the join", "sum_is_projector")
    return direct


def coordinate_projectors(n: int) -> List[RationalMatrix]:
    """The 2^n diagonal 0/1 projectors of M_n, ordered by bitmask."""
    return [
        RationalMatrix.diagonal([(mask >> k) & 1 for k in range(n)]) for mask in range(1 << n)
    ]


def dimension_audit(projectors: Sequence[RationalMatrix]) -> DimensionAudit:
    """Audit D = rank on a family: faithfulness, the equivalence criterion and additivity."""
    ranks = [rank_dimension(P) for P in projectors]
    faithful = all((r == 0) == P.is_zero for P, r in zip(projectors, ranks))
    equivalence = True
    additive = True
    orthogonal_pairs = 0
    non_projector_sums = 0
    for (i, P), (j, Q) in itertools.combinations(enumerate(projectors), 2):
        if P.shape != Q.shape:
            continue
        equivalence &= mvn_equivalent(P, Q).equivalent == (ranks[i] == ranks[j])
        if sum_is_projector(P, Q):
            orthogonal_pairs += 1
            additive &= rank_dimension(P + Q) == ranks[i] + ranks[j]
        else:
            non_projector_sums += 1
    audit = DimensionAudit(
        projectors=len(projectors),
        faithful=faithful,
        equivalence=equivalence,
        additive=additive,
        orthogonal_pairs=orthogonal_pairs,
        non_projector_sums=non_projector_sums,
    )
    logger.info(
        f"dimension audit on {len(projectors)} projectors: "
        f"faithful={faithful} equivalence={equivalence} additive={additive}"
    )
    return audit


def borchers_fails(n: int) -> BorchersCertificate:
    """
    Certificate that M_n has no intermediate projector equivalent to the identity.

    For every rank 0 < r < n a coordinate witness of rank r is shown to be
    inequivalent to I.

    Raises:
        PreconditionError: If n is outside 1..6
    """
    if not 1 <= n <= 6:
        raise PreconditionError(f"n must be in 1..6, got {n}", "borchers_fails")
    identity = RationalMatrix.identity(n)
    excluded: List[int] = []
    witnesses: List[List[List[str]]] = []
    for r in range(1, n):
        P = RationalMatrix.diagonal([1] * r + [0] * (n - r))
        verdict = mvn_equivalent(P, identity)
        if verdict.equivalent or rank_dimension(P) == rank_dimension(identity):
            raise CrossCheckError(f"rank {r} projector equivalent to I_{n}", "borchers_fails")
        excluded.append(r)
        witnesses.append(P.to_strings())
    return BorchersCertificate(n=n, vacuous=n == 1, excluded_ranks=excluded, witnesses=witnesses)


# ---------------------------------------------------------------------------
# Random suite
# ---------------------------------------------------------------------------


def random_matrix(rng: random.Random, n: int) -> RationalMatrix:
    """Entries p/q with p in -2..2 and q in {1, 2}."""
    return RationalMatrix(
        [[Fraction(rng.randint(-2, 2), rng.choice((1, 2))) for _ in range(n)] for _ in range(n)]
    )


def random_partial_isometry(rng: random.Random, n: int) -> RationalMatrix:
    """A signed partial permutation matrix."""
    rank = rng.randint(0, n)
    sources = rng.sample(range(n), rank)
    targets = rng.sample(range(n), rank)
    rows = [[0] * n for _ in range(n)]
    for i, j in zip(targets, sources):
        rows[i][j] = rng.choice((1, -1))
    return RationalMatrix(rows)


def partial_isometry_suite(
    samples: int = 200, seed: int = 0, max_size: int = 3
) -> Tuple[int, int, int]:
    """
    Run is_partial_isometry on ``samples`` seeded random matrices, each
    followed by a signed partial permutation so that both verdicts occur.

    Returns:
        (random matrices checked, partial permutations checked, samples that
        are partial isometries)

    Raises:
        CrossCheckError: On the first sample whose verdicts disagree
    """
    rng = random.Random(seed)
    positives = 0
    for _ in range(samples):
        n = rng.randint(1, max_size)
        positives += is_partial_isometry(random_matrix(rng, n)).is_partial_isometry
        positives += is_partial_isometry(random_partial_isometry(rng, n)).is_partial_isometry
    logger.info(
        f"partial isometry suite: {samples} random matrices, {samples} partial permutations, "
        f"{positives} partial isometries"
    )
    return samples, samples, positives


# ---------------------------------------------------------------------------
# Lines in Q^2
# ---------------------------------------------------------------------------


def canonical_direction(vector: Sequence[Scalar]) -> Tuple[int, int]:
    """Coprime integer direction with a positive first nonzero coordinate."""
    if len(vector) != 2:
        raise MatrixShapeError(f"a line in Q^2 needs 2 coordinates, got {len(vector)}")
    a, b = (_to_fraction(v) for v in vector)
    if a == 0 and b == 0:
        raise PreconditionError("the zero vector spans no line", "unitary_vs_perspective_demo")
    scale = a.denominator * b.denominator
    x, y = int(a * scale), int(b * scale)
    g = math.gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def _span_name(u: Tuple[int, int]) -> str:
    return f"span({u[0]},{u[1]})"


def line_projector(u: Tuple[int, int]) -> RationalMatrix:
    return projector_onto(RationalMatrix.column(u))


def rotation_witness(u: Tuple[int, int], v: Tuple[int, int]) -> Optional[RationalMatrix]:
    """
    Rational rotation R with R span(u) = span(v), or None.

    One exists iff |u|^2 |v|^2 is a perfect square.
    """
    norms = (u[0] ** 2 + u[1] ** 2) * (v[0] ** 2 + v[1] ** 2)
    root = math.isqrt(norms)
    if root * root != norms:
        return None
    c = Fraction(u[0] * v[0] + u[1] * v[1], root)
    s = Fraction(u[0] * v[1] - u[1] * v[0], root)
    R = RationalMatrix([[c, -s], [s, c]])
    if R.T @ R != RationalMatrix.identity(2) or R @ line_projector(u) @ R.T != line_projector(v):
        raise CrossCheckError(f"rotation {R.to_strings()} does not map the lines", "rotation")
    return R


def _generated_lattice(
    directions: Sequence[Tuple[int, int]],
) -> Tuple[FiniteOml, List[RationalMatrix]]:
    extra: List[Tuple[int, int]] = []
    for x, y in directions:
        q = canonical_direction((-y, x))
        if q not in directions and q not in extra:
            extra.append(q)
    lines = list(directions) + extra
    identity = RationalMatrix.identity(2)
    projectors = [RationalMatrix.zeros(2)] + [line_projector(u) for u in lines] + [identity]
    names = ["0"] + [_span_name(u) for u in lines] + ["1"]
    position: Dict[RationalMatrix, int] = {P: i for i, P in enumerate(projectors)}
    leq = [[P @ Q == P for Q in projectors] for P in projectors]
    neg = [position[identity - P] for P in projectors]
    document = {
        "name": "generated",
        "elements": names,
        "leq": leq,
        "neg": neg,
        "bottom": 0,
        "top": len(names) - 1,
    }
    report = verify_oml(document)
    if not report.ok:
        raise PreconditionError(
            f"generated lattice fails {report.law}: {report.detail}", "unitary_vs_perspective_demo"
        )
    lattice = FiniteOml(names, leq, neg, 0, len(names) - 1, name="generated", check=True)
    return lattice, projectors


def unitary_vs_perspective_demo(lines: Sequence[Sequence[Scalar]]) -> PerspectiveDemoReport:
    """
    Compare perspectivity in the lattice generated by some lines of Q^2 with
    unitary and Murray-von Neumann equivalence of their projectors.

    Identical lines are merged. The generated lattice lists 0, the lines,
    the orthocomplements not already present, then 1.

    Raises:
        PreconditionError: If fewer than two distinct lines are given
        CrossCheckError: If a common complement exists for projectors that
            are not equivalent
    """
    directions: List[Tuple[int, int]] = []
    for vector in lines:
        u = canonical_direction(vector)
        if u not in directions:
            directions.append(u)
    if len(directions) < 2:
        raise PreconditionError(
            f"degenerate line list: {len(directions)} distinct line(s)",
            "unitary_vs_perspective_demo",
        )
    L, projectors = _generated_lattice(directions)
    position = {P: i for i, P in enumerate(projectors)}

    sasaki_ok = True
    for e, x in itertools.product(L.elements, repeat=2):
        projected = position.get(image_projector(projectors[e] @ projectors[x]))
        if projected != sasaki(L, e, x):
            logger.debug(f"sasaki mismatch at ({L.name_of(e)}, {L.name_of(x)})")
            sasaki_ok = False

    pairs: List[LinePairReport] = []
    for i, j in itertools.combinations(range(len(directions)), 2):
        a, b = i + 1, j + 1
        common = perspective(L, a, b)
        rotation = rotation_witness(directions[i], directions[j])
        mvn = mvn_equivalent(projectors[a], projectors[b]).equivalent
        if common is not None and not mvn:
            raise CrossCheckError(
                f"{L.name_of(a)} and {L.name_of(b)} are perspective but not equivalent",
                "unitary_vs_perspective_demo",
            )
        pairs.append(
            LinePairReport(
                first=L.name_of(a),
                second=L.name_of(b),
                common_complement=None if common is None else L.name_of(common),
                unitary_witness=None if rotation is None else rotation.to_strings(),
                mvn_equivalent=mvn,
            )
        )
    logger.info(f"perspectivity demo on {len(directions)} lines: {L.size} lattice elements")
    return PerspectiveDemoReport(
        elements=list(L.names),
        lattice_ok=True,
        sasaki_matches_projection=sasaki_ok,
        pairs=pairs,
    )
