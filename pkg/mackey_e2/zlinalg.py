"""
Exact linear algebra over the integers.

Everything here works with Python integers; no floating point is used. The
module provides dense integer matrices, Smith normal form with unimodular
transforms, a column echelon reduction used for kernels, lattice membership
and linear solving, and finitely presented abelian groups together with
groups of (constrained) homomorphisms between them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """
    Immutable dense integer matrix stored row-major.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"Entry count does not match a {self.rows}x{self.cols} matrix.")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [tuple(column) for column in columns]
        for column in columns:
            if len(column) != rows:
                raise ValueError(f"Column of length {len(column)} in a matrix with {rows} rows.")
        data = tuple(tuple(int(column[i]) for column in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        total_cols = sum(block.cols for block in blocks)
        data = []
        offset = 0
        for block in blocks:
            for row in block.entries:
                data.append((0,) * offset + row + (0,) * (total_cols - offset - block.cols))
            offset += block.cols
        return cls(len(data), total_cols, tuple(data))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """
        Assemble a matrix from a grid of blocks with consistent shapes.
        """
        data = []
        for block_row in blocks:
            height = block_row[0].rows if block_row else 0
            for i in range(height):
                data.append(tuple(x for block in block_row for x in block.entries[i]))
        cols = sum(block.cols for block in blocks[0]) if blocks else 0
        return cls(len(data), cols, tuple(data))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return [()] * self.cols
        return [tuple(column) for column in zip(*self.entries)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.entries, self.cols) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}.")
        other_columns = other.columns()
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, column) if a) for column in other_columns)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} for a matrix with {self.cols} columns.")
        return tuple(sum(a * b for a, b in zip(row, vector) if a) for row in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(factor * a for a in row) for row in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("Row counts differ.")
        return IntMatrix(self.rows, self.cols + other.cols, tuple(r + s for r, s in zip(self.entries, other.entries)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("Column counts differ.")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def with_entry(self, i: int, j: int, value: int) -> "IntMatrix":
        data = [list(row) for row in self.entries]
        data[i][j] = value
        return IntMatrix.from_rows(data, self.cols)

    def _check_same_shape(self, other: "IntMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"Shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ.")


@dataclass(frozen=True)
class SmithForm:
    """
    Result of smith_normal_form: left @ A @ right is diagonal with entries diag.
    """

    diag: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    left_inverse: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def _swap_rows(matrix, i, j):
    matrix[i], matrix[j] = matrix[j], matrix[i]


def _swap_cols(matrix, i, j):
    for row in matrix:
        row[i], row[j] = row[j], row[i]


def _add_row(matrix, target, source, factor):
    src = matrix[source]
    dst = matrix[target]
    for k, value in enumerate(src):
        if value:
            dst[k] += factor * value


def _add_col(matrix, target, source, factor):
    for row in matrix:
        if row[source]:
            row[target] += factor * row[source]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """
    Compute the Smith normal form of A with unimodular transforms.

    Pivots are minimal nonzero entries by absolute value; ties go to the
    smallest (row, col) position, so transforms are reproducible.
    """
    m, n = A.rows, A.cols
    D = [list(row) for row in A.entries]
    left = [[int(i == j) for j in range(m)] for i in range(m)]
    left_inv = [[int(i == j) for j in range(m)] for i in range(m)]
    right = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(target, source, factor):
        _add_row(D, target, source, factor)
        _add_row(left, target, source, factor)
        _add_col(left_inv, source, target, -factor)

    def row_swap(i, j):
        _swap_rows(D, i, j)
        _swap_rows(left, i, j)
        _swap_cols(left_inv, i, j)

    def row_negate(i):
        D[i] = [-x for x in D[i]]
        left[i] = [-x for x in left[i]]
        for row in left_inv:
            row[i] = -row[i]

    def col_op(target, source, factor):
        _add_col(D, target, source, factor)
        _add_col(right, target, source, factor)

    def col_swap(i, j):
        _swap_cols(D, i, j)
        _swap_cols(right, i, j)

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                value = D[i][j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            if D[t][t] < 0:
                row_negate(t)
            pivot = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // pivot
                    if q:
                        row_op(i, t, -q)
                    dirty = dirty or bool(D[i][t])
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // pivot
                    if q:
                        col_op(j, t, -q)
                    dirty = dirty or bool(D[t][j])
            if dirty:
                best = None
                for j in range(t + 1, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), "col", j)
                for i in range(t + 1, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), "row", i)
                if best[1] == "col":
                    col_swap(t, best[2])
                else:
                    row_swap(t, best[2])
                continue
            bad_row = next(
                (i for i in range(t + 1, m) if any(D[i][j] % pivot for j in range(t + 1, n))),
                None,
            )
            if bad_row is None:
                break
            row_op(t, bad_row, 1)
        t += 1

    diag = tuple(D[k][k] for k in range(min(m, n)))
    return SmithForm(
        diag=diag,
        left=IntMatrix.from_rows(left, m),
        right=IntMatrix.from_rows(right, n),
        left_inverse=IntMatrix.from_rows(left_inv, m),
    )


def _axpy(target: list[int], source: Sequence[int], factor: int):
    for k, value in enumerate(source):
        if value:
            target[k] += factor * value


class ColumnEchelon:
    """
    Lower column echelon form of a list of integer vectors.

    Each pivot vector is the only remaining vector with a nonzero entry at its
    pivot row among those not yet used, so the pivot vectors form a Z-basis of
    the lattice spanned by the input and the leftover combinations span the
    relation module (the kernel of the input matrix).
    """

    def __init__(self, vectors: Sequence[Sequence[int]], dim: int, track: bool = True):
        self.dim = dim
        self.count = len(vectors)
        work = [list(vector) for vector in vectors]
        for vector in work:
            if len(vector) != dim:
                raise ValueError(f"Vector of length {len(vector)} in a lattice of dimension {dim}.")
        combos = None
        if track:
            combos = [[int(i == j) for i in range(self.count)] for j in range(self.count)]
        active = list(range(self.count))
        pivots: list[tuple[int, int]] = []
        for row in range(dim):
            nonzero = [j for j in active if work[j][row]]
            if not nonzero:
                continue
            while len(nonzero) > 1:
                pick = min(nonzero, key=lambda j: (abs(work[j][row]), j))
                pivot_value = work[pick][row]
                for j in nonzero:
                    if j == pick:
                        continue
                    q = work[j][row] // pivot_value
                    if q:
                        _axpy(work[j], work[pick], -q)
                        if combos is not None:
                            _axpy(combos[j], combos[pick], -q)
                nonzero = [j for j in nonzero if work[j][row]]
            pick = nonzero[0]
            if work[pick][row] < 0:
                work[pick] = [-x for x in work[pick]]
                if combos is not None:
                    combos[pick] = [-x for x in combos[pick]]
            pivots.append((row, pick))
            active.remove(pick)
        self.pivot_rows = [row for row, _ in pivots]
        self.basis = [tuple(work[j]) for _, j in pivots]
        self.basis_combinations = [tuple(combos[j]) for _, j in pivots] if track else None
        self.kernel = [tuple(combos[j]) for j in active] if track else None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        """
        True when the vectors span all of Z^dim.
        """
        return self.rank == self.dim and all(vector[row] == 1 for row, vector in zip(self.pivot_rows, self.basis))

    def reduce(self, vector: Sequence[int]):
        """
        Return (coefficients over the echelon basis, residual) for vector.
        """
        residual = list(vector)
        coefficients = []
        for row, basis_vector in zip(self.pivot_rows, self.basis):
            q = residual[row] // basis_vector[row]
            if q:
                _axpy(residual, basis_vector, -q)
            coefficients.append(q)
        return coefficients, residual

    def solve(self, vector: Sequence[int]) -> list[int] | None:
        """
        Coefficients over the input vectors reproducing vector, or None.
        """
        if len(vector) != self.dim:
            raise ValueError(f"Vector of length {len(vector)} in a lattice of dimension {self.dim}.")
        coefficients, residual = self.reduce(vector)
        if any(residual):
            return None
        if self.basis_combinations is None:
            return coefficients
        result = [0] * self.count
        for q, combo in zip(coefficients, self.basis_combinations):
            if q:
                _axpy(result, combo, q)
        return result

    def contains(self, vector: Sequence[int]) -> bool:
        _, residual = self.reduce(vector)
        return not any(residual)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """
    Columns form a Z-basis of {x : A x = 0}.
    """
    echelon = ColumnEchelon(A.columns(), A.rows, track=True)
    return IntMatrix.from_columns(echelon.kernel, A.cols)


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    return ColumnEchelon(vectors, dim, track=False).basis


def solve_linear(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """
    Return an integer solution of A x = b, or None if there is none.
    """
    if len(b) != A.rows:
        raise ValueError(f"Right-hand side of length {len(b)} for a matrix with {A.rows} rows.")
    solution = ColumnEchelon(A.columns(), A.rows, track=True).solve(b)
    return None if solution is None else tuple(solution)


def solve_lattice(
    condition_rows: Sequence[Sequence[int]],
    nvars: int,
    moduli: Sequence[int],
) -> list[tuple[int, ...]]:
    """
    Z-basis of {x in Z^nvars : (C x)_r = 0 mod moduli[r] for every row r}.

    A modulus of 0 asks for exact vanishing.
    """
    if len(moduli) != len(condition_rows):
        raise ValueError("One modulus per condition row is required.")
    if not condition_rows:
        return [tuple(int(i == j) for i in range(nvars)) for j in range(nvars)]
    dim = len(condition_rows)
    vectors = [tuple(row[v] for row in condition_rows) for v in range(nvars)]
    for r, modulus in enumerate(moduli):
        if modulus:
            vectors.append(tuple(modulus if i == r else 0 for i in range(dim)))
    echelon = ColumnEchelon(vectors, dim, track=True)
    generators = [combo[:nvars] for combo in echelon.kernel]
    return lattice_basis(generators, nvars)


@dataclass(frozen=True)
class Diagonalization:
    """
    A presentation rewritten in diagonal form.

    ``to_new`` maps old coordinates to new ones, ``from_new`` maps back; both
    are exact modulo the respective relations.
    """

    group: "PresentedAbGroup"
    to_new: IntMatrix
    from_new: IntMatrix


@dataclass(frozen=True, eq=False)
class PresentedAbGroup:
    """
    The abelian group Z^ngens modulo the column span of ``relations``.
    """

    ngens: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.ngens:
            raise ValueError(f"Relations have {self.relations.rows} rows for {self.ngens} generators.")

    @classmethod
    def free(cls, n: int) -> "PresentedAbGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def trivial(cls) -> "PresentedAbGroup":
        return cls.free(0)

    @classmethod
    def from_moduli(cls, moduli: Sequence[int]) -> "PresentedAbGroup":
        """
        Diagonal presentation; modulus 0 marks a free coordinate.
        """
        n = len(moduli)
        columns = [tuple(d if i == k else 0 for i in range(n)) for k, d in enumerate(moduli) if d]
        return cls(n, IntMatrix.from_columns(columns, n))

    @classmethod
    def direct_sum(cls, groups: Sequence["PresentedAbGroup"]) -> "PresentedAbGroup":
        total = sum(group.ngens for group in groups)
        return cls(total, IntMatrix.block_diagonal([group.relations for group in groups]))

    @cached_property
    def smith(self) -> SmithForm:
        return smith_normal_form(self.relations)

    @cached_property
    def moduli(self) -> tuple[int, ...] | None:
        """
        Per-coordinate moduli when the presentation is diagonal, else None.
        """
        result = [0] * self.ngens
        for column in self.relations.columns():
            support = [(i, x) for i, x in enumerate(column) if x]
            if not support:
                continue
            if len(support) != 1:
                return None
            i, value = support[0]
            if result[i]:
                return None
            result[i] = abs(value)
        return tuple(result)

    @cached_property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        nonzero = [d for d in self.smith.diag if d]
        torsion = tuple(d for d in nonzero if d > 1)
        return self.ngens - len(nonzero), torsion

    @property
    def free_rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants[1]

    def is_trivial(self) -> bool:
        return self.invariants == (0, ())

    def __eq__(self, other):
        if not isinstance(other, PresentedAbGroup):
            return NotImplemented
        return self.invariants == other.invariants

    def __hash__(self):
        return hash(self.invariants)

    def describe(self) -> str:
        free_rank, torsion = self.invariants
        parts = [f"Z/{d}" for d in torsion]
        if free_rank:
            parts.append("Z" if free_rank == 1 else f"Z^{free_rank}")
        return " + ".join(parts) if parts else "0"

    def diagonalized(self) -> Diagonalization:
        moduli = self.moduli
        if moduli is not None and 1 not in moduli:
            identity = IntMatrix.identity(self.ngens)
            return Diagonalization(self, identity, identity)
        form = self.smith
        keep = []
        new_moduli = []
        for i in range(self.ngens):
            modulus = form.diag[i] if i < len(form.diag) else 0
            if modulus != 1:
                keep.append(i)
                new_moduli.append(modulus)
        to_new = IntMatrix.from_rows([form.left.row(i) for i in keep], self.ngens)
        from_new = IntMatrix.from_columns([form.left_inverse.column(i) for i in keep], self.ngens)
        return Diagonalization(PresentedAbGroup.from_moduli(new_moduli), to_new, from_new)

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        """
        Canonical coordinates of an element of a diagonal presentation.
        """
        moduli = self.moduli
        if moduli is None:
            raise ValueError("reduce() needs a diagonal presentation; call diagonalized() first.")
        return tuple(x % d if d else x for x, d in zip(vector, moduli))

    def reduce_matrix(self, matrix: IntMatrix) -> IntMatrix:
        """
        Reduce every column of a matrix landing in this group.
        """
        moduli = self.moduli
        if moduli is None:
            raise ValueError("reduce_matrix() needs a diagonal presentation.")
        return IntMatrix(
            matrix.rows,
            matrix.cols,
            tuple(tuple(x % d for x in row) if d else row for row, d in zip(matrix.entries, moduli)),
        )

    def is_zero_element(self, vector: Sequence[int]) -> bool:
        moduli = self.moduli
        if moduli is not None:
            return all((x % d == 0) if d else x == 0 for x, d in zip(vector, moduli))
        return ColumnEchelon(self.relations.columns(), self.ngens, track=False).contains(vector)

    def maps_equal(self, first: IntMatrix, second: IntMatrix) -> bool:
        """
        Equality of two maps into this group, modulo relations.
        """
        difference = first - second
        return all(self.is_zero_element(column) for column in difference.columns())


def group_invariants(group: PresentedAbGroup) -> tuple[int, tuple[int, ...]]:
    return group.invariants


class Subquotient:
    """
    The group L / L0 for a lattice L (given by a basis) and a sublattice L0.

    Elements of L are vectors in Z^dim. The quotient is presented in diagonal
    form with explicit generator vectors, and ``coordinates`` maps a vector of
    L to its canonical coordinates.
    """

    def __init__(self, basis: Sequence[Sequence[int]], zero_generators: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.basis = [tuple(vector) for vector in basis]
        self._echelon = ColumnEchelon(self.basis, dim, track=True)
        relation_columns = []
        for vector in zero_generators:
            coefficients = self._echelon.solve(vector)
            if coefficients is None:
                raise ValueError("Sublattice generator is not contained in the lattice.")
            if any(coefficients):
                relation_columns.append(tuple(coefficients))
        presentation = PresentedAbGroup(
            len(self.basis), IntMatrix.from_columns(relation_columns, len(self.basis))
        )
        diagonal = presentation.diagonalized()
        self.group = diagonal.group
        self._to_new = diagonal.to_new
        self.generators = []
        for k in range(diagonal.from_new.cols):
            vector = [0] * dim
            for i, coefficient in enumerate(diagonal.from_new.column(k)):
                if coefficient:
                    _axpy(vector, self.basis[i], coefficient)
            self.generators.append(tuple(vector))

    def coordinates(self, vector: Sequence[int]) -> tuple[int, ...]:
        coefficients = self._echelon.solve(vector)
        if coefficients is None:
            raise ValueError("Vector does not lie in the lattice.")
        return self.group.reduce(self._to_new.apply(coefficients))


class HomGroup:
    """
    A group of homomorphisms A -> B with explicit matrix generators.
    """

    def __init__(self, source: PresentedAbGroup, target: PresentedAbGroup, subquotient: Subquotient):
        self.source = source
        self.target = target
        self._subquotient = subquotient
        self.group = subquotient.group
        a = source.ngens
        self.generators = [
            IntMatrix.from_rows([vector[j * a:(j + 1) * a] for j in range(target.ngens)], a)
            for vector in subquotient.generators
        ]

    def coordinates(self, phi: IntMatrix) -> tuple[int, ...]:
        return self._subquotient.coordinates(tuple(x for row in phi.entries for x in row))


def hom_group(
    A: PresentedAbGroup,
    B: PresentedAbGroup,
    constraints: Sequence[tuple[IntMatrix, IntMatrix]] = (),
) -> HomGroup:
    """
    All homomorphisms phi: A -> B with phi S_A = S_B phi for each constraint.

    phi is a B.ngens x A.ngens matrix; entry (j, i) is variable j * a + i.
    """
    a, b = A.ngens, B.ngens
    nvars = a * b
    for s_a, s_b in constraints:
        if (s_a.rows, s_a.cols) != (a, a) or (s_b.rows, s_b.cols) != (b, b):
            raise ValueError("Constraint matrices have inconsistent dimensions.")
    target = B.diagonalized()
    moduli = target.group.moduli
    t = target.to_new
    rows: list[list[int]] = []
    row_moduli: list[int] = []

    def emit(form):
        # form[j] is the linear form for coordinate j of a vector in B
        for k in range(t.rows):
            combined = [0] * nvars
            for j, coefficient in enumerate(t.row(k)):
                if coefficient:
                    _axpy(combined, form[j], coefficient)
            rows.append(combined)
            row_moduli.append(moduli[k])

    for relation in A.relations.columns():
        form = []
        for j in range(b):
            linear = [0] * nvars
            for i, r in enumerate(relation):
                if r:
                    linear[j * a + i] += r
            form.append(linear)
        emit(form)
    for s_a, s_b in constraints:
        for i in range(a):
            form = []
            for j in range(b):
                linear = [0] * nvars
                for l in range(a):
                    if s_a[l, i]:
                        linear[j * a + l] += s_a[l, i]
                for k in range(b):
                    if s_b[j, k]:
                        linear[k * a + i] -= s_b[j, k]
                form.append(linear)
            emit(form)
    basis = solve_lattice(rows, nvars, row_moduli)
    zero_generators = []
    for i in range(a):
        for relation in B.relations.columns():
            vector = [0] * nvars
            for j, r in enumerate(relation):
                vector[j * a + i] = r
            zero_generators.append(vector)
    logger.debug("hom_group: %d variables, %d conditions, lattice rank %d", nvars, len(rows), len(basis))
    return HomGroup(A, B, Subquotient(basis, zero_generators, nvars))
