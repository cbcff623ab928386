# chain_linalg/utils.py - Smith normal form over Z/p^N and module algebra
import logging

from core.decorators import timed
from core.exceptions import ValidationError
from core.utils import PAdicArithmetic
from chain_linalg.models import SmithForm, WindowModule

logger = logging.getLogger(__name__)


def _valuation(value, p, N):
    return PAdicArithmetic.valuation_or(value % p ** N, p, N)


def _identity(size):
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


class SmithNormalForm:
    """Dense Smith normal form over the chain ring Z/p^N"""

    @staticmethod
    def _find_pivot(A, t, p, N):
        best = None
        for i in range(t, len(A)):
            row = A[i]
            for j in range(t, len(row)):
                if row[j]:
                    v = _valuation(row[j], p, N)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            return best
        return best

    @classmethod
    def compute(cls, matrix, p, N, track_left=True):
        modulus = p ** N
        A = [[value % modulus for value in row] for row in matrix]
        m = len(A)
        k = len(A[0]) if m else 0
        U = _identity(m) if track_left else None
        V = _identity(k)
        divisors = []
        t = 0
        while t < min(m, k):
            pivot = cls._find_pivot(A, t, p, N)
            if pivot is None:
                break
            v, i, j = pivot
            A[t], A[i] = A[i], A[t]
            if track_left:
                U[t], U[i] = U[i], U[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                for row in V:
                    row[t], row[j] = row[j], row[t]
            power = p ** v
            unit = A[t][t] // power
            inverse = PAdicArithmetic.inverse(unit % modulus, modulus)
            A[t] = [(value * inverse) % modulus for value in A[t]]
            if track_left:
                U[t] = [(value * inverse) % modulus for value in U[t]]
            for i in range(t + 1, m):
                if A[i][t]:
                    factor = A[i][t] // power
                    A[i] = [(a - factor * b) % modulus for a, b in zip(A[i], A[t])]
                    if track_left:
                        U[i] = [(a - factor * b) % modulus for a, b in zip(U[i], U[t])]
            for j in range(t + 1, k):
                if A[t][j]:
                    factor = A[t][j] // power
                    for row in A:
                        row[j] = (row[j] - factor * row[t]) % modulus
                    for row in V:
                        row[j] = (row[j] - factor * row[t]) % modulus
            divisors.append(power)
            t += 1
        return SmithForm(
            tuple(divisors),
            tuple(tuple(row) for row in U) if track_left else (),
            tuple(tuple(row) for row in V),
            modulus,
        )


def snf(matrix, row_moduli, p):
    """Smith form of an integer matrix whose rows live mod p^(m_i)

    Rows of modulus p^m are embedded into Z/p^N as p^(N-m)-scaled rows.
    """
    rows = len(matrix)
    if len(row_moduli) != rows:
        raise ValidationError(f"Expected {rows} row moduli, got {len(row_moduli)}")
    exponents = [PAdicArithmetic.valuation(m, p) for m in row_moduli]
    N = max(exponents) if exponents else 1
    scaled = [[p ** (N - e) * value for value in row] for row, e in zip(matrix, exponents)]
    if not rows:
        return SmithForm((), (), (), p ** N)
    return SmithNormalForm.compute(scaled, p, N)


class BlockDecomposition:
    """Split sparse columns into independent row-connected blocks"""

    @staticmethod
    def blocks(columns):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for column in columns:
            rows = list(column)
            for row in rows:
                parent.setdefault(row, row)
            for row in rows[1:]:
                a, b = find(rows[0]), find(row)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        empty = []
        for index, column in enumerate(columns):
            if not column:
                empty.append(index)
                continue
            root = find(next(iter(column)))
            groups.setdefault(root, []).append(index)
        blocks = []
        for root in sorted(groups):
            indices = groups[root]
            rows = sorted({row for index in indices for row in columns[index]})
            blocks.append((rows, indices))
        return blocks, empty


class ModuleAlgebra:
    """Length, relations, intersections and preimages of window modules"""

    @staticmethod
    def _block_matrix(rows, indices, columns):
        position = {row: r for r, row in enumerate(rows)}
        matrix = [[0] * len(indices) for _ in rows]
        for c, index in enumerate(indices):
            for row, value in columns[index].items():
                matrix[position[row]][c] = value
        return matrix

    @classmethod
    @timed()
    def length(cls, space, generators):
        p, N = space.p, space.N
        blocks, _ = BlockDecomposition.blocks(generators)
        total = 0
        for rows, indices in blocks:
            smith = SmithNormalForm.compute(cls._block_matrix(rows, indices, generators), p, N, track_left=False)
            total += sum(N - PAdicArithmetic.valuation(d, p) for d in smith.divisors)
        logger.debug(f"Length {total} from {len(generators)} generators in {len(space)} coordinates")
        return total

    @classmethod
    def relations(cls, columns, p, N):
        """Generators of {lambda : sum lambda_i columns_i = 0 mod p^N} as sparse dicts"""
        blocks, empty = BlockDecomposition.blocks(columns)
        relations = [{index: 1} for index in empty]
        for rows, indices in blocks:
            smith = SmithNormalForm.compute(cls._block_matrix(rows, indices, columns), p, N, track_left=False)
            V = smith.right
            for c in range(len(indices)):
                if c < smith.rank:
                    factor = p ** (N - PAdicArithmetic.valuation(smith.divisors[c], p))
                else:
                    factor = 1
                relation = {}
                for r, index in enumerate(indices):
                    value = (V[r][c] * factor) % p ** N
                    if value:
                        relation[index] = value
                if relation:
                    relations.append(relation)
        return relations

    @staticmethod
    def _combine(vectors, coefficients, modulus):
        result = {}
        for index, coeff in coefficients.items():
            for row, value in vectors[index].items():
                result[row] = (result.get(row, 0) + coeff * value) % modulus
        return {row: value for row, value in result.items() if value}

    @classmethod
    def intersection(cls, left, right):
        space = left.space
        k = len(left.generators)
        columns = list(left.generators) + list(right.generators)
        relations = cls.relations(columns, space.p, space.N)
        generators = []
        for relation in relations:
            head = {index: value for index, value in relation.items() if index < k}
            if head:
                generators.append(cls._combine(left.generators, head, space.modulus))
        return WindowModule(space, generators)

    @classmethod
    def preimage(cls, module, linear_map, target_module):
        source, target = module.space, linear_map.target
        images = [linear_map.apply(g) for g in module.generators]
        k = len(images)
        columns = images + list(target_module.generators)
        relations = cls.relations(columns, target.p, target.N)
        generators = []
        for relation in relations:
            head = {index: value for index, value in relation.items() if index < k}
            if head:
                generators.append(cls._combine(module.generators, head, source.modulus))
        if source.N > target.N:
            scale = target.modulus
            generators.extend({row: scale * value for row, value in g.items()} for g in module.generators)
        return WindowModule(source, generators)
