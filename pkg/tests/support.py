"""Shared fixtures and direct-assertion helpers for the test suite."""

import numpy as np

from biclose import AttributeKind, AttributeSchema, EnumParams, MixedMatrix

# 10x3 real-valued reference matrix; mining it with min sizes 2/2 and a 0.2
# tolerance on every column must yield exactly the twelve biclusters below.
REF10 = np.array(
    [
        [0.278, 0.422, 0.743],
        [0.547, 0.916, 0.392],
        [0.958, 0.792, 0.655],
        [0.965, 0.959, 0.171],
        [0.158, 0.656, 0.706],
        [0.971, 0.036, 0.032],
        [0.957, 0.849, 0.277],
        [0.485, 0.934, 0.046],
        [0.800, 0.679, 0.097],
        [0.142, 0.758, 0.823],
    ]
)

# (rows, cols), 1-based
REF10_BICLUSTERS = [
    ((1, 5, 10), (1, 3)),
    ((5, 10), (1, 2, 3)),
    ((2, 8), (1, 2)),
    ((3, 7, 9), (1, 2)),
    ((7, 9), (1, 2, 3)),
    ((3, 4, 7), (1, 2)),
    ((4, 7), (1, 2, 3)),
    ((4, 6, 9), (1, 3)),
    ((4, 7, 9), (1, 3)),
    ((3, 5, 10), (2, 3)),
    ((2, 7), (2, 3)),
    ((4, 8), (2, 3)),
]


def ref10_matrix() -> MixedMatrix:
    return MixedMatrix.from_numeric(REF10, epsilons=[0.2, 0.2, 0.2])


def ref10_expected() -> set:
    return {
        (
            tuple(sorted(i - 1 for i in rows)),
            tuple(sorted(j - 1 for j in cols)),
        )
        for rows, cols in REF10_BICLUSTERS
    }


# 20-person survey table: sex, age, weight, height, smoker, religion, social
# class.  Used for categorical encoding, rule rendering and oracle tests.
PEOPLE_HEADER = [
    "Sex", "Age", "Weight", "Height", "Smoker", "Religion", "SocialClass",
]

PEOPLE_RAW = [
    ["F", "32", "94.87", "1.72", "Y", "Christian", "C"],
    ["F", "34", "99.39", "1.63", "N", "Christian", "D"],
    ["F", "33", "124.15", "1.66", "N", "Hindu", "C"],
    ["M", "52", "49.77", "1.71", "Y", "Christian", "E"],
    ["F", "57", "65.13", "1.80", "N", "Hindu", "C"],
    ["F", "39", "58.71", "1.74", "N", "Buddhist", "E"],
    ["F", "39", "67.41", "1.56", "N", "Christian", "C"],
    ["F", "47", "67.19", "1.79", "Y", "Christian", "B"],
    ["M", "58", "42.95", "1.48", "N", "Christian", "A"],
    ["M", "17", "109.52", "1.62", "N", "Christian", "C"],
    ["F", "42", "91.12", "1.76", "N", "Buddhist", "D"],
    ["F", "48", "58.07", "1.50", "N", "Islamist", "D"],
    ["M", "43", "46.69", "1.61", "N", "Hindu", "B"],
    ["M", "55", "85.38", "1.54", "N", "Islamist", "C"],
    ["M", "34", "39.77", "1.70", "N", "Christian", "B"],
    ["M", "34", "83.90", "1.74", "N", "Islamist", "D"],
    ["M", "51", "55.72", "1.93", "Y", "Islamist", "B"],
    ["F", "47", "57.10", "1.51", "N", "Christian", "C"],
    ["M", "38", "54.01", "1.85", "Y", "Islamist", "C"],
    ["M", "45", "73.10", "1.59", "N", "Islamist", "C"],
]

# Height tolerance: 1.62 - 1.54 is one ulp above 0.08 in float64 and the
# homogeneity comparison is exact, so the intended group needs a hair more.
PEOPLE_EPS = [0.0, 8.0, 15.0, 0.081, 0.0, 0.0, 1.0]


def people_schemas(eps=PEOPLE_EPS) -> list[AttributeSchema]:
    return [
        AttributeSchema("Sex", AttributeKind.NOMINAL, ("M", "F"), eps[0]),
        AttributeSchema("Age", AttributeKind.INTEGER, (), eps[1]),
        AttributeSchema("Weight", AttributeKind.REAL, (), eps[2]),
        AttributeSchema("Height", AttributeKind.REAL, (), eps[3]),
        AttributeSchema("Smoker", AttributeKind.NOMINAL, ("N", "Y"), eps[4]),
        AttributeSchema(
            "Religion", AttributeKind.NOMINAL,
            ("Christian", "Islamist", "Hindu", "Buddhist"), eps[5],
        ),
        AttributeSchema(
            "SocialClass", AttributeKind.ORDINAL,
            ("A", "B", "C", "D", "E"), eps[6],
        ),
    ]


def random_mixed_instance(rng: np.random.RandomState):
    """Small random matrix drawing all four column kinds, with missing cells."""
    n = rng.randint(2, 11)
    m = rng.randint(2, 7)
    vals = np.zeros((n, m))
    schema = []
    for j in range(m):
        kind = rng.randint(4)
        if kind == 0:
            vals[:, j] = np.round(rng.uniform(0, 1, n), 3)
            schema.append(AttributeSchema(
                f"c{j}", AttributeKind.REAL,
                epsilon=float(np.round(rng.uniform(0, 0.5), 2)),
            ))
        elif kind == 1:
            vals[:, j] = rng.randint(0, 5, n)
            schema.append(AttributeSchema(
                f"c{j}", AttributeKind.INTEGER, epsilon=float(rng.randint(0, 3)),
            ))
        elif kind == 2:
            k = rng.randint(2, 5)
            vals[:, j] = rng.randint(1, k + 1, n)
            schema.append(AttributeSchema(
                f"c{j}", AttributeKind.ORDINAL,
                categories=tuple(chr(65 + t) for t in range(k)),
                epsilon=float(rng.randint(0, 2)),
            ))
        else:
            k = rng.randint(2, 5)
            vals[:, j] = rng.randint(1, k + 1, n)
            schema.append(AttributeSchema(
                f"c{j}", AttributeKind.NOMINAL,
                categories=tuple(chr(97 + t) for t in range(k)),
            ))
    missing = rng.uniform(size=(n, m)) < rng.uniform(0, 0.2)
    matrix = MixedMatrix(values=vals, missing=missing, schema=tuple(schema))
    params = EnumParams.for_matrix(
        matrix,
        min_rows=int(rng.randint(1, min(4, n + 1))),
        min_cols=int(rng.randint(1, min(3, m + 1))),
    )
    return matrix, params


def as_pairs(biclusters) -> list:
    return [(b.extent, b.intent) for b in biclusters]


def assert_valid_solution(matrix: MixedMatrix, params: EnumParams, biclusters):
    """Direct assertions: homogeneity, one-step maximality, distinct extents."""
    eps = matrix.epsilons
    V, M = matrix.values, matrix.missing
    extents = set()
    for b in biclusters:
        rows = np.array(b.extent, dtype=np.int64)
        assert len(b.extent) >= params.min_rows
        assert len(b.intent) >= params.min_cols
        for j in b.intent:
            assert not M[rows, j].any(), f"{b} covers a missing cell"
            vals = V[rows, j]
            assert vals.max() - vals.min() <= eps[j], f"{b} breaks column {j}"
        for x in range(matrix.n):
            if x in b.extent:
                continue
            fits = all(
                not M[x, j]
                and max(V[rows, j].max(), V[x, j])
                - min(V[rows, j].min(), V[x, j]) <= eps[j]
                for j in b.intent
            )
            assert not fits, f"row {x} extends {b}"
        for y in range(matrix.m):
            if y in b.intent:
                continue
            fits = (
                not M[rows, y].any()
                and V[rows, y].max() - V[rows, y].min() <= eps[y]
            )
            assert not fits, f"column {y} extends {b}"
        assert b.extent not in extents, f"duplicate extent {b.extent}"
        extents.add(b.extent)
