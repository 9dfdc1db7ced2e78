"""JSON encodings for inner functions, coefficient vectors and matrices.

Complex scalars are [re, im] pairs; coefficient vectors are lists of pairs;
matrices are row-major {"rows": R, "cols": C, "data": [[re, im], ...]}.
Inner functions are {"zeros": [[re, im], ...], "constant": [re, im]} with the
shorthand {"monomial": n} for z**n.
"""

from __future__ import annotations

import numpy as np

from .inner import InnerFunction, monomial


def complex_to_json(value) -> list:
    value = complex(value)
    return [value.real, value.imag]


def complex_from_json(value) -> complex:
    re, im = value
    return complex(float(re), float(im))


def vector_to_json(vec) -> list:
    return [complex_to_json(v) for v in np.asarray(vec, dtype=complex)]


def vector_from_json(data) -> np.ndarray:
    return np.array([complex_from_json(v) for v in data], dtype=complex)


def matrix_to_json(matrix) -> dict:
    matrix = np.asarray(matrix, dtype=complex)
    rows, cols = matrix.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [complex_to_json(v) for v in matrix.reshape(-1)],
    }


def matrix_from_json(data) -> np.ndarray:
    rows, cols = int(data["rows"]), int(data["cols"])
    flat = np.array([complex_from_json(v) for v in data["data"]], dtype=complex)
    if flat.size != rows * cols:
        raise ValueError(f"matrix data length {flat.size} != rows*cols {rows * cols}")
    return flat.reshape(rows, cols)


def inner_to_json(f: InnerFunction) -> dict:
    if all(z == 0 for z in f.zeros) and f.constant == (-1.0) ** f.degree:
        return {"monomial": f.degree}
    return {
        "zeros": [complex_to_json(z) for z in f.zeros],
        "constant": complex_to_json(f.constant),
    }


def inner_from_json(data) -> InnerFunction:
    if "monomial" in data:
        return monomial(int(data["monomial"]))
    zeros = tuple(complex_from_json(z) for z in data.get("zeros", []))
    constant = complex_from_json(data["constant"]) if "constant" in data else 1.0
    return InnerFunction(zeros=zeros, constant=constant)


def laurent_from_json(data) -> dict:
    return {int(k): complex_from_json(v) for k, v in data.items()}
