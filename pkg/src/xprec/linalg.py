from util.errors import DomainError
from xprec.precision import Real


def solve(matrix: list[list[Real]], rhs: list[list[Real]]) -> list[list[Real]]:
    """Solve matrix @ X = rhs by Gaussian elimination with partial pivoting.

    `rhs` is a list of rows, one column per right-hand side; inputs are not modified.
    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    b = [list(row) for row in rhs]
    for col in range(n):
        pivot = max(range(col, n), key=lambda i: abs(float(a[i][col])))
        if float(a[pivot][col]) == 0.0:
            raise DomainError("singular linear system")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            factor = a[i][col] * inv
            if float(factor) == 0.0:
                continue
            row_i, row_c = a[i], a[col]
            for j in range(col + 1, n):
                row_i[j] = row_i[j] - factor * row_c[j]
            b_i, b_c = b[i], b[col]
            for k in range(len(b_i)):
                b_i[k] = b_i[k] - factor * b_c[k]
    x: list[list[Real]] = [[] for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = []
        for k in range(len(b[i])):
            acc = b[i][k]
            for j in range(i + 1, n):
                acc = acc - a[i][j] * x[j][k]
            row.append(acc / a[i][i])
        x[i] = row
    return x
