"""Exact integer linear algebra: Hermite forms, Diophantine solving, bounded
coset enumeration, and Hilbert bases of linear Diophantine systems.

Everything here works on small dense matrices of python ints (a few dozen
rows and columns at most), so the implementations favor verifiability over
asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class Infeasible(ValueError):
    """The Diophantine system has no solution."""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matvec(A, x):
    return [sum(r[j] * x[j] for j in range(len(x))) for r in A]


def hnf_column(A):
    """Column Hermite form.

    Returns (H, U, pivots) with H = A * U, U unimodular, H in column echelon
    form: pivots is the list of pivot rows, one per leading column, strictly
    increasing; columns past len(pivots) are zero.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [row[:] for row in A]
    U = _identity(n)

    def col_swap(i, j):
        for M in (H, U):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def col_addmul(dst, src, q):
        if q:
            for M in (H, U):
                for row in M:
                    row[dst] -= q * row[src]

    def col_negate(i):
        for M in (H, U):
            for row in M:
                row[i] = -row[i]

    pivots = []
    col = 0
    for row in range(m):
        if col >= n:
            break
        while True:
            nz = [j for j in range(col, n) if H[row][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[row][j]))
            if j0 != col:
                col_swap(col, j0)
            done = True
            for j in range(col + 1, n):
                if H[row][j]:
                    q = H[row][j] // H[row][col]
                    col_addmul(j, col, q)
                    if H[row][j]:
                        done = False
            if done:
                break
        if H[row][col]:
            if H[row][col] < 0:
                col_negate(col)
            for j in range(col):
                q = H[row][j] // H[row][col]
                col_addmul(j, col, q)
            pivots.append(row)
            col += 1
    return H, U, pivots


def kernel_basis(A):
    """Basis (list of int vectors) of the integer kernel of A."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    H, U, pivots = hnf_column(A)
    rank = len(pivots)
    return [[U[i][j] for i in range(n)] for j in range(rank, n)]


def solve_diophantine(A, b):
    """One integer solution of A x = b, or None.

    Use kernel_basis for the homogeneous part.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H, U, pivots = hnf_column(A)
    y = [0] * n
    used = 0
    residual = list(b)
    for col, row in enumerate(pivots):
        if residual[row] % H[row][col]:
            return None
        q = residual[row] // H[row][col]
        y[col] = q
        for i in range(m):
            residual[i] -= q * H[i][col]
        used = col + 1
    if any(residual):
        return None
    return _matvec(U, y)


def diagonalize_left(A):
    """Diagonalize A by unimodular row and column operations.

    Returns (diag, U, rank) where U A V = D for some unimodular V that is not
    tracked; diag holds the positive diagonal entries (length = rank).  Used
    to turn lattice membership into congruence conditions on U-transformed
    coordinates.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [row[:] for row in A]
    U = _identity(m)
    t = 0
    while t < min(m, n):
        # locate a nonzero pivot in the trailing submatrix
        pos = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < best):
                    best = abs(M[i][j])
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            M[t], M[i0] = M[i0], M[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            for row in M:
                row[t], row[j0] = row[j0], row[t]
        while True:
            # clear the column below t with row ops
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    for j in range(n):
                        M[i][j] -= q * M[t][j]
                    for j in range(m):
                        U[i][j] -= q * U[t][j]
                    if M[i][t]:  # remainder became the smaller pivot
                        M[t], M[i] = M[i], M[t]
                        U[t], U[i] = U[i], U[t]
                        break
            else:
                # clear the row to the right with column ops
                for j in range(t + 1, n):
                    if M[t][j]:
                        q = M[t][j] // M[t][t]
                        for i in range(m):
                            M[i][j] -= q * M[i][t]
                        if M[t][j]:
                            for i in range(m):
                                M[i][t], M[i][j] = M[i][j], M[i][t]
                            break
                else:
                    break
                continue
        if M[t][t] < 0:
            for j in range(n):
                M[t][j] = -M[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    diag = [M[i][i] for i in range(t)]
    return diag, U, t


def lattice_hnf(vectors, dim):
    """Column-HNF basis of the lattice generated by the given vectors."""
    if not vectors:
        return []
    A = [[v[i] for v in vectors] for i in range(dim)]
    H, _, pivots = hnf_column(A)
    rank = len(pivots)
    return [[H[i][j] for i in range(dim)] for j in range(rank)]


def in_lattice(v, basis):
    """Membership of v in the lattice spanned by basis vectors."""
    if not basis:
        return not any(v)
    dim = len(v)
    A = [[b[i] for b in basis] for i in range(dim)]
    return solve_diophantine(A, list(v)) is not None


def reduce_mod_lattice(v, basis, passes=4):
    """Shrink v by subtracting lattice vectors (greedy size reduction)."""
    if not basis:
        return list(v)
    x = list(v)
    for _ in range(passes):
        changed = False
        for b in basis:
            bb = sum(c * c for c in b)
            if not bb:
                continue
            k = round(Fraction(sum(x[i] * b[i] for i in range(len(x))), bb))
            if k:
                x = [x[i] - k * b[i] for i in range(len(x))]
                changed = True
        if not changed:
            break
    return x


def enumerate_coset(v0, basis, weight_bound, box_bound=None):
    """All vectors v0 + (integer combination of basis) with l1-norm <= bound.

    Optionally restricts each coordinate to |v_i| <= box_bound as well.
    Yields plain lists.  The enumeration walks a column-Hermite form of the
    basis so only genuine coset points are visited.
    """
    dim = len(v0)
    if not basis:
        w = sum(abs(x) for x in v0)
        if w <= weight_bound and (box_bound is None or all(abs(x) <= box_bound for x in v0)):
            yield list(v0)
        return
    A = [[b[i] for b in basis] for i in range(dim)]
    H, _, pivots = hnf_column(A)
    rank = len(pivots)
    cols = [[H[i][j] for i in range(dim)] for j in range(rank)]
    start = reduce_mod_lattice(v0, cols)

    # rows settled once the j-th coefficient is fixed: pivot row j .. pivot row j+1 - 1
    segments = []
    for j in range(rank):
        lo = pivots[j]
        hi = pivots[j + 1] if j + 1 < rank else dim
        segments.append((lo, hi))

    prefix = start[:pivots[0]] if rank else list(start)
    head_weight = sum(abs(x) for x in prefix)
    if head_weight > weight_bound:
        return
    if box_bound is not None and any(abs(x) > box_bound for x in prefix):
        return

    current = list(start)

    def rec(j, used):
        if j == rank:
            yield list(current)
            return
        lo, hi = segments[j]
        p = cols[j][lo]
        base = start[lo] + sum(cols[jj][lo] * coeffs[jj] for jj in range(j))
        budget = weight_bound - used
        limit = budget if box_bound is None else min(budget, box_bound)
        # admissible coefficient range from |base + k p| <= limit
        k_lo = -((limit + base) // p)
        k_hi = (limit - base) // p
        for k in range(k_lo, k_hi + 1):
            coeffs[j] = k
            add = 0
            ok = True
            for i in range(lo, hi):
                current[i] = start[i] + sum(cols[jj][i] * coeffs[jj] for jj in range(j + 1))
                add += abs(current[i])
                if box_bound is not None and abs(current[i]) > box_bound:
                    ok = False
                    break
            if not ok or used + add > weight_bound:
                continue
            yield from rec(j + 1, used + add)
        coeffs[j] = 0

    coeffs = [0] * rank
    yield from rec(0, head_weight)


def minimal_nonneg_solutions(rows, progress_limit=2_000_000):
    """Minimal nonzero solutions of (rows) x = 0 over nonnegative integers.

    Breadth-first completion: grow candidate vectors coordinatewise, only
    along directions whose column value decreases the current defect, pruning
    anything dominated by a known solution.  Complete and terminating for
    homogeneous integer systems.
    """
    if not rows:
        raise ValueError("need at least one equation row")
    m = len(rows)
    n = len(rows[0])
    cols = [tuple(rows[i][j] for i in range(m)) for j in range(n)]
    minimals = []
    frontier = {}
    for j in range(n):
        x = tuple(1 if i == j else 0 for i in range(n))
        frontier[x] = cols[j]
    seen = set(frontier)
    steps = 0
    while frontier:
        nxt = {}
        for x, v in frontier.items():
            steps += 1
            if steps > progress_limit:
                raise RuntimeError("completion exceeded the step budget")
            if any(all(a >= b for a, b in zip(x, s)) for s in minimals):
                continue
            if not any(v):
                minimals.append(x)
                continue
            for j in range(n):
                if sum(a * b for a, b in zip(v, cols[j])) < 0:
                    x2 = x[:j] + (x[j] + 1,) + x[j + 1:]
                    if x2 in seen:
                        continue
                    seen.add(x2)
                    nxt[x2] = tuple(a + b for a, b in zip(v, cols[j]))
        frontier = nxt
    return minimals


@dataclass
class DioSystem:
    """Integer-coefficient equalities with a subset of variables >= 0.

    Solutions are x in Z^n with (equalities) x = 0 and x_i >= 0 for i in
    nonneg.  Labels name the variables for reporting.
    """
    equalities: list
    nonneg: list
    labels: list = field(default_factory=list)

    @property
    def nvars(self):
        return len(self.equalities[0]) if self.equalities else len(self.labels)


def hilbert_basis(system: DioSystem):
    """Generators of the solution monoid of a DioSystem.

    Returns (pointed, lineality): every solution is a nonnegative integer
    combination of pointed vectors plus an arbitrary integer combination of
    lineality vectors, and no pointed vector decomposes into others.
    """
    n = system.nvars
    P = sorted(system.nonneg)
    eqs = [row[:] for row in system.equalities]
    if not eqs:
        eqs = [[0] * n]
    if any(len(r) != n for r in eqs):
        raise ValueError("ragged equality rows")

    kern = kernel_basis(eqs)
    unit_rows = [[1 if j == i else 0 for j in range(n)] for i in P]
    lineality = kernel_basis(eqs + unit_rows)

    if not P:
        return [], lineality
    if not kern:
        if solve_diophantine(eqs, [0] * len(eqs)) is None:
            raise Infeasible("inconsistent homogeneous system")
        return [], lineality

    k = len(P)
    proj = [[v[i] for i in P] for v in kern]       # generators of the image lattice
    Mg = [[proj[j][i] for j in range(len(proj))] for i in range(k)]
    diag, U, rank = diagonalize_left(Mg)

    rows = []
    slack_moduli = []
    for i in range(rank):
        d = abs(diag[i])
        if d > 1:
            reduced = [((U[i][j] % d) + d) % d for j in range(k)]
            reduced = [c - d if c > d - c else c for c in reduced]
            if any(reduced):
                rows.append(reduced)
                slack_moduli.append(d)
    for i in range(rank, k):
        if any(U[i]):
            rows.append(U[i][:])
            slack_moduli.append(0)
    width = k + 2 * sum(1 for d in slack_moduli if d)
    full_rows = []
    slack_at = k
    for row, d in zip(rows, slack_moduli):
        r = row + [0] * (width - k)
        if d:
            r[slack_at] = -d
            r[slack_at + 1] = d
            slack_at += 2
        full_rows.append(r)
    if not full_rows:
        full_rows = [[0] * width]

    raw = minimal_nonneg_solutions(full_rows)
    candidates = []
    for x in raw:
        y = tuple(x[:k])
        if any(y) and y not in candidates:
            candidates.append(y)

    lat_cols = lattice_hnf(proj, k)

    def in_image(y):
        return in_lattice(list(y), lat_cols)

    keep = []
    for y in sorted(candidates, key=lambda v: (sum(v), v)):
        reducible = False
        for g0 in candidates:
            if g0 == y:
                continue
            if all(a <= b for a, b in zip(g0, y)) and in_image([b - a for a, b in zip(g0, y)]):
                reducible = True
                break
        if not reducible:
            keep.append(y)

    # lift the projected generators back to full solutions
    lift_rows = eqs + unit_rows
    pointed = []
    for y in keep:
        rhs = [0] * len(eqs) + list(y)
        x = solve_diophantine(lift_rows, rhs)
        if x is None:
            raise RuntimeError("projected generator failed to lift")
        x = reduce_mod_lattice(x, lineality)
        pointed.append(x)
    pointed.sort(key=lambda v: (sum(abs(c) for c in v), v))
    return pointed, lineality
