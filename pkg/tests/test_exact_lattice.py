import itertools

import pytest

from cy_smoother.exact_lattice import (
    FgAbelianGroup,
    IntMatrix,
    RankMismatchError,
    hermite_row_form,
    intersect_column_lattices,
    kernel_basis,
    pairing_is_unimodular,
    quotient,
    smith_normal_form,
    snf_diagonal,
    solve_exact,
)


def brute_det(M: IntMatrix) -> int:
    """Leibniz-formula determinant; the independent oracle for small sizes."""
    assert M.is_square()
    n = M.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= M[i, perm[i]]
        total += term
    return total if n else 1


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


class TestSmithNormalForm:
    def test_identity(self):
        I2 = IntMatrix.identity(2)
        U, S, V = smith_normal_form(I2)
        assert S == I2 and U @ I2 @ V == S

    def test_zero(self):
        Z = IntMatrix.zeros(2, 3)
        U, S, V = smith_normal_form(Z)
        assert S == Z
        assert abs(brute_det(U)) == 1 and abs(brute_det(V)) == 1

    def test_2x2_example(self):
        M = IntMatrix.from_rows([[2, 4], [6, 8]])
        U, S, V = smith_normal_form(M)
        assert [S[0, 0], S[1, 1]] == [2, 4]
        assert S[0, 1] == S[1, 0] == 0
        assert U @ M @ V == S
        # |det| preserved through unimodular transforms
        assert abs(brute_det(S)) == abs(brute_det(M)) == 8

    def test_randomized_contract(self, rng):
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            M = random_matrix(rng, rows, cols)
            U, S, V = smith_normal_form(M)
            assert U @ M @ V == S
            assert abs(brute_det(U)) == 1
            assert abs(brute_det(V)) == 1
            diag = [S[t, t] for t in range(min(rows, cols))]
            for i in range(rows):
                for j in range(cols):
                    if i != j:
                        assert S[i, j] == 0
            for a, b in zip(diag, diag[1:]):
                assert a >= 0 and b >= 0
                if a:
                    assert b % a == 0
                else:
                    assert b == 0


class TestKernelBasis:
    def test_single_relation(self):
        K = kernel_basis(IntMatrix.from_rows([[1, -1]]))
        assert K.to_columns() == [[1, 1]]

    def test_quick_example_relation(self):
        K = kernel_basis(IntMatrix.from_rows([[1, -1, -8]]))
        assert K.to_columns() == [[1, 1, 0], [8, 0, 1]]

    def test_full_rank(self):
        assert kernel_basis(IntMatrix.identity(3)).cols == 0

    def test_randomized_saturation(self, rng):
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            M = random_matrix(rng, rows, cols)
            K = kernel_basis(M)
            assert (M @ K).is_zero()
            if K.cols:
                # saturated: the Smith invariants of the basis are all 1
                assert all(d == 1 for d in snf_diagonal(K))
            # rank bookkeeping
            assert K.cols == cols - len(snf_diagonal(M))


class TestQuotient:
    def test_torsion(self):
        g, proj, sec = quotient(2, IntMatrix.from_columns([[2, 0]]))
        assert g == FgAbelianGroup(1, (2,))
        assert (proj @ sec) == IntMatrix.identity(1)

    def test_free(self):
        g, proj, sec = quotient(3, IntMatrix.from_columns([[4, -4, 1]]))
        assert g == FgAbelianGroup(2, ())
        assert (proj @ sec) == IntMatrix.identity(2)

    def test_quick_example_composite(self):
        # kernel lattice of [[1,-1,-8]] modulo (D,-D) = (4,-4,1): the free
        # generator lifts to (1, 1, 0), the class (H, pi* H).
        K = kernel_basis(IntMatrix.from_rows([[1, -1, -8]]))
        w = solve_exact(K, (4, -4, 1))
        assert w is not None
        g, proj, sec = quotient(K.cols, IntMatrix.from_columns([list(w)]))
        assert g == FgAbelianGroup(1, ())
        lift = K.mul_vector(sec.column(0))
        assert lift == (1, 1, 0)

    def test_rank_bound_random(self, rng):
        for _ in range(40):
            n = rng.randint(1, 5)
            k = rng.randint(0, 4)
            R = random_matrix(rng, n, k, bound=6)
            g, proj, sec = quotient(n, R)
            assert g.free_rank + len(g.torsion_invariants) <= n
            # re-derivation from the Smith invariants of the relations
            diag = snf_diagonal(R)
            assert g.free_rank == n - len(diag)
            assert g.torsion_invariants == tuple(d for d in diag if d >= 2)
            if g.free_rank:
                assert (proj @ sec) == IntMatrix.identity(g.free_rank)

    def test_rejects_wrong_row_count(self):
        with pytest.raises(ValueError):
            quotient(3, IntMatrix.from_columns([[1, 2]]))


class TestPairingUnimodular:
    def test_examples(self):
        assert pairing_is_unimodular(IntMatrix.from_rows([[1, 0], [1, 1]]))
        assert not pairing_is_unimodular(IntMatrix.from_rows([[2]]))
        assert pairing_is_unimodular(IntMatrix.zeros(0, 0))

    def test_non_square_is_error(self):
        with pytest.raises(RankMismatchError):
            pairing_is_unimodular(IntMatrix.zeros(2, 3))

    def test_against_determinant_oracle(self, rng):
        for _ in range(80):
            n = rng.randint(1, 5)
            M = random_matrix(rng, n, n, bound=4)
            assert pairing_is_unimodular(M) == (abs(brute_det(M)) == 1)


class TestSolveAndHermite:
    def test_solve_prefers_small_pivots(self):
        assert solve_exact(IntMatrix.from_rows([[1, 5]]), [1]) == (1, 0)
        assert solve_exact(IntMatrix.from_rows([[4, 1]]), [4]) == (0, 4)

    def test_solve_none_when_unsolvable(self):
        assert solve_exact(IntMatrix.from_rows([[2, 4]]), [3]) is None

    def test_solve_random(self, rng):
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            M = random_matrix(rng, rows, cols, bound=5)
            x = tuple(rng.randint(-4, 4) for _ in range(cols))
            b = M.mul_vector(x)
            sol = solve_exact(M, b)
            assert sol is not None
            assert M.mul_vector(sol) == b

    def test_hermite_transform(self, rng):
        for _ in range(30):
            M = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            H, T = hermite_row_form(M, with_transform=True)
            assert abs(brute_det(T)) == 1
            TM = T @ M
            assert IntMatrix.from_rows(TM.to_rows()[: H.rows], cols=M.cols) == H
            for row in TM.to_rows()[H.rows :]:
                assert all(e == 0 for e in row)

    def test_lattice_intersection(self):
        A = IntMatrix.from_rows([[1, 5]])
        B = IntMatrix.from_rows([[1, 3]])
        assert intersect_column_lattices(A, B).to_columns() == [[1]]
        assert intersect_column_lattices(
            IntMatrix.from_rows([[4]]), IntMatrix.from_rows([[4, 1]])
        ).to_columns() == [[4]]

    def test_lattice_intersection_random(self, rng):
        for _ in range(20):
            n = rng.randint(1, 3)
            A = random_matrix(rng, n, rng.randint(1, 3), bound=4)
            B = random_matrix(rng, n, rng.randint(1, 3), bound=4)
            L = intersect_column_lattices(A, B)
            for j in range(L.cols):
                u = L.column(j)
                assert solve_exact(A, u) is not None
                assert solve_exact(B, u) is not None
