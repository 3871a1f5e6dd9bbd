import pytest
import sympy
from hypothesis import given, strategies as st

from irrseq import NonResidueError, fp_sqrt, is_prime, legendre, nu2, solve_nullspace
from irrseq.fp import matvec, require_odd_prime

PRIMES = [3, 5, 7, 11, 13]


class TestNu2:
    def test_published_values(self):
        assert nu2(48) == 4
        assert nu2(6) == 1
        assert nu2(7) == 0
        assert nu2(23 ** 2 - 1) == 4
        assert nu2(31 ** 2 - 1) == 6

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            nu2(0)
        with pytest.raises(ValueError):
            nu2(-8)

    @given(st.integers(min_value=1, max_value=10 ** 12))
    def test_decomposition(self, m):
        e = nu2(m)
        assert m % (1 << e) == 0
        assert (m >> e) % 2 == 1


class TestPrimality:
    def test_agrees_with_sympy_small(self):
        for n in range(2, 2000):
            assert is_prime(n) == sympy.isprime(n)

    def test_agrees_with_sympy_large(self):
        for n in [2 ** 61 - 1, 2 ** 61 + 15, 10 ** 18 + 9, 10 ** 18 + 7,
                  4611686018427387847, 4611686018427387904 - 1]:
            assert is_prime(n) == sympy.isprime(n)

    def test_rejects_two_and_composites(self):
        with pytest.raises(ValueError):
            require_odd_prime(2)
        with pytest.raises(ValueError):
            require_odd_prime(9)
        assert require_odd_prime(7) == 7

    def test_rejects_oversized(self):
        with pytest.raises(ValueError):
            is_prime(1 << 63)


class TestLegendre:
    def test_published_values(self):
        assert legendre(0, 7) == 0
        assert legendre(1, 7) == 1
        assert legendre(6, 7) == -1  # squares mod 7 are {1, 2, 4}

    def test_against_square_sets(self):
        for p in PRIMES + [17, 19, 23]:
            squares = {a * a % p for a in range(1, p)}
            for a in range(p):
                want = 0 if a == 0 else (1 if a in squares else -1)
                assert legendre(a, p) == want

    @given(st.sampled_from(PRIMES + [101, 997]), st.integers(1, 10 ** 6),
           st.integers(1, 10 ** 6))
    def test_multiplicative(self, p, a, b):
        if a % p and b % p:
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


class TestFpSqrt:
    def test_published_values(self):
        assert fp_sqrt(4, 5) == 2
        assert fp_sqrt(0, 5) == 0
        assert fp_sqrt(2, 7) == 3  # 3^2 = 2 and 3 < 4

    def test_exhaustive_small(self):
        for p in PRIMES + [17, 29, 41, 97, 193]:
            for a in range(p):
                if legendre(a, p) == -1:
                    with pytest.raises(NonResidueError):
                        fp_sqrt(a, p)
                else:
                    r = fp_sqrt(a, p)
                    assert r * r % p == a
                    assert r <= p - r or r == 0

    @given(st.sampled_from([5, 13, 17, 97, 12289, 786433]), st.integers(1, 10 ** 9))
    def test_roundtrip_on_squares(self, p, r0):
        a = r0 * r0 % p
        r = fp_sqrt(a, p)
        assert r * r % p == a


class TestNullspace:
    def test_identity_has_trivial_kernel(self):
        eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert solve_nullspace(eye, 5) == []

    def test_zero_matrix_has_full_kernel(self):
        assert solve_nullspace([[0, 0], [0, 0]], 7) == [[1, 0], [0, 1]]

    def test_worked_linear_system(self):
        # the 3x3 system from the degree-3 factorization example over F_5;
        # solutions are the line (c0, c0, -c0)
        rows = [[-2, -1, 2], [-3, -1, 1], [-1, 1, 0]]
        rows = [[v % 5 for v in r] for r in rows]
        basis = solve_nullspace(rows, 5)
        assert basis == [[4, 4, 1]]
        lead = next(v for v in basis[0] if v)
        inv = pow(lead, -1, 5)
        assert [v * inv % 5 for v in basis[0]] == [1, 1, 4]

    @given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(1, 5),
           st.integers(0, 2 ** 32))
    def test_kernel_and_rank_nullity(self, p, nrows, ncols, seed):
        import random
        rng = random.Random(seed)
        m = [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]
        basis = solve_nullspace(m, p)
        for v in basis:
            assert not any(matvec(m, v, p))
        transpose = [list(col) for col in zip(*m)]
        rank = ncols - len(basis)
        assert rank == nrows - len(solve_nullspace(transpose, p))
        # basis vectors are independent: each owns a coordinate the others zero
        free_cols = []
        for v in basis:
            ones = [i for i, val in enumerate(v) if val == 1
                    and all(w[i] == 0 for w in basis if w is not v)]
            free_cols.append(ones)
        assert all(free_cols)
