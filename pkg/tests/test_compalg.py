import random
from fractions import Fraction

import pytest

from stableforms.compalg import (AlgebraTag, basis_element, conjugate, element,
                                 im, inner, multiplication_table, multiply,
                                 norm, random_element, re, verify_identities)


def e(tag, k):
    return basis_element(tag, k)


class TestMultiplication:
    def test_quaternion_table(self):
        H = AlgebraTag.H
        assert multiply(e(H, 1), e(H, 2)) == e(H, 3)
        assert multiply(e(H, 2), e(H, 1)) == -e(H, 3)
        assert multiply(e(H, 1), e(H, 1)) == -e(H, 0)

    def test_split_quaternions(self):
        U = AlgebraTag.U
        assert multiply(e(U, 1), e(U, 1)) == -e(U, 0)   # i^2 = -1
        assert multiply(e(U, 2), e(U, 2)) == e(U, 0)    # j^2 = +1
        assert multiply(e(U, 1), e(U, 2)) == e(U, 3)    # k = ij
        assert multiply(e(U, 2), e(U, 1)) == -e(U, 3)   # = -ji

    def test_octonion_doubling(self):
        O = AlgebraTag.O
        assert multiply(e(O, 1), e(O, 4)) == e(O, 5)
        assert multiply(e(O, 4), e(O, 4)) == -e(O, 0)

    def test_split_octonion_doubling(self):
        B = AlgebraTag.B
        assert multiply(e(B, 4), e(B, 4)) == e(B, 0)

    def test_unit(self, rng):
        for tag in AlgebraTag:
            x = random_element(tag, rng)
            assert multiply(e(tag, 0), x) == x
            assert multiply(x, e(tag, 0)) == x

    def test_tag_mismatch(self):
        with pytest.raises(ValueError):
            multiply(e(AlgebraTag.O, 1), e(AlgebraTag.B, 1))

    def test_bilinear(self, rng):
        for tag in (AlgebraTag.O, AlgebraTag.B):
            x, y, z = (random_element(tag, rng) for _ in range(3))
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            assert multiply(x + y, z) == multiply(x, z) + multiply(y, z)
            assert multiply(x, y + z) == multiply(x, y) + multiply(x, z)
            assert multiply(c * x, y) == c * multiply(x, y)

    def test_octonions_not_associative(self):
        O = AlgebraTag.O
        x, y, z = e(O, 1), e(O, 2), e(O, 4)
        assert multiply(multiply(x, y), z) != multiply(x, multiply(y, z))


OCTONION_TABLE = {
    (1, 2): (3, 1), (1, 3): (2, -1), (1, 4): (5, 1), (1, 5): (4, -1), (1, 6): (7, -1), (1, 7): (6, 1),
    (2, 3): (1, 1), (2, 4): (6, 1), (2, 5): (7, 1), (2, 6): (4, -1), (2, 7): (5, -1),
    (3, 4): (7, 1), (3, 5): (6, -1), (3, 6): (5, 1), (3, 7): (4, -1),
    (4, 5): (1, 1), (4, 6): (2, 1), (4, 7): (3, 1),
    (5, 6): (3, -1), (5, 7): (2, 1),
    (6, 7): (1, -1),
}


class TestTableSnapshot:
    def test_octonion_imaginary_table(self):
        O = AlgebraTag.O
        table = multiplication_table(O)
        for (i, j), (k, s) in OCTONION_TABLE.items():
            assert table[i][j] == Fraction(s) * e(O, k), (i, j)
            assert table[j][i] == Fraction(-s) * e(O, k), (j, i)
        for i in range(1, 8):
            assert table[i][i] == -e(O, 0)

    def test_split_octonion_diagonal(self):
        B = AlgebraTag.B
        table = multiplication_table(B)
        for i in range(1, 4):
            assert table[i][i] == -e(B, 0)
        for i in range(4, 8):
            assert table[i][i] == e(B, 0)


class TestConjugationAndNorm:
    def test_conjugate_basis(self):
        O = AlgebraTag.O
        assert conjugate(e(O, 0)) == e(O, 0)
        assert conjugate(e(O, 3)) == -e(O, 3)

    def test_re_im_split(self, rng):
        for tag in AlgebraTag:
            x = random_element(tag, rng)
            assert re(x) + im(x) == x

    def test_conjugation_involution(self, rng):
        x = random_element(AlgebraTag.B, rng)
        assert conjugate(conjugate(x)) == x

    def test_antihomomorphism(self, rng):
        for tag in AlgebraTag:
            x, y = random_element(tag, rng), random_element(tag, rng)
            assert conjugate(multiply(x, y)) == multiply(conjugate(y), conjugate(x))

    def test_norm_values(self):
        assert norm(e(AlgebraTag.O, 0)) == 1
        assert norm(e(AlgebraTag.B, 4)) == -1

    def test_signatures(self):
        assert AlgebraTag.H.signature == (1, 1, 1, 1)
        assert AlgebraTag.U.signature == (1, 1, -1, -1)
        assert AlgebraTag.O.signature == (1,) * 8
        assert AlgebraTag.B.signature == (1, 1, 1, 1, -1, -1, -1, -1)

    def test_inner_diagonal(self):
        for tag in AlgebraTag:
            n = tag.dim
            for i in range(n):
                for j in range(n):
                    expect = Fraction(tag.signature[i]) if i == j else Fraction(0)
                    assert inner(e(tag, i), e(tag, j)) == expect

    def test_norm_is_inner_diagonal(self, rng):
        for tag in AlgebraTag:
            x = random_element(tag, rng)
            assert norm(x) == inner(x, x)

    def test_null_vectors_only_in_split(self):
        B = AlgebraTag.B
        null = e(B, 0) + e(B, 4)
        assert norm(null) == 0
        # positive definite algebras have no nonzero null vectors
        for tag in (AlgebraTag.H, AlgebraTag.O):
            x = element(tag, [Fraction(1, 3)] * tag.dim)
            assert norm(x) > 0


class TestCrossCheckWithVCP:
    def test_imaginary_table_is_cross_product_table(self):
        # e_i e_j = X(e_i, e_j) for distinct imaginary basis elements
        from stableforms.vcp import cross_2fold

        for tag in (AlgebraTag.O, AlgebraTag.B):
            X = cross_2fold(tag)
            table = multiplication_table(tag)
            basis7 = [tuple(Fraction(1 if i == k else 0) for i in range(7)) for k in range(7)]
            for i in range(1, 8):
                for j in range(1, 8):
                    if i == j:
                        continue
                    assert tuple(table[i][j].coords[1:]) == X(basis7[i - 1], basis7[j - 1])
                    assert table[i][j].coords[0] == 0


class TestIdentityVerifier:
    @pytest.mark.parametrize("tag", (AlgebraTag.H, AlgebraTag.U))
    def test_all_pass(self, tag):
        report = verify_identities(tag, 250, seed=11)
        assert report.passed, report.failed_checks()

    @pytest.mark.parametrize("tag", (AlgebraTag.O, AlgebraTag.B))
    def test_octonionic_thousand_trials(self, tag):
        report = verify_identities(tag, 1000, seed=11)
        assert report.passed, report.failed_checks()

    def test_trials_validated(self):
        with pytest.raises(ValueError):
            verify_identities(AlgebraTag.O, 0)

    def test_broken_algebra_detected(self):
        # full associativity is *not* among the identities, but a direct
        # check shows the witness the octonions fail on
        O = AlgebraTag.O
        x, y, z = e(O, 1), e(O, 2), e(O, 4)
        lhs = multiply(x, multiply(y, z))
        rhs = multiply(multiply(x, y), z)
        assert lhs == -rhs and not lhs == rhs
